#include "cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "fracwos/engine.hpp"
#include "fracwos/geometry.hpp"
#include "fracwos/kernels.hpp"
#include "fracwos/oracle.hpp"
#include "fracwos/rng.hpp"

namespace fracwos::cli {

using nlohmann::json;

namespace {

struct RunConfig {
  json raw;
  json case_spec;
  std::vector<double> alphas;
  std::optional<int> n;
  json points_spec;
  WalkConfig walk;
  std::vector<std::size_t> ladder;
  std::string output;
};

// Parsing helpers

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

double get_number(const json& j, const std::string& what) {
  if (!j.is_number()) throw ConfigError(what + " must be a number");
  return j.get<double>();
}

std::size_t get_count(const json& j, const std::string& what) {
  if (j.is_number_unsigned()) return j.get<std::size_t>();
  if (j.is_number_integer() && j.get<long long>() >= 0) return static_cast<std::size_t>(j.get<long long>());
  if (j.is_number_float()) {
    const double v = j.get<double>();
    if (v >= 0 && v == std::floor(v) && v < 1e18) return static_cast<std::size_t>(v);
  }
  throw ConfigError(what + " must be a nonnegative integer");
}

Point get_point(const json& j, const std::string& what) {
  if (!j.is_array() || j.empty()) throw ConfigError(what + " must be a nonempty array of numbers");
  Point p;
  for (const auto& v : j) p.push_back(get_number(v, what));
  return p;
}

std::shared_ptr<const Domain> build_domain(const json& spec, int n) {
  if (!spec.is_object() || !spec.contains("type") || !spec["type"].is_string()) {
    throw ConfigError("domain needs a string 'type'");
  }
  const std::string type = spec["type"];
  try {
    if (type == "ball") {
      reject_unknown(spec, {"type", "center", "radius"}, "domain");
      const Point c = spec.contains("center") ? get_point(spec["center"], "domain.center")
                                              : Point(static_cast<std::size_t>(n), 0.0);
      const double r = spec.contains("radius") ? get_number(spec["radius"], "domain.radius") : 1.0;
      return std::make_shared<BallDomain>(c, r);
    }
    if (type == "box") {
      reject_unknown(spec, {"type", "lower", "upper"}, "domain");
      if (!spec.contains("lower") || !spec.contains("upper")) throw ConfigError("box needs lower and upper");
      return std::make_shared<BoxDomain>(get_point(spec["lower"], "domain.lower"),
                                         get_point(spec["upper"], "domain.upper"));
    }
    if (type == "annulus") {
      reject_unknown(spec, {"type", "center", "inner", "outer"}, "domain");
      if (!spec.contains("inner") || !spec.contains("outer")) throw ConfigError("annulus needs inner and outer");
      const Point c = spec.contains("center") ? get_point(spec["center"], "domain.center")
                                              : Point(static_cast<std::size_t>(n), 0.0);
      return std::make_shared<AnnulusDomain>(c, get_number(spec["inner"], "domain.inner"),
                                             get_number(spec["outer"], "domain.outer"));
    }
    if (type == "lshape") {
      reject_unknown(spec, {"type"}, "domain");
      return std::make_shared<LShapeDomain>();
    }
    if (type == "hexagon") {
      reject_unknown(spec, {"type", "circumradius", "center"}, "domain");
      const double R = spec.contains("circumradius") ? get_number(spec["circumradius"], "domain.circumradius") : 1.0;
      Point c{0.0, 0.0};
      if (spec.contains("center")) c = get_point(spec["center"], "domain.center");
      if (c.size() != 2) throw ConfigError("hexagon centre must be two-dimensional");
      return std::make_shared<HexagonDomain>(R, std::make_pair(c[0], c[1]));
    }
    if (type == "polygon") {
      reject_unknown(spec, {"type", "vertices"}, "domain");
      if (!spec.contains("vertices") || !spec["vertices"].is_array()) throw ConfigError("polygon needs vertices");
      std::vector<std::pair<double, double>> v;
      for (const auto& p : spec["vertices"]) {
        const Point q = get_point(p, "domain.vertices");
        if (q.size() != 2) throw ConfigError("polygon vertices must be 2-D");
        v.emplace_back(q[0], q[1]);
      }
      return std::make_shared<PolygonDomain>(v);
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("invalid domain: ") + e.what());
  }
  throw ConfigError("unknown domain type '" + type + "'");
}

ExactCase build_case(const RunConfig& cfg, FracOrder alpha) {
  try {
    if (cfg.case_spec.is_string()) return make_case(cfg.case_spec.get<std::string>(), alpha, cfg.n);
    const json& spec = cfg.case_spec;
    reject_unknown(spec, {"domain", "n", "f", "g", "u_exact"}, "case");
    int n = cfg.n.value_or(2);
    if (spec.contains("n")) n = static_cast<int>(get_count(spec["n"], "case.n"));
    if (!spec.contains("domain")) throw ConfigError("inline case needs a domain");
    auto domain = build_domain(spec["domain"], n);
    if (domain->dimension() != n) throw ConfigError("domain dimension does not match n");
    auto field = [&](const char* key, const char* fallback) -> Field {
      if (!spec.contains(key)) return builtin_field(fallback, alpha, n);
      if (!spec[key].is_string()) throw ConfigError(std::string("case.") + key + " must be a builtin field name");
      return builtin_field(spec[key].get<std::string>(), alpha, n);
    };
    ExactCase c{"inline", n, alpha, domain, field("f", "zero"), field("g", "zero"), std::nullopt};
    if (spec.contains("u_exact")) c.u_exact = field("u_exact", "zero");
    return c;
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
}

RunConfig parse_config(const json& raw) {
  reject_unknown(raw, {"case", "alpha", "alphas", "n", "points", "walk", "ladder", "output"}, "config");
  RunConfig cfg;
  cfg.raw = raw;
  if (!raw.contains("case")) throw ConfigError("config needs 'case'");
  cfg.case_spec = raw["case"];
  if (!cfg.case_spec.is_string() && !cfg.case_spec.is_object()) {
    throw ConfigError("'case' must be a registry name or an inline object");
  }
  if (raw.contains("alpha") && raw.contains("alphas")) throw ConfigError("give either 'alpha' or 'alphas'");
  if (raw.contains("alpha")) cfg.alphas.push_back(get_number(raw["alpha"], "alpha"));
  if (raw.contains("alphas")) {
    if (!raw["alphas"].is_array() || raw["alphas"].empty()) throw ConfigError("'alphas' must be a nonempty array");
    for (const auto& a : raw["alphas"]) cfg.alphas.push_back(get_number(a, "alphas"));
  }
  if (cfg.alphas.empty()) throw ConfigError("config needs 'alpha' or 'alphas'");
  for (double a : cfg.alphas) {
    if (!(a >= FracOrder::kMin && a <= FracOrder::kMax)) {
      throw ConfigError("alpha " + std::to_string(a) + " outside [0.05, 1.95]");
    }
  }
  if (raw.contains("n")) cfg.n = static_cast<int>(get_count(raw["n"], "n"));
  if (raw.contains("points")) cfg.points_spec = raw["points"];
  if (raw.contains("walk")) {
    const json& w = raw["walk"];
    reject_unknown(w, {"epsilon", "num_paths", "seed", "max_steps", "zeta_quad_points"}, "walk");
    if (w.contains("epsilon")) cfg.walk.epsilon = get_number(w["epsilon"], "walk.epsilon");
    if (w.contains("num_paths")) cfg.walk.num_paths = get_count(w["num_paths"], "walk.num_paths");
    if (w.contains("seed")) cfg.walk.seed = get_count(w["seed"], "walk.seed");
    if (w.contains("max_steps")) cfg.walk.max_steps = get_count(w["max_steps"], "walk.max_steps");
    if (w.contains("zeta_quad_points")) {
      cfg.walk.zeta_quad_points = static_cast<int>(get_count(w["zeta_quad_points"], "walk.zeta_quad_points"));
    }
  }
  if (!(cfg.walk.epsilon > 0.0)) throw ConfigError("walk.epsilon must be positive");
  if (cfg.walk.num_paths < 1) throw ConfigError("walk.num_paths must be at least 1");
  if (cfg.walk.max_steps < 1) throw ConfigError("walk.max_steps must be at least 1");
  if (cfg.walk.zeta_quad_points < 1) throw ConfigError("walk.zeta_quad_points must be at least 1");
  if (raw.contains("ladder")) {
    if (!raw["ladder"].is_array()) throw ConfigError("'ladder' must be an array of path counts");
    for (const auto& v : raw["ladder"]) {
      const std::size_t N = get_count(v, "ladder");
      if (N < 1) throw ConfigError("ladder entries must be positive");
      cfg.ladder.push_back(N);
    }
  }
  cfg.output = raw.contains("output") ? raw["output"].get<std::string>() : std::string("fracwos");
  if (cfg.output.empty()) throw ConfigError("'output' must be a nonempty path prefix");
  return cfg;
}

// Evaluation points

std::vector<Point> generate_points(const json& spec, const Domain& domain, double epsilon) {
  const int n = domain.dimension();
  std::vector<Point> pts;
  if (spec.is_null()) throw ConfigError("config needs 'points'");
  if (spec.is_array()) {
    for (const auto& p : spec) {
      Point q = get_point(p, "points entry");
      if (static_cast<int>(q.size()) != n) throw ConfigError("point dimension does not match the case");
      pts.push_back(std::move(q));
    }
  } else if (spec.is_object()) {
    if (spec.size() != 1) throw ConfigError("points object must hold exactly one of grid, random, radial");
    if (spec.contains("grid")) {
      const json& g = spec["grid"];
      reject_unknown(g, {"lower", "upper", "counts"}, "points.grid");
      auto [lo, hi] = domain.bounds();
      if (g.contains("lower")) lo = get_point(g["lower"], "grid.lower");
      if (g.contains("upper")) hi = get_point(g["upper"], "grid.upper");
      if (!g.contains("counts")) throw ConfigError("grid needs counts");
      std::vector<std::size_t> counts;
      if (g["counts"].is_array()) {
        for (const auto& c : g["counts"]) counts.push_back(get_count(c, "grid.counts"));
      } else {
        counts.assign(static_cast<std::size_t>(n), get_count(g["counts"], "grid.counts"));
      }
      if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n ||
          static_cast<int>(counts.size()) != n) {
        throw ConfigError("grid lower/upper/counts must match the dimension");
      }
      std::size_t total = 1;
      for (std::size_t c : counts) {
        if (c < 1) throw ConfigError("grid counts must be positive");
        total *= c;
      }
      for (std::size_t idx = 0; idx < total; ++idx) {
        Point p(static_cast<std::size_t>(n));
        std::size_t rest = idx;
        // Last axis varies fastest.
        for (int d = n - 1; d >= 0; --d) {
          const auto dd = static_cast<std::size_t>(d);
          const std::size_t i = rest % counts[dd];
          rest /= counts[dd];
          p[dd] = counts[dd] == 1 ? 0.5 * (lo[dd] + hi[dd])
                                  : lo[dd] + (hi[dd] - lo[dd]) * static_cast<double>(i) / (counts[dd] - 1);
        }
        pts.push_back(std::move(p));
      }
    } else if (spec.contains("random")) {
      const json& r = spec["random"];
      reject_unknown(r, {"count", "seed"}, "points.random");
      if (!r.contains("count")) throw ConfigError("random points need a count");
      const std::size_t count = get_count(r["count"], "random.count");
      const std::uint64_t seed = r.contains("seed") ? get_count(r["seed"], "random.seed") : 0;
      const auto [lo, hi] = domain.bounds();
      RngStream rng(seed, 0);
      std::size_t tries = 0;
      while (pts.size() < count) {
        if (++tries > 1000 * (count + 1)) throw ConfigError("could not place random points inside the domain");
        Point p(static_cast<std::size_t>(n));
        for (int d = 0; d < n; ++d) {
          const auto dd = static_cast<std::size_t>(d);
          p[dd] = lo[dd] + (hi[dd] - lo[dd]) * rng.uniform();
        }
        if (domain.contains(p) && domain.dist_boundary(p) >= epsilon) pts.push_back(std::move(p));
      }
    } else if (spec.contains("radial")) {
      const json& r = spec["radial"];
      reject_unknown(r, {"direction", "radii", "origin"}, "points.radial");
      if (!r.contains("radii") || !r["radii"].is_array()) throw ConfigError("radial points need radii");
      Point dir = r.contains("direction") ? get_point(r["direction"], "radial.direction")
                                          : Point(static_cast<std::size_t>(n), 0.0);
      if (!r.contains("direction")) dir[0] = 1.0;
      Point origin = r.contains("origin") ? get_point(r["origin"], "radial.origin")
                                          : Point(static_cast<std::size_t>(n), 0.0);
      if (static_cast<int>(dir.size()) != n || static_cast<int>(origin.size()) != n) {
        throw ConfigError("radial direction/origin must match the dimension");
      }
      const double len = std::sqrt(norm2(dir));
      if (!(len > 0.0)) throw ConfigError("radial direction must be nonzero");
      for (const auto& rv : r["radii"]) {
        const double rad = get_number(rv, "radial.radii");
        Point p(origin);
        for (std::size_t d = 0; d < p.size(); ++d) p[d] += rad * dir[d] / len;
        pts.push_back(std::move(p));
      }
    } else {
      throw ConfigError("points object must hold one of grid, random, radial");
    }
  } else {
    throw ConfigError("'points' must be a list or an object");
  }
  if (pts.empty()) throw ConfigError("no evaluation points");
  return pts;
}

void require_walkable(const std::vector<Point>& pts, const Domain& domain, double epsilon) {
  for (const auto& p : pts) {
    if (!domain.contains(p) || domain.dist_boundary(p) < epsilon) {
      std::ostringstream os;
      os << "point (";
      for (std::size_t i = 0; i < p.size(); ++i) os << (i ? ", " : "") << p[i];
      os << ") is not inside the domain at distance >= epsilon";
      throw ConfigError(os.str());
    }
  }
}

// Output helpers

std::string fmt(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string coord_header(int n) {
  std::string h;
  for (int i = 1; i <= n; ++i) h += (i > 1 ? "," : "") + std::string("x") + std::to_string(i);
  return h;
}

std::string coords(const Point& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) s += (i ? "," : "") + fmt(p[i]);
  return s;
}

std::ofstream open_output(const std::string& path) {
  const std::filesystem::path fp(path);
  if (fp.has_parent_path()) std::filesystem::create_directories(fp.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file " + path);
  return f;
}

void write_json(const std::string& path, const json& j) {
  auto f = open_output(path);
  f << j.dump(2) << '\n';
  if (!f) throw std::runtime_error("failed writing " + path);
}

double log_log_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
  const std::size_t m = xs.size();
  if (m < 2) return std::numeric_limits<double>::quiet_NaN();
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < m; ++i) {
    mx += std::log(xs[i]);
    my += std::log(ys[i]);
  }
  mx /= m;
  my /= m;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const double dx = std::log(xs[i]) - mx;
    sxy += dx * (std::log(ys[i]) - my);
    sxx += dx * dx;
  }
  return sxx > 0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

double single_alpha(const RunConfig& cfg, const char* command) {
  if (cfg.alphas.size() != 1) throw ConfigError(std::string(command) + " needs exactly one alpha");
  return cfg.alphas.front();
}

double elapsed(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Commands

int cmd_solve(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const FracOrder alpha(single_alpha(cfg, "solve"));
  const ExactCase c = build_case(cfg, alpha);
  const auto pts = generate_points(cfg.points_spec, *c.domain, cfg.walk.epsilon);
  require_walkable(pts, *c.domain, cfg.walk.epsilon);
  const KernelConstants k = make_constants(c.n, alpha, cfg.walk.zeta_quad_points);
  const auto results = estimate_field(c.problem(), cfg.walk, k, pts);

  auto csv = open_output(cfg.output + "_estimates.csv");
  csv << coord_header(c.n) << ",mean,stderr,steps_mean,n_paths\n";
  std::vector<double> means;
  std::vector<double> exact;
  std::size_t failed = 0;
  std::size_t within = 0;
  json point_errors = json::array();
  for (const auto& r : results) {
    if (!r.estimate) {
      csv << coords(r.x) << ",nan,nan,nan,0\n";
      point_errors.push_back({{"x", r.x}, {"error", r.error}});
      continue;
    }
    const Estimate& e = *r.estimate;
    failed += e.failed_paths;
    csv << coords(r.x) << ',' << fmt(e.mean) << ',' << fmt(e.std_error) << ',' << fmt(e.mean_steps) << ','
        << e.n_paths << '\n';
    if (c.u_exact) {
      const double u = (*c.u_exact)(r.x);
      means.push_back(e.mean);
      exact.push_back(u);
      if (std::fabs(e.mean - u) <= 3.0 * e.std_error) ++within;
    }
  }
  if (!csv) throw std::runtime_error("failed writing estimates CSV");

  json summary;
  summary["command"] = "solve";
  summary["config"] = cfg.raw;
  summary["case"] = c.name;
  summary["n"] = c.n;
  summary["alpha"] = alpha.value();
  summary["num_points"] = pts.size();
  summary["failed_paths"] = failed;
  summary["point_errors"] = point_errors;
  if (!means.empty()) {
    const ErrorMetric m = error_metric(means, exact);
    summary["errors"] = {{"paper_error", m.paper_error}, {"rmse", m.rmse}, {"within_3_stderr", within},
                         {"compared_points", means.size()}};
  } else {
    summary["errors"] = nullptr;
  }
  if (failed > 0) err << "warning: " << failed << " paths hit max_steps and were dropped\n";
  summary["wall_time_s"] = elapsed(t0);
  write_json(cfg.output + "_summary.json", summary);
  out << "wrote " << cfg.output << "_estimates.csv (" << pts.size() << " points)\n";
  return point_errors.empty() ? kExitOk : kExitRuntime;
}

int cmd_convergence(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  if (cfg.ladder.empty()) throw ConfigError("convergence needs a nonempty 'ladder'");
  auto csv = open_output(cfg.output + "_error_vs_N.csv");
  csv << "alpha,N,paper_error,rmse\n";
  json slopes = json::array();
  for (double a : cfg.alphas) {
    const FracOrder alpha(a);
    const ExactCase c = build_case(cfg, alpha);
    if (!c.u_exact) throw ConfigError("convergence needs a case with an exact solution");
    const auto pts = generate_points(cfg.points_spec, *c.domain, cfg.walk.epsilon);
    require_walkable(pts, *c.domain, cfg.walk.epsilon);
    const KernelConstants k = make_constants(c.n, alpha, cfg.walk.zeta_quad_points);
    std::vector<double> exact;
    for (const auto& p : pts) exact.push_back((*c.u_exact)(p));
    std::vector<double> Ns;
    std::vector<double> errs;
    for (std::size_t rung = 0; rung < cfg.ladder.size(); ++rung) {
      WalkConfig w = cfg.walk;
      w.num_paths = cfg.ladder[rung];
      w.seed = cfg.walk.seed + rung;  // independent samples per rung
      std::vector<double> means;
      for (const auto& p : pts) means.push_back(estimate_point(c.problem(), w, k, p).mean);
      const ErrorMetric m = error_metric(means, exact);
      csv << fmt(a) << ',' << w.num_paths << ',' << fmt(m.paper_error) << ',' << fmt(m.rmse) << '\n';
      Ns.push_back(static_cast<double>(w.num_paths));
      errs.push_back(m.paper_error);
    }
    const double slope = log_log_slope(Ns, errs);
    if (!std::isfinite(slope)) {
      err << "warning: slope for alpha=" << a << " is undefined (need at least two distinct ladder rungs)\n";
    }
    slopes.push_back({{"alpha", a}, {"slope", number_or_null(slope)}});
  }
  if (!csv) throw std::runtime_error("failed writing error_vs_N CSV");
  json summary;
  summary["command"] = "convergence";
  summary["config"] = cfg.raw;
  summary["slopes"] = slopes;
  summary["wall_time_s"] = elapsed(t0);
  write_json(cfg.output + "_summary.json", summary);
  out << "wrote " << cfg.output << "_error_vs_N.csv\n";
  return kExitOk;
}

int cmd_steps(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  auto csv = open_output(cfg.output + "_steps.csv");
  std::optional<int> dim;
  std::map<double, std::vector<std::pair<double, double>>> by_alpha;  // alpha -> (|x|, steps)
  std::vector<std::vector<double>> by_point;                             // point -> steps per alpha
  bool is_ball = false;
  for (double a : cfg.alphas) {
    const FracOrder alpha(a);
    const ExactCase c = build_case(cfg, alpha);
    is_ball = dynamic_cast<const BallDomain*>(c.domain.get()) != nullptr;
    const auto pts = generate_points(cfg.points_spec, *c.domain, cfg.walk.epsilon);
    require_walkable(pts, *c.domain, cfg.walk.epsilon);
    if (!dim) {
      dim = c.n;
      csv << "alpha," << coord_header(c.n) << ",radius,steps_mean,n_paths\n";
      by_point.assign(pts.size(), {});
    }
    const KernelConstants k = make_constants(c.n, alpha, cfg.walk.zeta_quad_points);
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const Estimate e = estimate_point(c.problem(), cfg.walk, k, pts[i]);
      const double radius = std::sqrt(norm2(pts[i]));
      csv << fmt(a) << ',' << coords(pts[i]) << ',' << fmt(radius) << ',' << fmt(e.mean_steps) << ','
          << e.n_paths << '\n';
      by_alpha[a].emplace_back(radius, e.mean_steps);
      by_point[i].push_back(e.mean_steps);
    }
  }
  if (!csv) throw std::runtime_error("failed writing steps CSV");

  json radius_checks = json::array();
  for (auto& [a, rows] : by_alpha) {
    std::stable_sort(rows.begin(), rows.end());
    bool monotone = true;
    for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].second >= rows[i - 1].second;
    radius_checks.push_back({{"alpha", a}, {"nondecreasing_in_radius", monotone}});
    if (is_ball && !monotone) err << "warning: steps_mean not monotone in |x| for alpha=" << a << '\n';
  }
  bool alpha_monotone = true;
  if (std::is_sorted(cfg.alphas.begin(), cfg.alphas.end())) {
    for (const auto& row : by_point) {
      for (std::size_t i = 1; i < row.size(); ++i) alpha_monotone = alpha_monotone && row[i] >= row[i - 1];
    }
  }
  json summary;
  summary["command"] = "steps";
  summary["config"] = cfg.raw;
  summary["ball_domain"] = is_ball;
  summary["radius_checks"] = radius_checks;
  summary["nondecreasing_in_alpha"] = alpha_monotone;
  summary["wall_time_s"] = elapsed(t0);
  write_json(cfg.output + "_summary.json", summary);
  out << "wrote " << cfg.output << "_steps.csv\n";
  return kExitOk;
}

int cmd_field(const RunConfig& cfg, std::ostream& out, std::ostream&) {
  const auto t0 = std::chrono::steady_clock::now();
  const FracOrder alpha(single_alpha(cfg, "field"));
  const ExactCase c = build_case(cfg, alpha);
  const auto pts = generate_points(cfg.points_spec, *c.domain, cfg.walk.epsilon);
  const KernelConstants k = make_constants(c.n, alpha, cfg.walk.zeta_quad_points);
  auto csv = open_output(cfg.output + "_field.csv");
  csv << coord_header(c.n) << ",value\n";
  std::size_t walked = 0;
  for (const auto& p : pts) {
    double value;
    if (!c.domain->contains(p)) {
      value = c.g(p);
    } else if (c.domain->dist_boundary(p) < cfg.walk.epsilon) {
      value = c.g(c.domain->project_boundary(p));
    } else {
      value = estimate_point(c.problem(), cfg.walk, k, p).mean;
      ++walked;
    }
    csv << coords(p) << ',' << fmt(value) << '\n';
  }
  if (!csv) throw std::runtime_error("failed writing field CSV");
  json summary;
  summary["command"] = "field";
  summary["config"] = cfg.raw;
  summary["num_points"] = pts.size();
  summary["walked_points"] = walked;
  summary["wall_time_s"] = elapsed(t0);
  write_json(cfg.output + "_summary.json", summary);
  out << "wrote " << cfg.output << "_field.csv (" << pts.size() << " points)\n";
  return kExitOk;
}

int cmd_constants(std::optional<int> n, std::vector<double> alphas, std::optional<double> epsilon, double radius,
                  int quad_points, std::ostream& out) {
  if (!n) throw ConfigError("constants needs a dimension (--n or config 'n')");
  if (alphas.empty()) throw ConfigError("constants needs alpha (--alpha or config)");
  if (*n < 1) throw ConfigError("dimension must be at least 1");
  json rows = json::array();
  for (double a : alphas) {
    if (!(a >= FracOrder::kMin && a <= FracOrder::kMax)) throw ConfigError("alpha outside [0.05, 1.95]");
    const FracOrder alpha(a);
    KernelConstants k;
    try {
      k = make_constants(*n, alpha, quad_points);
    } catch (const DomainError& e) {
      throw ConfigError(e.what());
    }
    json row = {{"n", *n},
                {"alpha", a},
                {"c_tilde", k.c_tilde},
                {"c_hat", k.c_hat},
                {"beta_full", k.beta_full},
                {"zeta_unit", k.zeta_unit},
                {"zeta_unit_closed_form", zeta_unit_closed_form(*n, alpha)},
                {"quad_points_used", k.quad_points_used}};
    if (epsilon) {
      if (!(*epsilon > 0.0 && *epsilon < radius)) throw ConfigError("need 0 < epsilon < radius");
      const StepBound b = step_bound(*n, alpha, radius, *epsilon);
      row["step_bound"] = {{"radius", radius}, {"epsilon", *epsilon}, {"p_star", b.p_star},
                           {"q_star", b.q_star}, {"bound", b.bound}};
    }
    rows.push_back(row);
  }
  out << rows.dump(2) << '\n';
  return kExitOk;
}

json load_json(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ConfigError("cannot read config file " + path);
  try {
    return json::parse(f);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Walk-on-spheres solver for the fractional Poisson problem", "fracwos"};
  app.require_subcommand(1);

  std::string config_path;
  unsigned threads = 0;
  std::optional<std::uint64_t> seed;
  auto add_common = [&](CLI::App* sub, bool config_required) {
    auto* opt = sub->add_option("--config", config_path, "JSON run configuration");
    if (config_required) opt->required();
    sub->add_option("--threads", threads, "worker threads (0: all cores)");
    sub->add_option("--seed", seed, "override walk.seed");
  };
  auto* solve = app.add_subcommand("solve", "estimate u at the configured points");
  auto* convergence = app.add_subcommand("convergence", "error against number of paths");
  auto* steps = app.add_subcommand("steps", "mean number of jumps per point");
  auto* field = app.add_subcommand("field", "solution values on a grid");
  auto* constants = app.add_subcommand("constants", "kernel constants and step bound");
  for (auto* sub : {solve, convergence, steps, field}) add_common(sub, true);
  add_common(constants, false);
  std::optional<int> const_n;
  std::vector<double> const_alpha;
  std::optional<double> const_eps;
  double const_radius = 1.0;
  constants->add_option("--n", const_n, "dimension");
  constants->add_option("--alpha", const_alpha, "order(s) alpha");
  constants->add_option("--epsilon", const_eps, "shell width for the step bound");
  constants->add_option("--radius", const_radius, "ball radius for the step bound");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitConfig;
  }

  try {
    if (constants->parsed()) {
      std::optional<int> n = const_n;
      std::vector<double> alphas = const_alpha;
      std::optional<double> eps = const_eps;
      int quad = 64;
      if (!config_path.empty()) {
        const RunConfig cfg = parse_config(load_json(config_path));
        if (!n) n = cfg.n ? cfg.n : std::optional<int>(build_case(cfg, FracOrder(cfg.alphas[0])).n);
        if (alphas.empty()) alphas = cfg.alphas;
        if (!eps) eps = cfg.walk.epsilon;
        quad = cfg.walk.zeta_quad_points;
      }
      return cmd_constants(n, alphas, eps, const_radius, quad, out);
    }

    json raw = load_json(config_path);
    RunConfig cfg = parse_config(raw);
    cfg.walk.threads = threads;
    if (seed) {
      cfg.walk.seed = *seed;
      cfg.raw["walk"]["seed"] = *seed;
    }
    if (solve->parsed()) return cmd_solve(cfg, out, err);
    if (convergence->parsed()) return cmd_convergence(cfg, out, err);
    if (steps->parsed()) return cmd_steps(cfg, out, err);
    if (field->parsed()) return cmd_field(cfg, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitConfig;
}

}  // namespace fracwos::cli
