#include "fracwos/engine.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

#include "fracwos/rng.hpp"
#include "fracwos/sampling.hpp"
#include "fracwos/specfun.hpp"

namespace fracwos {

namespace {

void validate(const ProblemSpec& problem, const WalkConfig& config, const KernelConstants& constants) {
  if (!problem.domain) throw DomainError("problem has no domain");
  if (problem.domain->dimension() != problem.n) throw DomainError("domain dimension does not match n");
  if (!problem.f || !problem.g) throw DomainError("problem needs both f and g");
  if (constants.n != problem.n || constants.alpha != problem.alpha.value()) {
    throw DomainError("kernel constants do not match the problem");
  }
  if (!(config.epsilon > 0.0)) throw DomainError("epsilon must be positive");
  if (config.num_paths < 1) throw DomainError("num_paths must be at least 1");
  if (config.max_steps < 1) throw DomainError("max_steps must be at least 1");
}

void check_start(const ProblemSpec& problem, const WalkConfig& config, PointView x0) {
  if (static_cast<int>(x0.size()) != problem.n) throw DomainError("start point has wrong dimension");
  if (!problem.domain->contains(x0)) throw DomainError("start point is not inside the domain");
  if (problem.domain->dist_boundary(x0) < config.epsilon) {
    throw DomainError("start point lies within epsilon of the boundary");
  }
}

// Walk without argument checks; key is the per-point Philox key.
PathRealization walk(const ProblemSpec& problem, const WalkConfig& config, const KernelConstants& k,
                     const InteriorRadiusSampler& radius_sampler, PointView x0, std::uint64_t key,
                     std::uint64_t path_idx) {
  const Domain& domain = *problem.domain;
  const std::size_t n = x0.size();
  RngStream rng(key, path_idx);
  Point x(x0.begin(), x0.end());
  Point y(n);
  Point u(n);
  PathRealization out;
  double score = 0.0;

  for (;;) {
    if (out.steps >= config.max_steps) {
      throw PathError("path " + std::to_string(path_idx) + " exceeded " + std::to_string(config.max_steps) +
                      " steps");
    }
    const double r = domain.dist_boundary(x);
    ++out.steps;

    const double s = radius_sampler(rng);
    unit_direction(rng, u);
    for (std::size_t i = 0; i < n; ++i) y[i] = x[i] + r * s * u[i];
    score += std::pow(r, k.alpha) * k.zeta_unit * problem.f(y);

    const double gamma = sample_exit_radius(r, problem.alpha, rng);
    unit_direction(rng, u);
    for (std::size_t i = 0; i < n; ++i) x[i] += gamma * u[i];

    if (!domain.contains(x)) {
      score += problem.g(x);
      out.exit_point = std::move(x);
      break;
    }
    if (domain.dist_boundary(x) < config.epsilon) {
      out.exit_point = domain.project_boundary(x);
      score += problem.g(out.exit_point);
      out.stopped_in_shell = true;
      break;
    }
  }
  out.score = score;
  return out;
}

unsigned resolve_threads(unsigned requested, std::size_t work) {
  unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

}  // namespace

double pairwise_sum(const double* v, std::size_t count) {
  if (count <= 16) {
    double s = 0.0;
    for (std::size_t i = 0; i < count; ++i) s += v[i];
    return s;
  }
  const std::size_t half = count / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, count - half);
}

PathRealization run_path(const ProblemSpec& problem, const WalkConfig& config, const KernelConstants& constants,
                         PointView x0, std::uint64_t path_idx) {
  validate(problem, config, constants);
  check_start(problem, config, x0);
  const InteriorRadiusSampler sampler(problem.n, problem.alpha);
  return walk(problem, config, constants, sampler, x0, point_key(config.seed, x0), path_idx);
}

Estimate estimate_point(const ProblemSpec& problem, const WalkConfig& config, const KernelConstants& constants,
                        PointView x0) {
  validate(problem, config, constants);
  check_start(problem, config, x0);
  const InteriorRadiusSampler sampler(problem.n, problem.alpha);
  const std::uint64_t key = point_key(config.seed, x0);
  const std::size_t N = config.num_paths;

  std::vector<double> scores(N, 0.0);
  std::vector<double> steps(N, 0.0);
  std::vector<unsigned char> completed(N, 0);

  std::exception_ptr fatal;
  std::mutex fatal_mutex;
  auto work = [&](std::size_t begin, std::size_t end) {
    try {
      for (std::size_t i = begin; i < end; ++i) {
        try {
          const PathRealization p = walk(problem, config, constants, sampler, x0, key, i);
          scores[i] = p.score;
          steps[i] = static_cast<double>(p.steps);
          completed[i] = 1;
        } catch (const PathError&) {
          // counted as failed below
        }
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(fatal_mutex);
      if (!fatal) fatal = std::current_exception();
    }
  };

  const unsigned T = resolve_threads(config.threads, N);
  if (T == 1) {
    work(0, N);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(T);
    for (unsigned t = 0; t < T; ++t) pool.emplace_back(work, N * t / T, N * (t + 1) / T);
    for (auto& th : pool) th.join();
  }
  if (fatal) std::rethrow_exception(fatal);

  // Compact the surviving paths in index order.
  std::vector<double> ok_scores;
  std::vector<double> ok_steps;
  ok_scores.reserve(N);
  ok_steps.reserve(N);
  for (std::size_t i = 0; i < N; ++i) {
    if (!completed[i]) continue;
    ok_scores.push_back(scores[i]);
    ok_steps.push_back(steps[i]);
  }
  const std::size_t M = ok_scores.size();
  if (M == 0) throw EstimationError("all " + std::to_string(N) + " paths failed");

  Estimate e;
  e.n_paths = M;
  e.failed_paths = N - M;
  e.mean = pairwise_sum(ok_scores.data(), M) / static_cast<double>(M);
  e.mean_steps = pairwise_sum(ok_steps.data(), M) / static_cast<double>(M);
  if (M > 1) {
    for (double& s : ok_scores) s = (s - e.mean) * (s - e.mean);
    e.variance = pairwise_sum(ok_scores.data(), M) / static_cast<double>(M - 1);
  }
  e.std_error = std::sqrt(e.variance / static_cast<double>(M));
  return e;
}

std::vector<FieldEntry> estimate_field(const ProblemSpec& problem, const WalkConfig& config,
                                       const KernelConstants& constants, const std::vector<Point>& points) {
  std::vector<FieldEntry> out;
  out.reserve(points.size());
  for (const Point& p : points) {
    FieldEntry entry;
    entry.x = p;
    try {
      entry.estimate = estimate_point(problem, config, constants, p);
    } catch (const std::exception& ex) {
      entry.error = ex.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

StepBound step_bound(int n, FracOrder alpha, double r, double epsilon) {
  if (n < 1) throw DomainError("step_bound: dimension must be at least 1");
  if (!(r > 0.0)) throw DomainError("step_bound: radius must be positive");
  if (!(epsilon > 0.0) || !(epsilon < r)) throw DomainError("step_bound: need 0 < epsilon < r");
  const double a = alpha.value();
  // (π^{n/2}/Γ(n/2))·C̃ = sin(πα/2)/π = 1/B(α/2, 1−α/2), so both brackets
  // reduce to regularised incomplete Beta values.
  const specfun::BetaParams p(0.5 * a, 1.0 - 0.5 * a);
  const double ratio = epsilon / r;
  StepBound b;
  b.p_star = specfun::reg_inc_beta_complement(ratio * ratio, p);
  b.q_star = specfun::reg_inc_beta((1.0 - ratio) * (1.0 - ratio), p);
  const double gap = 1.0 - b.p_star;
  b.bound = 1.0 + b.q_star / (gap * gap);
  return b;
}

ErrorMetric error_metric(const std::vector<double>& estimates, const std::vector<double>& exact) {
  if (estimates.size() != exact.size()) throw DomainError("error_metric: length mismatch");
  if (estimates.empty()) throw DomainError("error_metric: need at least one point");
  std::vector<double> d2(estimates.size());
  for (std::size_t i = 0; i < d2.size(); ++i) {
    const double d = estimates[i] - exact[i];
    d2[i] = d * d;
  }
  const double N = static_cast<double>(d2.size());
  const double ss = pairwise_sum(d2.data(), d2.size());
  return {std::sqrt(ss) / N, std::sqrt(ss / N)};
}

}  // namespace fracwos
