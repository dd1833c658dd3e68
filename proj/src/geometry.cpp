#include "fracwos/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace fracwos {

namespace {

// Candidates whose distance is within this relative slack of the minimum are
// treated as ties.
constexpr double kTieSlack = 1e-12;

bool is_tie(double d, double best) { return d <= best + kTieSlack * (1.0 + best); }

// Points closer than this (relative to the domain size) to ∂Ω count as
// boundary points, so rounded projections are never reported as interior.
constexpr double kBoundarySlack = 8.0 * std::numeric_limits<double>::epsilon();

void check_dim(PointView x, std::size_t n, const char* what) {
  if (x.size() != n) throw DomainError(std::string(what) + ": dimension mismatch");
}

struct SegmentHit {
  double d2;
  double px;
  double py;
};

SegmentHit closest_on_segment(double x, double y, double ax, double ay, double bx, double by) {
  const double dx = bx - ax;
  const double dy = by - ay;
  const double len2 = dx * dx + dy * dy;
  double t = len2 > 0.0 ? ((x - ax) * dx + (y - ay) * dy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  double px = ax + t * dx;
  double py = ay + t * dy;
  // Snap exact endpoints so vertex projections are bit-exact.
  if (t == 0.0) {
    px = ax;
    py = ay;
  } else if (t == 1.0) {
    px = bx;
    py = by;
  }
  const double ex = x - px;
  const double ey = y - py;
  return {ex * ex + ey * ey, px, py};
}

}  // namespace

double Domain::dist_boundary(PointView x) const {
  if (static_cast<int>(x.size()) != dimension()) throw DomainError("dist_boundary: dimension mismatch");
  if (!contains(x)) throw DomainError("dist_boundary: point is not inside the domain");
  return distance_inside(x);
}

// Ball

BallDomain::BallDomain(Point center, double radius) : center_(std::move(center)), radius_(radius) {
  if (center_.empty()) throw DomainError("ball: dimension must be at least 1");
  if (!(radius_ > 0.0) || !std::isfinite(radius_)) throw DomainError("ball: radius must be positive");
}

bool BallDomain::contains(PointView x) const {
  check_dim(x, center_.size(), "ball");
  return radius_ - std::sqrt(distance2(x, center_)) > kBoundarySlack * radius_;
}

double BallDomain::distance_inside(PointView x) const { return radius_ - std::sqrt(distance2(x, center_)); }

Point BallDomain::project_boundary(PointView x) const {
  check_dim(x, center_.size(), "ball");
  const double d = std::sqrt(distance2(x, center_));
  Point p(center_);
  if (d == 0.0) {
    p[0] -= radius_;
    return p;
  }
  for (std::size_t i = 0; i < p.size(); ++i) p[i] += radius_ * (x[i] - center_[i]) / d;
  return p;
}

std::pair<Point, Point> BallDomain::bounds() const {
  Point lo(center_);
  Point hi(center_);
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] -= radius_;
    hi[i] += radius_;
  }
  return {lo, hi};
}

// Box

BoxDomain::BoxDomain(Point lower, Point upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.empty() || lower_.size() != upper_.size()) throw DomainError("box: bad bounds");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) throw DomainError("box: lower must be below upper on every axis");
  }
}

bool BoxDomain::contains(PointView x) const {
  check_dim(x, lower_.size(), "box");
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    if (!(x[i] > lower_[i] && x[i] < upper_[i])) return false;
  }
  return true;
}

double BoxDomain::distance_inside(PointView x) const {
  double d = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lower_.size(); ++i) d = std::min({d, x[i] - lower_[i], upper_[i] - x[i]});
  return d;
}

Point BoxDomain::project_boundary(PointView x) const {
  check_dim(x, lower_.size(), "box");
  const double best = distance_inside(x);
  Point chosen;
  for (std::size_t i = 0; i < lower_.size(); ++i) {
    for (double face : {lower_[i], upper_[i]}) {
      if (!is_tie(std::fabs(x[i] - face), best)) continue;
      Point p(x.begin(), x.end());
      p[i] = face;
      if (chosen.empty() || p < chosen) chosen = std::move(p);
    }
  }
  return chosen;
}

// Annulus

AnnulusDomain::AnnulusDomain(Point center, double inner, double outer)
    : center_(std::move(center)), inner_(inner), outer_(outer) {
  if (center_.empty()) throw DomainError("annulus: dimension must be at least 1");
  if (!(inner_ > 0.0) || !(inner_ < outer_) || !std::isfinite(outer_)) {
    throw DomainError("annulus: radii must satisfy 0 < inner < outer");
  }
}

bool AnnulusDomain::contains(PointView x) const {
  check_dim(x, center_.size(), "annulus");
  const double d = std::sqrt(distance2(x, center_));
  const double slack = kBoundarySlack * outer_;
  return d - inner_ > slack && outer_ - d > slack;
}

double AnnulusDomain::distance_inside(PointView x) const {
  const double d = std::sqrt(distance2(x, center_));
  return std::min(d - inner_, outer_ - d);
}

Point AnnulusDomain::project_boundary(PointView x) const {
  check_dim(x, center_.size(), "annulus");
  const double d = std::sqrt(distance2(x, center_));
  auto on_circle = [&](double radius) {
    Point p(center_);
    if (d == 0.0) {
      p[0] -= radius;
      return p;
    }
    for (std::size_t i = 0; i < p.size(); ++i) p[i] += radius * (x[i] - center_[i]) / d;
    return p;
  };
  const double to_inner = std::fabs(d - inner_);
  const double to_outer = std::fabs(outer_ - d);
  const double best = std::min(to_inner, to_outer);
  Point chosen;
  if (is_tie(to_inner, best)) chosen = on_circle(inner_);
  if (is_tie(to_outer, best)) {
    Point p = on_circle(outer_);
    if (chosen.empty() || p < chosen) chosen = std::move(p);
  }
  return chosen;
}

std::pair<Point, Point> AnnulusDomain::bounds() const {
  Point lo(center_);
  Point hi(center_);
  for (std::size_t i = 0; i < lo.size(); ++i) {
    lo[i] -= outer_;
    hi[i] += outer_;
  }
  return {lo, hi};
}

// Polygon

PolygonDomain::PolygonDomain(std::vector<std::pair<double, double>> vertices, std::string name)
    : vertices_(std::move(vertices)), name_(std::move(name)) {
  if (vertices_.size() < 3) throw DomainError("polygon: need at least three vertices");
  scale_ = 0.0;
  for (const auto& v : vertices_) scale_ = std::max({scale_, std::fabs(v.first), std::fabs(v.second)});
  scale_ = std::max(scale_, 1e-300);
}

double PolygonDomain::min_edge_distance2(double px, double py) const {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t m = vertices_.size();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % m];
    best = std::min(best, closest_on_segment(px, py, a.first, a.second, b.first, b.second).d2);
  }
  return best;
}

bool PolygonDomain::contains(PointView x) const {
  check_dim(x, 2, "polygon");
  const double px = x[0];
  const double py = x[1];
  bool inside = false;
  const std::size_t m = vertices_.size();
  for (std::size_t i = 0, j = m - 1; i < m; j = i++) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[j];
    if ((a.second > py) != (b.second > py)) {
      const double cross = a.first + (py - a.second) * (b.first - a.first) / (b.second - a.second);
      if (px < cross) inside = !inside;
    }
  }
  if (!inside) return false;
  const double slack = kBoundarySlack * scale_;
  return min_edge_distance2(px, py) > slack * slack;
}

double PolygonDomain::distance_inside(PointView x) const { return std::sqrt(min_edge_distance2(x[0], x[1])); }

Point PolygonDomain::project_boundary(PointView x) const {
  check_dim(x, 2, "polygon");
  const std::size_t m = vertices_.size();
  std::vector<SegmentHit> hits;
  hits.reserve(m);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < m; ++i) {
    const auto& a = vertices_[i];
    const auto& b = vertices_[(i + 1) % m];
    hits.push_back(closest_on_segment(x[0], x[1], a.first, a.second, b.first, b.second));
    best = std::min(best, hits.back().d2);
  }
  const double best_d = std::sqrt(best);
  Point chosen;
  for (const auto& h : hits) {
    if (!is_tie(std::sqrt(h.d2), best_d)) continue;
    Point p{h.px, h.py};
    if (chosen.empty() || p < chosen) chosen = std::move(p);
  }
  return chosen;
}

std::pair<Point, Point> PolygonDomain::bounds() const {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-lo[0], -lo[1]};
  for (const auto& v : vertices_) {
    lo[0] = std::min(lo[0], v.first);
    lo[1] = std::min(lo[1], v.second);
    hi[0] = std::max(hi[0], v.first);
    hi[1] = std::max(hi[1], v.second);
  }
  return {lo, hi};
}

LShapeDomain::LShapeDomain()
    : PolygonDomain({{-1.0, -1.0}, {1.0, -1.0}, {1.0, 0.0}, {0.0, 0.0}, {0.0, 1.0}, {-1.0, 1.0}}, "lshape") {}

namespace {

std::vector<std::pair<double, double>> hexagon_vertices(double R, std::pair<double, double> c) {
  if (!(R > 0.0)) throw DomainError("hexagon: circumradius must be positive");
  const double h = 0.5 * std::numbers::sqrt3 * R;
  return {{c.first + R, c.second},           {c.first + 0.5 * R, c.second + h}, {c.first - 0.5 * R, c.second + h},
          {c.first - R, c.second},           {c.first - 0.5 * R, c.second - h}, {c.first + 0.5 * R, c.second - h}};
}

}  // namespace

HexagonDomain::HexagonDomain(double circumradius, std::pair<double, double> center)
    : PolygonDomain(hexagon_vertices(circumradius, center), "hexagon") {}

}  // namespace fracwos
