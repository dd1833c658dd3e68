#include "fracwos/kernels.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "fracwos/rng.hpp"
#include "fracwos/sampling.hpp"
#include "fracwos/specfun.hpp"

namespace fracwos {

using specfun::BetaParams;

namespace {

constexpr double kPi = std::numbers::pi;

void check_dimension(int n) {
  if (n < 1) throw DomainError("dimension must be at least 1, got " + std::to_string(n));
}

// Shape parameters ((n−α)/2, α/2) of the Green-function Beta integral.
BetaParams green_params(int n, double alpha) {
  const double a = 0.5 * (n - alpha);
  if (!(a > 0.0)) {
    throw DomainError("unsupported order alpha=" + std::to_string(alpha) + " for n=" + std::to_string(n) +
                      " (requires alpha < n)");
  }
  return {a, 0.5 * alpha};
}

// ∫₀¹ s^{α−1} w(s) ds, split at s = 1/2:
//   (1/2)^α B/α − ∫₀^{1/2} s^{α−1} B(s²; a, b) ds + ∫_{1/2}^1 s^{α−1} w(s) ds.
// The middle integrand is s^{n−1}·(analytic in s²); the last one is
// (1−s)^{α/2}·(smooth), handled by a Jacobi weight.
double radial_mass(int n, double alpha, int m) {
  const BetaParams p = green_params(n, alpha);
  const double full = specfun::beta(p.a, p.b);
  double sum = std::pow(0.5, alpha) * full / alpha;

  for (const auto& q : specfun::gauss_jacobi_rule(m, 0.0, 0.0)) {
    const double s = 0.5 * q.node;
    sum -= 0.5 * q.weight * std::pow(s, alpha - 1.0) * specfun::inc_beta(s * s, p);
  }
  const double half_b = 0.5 * alpha;
  // On (1/2, 1): s = (1+t)/2 with t in (0, 1), ds = dt/2; the rule carries
  // the factor (1−t)^{α/2}.
  for (const auto& q : specfun::gauss_jacobi_rule(m, 0.0, half_b)) {
    const double s = 0.5 * (1.0 + q.node);
    const double w = full * specfun::reg_inc_beta_complement(s * s, p);
    sum += 0.5 * q.weight * std::pow(s, alpha - 1.0) * w / std::pow(1.0 - q.node, half_b);
  }
  return sum;
}

}  // namespace

FracOrder::FracOrder(double alpha) : alpha_(alpha) {
  if (!(alpha >= kMin && alpha <= kMax)) {
    throw DomainError("alpha=" + std::to_string(alpha) + " outside supported range [0.05, 1.95]");
  }
}

BallGeom::BallGeom(Point c, double r) : center(std::move(c)), radius(r) {
  if (center.empty()) throw DomainError("ball centre must have dimension >= 1");
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("ball radius must be positive");
}

double unit_sphere_area(int n) {
  check_dimension(n);
  return 2.0 * std::pow(kPi, 0.5 * n) / std::tgamma(0.5 * n);
}

KernelConstants make_constants(int n, FracOrder alpha, int quad_points) {
  check_dimension(n);
  if (quad_points < 1) throw DomainError("quad_points must be positive");
  const double a = alpha.value();
  const BetaParams p = green_params(n, a);

  KernelConstants k;
  k.n = n;
  k.alpha = a;
  const double g_half_n = std::tgamma(0.5 * n);
  const double g_half_a = std::tgamma(0.5 * a);
  k.c_tilde = g_half_n * std::sin(0.5 * kPi * a) / std::pow(kPi, 0.5 * n + 1.0);
  k.c_hat = g_half_n / (std::pow(2.0, a) * std::pow(kPi, 0.5 * n) * g_half_a * g_half_a);
  k.beta_full = specfun::beta(p.a, p.b);

  const double scale = std::pow(2.0, 1.0 - a) / (g_half_a * g_half_a);
  int m = quad_points;
  double prev = scale * radial_mass(n, a, m);
  for (;;) {
    if (m > (1 << 14)) throw DomainError("zeta_unit quadrature did not converge");
    const double next = scale * radial_mass(n, a, 2 * m);
    m *= 2;
    if (std::fabs(next - prev) < 1e-10) {
      prev = next;
      break;
    }
    prev = next;
  }
  k.zeta_unit = prev;
  k.quad_points_used = m;
  return k;
}

double zeta_unit_closed_form(int n, FracOrder alpha) {
  check_dimension(n);
  const double a = alpha.value();
  return std::exp(std::lgamma(0.5 * n) - a * std::log(2.0) - std::lgamma(1.0 + 0.5 * a) -
                  std::lgamma(0.5 * (n + a)));
}

double poisson_kernel(const BallGeom& ball, PointView x, PointView z, const KernelConstants& k) {
  const int n = ball.dimension();
  if (static_cast<int>(x.size()) != n || static_cast<int>(z.size()) != n || k.n != n) {
    throw DomainError("poisson_kernel: dimension mismatch");
  }
  const PointView c(ball.center);
  const double r2 = ball.radius * ball.radius;
  const double x2 = distance2(x, c);
  const double z2 = distance2(z, c);
  if (!(x2 < r2)) throw DomainError("poisson_kernel: x must lie in the open ball");
  if (!(z2 > r2)) throw DomainError("poisson_kernel: z must lie outside the closed ball");
  const double ratio = (r2 - x2) / (z2 - r2);
  return k.c_tilde * std::pow(ratio, 0.5 * k.alpha) * std::pow(distance2(x, z), -0.5 * n);
}

double green_function(const BallGeom& ball, PointView x, PointView y, const KernelConstants& k) {
  const int n = ball.dimension();
  if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n || k.n != n) {
    throw DomainError("green_function: dimension mismatch");
  }
  const BetaParams p = green_params(n, k.alpha);
  const PointView c(ball.center);
  const double r2 = ball.radius * ball.radius;
  const double hx = r2 - distance2(x, c);
  const double hy = r2 - distance2(y, c);
  if (!(hx > 0.0) || !(hy > 0.0)) throw DomainError("green_function: points must lie in the open ball");
  const double d2 = distance2(x, y);
  if (d2 == 0.0) throw DomainError("green_function: singular at x = y");
  const double prod = hx * hy;
  // 1 − ρ* computed directly; B(a,b) − B(ρ*; a,b) = B(a,b)·I_{1−ρ*}(b, a).
  const double one_minus_rho = prod / (prod + r2 * d2);
  const double bracket = k.beta_full * specfun::reg_inc_beta(one_minus_rho, p.swapped());
  return k.c_hat * std::pow(d2, 0.5 * (k.alpha - n)) * bracket;
}

double exit_radius_cdf(double gamma, double r, FracOrder alpha) {
  if (!(r > 0.0)) throw DomainError("exit_radius_cdf: radius must be positive");
  if (!(gamma >= r)) throw DomainError("exit_radius_cdf: gamma must be at least r");
  if (std::isinf(gamma)) return 1.0;
  const double q = (r / gamma) * (r / gamma);
  const double a = alpha.value();
  return specfun::reg_inc_beta_complement(q, BetaParams(0.5 * a, 1.0 - 0.5 * a));
}

double interior_radial_weight(double s, int n, FracOrder alpha) {
  check_dimension(n);
  if (!(s > 0.0 && s < 1.0)) throw DomainError("interior_radial_weight: s must lie in (0, 1)");
  const BetaParams p = green_params(n, alpha.value());
  return specfun::beta(p.a, p.b) * specfun::reg_inc_beta_complement(s * s, p);
}

double interior_radial_cdf(double s, int n, FracOrder alpha) {
  check_dimension(n);
  if (!(s >= 0.0 && s <= 1.0)) throw DomainError("interior_radial_cdf: s must lie in [0, 1]");
  if (s == 0.0) return 0.0;
  if (s == 1.0) return 1.0;
  const double a = alpha.value();
  const BetaParams outer(0.5 * n, 0.5 * a);
  const double w = interior_radial_weight(s, n, alpha);
  return (std::pow(s, a) * w + specfun::inc_beta(s * s, outer)) / specfun::beta(outer.a, outer.b);
}

double zeta_center(const BallGeom& ball, const KernelConstants& k) {
  return std::pow(ball.radius, k.alpha) * k.zeta_unit;
}

McValue zeta_general(const BallGeom& ball, PointView x, const KernelConstants& k, std::size_t mc_samples,
                     std::uint64_t seed) {
  const int n = ball.dimension();
  if (static_cast<int>(x.size()) != n || k.n != n) throw DomainError("zeta_general: dimension mismatch");
  if (mc_samples < 2) throw DomainError("zeta_general: need at least two samples");
  const PointView c(ball.center);
  const double r2 = ball.radius * ball.radius;
  const double hx = r2 - distance2(x, c);
  if (!(hx > 0.0)) throw DomainError("zeta_general: x must lie in the open ball");

  const BetaParams swapped = green_params(n, k.alpha).swapped();
  std::vector<double> xc(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) xc[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)] - c[static_cast<std::size_t>(i)];

  // y = x + ρe, ρ = R(e)·U^{1/α}; weight |S|R^α/α · Q ρ^{n−α}, where
  // Q ρ^{n−α} = Ĉ B(a,b) I_{1−ρ*}(b, a) is bounded.
  const double prefactor = unit_sphere_area(n) / k.alpha * k.c_hat * k.beta_full;
  RngStream rng(seed, 0);
  std::vector<double> e(static_cast<std::size_t>(n));
  double mean = 0.0;
  double m2 = 0.0;
  for (std::size_t i = 0; i < mc_samples; ++i) {
    unit_direction(rng, e);
    const double xe = dot(xc, e);
    const double root = std::sqrt(xe * xe + hx);
    const double R = -xe + root;
    const double Rp = xe + root;
    const double rho = R * std::pow(rng.uniform(), 1.0 / k.alpha);
    const double hy = (R - rho) * (rho + Rp);
    const double prod = hx * hy;
    const double one_minus_rho = prod / (prod + r2 * rho * rho);
    const double v = prefactor * std::pow(R, k.alpha) * specfun::reg_inc_beta(one_minus_rho, swapped);
    const double delta = v - mean;
    mean += delta / static_cast<double>(i + 1);
    m2 += delta * (v - mean);
  }
  const double var = m2 / static_cast<double>(mc_samples - 1);
  return {mean, std::sqrt(var / static_cast<double>(mc_samples))};
}

}  // namespace fracwos
