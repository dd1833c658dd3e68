#include "fracwos/oracle.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <numbers>

#include "fracwos/specfun.hpp"

namespace fracwos {

namespace {

constexpr double kPi = std::numbers::pi;

double sq_norm(PointView x) { return norm2(x); }

// 2^α Γ(1+α/2) Γ((n+α)/2) / Γ(n/2): the constant source whose solution on
// the unit ball is (1 − |x|²)_+^{α/2}.
double ball_power_constant(double alpha, int n) {
  return std::exp(alpha * std::log(2.0) + std::lgamma(1.0 + 0.5 * alpha) + std::lgamma(0.5 * (n + alpha)) -
                  std::lgamma(0.5 * n));
}

void require_2d(const std::string& name, int n) {
  if (n != 2) throw DomainError("field '" + name + "' is only defined in two dimensions");
}

// Integral over S^{n−1} of h(e) at angular resolution m. In 2-D the nodes
// cluster toward the direction of xc through the disk automorphism
// θ = φ + 2 atan(κ tan(ψ/2)), κ = (r − |xc|)/(r + |xc|), so points near the
// circle need no more nodes than the centre.
template <typename H>
double sphere_integral(int n, int m, PointView xc, double r, H&& h) {
  double total = 0.0;
  if (n == 2) {
    const double rho = std::hypot(xc[0], xc[1]);
    const double phi = std::atan2(xc[1], xc[0]);
    const double kappa = std::sqrt((r - rho) / (r + rho));
    const double w = 2.0 * kPi / m;
    for (int j = 0; j < m; ++j) {
      const double psi = w * (j + 0.5) - kPi;
      const double c = std::cos(0.5 * psi);
      const double sn = std::sin(0.5 * psi);
      const double th = phi + 2.0 * std::atan2(kappa * sn, c);
      const double jac = kappa / (c * c + kappa * kappa * sn * sn);
      const double e[2] = {std::cos(th), std::sin(th)};
      total += w * jac * h(PointView(e, 2));
    }
    return total;
  }
  // n == 3: Gauss–Legendre in cos θ, trapezoid in φ.
  const auto rule = specfun::gauss_jacobi_rule(m, 0.0, 0.0);
  const int mphi = 2 * m;
  const double wphi = 2.0 * kPi / mphi;
  for (const auto& q : rule) {
    const double mu = 2.0 * q.node - 1.0;
    const double sin_t = std::sqrt(std::max(0.0, 1.0 - mu * mu));
    for (int j = 0; j < mphi; ++j) {
      const double ph = wphi * (j + 0.5);
      const double e[3] = {sin_t * std::cos(ph), sin_t * std::sin(ph), mu};
      total += 2.0 * q.weight * wphi * h(PointView(e, 3));
    }
  }
  return total;
}

struct Integrands {
  const BallGeom& ball;
  const KernelConstants& k;
  const Field* f;
  const Field* g;
  Point xc;     // x − c
  double hx;    // r² − |x − c|²
  boost::math::quadrature::tanh_sinh<double> integrator;
  double tol;

  // ∫₀^{R(e)} Q(x, x+ρe) f(x+ρe) ρ^{n−1} dρ with ρ = R t^{1/α}.
  double green_ray(PointView e) {
    const int n = k.n;
    const double r2 = ball.radius * ball.radius;
    const double xe = dot(xc, e);
    const double root = std::sqrt(xe * xe + hx);
    const double R = -xe + root;
    const double Rp = xe + root;
    const specfun::BetaParams swapped(0.5 * k.alpha, 0.5 * (n - k.alpha));
    const double scale = k.c_hat * k.beta_full * std::pow(R, k.alpha) / k.alpha;
    Point y(static_cast<std::size_t>(n));
    auto integrand = [&](double t) {
      const double rho = R * std::pow(t, 1.0 / k.alpha);
      const double prod = hx * (R - rho) * (rho + Rp);
      if (!(prod > 0.0)) return 0.0;
      const double one_minus_rho = prod / (prod + r2 * rho * rho);
      for (int i = 0; i < n; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        y[ii] = ball.center[ii] + xc[ii] + rho * e[ii];
      }
      return specfun::reg_inc_beta(one_minus_rho, swapped) * (*f)(y);
    };
    return scale * integrator.integrate(integrand, 0.0, 1.0, tol);
  }

  // ∫_r^∞ P(x, c+ρe) g(c+ρe) ρ^{n−1} dρ with t = r/ρ.
  double poisson_ray(PointView e) {
    const int n = k.n;
    const double r = ball.radius;
    const double scale = k.c_tilde * std::pow(hx, 0.5 * k.alpha) * std::pow(r, n - k.alpha);
    Point z(static_cast<std::size_t>(n));
    // s = 1 − t is passed separately so the (1 − t)^{−α/2} endpoint keeps full precision.
    auto integrand = [&](double t, double s) {
      double d2 = 0.0;
      for (int i = 0; i < n; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        const double d = t * xc[ii] - r * e[ii];
        d2 += d * d;
        z[ii] = ball.center[ii] + (r / t) * e[ii];
      }
      const double gz = (*g)(z);
      if (gz == 0.0) return 0.0;
      return std::pow(t, k.alpha - 1.0) * std::pow(s * (1.0 + t), -0.5 * k.alpha) * std::pow(d2, -0.5 * n) * gz;
    };
    const double lower = integrator.integrate([&](double t) { return integrand(t, 1.0 - t); }, 0.0, 0.5, tol);
    const double upper = integrator.integrate([&](double s) { return integrand(1.0 - s, s); }, 0.0, 0.5, tol);
    return scale * (lower + upper);
  }
};

double converge_angular(int n, const QuadratureOptions& opt, Integrands& in, bool with_green, bool with_poisson) {
  auto eval = [&](int m) {
    return sphere_integral(n, m, in.xc, in.ball.radius, [&](PointView e) {
      double v = 0.0;
      if (with_green) v += in.green_ray(e);
      if (with_poisson) v += in.poisson_ray(e);
      return v;
    });
  };
  int m = std::max(4, opt.angular_points);
  double prev = eval(m);
  while (2 * m <= opt.max_angular_points) {
    m *= 2;
    const double next = eval(m);
    if (std::fabs(next - prev) < opt.tolerance) return next;
    prev = next;
  }
  throw OracleError("angular quadrature did not converge to " + std::to_string(opt.tolerance) + " within " +
                    std::to_string(opt.max_angular_points) + " points");
}

}  // namespace

double signed_pow(double b, double p) {
  if (b == 0.0) return 0.0;
  return std::copysign(std::pow(std::fabs(b), p), b);
}

std::vector<std::string> builtin_field_names() {
  return {"zero",           "one",         "ball_power_source", "ball_power",     "rational_source",
          "rational",       "gaussian_source", "gaussian",      "stripe_source",  "hexagon_source",
          "annulus_source"};
}

Field builtin_field(const std::string& name, FracOrder alpha_order, int n) {
  const double alpha = alpha_order.value();
  if (n < 1) throw DomainError("field dimension must be at least 1");
  if (name == "zero") return [](PointView) { return 0.0; };
  if (name == "one") return [](PointView) { return 1.0; };
  if (name == "ball_power_source") {
    const double c = ball_power_constant(alpha, n);
    return [c](PointView x) { return sq_norm(x) < 1.0 ? c : 0.0; };
  }
  if (name == "ball_power") {
    return [alpha](PointView x) {
      const double h = 1.0 - sq_norm(x);
      return h > 0.0 ? std::pow(h, 0.5 * alpha) : 0.0;
    };
  }
  if (name == "rational_source") {
    require_2d(name, n);
    const double c = std::tgamma(2.0 + alpha);
    return [c, alpha](PointView x) {
      return c * specfun::hyp2f1(0.5 * (2.0 + alpha), 0.5 * (3.0 + alpha), 1.0, -sq_norm(x));
    };
  }
  if (name == "rational") {
    return [](PointView x) { return std::pow(1.0 + sq_norm(x), -1.5); };
  }
  if (name == "gaussian_source") {
    require_2d(name, n);
    const double c = std::pow(2.0, alpha) * std::tgamma(1.0 + 0.5 * alpha);
    return [c, alpha](PointView x) { return c * specfun::hyp1f1(0.5 * (2.0 + alpha), 1.0, -sq_norm(x)); };
  }
  if (name == "gaussian") {
    return [](PointView x) { return std::exp(-sq_norm(x)); };
  }
  if (name == "stripe_source") {
    require_2d(name, n);
    const double c = std::pow(2.0, alpha) * std::tgamma(1.0 + 0.5 * alpha);
    return [c, alpha](PointView x) {
      const double c1x = kPi / 3.0 * x[0] - kPi / 4.0 * x[1];
      const double c2x = -kPi / 2.0 * x[0] + 2.0 * kPi / 3.0 * x[1];
      return c * (signed_pow(std::cos(c2x), alpha / 3.0) + signed_pow(std::sin(c1x), alpha / 2.0)) *
             std::cos(-sq_norm(x));
    };
  }
  if (name == "hexagon_source") {
    require_2d(name, n);
    return [alpha](PointView x) {
      const double c1x = kPi / 3.0 * x[0] - kPi / 4.0 * x[1];
      const double c2x = -kPi / 2.0 * x[0] + 2.0 * kPi / 3.0 * x[1];
      const double s = std::sin(c1x);
      const double c = std::cos(c2x);
      const double p = alpha * x[0] * x[1];
      return s * s + c * c - p * p * p;
    };
  }
  if (name == "annulus_source") {
    require_2d(name, n);
    return [](PointView x) {
      return std::cos(x[1] * x[1] - 2.0 * x[0] * x[1]) - std::sin(x[0] * x[0] + 2.0 * x[0] * x[1]);
    };
  }
  throw DomainError("unknown builtin field '" + name + "'");
}

std::vector<std::string> case_names() {
  return {"disk_homogeneous", "disk_nonhomogeneous", "ball_highdim", "lshape_gaussian",
          "stripe",           "hexagon",             "annulus"};
}

ExactCase make_case(const std::string& name, FracOrder alpha, std::optional<int> n) {
  if (n && name != "ball_highdim" && *n != 2) {
    throw DomainError("case '" + name + "' is two-dimensional");
  }
  auto field = [&](const char* f, int dim) { return builtin_field(f, alpha, dim); };
  if (name == "disk_homogeneous") {
    return {name, 2, alpha, std::make_shared<BallDomain>(Point{0.0, 0.0}, 1.0), field("ball_power_source", 2),
            field("zero", 2), field("ball_power", 2)};
  }
  if (name == "disk_nonhomogeneous") {
    return {name, 2, alpha, std::make_shared<BallDomain>(Point{0.0, 0.0}, 1.0), field("rational_source", 2),
            field("rational", 2), field("rational", 2)};
  }
  if (name == "ball_highdim") {
    const int dim = n.value_or(10);
    return {name, dim, alpha, std::make_shared<BallDomain>(Point(static_cast<std::size_t>(dim), 0.0), 1.0),
            field("ball_power_source", dim), field("zero", dim), field("ball_power", dim)};
  }
  if (name == "lshape_gaussian") {
    return {name, 2, alpha, std::make_shared<LShapeDomain>(), field("gaussian_source", 2), field("gaussian", 2),
            field("gaussian", 2)};
  }
  if (name == "stripe") {
    return {name, 2, alpha, std::make_shared<BoxDomain>(Point{-5.0, -0.5}, Point{5.0, 0.5}),
            field("stripe_source", 2), field("zero", 2), std::nullopt};
  }
  if (name == "hexagon") {
    return {name, 2, alpha, std::make_shared<HexagonDomain>(), field("hexagon_source", 2), field("zero", 2),
            std::nullopt};
  }
  if (name == "annulus") {
    return {name, 2, alpha, std::make_shared<AnnulusDomain>(Point{0.0, 0.0}, std::sqrt(0.3), 1.0),
            field("annulus_source", 2), field("zero", 2), std::nullopt};
  }
  throw DomainError("unknown case '" + name + "'");
}

std::vector<ExactCase> exact_registry(FracOrder alpha) {
  std::vector<ExactCase> out;
  for (const auto& name : case_names()) out.push_back(make_case(name, alpha));
  return out;
}

double ball_solution_quadrature(const BallGeom& ball, FracOrder alpha, const Field& f, const Field& g, PointView x,
                                const QuadratureOptions& options) {
  const int n = ball.dimension();
  if (n != 2 && n != 3) throw DomainError("ball_solution_quadrature supports n = 2 or 3 only");
  if (static_cast<int>(x.size()) != n) throw DomainError("ball_solution_quadrature: dimension mismatch");
  const double hx = ball.radius * ball.radius - distance2(x, ball.center);
  if (!(hx > 0.0)) throw DomainError("ball_solution_quadrature: x must lie in the open ball");
  const KernelConstants k = make_constants(n, alpha);
  Point xc(x.begin(), x.end());
  for (std::size_t i = 0; i < xc.size(); ++i) xc[i] -= ball.center[i];
  Integrands in{ball, k, &f, &g, xc, hx, {}, options.radial_tolerance};
  return converge_angular(n, options, in, static_cast<bool>(f), static_cast<bool>(g));
}

double zeta_quadrature(const BallGeom& ball, FracOrder alpha, PointView x, const QuadratureOptions& options) {
  const Field one = [](PointView) { return 1.0; };
  return ball_solution_quadrature(ball, alpha, one, Field{}, x, options);
}

}  // namespace fracwos
