#include "fracwos/specfun.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracwos/types.hpp"

namespace fracwos::specfun {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

double log_beta(double a, double b) {
  if (a + b < 170.0) return std::log(beta(a, b));
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

// Modified Lentz evaluation of the incomplete Beta continued fraction.
// Returns I_x(a, b); intended for x ≤ a/(a+b) where it converges quickly.
// y is 1 − x, passed separately so callers can supply it exactly.
double ibeta_fraction(double x, double y, double a, double b) {
  const double log_front = a * std::log(x) + b * std::log(y) - log_beta(a, b);
  const double front = std::exp(log_front) / a;
  if (front == 0.0) return 0.0;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::fabs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= 20000; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) <= kEps) return front * h;
  }
  throw DomainError("incomplete beta continued fraction did not converge (a=" + std::to_string(a) +
                    ", b=" + std::to_string(b) + ", x=" + std::to_string(x) + ")");
}

struct IbetaPair {
  double lower;  // I_x(a, b)
  double upper;  // 1 − I_x(a, b)
};

IbetaPair ibeta_pair(double x, double a, double b) {
  if (x == 0.0) return {0.0, 1.0};
  if (x == 1.0) return {1.0, 0.0};
  const double y = 1.0 - x;
  if (x <= a / (a + b)) {
    const double v = ibeta_fraction(x, y, a, b);
    return {v, 1.0 - v};
  }
  const double v = ibeta_fraction(y, x, b, a);
  return {1.0 - v, v};
}

void check_unit_interval(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError(std::string(what) + ": argument " + std::to_string(x) + " outside [0, 1]");
  }
}

// Abramowitz–Stegun style starting point for I_x(a, b) = p.
double inverse_initial_guess(double p, double a, double b) {
  if (a >= 1.0 && b >= 1.0) {
    const double pp = p < 0.5 ? p : 1.0 - p;
    const double t = std::sqrt(-2.0 * std::log(pp));
    double x = (2.30753 + t * 0.27061) / (1.0 + t * (0.99229 + t * 0.04481)) - t;
    if (p < 0.5) x = -x;
    const double al = (x * x - 3.0) / 6.0;
    const double h = 2.0 / (1.0 / (2.0 * a - 1.0) + 1.0 / (2.0 * b - 1.0));
    const double w = x * std::sqrt(al + h) / h -
                     (1.0 / (2.0 * b - 1.0) - 1.0 / (2.0 * a - 1.0)) * (al + 5.0 / 6.0 - 2.0 / (3.0 * h));
    return a / (a + b * std::exp(2.0 * w));
  }
  const double lna = std::log(a / (a + b));
  const double lnb = std::log(b / (a + b));
  const double t = std::exp(a * lna) / a;
  const double u = std::exp(b * lnb) / b;
  const double w = t + u;
  if (p < t / w) return std::pow(a * w * p, 1.0 / a);
  return 1.0 - std::pow(b * w * (1.0 - p), 1.0 / b);
}

// Root of I_x(a, b) = target, known to lie in (0, hi].
double solve_lower_tail(double target, double a, double b, double hi) {
  const double lb = log_beta(a, b);
  // I_x ≈ x^a / (a B) near 0; below the smallest subnormal the answer is 0.
  if ((std::log(target) + std::log(a) + lb) / a < std::log(std::numeric_limits<double>::denorm_min())) return 0.0;
  double lo = 0.0;
  double x = inverse_initial_guess(target, a, b);
  if (!(x > lo && x < hi)) x = 0.5 * hi;

  for (int it = 0; it < 200; ++it) {
    const double fx = ibeta_pair(x, a, b).lower - target;
    if (fx == 0.0) return x;
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    if (std::fabs(fx) <= 2.0 * kEps * target) return x;

    const double log_density = (a - 1.0) * std::log(x) + (b - 1.0) * std::log1p(-x) - lb;
    const double density = std::exp(log_density);
    double xn;
    if (density > 0.0 && std::isfinite(density)) {
      double step = fx / density;
      const double curvature = (a - 1.0) / x - (b - 1.0) / (1.0 - x);
      const double halley = 1.0 - 0.5 * step * curvature;
      if (halley > 0.2 && halley < 5.0) step /= halley;
      xn = x - step;
    } else {
      xn = -1.0;
    }
    if (!(xn > lo && xn < hi)) {
      if (lo == 0.0) {
        xn = 0.125 * hi;
      } else if (hi > 8.0 * lo) {
        xn = std::sqrt(lo * hi);
      } else {
        xn = 0.5 * (lo + hi);
      }
    }
    if (std::fabs(xn - x) <= 2.0 * kEps * xn) return xn;
    x = xn;
  }
  return x;
}

// Kahan-compensated hypergeometric series with early-exit on two small terms.
template <typename Ratio>
double sum_series(Ratio ratio, const char* what) {
  double sum = 1.0;
  double comp = 0.0;
  double term = 1.0;
  int small = 0;
  for (long k = 0; k < 2'000'000; ++k) {
    term *= ratio(static_cast<double>(k));
    const double y = term - comp;
    const double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (term == 0.0) return sum;
    if (std::fabs(term) <= 1e-17 * std::fabs(sum)) {
      if (++small >= 2) return sum;
    } else {
      small = 0;
    }
  }
  throw DomainError(std::string(what) + ": series did not converge");
}

bool nonpositive_integer(double c) { return c <= 0.0 && c == std::floor(c); }

}  // namespace

BetaParams::BetaParams(double a_, double b_) : a(a_), b(b_) {
  if (!positive_finite(a) || !positive_finite(b)) {
    throw DomainError("Beta parameters must be positive: a=" + std::to_string(a) +
                      ", b=" + std::to_string(b));
  }
}

double beta(double a, double b) {
  if (!positive_finite(a) || !positive_finite(b)) {
    throw DomainError("beta: nonpositive argument a=" + std::to_string(a) + ", b=" + std::to_string(b));
  }
  if (a + b < 170.0) return std::tgamma(a) * std::tgamma(b) / std::tgamma(a + b);
  return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double reg_inc_beta(double x, const BetaParams& p) {
  check_unit_interval(x, "reg_inc_beta");
  return ibeta_pair(x, p.a, p.b).lower;
}

double reg_inc_beta_complement(double x, const BetaParams& p) {
  check_unit_interval(x, "reg_inc_beta_complement");
  return ibeta_pair(x, p.a, p.b).upper;
}

double inc_beta(double x, const BetaParams& p) {
  check_unit_interval(x, "inc_beta");
  return beta(p.a, p.b) * ibeta_pair(x, p.a, p.b).lower;
}

double inv_reg_inc_beta(double u, const BetaParams& p) {
  check_unit_interval(u, "inv_reg_inc_beta");
  if (u == 0.0) return 0.0;
  if (u == 1.0) return 1.0;
  // Resolve whichever of x, 1 − x is below one half.
  const double at_half = ibeta_pair(0.5, p.a, p.b).lower;
  if (u == at_half) return 0.5;
  if (u < at_half) return solve_lower_tail(u, p.a, p.b, 0.5);
  return 1.0 - solve_lower_tail(1.0 - u, p.b, p.a, 0.5);
}

double hyp2f1(double a, double b, double c, double z) {
  if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) || !std::isfinite(z)) {
    throw DomainError("hyp2f1: non-finite argument");
  }
  if (nonpositive_integer(c)) throw DomainError("hyp2f1: c is a nonpositive integer");
  if (z > 0.5) throw DomainError("hyp2f1: only z <= 1/2 is supported");
  if (z == 0.0) return 1.0;
  if (z >= -0.5) {
    return sum_series([&](double k) { return (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z; }, "hyp2f1");
  }
  // Pfaff: (1−z)^{−a} ₂F₁(a, c−b; c; z/(z−1)); the variant whose terms
  // decay like k^{−|a−b|−1} is the faster one.
  const double w = z / (z - 1.0);
  double p = a;
  double q = c - b;
  if (b < a) {
    p = b;
    q = c - a;
  }
  const double s = sum_series([&](double k) { return (p + k) * (q + k) / ((c + k) * (k + 1.0)) * w; }, "hyp2f1");
  return std::pow(1.0 - z, -p) * s;
}

double hyp1f1(double a, double c, double z) {
  if (!std::isfinite(a) || !std::isfinite(c) || !std::isfinite(z)) {
    throw DomainError("hyp1f1: non-finite argument");
  }
  if (nonpositive_integer(c)) throw DomainError("hyp1f1: c is a nonpositive integer");
  if (z == 0.0) return 1.0;
  if (z > 0.0) {
    return sum_series([&](double k) { return (a + k) / ((c + k) * (k + 1.0)) * z; }, "hyp1f1");
  }
  const double ca = c - a;
  const double s = sum_series([&](double k) { return (ca + k) / ((c + k) * (k + 1.0)) * (-z); }, "hyp1f1");
  return std::exp(z) * s;
}

std::vector<QuadratureNode> gauss_jacobi_rule(int m, double left_exponent, double right_exponent) {
  if (m < 1) throw DomainError("gauss_jacobi_rule: need at least one node");
  if (!(left_exponent > -1.0) || !(right_exponent > -1.0)) {
    throw DomainError("gauss_jacobi_rule: exponents must exceed -1");
  }
  // Jacobi weight (1−t)^al (1+t)^be on [−1, 1]; s = (1+t)/2.
  const double al = right_exponent;
  const double be = left_exponent;
  const double ab = al + be;

  Eigen::VectorXd diag(m);
  Eigen::VectorXd off(std::max(m - 1, 1));
  for (int k = 0; k < m; ++k) {
    const double two_k = 2.0 * k + ab;
    if (k == 0) {
      diag(k) = (be - al) / (ab + 2.0);
    } else {
      diag(k) = (be * be - al * al) / (two_k * (two_k + 2.0));
    }
  }
  for (int k = 1; k < m; ++k) {
    const double kk = k;
    const double two_k = 2.0 * kk + ab;
    double b2;
    if (k == 1) {
      b2 = 4.0 * (1.0 + al) * (1.0 + be) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
    } else {
      b2 = 4.0 * kk * (kk + al) * (kk + be) * (kk + ab) /
           (two_k * two_k * (two_k + 1.0) * (two_k - 1.0));
    }
    off(k - 1) = std::sqrt(b2);
  }

  // Total mass of the weight on (0, 1).
  const double mu0 = beta(left_exponent + 1.0, right_exponent + 1.0);

  std::vector<QuadratureNode> rule(static_cast<std::size_t>(m));
  if (m == 1) {
    rule[0] = {0.5 * (1.0 + diag(0)), mu0};
    return rule;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, off.head(m - 1), Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) throw DomainError("gauss_jacobi_rule: eigen solve failed");
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  for (int i = 0; i < m; ++i) {
    const double v0 = vectors(0, i);
    rule[static_cast<std::size_t>(i)] = {0.5 * (1.0 + values(i)), mu0 * v0 * v0};
  }
  std::sort(rule.begin(), rule.end(), [](const auto& l, const auto& r) { return l.node < r.node; });
  return rule;
}

}  // namespace fracwos::specfun
