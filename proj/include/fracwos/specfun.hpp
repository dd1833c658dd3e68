#pragma once

#include <vector>

/// Real special functions used by the ball kernels, the jump samplers and
/// the manufactured source terms.
namespace fracwos::specfun {

/// Shape parameters (a, b) of the Beta family. Both strictly positive.
struct BetaParams {
  double a;
  double b;

  BetaParams(double a_, double b_);
  BetaParams swapped() const { return {b, a}; }
};

/// Complete Beta function B(a, b) = Γ(a)Γ(b)/Γ(a+b).
double beta(double a, double b);

/// Unregularized incomplete Beta B(x; a, b) = ∫₀ˣ t^{a−1}(1−t)^{b−1} dt.
double inc_beta(double x, const BetaParams& p);

/// Regularized incomplete Beta I_x(a, b).
double reg_inc_beta(double x, const BetaParams& p);

/// 1 − I_x(a, b), evaluated without cancellation.
double reg_inc_beta_complement(double x, const BetaParams& p);

/// Solves I_x(a, b) = u for x in [0, 1].
///
/// Halley/Newton iteration inside a shrinking bracket, falling back to
/// bisection whenever a step leaves it. Targets above one half are solved
/// on the mirrored problem I_{1−x}(b, a) = 1 − u so that the side with the
/// small tail probability is always resolved in relative precision.
double inv_reg_inc_beta(double u, const BetaParams& p);

/// Gauss hypergeometric ₂F₁(a, b; c; z) for real z ≤ 0.
///
/// Direct series for |z| ≤ 1/2; for z < −1/2 the Pfaff transformation maps
/// the argument to z/(z−1) ∈ (1/3, 1). Supported range z ∈ [−40, 0] to
/// 1e−10 relative accuracy; larger |z| works but slows down.
double hyp2f1(double a, double b, double c, double z);

/// Confluent hypergeometric ₁F₁(a; c; z). For z < 0 Kummer's transformation
/// e^z ₁F₁(c−a; c; −z) is summed instead of the alternating series.
double hyp1f1(double a, double c, double z);

struct QuadratureNode {
  double node;
  double weight;
};

/// m-point Gauss rule for ∫₀¹ s^{left}(1−s)^{right} q(s) ds, exact for
/// polynomials q of degree ≤ 2m−1. Exponents must exceed −1.
std::vector<QuadratureNode> gauss_jacobi_rule(int m, double left_exponent, double right_exponent);

/// Shorthand for the one-sided weight s^{exponent} on (0, 1).
inline std::vector<QuadratureNode> gauss_jacobi_rule(int m, double exponent) {
  return gauss_jacobi_rule(m, exponent, 0.0);
}

}  // namespace fracwos::specfun
