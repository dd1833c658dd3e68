#pragma once

#include <cstdint>
#include <cstddef>

#include "fracwos/types.hpp"

/// Ball kernels of the fractional Laplacian (−Δ)^{α/2}: Poisson kernel,
/// Green function, their radial laws and the occupation weight ζ.
namespace fracwos {

/// Order α of the operator, restricted to [0.05, 1.95].
class FracOrder {
 public:
  static constexpr double kMin = 0.05;
  static constexpr double kMax = 1.95;

  explicit FracOrder(double alpha);
  double value() const { return alpha_; }
  operator double() const { return alpha_; }

 private:
  double alpha_;
};

struct BallGeom {
  Point center;
  double radius;

  BallGeom(Point c, double r);
  int dimension() const { return static_cast<int>(center.size()); }
};

struct KernelConstants {
  int n = 0;
  double alpha = 0.0;
  double c_tilde = 0.0;    // Γ(n/2) sin(πα/2) / π^{n/2+1}
  double c_hat = 0.0;      // Γ(n/2) / (2^α π^{n/2} Γ²(α/2))
  double beta_full = 0.0;  // B((n−α)/2, α/2)
  double zeta_unit = 0.0;  // ζ at the centre of the unit ball
  int quad_points_used = 0;
};

/// Builds the constants for dimension n. zeta_unit comes from Gauss
/// quadrature, doubling from quad_points until successive values differ by
/// less than 1e−10. Requires (n−α)/2 > 0, so n = 1 needs α < 1.
KernelConstants make_constants(int n, FracOrder alpha, int quad_points = 64);

/// Γ(n/2) / (2^α Γ(1+α/2) Γ((n+α)/2)).
double zeta_unit_closed_form(int n, FracOrder alpha);

/// P_r(x, z) for x in the open ball and z outside the closed ball.
double poisson_kernel(const BallGeom& ball, PointView x, PointView z, const KernelConstants& k);

/// Q_r(x, y) in its incomplete Beta form; x ≠ y, both inside the ball.
double green_function(const BallGeom& ball, PointView x, PointView y, const KernelConstants& k);

/// Probability that a jump from the ball centre lands within distance gamma
/// of the centre: 1 − I_{r²/γ²}(α/2, 1−α/2).
double exit_radius_cdf(double gamma, double r, FracOrder alpha);

/// w(s) = B((n−α)/2, α/2) − B(s²; (n−α)/2, α/2) for s in (0, 1).
double interior_radial_weight(double s, int n, FracOrder alpha);

/// CDF of the normalised radius |Y − c|/r for the Green density at the centre,
/// [s^α w(s) + B(s²; n/2, α/2)] / B(n/2, α/2).
double interior_radial_cdf(double s, int n, FracOrder alpha);

/// ζ at the centre: radius^α · zeta_unit.
double zeta_center(const BallGeom& ball, const KernelConstants& k);

struct McValue {
  double value = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo estimate of ∫_ball Q_r(x, y) dy. Samples polar coordinates
/// around x with radial density ∝ ρ^{α−1}, which cancels the Green
/// singularity and leaves a bounded integrand.
McValue zeta_general(const BallGeom& ball, PointView x, const KernelConstants& k, std::size_t mc_samples,
                     std::uint64_t seed);

/// Surface area of the unit sphere S^{n−1}.
double unit_sphere_area(int n);

}  // namespace fracwos
