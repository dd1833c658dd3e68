#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fracwos/engine.hpp"
#include "fracwos/geometry.hpp"
#include "fracwos/kernels.hpp"

/// Deterministic reference values and the catalogue of manufactured
/// solutions used to validate the walk.
namespace fracwos {

struct ExactCase {
  std::string name;
  int n;
  FracOrder alpha;
  std::shared_ptr<const Domain> domain;
  Field f;
  Field g;
  std::optional<Field> u_exact;

  ProblemSpec problem() const { return {n, alpha, f, g, domain}; }
};

/// Registered case names: disk_homogeneous, disk_nonhomogeneous, ball_highdim,
/// lshape_gaussian, stripe, hexagon, annulus.
std::vector<std::string> case_names();

/// Builds a registered case. n is only adjustable for ball_highdim
/// (default 10); the other cases are two-dimensional.
ExactCase make_case(const std::string& name, FracOrder alpha, std::optional<int> n = std::nullopt);

/// All registered cases at the given order.
std::vector<ExactCase> exact_registry(FracOrder alpha);

/// Named f/g/u fields usable from configuration files.
std::vector<std::string> builtin_field_names();
Field builtin_field(const std::string& name, FracOrder alpha, int n);

/// Signed power sign(b)·|b|^p.
double signed_pow(double b, double p);

struct QuadratureOptions {
  int angular_points = 16;      // starting resolution, doubled until converged
  int max_angular_points = 1024;
  double tolerance = 1e-8;      // on the change between two resolutions
  double radial_tolerance = 1e-12;
};

/// ∫_ball f(y) Q_r(x, y) dy + ∫_{|z−c|>r} g(z) P_r(x, z) dz for n ∈ {2, 3}.
/// The Green part uses polar coordinates around x (the singularity of
/// Q_r is absorbed by the Jacobian); the Poisson part uses polar coordinates
/// around the centre with t = r/|z − c| mapping the exterior to (0, 1).
double ball_solution_quadrature(const BallGeom& ball, FracOrder alpha, const Field& f, const Field& g, PointView x,
                                const QuadratureOptions& options = {});

/// Deterministic ζ(x) = ∫_ball Q_r(x, y) dy.
double zeta_quadrature(const BallGeom& ball, FracOrder alpha, PointView x, const QuadratureOptions& options = {});

}  // namespace fracwos
