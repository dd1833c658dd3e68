#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fracwos/geometry.hpp"
#include "fracwos/kernels.hpp"

namespace fracwos {

/// (−Δ)^{α/2} u = f in Ω, u = g on Ω^c. g must be defined everywhere
/// outside Ω: exit jumps are heavy tailed and can land arbitrarily far.
struct ProblemSpec {
  int n;
  FracOrder alpha;
  Field f;
  Field g;
  std::shared_ptr<const Domain> domain;
};

struct WalkConfig {
  double epsilon = 1e-6;
  std::size_t num_paths = 1000;
  std::uint64_t seed = 0;
  std::size_t max_steps = 1'000'000;
  int zeta_quad_points = 64;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct PathRealization {
  double score = 0.0;
  std::size_t steps = 0;
  Point exit_point;
  bool stopped_in_shell = false;
};

struct Estimate {
  double mean = 0.0;
  double variance = 0.0;
  double std_error = 0.0;
  std::size_t n_paths = 0;
  std::size_t failed_paths = 0;
  double mean_steps = 0.0;
};

/// One walk from x0. Paths are keyed by (point_key(seed, x0), path_idx).
/// Throws PathError when max_steps jumps do not leave the domain.
PathRealization run_path(const ProblemSpec& problem, const WalkConfig& config, const KernelConstants& constants,
                         PointView x0, std::uint64_t path_idx);

/// Mean of num_paths scores. Failed paths are dropped and counted; the
/// reduction is pairwise in path order, so results do not depend on threads.
Estimate estimate_point(const ProblemSpec& problem, const WalkConfig& config, const KernelConstants& constants,
                        PointView x0);

struct FieldEntry {
  Point x;
  std::optional<Estimate> estimate;
  std::string error;
};

/// Independent estimate per point; a failing point records its error
/// without affecting the others.
std::vector<FieldEntry> estimate_field(const ProblemSpec& problem, const WalkConfig& config,
                                       const KernelConstants& constants, const std::vector<Point>& points);

struct StepBound {
  double p_star;
  double q_star;
  double bound;
};

/// Upper bound 1 + q*/(1−p*)² on the expected number of jumps in a ball of
/// radius r with shell width epsilon.
StepBound step_bound(int n, FracOrder alpha, double r, double epsilon);

struct ErrorMetric {
  double paper_error;  // (1/N)·sqrt(Σ d²)
  double rmse;         // sqrt(Σ d² / N)
};

ErrorMetric error_metric(const std::vector<double>& estimates, const std::vector<double>& exact);

/// Pairwise (cascade) sum in index order.
double pairwise_sum(const double* v, std::size_t count);

}  // namespace fracwos
