#pragma once

#include "fracwos/kernels.hpp"
#include "fracwos/rng.hpp"
#include "fracwos/specfun.hpp"

namespace fracwos {

/// Uniform point on S^{n−1} (normalised Gaussian vector; ±1 for n = 1).
Point unit_direction(int n, RngStream& rng);

/// In-place variant writing into out (size n), for the walk's inner loop.
void unit_direction(RngStream& rng, std::span<double> out);

/// Distance from the centre of a ball of radius r to the exit point of a jump.
/// γ = r / sqrt(X) with X ~ Beta(α/2, 1−α/2); always > r.
double sample_exit_radius(double r, FracOrder alpha, RngStream& rng);

Point sample_exit_point(const BallGeom& ball, FracOrder alpha, RngStream& rng);

/// Rejection sampler for the normalised interior radius s in (0, 1).
/// Proposal s = U^{1/α}, accepted with probability w(s)/w(0⁺).
class InteriorRadiusSampler {
 public:
  static constexpr long kMaxProposals = 1'000'000;

  InteriorRadiusSampler(int n, FracOrder alpha);
  /// proposals, when given, is incremented by the number of proposals used.
  double operator()(RngStream& rng, long* proposals = nullptr) const;

  /// Expected acceptance probability B(n/2, α/2) / B((n−α)/2, α/2).
  double acceptance_rate() const;

 private:
  int n_;
  double alpha_;
  specfun::BetaParams params_;
};

double sample_interior_radius(int n, FracOrder alpha, RngStream& rng);

Point sample_interior_point(const BallGeom& ball, FracOrder alpha, RngStream& rng);

}  // namespace fracwos
