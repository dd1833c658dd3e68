#include "fracwos/sampling.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace fracwos {

void unit_direction(RngStream& rng, std::span<double> out) {
  if (out.empty()) throw DomainError("unit_direction: dimension must be at least 1");
  if (out.size() == 1) {
    out[0] = (rng() >> 63) ? 1.0 : -1.0;
    return;
  }
  for (;;) {
    double s = 0.0;
    for (double& v : out) {
      v = rng.normal();
      s += v * v;
    }
    if (s > 0.0) {
      const double inv = 1.0 / std::sqrt(s);
      for (double& v : out) v *= inv;
      return;
    }
  }
}

Point unit_direction(int n, RngStream& rng) {
  if (n < 1) throw DomainError("unit_direction: dimension must be at least 1");
  Point u(static_cast<std::size_t>(n));
  unit_direction(rng, u);
  return u;
}

double sample_exit_radius(double r, FracOrder alpha, RngStream& rng) {
  if (!(r > 0.0)) throw DomainError("sample_exit_radius: radius must be positive");
  const double a = alpha.value();
  double x = specfun::inv_reg_inc_beta(rng.uniform(), specfun::BetaParams(0.5 * a, 1.0 - 0.5 * a));
  // Tail draws for small α can underflow; cap at the smallest normal double.
  if (x < std::numeric_limits<double>::min()) x = std::numeric_limits<double>::min();
  const double gamma = r / std::sqrt(x);
  return gamma > r ? gamma : std::nextafter(r, std::numeric_limits<double>::infinity());
}

Point sample_exit_point(const BallGeom& ball, FracOrder alpha, RngStream& rng) {
  const double gamma = sample_exit_radius(ball.radius, alpha, rng);
  Point z = unit_direction(ball.dimension(), rng);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = ball.center[i] + gamma * z[i];
  return z;
}

InteriorRadiusSampler::InteriorRadiusSampler(int n, FracOrder alpha)
    : n_(n), alpha_(alpha.value()), params_(0.5 * (n - alpha.value()), 0.5 * alpha.value()) {}

double InteriorRadiusSampler::operator()(RngStream& rng, long* proposals) const {
  const double inv_alpha = 1.0 / alpha_;
  for (long k = 0; k < kMaxProposals; ++k) {
    if (proposals) ++*proposals;
    const double s = std::pow(rng.uniform(), inv_alpha);
    const double u = rng.uniform();
    if (!(s > 0.0 && s < 1.0)) continue;
    // w(s)/w(0⁺) = 1 − I_{s²}(a, b).
    if (u < specfun::reg_inc_beta_complement(s * s, params_)) return s;
  }
  throw SamplingError("interior radius rejection sampler exceeded " + std::to_string(kMaxProposals) +
                      " proposals");
}

double InteriorRadiusSampler::acceptance_rate() const {
  return specfun::beta(0.5 * n_, 0.5 * alpha_) / specfun::beta(params_.a, params_.b);
}

double sample_interior_radius(int n, FracOrder alpha, RngStream& rng) {
  return InteriorRadiusSampler(n, alpha)(rng);
}

Point sample_interior_point(const BallGeom& ball, FracOrder alpha, RngStream& rng) {
  const double s = sample_interior_radius(ball.dimension(), alpha, rng);
  Point y = unit_direction(ball.dimension(), rng);
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = ball.center[i] + ball.radius * s * y[i];
  return y;
}

}  // namespace fracwos
