#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace fracwos {

using Point = std::vector<double>;
using PointView = std::span<const double>;

/// Scalar field evaluated at a point of R^n. Exterior data must be total:
/// walks can exit arbitrarily far from the domain.
using Field = std::function<double(PointView)>;

/// Argument outside the documented domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Rejection sampler exhausted its proposal budget.
class SamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A single walk exceeded its step cap.
class PathError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No usable path survived for a point estimate.
class EstimationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deterministic reference integration failed to converge.
class OracleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double dot(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline double norm2(PointView a) { return dot(a, a); }

inline double distance2(PointView a, PointView b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    s += d * d;
  }
  return s;
}

}  // namespace fracwos
