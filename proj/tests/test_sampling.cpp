#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "fracwos/kernels.hpp"
#include "fracwos/rng.hpp"
#include "fracwos/sampling.hpp"
#include "fracwos/specfun.hpp"

using namespace fracwos;

namespace {
constexpr double kPi = std::numbers::pi;
// Asymptotic KS critical value at the 1% level.
const double kKsCrit = 1.63;

template <class Cdf>
double ks_distance(std::vector<double> xs, const Cdf& cdf) {
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double F = cdf(xs[i]);
    d = std::max({d, F - i / n, (i + 1) / n - F});
  }
  return d;
}
}  // namespace

TEST(Philox, KnownAnswers) {
  const auto z = philox4x32({0, 0, 0, 0}, {0, 0});
  EXPECT_EQ(z[0], 0x6627e8d5u);
  EXPECT_EQ(z[1], 0xe169c58du);
  EXPECT_EQ(z[2], 0xbc57ac4cu);
  EXPECT_EQ(z[3], 0x9b00dbd8u);
  const auto f = philox4x32({~0u, ~0u, ~0u, ~0u}, {~0u, ~0u});
  EXPECT_EQ(f[0], 0x408f276du);
  EXPECT_EQ(f[1], 0x41c83b0eu);
  EXPECT_EQ(f[2], 0xa20bc7c6u);
  EXPECT_EQ(f[3], 0x6d5451fdu);
}

TEST(RngStream, ReplayAndIndependence) {
  RngStream a(42, 7);
  RngStream b(42, 7);
  RngStream c(42, 8);
  RngStream d(43, 7);
  int same_c = 0;
  int same_d = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto va = a();
    EXPECT_EQ(va, b());
    same_c += va == c();
    same_d += va == d();
  }
  EXPECT_EQ(same_c, 0);
  EXPECT_EQ(same_d, 0);
}

TEST(RngStream, UniformOpenInterval) {
  RngStream r(1, 0);
  double sum = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = r.uniform();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 1e5, 0.5, 0.005);
}

TEST(RngStream, PointKeyOrderFree) {
  const Point x{0.25, -0.5};
  EXPECT_EQ(point_key(9, x), point_key(9, Point{0.25, -0.5}));
  EXPECT_NE(point_key(9, x), point_key(9, Point{-0.5, 0.25}));
  EXPECT_NE(point_key(9, x), point_key(10, x));
  EXPECT_EQ(point_key(9, Point{0.0, 1.0}), point_key(9, Point{-0.0, 1.0}));
}

TEST(UnitDirection, OneDimensional) {
  RngStream r(2, 0);
  int plus = 0;
  for (int i = 0; i < 100000; ++i) {
    const auto u = unit_direction(1, r);
    ASSERT_EQ(std::fabs(u[0]), 1.0);
    plus += u[0] > 0;
  }
  EXPECT_NEAR(plus / 1e5, 0.5, 0.005);
}

TEST(UnitDirection, MomentsAndNorm) {
  RngStream r(3, 0);
  const int N = 1000000;
  double m3[3] = {0, 0, 0};
  for (int i = 0; i < N; ++i) {
    const auto u = unit_direction(3, r);
    ASSERT_NEAR(std::sqrt(norm2(u)), 1.0, 1e-12);
    for (int k = 0; k < 3; ++k) m3[k] += u[k];
  }
  for (double m : m3) EXPECT_NEAR(m / N, 0.0, 0.005);

  RngStream r10(4, 0);
  double sq[10] = {};
  for (int i = 0; i < N; ++i) {
    const auto u = unit_direction(10, r10);
    for (int k = 0; k < 10; ++k) sq[k] += u[k] * u[k];
  }
  for (double s : sq) EXPECT_NEAR(s / N, 0.1, 0.002);
  EXPECT_THROW(unit_direction(0, r), DomainError);
}

TEST(ExitRadius, AlwaysOutsideAndArcsineMedian) {
  RngStream r(5, 0);
  const int N = 1000000;
  std::vector<double> g(N);
  for (double& v : g) {
    v = sample_exit_radius(2.0, FracOrder(1.0), r);
    ASSERT_GT(v, 2.0);
  }
  std::nth_element(g.begin(), g.begin() + N / 2, g.end());
  EXPECT_NEAR(g[N / 2] / (2.0 * std::sqrt(2.0)), 1.0, 0.005);
}

TEST(ExitRadius, KolmogorovSmirnov) {
  const int N = 100000;
  std::uint64_t stream = 0;
  for (int n : {2, 3, 10}) {
    for (double a : {0.4, 0.8, 1.0, 1.2, 1.6}) {
      RngStream r(6, stream++);
      std::vector<double> g(N);
      for (double& v : g) v = sample_exit_radius(1.5, FracOrder(a), r);
      const double d = ks_distance(g, [&](double x) { return exit_radius_cdf(x, 1.5, FracOrder(a)); });
      EXPECT_LT(d, kKsCrit / std::sqrt(N)) << n << " " << a;
    }
  }
}

TEST(ExitRadius, ExtremeOrdersStayFinite) {
  for (double a : {0.05, 1.95}) {
    RngStream r(7, 0);
    for (int i = 0; i < 100000; ++i) {
      const double g = sample_exit_radius(1.0, FracOrder(a), r);
      ASSERT_TRUE(std::isfinite(g));
      ASSERT_GT(g, 1.0);
    }
  }
  RngStream r(7, 1);
  EXPECT_THROW(sample_exit_radius(0.0, FracOrder(1.0), r), DomainError);
}

TEST(ExitPoint, AngleChiSquareAndReplay) {
  const BallGeom b({0.3, -0.1}, 0.4);
  RngStream r(8, 0);
  const int N = 100000;
  const int bins = 36;
  std::vector<int> count(bins, 0);
  for (int i = 0; i < N; ++i) {
    const Point z = sample_exit_point(b, FracOrder(1.3), r);
    ASSERT_GT(std::hypot(z[0] - 0.3, z[1] + 0.1), 0.4);
    double th = std::atan2(z[1] + 0.1, z[0] - 0.3);
    if (th < 0) th += 2 * kPi;
    ++count[std::min(bins - 1, static_cast<int>(th / (2 * kPi) * bins))];
  }
  const double expect = static_cast<double>(N) / bins;
  double chi2 = 0.0;
  for (int c : count) chi2 += (c - expect) * (c - expect) / expect;
  // χ²₃₅ upper 1% point.
  EXPECT_LT(chi2, 57.34);

  RngStream p(8, 99);
  RngStream q(8, 99);
  const Point zp = sample_exit_point(b, FracOrder(0.7), p);
  const Point zq = sample_exit_point(b, FracOrder(0.7), q);
  EXPECT_EQ(zp, zq);
}

TEST(InteriorRadius, KolmogorovSmirnov) {
  const int N = 100000;
  std::uint64_t stream = 0;
  for (int n : {2, 3, 10}) {
    for (double a : {0.4, 0.8, 1.0, 1.2, 1.6}) {
      RngStream r(9, stream++);
      InteriorRadiusSampler sampler(n, FracOrder(a));
      std::vector<double> s(N);
      for (double& v : s) {
        v = sampler(r);
        ASSERT_GT(v, 0.0);
        ASSERT_LT(v, 1.0);
      }
      const double d = ks_distance(s, [&](double x) { return interior_radial_cdf(x, n, FracOrder(a)); });
      EXPECT_LT(d, kKsCrit / std::sqrt(N)) << n << " " << a;
    }
  }
}

TEST(InteriorRadius, AcceptanceRate) {
  InteriorRadiusSampler sampler(2, FracOrder(1.0));
  EXPECT_NEAR(sampler.acceptance_rate(), 2.0 / kPi, 1e-14);
  RngStream r(10, 0);
  long proposals = 0;
  const int N = 200000;
  for (int i = 0; i < N; ++i) sampler(r, &proposals);
  EXPECT_NEAR(static_cast<double>(N) / proposals / (2.0 / kPi), 1.0, 0.01);
}

TEST(InteriorPoint, SecondMomentAndSupport) {
  // E|Y|² = ∫ s^{α+1} w / Z = 2/9 for n = 2, α = 1 (mpmath).
  const BallGeom b({0.0, 0.0}, 1.0);
  RngStream r(11, 0);
  const int N = 400000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < N; ++i) {
    const Point y = sample_interior_point(b, FracOrder(1.0), r);
    const double v = norm2(y);
    ASSERT_LT(v, 1.0);
    sum += v;
    sum2 += v * v;
  }
  const double mean = sum / N;
  const double se = std::sqrt((sum2 / N - mean * mean) / (N - 1));
  EXPECT_LE(std::fabs(mean - 2.0 / 9.0), 3 * se);
}

TEST(InteriorPoint, ConstantSourceIdentity) {
  // ζ(centre)·mean(K) = ζ(centre)·K with the constant-source value of K.
  for (int n : {2, 5, 10}) {
    const FracOrder a(0.9);
    const auto k = make_constants(n, a);
    const double K = 1.0 / zeta_unit_closed_form(n, a);
    const BallGeom b(Point(n, 0.0), 1.0);
    RngStream r(12, n);
    double sum = 0.0;
    for (int i = 0; i < 1000; ++i) {
      (void)sample_interior_point(b, a, r);
      sum += K;
    }
    EXPECT_NEAR(zeta_center(b, k) * sum / 1000, 1.0, 1e-9);
  }
}
