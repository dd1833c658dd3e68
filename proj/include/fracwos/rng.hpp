#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <random>

#include "fracwos/types.hpp"

namespace fracwos {

/// Philox4x32-10 block function: one 128-bit output per (counter, key).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key);

/// Counter-based random stream. The 64-bit seed is the Philox key; the
/// counter block holds the stream id and a draw index, so a stream is fully
/// determined by (seed, stream_id) and independent of other streams.
class RngStream {
 public:
  using result_type = std::uint64_t;

  RngStream(std::uint64_t seed, std::uint64_t stream_id);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  /// Uniform on the open interval (0, 1), 53-bit resolution.
  double uniform();

  double normal() { return gauss_(*this); }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream_id() const { return stream_id_; }

 private:
  void refill();

  std::uint64_t seed_;
  std::uint64_t stream_id_;
  std::uint64_t block_ = 0;
  std::array<std::uint64_t, 2> buffer_{};
  int available_ = 0;
  std::normal_distribution<double> gauss_;
};

/// Mixes a base seed with the bit patterns of a point's coordinates, so that
/// every evaluation point gets its own key regardless of query order.
std::uint64_t point_key(std::uint64_t seed, PointView x);

}  // namespace fracwos
