#pragma once

#include <cstdint>
#include <vector>

#include "archetypal/types.hpp"

namespace archetypal {

/// Counter-based 64-bit generator. Output k of stream s under seed z is
/// splitmix64_finalize(key(z, s) + (k + 1) * 0x9E3779B97F4A7C15), so any draw
/// can be reproduced from (seed, stream, counter) alone and results replay
/// bit-identically on one platform.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  std::uint64_t next_u64();
  // Uniform on [0, 1) with 53 random bits.
  double uniform();
  // Uniform on (0, 1), never exactly zero.
  double uniform_open();
  // Unbiased integer in [0, bound).
  std::uint64_t below(std::uint64_t bound);
  // Standard normal via Box-Muller; the second variate of each pair is
  // cached and returned by the next call.
  double normal();
  // Gamma(shape, 1) by Marsaglia-Tsang.
  double gamma(double shape);
  // Symmetric or general Dirichlet.
  Vector dirichlet(const Vector& alpha);
  // `count` distinct indices from [0, n), in draw order (partial
  // Fisher-Yates).
  std::vector<Index> sample_without_replacement(Index n, Index count);

  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

std::uint64_t splitmix64_finalize(std::uint64_t z);

}  // namespace archetypal
