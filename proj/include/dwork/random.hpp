#pragma once

#include "dwork/cohomology.hpp"

#include <cstdint>
#include <optional>
#include <random>

namespace dwork {

/// Seeded source; draws use `rng() % n` so sequences match across standard libraries.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }
  bool coin() { return (rng_() & 1U) != 0; }
  /// Nonzero p/q with |p| <= 9, 1 <= q <= 4.
  Rational rational();
  std::uint64_t raw() { return rng_(); }

 private:
  std::mt19937_64 rng_;
};

struct RandomElementOptions {
  int terms = 4;
  int max_exponent = 2;
  int max_eta = 3;
  std::optional<int> degree;  // forces exactly -degree odd factors
};

SuperElement random_element(RandomSource& rs, const ContextPtr& ctx, const RandomElementOptions& opt = {});

/// Random combination of monomials from one graded piece; zero if the piece is empty.
SuperElement random_homogeneous(RandomSource& rs, const ContextPtr& ctx, int charge, int weight, int degree,
                                int terms = 4);

}  // namespace dwork
