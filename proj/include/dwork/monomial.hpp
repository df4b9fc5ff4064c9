#pragma once

#include "dwork/context.hpp"

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <vector>

namespace dwork {

/// q^exponents * eta_{i_1} ... eta_{i_s} with i_1 < ... < i_s.
/// Bit mu of `eta` marks eta_{mu} (0-based).
struct SuperMonomial {
  std::vector<int> exponents;
  std::uint64_t eta = 0;

  SuperMonomial() = default;
  explicit SuperMonomial(std::size_t variables) : exponents(variables, 0) {}
  SuperMonomial(std::vector<int> exps, std::uint64_t eta_mask) : exponents(std::move(exps)), eta(eta_mask) {}

  int eta_count() const { return std::popcount(eta); }
  bool has_eta(int mu) const { return (eta >> mu) & 1U; }
  int total_q_degree() const;
  std::vector<int> eta_indices() const;

  friend bool operator==(const SuperMonomial&, const SuperMonomial&) = default;
};

struct SuperMonomialHash {
  std::size_t operator()(const SuperMonomial& m) const noexcept;
};

int charge(const VariableContext& ctx, const SuperMonomial& m);
int weight(const VariableContext& ctx, const SuperMonomial& m);
inline int cohomological_degree(const SuperMonomial& m) { return -m.eta_count(); }

/// Sign of eta_A * eta_B rearranged into increasing order, or 0 when they share a factor.
inline int eta_product_sign(std::uint64_t a, std::uint64_t b) {
  if (a & b) return 0;
  int inversions = 0;
  for (std::uint64_t rest = b; rest; rest &= rest - 1) {
    const int bit = std::countr_zero(rest);
    const std::uint64_t above = bit >= 63 ? 0 : (a >> (bit + 1));
    inversions += std::popcount(above);
  }
  return (inversions & 1) ? -1 : 1;
}

/// Sign picked up when moving eta_mu to the front of eta_A (eta_mu present).
inline int eta_front_sign(std::uint64_t a, int mu) {
  const std::uint64_t below = mu == 0 ? 0 : (a & ((std::uint64_t{1} << mu) - 1));
  return (std::popcount(below) & 1) ? -1 : 1;
}

/// Canonical term order: weight, then total q-degree, then exponent vector
/// lexicographically (y_1 > ... > y_k > x_0 > ... > x_n), then the eta set
/// by size and sorted index list.
class MonomialOrder {
 public:
  explicit MonomialOrder(const VariableContext& ctx);

  std::strong_ordering compare(const SuperMonomial& a, const SuperMonomial& b) const;
  bool operator()(const SuperMonomial& a, const SuperMonomial& b) const { return compare(a, b) < 0; }

 private:
  int k_;
  std::uint64_t x_eta_mask_;
};

}  // namespace dwork
