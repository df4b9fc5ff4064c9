#include "dwork/monomial.hpp"

#include <algorithm>
#include <numeric>

namespace dwork {

int SuperMonomial::total_q_degree() const { return std::accumulate(exponents.begin(), exponents.end(), 0); }

std::vector<int> SuperMonomial::eta_indices() const {
  std::vector<int> out;
  for (std::uint64_t rest = eta; rest; rest &= rest - 1) out.push_back(std::countr_zero(rest));
  return out;
}

std::size_t SuperMonomialHash::operator()(const SuperMonomial& m) const noexcept {
  std::size_t h = std::hash<std::uint64_t>{}(m.eta);
  for (int e : m.exponents) h = h * 1000003U ^ static_cast<std::size_t>(e);
  return h;
}

int charge(const VariableContext& ctx, const SuperMonomial& m) {
  int c = 0;
  for (int mu = 0; mu < ctx.size(); ++mu) {
    c += ctx.charge_of_q(mu) * m.exponents[mu];
    if (m.has_eta(mu)) c += ctx.charge_of_eta(mu);
  }
  return c;
}

int weight(const VariableContext& ctx, const SuperMonomial& m) {
  int w = 0;
  for (int mu = 0; mu < ctx.size(); ++mu) {
    w += ctx.weight_of_q(mu) * m.exponents[mu];
    if (m.has_eta(mu)) w += ctx.weight_of_eta(mu);
  }
  return w;
}

MonomialOrder::MonomialOrder(const VariableContext& ctx)
    : k_(ctx.k()), x_eta_mask_(~((std::uint64_t{1} << ctx.k()) - 1)) {}

std::strong_ordering MonomialOrder::compare(const SuperMonomial& a, const SuperMonomial& b) const {
  auto weight_of = [&](const SuperMonomial& m) {
    int w = std::popcount(m.eta & x_eta_mask_);
    for (int i = 0; i < k_; ++i) w += m.exponents[i];
    return w;
  };
  if (auto c = weight_of(a) <=> weight_of(b); c != 0) return c;
  if (auto c = a.total_q_degree() <=> b.total_q_degree(); c != 0) return c;
  if (auto c = a.exponents <=> b.exponents; c != 0) return c;
  if (auto c = a.eta_count() <=> b.eta_count(); c != 0) return c;
  // Same size: compare sorted index lists lexicographically.
  const std::uint64_t diff = a.eta ^ b.eta;
  if (diff == 0) return std::strong_ordering::equal;
  const int first = std::countr_zero(diff);
  // The list holding the smaller first differing index sorts first.
  return a.has_eta(first) ? std::strong_ordering::less : std::strong_ordering::greater;
}

}  // namespace dwork
