#include "dwork/element.hpp"

#include "dwork/errors.hpp"

#include <algorithm>
#include <map>
#include <tuple>

namespace dwork {

namespace {

void require_same(const SuperElement& a, const SuperElement& b) {
  if (!same_context(a.context(), b.context())) throw ContextMismatch();
}

void check_index(const VariableContext& ctx, int i) {
  if (i < 1 || i > ctx.size())
    throw InputError("variable index " + std::to_string(i) + " out of range 1.." + std::to_string(ctx.size()));
}

}  // namespace

SuperElement SuperElement::constant(ContextPtr ctx, const Rational& c) {
  const auto n = static_cast<std::size_t>(ctx->size());
  return monomial(std::move(ctx), SuperMonomial(n), c);
}

SuperElement SuperElement::monomial(ContextPtr ctx, SuperMonomial m, const Rational& c) {
  if (static_cast<int>(m.exponents.size()) != ctx->size()) throw InputError("monomial arity does not match context");
  SuperElement e(std::move(ctx));
  if (!c.is_zero()) e.terms_.emplace_back(std::move(m), c);
  return e;
}

SuperElement SuperElement::q(ContextPtr ctx, int mu) {
  SuperMonomial m(static_cast<std::size_t>(ctx->size()));
  m.exponents.at(static_cast<std::size_t>(mu)) = 1;
  return monomial(std::move(ctx), std::move(m));
}

SuperElement SuperElement::eta(ContextPtr ctx, int mu) {
  if (mu < 0 || mu >= ctx->size()) throw InputError("eta index out of range");
  SuperMonomial m(static_cast<std::size_t>(ctx->size()));
  m.eta = std::uint64_t{1} << mu;
  return monomial(std::move(ctx), std::move(m));
}

SuperElement SuperElement::from_terms(ContextPtr ctx, std::vector<Term> terms) {
  TermAccumulator acc(ctx);
  for (auto& [m, c] : terms) {
    if (static_cast<int>(m.exponents.size()) != ctx->size()) throw InputError("monomial arity does not match context");
    acc.add(std::move(m), c);
  }
  return std::move(acc).finish();
}

Rational SuperElement::coefficient(const SuperMonomial& m) const {
  MonomialOrder order(*ctx_);
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [&](const Term& t, const SuperMonomial& key) { return order(t.first, key); });
  if (it != terms_.end() && it->first == m) return it->second;
  return Rational(0);
}

std::optional<int> SuperElement::homogeneous_degree() const {
  if (terms_.empty()) return 0;
  const int d = cohomological_degree(terms_.front().first);
  for (const auto& t : terms_)
    if (cohomological_degree(t.first) != d) return std::nullopt;
  return d;
}

std::optional<int> SuperElement::homogeneous_charge() const {
  if (terms_.empty()) return std::nullopt;
  const int c = charge(*ctx_, terms_.front().first);
  for (const auto& t : terms_)
    if (charge(*ctx_, t.first) != c) return std::nullopt;
  return c;
}

std::optional<int> SuperElement::max_weight() const {
  if (terms_.empty()) return std::nullopt;
  // Weight is the primary sort key, so the last term carries the maximum.
  return weight(*ctx_, terms_.back().first);
}

template <class Pred>
SuperElement SuperElement::filtered(Pred&& keep) const {
  SuperElement out(ctx_);
  for (const auto& t : terms_)
    if (keep(t.first)) out.terms_.push_back(t);
  return out;
}

SuperElement SuperElement::degree_part(int degree) const {
  return filtered([&](const SuperMonomial& m) { return cohomological_degree(m) == degree; });
}

SuperElement SuperElement::weight_part(int w) const {
  return filtered([&](const SuperMonomial& m) { return weight(*ctx_, m) == w; });
}

SuperElement SuperElement::charge_part(int c) const {
  return filtered([&](const SuperMonomial& m) { return charge(*ctx_, m) == c; });
}

SuperElement& SuperElement::merge(const SuperElement& o, int sign) {
  require_same(*this, o);
  if (o.terms_.empty()) return *this;
  MonomialOrder order(*ctx_);
  std::vector<Term> out;
  out.reserve(terms_.size() + o.terms_.size());
  auto a = terms_.begin();
  auto b = o.terms_.begin();
  while (a != terms_.end() || b != o.terms_.end()) {
    if (b == o.terms_.end() || (a != terms_.end() && order(a->first, b->first))) {
      out.push_back(std::move(*a++));
    } else if (a == terms_.end() || order(b->first, a->first)) {
      out.emplace_back(b->first, sign > 0 ? b->second : -b->second);
      ++b;
    } else {
      Rational c = sign > 0 ? a->second + b->second : a->second - b->second;
      if (!c.is_zero()) out.emplace_back(std::move(a->first), std::move(c));
      ++a;
      ++b;
    }
  }
  terms_ = std::move(out);
  return *this;
}

SuperElement& SuperElement::operator+=(const SuperElement& o) { return merge(o, +1); }
SuperElement& SuperElement::operator-=(const SuperElement& o) { return merge(o, -1); }

SuperElement& SuperElement::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& t : terms_) t.second *= c;
  return *this;
}

SuperElement SuperElement::operator-() const {
  SuperElement out = *this;
  for (auto& t : out.terms_) t.second = -t.second;
  return out;
}

SuperElement operator*(const SuperElement& a, const SuperElement& b) { return multiply(a, b); }

bool operator==(const SuperElement& a, const SuperElement& b) {
  if (!same_context(a.ctx_, b.ctx_)) return false;
  return a.terms_ == b.terms_;
}

bool operator<(const SuperElement& a, const SuperElement& b) {
  if (a.terms_.size() != b.terms_.size()) return a.terms_.size() < b.terms_.size();
  MonomialOrder order(*a.ctx_);
  for (std::size_t i = 0; i < a.terms_.size(); ++i) {
    const auto& [ma, ca] = a.terms_[i];
    const auto& [mb, cb] = b.terms_[i];
    if (auto c = order.compare(ma, mb); c != 0) return c < 0;
    if (ca != cb) return ca < cb;
  }
  return false;
}

void TermAccumulator::add(const SuperMonomial& m, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) it->second += c;
}

void TermAccumulator::add(SuperMonomial&& m, const Rational& c) {
  if (c.is_zero()) return;
  auto it = terms_.find(m);
  if (it == terms_.end())
    terms_.emplace(std::move(m), c);
  else
    it->second += c;
}

void TermAccumulator::add(const SuperElement& e, const Rational& scale) {
  if (!same_context(ctx_, e.context())) throw ContextMismatch();
  if (scale.is_zero()) return;
  for (const auto& [m, c] : e.terms()) add(m, scale.is_one() ? c : c * scale);
}

SuperElement TermAccumulator::finish() && {
  std::vector<SuperElement::Term> terms;
  terms.reserve(terms_.size());
  for (auto& [m, c] : terms_)
    if (!c.is_zero()) terms.emplace_back(m, std::move(c));
  MonomialOrder order(*ctx_);
  std::sort(terms.begin(), terms.end(), [&](const auto& x, const auto& y) { return order(x.first, y.first); });
  SuperElement out(ctx_);
  out.terms_ = std::move(terms);
  return out;
}

SuperElement multiply(const SuperElement& a, const SuperElement& b) {
  require_same(a, b);
  TermAccumulator acc(a.context());
  const std::size_t n = static_cast<std::size_t>(a.ctx().size());
  for (const auto& [ma, ca] : a.terms()) {
    for (const auto& [mb, cb] : b.terms()) {
      const int sign = eta_product_sign(ma.eta, mb.eta);
      if (sign == 0) continue;
      SuperMonomial m(n);
      for (std::size_t i = 0; i < n; ++i) m.exponents[i] = ma.exponents[i] + mb.exponents[i];
      m.eta = ma.eta | mb.eta;
      Rational c = ca * cb;
      acc.add(std::move(m), sign > 0 ? c : -c);
    }
  }
  return std::move(acc).finish();
}

SuperElement power(const SuperElement& a, int exponent) {
  if (exponent < 0) throw InputError("negative power");
  SuperElement result = SuperElement::constant(a.context(), Rational(1));
  for (int i = 0; i < exponent; ++i) result = multiply(result, a);
  return result;
}

SuperElement partial_q(int i, const SuperElement& a) {
  check_index(a.ctx(), i);
  const auto mu = static_cast<std::size_t>(i - 1);
  TermAccumulator acc(a.context());
  for (const auto& [m, c] : a.terms()) {
    const int e = m.exponents[mu];
    if (e == 0) continue;
    SuperMonomial d = m;
    d.exponents[mu] = e - 1;
    acc.add(std::move(d), c * Rational(e));
  }
  return std::move(acc).finish();
}

SuperElement partial_eta(int i, const SuperElement& a) {
  check_index(a.ctx(), i);
  const int mu = i - 1;
  TermAccumulator acc(a.context());
  for (const auto& [m, c] : a.terms()) {
    if (!m.has_eta(mu)) continue;
    SuperMonomial d = m;
    d.eta &= ~(std::uint64_t{1} << mu);
    acc.add(std::move(d), eta_front_sign(m.eta, mu) > 0 ? c : -c);
  }
  return std::move(acc).finish();
}

std::vector<GradedComponent> grade(const SuperElement& a) {
  std::map<std::tuple<int, int, int>, std::vector<SuperElement::Term>> parts;
  for (const auto& t : a.terms())
    parts[{charge(a.ctx(), t.first), weight(a.ctx(), t.first), cohomological_degree(t.first)}].push_back(t);
  std::vector<GradedComponent> out;
  for (auto& [key, terms] : parts) {
    auto [c, w, d] = key;
    out.push_back({c, w, d, SuperElement::from_terms(a.context(), std::move(terms))});
  }
  return out;
}

}  // namespace dwork
