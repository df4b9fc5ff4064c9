#include "dwork/operators.hpp"

#include "dwork/errors.hpp"

namespace dwork {

DworkData dwork_potential(const ContextPtr& ctx, std::vector<SuperElement> G) {
  const VariableContext& c = *ctx;
  if (static_cast<int>(G.size()) != c.k())
    throw InputError("expected " + std::to_string(c.k()) + " defining polynomials, got " + std::to_string(G.size()));
  SuperElement S(ctx);
  for (int l = 0; l < c.k(); ++l) {
    const SuperElement& g = G[static_cast<std::size_t>(l)];
    if (!same_context(g.context(), ctx)) throw ContextMismatch();
    if (g.is_zero()) throw InputError("G" + std::to_string(l + 1) + " is zero");
    for (const auto& [m, coef] : g.terms()) {
      if (m.eta != 0) throw InputError("G" + std::to_string(l + 1) + " contains an odd variable");
      for (int i = 0; i < c.k(); ++i)
        if (m.exponents[static_cast<std::size_t>(i)] != 0)
          throw InputError("G" + std::to_string(l + 1) + " contains y" + std::to_string(i + 1));
      if (m.total_q_degree() != c.degrees()[static_cast<std::size_t>(l)])
        throw GradingError("G" + std::to_string(l + 1) + " is not homogeneous of degree " +
                           std::to_string(c.degrees()[static_cast<std::size_t>(l)]));
    }
    S += multiply(SuperElement::q(ctx, l), g);
  }
  std::vector<SuperElement> grad;
  grad.reserve(static_cast<std::size_t>(c.size()));
  for (int mu = 0; mu < c.size(); ++mu) grad.push_back(partial_q(mu + 1, S));
  return DworkData{ctx, std::move(G), std::move(S), std::move(grad)};
}

SuperElement apply_delta(const SuperElement& a) {
  TermAccumulator acc(a.context());
  for (const auto& [m, c] : a.terms()) {
    for (int mu : m.eta_indices()) {
      const int e = m.exponents[static_cast<std::size_t>(mu)];
      if (e == 0) continue;
      SuperMonomial d = m;
      d.eta &= ~(std::uint64_t{1} << mu);
      d.exponents[static_cast<std::size_t>(mu)] = e - 1;
      Rational v = c * Rational(e);
      acc.add(std::move(d), eta_front_sign(m.eta, mu) > 0 ? v : -v);
    }
  }
  return std::move(acc).finish();
}

SuperElement apply_q(const DworkData& D, const SuperElement& a) {
  if (!same_context(D.ctx, a.context())) throw ContextMismatch();
  TermAccumulator acc(a.context());
  const std::size_t n = static_cast<std::size_t>(D.ctx->size());
  for (const auto& [m, c] : a.terms()) {
    for (int mu : m.eta_indices()) {
      const std::uint64_t rest = m.eta & ~(std::uint64_t{1} << mu);
      const Rational base = eta_front_sign(m.eta, mu) > 0 ? c : -c;
      for (const auto& [gm, gc] : D.gradS[static_cast<std::size_t>(mu)].terms()) {
        SuperMonomial d(n);
        for (std::size_t i = 0; i < n; ++i) d.exponents[i] = m.exponents[i] + gm.exponents[i];
        d.eta = rest;
        acc.add(std::move(d), base * gc);
      }
    }
  }
  return std::move(acc).finish();
}

SuperElement apply_k(const DworkData& D, const SuperElement& a) { return apply_q(D, a) + apply_delta(a); }

Operator k_operator(const DworkData& D) {
  return [D](const SuperElement& a) { return apply_k(D, a); };
}

int parity(const SuperElement& a) {
  if (a.is_zero()) return 0;
  const int p = a.terms().front().first.eta_count() % 2;
  for (const auto& t : a.terms())
    if (t.first.eta_count() % 2 != p) throw GradingError("argument mixes even and odd cohomological degrees");
  return p;
}

SuperElement ell2(const Operator& L, const SuperElement& a, const SuperElement& b) {
  const int pa = parity(a);
  SuperElement out = L(multiply(a, b));
  out -= multiply(L(a), b);
  SuperElement tail = multiply(a, L(b));
  if (pa)
    out += tail;
  else
    out -= tail;
  return out;
}

SuperElement ell2(const DworkData& D, const SuperElement& a, const SuperElement& b) {
  return ell2(k_operator(D), a, b);
}

SuperElement DescendantBrackets::operator()(const std::vector<SuperElement>& args) {
  const std::size_t n = args.size();
  if (n < 1) throw InputError("descendant bracket needs at least one argument");
  if (n == 1) return L_(args[0]);
  if (auto it = memo_.find(args); it != memo_.end()) return it->second;

  int prefix = 0;
  for (std::size_t i = 0; i + 2 < n; ++i) prefix += parity(args[i]);
  const int p_prev = parity(args[n - 2]);

  std::vector<SuperElement> merged(args.begin(), args.end() - 1);
  merged.back() = multiply(args[n - 2], args[n - 1]);
  SuperElement out = (*this)(merged);

  std::vector<SuperElement> head(args.begin(), args.end() - 1);
  out -= multiply((*this)(head), args[n - 1]);

  std::vector<SuperElement> skip(args.begin(), args.end() - 2);
  skip.push_back(args[n - 1]);
  SuperElement tail = multiply(args[n - 2], (*this)(skip));
  if ((p_prev * (1 + prefix)) % 2)
    out += tail;
  else
    out -= tail;

  memo_.emplace(args, out);
  return out;
}

SuperElement ell_n(const Operator& L, const std::vector<SuperElement>& args) {
  DescendantBrackets brackets(L);
  return brackets(args);
}

SuperElement ell_n(const DworkData& D, const std::vector<SuperElement>& args) { return ell_n(k_operator(D), args); }

Rational DescendantMorphism::operator()(const std::vector<SuperElement>& args) {
  const std::size_t m = args.size();
  if (m < 1) throw InputError("descendant map needs at least one argument");
  if (m == 1) return f_(args[0]);
  if (auto it = memo_.find(args); it != memo_.end()) return it->second;

  std::vector<int> par(m);
  for (std::size_t i = 0; i < m; ++i) par[i] = parity(args[i]);

  std::vector<SuperElement> merged(args.begin(), args.end() - 1);
  merged.back() = multiply(args[m - 2], args[m - 1]);
  Rational out = (*this)(merged);

  // Two-block partitions with the block of element 0 first and m-2, m-1 apart.
  // Bit i of `mask` set means element i lies in the second block.
  const std::uint64_t full = std::uint64_t{1} << m;
  for (std::uint64_t mask = 0; mask < full; mask += 2) {
    if (((mask >> (m - 2)) & 1U) == ((mask >> (m - 1)) & 1U)) continue;
    std::vector<SuperElement> first;
    std::vector<SuperElement> second;
    int swaps = 0;
    int odd_in_second = 0;
    for (std::size_t i = 0; i < m; ++i) {
      if ((mask >> i) & 1U) {
        second.push_back(args[i]);
        odd_in_second += par[i];
      } else {
        first.push_back(args[i]);
        if (par[i]) swaps += odd_in_second;
      }
    }
    Rational term = (*this)(first) * (*this)(second);
    if (swaps % 2) term = -term;
    out -= term;
  }
  memo_.emplace(args, out);
  return out;
}

Rational phi_n(const LinearFunctional& f, const std::vector<SuperElement>& args) {
  DescendantMorphism phi(f);
  return phi(args);
}

namespace {

std::vector<SuperElement> gamma_powers(const SuperElement& gamma, int order) {
  std::vector<SuperElement> pw;
  pw.push_back(SuperElement::constant(gamma.context(), Rational(1)));
  for (int m = 1; m <= order; ++m) pw.push_back(multiply(pw.back(), gamma));
  return pw;
}

void check_even(const SuperElement& gamma, int order) {
  if (order < 1) throw InputError("truncation order must be at least 1");
  if (parity(gamma) != 0) throw GradingError("exponent must have even degree");
}

}  // namespace

std::vector<SuperElement> exp_identity_lhs(const Operator& K, const SuperElement& gamma,
                                           const std::optional<SuperElement>& lambda, int order) {
  check_even(gamma, order);
  const auto pw = gamma_powers(gamma, order);
  std::vector<SuperElement> out;
  for (int m = 0; m <= order; ++m) {
    const Rational inv = factorial(m).inverse();
    if (lambda)
      out.push_back(K(multiply(*lambda, pw[static_cast<std::size_t>(m)])) * inv);
    else
      out.push_back(m == 0 ? SuperElement(gamma.context()) : K(pw[static_cast<std::size_t>(m)]) * inv);
  }
  return out;
}

std::vector<SuperElement> exp_identity_rhs(const Operator& K, const SuperElement& gamma,
                                           const std::optional<SuperElement>& lambda, int order) {
  check_even(gamma, order);
  const auto pw = gamma_powers(gamma, order);
  DescendantBrackets ell(K);
  std::vector<SuperElement> out(static_cast<std::size_t>(order) + 1, SuperElement(gamma.context()));
  for (int m = 0; m <= order; ++m) {
    SuperElement& acc = out[static_cast<std::size_t>(m)];
    if (!lambda) {
      for (int n = 1; n <= m; ++n) {
        std::vector<SuperElement> args(static_cast<std::size_t>(n), gamma);
        acc += multiply(ell(args), pw[static_cast<std::size_t>(m - n)]) *
               (factorial(n) * factorial(m - n)).inverse();
      }
      continue;
    }
    for (int p = 0; p <= m; ++p) {
      std::vector<SuperElement> args(static_cast<std::size_t>(p), gamma);
      args.push_back(*lambda);
      acc += multiply(ell(args), pw[static_cast<std::size_t>(m - p)]) * (factorial(p) * factorial(m - p)).inverse();
    }
    if (m >= 1) {
      SuperElement tail = multiply(*lambda, K(pw[static_cast<std::size_t>(m)])) * factorial(m).inverse();
      if (parity(*lambda))
        acc -= tail;
      else
        acc += tail;
    }
  }
  return out;
}

}  // namespace dwork
