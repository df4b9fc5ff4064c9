#pragma once

#include "dwork/context.hpp"
#include "dwork/monomial.hpp"
#include "dwork/rational.hpp"

#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dwork {

/// Finite Q-linear combination of super monomials over one variable context.
/// Terms are kept in ascending canonical order with no zero coefficients,
/// so structural equality is mathematical equality.
class SuperElement {
 public:
  using Term = std::pair<SuperMonomial, Rational>;

  explicit SuperElement(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  static SuperElement constant(ContextPtr ctx, const Rational& c);
  static SuperElement monomial(ContextPtr ctx, SuperMonomial m, const Rational& c = Rational(1));
  /// q_mu (0-based).
  static SuperElement q(ContextPtr ctx, int mu);
  /// eta_mu (0-based).
  static SuperElement eta(ContextPtr ctx, int mu);
  /// Builds from arbitrary (possibly repeated, possibly zero) terms.
  static SuperElement from_terms(ContextPtr ctx, std::vector<Term> terms);

  const ContextPtr& context() const { return ctx_; }
  const VariableContext& ctx() const { return *ctx_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(const SuperMonomial& m) const;
  /// Highest term in canonical order; requires a nonzero element.
  const Term& leading_term() const { return terms_.back(); }

  /// Cohomological degree if every term shares it; zero counts as degree 0.
  std::optional<int> homogeneous_degree() const;
  std::optional<int> homogeneous_charge() const;
  std::optional<int> max_weight() const;

  SuperElement degree_part(int degree) const;
  SuperElement weight_part(int w) const;
  SuperElement charge_part(int c) const;

  SuperElement& operator+=(const SuperElement& o);
  SuperElement& operator-=(const SuperElement& o);
  SuperElement& operator*=(const Rational& c);

  friend SuperElement operator+(SuperElement a, const SuperElement& b) { return a += b; }
  friend SuperElement operator-(SuperElement a, const SuperElement& b) { return a -= b; }
  friend SuperElement operator*(SuperElement a, const Rational& c) { return a *= c; }
  friend SuperElement operator*(const Rational& c, SuperElement a) { return a *= c; }
  friend SuperElement operator*(const SuperElement& a, const SuperElement& b);
  SuperElement operator-() const;

  friend bool operator==(const SuperElement& a, const SuperElement& b);
  /// Arbitrary strict total order, for use as a map key.
  friend bool operator<(const SuperElement& a, const SuperElement& b);

 private:
  friend class TermAccumulator;
  template <class Pred>
  SuperElement filtered(Pred&& keep) const;
  SuperElement& merge(const SuperElement& o, int sign);

  ContextPtr ctx_;
  std::vector<Term> terms_;
};

/// Accumulates terms in a hash map; finish() yields the canonical element.
class TermAccumulator {
 public:
  explicit TermAccumulator(ContextPtr ctx) : ctx_(std::move(ctx)) {}

  void add(const SuperMonomial& m, const Rational& c);
  void add(SuperMonomial&& m, const Rational& c);
  void add(const SuperElement& e, const Rational& scale = Rational(1));
  SuperElement finish() &&;

 private:
  ContextPtr ctx_;
  std::unordered_map<SuperMonomial, Rational, SuperMonomialHash> terms_;
};

SuperElement multiply(const SuperElement& a, const SuperElement& b);
SuperElement power(const SuperElement& a, int exponent);

/// d/dq_i; `i` is 1-based in 1..N.
SuperElement partial_q(int i, const SuperElement& a);
/// Left odd derivative d/deta_i; `i` is 1-based in 1..N.
SuperElement partial_eta(int i, const SuperElement& a);

struct GradedComponent {
  int charge;
  int weight;
  int degree;
  SuperElement component;
};

/// Decomposition into tri-homogeneous components, ordered by (charge, weight, degree).
std::vector<GradedComponent> grade(const SuperElement& a);

}  // namespace dwork
