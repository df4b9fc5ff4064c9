#pragma once

#include "dwork/element.hpp"

#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace dwork {

struct DworkData {
  ContextPtr ctx;
  std::vector<SuperElement> G;
  SuperElement S;
  std::vector<SuperElement> gradS;  // dS/dq_mu, 0-based
};

/// S = sum_l y_l G_l. Each G_l must be nonzero, x-only and homogeneous of degree d_l.
DworkData dwork_potential(const ContextPtr& ctx, std::vector<SuperElement> G);

SuperElement apply_delta(const SuperElement& a);
SuperElement apply_q(const DworkData& D, const SuperElement& a);
SuperElement apply_k(const DworkData& D, const SuperElement& a);

using Operator = std::function<SuperElement(const SuperElement&)>;

Operator k_operator(const DworkData& D);

/// Parity of the cohomological degree; throws GradingError if `a` mixes parities.
int parity(const SuperElement& a);

SuperElement ell2(const Operator& L, const SuperElement& a, const SuperElement& b);
SuperElement ell2(const DworkData& D, const SuperElement& a, const SuperElement& b);

/// Memoized descendant brackets of one operator.
class DescendantBrackets {
 public:
  explicit DescendantBrackets(Operator L) : L_(std::move(L)) {}

  SuperElement operator()(const std::vector<SuperElement>& args);

 private:
  Operator L_;
  std::map<std::vector<SuperElement>, SuperElement> memo_;
};

SuperElement ell_n(const Operator& L, const std::vector<SuperElement>& args);
SuperElement ell_n(const DworkData& D, const std::vector<SuperElement>& args);

/// A Q-valued linear map on elements; only the degree-0 part is seen.
struct LinearFunctional {
  std::function<Rational(const SuperElement&)> fn;
  bool cochain = false;

  Rational operator()(const SuperElement& a) const { return fn(a.degree_part(0)); }
};

/// Memoized descendant maps phi_m of one functional.
class DescendantMorphism {
 public:
  explicit DescendantMorphism(LinearFunctional f) : f_(std::move(f)) {}

  Rational operator()(const std::vector<SuperElement>& args);

 private:
  LinearFunctional f_;
  std::map<std::vector<SuperElement>, Rational> memo_;
};

Rational phi_n(const LinearFunctional& f, const std::vector<SuperElement>& args);

/// Coefficients of eps^0..eps^order on each side of
///   K(e^G - 1) = L(G) e^G                                  (lambda absent)
///   K(lambda e^G) = L_G(lambda) e^G + (-1)^|lambda| lambda K(e^G - 1)
/// with G = eps * gamma. gamma must have even degree.
std::vector<SuperElement> exp_identity_lhs(const Operator& K, const SuperElement& gamma,
                                           const std::optional<SuperElement>& lambda, int order);
std::vector<SuperElement> exp_identity_rhs(const Operator& K, const SuperElement& gamma,
                                           const std::optional<SuperElement>& lambda, int order);

}  // namespace dwork
