#pragma once

#include "dwork/cohomology.hpp"
#include "dwork/matrix.hpp"
#include "dwork/operators.hpp"

#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <variant>
#include <vector>

namespace dwork {

struct MCResult {
  SuperElement k_term;        // K_G(Gamma)
  SuperElement bracket_term;  // 1/2 l2(Gamma, Gamma)
  SuperElement residual;
  bool holds;
};

/// Gamma must be of cohomological degree 0.
MCResult mc_check(const DworkData& D, const SuperElement& gamma);

struct DeformationData {
  DworkData base;
  std::vector<SuperElement> H;
  SuperElement gamma;  // sum_i y_i H_i
  DworkData deformed;  // G + H
  std::vector<int> Iprime;  // 0-based i with H_i != 0
  std::shared_ptr<const QuotientPresentation> deformed_presentation;
};

/// Each H_i must be zero or x-only homogeneous of degree d_i. Builds the
/// deformed presentation, so a singular G + H raises SmoothnessError.
DeformationData build_deformation(const DworkData& base, std::vector<SuperElement> H,
                                  int slack = QuotientPresentation::kDefaultSlack);

/// K_G(lambda) + l2(Gamma, lambda).
SuperElement k_gamma(const DworkData& D, const SuperElement& gamma, const SuperElement& lambda);

struct UBasis {
  std::vector<SuperElement> u;
  std::size_t prime_count = 0;  // u[0..prime_count) come from I'
  SuperElement factor;          // multiplier of y_i H_i (1, h or y_j^m h)
  std::vector<std::size_t> extension;  // e-basis indices appended greedily
  std::vector<std::vector<Rational>> reductions;  // u reduced modulo K_U
};

/// h overrides the automatically chosen x-polynomial when c_G != 0.
UBasis u_basis(const DeformationData& def, const QuotientPresentation& PG, const QuotientPresentation& PU,
               const std::optional<SuperElement>& h = std::nullopt);

/// The multiplier used for the I' classes: 1, h(x) or y_j^m h(x). Without an
/// override h is the smallest monomial of the needed degree; ties in (j, m) go
/// to the smallest resulting monomial.
SuperElement u_factor(const ContextPtr& ctx, const std::optional<SuperElement>& h = std::nullopt);

enum class SeriesScope {
  Full,     // every exponent with |e| <= order
  DMatrix,  // only exponents that feed the D matrix
};

struct SeriesTerm {
  std::vector<int> exponent;
  SuperElement rhs;
  std::vector<Rational> coefficients;  // T^rho coefficient of t^exponent
  SuperElement certificate;
};

struct DeformationSeries {
  std::size_t variables = 0;
  std::size_t prime_count = 0;
  int order = 0;
  std::vector<SeriesTerm> terms;  // by total degree, then exponent descending

  Rational coefficient(std::size_t rho, const std::vector<int>& exponent) const;
  const SeriesTerm* find(const std::vector<int>& exponent) const;
};

DeformationSeries t_series(const DeformationData& def, const QuotientPresentation& PG, const UBasis& u, int order,
                           SeriesScope scope = SeriesScope::Full);

/// Ladder of partial sums D_m, m = 1..order, with D_m(beta, rho) = d_beta T^rho
/// at t^alpha = 1 on I' and 0 elsewhere.
std::vector<Matrix<Rational>> d_matrix(const DeformationSeries& series);

/// Cumulative reductions of sum_{m <= M} u Gamma^m / m! for M = 0..order.
std::vector<std::vector<Rational>> thm1_coefficients(const DeformationData& def, const QuotientPresentation& PG,
                                                     const SuperElement& u, int order);

/// Partial sums through M = 0..order of the Bell-polynomial expansion of f(u e^Gamma).
std::vector<Rational> thm2_eval(const LinearFunctional& f, const SuperElement& gamma, const SuperElement& u, int order);
/// Partial sums of sum_m f(u Gamma^m) / m!.
std::vector<Rational> thm2_direct(const LinearFunctional& f, const SuperElement& gamma, const SuperElement& u,
                                  int order);

/// Memoized reduce, shareable between functionals built on one presentation.
class CachedReducer {
 public:
  explicit CachedReducer(const QuotientPresentation& P) : P_(P) {}
  std::vector<Rational> operator()(const SuperElement& f);
  const QuotientPresentation& presentation() const { return P_; }

 private:
  const QuotientPresentation& P_;
  std::mutex mutex_;
  std::map<SuperElement, std::vector<Rational>> memo_;
};

/// a -> row . reduce(charge-c_G part of a); a cochain functional.
LinearFunctional reduction_functional(std::shared_ptr<CachedReducer> reducer, std::vector<Rational> row);

using PeriodMatrix = std::variant<Matrix<Rational>, Matrix<double>, Matrix<std::complex<double>>>;

struct BaseChange {
  Matrix<Rational> B;
  bool integral = true;
};

/// Checks integrality and det = +-1 when flagged.
void validate_base_change(const BaseChange& B);

/// D * Omega * B in the entry arithmetic of Omega.
PeriodMatrix period_transport(const Matrix<Rational>& D, const PeriodMatrix& omega, const BaseChange& B);

}  // namespace dwork
