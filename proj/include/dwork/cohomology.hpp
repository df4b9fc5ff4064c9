#pragma once

#include "dwork/operators.hpp"

#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

namespace dwork {

struct GradedPiece {
  int charge;
  int weight;
  int eta_degree;
  std::vector<SuperMonomial> monomials;  // ascending canonical order
};

/// Every monomial with the given charge, weight and cohomological degree (<= 0).
GradedPiece enumerate_piece(const VariableContext& ctx, int charge, int weight, int eta_degree);

using SparseRow = std::vector<std::pair<int, Rational>>;  // sorted by column

/// Reduced row echelon form of Q_G(degree -1) inside the degree-0 piece of
/// charge c_G at one weight. Columns run in descending canonical order, so a
/// pivot sits on the largest monomial of its row.
struct PresentationStage {
  int weight = 0;
  std::vector<SuperMonomial> columns;
  std::vector<int> pivot_columns;
  std::vector<SparseRow> rows;  // rows[r] has a 1 at pivot_columns[r]
  std::vector<SuperElement> preimages;
  std::vector<int> complement;  // non-pivot columns, ascending

  std::unordered_map<SuperMonomial, int, SuperMonomialHash> column_of;
  std::vector<int> row_of_column;  // -1 off the pivots

  void reindex();
};

PresentationStage build_stage(const DworkData& D, int weight);

struct ReductionResult {
  std::vector<Rational> coefficients;
  SuperElement certificate;
};

class QuotientPresentation {
 public:
  static constexpr int kDefaultSlack = 2;

  explicit QuotientPresentation(DworkData D, int slack = kDefaultSlack);
  /// Rebuilds from stored stages 0..top_weight()+slack without recomputing them.
  static QuotientPresentation from_stages(DworkData D, int slack, std::vector<PresentationStage> stages);

  const DworkData& dwork() const;
  const ContextPtr& context() const;
  int background_charge() const;
  int slack() const;
  int top_weight() const;

  const std::vector<SuperMonomial>& basis() const;
  const std::vector<int>& basis_weights() const;
  std::size_t dimension() const;
  std::optional<std::size_t> basis_index(const SuperMonomial& m) const;
  SuperElement basis_element(std::size_t rho) const;
  SuperElement combination(const std::vector<Rational>& coefficients) const;

  /// f = sum_rho c_rho e_rho + K_G(certificate).
  ReductionResult reduce(const SuperElement& f) const;

  /// Stage at `weight`, built on first use above the eager range.
  std::shared_ptr<const PresentationStage> stage(int weight) const;

 private:
  struct State;
  QuotientPresentation() = default;
  void finish_basis();

  std::shared_ptr<State> state_;
};

QuotientPresentation build_presentation(const DworkData& D, int slack = QuotientPresentation::kDefaultSlack);

/// Number of basis elements of weight exactly q, for q = 0..n-k.
std::vector<int> hodge_numbers(const QuotientPresentation& P);

/// R = sum_mu ch(q_mu) q_mu eta_mu.
SuperElement charge_witness_element(const ContextPtr& ctx);

struct ChargeWitness {
  int lambda;
  SuperElement lhs;  // K_G(f R)
  SuperElement rhs;  // (lambda - c_G) f
  bool holds;
  std::optional<SuperElement> witness;  // f R / (lambda - c_G) when lambda != c_G
};

/// f must be degree 0 and of a single charge.
ChargeWitness charge_witness_check(const DworkData& D, const SuperElement& f);

}  // namespace dwork
