#include "dwork/cohomology.hpp"

#include "dwork/errors.hpp"

#include <algorithm>
#include <map>
#include <mutex>

namespace dwork {

namespace {

// Calls fn on every vector of `parts` non-negative integers summing to `total`.
template <class Fn>
void compositions(int parts, int total, Fn&& fn) {
  std::vector<int> v(static_cast<std::size_t>(parts), 0);
  if (parts == 0) {
    if (total == 0) fn(v);
    return;
  }
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == parts - 1) {
      v[static_cast<std::size_t>(i)] = left;
      fn(v);
      return;
    }
    for (int e = left; e >= 0; --e) {
      v[static_cast<std::size_t>(i)] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, total);
}

template <class Fn>
void subsets(int universe, int size, Fn&& fn) {
  auto rec = [&](auto&& self, int start, int left, std::uint64_t mask) -> void {
    if (left == 0) {
      fn(mask);
      return;
    }
    for (int i = start; i <= universe - left; ++i) self(self, i + 1, left - 1, mask | (std::uint64_t{1} << i));
  };
  rec(rec, 0, size, 0);
}

SparseRow axpy(const SparseRow& a, const Rational& s, const SparseRow& b) {
  SparseRow out;
  out.reserve(a.size() + b.size());
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() || j != b.end()) {
    if (j == b.end() || (i != a.end() && i->first < j->first)) {
      out.push_back(*i++);
    } else if (i == a.end() || j->first < i->first) {
      out.emplace_back(j->first, s * j->second);
      ++j;
    } else {
      Rational v = i->second + s * j->second;
      if (!v.is_zero()) out.emplace_back(i->first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

const Rational* entry(const SparseRow& row, int col) {
  auto it = std::lower_bound(row.begin(), row.end(), col, [](const auto& e, int c) { return e.first < c; });
  return (it != row.end() && it->first == col) ? &it->second : nullptr;
}

}  // namespace

GradedPiece enumerate_piece(const VariableContext& ctx, int charge_value, int weight_value, int eta_degree) {
  GradedPiece piece{charge_value, weight_value, eta_degree, {}};
  const int s = -eta_degree;
  if (weight_value < 0 || s < 0 || s > ctx.size()) return piece;
  const int k = ctx.k();
  const int nx = ctx.n() + 1;
  subsets(ctx.size(), s, [&](std::uint64_t mask) {
    int eta_weight = 0;
    int eta_charge = 0;
    for (int mu = 0; mu < ctx.size(); ++mu)
      if ((mask >> mu) & 1U) {
        eta_weight += ctx.weight_of_eta(mu);
        eta_charge += ctx.charge_of_eta(mu);
      }
    const int ysum = weight_value - eta_weight;
    if (ysum < 0) return;
    compositions(k, ysum, [&](const std::vector<int>& v) {
      int xdeg = charge_value - eta_charge;
      for (int i = 0; i < k; ++i) xdeg += ctx.degrees()[static_cast<std::size_t>(i)] * v[static_cast<std::size_t>(i)];
      if (xdeg < 0) return;
      compositions(nx, xdeg, [&](const std::vector<int>& u) {
        SuperMonomial m(static_cast<std::size_t>(ctx.size()));
        std::copy(v.begin(), v.end(), m.exponents.begin());
        std::copy(u.begin(), u.end(), m.exponents.begin() + k);
        m.eta = mask;
        piece.monomials.push_back(std::move(m));
      });
    });
  });
  std::sort(piece.monomials.begin(), piece.monomials.end(), MonomialOrder(ctx));
  return piece;
}

void PresentationStage::reindex() {
  column_of.clear();
  for (std::size_t c = 0; c < columns.size(); ++c) column_of.emplace(columns[c], static_cast<int>(c));
  row_of_column.assign(columns.size(), -1);
  for (std::size_t r = 0; r < pivot_columns.size(); ++r)
    row_of_column[static_cast<std::size_t>(pivot_columns[r])] = static_cast<int>(r);
  complement.clear();
  for (std::size_t c = 0; c < columns.size(); ++c)
    if (row_of_column[c] < 0) complement.push_back(static_cast<int>(c));
}

PresentationStage build_stage(const DworkData& D, int weight_value) {
  const VariableContext& ctx = *D.ctx;
  const int cg = ctx.background_charge();
  PresentationStage st;
  st.weight = weight_value;
  st.columns = enumerate_piece(ctx, cg, weight_value, 0).monomials;
  std::reverse(st.columns.begin(), st.columns.end());
  st.reindex();

  const auto sources = enumerate_piece(ctx, cg, weight_value, -1).monomials;
  for (const auto& src : sources) {
    SuperElement pre = SuperElement::monomial(D.ctx, src);
    const SuperElement image = apply_q(D, pre);
    SparseRow row;
    row.reserve(image.size());
    for (const auto& [m, c] : image.terms()) {
      auto it = st.column_of.find(m);
      if (it == st.column_of.end()) throw InvariantViolation("Q_G left the graded piece");
      row.emplace_back(it->second, c);
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    // Pivot entries of the incoming row are final against an RREF basis.
    std::vector<std::pair<int, Rational>> hits;
    for (const auto& [col, c] : row)
      if (int r = st.row_of_column[static_cast<std::size_t>(col)]; r >= 0) hits.emplace_back(r, c);
    for (const auto& [r, c] : hits) {
      row = axpy(row, -c, st.rows[static_cast<std::size_t>(r)]);
      pre -= st.preimages[static_cast<std::size_t>(r)] * c;
    }
    if (row.empty()) continue;

    const int pc = row.front().first;
    const Rational scale = row.front().second.inverse();
    for (auto& e : row) e.second *= scale;
    pre *= scale;
    for (std::size_t r = 0; r < st.rows.size(); ++r) {
      const Rational* v = entry(st.rows[r], pc);
      if (!v) continue;
      const Rational c = *v;
      st.rows[r] = axpy(st.rows[r], -c, row);
      st.preimages[r] -= pre * c;
    }
    st.row_of_column[static_cast<std::size_t>(pc)] = static_cast<int>(st.rows.size());
    st.pivot_columns.push_back(pc);
    st.rows.push_back(std::move(row));
    st.preimages.push_back(std::move(pre));
  }
  st.reindex();
  return st;
}

struct QuotientPresentation::State {
  State(DworkData d, int s) : D(std::move(d)), slack(s) {}

  DworkData D;
  int slack;
  std::vector<std::shared_ptr<const PresentationStage>> eager;
  std::vector<SuperMonomial> basis;
  std::vector<int> basis_weights;
  std::unordered_map<SuperMonomial, std::size_t, SuperMonomialHash> basis_index;

  mutable std::mutex lazy_mutex;
  mutable std::map<int, std::shared_ptr<const PresentationStage>> lazy;
};

QuotientPresentation::QuotientPresentation(DworkData D, int slack) : state_(std::make_shared<State>(std::move(D), slack)) {
  if (slack < 0) throw InputError("slack must be non-negative");
  const int last = top_weight() + slack;
  for (int w = 0; w <= last; ++w)
    state_->eager.push_back(std::make_shared<const PresentationStage>(build_stage(state_->D, w)));
  finish_basis();
}

QuotientPresentation QuotientPresentation::from_stages(DworkData D, int slack, std::vector<PresentationStage> stages) {
  QuotientPresentation P;
  P.state_ = std::make_shared<State>(std::move(D), slack);
  const int expected = P.top_weight() + slack + 1;
  if (slack < 0 || static_cast<int>(stages.size()) != expected)
    throw InputError("expected " + std::to_string(expected) + " stages");
  for (std::size_t w = 0; w < stages.size(); ++w) {
    if (stages[w].weight != static_cast<int>(w)) throw InputError("stages out of order");
    stages[w].reindex();
    P.state_->eager.push_back(std::make_shared<const PresentationStage>(std::move(stages[w])));
  }
  P.finish_basis();
  return P;
}

void QuotientPresentation::finish_basis() {
  State& s = *state_;
  const int top = top_weight();
  for (const auto& st : s.eager) {
    if (st->weight > top) {
      if (!st->complement.empty())
        throw SmoothnessError("quotient does not vanish at weight " + std::to_string(st->weight) +
                              "; singular or non-complete-intersection input");
      continue;
    }
    for (int c : st->complement) {
      s.basis_index.emplace(st->columns[static_cast<std::size_t>(c)], s.basis.size());
      s.basis.push_back(st->columns[static_cast<std::size_t>(c)]);
      s.basis_weights.push_back(st->weight);
    }
  }
}

const DworkData& QuotientPresentation::dwork() const { return state_->D; }
const ContextPtr& QuotientPresentation::context() const { return state_->D.ctx; }
int QuotientPresentation::background_charge() const { return state_->D.ctx->background_charge(); }
int QuotientPresentation::slack() const { return state_->slack; }
int QuotientPresentation::top_weight() const { return state_->D.ctx->n() - state_->D.ctx->k(); }
const std::vector<SuperMonomial>& QuotientPresentation::basis() const { return state_->basis; }
const std::vector<int>& QuotientPresentation::basis_weights() const { return state_->basis_weights; }
std::size_t QuotientPresentation::dimension() const { return state_->basis.size(); }

std::optional<std::size_t> QuotientPresentation::basis_index(const SuperMonomial& m) const {
  auto it = state_->basis_index.find(m);
  if (it == state_->basis_index.end()) return std::nullopt;
  return it->second;
}

SuperElement QuotientPresentation::basis_element(std::size_t rho) const {
  return SuperElement::monomial(context(), state_->basis.at(rho));
}

SuperElement QuotientPresentation::combination(const std::vector<Rational>& coefficients) const {
  if (coefficients.size() != dimension()) throw InputError("coefficient vector has the wrong length");
  TermAccumulator acc(context());
  for (std::size_t i = 0; i < coefficients.size(); ++i) acc.add(state_->basis[i], coefficients[i]);
  return std::move(acc).finish();
}

std::shared_ptr<const PresentationStage> QuotientPresentation::stage(int weight_value) const {
  if (weight_value < 0) throw InputError("negative weight");
  if (weight_value < static_cast<int>(state_->eager.size())) return state_->eager[static_cast<std::size_t>(weight_value)];
  std::lock_guard<std::mutex> lock(state_->lazy_mutex);
  auto it = state_->lazy.find(weight_value);
  if (it != state_->lazy.end()) return it->second;
  auto st = std::make_shared<const PresentationStage>(build_stage(state_->D, weight_value));
  if (!st->complement.empty())
    throw SmoothnessError("quotient does not vanish at weight " + std::to_string(weight_value) +
                          "; singular or non-complete-intersection input");
  state_->lazy.emplace(weight_value, st);
  return st;
}

ReductionResult QuotientPresentation::reduce(const SuperElement& f) const {
  const ContextPtr& ctx = context();
  if (!same_context(ctx, f.context())) throw ContextMismatch();
  for (const auto& t : f.terms())
    if (t.first.eta != 0) throw GradingError("reduce expects an element of cohomological degree 0");

  const int cg = background_charge();
  ReductionResult result{std::vector<Rational>(dimension(), Rational(0)), SuperElement(ctx)};
  const SuperElement core = f.charge_part(cg);
  if (core.size() != f.size() && !core.is_zero())
    throw GradingError("input mixes the background charge " + std::to_string(cg) + " with other charges");

  if (core.is_zero()) {
    // Other charges are exact: K(gR) = (lambda - c_G) g for eta-free g.
    const SuperElement R = charge_witness_element(ctx);
    for (const auto& comp : grade(f))
      result.certificate += multiply(comp.component, R) * Rational(comp.charge - cg).inverse();
    return result;
  }

  SuperElement rest = core;
  while (!rest.is_zero()) {
    const int w = *rest.max_weight();
    const SuperElement top = rest.weight_part(w);
    const auto st = stage(w);
    SuperElement xi(ctx);
    for (const auto& [m, c] : top.terms()) {
      auto it = st->column_of.find(m);
      if (it == st->column_of.end()) throw InvariantViolation("monomial outside its graded piece");
      const int r = st->row_of_column[static_cast<std::size_t>(it->second)];
      if (r >= 0) xi += st->preimages[static_cast<std::size_t>(r)] * c;
    }
    // What Q(xi) leaves behind lives on the complement columns.
    const SuperElement residue = top - apply_q(state_->D, xi);
    for (const auto& [m, c] : residue.terms()) {
      auto idx = basis_index(m);
      if (!idx) throw InvariantViolation("residue outside the basis at weight " + std::to_string(w));
      result.coefficients[*idx] += c;
    }
    result.certificate += xi;
    rest = rest - top - apply_delta(xi);
  }
  return result;
}

QuotientPresentation build_presentation(const DworkData& D, int slack) { return QuotientPresentation(D, slack); }

std::vector<int> hodge_numbers(const QuotientPresentation& P) {
  std::vector<int> h(static_cast<std::size_t>(std::max(P.top_weight() + 1, 0)), 0);
  for (int w : P.basis_weights()) ++h[static_cast<std::size_t>(w)];
  return h;
}

SuperElement charge_witness_element(const ContextPtr& ctx) {
  TermAccumulator acc(ctx);
  for (int mu = 0; mu < ctx->size(); ++mu) {
    SuperMonomial m(static_cast<std::size_t>(ctx->size()));
    m.exponents[static_cast<std::size_t>(mu)] = 1;
    m.eta = std::uint64_t{1} << mu;
    acc.add(std::move(m), Rational(ctx->charge_of_q(mu)));
  }
  return std::move(acc).finish();
}

ChargeWitness charge_witness_check(const DworkData& D, const SuperElement& f) {
  if (!same_context(D.ctx, f.context())) throw ContextMismatch();
  for (const auto& t : f.terms())
    if (t.first.eta != 0) throw GradingError("charge witness expects an element of cohomological degree 0");
  const int cg = D.ctx->background_charge();
  int lambda = cg;
  if (!f.is_zero()) {
    auto ch = f.homogeneous_charge();
    if (!ch) throw GradingError("charge witness expects a single charge");
    lambda = *ch;
  }
  const SuperElement fR = multiply(f, charge_witness_element(D.ctx));
  ChargeWitness out{lambda, apply_k(D, fR), f * Rational(lambda - cg), false, std::nullopt};
  out.holds = out.lhs == out.rhs;
  if (lambda != cg) out.witness = fR * Rational(lambda - cg).inverse();
  return out;
}

}  // namespace dwork
