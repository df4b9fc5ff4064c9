#include "dwork/deformation.hpp"

#include "dwork/bell.hpp"
#include "dwork/errors.hpp"
#include "dwork/parse.hpp"

#include <algorithm>

namespace dwork {

namespace {

void require_x_form(const SuperElement& p, int degree, const std::string& what) {
  for (const auto& [m, c] : p.terms()) {
    if (m.eta != 0) throw InputError(what + " contains an odd variable");
    for (int i = 0; i < p.ctx().k(); ++i)
      if (m.exponents[static_cast<std::size_t>(i)] != 0) throw InputError(what + " contains y" + std::to_string(i + 1));
    if (m.total_q_degree() != degree)
      throw GradingError(what + " is not homogeneous of degree " + std::to_string(degree));
  }
}

template <class Fn>
void exponents_of_total(std::size_t parts, int total, Fn&& fn) {
  std::vector<int> v(parts, 0);
  if (parts == 0) {
    if (total == 0) fn(v);
    return;
  }
  auto rec = [&](auto&& self, std::size_t i, int left) -> void {
    if (i + 1 == parts) {
      v[i] = left;
      fn(v);
      return;
    }
    for (int e = left; e >= 0; --e) {
      v[i] = e;
      self(self, i + 1, left - e);
    }
  };
  rec(rec, 0, total);
}

// Incremental row echelon form that remembers how each row was combined.
class IndependenceTracker {
 public:
  explicit IndependenceTracker(std::size_t dim) : dim_(dim) {}

  std::size_t rank() const { return rows_.size(); }

  // Returns the dependency over the inserted vectors when `v` is in the span.
  std::optional<std::vector<Rational>> insert(std::vector<Rational> v) {
    const std::size_t id = inserted_++;
    std::vector<Rational> combo(inserted_, Rational(0));
    combo[id] = Rational(1);
    for (auto& c : combos_) c.resize(inserted_, Rational(0));
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const Rational f = v[pivots_[r]];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < dim_; ++j) v[j] -= f * rows_[r][j];
      for (std::size_t j = 0; j < inserted_; ++j) combo[j] -= f * combos_[r][j];
    }
    std::size_t p = 0;
    while (p < dim_ && v[p].is_zero()) ++p;
    if (p == dim_) {
      --inserted_;
      return combo;
    }
    const Rational inv = v[p].inverse();
    for (auto& x : v) x *= inv;
    for (auto& x : combo) x *= inv;
    rows_.push_back(std::move(v));
    combos_.push_back(std::move(combo));
    pivots_.push_back(p);
    return std::nullopt;
  }

 private:
  std::size_t dim_;
  std::size_t inserted_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<std::vector<Rational>> combos_;
  std::vector<std::size_t> pivots_;
};

}  // namespace

MCResult mc_check(const DworkData& D, const SuperElement& gamma) {
  if (gamma.homogeneous_degree() != 0) throw GradingError("Maurer-Cartan element must have cohomological degree 0");
  MCResult r{apply_k(D, gamma), ell2(D, gamma, gamma) * Rational(mpz_class(1), mpz_class(2)), SuperElement(D.ctx), false};
  r.residual = r.k_term + r.bracket_term;
  r.holds = r.residual.is_zero();
  return r;
}

DeformationData build_deformation(const DworkData& base, std::vector<SuperElement> H, int slack) {
  const VariableContext& ctx = *base.ctx;
  if (static_cast<int>(H.size()) != ctx.k())
    throw InputError("expected " + std::to_string(ctx.k()) + " deformation polynomials, got " + std::to_string(H.size()));
  SuperElement gamma(base.ctx);
  std::vector<int> Iprime;
  std::vector<SuperElement> U;
  for (int i = 0; i < ctx.k(); ++i) {
    const SuperElement& h = H[static_cast<std::size_t>(i)];
    if (!same_context(h.context(), base.ctx)) throw ContextMismatch();
    require_x_form(h, ctx.degrees()[static_cast<std::size_t>(i)], "H" + std::to_string(i + 1));
    if (!h.is_zero()) Iprime.push_back(i);
    gamma += multiply(SuperElement::q(base.ctx, i), h);
    U.push_back(base.G[static_cast<std::size_t>(i)] + h);
  }
  DworkData deformed = dwork_potential(base.ctx, std::move(U));
  if (deformed.S != base.S + gamma) throw InvariantViolation("deformed potential differs from S + Gamma");
  const MCResult mc = mc_check(base, gamma);
  if (!mc.holds) throw InvariantViolation("Maurer-Cartan residual " + render(mc.residual));
  auto PU = std::make_shared<const QuotientPresentation>(deformed, slack);
  return DeformationData{base, std::move(H), std::move(gamma), std::move(deformed), std::move(Iprime), std::move(PU)};
}

SuperElement k_gamma(const DworkData& D, const SuperElement& gamma, const SuperElement& lambda) {
  return apply_k(D, lambda) + ell2(D, gamma, lambda);
}

SuperElement u_factor(const ContextPtr& ctx, const std::optional<SuperElement>& h) {
  const int cg = ctx->background_charge();
  const int last_x = ctx->x_index(ctx->n());
  auto x_power = [&](int d) {
    SuperMonomial m(static_cast<std::size_t>(ctx->size()));
    m.exponents[static_cast<std::size_t>(last_x)] = d;
    return SuperElement::monomial(ctx, std::move(m));
  };
  if (cg == 0) {
    if (h) throw InputError("h applies only when the background charge is nonzero");
    return SuperElement::constant(ctx, Rational(1));
  }
  if (cg > 0) {
    if (!h) return x_power(cg);
    if (h->is_zero()) throw InputError("h must be nonzero");
    require_x_form(*h, cg, "h");
    return *h;
  }
  int best_cost = -1;
  for (int j = 0; j < ctx->k(); ++j) {
    const int d = ctx->degrees()[static_cast<std::size_t>(j)];
    const int cost = ((-cg + d - 1) / d) * d;
    if (best_cost < 0 || cost < best_cost) best_cost = cost;
  }
  const int hdeg = cg + best_cost;
  std::optional<SuperElement> best;
  MonomialOrder order(*ctx);
  for (int j = 0; j < ctx->k(); ++j) {
    const int d = ctx->degrees()[static_cast<std::size_t>(j)];
    if (best_cost % d != 0) continue;
    SuperMonomial ym(static_cast<std::size_t>(ctx->size()));
    ym.exponents[static_cast<std::size_t>(j)] = best_cost / d;
    SuperElement hx = x_power(hdeg);
    if (h) {
      if (h->is_zero()) throw InputError("h must be nonzero");
      require_x_form(*h, hdeg, "h");
      hx = *h;
    }
    SuperElement cand = multiply(SuperElement::monomial(ctx, ym), hx);
    if (!best || order(cand.leading_term().first, best->leading_term().first)) best = std::move(cand);
  }
  return *best;
}

UBasis u_basis(const DeformationData& def, const QuotientPresentation& PG, const QuotientPresentation& PU,
               const std::optional<SuperElement>& h) {
  const std::size_t dim = PG.dimension();
  if (PU.dimension() != dim)
    throw AssumptionError("deformed quotient has dimension " + std::to_string(PU.dimension()) + ", expected " +
                          std::to_string(dim));
  if (dim <= def.Iprime.size())
    throw AssumptionError("basis size " + std::to_string(dim) + " must exceed the number of deformed equations " +
                          std::to_string(def.Iprime.size()));
  const ContextPtr& ctx = def.base.ctx;
  UBasis out{{}, 0, def.Iprime.empty() && !h ? SuperElement::constant(ctx, Rational(1)) : u_factor(ctx, h), {}, {}};
  IndependenceTracker tracker(dim);

  for (int i : def.Iprime) {
    SuperElement u = multiply(out.factor, multiply(SuperElement::q(ctx, i), def.H[static_cast<std::size_t>(i)]));
    auto red = PU.reduce(u).coefficients;
    if (auto dep = tracker.insert(red)) {
      std::string rel;
      for (std::size_t a = 0; a < dep->size(); ++a) {
        if ((*dep)[a].is_zero()) continue;
        if (!rel.empty()) rel += " + ";
        rel += "(" + (*dep)[a].str() + ")*u" + std::to_string(a + 1);
      }
      throw IndependenceError("deformation classes are dependent modulo K_U: " + rel + " = 0, with u" +
                              std::to_string(out.u.size() + 1) + " = " + render(u));
    }
    out.u.push_back(std::move(u));
    out.reductions.push_back(std::move(red));
  }
  out.prime_count = out.u.size();
  for (std::size_t rho = 0; rho < dim && out.u.size() < dim; ++rho) {
    SuperElement e = PG.basis_element(rho);
    auto red = PU.reduce(e).coefficients;
    if (tracker.insert(red)) continue;
    out.u.push_back(std::move(e));
    out.reductions.push_back(std::move(red));
    out.extension.push_back(rho);
  }
  if (out.u.size() != dim) throw InvariantViolation("could not extend the deformation classes to a basis");
  return out;
}

const SeriesTerm* DeformationSeries::find(const std::vector<int>& exponent) const {
  for (const auto& t : terms)
    if (t.exponent == exponent) return &t;
  return nullptr;
}

Rational DeformationSeries::coefficient(std::size_t rho, const std::vector<int>& exponent) const {
  const SeriesTerm* t = find(exponent);
  return t ? t->coefficients.at(rho) : Rational(0);
}

DeformationSeries t_series(const DeformationData& def, const QuotientPresentation& PG, const UBasis& ub, int order,
                           SeriesScope scope) {
  if (order < 1) throw InputError("truncation order must be at least 1");
  const ContextPtr& ctx = def.base.ctx;
  const bool calabi_yau = ctx->background_charge() == 0;
  const std::size_t nv = ub.u.size();
  const std::size_t np = ub.prime_count;

  // Exponential generators: u_alpha in the c_G = 0 case, y_i H_i on I' otherwise.
  std::vector<SuperElement> gen;
  for (std::size_t a = 0; a < nv; ++a) {
    if (calabi_yau || a >= np)
      gen.push_back(ub.u[a]);
    else
      gen.push_back(multiply(SuperElement::q(ctx, def.Iprime[a]), def.H[static_cast<std::size_t>(def.Iprime[a])]));
  }
  std::vector<std::vector<SuperElement>> powers(nv);
  auto power_of = [&](std::size_t a, int e) -> const SuperElement& {
    auto& p = powers[a];
    if (p.empty()) p.push_back(SuperElement::constant(ctx, Rational(1)));
    while (static_cast<int>(p.size()) <= e) p.push_back(multiply(p.back(), gen[a]));
    return p[static_cast<std::size_t>(e)];
  };

  DeformationSeries series;
  series.variables = nv;
  series.prime_count = np;
  series.order = order;
  for (int m = calabi_yau ? 1 : 0; m <= order; ++m) {
    exponents_of_total(nv, m, [&](const std::vector<int>& e) {
      int outside = 0;
      std::size_t beta = nv;
      for (std::size_t a = np; a < nv; ++a)
        if (e[a] > 0) {
          outside += e[a];
          beta = a;
        }
      if (scope == SeriesScope::DMatrix && outside > 1) return;

      SuperElement rhs(ctx);
      if (calabi_yau) {
        rhs = SuperElement::constant(ctx, Rational(1));
        Rational scale(1);
        for (std::size_t a = 0; a < nv; ++a) {
          if (e[a] == 0) continue;
          rhs = multiply(rhs, power_of(a, e[a]));
          scale *= factorial(e[a]);
        }
        rhs *= scale.inverse();
      } else if (outside <= 1) {
        rhs = outside == 0 ? ub.factor : ub.u[beta];
        Rational scale(1);
        for (std::size_t a = 0; a < np; ++a) {
          if (e[a] == 0) continue;
          rhs = multiply(rhs, power_of(a, e[a]));
          scale *= factorial(e[a]);
        }
        rhs *= scale.inverse();
      }
      ReductionResult red = PG.reduce(rhs);
      series.terms.push_back({e, std::move(rhs), std::move(red.coefficients), std::move(red.certificate)});
    });
  }
  return series;
}

std::vector<Matrix<Rational>> d_matrix(const DeformationSeries& series) {
  const std::size_t nv = series.variables;
  std::vector<Matrix<Rational>> ladder;
  Matrix<Rational> acc(nv, nv, Rational(0));
  for (int m = 1; m <= series.order; ++m) {
    for (const auto& t : series.terms) {
      int total = 0;
      for (int x : t.exponent) total += x;
      if (total != m) continue;
      for (std::size_t beta = 0; beta < nv; ++beta) {
        if (t.exponent[beta] == 0) continue;
        bool on_prime = true;
        for (std::size_t a = series.prime_count; a < nv; ++a)
          if (t.exponent[a] - (a == beta ? 1 : 0) > 0) on_prime = false;
        if (!on_prime) continue;
        for (std::size_t rho = 0; rho < nv; ++rho)
          acc(beta, rho) += Rational(t.exponent[beta]) * t.coefficients[rho];
      }
    }
    ladder.push_back(acc);
  }
  return ladder;
}

std::vector<std::vector<Rational>> thm1_coefficients(const DeformationData& def, const QuotientPresentation& PG,
                                                     const SuperElement& u, int order) {
  if (order < 0) throw InputError("order must be non-negative");
  for (const auto& t : u.terms())
    if (t.first.eta != 0) throw GradingError("u must be free of odd variables");
  if (!u.is_zero() && u.homogeneous_charge() != PG.background_charge())
    throw GradingError("u must have the background charge " + std::to_string(PG.background_charge()));
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> acc(PG.dimension(), Rational(0));
  SuperElement term = u;
  for (int M = 0; M <= order; ++M) {
    if (M > 0) term = multiply(term, def.gamma) * Rational(M).inverse();
    const auto c = PG.reduce(term).coefficients;
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += c[i];
    out.push_back(acc);
  }
  return out;
}

std::vector<Rational> thm2_eval(const LinearFunctional& f, const SuperElement& gamma, const SuperElement& u,
                                int order) {
  if (order < 0) throw InputError("order must be non-negative");
  DescendantMorphism phi(f);
  std::vector<Rational> x;  // x[n-1] = phi_n(gamma, ..., gamma)
  for (int n = 1; n <= order; ++n) x.push_back(phi(std::vector<SuperElement>(static_cast<std::size_t>(n), gamma)));
  std::vector<Rational> bell;
  for (int j = 0; j <= order; ++j) bell.push_back(bell_complete<Rational>(j, x, Rational(1)));
  std::vector<Rational> tail;  // tail[k] = phi_{k+1}(gamma x k, u)
  for (int k = 0; k <= order; ++k) {
    std::vector<SuperElement> args(static_cast<std::size_t>(k), gamma);
    args.push_back(u);
    tail.push_back(phi(args));
  }
  std::vector<Rational> out;
  Rational acc(0);
  for (int m = 0; m <= order; ++m) {
    for (int j = 0; j <= m; ++j)
      acc += bell[static_cast<std::size_t>(j)] * tail[static_cast<std::size_t>(m - j)] *
             (factorial(j) * factorial(m - j)).inverse();
    out.push_back(acc);
  }
  return out;
}

std::vector<Rational> thm2_direct(const LinearFunctional& f, const SuperElement& gamma, const SuperElement& u,
                                  int order) {
  std::vector<Rational> out;
  Rational acc(0);
  SuperElement term = u;
  for (int m = 0; m <= order; ++m) {
    if (m > 0) term = multiply(term, gamma) * Rational(m).inverse();
    acc += f(term);
    out.push_back(acc);
  }
  return out;
}

std::vector<Rational> CachedReducer::operator()(const SuperElement& f) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    if (auto it = memo_.find(f); it != memo_.end()) return it->second;
  }
  auto c = P_.reduce(f).coefficients;
  std::lock_guard<std::mutex> lock(mutex_);
  memo_.emplace(f, c);
  return c;
}

LinearFunctional reduction_functional(std::shared_ptr<CachedReducer> reducer, std::vector<Rational> row) {
  if (row.size() != reducer->presentation().dimension()) throw InputError("functional row has the wrong length");
  const int cg = reducer->presentation().background_charge();
  auto fn = [reducer, row = std::move(row), cg](const SuperElement& a) {
    const auto c = (*reducer)(a.charge_part(cg));
    Rational v(0);
    for (std::size_t i = 0; i < c.size(); ++i) v += row[i] * c[i];
    return v;
  };
  return LinearFunctional{fn, true};
}

void validate_base_change(const BaseChange& B) {
  if (B.B.rows() != B.B.cols()) throw InputError("base change must be square");
  if (!B.integral) return;
  for (std::size_t i = 0; i < B.B.rows(); ++i)
    for (std::size_t j = 0; j < B.B.cols(); ++j)
      if (!B.B(i, j).is_integer()) throw InputError("integral base change has a non-integer entry");
  const Rational det = determinant(B.B);
  if (det != Rational(1) && det != Rational(-1))
    throw InputError("integral base change is not unimodular (det " + det.str() + ")");
}

PeriodMatrix period_transport(const Matrix<Rational>& D, const PeriodMatrix& omega, const BaseChange& B) {
  validate_base_change(B);
  return std::visit(
      [&](const auto& om) -> PeriodMatrix {
        using M = std::decay_t<decltype(om)>;
        const std::size_t n = D.rows();
        if (D.cols() != n || om.rows() != n || om.cols() != n || B.B.rows() != n)
          throw InputError("period transport needs square matrices of size " + std::to_string(n) + ", got D " +
                           std::to_string(D.rows()) + "x" + std::to_string(D.cols()) + ", Omega " +
                           std::to_string(om.rows()) + "x" + std::to_string(om.cols()) + ", B " +
                           std::to_string(B.B.rows()) + "x" + std::to_string(B.B.cols()));
        if constexpr (std::is_same_v<M, Matrix<Rational>>) {
          return D * om * B.B;
        } else {
          using T = std::decay_t<decltype(om(0, 0))>;
          auto conv = [](const Rational& r) { return T(r.to_double()); };
          return D.map(conv) * om * B.B.map(conv);
        }
      },
      omega);
}

}  // namespace dwork
