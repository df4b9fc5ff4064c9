// One line per acceptance criterion: PASS/FAIL, name, elapsed time against its budget.

#include "dwork/deformation.hpp"
#include "dwork/parse.hpp"
#include "dwork/random.hpp"
#include "oracles/oracles.hpp"

#include <fmt/core.h>

#include <chrono>
#include <functional>
#include <memory>
#include <string>
#include <vector>

using namespace dwork;

namespace {

struct Geometry {
  ContextPtr ctx;
  DworkData D;
  std::shared_ptr<QuotientPresentation> P;

  SuperElement el(const std::string& s) const { return parse(s, ctx); }
};

Geometry make(int n, int k, std::vector<int> d, const std::vector<std::string>& G) {
  auto ctx = make_context(n, k, std::move(d));
  std::vector<SuperElement> g;
  for (const auto& s : G) g.push_back(parse(s, ctx));
  auto D = dwork_potential(ctx, std::move(g));
  return {ctx, D, std::make_shared<QuotientPresentation>(D)};
}

Geometry cubic() { return make(2, 1, {3}, {"x0^3 + x1^3 + x2^3"}); }
Geometry quadrics() { return make(3, 2, {2, 2}, {"x0^2 + x1^2 + x2^2 + x3^2", "x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2"}); }

SuperElement sgn(int e, const SuperElement& x) { return (e % 2) ? -x : x; }

class Check {
 public:
  explicit Check(std::string& why) : why_(why) {}
  void operator()(bool ok, const std::string& what) {
    if (!ok && why_.empty()) why_ = what;
  }

 private:
  std::string& why_;
};

bool algebra_laws(std::string& why) {
  Check check(why);
  RandomSource rs(1001);
  for (const auto& g : {cubic(), quadrics()}) {
    const Operator K = k_operator(g.D);
    for (int i = 0; i < 200; ++i) {
      RandomElementOptions o;
      o.terms = 3;
      o.degree = -rs.uniform(0, 2);
      const auto a = random_element(rs, g.ctx, o);
      o.degree = -rs.uniform(0, 2);
      const auto b = random_element(rs, g.ctx, o);
      o.degree = -rs.uniform(0, 2);
      const auto c = random_element(rs, g.ctx, o);
      const int pa = parity(a), pb = parity(b);
      check(apply_delta(apply_delta(a)).is_zero(), "Delta^2");
      check(apply_q(g.D, apply_q(g.D, a)).is_zero(), "Q^2");
      check(K(K(a)).is_zero(), "K^2");
      check((apply_delta(apply_q(g.D, a)) + apply_q(g.D, apply_delta(a))).is_zero(), "Delta Q + Q Delta");
      check(multiply(a, b) == sgn(pa * pb, multiply(b, a)), "supercommutativity");
      check(multiply(multiply(a, b), c) == multiply(a, multiply(b, c)), "associativity");
      check(ell2(K, a, b) == sgn(pa * pb, ell2(K, b, a)), "bracket symmetry");
      check(ell2(K, a, ell2(K, b, c)) ==
                sgn(pa + 1, ell2(K, ell2(K, a, b), c)) + sgn((pa + 1) * (pb + 1), ell2(K, b, ell2(K, a, c))),
            "Jacobi");
      check(ell2(K, a, multiply(b, c)) == multiply(ell2(K, a, b), c) + sgn((pa + 1) * pb, multiply(b, ell2(K, a, c))),
            "Poisson");
      check(ell_n(K, {a, b, c}).is_zero(), "l3");
    }
  }
  return why.empty();
}

bool dimensions(std::string& why) {
  Check check(why);
  struct Hyp {
    int n, d;
    std::string G;
    int dim;
    std::vector<int> hodge;
  };
  for (const auto& h : {Hyp{2, 3, "x0^3 + x1^3 + x2^3", 2, {1, 1}}, Hyp{3, 4, "x0^4 + x1^4 + x2^4 + x3^4", 21, {1, 19, 1}},
                        Hyp{3, 3, "x0^3 + x1^3 + x2^3 + x3^3", 6, {0, 6, 0}}}) {
    const auto g = make(h.n, 1, {h.d}, {h.G});
    oracle::Poly G;
    for (const auto& [m, c] : g.D.G[0].terms()) G[oracle::Exponents(m.exponents.begin() + 1, m.exponents.end())] = c.raw();
    std::vector<int> want;
    for (int w = 0; w < h.n; ++w) want.push_back(oracle::jacobian_ring_dim(G, h.n + 1, (w + 1) * h.d - h.n - 1));
    check(want == h.hodge, "oracle disagrees with expected Hodge numbers for " + h.G);
    check(hodge_numbers(*g.P) == want, "Hodge numbers for " + h.G);
    check(static_cast<int>(g.P->dimension()) == h.dim, "dimension for " + h.G);
  }
  const auto q = quadrics();
  std::vector<oracle::Poly> G;
  for (const auto& gi : q.D.G) {
    oracle::Poly p;
    for (const auto& [m, c] : gi.terms()) p[oracle::Exponents(m.exponents.begin() + 2, m.exponents.end())] = c.raw();
    G.push_back(p);
  }
  std::vector<int> want;
  for (int w = 0; w <= 1; ++w) want.push_back(oracle::bigraded_jacobian_dim(G, 4, w, 2 * w));
  check(hodge_numbers(*q.P) == want, "two quadrics");
  check(q.P->dimension() == 2, "two quadrics dimension");
  return why.empty();
}

bool reduction(std::string& why) {
  Check check(why);
  RandomSource rs(2002);
  for (const auto& g : {cubic(), quadrics()}) {
    const auto& P = *g.P;
    const int cg = P.background_charge();
    for (int i = 0; i < 200; ++i) {
      const auto xi = random_homogeneous(rs, g.ctx, cg, rs.uniform(0, P.top_weight() + 2), -1);
      const auto r = P.reduce(apply_k(g.D, xi));
      bool zero = true;
      for (const auto& c : r.coefficients) zero = zero && c.is_zero();
      check(zero, "reduce(K(xi)) != 0 for xi = " + render(xi));
      check(P.combination(r.coefficients) + apply_k(g.D, r.certificate) == apply_k(g.D, xi), "certificate of K(xi)");
      const auto f = random_homogeneous(rs, g.ctx, cg, rs.uniform(0, P.top_weight() + 3), 0);
      const auto rf = P.reduce(f);
      check(P.combination(rf.coefficients) + apply_k(g.D, rf.certificate) == f, "certificate of " + render(f));
    }
  }
  return why.empty();
}

bool hesse_series(std::string& why) {
  Check check(why);
  const auto g = cubic();
  const auto def = build_deformation(g.D, {g.el("x0*x1*x2")});
  const auto u = u_basis(def, *g.P, *def.deformed_presentation);
  const auto s = t_series(def, *g.P, u, 6);
  check(s.coefficient(1, {1, 0}) == Rational(1), "t1 in T2");
  check(s.coefficient(0, {2, 0}).is_zero() && s.coefficient(1, {2, 0}).is_zero(), "(t1)^2");
  check(s.coefficient(0, {3, 0}) == Rational(-1) / Rational(162), "(t1)^3 in T1");
  check(s.coefficient(1, {4, 0}) == Rational(-1) / Rational(81), "(t1)^4 in T2");
  for (const auto& t : s.terms)
    check(g.P->combination(t.coefficients) + apply_k(g.D, t.certificate) == t.rhs, "series term certificate");
  return why.empty();
}

bool maurer_cartan(std::string& why) {
  Check check(why);
  RandomSource rs(3003);
  const auto c = cubic();
  const auto q = quadrics();
  const auto hesse = build_deformation(c.D, {c.el("x0*x1*x2")});
  const auto pencil = build_deformation(q.D, {q.el("x0*x1"), SuperElement(q.ctx)});
  for (const auto* p : {&hesse, &pencil}) {
    check(mc_check(p->base, p->gamma).holds, "Maurer-Cartan");
    for (int i = 0; i < 200; ++i) {
      const auto a = random_element(rs, p->base.ctx);
      check(k_gamma(p->base, p->gamma, a) == apply_k(p->deformed, a), "K_Gamma != K_U on " + render(a));
    }
  }
  return why.empty();
}

bool route_equivalence(std::string& why) {
  Check check(why);
  RandomSource rs(4004);
  const auto g = cubic();
  const auto def = build_deformation(g.D, {g.el("x0*x1*x2")});
  auto reducer = std::make_shared<CachedReducer>(*g.P);
  for (int i = 0; i < 20; ++i) {
    const auto f = reduction_functional(reducer, {rs.rational(), rs.rational()});
    for (std::size_t rho = 0; rho < 2; ++rho) {
      const auto u = g.P->basis_element(rho);
      check(thm2_eval(f, def.gamma, u, 5) == thm2_direct(f, def.gamma, u, 5), "functional " + std::to_string(i));
    }
  }
  return why.empty();
}

bool charge_concentration(std::string& why) {
  Check check(why);
  RandomSource rs(5005);
  const auto g = cubic();
  const int cg = g.P->background_charge();
  int done = 0;
  while (done < 50) {
    int lambda = rs.uniform(-4, 4);
    if (lambda == cg) continue;
    // In degree 0 every element is eta-free, hence K-closed; mix in an exact part too.
    const int w = rs.uniform(0, 3);
    const auto xi = random_homogeneous(rs, g.ctx, lambda, w, -1);
    const auto ef = apply_k(g.D, xi) + random_homogeneous(rs, g.ctx, lambda, w, 0);
    if (ef.is_zero()) continue;
    check(apply_k(g.D, ef).is_zero(), "not closed: " + render(ef));
    const auto cw = charge_witness_check(g.D, ef);
    check(cw.holds && cw.witness && apply_k(g.D, *cw.witness) == ef, "witness for " + render(ef));
    ++done;
  }
  return why.empty();
}

bool degenerate(std::string& why) {
  Check check(why);
  for (const auto& g : {cubic(), quadrics()}) {
    std::vector<SuperElement> H(static_cast<std::size_t>(g.ctx->k()), SuperElement(g.ctx));
    const auto def = build_deformation(g.D, H);
    const auto u = u_basis(def, *g.P, *def.deformed_presentation);
    const auto ladder = d_matrix(t_series(def, *g.P, u, 6));
    check(ladder.size() == 6, "ladder length");
    for (const auto& m : ladder) check(m == Matrix<Rational>::identity(g.P->dimension()), "D != identity");
    for (std::size_t rho = 0; rho < g.P->dimension(); ++rho) {
      const auto seq = thm1_coefficients(def, *g.P, g.P->basis_element(rho), 6);
      for (const auto& v : seq) check(v == seq[0], "thm1 sequence not constant");
    }
  }
  return why.empty();
}

}  // namespace

int main() {
  struct Criterion {
    std::string name;
    double budget;
    std::function<bool(std::string&)> fn;
  };
  const std::vector<Criterion> criteria = {
      {"algebraic laws (200 per context)", 10, algebra_laws},
      {"quotient dimensions vs Jacobian oracle", 60, dimensions},
      {"reduction soundness and kernel", 30, reduction},
      {"Hesse series coefficients", 10, hesse_series},
      {"Maurer-Cartan and K_Gamma = K_U", 20, maurer_cartan},
      {"Bell route equals direct route", 30, route_equivalence},
      {"charge concentration witnesses", 10, charge_concentration},
      {"degenerate deformation H = 0", 5, degenerate},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    std::string why;
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = c.fn(why);
    } catch (const std::exception& e) {
      why = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = secs < c.budget;
    if (ok && !in_time) why = "over budget";
    const bool pass = ok && in_time;
    failures += pass ? 0 : 1;
    fmt::print("{} {} ({:.2f}s / {:.0f}s){}\n", pass ? "PASS" : "FAIL", c.name, secs, c.budget,
               why.empty() ? "" : " : " + why);
  }
  return failures == 0 ? 0 : 1;
}
