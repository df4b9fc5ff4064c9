#include "dwork/errors.hpp"
#include "dwork/random.hpp"
#include "fixtures.hpp"

#include <doctest.h>

using namespace dwork;
using fixtures::q;

namespace {

struct Hesse {
  DeformationData def;
  UBasis u;
};

const Hesse& hesse() {
  static const Hesse h = [] {
    const auto& g = fixtures::cubic();
    auto def = build_deformation(g.D, {g.el("x0*x1*x2")});
    auto u = u_basis(def, *g.P, *def.deformed_presentation);
    return Hesse{std::move(def), std::move(u)};
  }();
  return h;
}

}  // namespace

TEST_CASE("Hesse deformation data") {
  const auto& g = fixtures::cubic();
  const auto& h = hesse();
  CHECK(h.def.gamma == g.el("y1*x0*x1*x2"));
  CHECK(h.def.deformed.G[0] == g.el("x0^3 + x1^3 + x2^3 + x0*x1*x2"));
  CHECK(h.def.Iprime == std::vector<int>{0});
  REQUIRE(h.u.u.size() == 2);
  CHECK(h.u.prime_count == 1);
  CHECK(h.u.u[0] == g.el("y1*x0*x1*x2"));
  CHECK(h.u.u[1] == g.el("1"));
  CHECK(h.u.factor == g.el("1"));
  CHECK(mc_check(g.D, h.def.gamma).holds);
}

TEST_CASE("Maurer-Cartan on simple inputs") {
  const auto& g = fixtures::cubic();
  const auto r = mc_check(g.D, g.el("y1*x0^3"));
  CHECK(r.holds);
  CHECK(r.k_term.is_zero());
  CHECK(r.bracket_term.is_zero());
  CHECK_THROWS_AS(mc_check(g.D, g.el("x0*e2")), GradingError);
}

TEST_CASE("deformed operator matches the operator of the deformed potential") {
  const auto& g = fixtures::cubic();
  const auto& h = hesse();
  const auto lambda = g.el("x0*e2");
  const auto kg = k_gamma(g.D, h.def.gamma, lambda);
  CHECK(kg == g.el("1") + multiply(g.el("x0*y1"), partial_q(2, h.def.deformed.G[0])));
  CHECK(kg == apply_k(h.def.deformed, lambda));
  CHECK(k_gamma(g.D, h.def.gamma, g.el("x0^2*y1 + 3")).is_zero());
  CHECK(k_gamma(g.D, SuperElement(g.ctx), lambda) == apply_k(g.D, lambda));

  const auto& qd = fixtures::quadrics();
  const auto def2 = build_deformation(qd.D, {qd.el("x0*x1"), SuperElement(qd.ctx)});
  CHECK(def2.Iprime == std::vector<int>{0});
  CHECK(mc_check(qd.D, def2.gamma).holds);
  RandomSource rs(71);
  for (int i = 0; i < 100; ++i) {
    const auto a = random_element(rs, g.ctx);
    CHECK(k_gamma(g.D, h.def.gamma, a) == apply_k(h.def.deformed, a));
    const auto b = random_element(rs, qd.ctx);
    CHECK(k_gamma(qd.D, def2.gamma, b) == apply_k(def2.deformed, b));
  }
}

TEST_CASE("deformation input checks") {
  const auto& g = fixtures::cubic();
  CHECK_THROWS_AS(build_deformation(g.D, {g.el("x0^3"), g.el("x1^3")}), InputError);
  CHECK_THROWS_AS(build_deformation(g.D, {g.el("x0^2")}), GradingError);
  CHECK_THROWS_AS(build_deformation(g.D, {g.el("y1*x0^3")}), InputError);
  // x0^3 + x1^3 + x2^3 - 3 x0 x1 x2 is a union of lines.
  CHECK_THROWS_AS(build_deformation(g.D, {g.el("-3*x0*x1*x2")}), SmoothnessError);
  const auto zero = build_deformation(g.D, {SuperElement(g.ctx)});
  CHECK(zero.gamma.is_zero());
  CHECK(zero.Iprime.empty());
  CHECK(zero.deformed.S == g.D.S);
}

TEST_CASE("Hesse series coefficients") {
  const auto& g = fixtures::cubic();
  const auto& h = hesse();
  const auto s = t_series(h.def, *g.P, h.u, 6);
  CHECK(s.coefficient(1, {1, 0}) == q(1));
  CHECK(s.coefficient(0, {1, 0}) == q(0));
  CHECK(s.coefficient(0, {2, 0}) == q(0));
  CHECK(s.coefficient(1, {2, 0}) == q(0));
  CHECK(s.coefficient(0, {3, 0}) == q(-1, 162));
  CHECK(s.coefficient(1, {4, 0}) == q(-1, 81));
  CHECK(s.coefficient(0, {0, 1}) == q(1));
  CHECK(s.find({2, 0})->certificate == g.el("1/6*y1*x1^2*x2^2*e2"));
  // Every recorded term is an exact identity.
  for (const auto& t : s.terms) CHECK(g.P->combination(t.coefficients) + apply_k(g.D, t.certificate) == t.rhs);
  CHECK_THROWS_AS(t_series(h.def, *g.P, h.u, 0), InputError);

  const auto sd = t_series(h.def, *g.P, h.u, 6, SeriesScope::DMatrix);
  CHECK(sd.terms.size() <= s.terms.size());
  CHECK(d_matrix(sd) == d_matrix(s));
}

TEST_CASE("D ladder") {
  const auto& g = fixtures::cubic();
  const auto& h = hesse();
  const auto ladder = d_matrix(t_series(h.def, *g.P, h.u, 3));
  REQUIRE(ladder.size() == 3);
  Matrix<Rational> one(2, 2);
  one(0, 1) = q(1);
  one(1, 0) = q(1);
  CHECK(ladder[0] == one);
  CHECK(ladder[2](0, 0) == q(-1, 54));

  const auto zero = build_deformation(g.D, {SuperElement(g.ctx)});
  const auto uz = u_basis(zero, *g.P, *zero.deformed_presentation);
  CHECK(uz.u == std::vector<SuperElement>{g.el("1"), g.el("y1*x0*x1*x2")});
  for (const auto& m : d_matrix(t_series(zero, *g.P, uz, 6))) CHECK(m == Matrix<Rational>::identity(2));
}

TEST_CASE("cumulative reductions") {
  const auto& g = fixtures::cubic();
  const auto& h = hesse();
  const auto seq = thm1_coefficients(h.def, *g.P, g.el("1"), 4);
  REQUIRE(seq.size() == 5);
  CHECK(seq[0] == std::vector<Rational>{q(1), q(0)});
  CHECK(seq[1] == std::vector<Rational>{q(1), q(1)});
  CHECK(seq[2] == seq[1]);
  CHECK(seq[3] == std::vector<Rational>{q(1) - q(1, 162), q(1)});
  CHECK(seq[4] == std::vector<Rational>{q(1) - q(1, 162), q(1) - q(1, 81)});
  CHECK(thm1_coefficients(h.def, *g.P, g.el("y1*x0*x1*x2"), 2)[0] == std::vector<Rational>{q(0), q(1)});

  const auto zero = build_deformation(g.D, {SuperElement(g.ctx)});
  const auto flat = thm1_coefficients(zero, *g.P, g.el("y1^2*x0^2*x1^2*x2^2 + 2"), 6);
  for (const auto& v : flat) CHECK(v == flat[0]);
  CHECK_THROWS_AS(thm1_coefficients(h.def, *g.P, g.el("x0"), 2), GradingError);
}

TEST_CASE("Bell route equals direct route") {
  const auto& g = fixtures::cubic();
  const auto& h = hesse();
  auto reducer = std::make_shared<CachedReducer>(*g.P);
  RandomSource rs(404);
  for (int i = 0; i < 5; ++i) {
    const auto f = reduction_functional(reducer, {rs.rational(), rs.rational()});
    for (const auto& u : {g.el("1"), g.el("y1*x0*x1*x2")}) CHECK(thm2_eval(f, h.def.gamma, u, 5) == thm2_direct(f, h.def.gamma, u, 5));
    const auto at_zero = thm2_eval(f, SuperElement(g.ctx), g.el("1"), 3);
    for (const auto& v : at_zero) CHECK(v == f(g.el("1")));
  }
  const auto f = reduction_functional(reducer, {q(2), q(3)});
  const auto one = thm2_eval(f, h.def.gamma, g.el("1"), 1);
  CHECK(one[1] == f(g.el("1")) + f(h.def.gamma));
  // The functional ignores exact elements and other charges.
  CHECK(f(apply_k(g.D, g.el("x0*e2"))).is_zero());
  CHECK(f(g.el("x0")).is_zero());
}

TEST_CASE("u factor for nonzero background charge") {
  auto quintic = make_context(2, 1, {5});
  CHECK(u_factor(quintic) == parse("x2^2", quintic));
  CHECK(u_factor(quintic, parse("x0*x1", quintic)) == parse("x0*x1", quintic));
  CHECK_THROWS_AS(u_factor(quintic, parse("x0", quintic)), GradingError);
  auto surface = make_context(3, 1, {3});
  CHECK(u_factor(surface) == parse("y1*x3^2", surface));
  auto mixed = make_context(4, 2, {2, 1});
  // c_G = -2: y1 and y2^2 cost the same; the smaller monomial wins.
  CHECK(mixed->background_charge() == -2);
  CHECK(u_factor(mixed) == parse("y1", mixed));
  CHECK(u_factor(fixtures::cubic().ctx) == fixtures::cubic().el("1"));
  CHECK_THROWS_AS(u_factor(fixtures::cubic().ctx, fixtures::cubic().el("x0")), InputError);
}

TEST_CASE("period transport") {
  Matrix<Rational> D(2, 2);
  D(0, 0) = q(1);
  D(1, 0) = q(-1, 54);
  D(1, 1) = q(1);
  Matrix<Rational> omega(2, 2);
  omega(0, 0) = q(1);
  omega(0, 1) = q(2);
  omega(1, 0) = q(3);
  omega(1, 1) = q(4);
  const auto out = std::get<Matrix<Rational>>(period_transport(D, omega, {Matrix<Rational>::identity(2), true}));
  Matrix<Rational> want(2, 2);
  want(0, 0) = q(1);
  want(0, 1) = q(2);
  want(1, 0) = q(3) - q(1, 54);
  want(1, 1) = q(4) - q(2, 54);
  CHECK(out == want);
  const auto id = std::get<Matrix<Rational>>(period_transport(Matrix<Rational>::identity(2), omega, {Matrix<Rational>::identity(2), true}));
  CHECK(id == omega);

  Matrix<double> od(2, 2, 1.0);
  const auto outd = std::get<Matrix<double>>(period_transport(D, od, {Matrix<Rational>::identity(2), true}));
  CHECK(outd(1, 0) == doctest::Approx(1.0 - 1.0 / 54));

  Matrix<Rational> B(2, 2);
  B(0, 0) = q(2);
  B(1, 1) = q(1);
  CHECK_THROWS_AS(validate_base_change({B, true}), InputError);
  CHECK_NOTHROW(validate_base_change({B, false}));
  CHECK_THROWS_AS(period_transport(D, Matrix<Rational>(3, 2), {Matrix<Rational>::identity(2), true}), InputError);
}
