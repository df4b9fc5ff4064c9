#include "dwork/verify.hpp"

#include "dwork/parse.hpp"
#include "dwork/random.hpp"

#include <functional>

namespace dwork {

bool VerifyReport::passed() const {
  for (const auto& f : families)
    if (!f.passed) return false;
  return true;
}

namespace {

using Check = std::function<std::optional<std::string>(RandomSource&)>;

class Runner {
 public:
  explicit Runner(const VerifyOptions& opt) : opt_(opt) {}

  void family(const std::string& name, const Check& check, int iterations = -1) {
    FamilyReport rep;
    rep.name = name;
    // Each family draws from its own stream so adding one does not shift the others.
    std::uint64_t h = 1469598103934665603ULL;  // FNV-1a, stable across platforms
    for (unsigned char ch : name) h = (h ^ ch) * 1099511628211ULL;
    RandomSource rs(opt_.seed * 0x9e3779b97f4a7c15ULL ^ h);
    const int n = iterations < 0 ? opt_.iterations : iterations;
    for (int i = 0; i < n; ++i) {
      ++rep.checks;
      std::optional<std::string> bad;
      try {
        bad = check(rs);
      } catch (const std::exception& e) {
        bad = std::string("raised: ") + e.what();
      }
      if (bad) {
        rep.passed = false;
        rep.counterexample = *bad;
        break;
      }
    }
    report_.families.push_back(std::move(rep));
  }

  VerifyReport take() { return std::move(report_); }

 private:
  const VerifyOptions& opt_;
  VerifyReport report_;
};

std::string show(std::initializer_list<std::pair<const char*, SuperElement>> items) {
  std::string out;
  for (const auto& [k, v] : items) {
    if (!out.empty()) out += "; ";
    out += std::string(k) + " = " + render(v);
  }
  return out;
}

SuperElement graded(RandomSource& rs, const ContextPtr& ctx) {
  RandomElementOptions o;
  o.terms = 3;
  o.degree = -rs.uniform(0, 2);
  return random_element(rs, ctx, o);
}

}  // namespace

VerifyReport run_verify(const QuotientPresentation& P, const DeformationData* def, const VerifyOptions& opt) {
  const DworkData& D = P.dwork();
  const ContextPtr& ctx = D.ctx;
  const int cg = P.background_charge();
  const int top = P.top_weight();

  Operator K = k_operator(D);
  if (opt.corrupt_operator) {
    const SuperElement x0 = SuperElement::q(ctx, ctx->x_index(0));
    K = [D, x0](const SuperElement& a) { return apply_k(D, a) + multiply(x0, partial_eta(1, a)); };
  }
  auto Q = [&D](const SuperElement& a) { return apply_q(D, a); };

  Runner run(opt);

  run.family("superalgebra.supercommutativity", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement a = graded(rs, ctx), b = graded(rs, ctx);
    SuperElement ba = multiply(b, a);
    if (parity(a) * parity(b)) ba = -ba;
    if (multiply(a, b) != ba) return show({{"a", a}, {"b", b}});
    return std::nullopt;
  });
  run.family("superalgebra.associativity", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement a = random_element(rs, ctx), b = random_element(rs, ctx), c = random_element(rs, ctx);
    if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c))) return show({{"a", a}, {"b", b}, {"c", c}});
    const Rational s = rs.rational();
    if (multiply(a * s + b, c) != multiply(a, c) * s + multiply(b, c)) return show({{"a", a}, {"b", b}, {"c", c}});
    return std::nullopt;
  });
  run.family("superalgebra.grading-additivity", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement a = graded(rs, ctx), b = graded(rs, ctx);
    for (const auto& ca : grade(a))
      for (const auto& cb : grade(b)) {
        for (const auto& cp : grade(multiply(ca.component, cb.component)))
          if (cp.charge != ca.charge + cb.charge || cp.weight != ca.weight + cb.weight ||
              cp.degree != ca.degree + cb.degree)
            return show({{"a", ca.component}, {"b", cb.component}});
      }
    return std::nullopt;
  });
  run.family("superalgebra.derivations", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement a = random_element(rs, ctx);
    const int i = rs.uniform(1, ctx->size()), j = rs.uniform(1, ctx->size());
    if (!partial_eta(i, partial_eta(i, a)).is_zero()) return show({{"a", a}});
    if (partial_eta(i, partial_eta(j, a)) != -partial_eta(j, partial_eta(i, a))) return show({{"a", a}});
    if (partial_q(i, partial_q(j, a)) != partial_q(j, partial_q(i, a))) return show({{"a", a}});
    if (partial_q(i, partial_eta(j, a)) != partial_eta(j, partial_q(i, a))) return show({{"a", a}});
    return std::nullopt;
  });
  run.family("operators.square-zero", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement a = random_element(rs, ctx);
    if (!apply_delta(apply_delta(a)).is_zero()) return "Delta^2: " + show({{"a", a}});
    if (!Q(Q(a)).is_zero()) return "Q^2: " + show({{"a", a}});
    if (!K(K(a)).is_zero()) return "K^2: " + show({{"a", a}});
    if (!(apply_delta(Q(a)) + Q(apply_delta(a))).is_zero()) return "Delta Q + Q Delta: " + show({{"a", a}});
    return std::nullopt;
  });
  run.family("operators.q-derivation", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement a = graded(rs, ctx), b = graded(rs, ctx);
    SuperElement rhs = multiply(Q(a), b);
    SuperElement tail = multiply(a, Q(b));
    rhs = parity(a) ? rhs - tail : rhs + tail;
    if (Q(multiply(a, b)) != rhs) return show({{"a", a}, {"b", b}});
    return std::nullopt;
  });
  run.family("operators.bracket-symmetry", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement a = graded(rs, ctx), b = graded(rs, ctx);
    SuperElement ba = ell2(K, b, a);
    if (parity(a) * parity(b)) ba = -ba;
    if (ell2(K, a, b) != ba) return show({{"a", a}, {"b", b}});
    return std::nullopt;
  });
  auto sgn = [](int e, const SuperElement& x) { return (e % 2) ? -x : x; };
  run.family("operators.jacobi", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement a = graded(rs, ctx), b = graded(rs, ctx), c = graded(rs, ctx);
    const int pa = parity(a), pb = parity(b);
    const SuperElement lhs = ell2(K, a, ell2(K, b, c));
    const SuperElement rhs = sgn(pa + 1, ell2(K, ell2(K, a, b), c)) + sgn((pa + 1) * (pb + 1), ell2(K, b, ell2(K, a, c)));
    if (lhs != rhs) return show({{"a", a}, {"b", b}, {"c", c}});
    return std::nullopt;
  });
  run.family("operators.poisson", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement a = graded(rs, ctx), b = graded(rs, ctx), c = graded(rs, ctx);
    const int pa = parity(a), pb = parity(b);
    const SuperElement rhs = multiply(ell2(K, a, b), c) + sgn((pa + 1) * pb, multiply(b, ell2(K, a, c)));
    if (ell2(K, a, multiply(b, c)) != rhs) return show({{"a", a}, {"b", b}, {"c", c}});
    return std::nullopt;
  });
  run.family("operators.ell3-vanishes", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement a = graded(rs, ctx), b = graded(rs, ctx), c = graded(rs, ctx);
    if (!ell_n(K, {a, b, c}).is_zero()) return show({{"a", a}, {"b", b}, {"c", c}});
    return std::nullopt;
  });

  auto soundness = [&](const SuperElement& f, const ReductionResult& r) {
    return P.combination(r.coefficients) + K(r.certificate) == f;
  };
  run.family("cohomology.certificate-soundness", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement f = random_homogeneous(rs, ctx, cg, rs.uniform(0, top + 1), 0);
    if (!soundness(f, P.reduce(f))) return show({{"f", f}});
    return std::nullopt;
  });
  run.family("cohomology.kernel", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement xi = random_homogeneous(rs, ctx, cg, rs.uniform(0, top + 1), -1);
    const SuperElement kx = K(xi).degree_part(0);
    for (const auto& c : P.reduce(kx).coefficients)
      if (!c.is_zero()) return show({{"xi", xi}});
    return std::nullopt;
  });
  run.family("cohomology.linearity", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement f = random_homogeneous(rs, ctx, cg, rs.uniform(0, top), 0);
    const SuperElement g = random_homogeneous(rs, ctx, cg, rs.uniform(0, top), 0);
    const Rational a = rs.rational(), b = rs.rational();
    const auto rf = P.reduce(f).coefficients, rg = P.reduce(g).coefficients, rs2 = P.reduce(f * a + g * b).coefficients;
    for (std::size_t i = 0; i < rf.size(); ++i)
      if (rs2[i] != a * rf[i] + b * rg[i]) return show({{"f", f}, {"g", g}});
    return std::nullopt;
  });
  run.family(
      "cohomology.idempotence",
      [&](RandomSource&) -> std::optional<std::string> {
        for (std::size_t rho = 0; rho < P.dimension(); ++rho) {
          const auto r = P.reduce(P.basis_element(rho));
          if (!r.certificate.is_zero()) return show({{"e", P.basis_element(rho)}});
          for (std::size_t i = 0; i < r.coefficients.size(); ++i)
            if (r.coefficients[i] != Rational(i == rho ? 1 : 0)) return show({{"e", P.basis_element(rho)}});
        }
        return std::nullopt;
      },
      1);
  run.family("cohomology.charge-concentration", [&](RandomSource& rs) -> std::optional<std::string> {
    int lambda = cg + rs.uniform(1, 3) * (rs.coin() ? 1 : -1);
    const SuperElement f = random_homogeneous(rs, ctx, lambda, rs.uniform(0, 3), 0);
    const ChargeWitness w = charge_witness_check(D, f);
    if (f.is_zero()) return std::nullopt;
    if (!w.holds || !w.witness || K(*w.witness) != f) return show({{"f", f}});
    return std::nullopt;
  });
  run.family("polyparse.round-trip", [&](RandomSource& rs) -> std::optional<std::string> {
    const SuperElement a = random_element(rs, ctx);
    const std::string text = render(a);
    if (parse(text, ctx) != a) return "text = " + text;
    return std::nullopt;
  });

  if (def) {
    run.family(
        "deformation.maurer-cartan",
        [&](RandomSource&) -> std::optional<std::string> {
          const MCResult mc = mc_check(D, def->gamma);
          const SuperElement r = K(def->gamma) + ell2(K, def->gamma, def->gamma) * Rational(mpz_class(1), mpz_class(2));
          if (!mc.holds || !r.is_zero()) return show({{"residual", r}});
          return std::nullopt;
        },
        1);
    run.family("deformation.k-gamma", [&](RandomSource& rs) -> std::optional<std::string> {
      const SuperElement l = random_element(rs, ctx);
      if (K(l) + ell2(K, def->gamma, l) != apply_k(def->deformed, l)) return show({{"lambda", l}});
      return std::nullopt;
    });
  }
  return run.take();
}

}  // namespace dwork
