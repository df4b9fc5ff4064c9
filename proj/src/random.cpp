#include "dwork/random.hpp"

#include "dwork/errors.hpp"

namespace dwork {

Rational RandomSource::rational() {
  int p = uniform(-9, 8);
  if (p >= 0) ++p;
  return Rational(mpz_class(p), mpz_class(uniform(1, 4)));
}

SuperElement random_element(RandomSource& rs, const ContextPtr& ctx, const RandomElementOptions& opt) {
  const int N = ctx->size();
  if (opt.degree && (*opt.degree > 0 || -*opt.degree > N)) throw InputError("no elements of the requested degree");
  TermAccumulator acc(ctx);
  for (int t = 0; t < opt.terms; ++t) {
    SuperMonomial m(static_cast<std::size_t>(N));
    for (auto& e : m.exponents) e = rs.uniform(0, 3) == 0 ? rs.uniform(1, opt.max_exponent) : 0;
    const int want = opt.degree ? -*opt.degree : rs.uniform(0, std::min(opt.max_eta, N));
    while (m.eta_count() < want) m.eta |= std::uint64_t{1} << rs.uniform(0, N - 1);
    acc.add(std::move(m), rs.rational());
  }
  return std::move(acc).finish();
}

SuperElement random_homogeneous(RandomSource& rs, const ContextPtr& ctx, int charge_value, int weight_value,
                                int degree, int terms) {
  const auto piece = enumerate_piece(*ctx, charge_value, weight_value, degree);
  TermAccumulator acc(ctx);
  if (piece.monomials.empty()) return std::move(acc).finish();
  const int n = static_cast<int>(piece.monomials.size());
  for (int t = 0; t < terms; ++t) acc.add(piece.monomials[static_cast<std::size_t>(rs.uniform(0, n - 1))], rs.rational());
  return std::move(acc).finish();
}

}  // namespace dwork
