#pragma once

#include "dwork/cohomology.hpp"
#include "dwork/deformation.hpp"
#include "dwork/parse.hpp"

#include <memory>
#include <string>
#include <vector>

namespace fixtures {

struct Geometry {
  dwork::ContextPtr ctx;
  dwork::DworkData D;
  std::shared_ptr<dwork::QuotientPresentation> P;

  dwork::SuperElement el(const std::string& s) const { return dwork::parse(s, ctx); }
};

inline Geometry make(int n, int k, std::vector<int> d, const std::vector<std::string>& G) {
  auto ctx = dwork::make_context(n, k, std::move(d));
  std::vector<dwork::SuperElement> g;
  for (const auto& s : G) g.push_back(dwork::parse(s, ctx));
  auto D = dwork::dwork_potential(ctx, std::move(g));
  auto P = std::make_shared<dwork::QuotientPresentation>(D);
  return {ctx, D, P};
}

inline const Geometry& cubic() {
  static const Geometry g = make(2, 1, {3}, {"x0^3 + x1^3 + x2^3"});
  return g;
}
inline const Geometry& quadrics() {
  static const Geometry g =
      make(3, 2, {2, 2}, {"x0^2 + x1^2 + x2^2 + x3^2", "x0^2 + 2*x1^2 + 3*x2^2 + 4*x3^2"});
  return g;
}
inline const Geometry& quartic() {
  static const Geometry g = make(3, 1, {4}, {"x0^4 + x1^4 + x2^4 + x3^4"});
  return g;
}
inline const Geometry& cubic_surface() {
  static const Geometry g = make(3, 1, {3}, {"x0^3 + x1^3 + x2^3 + x3^3"});
  return g;
}

inline dwork::Rational q(long p, long r = 1) { return dwork::Rational(mpz_class(p), mpz_class(r)); }

}  // namespace fixtures
