#pragma once

// Independent reference computations. Nothing here calls into the library's
// algebra; polynomials are plain maps from exponent vectors to mpq_class.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <set>
#include <vector>

namespace oracle {

using Exponents = std::vector<int>;
using Poly = std::map<Exponents, mpq_class>;

/// Sign of sorting the odd factors listed in product order by adjacent swaps; 0 on a repeat.
int sort_sign(std::vector<int> factors);

Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_diff(const Poly& a, int var);
Poly monomial(const Exponents& e, const mpq_class& c = 1);

/// All exponent vectors of `vars` variables with total degree `deg`.
std::vector<Exponents> monomials_of_degree(int vars, int deg);

int rank(std::vector<std::vector<mpq_class>> rows);

/// dim of the degree-D piece of Q[x_0..x_n]/(dG/dx_0, ..., dG/dx_n); G in n+1 variables.
int jacobian_ring_dim(const Poly& G, int vars, int D);

/// Bigraded version for k equations: Q[y_1..y_k, x_0..x_n]/Jac(sum y_i G_i) in the
/// piece of y-degree w and x-degree w_x. Each G_i lives in the n+1 x variables.
int bigraded_jacobian_dim(const std::vector<Poly>& G, int xvars, int w, int xdeg);

struct BruteMonomial {
  Exponents q;
  std::uint64_t eta;
  bool operator<(const BruteMonomial& o) const { return q != o.q ? q < o.q : eta < o.eta; }
  bool operator==(const BruteMonomial& o) const { return q == o.q && eta == o.eta; }
};

/// Scans every exponent up to `bound` and every odd subset, filtering by the gradings.
std::set<BruteMonomial> brute_piece(int n, int k, const std::vector<int>& d, int charge, int weight, int eta_degree,
                                    int bound);

/// Coefficients of t^0..t^n in exp(sum_{m>=1} x_m t^m / m!), expanded as a power series.
std::vector<mpq_class> exp_generating(const std::vector<mpq_class>& x, int n);

}  // namespace oracle
