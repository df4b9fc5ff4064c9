#include "oracles.hpp"

#include <algorithm>
#include <bit>

namespace oracle {

int sort_sign(std::vector<int> f) {
  int sign = 1;
  for (std::size_t pass = 0; pass < f.size(); ++pass)
    for (std::size_t i = 0; i + 1 < f.size(); ++i) {
      if (f[i] == f[i + 1]) return 0;
      if (f[i] > f[i + 1]) {
        std::swap(f[i], f[i + 1]);
        sign = -sign;
      }
    }
  for (std::size_t i = 0; i + 1 < f.size(); ++i)
    if (f[i] == f[i + 1]) return 0;
  return sign;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) {
      Exponents e(ea.size());
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out[e] += ca * cb;
    }
  for (auto it = out.begin(); it != out.end();) it = it->second == 0 ? out.erase(it) : std::next(it);
  return out;
}

Poly poly_diff(const Poly& a, int var) {
  Poly out;
  for (const auto& [e, c] : a) {
    if (e[static_cast<std::size_t>(var)] == 0) continue;
    Exponents d = e;
    --d[static_cast<std::size_t>(var)];
    out[d] += c * e[static_cast<std::size_t>(var)];
  }
  return out;
}

Poly monomial(const Exponents& e, const mpq_class& c) { return Poly{{e, c}}; }

std::vector<Exponents> monomials_of_degree(int vars, int deg) {
  std::vector<Exponents> out;
  if (deg < 0) return out;
  Exponents e(static_cast<std::size_t>(vars), 0);
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == vars - 1) {
      e[static_cast<std::size_t>(i)] = left;
      out.push_back(e);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      e[static_cast<std::size_t>(i)] = v;
      self(self, i + 1, left - v);
    }
  };
  if (vars == 0) {
    if (deg == 0) out.push_back(e);
    return out;
  }
  rec(rec, 0, deg);
  return out;
}

int rank(std::vector<std::vector<mpq_class>> m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = r + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const mpq_class f = m[i][c] / m[r][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

namespace {

int quotient_dim(const std::vector<Exponents>& basis, const std::vector<Poly>& gens) {
  std::map<Exponents, std::size_t> col;
  for (std::size_t i = 0; i < basis.size(); ++i) col[basis[i]] = i;
  std::vector<std::vector<mpq_class>> rows;
  for (const auto& g : gens) {
    std::vector<mpq_class> row(basis.size(), 0);
    for (const auto& [e, c] : g) row.at(col.at(e)) = c;
    rows.push_back(std::move(row));
  }
  return static_cast<int>(basis.size()) - rank(std::move(rows));
}

}  // namespace

int jacobian_ring_dim(const Poly& G, int vars, int D) {
  if (D < 0) return 0;
  const auto basis = monomials_of_degree(vars, D);
  int d = 0;
  for (const auto& [e, c] : G) {
    d = 0;
    for (int v : e) d += v;
  }
  std::vector<Poly> gens;
  for (int i = 0; i < vars; ++i) {
    const Poly dg = poly_diff(G, i);
    for (const auto& a : monomials_of_degree(vars, D - (d - 1))) gens.push_back(poly_mul(monomial(a), dg));
  }
  return quotient_dim(basis, gens);
}

int bigraded_jacobian_dim(const std::vector<Poly>& G, int xvars, int w, int xdeg) {
  const int k = static_cast<int>(G.size());
  const int vars = k + xvars;
  auto lift = [&](const Poly& p, int shift) {
    Poly out;
    for (const auto& [e, c] : p) {
      Exponents f(static_cast<std::size_t>(vars), 0);
      for (std::size_t i = 0; i < e.size(); ++i) f[i + static_cast<std::size_t>(shift)] = e[i];
      out[f] = c;
    }
    return out;
  };
  auto join = [&](const Exponents& y, const Exponents& x) {
    Exponents e = y;
    e.insert(e.end(), x.begin(), x.end());
    return e;
  };
  std::vector<Exponents> basis;
  for (const auto& y : monomials_of_degree(k, w))
    for (const auto& x : monomials_of_degree(xvars, xdeg)) basis.push_back(join(y, x));
  if (basis.empty()) return 0;

  Poly S;
  std::vector<int> deg(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    Exponents yi(static_cast<std::size_t>(vars), 0);
    yi[static_cast<std::size_t>(i)] = 1;
    for (const auto& [e, c] : G[static_cast<std::size_t>(i)]) {
      deg[static_cast<std::size_t>(i)] = 0;
      for (int v : e) deg[static_cast<std::size_t>(i)] += v;
    }
    for (const auto& [e, c] : poly_mul(monomial(yi), lift(G[static_cast<std::size_t>(i)], k))) S[e] += c;
  }
  std::vector<Poly> gens;
  for (int v = 0; v < vars; ++v) {
    const Poly g = poly_diff(S, v);
    if (g.empty()) continue;
    const auto& any = g.begin()->first;
    int gy = 0, gx = 0;
    for (int i = 0; i < k; ++i) gy += any[static_cast<std::size_t>(i)];
    for (int i = k; i < vars; ++i) gx += any[static_cast<std::size_t>(i)];
    for (const auto& y : monomials_of_degree(k, w - gy))
      for (const auto& x : monomials_of_degree(xvars, xdeg - gx)) gens.push_back(poly_mul(monomial(join(y, x)), g));
  }
  return quotient_dim(basis, gens);
}

std::set<BruteMonomial> brute_piece(int n, int k, const std::vector<int>& d, int charge, int weight, int eta_degree,
                                    int bound) {
  const int N = n + k + 1;
  std::set<BruteMonomial> out;
  Exponents q(static_cast<std::size_t>(N), 0);
  for (;;) {
    for (std::uint64_t eta = 0; eta < (std::uint64_t{1} << N); ++eta) {
      if (-std::popcount(eta) != eta_degree) continue;
      int ch = 0, wt = 0;
      for (int mu = 0; mu < N; ++mu) {
        const bool y = mu < k;
        const int cq = y ? -d[static_cast<std::size_t>(mu)] : 1;
        const int wq = y ? 1 : 0;
        ch += cq * q[static_cast<std::size_t>(mu)];
        wt += wq * q[static_cast<std::size_t>(mu)];
        if ((eta >> mu) & 1U) {
          ch -= cq;
          wt += 1 - wq;
        }
      }
      if (ch == charge && wt == weight) out.insert({q, eta});
    }
    int i = 0;
    while (i < N && q[static_cast<std::size_t>(i)] == bound) q[static_cast<std::size_t>(i++)] = 0;
    if (i == N) break;
    ++q[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<mpq_class> exp_generating(const std::vector<mpq_class>& x, int n) {
  // f = sum x_m t^m / m!; exp(f) = sum_j f^j / j!, truncated at t^n.
  std::vector<mpq_class> f(static_cast<std::size_t>(n) + 1, 0);
  mpz_class fact = 1;
  for (int m = 1; m <= n; ++m) {
    fact *= m;
    f[static_cast<std::size_t>(m)] = x[static_cast<std::size_t>(m - 1)] / mpq_class(fact);
  }
  std::vector<mpq_class> out(static_cast<std::size_t>(n) + 1, 0);
  std::vector<mpq_class> power(static_cast<std::size_t>(n) + 1, 0);
  power[0] = 1;
  mpz_class jfact = 1;
  for (int j = 0; j <= n; ++j) {
    if (j > 0) {
      jfact *= j;
      std::vector<mpq_class> next(static_cast<std::size_t>(n) + 1, 0);
      for (int a = 0; a <= n; ++a)
        for (int b = 1; a + b <= n; ++b)
          next[static_cast<std::size_t>(a + b)] += power[static_cast<std::size_t>(a)] * f[static_cast<std::size_t>(b)];
      power = std::move(next);
    }
    for (int m = 0; m <= n; ++m) out[static_cast<std::size_t>(m)] += power[static_cast<std::size_t>(m)] / mpq_class(jfact);
  }
  return out;
}

}  // namespace oracle
