#pragma once

#include "dwork/errors.hpp"
#include "dwork/rational.hpp"

#include <algorithm>
#include <vector>

namespace dwork {

// x[0] holds x_1. T needs +, T*T and T*Rational.

template <class T>
T bell_complete(int n, const std::vector<T>& x, const T& one) {
  if (n < 0) throw InputError("bell_complete: negative index");
  if (static_cast<int>(x.size()) < n) throw InputError("bell_complete: too few arguments");
  std::vector<T> B;
  B.reserve(static_cast<std::size_t>(n) + 1);
  B.push_back(one);
  for (int m = 0; m < n; ++m) {
    T next = one * Rational(0);
    for (int i = 0; i <= m; ++i) next = next + B[static_cast<std::size_t>(m - i)] * x[static_cast<std::size_t>(i)] * binomial(m, i);
    B.push_back(std::move(next));
  }
  return B[static_cast<std::size_t>(n)];
}

template <class T>
T bell_partial(int n, int j, const std::vector<T>& x, const T& one) {
  if (j < 0 || n < 0) throw InputError("bell_partial: negative index");
  if (j > n) throw InputError("bell_partial: j exceeds n");
  if (static_cast<int>(x.size()) < n - j + 1 && n > 0) throw InputError("bell_partial: too few arguments");
  const T zero = one * Rational(0);
  // table[m][k] = B_{m,k}
  std::vector<std::vector<T>> table(static_cast<std::size_t>(n) + 1,
                                    std::vector<T>(static_cast<std::size_t>(j) + 1, zero));
  table[0][0] = one;
  for (int m = 1; m <= n; ++m)
    for (int k = 1; k <= std::min(m, j); ++k) {
      if (m - k > n - j) continue;  // never feeds B_{n,j}
      T acc = zero;
      for (int i = 1; i <= m - k + 1; ++i)
        acc = acc + table[static_cast<std::size_t>(m - i)][static_cast<std::size_t>(k - 1)] *
                        x[static_cast<std::size_t>(i - 1)] * binomial(m - 1, i - 1);
      table[static_cast<std::size_t>(m)][static_cast<std::size_t>(k)] = std::move(acc);
    }
  return table[static_cast<std::size_t>(n)][static_cast<std::size_t>(j)];
}

}  // namespace dwork
