// Copyright 2026 The mirrorcert Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MIRRORCERT_EXACT_LINALG_HPP
#define MIRRORCERT_EXACT_LINALG_HPP

// Small dense linear algebra over the rationals.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "mirrorcert/rational.hpp"

namespace mirrorcert {

using RationalMatrix = std::vector<std::vector<Rational>>;

/// Some solution of M x = rhs (free variables set to zero), or nullopt if
/// the system is inconsistent.
inline std::optional<std::vector<Rational>> solve_consistent(RationalMatrix m,
                                                             std::vector<Rational> rhs) {
  const std::size_t rows = m.size();
  const std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && m[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[p], m[r]);
    std::swap(rhs[p], rhs[r]);
    const Rational inv = 1 / m[r][c];
    for (std::size_t k = c; k < cols; ++k) m[r][k] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t k = c; k < cols; ++k)
        if (m[r][k] != 0) m[i][k] -= f * m[r][k];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return std::nullopt;
  std::vector<Rational> x(cols, Rational(0));
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = rhs[i];
  return x;
}

/// G = sum_k d_k l_k l_k^T with d_k > 0.
struct LdlFactors {
  std::vector<Rational> d;
  RationalMatrix l;  // one column vector per k
};

/// Symmetric elimination with diagonal pivoting. Returns nullopt unless the
/// matrix is positive semidefinite: a negative diagonal, or a zero diagonal
/// with a nonzero entry in its row, rejects.
inline std::optional<LdlFactors> ldl_psd(RationalMatrix g) {
  const std::size_t n = g.size();
  LdlFactors out;
  std::vector<bool> done(n, false);
  for (std::size_t step = 0; step < n; ++step) {
    // Largest remaining diagonal entry.
    std::optional<std::size_t> p;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      if (g[i][i] < 0) return std::nullopt;
      if (!p || g[i][i] > g[*p][*p]) p = i;
    }
    if (!p) break;
    if (g[*p][*p] == 0) {
      // Remaining block must vanish entirely.
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && g[i][j] != 0) return std::nullopt;
      break;
    }
    const std::size_t k = *p;
    const Rational d = g[k][k];
    std::vector<Rational> col(n, Rational(0));
    for (std::size_t i = 0; i < n; ++i)
      if (!done[i]) col[i] = g[i][k] / d;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i] || col[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (!done[j] && col[j] != 0) g[i][j] -= d * col[i] * col[j];
    }
    done[k] = true;
    out.d.push_back(d);
    out.l.push_back(std::move(col));
  }
  return out;
}

}  // namespace mirrorcert

#endif  // MIRRORCERT_EXACT_LINALG_HPP
