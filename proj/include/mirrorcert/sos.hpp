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

#ifndef MIRRORCERT_SOS_HPP
#define MIRRORCERT_SOS_HPP

// Gram-matrix search for  1 + W^* G W  in the ideal, with G PSD, followed by
// exact rounding to a rational sum of weighted squares.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mirrorcert/errors.hpp"
#include "mirrorcert/exact_linalg.hpp"
#include "mirrorcert/free_algebra.hpp"
#include "mirrorcert/groebner.hpp"
#include "mirrorcert/sdp.hpp"

namespace mirrorcert {

inline constexpr std::size_t kDefaultBasisCap = 2000;

/// Irreducible words of degree <= d, deglex ascending, starting with 1.
struct MonomialBasis {
  std::vector<Word> words;
  std::size_t degree = 0;

  std::size_t size() const { return words.size(); }
};

/// All words over the system's alphabet of degree <= d that no rule lead
/// divides.
inline MonomialBasis enumerate_basis(const RewriteSystem& rs, std::size_t d,
                                     std::size_t cap = kDefaultBasisCap) {
  if (rs.contains_one())
    throw std::invalid_argument("ideal contains 1; no monomial basis is needed");
  MonomialBasis basis;
  basis.degree = d;
  basis.words.push_back({});
  std::vector<Word> frontier{Word{}};
  for (std::size_t deg = 1; deg <= d; ++deg) {
    std::vector<Word> next;
    for (const auto& w : frontier)
      for (const auto& s : rs.alphabet()) {
        Word ext = w;
        ext.push_back(s);
        // Prefixes are irreducible, so only factors ending at the new
        // symbol can match; checking the whole word is equivalent.
        if (!rs.is_irreducible(ext)) continue;
        next.push_back(std::move(ext));
        if (basis.words.size() + next.size() > cap)
          throw ResourceLimitError("monomial basis at degree " + std::to_string(d) +
                                   " exceeds cap " + std::to_string(cap));
      }
    std::sort(next.begin(), next.end(), DeglexLess{});
    basis.words.insert(basis.words.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return basis;
}

/// sum_v coeff_v * G(v) = rhs, where v indexes the packed upper triangle.
struct GramConstraint {
  Word monomial;
  std::vector<std::pair<std::size_t, Rational>> coeffs;
  Rational rhs;
};

/// One constraint per irreducible word m: the coefficient of m in
/// NF(1 + W^* G W) vanishes. Sorted by m, deglex ascending.
struct GramSystem {
  std::size_t dim = 0;
  std::vector<GramConstraint> constraints;
};

/// NF(w_i^* w_j) for all i <= j.
inline std::vector<NCPoly> gram_products(const MonomialBasis& basis, const RewriteSystem& rs) {
  const std::size_t n = basis.size();
  std::vector<NCPoly> out(upper_count(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      out[upper_index(n, i, j)] =
          rs.normal_form(NCPoly::monomial(concat(star(basis.words[i]), basis.words[j])));
  return out;
}

inline GramSystem build_linear_system(const MonomialBasis& basis, const RewriteSystem& rs) {
  if (rs.contains_one()) throw std::invalid_argument("ideal contains 1; no SOS system needed");
  const std::size_t n = basis.size();
  const auto products = gram_products(basis, rs);
  std::map<Word, std::map<std::size_t, Rational>, DeglexLess> rows;
  rows[Word{}];  // the constant always yields an equation
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const std::size_t v = upper_index(n, i, j);
      // G(i,j) w_i^* w_j + G(j,i) w_j^* w_i; the second product is the
      // adjoint of the first and reduces to the adjoint normal form only
      // for star-closed ideals, so both are computed.
      NCPoly both = products[v];
      if (i != j)
        both += rs.normal_form(NCPoly::monomial(concat(star(basis.words[j]), basis.words[i])));
      for (const auto& [w, c] : both.terms()) {
        auto& row = rows[w];
        row[v] += c;
        if (row[v] == 0) row.erase(v);
      }
    }
  GramSystem sys;
  sys.dim = n;
  for (auto& [w, row] : rows) {
    GramConstraint c;
    c.monomial = w;
    c.rhs = w.empty() ? Rational(-1) : Rational(0);
    for (auto& [v, k] : row) c.coeffs.emplace_back(v, k);
    if (c.coeffs.empty() && c.rhs == 0) continue;
    sys.constraints.push_back(std::move(c));
  }
  return sys;
}

inline SdpProblem to_sdp(const GramSystem& sys) {
  SdpProblem p;
  p.dim = sys.dim;
  const auto m = static_cast<Eigen::Index>(sys.constraints.size());
  p.a = Eigen::MatrixXd::Zero(m, static_cast<Eigen::Index>(upper_count(sys.dim)));
  p.b = Eigen::VectorXd::Zero(m);
  for (Eigen::Index r = 0; r < m; ++r) {
    const auto& c = sys.constraints[static_cast<std::size_t>(r)];
    for (const auto& [v, k] : c.coeffs) p.a(r, static_cast<Eigen::Index>(v)) = k.get_d();
    p.b(r) = c.rhs.get_d();
  }
  return p;
}

/// weight * poly^* poly with weight >= 0.
struct SosTerm {
  Rational weight;
  NCPoly poly;
};

/// Exact certificate that  1 + sum weight_k s_k^* s_k  lies in the ideal.
struct SosWitness {
  RationalMatrix gram;
  std::vector<SosTerm> terms;
  /// 1 + sum weight_k s_k^* s_k  =  trace (over the system's generators).
  /// Empty when the system was completed without traces.
  IdealTrace ideal;
  long denominator = 1;
};

/// 1 + sum weight_k s_k^* s_k.
inline NCPoly sos_polynomial(const std::vector<SosTerm>& terms) {
  NCPoly p = NCPoly::one();
  for (const auto& t : terms) p += t.weight * (poly_star(t.poly) * t.poly);
  return p;
}

namespace detail {

inline Rational round_to_denominator(double x, long n) {
  Rational q(static_cast<long>(std::llround(x * static_cast<double>(n))), static_cast<unsigned long>(n));
  q.canonicalize();
  return q;
}

}  // namespace detail

/// One rounding attempt: shift the spectrum up by `margin` past the most
/// negative eigenvalue, round entries to multiples of 1/N, correct them
/// exactly onto the affine constraint set, then demand an exact zero
/// residual and an exact PSD factorization. Returns nullopt on failure.
inline std::optional<SosWitness> round_and_verify(const Eigen::MatrixXd& g, const MonomialBasis& basis,
                                                  const RewriteSystem& rs, long denominator_bound,
                                                  double margin = 0.0,
                                                  const GramSystem* prebuilt = nullptr) {
  const std::size_t n = basis.size();
  if (static_cast<std::size_t>(g.rows()) != n || static_cast<std::size_t>(g.cols()) != n)
    throw std::invalid_argument("Gram matrix does not match the basis size");
  if (denominator_bound < 1) throw std::invalid_argument("denominator bound must be positive");

  Eigen::MatrixXd shifted = 0.5 * (g + g.transpose());
  if (margin > 0) {
    const double lmin = detail::min_eigenvalue(shifted);
    shifted += (std::max(0.0, -lmin) + margin) * Eigen::MatrixXd::Identity(g.rows(), g.cols());
  }

  const GramSystem sys = prebuilt ? *prebuilt : build_linear_system(basis, rs);
  const std::size_t nv = upper_count(n);
  std::vector<Rational> x(nv);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      x[upper_index(n, i, j)] = detail::round_to_denominator(
          shifted(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)), denominator_bound);

  // Least-norm exact correction: x -= A^T y with (A A^T) y = A x - b.
  const std::size_t m = sys.constraints.size();
  std::vector<std::vector<std::pair<std::size_t, Rational>>> rows(m);
  std::vector<Rational> resid(m);
  bool exact = true;
  for (std::size_t r = 0; r < m; ++r) {
    rows[r] = sys.constraints[r].coeffs;
    Rational acc = -sys.constraints[r].rhs;
    for (const auto& [v, k] : rows[r]) acc += k * x[v];
    resid[r] = acc;
    if (acc != 0) exact = false;
  }
  if (!exact) {
    RationalMatrix aat(m, std::vector<Rational>(m, Rational(0)));
    std::vector<std::map<std::size_t, Rational>> dense(m);
    for (std::size_t r = 0; r < m; ++r)
      for (const auto& [v, k] : rows[r]) dense[r][v] = k;
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t s = r; s < m; ++s) {
        Rational acc = 0;
        for (const auto& [v, k] : dense[r]) {
          auto it = dense[s].find(v);
          if (it != dense[s].end()) acc += k * it->second;
        }
        aat[r][s] = acc;
        aat[s][r] = acc;
      }
    auto y = solve_consistent(std::move(aat), resid);
    if (!y) return std::nullopt;
    for (std::size_t r = 0; r < m; ++r)
      for (const auto& [v, k] : rows[r]) x[v] -= k * (*y)[r];
  }

  SosWitness w;
  w.denominator = denominator_bound;
  w.gram.assign(n, std::vector<Rational>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      w.gram[i][j] = x[upper_index(n, i, j)];
      w.gram[j][i] = x[upper_index(n, i, j)];
    }

  // Exact residual 1 + W^* G W modulo the rules.
  NCPoly gram_poly;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gram_poly.add_term(concat(star(basis.words[i]), basis.words[j]), w.gram[i][j]);
  if (!rs.normal_form(NCPoly::one() + gram_poly).is_zero()) return std::nullopt;

  auto ldl = ldl_psd(w.gram);
  if (!ldl) return std::nullopt;
  for (std::size_t k = 0; k < ldl->d.size(); ++k) {
    NCPoly s;
    for (std::size_t i = 0; i < n; ++i) s.add_term(basis.words[i], ldl->l[k][i]);
    w.terms.push_back(SosTerm{ldl->d[k], std::move(s)});
  }
  const NCPoly total = sos_polynomial(w.terms);
  if (!(total == NCPoly::one() + gram_poly))
    throw std::logic_error("LDL factors do not re-expand to the Gram matrix");

  if (rs.has_trace() && !rs.generators().empty()) {
    auto red = reduce_traced(total, rs);
    if (!red.normal_form.is_zero()) return std::nullopt;
    w.ideal = std::move(red.trace);
  }
  return w;
}

struct RoundingOptions {
  std::vector<long> denominators{1, 2, 4, 8, 16, 32, 64, 128, 256, 1024, 4096, 65536, 1048576};
  std::vector<double> margins{0.0, 1e-6, 1e-4, 1e-2};
};

/// Tries every denominator, smallest first, for each margin.
inline std::optional<SosWitness> round_with_escalation(const Eigen::MatrixXd& g,
                                                       const MonomialBasis& basis,
                                                       const RewriteSystem& rs,
                                                       const RoundingOptions& opts = {}) {
  const GramSystem sys = build_linear_system(basis, rs);
  for (double margin : opts.margins)
    for (long n : opts.denominators)
      if (auto w = round_and_verify(g, basis, rs, n, margin, &sys)) return w;
  return std::nullopt;
}

}  // namespace mirrorcert

#endif  // MIRRORCERT_SOS_HPP
