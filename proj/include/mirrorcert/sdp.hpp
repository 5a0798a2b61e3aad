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

#ifndef MIRRORCERT_SDP_HPP
#define MIRRORCERT_SDP_HPP

// Feasibility of  { G symmetric PSD : <A_k, G> = b_k }  by alternating
// projections, run side by side on the primal set and on the Farkas
// alternative  { y : sum y_k A_k PSD, b.y = -1 }.
//
// Matrices are handled in svec coordinates (off-diagonal entries scaled by
// sqrt 2) so that the Frobenius projection is a Euclidean one.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "mirrorcert/errors.hpp"

namespace mirrorcert {

/// Constraints are rows over the upper-triangle entries G(i,j), i <= j, in
/// the order given by `upper_index`. A coefficient on G(i,j) with i < j
/// multiplies one entry of the symmetric pair, so a constraint that sums
/// G(i,j) + G(j,i) carries coefficient 2.
struct SdpProblem {
  std::size_t dim = 0;
  Eigen::MatrixXd a;  // m x dim(dim+1)/2
  Eigen::VectorXd b;  // m
};

inline std::size_t upper_count(std::size_t n) { return n * (n + 1) / 2; }

/// Row-major index of (i, j), i <= j, in the packed upper triangle.
inline std::size_t upper_index(std::size_t n, std::size_t i, std::size_t j) {
  if (i > j) std::swap(i, j);
  return i * n - i * (i - 1) / 2 + (j - i);
}

enum class SdpStatus { kFeasible, kInfeasibleNumerically, kInconclusive };

inline const char* to_string(SdpStatus s) {
  switch (s) {
    case SdpStatus::kFeasible: return "feasible";
    case SdpStatus::kInfeasibleNumerically: return "infeasible-numerically";
    case SdpStatus::kInconclusive: return "inconclusive";
  }
  return "?";
}

struct SdpOptions {
  double tol = 1e-8;
  std::size_t iteration_cap = 100000;
  std::size_t max_dim = 2000;
};

struct SdpResult {
  SdpStatus status = SdpStatus::kInconclusive;
  Eigen::MatrixXd gram;        // when feasible
  Eigen::VectorXd dual_ray;    // when infeasible: sum y_k A_k PSD and b.y < 0
  double residual = 0;         // max affine residual of the returned point
  double min_eigenvalue = 0;   // of gram, or of sum y_k A_k
  std::size_t iterations = 0;
};

namespace detail {

inline Eigen::VectorXd svec(const Eigen::MatrixXd& m) {
  const auto n = static_cast<std::size_t>(m.rows());
  Eigen::VectorXd v(static_cast<Eigen::Index>(upper_count(n)));
  const double r2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      v(static_cast<Eigen::Index>(upper_index(n, i, j))) =
          (i == j ? 1.0 : r2) * m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return v;
}

inline Eigen::MatrixXd smat(const Eigen::VectorXd& v, std::size_t n) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  const double r2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double x = v(static_cast<Eigen::Index>(upper_index(n, i, j))) / (i == j ? 1.0 : r2);
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = x;
      m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = x;
    }
  return m;
}

/// Nearest PSD matrix in Frobenius norm; also reports the smallest
/// eigenvalue of the input.
inline Eigen::MatrixXd project_psd(const Eigen::MatrixXd& m, double& min_eig) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  const Eigen::VectorXd& d = es.eigenvalues();
  min_eig = d.size() ? d.minCoeff() : 0.0;
  const Eigen::VectorXd clipped = d.cwiseMax(0.0);
  return es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
}

inline double min_eigenvalue(const Eigen::MatrixXd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace detail

/// Contract: `kFeasible` returns a symmetric G with min eigenvalue >= -tol
/// and every constraint residual <= tol; `kInfeasibleNumerically` returns y
/// with min eigenvalue of sum y_k A_k >= -tol and b.y = -1 up to tol;
/// `kInconclusive` means the iteration cap was hit.
inline SdpResult sdp_feasibility(const SdpProblem& prob, const SdpOptions& opts = {}) {
  using Eigen::Index;
  const std::size_t n = prob.dim;
  if (n > opts.max_dim)
    throw ResourceLimitError("SDP dimension " + std::to_string(n) + " exceeds cap " +
                             std::to_string(opts.max_dim));
  const auto nv = static_cast<Index>(upper_count(n));
  const Index m = prob.a.rows();
  if (prob.a.cols() != nv && m > 0) throw std::invalid_argument("constraint width mismatch");

  // Constraint matrix in svec coordinates.
  Eigen::MatrixXd as(m, nv);
  const double r2 = std::sqrt(2.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const auto k = static_cast<Index>(upper_index(n, i, j));
      if (m > 0) as.col(k) = prob.a.col(k) / (i == j ? 1.0 : r2);
    }

  SdpResult res;
  Eigen::MatrixXd pinv = Eigen::MatrixXd::Zero(nv, m);
  Eigen::MatrixXd u_r, v_r;
  Eigen::VectorXd s_r;
  if (m > 0) {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(as, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sv = svd.singularValues();
    const double cutoff = std::max(1e-12, 1e-12 * (sv.size() ? sv(0) : 0.0));
    Index rank = 0;
    while (rank < sv.size() && sv(rank) > cutoff) ++rank;
    u_r = svd.matrixU().leftCols(rank);
    v_r = svd.matrixV().leftCols(rank);
    s_r = sv.head(rank);
    pinv = v_r * s_r.cwiseInverse().asDiagonal() * u_r.transpose();

    // Inconsistent linear system: y = -(b - A A^+ b) is a Farkas ray with
    // sum y_k A_k = 0.
    const Eigen::VectorXd off = prob.b - u_r * (u_r.transpose() * prob.b);
    if (off.norm() > opts.tol * std::max(1.0, prob.b.norm())) {
      res.status = SdpStatus::kInfeasibleNumerically;
      res.dual_ray = -off / off.squaredNorm();
      res.residual = 0;
      res.min_eigenvalue = 0;
      return res;
    }
  }

  auto affine_project = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    if (m == 0) return v;
    return v - pinv * (as * v - prob.b);
  };
  auto residual_of = [&](const Eigen::VectorXd& v) {
    return m == 0 ? 0.0 : (as * v - prob.b).cwiseAbs().maxCoeff();
  };

  // Dual set: s = A^T y in range(V_r), with b.y = -1, i.e. c.z = -1 for
  // s = V_r z and c = S_r^{-1} U_r^T b. Empty when b = 0.
  Eigen::VectorXd c_dual;
  bool dual_possible = false;
  if (m > 0 && v_r.cols() > 0) {
    c_dual = s_r.cwiseInverse().asDiagonal() * (u_r.transpose() * prob.b);
    dual_possible = c_dual.squaredNorm() > 1e-24;
  }
  auto dual_project = [&](const Eigen::VectorXd& s) -> Eigen::VectorXd {
    Eigen::VectorXd z = v_r.transpose() * s;
    z -= (c_dual.dot(z) + 1.0) / c_dual.squaredNorm() * c_dual;
    return v_r * z;
  };

  Eigen::VectorXd primal = Eigen::VectorXd::Zero(nv);
  Eigen::VectorXd dual = Eigen::VectorXd::Zero(nv);
  for (std::size_t it = 0; it < opts.iteration_cap; ++it) {
    res.iterations = it + 1;

    const Eigen::VectorXd p_aff = affine_project(primal);
    double min_eig = 0;
    const Eigen::MatrixXd p_psd = detail::project_psd(detail::smat(p_aff, n), min_eig);
    if (min_eig >= -opts.tol && residual_of(p_aff) <= opts.tol) {
      res.status = SdpStatus::kFeasible;
      res.gram = detail::smat(p_aff, n);
      res.residual = residual_of(p_aff);
      res.min_eigenvalue = min_eig;
      return res;
    }
    primal = detail::svec(p_psd);

    if (dual_possible) {
      const Eigen::VectorXd d_aff = dual_project(dual);
      double d_min = 0;
      const Eigen::MatrixXd d_psd = detail::project_psd(detail::smat(d_aff, n), d_min);
      if (d_min >= -opts.tol) {
        // Least-norm y with A_s^T y = s.
        const Eigen::VectorXd y = pinv.transpose() * d_aff;
        res.status = SdpStatus::kInfeasibleNumerically;
        res.dual_ray = y;
        res.residual = std::abs(prob.b.dot(y) + 1.0);
        res.min_eigenvalue = d_min;
        return res;
      }
      dual = detail::svec(d_psd);
    }
  }
  res.status = SdpStatus::kInconclusive;
  return res;
}

}  // namespace mirrorcert

#endif  // MIRRORCERT_SDP_HPP
