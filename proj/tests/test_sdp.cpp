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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <random>

#include "mirrorcert/sdp.hpp"

namespace mirrorcert {
namespace {

SdpProblem make_problem(std::size_t n, std::vector<std::vector<double>> rows, std::vector<double> rhs) {
  SdpProblem p;
  p.dim = n;
  p.a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(upper_count(n)));
  p.b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(rhs.size()));
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < rows[r].size(); ++c)
      p.a(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
  for (std::size_t r = 0; r < rhs.size(); ++r) p.b(static_cast<Eigen::Index>(r)) = rhs[r];
  return p;
}

// Evaluates the packed constraint rows on a full matrix.
Eigen::VectorXd apply(const SdpProblem& p, const Eigen::MatrixXd& g) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(p.a.rows());
  for (Eigen::Index r = 0; r < p.a.rows(); ++r)
    for (std::size_t i = 0; i < p.dim; ++i)
      for (std::size_t j = i; j < p.dim; ++j)
        out(r) += p.a(r, static_cast<Eigen::Index>(upper_index(p.dim, i, j))) *
                  g(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
  return out;
}

// sum_k y_k A_k as a symmetric matrix with <A_k, G> equal to row k on G.
Eigen::MatrixXd dual_matrix(const SdpProblem& p, const Eigen::VectorXd& y) {
  const auto n = static_cast<Eigen::Index>(p.dim);
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index r = 0; r < p.a.rows(); ++r)
    for (std::size_t i = 0; i < p.dim; ++i)
      for (std::size_t j = i; j < p.dim; ++j) {
        const double c = y(r) * p.a(r, static_cast<Eigen::Index>(upper_index(p.dim, i, j)));
        const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
        if (i == j) {
          s(ii, ii) += c;
        } else {
          s(ii, jj) += c / 2;
          s(jj, ii) += c / 2;
        }
      }
  return s;
}

double min_eig(const Eigen::MatrixXd& m) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
}

void expect_feasible_contract(const SdpProblem& p, const SdpResult& r, double tol) {
  ASSERT_EQ(r.status, SdpStatus::kFeasible);
  ASSERT_EQ(r.gram.rows(), static_cast<Eigen::Index>(p.dim));
  EXPECT_LE((r.gram - r.gram.transpose()).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_GE(min_eig(r.gram), -tol);
  if (p.a.rows() > 0) EXPECT_LE((apply(p, r.gram) - p.b).cwiseAbs().maxCoeff(), tol);
}

void expect_infeasible_contract(const SdpProblem& p, const SdpResult& r, double tol) {
  ASSERT_EQ(r.status, SdpStatus::kInfeasibleNumerically);
  ASSERT_EQ(r.dual_ray.size(), p.a.rows());
  EXPECT_GE(min_eig(dual_matrix(p, r.dual_ray)), -tol);
  EXPECT_LT(p.b.dot(r.dual_ray), 0.0);
}

TEST(Packing, UpperIndexIsRowMajor) {
  EXPECT_EQ(upper_index(3, 0, 0), 0u);
  EXPECT_EQ(upper_index(3, 0, 2), 2u);
  EXPECT_EQ(upper_index(3, 1, 1), 3u);
  EXPECT_EQ(upper_index(3, 2, 1), 4u);
  EXPECT_EQ(upper_index(3, 2, 2), 5u);
  EXPECT_EQ(upper_count(4), 10u);
}

TEST(Packing, SvecPreservesInnerProduct) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> nd;
  Eigen::MatrixXd a(4, 4), b(4, 4);
  for (Eigen::Index i = 0; i < 4; ++i)
    for (Eigen::Index j = 0; j < 4; ++j) a(i, j) = nd(rng), b(i, j) = nd(rng);
  a = (a + a.transpose()).eval();
  b = (b + b.transpose()).eval();
  EXPECT_NEAR(detail::svec(a).dot(detail::svec(b)), (a.array() * b.array()).sum(), 1e-12);
  EXPECT_LT((detail::smat(detail::svec(a), 4) - a).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Feasibility, SquarePlusOneSystem) {
  // G00 - G11 = -1 and 2 G01 = 0.
  const auto p = make_problem(2, {{1, 0, -1}, {0, 2, 0}}, {-1, 0});
  const auto r = sdp_feasibility(p);
  expect_feasible_contract(p, r, 1e-8);
  EXPECT_NEAR(r.gram(1, 1) - r.gram(0, 0), 1.0, 1e-8);
  EXPECT_NEAR(r.gram(0, 1), 0.0, 1e-8);
  EXPECT_LE(r.residual, 1e-8);
}

TEST(Feasibility, NegativeDiagonalIsInfeasible) {
  const auto p = make_problem(1, {{1}}, {-1});
  expect_infeasible_contract(p, sdp_feasibility(p), 1e-8);
}

TEST(Feasibility, NoConstraints) {
  const auto p = make_problem(1, {}, {});
  const auto r = sdp_feasibility(p);
  expect_feasible_contract(p, r, 1e-8);
  EXPECT_NEAR(r.gram(0, 0), 0.0, 1e-12);
}

TEST(Feasibility, InconsistentLinearSystemIsInfeasibleImmediately) {
  const auto p = make_problem(2, {{1, 0, 0}, {1, 0, 0}}, {1, 2});
  const auto r = sdp_feasibility(p);
  ASSERT_EQ(r.status, SdpStatus::kInfeasibleNumerically);
  EXPECT_EQ(r.iterations, 0u);
  EXPECT_LT(p.b.dot(r.dual_ray), 0.0);
  EXPECT_LT(dual_matrix(p, r.dual_ray).cwiseAbs().maxCoeff(), 1e-9);
}

TEST(Feasibility, DimensionCap) {
  SdpOptions o;
  o.max_dim = 2;
  EXPECT_THROW(sdp_feasibility(make_problem(3, {}, {}), o), ResourceLimitError);
}

TEST(Feasibility, RandomPlantedFeasibleProblems) {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 30; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 4);
    Eigen::MatrixXd f(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < f.rows(); ++i)
      for (Eigen::Index j = 0; j < f.cols(); ++j) f(i, j) = nd(rng);
    const Eigen::MatrixXd g0 = f * f.transpose() + 0.5 * Eigen::MatrixXd::Identity(f.rows(), f.cols());
    const std::size_t m = 1 + upper_count(n) / 2;
    SdpProblem p;
    p.dim = n;
    p.a.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(upper_count(n)));
    for (Eigen::Index i = 0; i < p.a.rows(); ++i)
      for (Eigen::Index j = 0; j < p.a.cols(); ++j) p.a(i, j) = nd(rng);
    p.b = apply(p, g0);
    expect_feasible_contract(p, sdp_feasibility(p), 1e-8);
  }
}

TEST(Feasibility, RandomInfeasibleProblemsCarryRays) {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> nd;
  for (int t = 0; t < 20; ++t) {
    const std::size_t n = 2 + static_cast<std::size_t>(t % 3);
    // Trace fixed to -1 plus random extra rows: no PSD solution.
    SdpProblem p;
    p.dim = n;
    const std::size_t m = 1 + static_cast<std::size_t>(t % 2);
    p.a = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(upper_count(n)));
    p.b = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(m));
    for (std::size_t i = 0; i < n; ++i) p.a(0, static_cast<Eigen::Index>(upper_index(n, i, i))) = 1;
    p.b(0) = -1;
    for (std::size_t k = 1; k < m; ++k) {
      p.a(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(upper_index(n, 0, n - 1))) = nd(rng);
      p.b(static_cast<Eigen::Index>(k)) = nd(rng);
    }
    expect_infeasible_contract(p, sdp_feasibility(p), 1e-8);
  }
}

}  // namespace
}  // namespace mirrorcert
