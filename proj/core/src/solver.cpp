/*
 * Copyright 2026 The JPSH Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Closed-form solves for the personalized (P) and pairwise (W) weights.

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "jpsh/error.hpp"
#include "jpsh/log.hpp"
#include "jpsh/optimizer.hpp"

namespace jpsh {
namespace {

constexpr Eigen::Index kDenseLimit = 4096;
constexpr double kCgTolerance = 1e-10;
constexpr double kCgAcceptable = 1e-6;
constexpr double kMinRcond = 1e-14;

// Inverse of the per-block diagonal of the system plus c_j c_j^T, applied
// with Sherman-Morrison.
class BlockJacobi {
 public:
  BlockJacobi(const WorkState& ws, const Hyperparams& h, double ridge)
      : d_(static_cast<Eigen::Index>(ws.dim())), columns_(ws.anchor_columns) {
    const Eigen::Index m = columns_.cols();
    Vector diag = h.lambda1 * ws.reweight_k;
    diag.array() += ridge;
    if (h.lambda2 != 0.0)
      for (Eigen::Index j = 0; j < m; ++j)
        diag.segment(j * d_, d_).array() += h.lambda2 * ws.reweight_g.coeff(j, j);
    const double floor = std::max(1e-300, 1e-14 * diag.cwiseAbs().maxCoeff());
    inv_diag_ = diag.cwiseMax(floor).cwiseInverse();
    scaled_c_.resize(d_, m);
    denom_.resize(m);
    for (Eigen::Index j = 0; j < m; ++j) {
      scaled_c_.col(j) = inv_diag_.segment(j * d_, d_).cwiseProduct(columns_.col(j));
      denom_(j) = 1.0 + columns_.col(j).dot(scaled_c_.col(j));
    }
  }

  Matrix apply(const Matrix& r) const {
    Matrix z = inv_diag_.asDiagonal() * r;
    for (Eigen::Index j = 0; j < columns_.cols(); ++j) {
      auto zj = z.middleRows(j * d_, d_);
      const Eigen::RowVectorXd proj = columns_.col(j).transpose() * zj;
      zj.noalias() -= scaled_c_.col(j) * (proj / denom_(j));
    }
    return z;
  }

 private:
  Eigen::Index d_;
  const Matrix& columns_;
  Vector inv_diag_;
  Matrix scaled_c_;
  Vector denom_;
};

Matrix dense_system(const WorkState& ws, const Hyperparams& h, double ridge) {
  const auto d = static_cast<Eigen::Index>(ws.dim());
  const auto m = static_cast<Eigen::Index>(ws.anchor_count());
  Matrix a = Matrix::Zero(m * d, m * d);
  a.diagonal() = h.lambda1 * ws.reweight_k;
  a.diagonal().array() += ridge;
  if (h.lambda2 != 0.0)
    for (Eigen::Index j = 0; j < ws.reweight_g.outerSize(); ++j)
      for (SparseMatrix::InnerIterator it(ws.reweight_g, j); it; ++it)
        a.block(j * d, it.col() * d, d, d).diagonal().array() += h.lambda2 * it.value();
  for (Eigen::Index j = 0; j < m; ++j)
    a.block(j * d, j * d, d, d).noalias() +=
        ws.anchor_columns.col(j) * ws.anchor_columns.col(j).transpose();
  return a;
}

Matrix solve_dense(const WorkState& ws, const Hyperparams& h, double ridge, const Matrix& rhs,
                   SolveStats& stats) {
  const Matrix a = dense_system(ws, h, ridge);
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success || llt.rcond() < kMinRcond)
    throw SolverError(
        "personalized-weight system is singular (lambda1=" + std::to_string(h.lambda1) +
        ", lambda2=" + std::to_string(h.lambda2) + ", ridge=" + std::to_string(ridge) +
        "); use a ridge > 0");
  Matrix p = llt.solve(rhs);
  stats.direct = true;
  stats.iterations = 1;
  const double bnorm = rhs.norm();
  stats.relative_residual = bnorm > 0.0 ? (a * p - rhs).norm() / bnorm : 0.0;
  return p;
}

Matrix solve_pcg(const WorkState& ws, const Hyperparams& h, double ridge, const Matrix& rhs,
                 const Matrix* warm_start, SolveStats& stats) {
  const Eigen::Index cols = rhs.cols();
  const BlockJacobi precond(ws, h, ridge);
  auto apply = [&](const Matrix& x) { return apply_personalized_system(ws, h, ridge, x); };

  Matrix x = (warm_start && warm_start->rows() == rhs.rows() && warm_start->cols() == cols)
                 ? *warm_start
                 : Matrix::Zero(rhs.rows(), cols);
  Matrix r = rhs - apply(x);
  Matrix z = precond.apply(r);
  Matrix p = z;
  Vector rz = r.cwiseProduct(z).colwise().sum().transpose();
  const Vector bnorm = rhs.colwise().norm().transpose().cwiseMax(1e-300);

  const auto max_iters = static_cast<std::size_t>(std::min<Eigen::Index>(rhs.rows(), 5000));
  std::size_t iter = 0;
  Vector rel = r.colwise().norm().transpose().cwiseQuotient(bnorm);
  while (rel.maxCoeff() > kCgTolerance && iter < max_iters) {
    ++iter;
    const Matrix ap = apply(p);
    for (Eigen::Index c = 0; c < cols; ++c) {
      if (rel(c) <= kCgTolerance) continue;
      const double pap = p.col(c).dot(ap.col(c));
      if (!(pap > 0.0)) {
        throw SolverError("personalized-weight system is not positive definite; use a ridge > 0");
      }
      const double alpha = rz(c) / pap;
      x.col(c) += alpha * p.col(c);
      r.col(c) -= alpha * ap.col(c);
    }
    z = precond.apply(r);
    for (Eigen::Index c = 0; c < cols; ++c) {
      rel(c) = r.col(c).norm() / bnorm(c);
      if (rel(c) <= kCgTolerance) continue;
      const double rz_new = r.col(c).dot(z.col(c));
      const double beta = rz_new / rz(c);
      rz(c) = rz_new;
      p.col(c) = z.col(c) + beta * p.col(c);
    }
  }
  // Report the true residual rather than the recursively updated one.
  const Matrix true_r = rhs - apply(x);
  stats.direct = false;
  stats.iterations = iter;
  stats.relative_residual =
      true_r.colwise().norm().transpose().cwiseQuotient(bnorm).maxCoeff();
  if (stats.relative_residual > kCgAcceptable)
    throw SolverError("conjugate gradients stalled at relative residual " +
                      std::to_string(stats.relative_residual) + " after " +
                      std::to_string(iter) + " iterations; use a larger ridge");
  if (stats.relative_residual > kCgTolerance)
    log::warn("personalized solve stopped at relative residual " +
              std::to_string(stats.relative_residual));
  return x;
}

}  // namespace

double personalized_ridge(const WorkState& ws, const Hyperparams& hyper) {
  if (hyper.ridge) return *hyper.ridge;
  const double trace = ws.anchor_columns.squaredNorm();
  const double size = static_cast<double>(ws.anchor_columns.size());
  return size > 0.0 ? 1e-8 * trace / size : 0.0;
}

Matrix apply_personalized_system(const WorkState& ws, const Hyperparams& hyper, double ridge,
                                 const Matrix& personalized) {
  const Hyperparams h = hyper.effective();
  const auto d = static_cast<Eigen::Index>(ws.dim());
  const auto m = static_cast<Eigen::Index>(ws.anchor_count());
  Vector diag = h.lambda1 * ws.reweight_k;
  diag.array() += ridge;
  Matrix out = diag.asDiagonal() * personalized;
  if (h.lambda2 != 0.0)
    for (Eigen::Index j = 0; j < ws.reweight_g.outerSize(); ++j)
      for (SparseMatrix::InnerIterator it(ws.reweight_g, j); it; ++it)
        out.middleRows(j * d, d) += (h.lambda2 * it.value()) * personalized.middleRows(it.col() * d, d);
  for (Eigen::Index j = 0; j < m; ++j) {
    const auto c = ws.anchor_columns.col(j);
    const Eigen::RowVectorXd proj = c.transpose() * personalized.middleRows(j * d, d);
    out.middleRows(j * d, d).noalias() += c * proj;
  }
  return out;
}

Matrix personalized_rhs(const WorkState& ws, const Matrix& codes, const Matrix& rotation_r) {
  const auto d = static_cast<Eigen::Index>(ws.dim());
  const auto m = static_cast<Eigen::Index>(ws.anchor_count());
  const Matrix bt_r = codes.transpose() * rotation_r;  // m x l
  Matrix rhs(m * d, codes.rows());
  for (Eigen::Index j = 0; j < m; ++j)
    rhs.middleRows(j * d, d).noalias() = ws.anchor_columns.col(j) * bt_r.row(j);
  return rhs;
}

Matrix update_p(const WorkState& ws, const Matrix& codes, const Matrix& rotation_r,
                const Hyperparams& hyper, const Matrix* warm_start, SolveStats* stats) {
  const Hyperparams h = hyper.effective();
  const auto d = static_cast<Eigen::Index>(ws.dim());
  const auto m = static_cast<Eigen::Index>(ws.anchor_count());
  if (codes.cols() != m || rotation_r.rows() != codes.rows() || rotation_r.cols() != codes.rows())
    throw ShapeError("codes/rotation shapes do not match the work state");
  if (ws.reweight_k.size() != m * d || ws.reweight_g.rows() != m)
    throw ShapeError("reweighting matrices do not match the work state");

  const double ridge = personalized_ridge(ws, h);
  const Matrix rhs = personalized_rhs(ws, codes, rotation_r);
  SolveStats local;
  Matrix p = m * d <= kDenseLimit ? solve_dense(ws, h, ridge, rhs, local)
                                  : solve_pcg(ws, h, ridge, rhs, warm_start, local);
  if (stats) *stats = local;
  return p;
}

Matrix update_w(const WorkState& ws, const Matrix& codes, const Matrix& rotation_v,
                const Hyperparams& hyper) {
  const Hyperparams h = hyper.effective();
  const auto d = static_cast<Eigen::Index>(ws.dim());
  if (ws.gram.rows() != d || ws.reweight_q.size() != d)
    throw ShapeError("work state has no pairwise quantities for d=" + std::to_string(d));
  Matrix a = ws.gram;
  a.diagonal() += h.lambda3 * ws.reweight_q;
  if (h.ridge) a.diagonal().array() += *h.ridge;
  Eigen::LLT<Matrix> llt(a);
  if (llt.info() != Eigen::Success || llt.rcond() < kMinRcond)
    throw SolverError("pairwise-weight system is singular (lambda3=" + std::to_string(h.lambda3) +
                      "); use lambda3 > 0 or a ridge > 0");
  const Matrix rhs = ws.x_times_a * (codes.transpose() * rotation_v);
  return llt.solve(rhs);
}

}  // namespace jpsh
