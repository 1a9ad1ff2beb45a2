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

#include <cmath>
#include <string>

#include "jpsh/error.hpp"
#include "jpsh/optimizer.hpp"

namespace jpsh {
namespace {

std::string dims(Eigen::Index r, Eigen::Index c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

}  // namespace

double ObjectiveTerms::total(Mode mode) const {
  switch (mode) {
    case Mode::kJpsh: return total();
    case Mode::kJshOnly: return pairwise_fit + pairwise_sparsity;
    case Mode::kPshOnly: return personalized_fit + personalized_sparsity + network_lasso;
  }
  return total();
}

ObjectiveTerms objective(const JpshModel& model, const WorkState& ws, const Matrix& points) {
  const auto d = static_cast<Eigen::Index>(ws.dim());
  const auto m = static_cast<Eigen::Index>(ws.anchor_count());
  const Eigen::Index l = model.codes.rows();
  if (points.cols() != d) throw ShapeError("points have d=" + std::to_string(points.cols()) +
                                           ", work state has d=" + std::to_string(d));
  if (model.personalized.rows() != m * d || model.personalized.cols() != l)
    throw ShapeError("personalized weights are " +
                     dims(model.personalized.rows(), model.personalized.cols()) + ", expected " +
                     dims(m * d, l));
  if (model.pairwise.rows() != d || model.pairwise.cols() != l)
    throw ShapeError("pairwise weights are " + dims(model.pairwise.rows(), model.pairwise.cols()) +
                     ", expected " + dims(d, l));
  if (model.codes.cols() != m) throw ShapeError("codes have " + std::to_string(model.codes.cols()) +
                                                " columns for m=" + std::to_string(m));
  if (model.rotation_r.rows() != l || model.rotation_r.cols() != l ||
      model.rotation_v.rows() != l || model.rotation_v.cols() != l)
    throw ShapeError("rotations must be " + dims(l, l));
  if (ws.affinity.values.rows() != points.rows() || ws.affinity.values.cols() != m)
    throw ShapeError("affinity is " + dims(ws.affinity.values.rows(), ws.affinity.values.cols()) +
                     ", expected " + dims(points.rows(), m));

  const Hyperparams h = model.hyper.effective();
  ObjectiveTerms t;

  for (Eigen::Index j = 0; j < m; ++j) {
    const Vector proj = model.rotation_r *
                        (model.personalized.middleRows(j * d, d).transpose() *
                         ws.anchor_columns.col(j));
    t.personalized_fit += (model.codes.col(j) - proj).squaredNorm();
  }

  const Matrix projected = (points * model.pairwise) * model.rotation_v.transpose();  // n x l
  for (Eigen::Index i = 0; i < ws.affinity.values.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(ws.affinity.values, i); it; ++it)
      t.pairwise_fit +=
          it.value() * (model.codes.col(it.col()) - projected.row(i).transpose()).squaredNorm();

  if (h.lambda1 != 0.0) {
    double sum = 0.0;
    for (Eigen::Index j = 0; j < m; ++j) {
      const double l21 = model.personalized.middleRows(j * d, d).rowwise().norm().sum();
      sum += l21 * l21;
    }
    t.personalized_sparsity = h.lambda1 * sum;
  }

  if (h.lambda2 != 0.0 && ws.similarity.values.nonZeros() > 0) {
    double sum = 0.0;
    for (Eigen::Index i = 0; i < ws.similarity.values.outerSize(); ++i)
      for (SparseMatrix::InnerIterator it(ws.similarity.values, i); it; ++it) {
        if (it.col() == i) continue;
        sum += it.value() * (model.personalized.middleRows(i * d, d) -
                             model.personalized.middleRows(it.col() * d, d))
                                .norm();
      }
    t.network_lasso = h.lambda2 * sum;
  }

  if (h.lambda3 != 0.0) t.pairwise_sparsity = h.lambda3 * model.pairwise.rowwise().norm().sum();
  return t;
}

Vector compute_k(const Matrix& personalized, std::size_t dim, double eps) {
  const auto d = static_cast<Eigen::Index>(dim);
  const Eigen::Index m = personalized.rows() / d;
  Vector k(personalized.rows());
  for (Eigen::Index j = 0; j < m; ++j) {
    const Vector norms = personalized.middleRows(j * d, d).rowwise().norm();
    const double l21 = norms.sum();
    k.segment(j * d, d) = l21 * (norms.array() + eps).inverse();
  }
  return k;
}

SparseMatrix compute_g(const Matrix& personalized, std::size_t dim, const SparseMatrix& similarity,
                       double eps) {
  const auto d = static_cast<Eigen::Index>(dim);
  const Eigen::Index m = similarity.rows();
  std::vector<Eigen::Triplet<double>> triplets;
  Vector diag = Vector::Zero(m);
  for (Eigen::Index i = 0; i < similarity.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(similarity, i); it; ++it) {
      if (it.col() == i) continue;
      const double gap = (personalized.middleRows(i * d, d) -
                          personalized.middleRows(it.col() * d, d))
                             .norm();
      const double w = it.value() / (gap + eps);
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(it.col()), -w);
      diag(i) += w;
    }
  for (Eigen::Index i = 0; i < m; ++i)
    triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), diag(i));
  SparseMatrix g(m, m);
  g.setFromTriplets(triplets.begin(), triplets.end());
  return g;
}

Vector compute_q(const Matrix& pairwise, double eps) {
  return (2.0 * (pairwise.rowwise().norm().array() + eps)).inverse().matrix();
}

}  // namespace jpsh
