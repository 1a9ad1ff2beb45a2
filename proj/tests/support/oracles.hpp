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

#pragma once

// Deliberately naive reference implementations. Nothing here calls into the
// library's numerical code; inputs are plain dense matrices.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "jpsh/data_io.hpp"
#include "jpsh/metrics.hpp"
#include "jpsh/types.hpp"

namespace jpsh::testing {

struct NaiveTerms {
  double personalized_fit = 0.0;
  double pairwise_fit = 0.0;
  double personalized_sparsity = 0.0;
  double network_lasso = 0.0;
  double pairwise_sparsity = 0.0;
};

/// Every term summed element by element. `points` is n x d, `anchors` m x d,
/// `affinity` n x m dense, `similarity` m x m dense.
NaiveTerms naive_objective(const Matrix& points, const Matrix& anchors, const Matrix& affinity,
                           const Matrix& similarity, const Matrix& personalized,
                           const Matrix& pairwise, const Matrix& rotation_r,
                           const Matrix& rotation_v, const Matrix& codes, double lambda1,
                           double lambda2, double lambda3);

Vector naive_k(const Matrix& personalized, std::size_t dim, double eps);
Matrix naive_g(const Matrix& personalized, std::size_t dim, const Matrix& similarity, double eps);
Vector naive_q(const Matrix& pairwise, double eps);

/// Quadratic surrogate of the personalized subproblem with frozen K and G.
struct PersonalizedSurrogate {
  Matrix anchors;  // m x d
  Matrix codes;    // l x m
  Matrix rotation;
  Vector k;        // m d
  Matrix g;        // m x m
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  double ridge = 0.0;

  double value(const Matrix& p) const;
  Matrix gradient(const Matrix& p) const;
};

/// Quadratic surrogate of the pairwise subproblem with frozen Q.
struct PairwiseSurrogate {
  Matrix points;    // n x d
  Matrix affinity;  // n x m
  Matrix codes;     // l x m
  Matrix rotation;
  Vector q;         // d
  double lambda3 = 0.0;
  double ridge = 0.0;

  double value(const Matrix& w) const;
  Matrix gradient(const Matrix& w) const;
};

/// Accelerated gradient descent with backtracking; returns the final iterate.
Matrix gradient_descent(const std::function<double(const Matrix&)>& f,
                        const std::function<Matrix(const Matrix&)>& grad, Matrix x0,
                        std::size_t iterations);

/// Central finite-difference gradient.
Matrix numeric_gradient(const std::function<double(const Matrix&)>& f, const Matrix& x,
                        double step);

/// Codes as rows of +-1 for the naive evaluator.
using SignCodes = std::vector<std::vector<int>>;

SignCodes to_signs(const CodeSet& codes);

int naive_hamming(const std::vector<int>& a, const std::vector<int>& b);

/// AP by definition: mean over relevant ranks of precision at that rank,
/// each precision recounted from scratch.
double naive_average_precision(const std::vector<int>& flags);

struct NaiveReport {
  double map = 0.0;
  double ap_at_cutoff = 0.0;
  std::vector<double> precision_at;  // aligned with the requested Ns
  std::vector<double> recall_at;
  std::vector<double> pr_precision;  // per radius 0..l, pooled
  std::vector<double> pr_recall;
  double radius_precision = 0.0;
};

NaiveReport naive_evaluate(const SignCodes& queries, const Labels& query_labels,
                           const SignCodes& db, const Labels& db_labels,
                           const std::vector<std::size_t>& top_ns, std::size_t ap_cutoff,
                           int radius);

/// Dense random matrix with standard normal entries.
Matrix random_normal(Eigen::Index rows, Eigen::Index cols, std::uint64_t seed);

/// Haar-distributed orthogonal matrix from Gram-Schmidt on a Gaussian draw.
Matrix random_rotation(Eigen::Index size, std::uint64_t seed);

}  // namespace jpsh::testing
