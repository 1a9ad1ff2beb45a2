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

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "jpsh/anchors.hpp"
#include "jpsh/data_io.hpp"
#include "jpsh/graphs.hpp"
#include "jpsh/types.hpp"

namespace jpsh {

enum class Mode : std::uint8_t { kJpsh = 0, kJshOnly = 1, kPshOnly = 2 };

Mode parse_mode(std::string_view name);
std::string_view to_string(Mode mode);

enum class AnchorInit : std::uint8_t { kKMeans = 0, kRandom = 1 };

AnchorInit parse_anchor_init(std::string_view name);
std::string_view to_string(AnchorInit init);

struct Hyperparams {
  double lambda1 = 1.0;   // squared l2,1 penalty on each personalized block
  double lambda2 = 1.0;   // network lasso between neighbouring anchors
  double lambda3 = 10.0;  // l2,1 penalty on the pairwise projection
  std::size_t bits = 16;
  std::size_t anchors = 800;
  std::size_t k = 7;
  std::size_t psi = 7;
  std::size_t max_iters = 10;
  double eps = 1e-8;
  double tol = 1e-5;      // relative objective change that ends training
  Mode mode = Mode::kJpsh;
  std::uint64_t seed = 0;
  /// Absolute diagonal regularizer. Unset: 1e-8 * tr(YY^T) / (m d) for the
  /// personalized system and nothing for the pairwise one.
  std::optional<double> ridge;
  std::size_t kmeans_iters = 100;
  AnchorInit anchor_init = AnchorInit::kKMeans;
  bool center = true;
  std::optional<double> theta;
  std::optional<double> delta;

  /// Throws ParamError on any out-of-range field.
  void validate() const;

  /// Copy with the mode's forced settings applied (JSH-only zeroes lambda1
  /// and lambda2; PSH-only zeroes lambda3).
  Hyperparams effective() const;

  bool uses_personalized() const { return mode != Mode::kJshOnly; }
  bool uses_pairwise() const { return mode != Mode::kPshOnly; }
};

/// Learned parameters. Personalized blocks are stacked: rows [j d, (j+1) d)
/// of `personalized` hold P_j.
struct JpshModel {
  Matrix personalized;  // (m d) x l
  Matrix pairwise;      // d x l
  Matrix rotation_r;    // l x l, personalized branch
  Matrix rotation_v;    // l x l, pairwise branch
  Matrix codes;         // l x m, entries exactly -1 or +1
  AnchorSet anchors;    // centers in centered coordinates
  Vector center_mean;   // d
  Hyperparams hyper;

  std::size_t dim() const { return static_cast<std::size_t>(pairwise.rows()); }
  std::size_t bits() const { return static_cast<std::size_t>(pairwise.cols()); }
  std::size_t anchor_count() const { return anchors.count(); }

  auto block(std::size_t j) const {
    return personalized.middleRows(static_cast<Eigen::Index>(j * dim()),
                                   static_cast<Eigen::Index>(dim()));
  }

  /// Orthogonality, sign alphabet, finiteness and shape checks.
  void validate() const;
};

/// Quantities that stay fixed during training plus the reweighting matrices
/// that are refreshed every iteration.
struct WorkState {
  Matrix anchor_columns;  // d x m, column j is c_j (the blocks of Y)
  Matrix x_times_a;       // d x m, X A
  Matrix gram;            // d x d, X X^T
  AnchorAffinity affinity;
  AnchorSimilarity similarity;
  Vector reweight_k;      // m d diagonal of K
  SparseMatrix reweight_g;  // m x m
  Vector reweight_q;      // d diagonal of Q

  std::size_t dim() const { return static_cast<std::size_t>(anchor_columns.rows()); }
  std::size_t anchor_count() const { return static_cast<std::size_t>(anchor_columns.cols()); }
};

/// Builds A, S, the cached products and the initial reweighting (K = I,
/// Q = I, G = Laplacian of S). `points` is the (centered) n x d training matrix.
WorkState make_work_state(const Matrix& points, const AnchorSet& anchors, const Hyperparams& hyper);

/// The five terms of the objective, each already multiplied by its weight.
struct ObjectiveTerms {
  double personalized_fit = 0.0;       // sum_j |b_j - R P_j^T c_j|^2
  double pairwise_fit = 0.0;           // sum_ij A_ij |b_j - V W^T x_i|^2
  double personalized_sparsity = 0.0;  // lambda1 sum_j |P_j|_{2,1}^2
  double network_lasso = 0.0;          // lambda2 sum_ij S_ij |P_i - P_j|_F
  double pairwise_sparsity = 0.0;      // lambda3 |W|_{2,1}

  double total() const {
    return personalized_fit + pairwise_fit + personalized_sparsity + network_lasso +
           pairwise_sparsity;
  }
  /// Sum of the terms the mode optimizes.
  double total(Mode mode) const;
};

/// Throws ShapeError when model, work state and points disagree.
ObjectiveTerms objective(const JpshModel& model, const WorkState& ws, const Matrix& points);

/// Diagonal of K: entry (j, r) is |P_j|_{2,1} / (|row r of P_j| + eps).
Vector compute_k(const Matrix& personalized, std::size_t dim, double eps);

/// Laplacian-like reweighting with off-diagonals -S_ij / (|P_i - P_j|_F + eps).
SparseMatrix compute_g(const Matrix& personalized, std::size_t dim,
                       const SparseMatrix& similarity, double eps);

/// Diagonal of Q: 1 / (2 (|row i of W| + eps)).
Vector compute_q(const Matrix& pairwise, double eps);

struct SolveStats {
  bool direct = true;
  std::size_t iterations = 0;
  double relative_residual = 0.0;
};

/// Reweighted closed-form personalized update with K and G taken from `ws`.
/// Dense factorization when m d <= 4096, block-Jacobi preconditioned
/// conjugate gradients otherwise (warm-started from `warm_start` if given).
Matrix update_p(const WorkState& ws, const Matrix& codes, const Matrix& rotation_r,
                const Hyperparams& hyper, const Matrix* warm_start = nullptr,
                SolveStats* stats = nullptr);

/// Diagonal ridge actually applied by update_p.
double personalized_ridge(const WorkState& ws, const Hyperparams& hyper);

/// Applies lambda1 K + lambda2 (G kron I_d) + Y Y^T + ridge I to stacked P.
Matrix apply_personalized_system(const WorkState& ws, const Hyperparams& hyper, double ridge,
                                 const Matrix& personalized);

/// Y B^T R, the right-hand side of the personalized system.
Matrix personalized_rhs(const WorkState& ws, const Matrix& codes, const Matrix& rotation_r);

/// Reweighted closed-form pairwise update with Q taken from `ws`.
Matrix update_w(const WorkState& ws, const Matrix& codes, const Matrix& rotation_v,
                const Hyperparams& hyper);

/// Orthogonal maximizer of tr(Omega M) over orthogonal Omega.
Matrix procrustes_rotation(const Matrix& m);

/// R from P^T Y B^T.
Matrix update_r(const Matrix& personalized, const WorkState& ws, const Matrix& codes);

/// V from W^T X A B^T.
Matrix update_v(const Matrix& pairwise, const WorkState& ws, const Matrix& codes);

/// Entrywise sign with sgn(0) = +1.
Matrix sign_of(const Matrix& m);

/// The matrix whose sign is the code update, R P^T Y + V W^T X A restricted
/// to the branches the mode uses.
Matrix code_target(const Matrix& personalized, const Matrix& pairwise, const Matrix& rotation_r,
                   const Matrix& rotation_v, const WorkState& ws, Mode mode);

Matrix update_b(const Matrix& personalized, const Matrix& pairwise, const Matrix& rotation_r,
                const Matrix& rotation_v, const WorkState& ws, Mode mode = Mode::kJpsh);

struct TraceEntry {
  std::size_t iteration = 0;  // 1-based
  ObjectiveTerms terms;
  double objective = 0.0;     // ObjectiveTerms::total(mode)
  double seconds = 0.0;
  SolveStats personalized_solve;
};

struct TrainTrace {
  std::vector<TraceEntry> entries;
  bool converged = false;
  std::size_t converged_at = 0;  // iteration index, 0 when T was reached first

  /// "iter,objective,term1,...,term5,seconds"
  void write_csv(const std::filesystem::path& path, bool with_timing = true) const;
};

struct TrainResult {
  JpshModel model;
  TrainTrace trace;
};

/// Training corpus after optional mean-centering.
struct PreparedData {
  Matrix points;
  Vector mean;
};

PreparedData prepare(const FeatureSet& fs, bool center);

/// K-means or random anchors according to hyper.anchor_init.
AnchorSet make_anchors(const PreparedData& data, const Hyperparams& hyper);

/// Alternating minimization from prepared data and anchors.
TrainResult train(const PreparedData& data, const AnchorSet& anchors, const Hyperparams& hyper);

/// Full pipeline: centering, anchors, graphs, alternating updates.
TrainResult train(const FeatureSet& fs, const Hyperparams& hyper);

/// Same as train but requires an ablation mode.
TrainResult train_ablation(const FeatureSet& fs, const Hyperparams& hyper);

/// Random orthogonal matrix from the QR factor of a Gaussian matrix.
Matrix random_orthogonal(std::size_t size, std::uint64_t seed);

}  // namespace jpsh
