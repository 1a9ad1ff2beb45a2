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

#include "jpsh/optimizer.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <Eigen/QR>
#include <Eigen/SVD>

#include "jpsh/error.hpp"

namespace jpsh {
namespace {

// Independent generator per purpose so that, e.g., changing the code
// initialization never perturbs k-means.
enum class Stream : std::uint32_t { kRotationR = 1, kRotationV = 2, kCodes = 3 };

std::mt19937_64 stream_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream};
  return std::mt19937_64(seq);
}

SparseMatrix laplacian(const SparseMatrix& s) {
  const Eigen::Index m = s.rows();
  std::vector<Eigen::Triplet<double>> triplets;
  Vector diag = Vector::Zero(m);
  for (Eigen::Index i = 0; i < s.outerSize(); ++i)
    for (SparseMatrix::InnerIterator it(s, i); it; ++it) {
      if (it.col() == i) continue;
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(it.col()), -it.value());
      diag(i) += it.value();
    }
  for (Eigen::Index i = 0; i < m; ++i)
    triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), diag(i));
  SparseMatrix g(m, m);
  g.setFromTriplets(triplets.begin(), triplets.end());
  return g;
}

double max_orthogonality_error(const Matrix& r) {
  return (r.transpose() * r - Matrix::Identity(r.cols(), r.cols())).cwiseAbs().maxCoeff();
}

}  // namespace

Mode parse_mode(std::string_view name) {
  if (name == "JPSH" || name == "jpsh") return Mode::kJpsh;
  if (name == "JSH_ONLY" || name == "jsh_only" || name == "JSH" || name == "jsh")
    return Mode::kJshOnly;
  if (name == "PSH_ONLY" || name == "psh_only" || name == "PSH" || name == "psh")
    return Mode::kPshOnly;
  throw ParamError("unknown mode \"" + std::string(name) + "\" (expected JPSH, JSH_ONLY, PSH_ONLY)");
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::kJpsh: return "JPSH";
    case Mode::kJshOnly: return "JSH_ONLY";
    case Mode::kPshOnly: return "PSH_ONLY";
  }
  return "?";
}

AnchorInit parse_anchor_init(std::string_view name) {
  if (name == "kmeans") return AnchorInit::kKMeans;
  if (name == "random") return AnchorInit::kRandom;
  throw ParamError("unknown anchor init \"" + std::string(name) + "\" (expected kmeans, random)");
}

std::string_view to_string(AnchorInit init) {
  return init == AnchorInit::kRandom ? "random" : "kmeans";
}

void Hyperparams::validate() const {
  auto fail = [](const std::string& what) { throw ParamError(what); };
  for (const double v : {lambda1, lambda2, lambda3})
    if (!(v >= 0.0) || !std::isfinite(v)) fail("lambda values must be finite and >= 0");
  if (bits < 1) fail("bits must be >= 1");
  if (anchors < 1) fail("anchor count m must be >= 1");
  if (k < 1 || k > anchors)
    fail("k must be in [1, m], got k=" + std::to_string(k) + ", m=" + std::to_string(anchors));
  if (anchors > 1 && (psi < 1 || psi >= anchors))
    fail("psi must be in [1, m-1], got psi=" + std::to_string(psi) + ", m=" +
         std::to_string(anchors));
  if (max_iters < 1) fail("iteration count T must be >= 1");
  if (!(eps > 0.0)) fail("eps must be > 0");
  if (!(tol >= 0.0)) fail("tol must be >= 0");
  if (ridge && !(*ridge >= 0.0)) fail("ridge must be >= 0");
  if (theta && !(*theta > 0.0)) fail("theta must be > 0");
  if (delta && !(*delta > 0.0)) fail("delta must be > 0");
  if (kmeans_iters < 1) fail("kmeans_iters must be >= 1");
}

Hyperparams Hyperparams::effective() const {
  Hyperparams h = *this;
  if (mode == Mode::kJshOnly) h.lambda1 = h.lambda2 = 0.0;
  if (mode == Mode::kPshOnly) h.lambda3 = 0.0;
  return h;
}

void JpshModel::validate() const {
  const auto d = pairwise.rows();
  const auto l = pairwise.cols();
  const auto m = static_cast<Eigen::Index>(anchors.count());
  if (personalized.rows() != m * d || personalized.cols() != l || rotation_r.rows() != l ||
      rotation_r.cols() != l || rotation_v.rows() != l || rotation_v.cols() != l ||
      codes.rows() != l || codes.cols() != m || anchors.centers.cols() != d ||
      center_mean.size() != d)
    throw ShapeError("model components have inconsistent shapes");
  if (max_orthogonality_error(rotation_r) > 1e-8) throw DataError("R is not orthogonal");
  if (max_orthogonality_error(rotation_v) > 1e-8) throw DataError("V is not orthogonal");
  if (!((codes.array() == 1.0) || (codes.array() == -1.0)).all())
    throw DataError("codes must be exactly -1 or +1");
  if (!personalized.allFinite() || !pairwise.allFinite() || !anchors.centers.allFinite())
    throw DataError("model weights must be finite");
}

WorkState make_work_state(const Matrix& points, const AnchorSet& anchors, const Hyperparams& hyper) {
  const Hyperparams h = hyper.effective();
  if (points.cols() != anchors.centers.cols())
    throw ShapeError("points and anchors differ in dimension");
  const auto d = points.cols();
  const auto m = static_cast<Eigen::Index>(anchors.count());

  WorkState ws;
  ws.anchor_columns = anchors.centers.transpose();
  ws.affinity = build_affinity(points, anchors, h.k, h.theta);
  if (m > 1) {
    ws.similarity = build_anchor_similarity(anchors, h.psi, h.delta);
  } else {
    ws.similarity.values.resize(1, 1);
    ws.similarity.psi = 0;
  }
  ws.x_times_a = points.transpose() * ws.affinity.values;
  if (h.uses_pairwise()) ws.gram = points.transpose() * points;
  ws.reweight_k = Vector::Ones(m * d);
  ws.reweight_g = laplacian(ws.similarity.values);
  ws.reweight_q = Vector::Ones(d);
  return ws;
}

Matrix procrustes_rotation(const Matrix& m) {
  if (m.rows() != m.cols()) throw ShapeError("Procrustes target must be square");
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixV() * svd.matrixU().transpose();
}

Matrix update_r(const Matrix& personalized, const WorkState& ws, const Matrix& codes) {
  const auto d = static_cast<Eigen::Index>(ws.dim());
  const auto m = static_cast<Eigen::Index>(ws.anchor_count());
  // P^T Y is l x m with column j equal to P_j^T c_j.
  Matrix pty(personalized.cols(), m);
  for (Eigen::Index j = 0; j < m; ++j)
    pty.col(j).noalias() = personalized.middleRows(j * d, d).transpose() * ws.anchor_columns.col(j);
  return procrustes_rotation(pty * codes.transpose());
}

Matrix update_v(const Matrix& pairwise, const WorkState& ws, const Matrix& codes) {
  return procrustes_rotation(pairwise.transpose() * ws.x_times_a * codes.transpose());
}

Matrix sign_of(const Matrix& m) {
  return m.unaryExpr([](double v) { return v >= 0.0 ? 1.0 : -1.0; });
}

Matrix code_target(const Matrix& personalized, const Matrix& pairwise, const Matrix& rotation_r,
                   const Matrix& rotation_v, const WorkState& ws, Mode mode) {
  const auto d = static_cast<Eigen::Index>(ws.dim());
  const auto m = static_cast<Eigen::Index>(ws.anchor_count());
  const Eigen::Index l = rotation_r.rows();
  Matrix target = Matrix::Zero(l, m);
  if (mode != Mode::kJshOnly)
    for (Eigen::Index j = 0; j < m; ++j)
      target.col(j).noalias() +=
          rotation_r * (personalized.middleRows(j * d, d).transpose() * ws.anchor_columns.col(j));
  if (mode != Mode::kPshOnly)
    target.noalias() += rotation_v * (pairwise.transpose() * ws.x_times_a);
  return target;
}

Matrix update_b(const Matrix& personalized, const Matrix& pairwise, const Matrix& rotation_r,
                const Matrix& rotation_v, const WorkState& ws, Mode mode) {
  return sign_of(code_target(personalized, pairwise, rotation_r, rotation_v, ws, mode));
}

void TrainTrace::write_csv(const std::filesystem::path& path, bool with_timing) const {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.precision(17);
  out << "iter,objective,term1,term2,term3,term4,term5" << (with_timing ? ",seconds" : "") << '\n';
  for (const auto& e : entries) {
    out << e.iteration << ',' << e.objective << ',' << e.terms.personalized_fit << ','
        << e.terms.pairwise_fit << ',' << e.terms.personalized_sparsity << ','
        << e.terms.network_lasso << ',' << e.terms.pairwise_sparsity;
    if (with_timing) out << ',' << e.seconds;
    out << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
}

Matrix random_orthogonal(std::size_t size, std::uint64_t seed) {
  auto rng = stream_rng(seed, 0);
  std::normal_distribution<double> normal;
  const auto n = static_cast<Eigen::Index>(size);
  Matrix g(n, n);
  for (Eigen::Index c = 0; c < n; ++c)
    for (Eigen::Index r = 0; r < n; ++r) g(r, c) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(n, n);
  // Sign fix so the result is Haar distributed.
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index c = 0; c < n; ++c)
    if (r(c, c) < 0.0) q.col(c) = -q.col(c);
  return q;
}

PreparedData prepare(const FeatureSet& fs, bool center) {
  fs.validate();
  PreparedData data;
  if (center) {
    data.mean = fs.features.colwise().mean().transpose();
    data.points = fs.features.rowwise() - data.mean.transpose();
  } else {
    data.mean = Vector::Zero(fs.features.cols());
    data.points = fs.features;
  }
  return data;
}

AnchorSet make_anchors(const PreparedData& data, const Hyperparams& hyper) {
  if (hyper.anchor_init == AnchorInit::kRandom)
    return random_anchor_set(data.points, hyper.anchors, hyper.seed);
  return kmeans(data.points, hyper.anchors, hyper.seed, hyper.kmeans_iters);
}

TrainResult train(const PreparedData& data, const AnchorSet& anchors, const Hyperparams& hyper) {
  hyper.validate();
  const Hyperparams h = hyper.effective();
  if (anchors.count() != h.anchors)
    throw ParamError("anchor set has " + std::to_string(anchors.count()) + " points, m=" +
                     std::to_string(h.anchors));
  if (static_cast<std::size_t>(data.points.rows()) < h.anchors)
    throw ParamError("need n >= m, got n=" + std::to_string(data.points.rows()) +
                     ", m=" + std::to_string(h.anchors));

  const auto d = data.points.cols();
  const auto m = static_cast<Eigen::Index>(h.anchors);
  const auto l = static_cast<Eigen::Index>(h.bits);
  const bool psh = h.uses_personalized();
  const bool pairwise = h.uses_pairwise();

  WorkState ws = make_work_state(data.points, anchors, h);

  JpshModel model;
  model.anchors = anchors;
  model.center_mean = data.mean;
  model.hyper = h;
  model.personalized = Matrix::Zero(m * d, l);
  model.pairwise = Matrix::Zero(d, l);
  model.rotation_r = psh ? random_orthogonal(h.bits, h.seed ^ 0x5f3759dfULL) : Matrix::Identity(l, l);
  model.rotation_v = pairwise ? random_orthogonal(h.bits, h.seed ^ 0x9e3779b9ULL)
                              : Matrix::Identity(l, l);
  {
    auto rng = stream_rng(h.seed, static_cast<std::uint32_t>(Stream::kCodes));
    std::bernoulli_distribution coin(0.5);
    model.codes.resize(l, m);
    for (Eigen::Index c = 0; c < m; ++c)
      for (Eigen::Index r = 0; r < l; ++r) model.codes(r, c) = coin(rng) ? 1.0 : -1.0;
  }

  TrainResult result;
  using Clock = std::chrono::steady_clock;
  for (std::size_t iter = 1; iter <= h.max_iters; ++iter) {
    const auto start = Clock::now();
    TraceEntry entry;
    entry.iteration = iter;

    if (psh) {
      if (iter > 1) {
        ws.reweight_k = compute_k(model.personalized, static_cast<std::size_t>(d), h.eps);
        if (m > 1)
          ws.reweight_g = compute_g(model.personalized, static_cast<std::size_t>(d),
                                    ws.similarity.values, h.eps);
      }
      model.personalized = update_p(ws, model.codes, model.rotation_r, h, &model.personalized,
                                    &entry.personalized_solve);
    }
    if (pairwise) {
      model.pairwise = update_w(ws, model.codes, model.rotation_v, h);
      ws.reweight_q = compute_q(model.pairwise, h.eps);
    }
    if (psh) model.rotation_r = update_r(model.personalized, ws, model.codes);
    if (pairwise) model.rotation_v = update_v(model.pairwise, ws, model.codes);
    model.codes = update_b(model.personalized, model.pairwise, model.rotation_r, model.rotation_v,
                           ws, h.mode);

    entry.terms = objective(model, ws, data.points);
    entry.objective = entry.terms.total(h.mode);
    entry.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (!std::isfinite(entry.objective))
      throw DivergenceError(iter, "objective became non-finite");
    result.trace.entries.push_back(entry);

    if (iter > 1) {
      const double prev = result.trace.entries[iter - 2].objective;
      if (std::abs(entry.objective - prev) <= h.tol * std::abs(prev)) {
        result.trace.converged = true;
        result.trace.converged_at = iter;
        break;
      }
    }
  }
  result.model = std::move(model);
  return result;
}

TrainResult train(const FeatureSet& fs, const Hyperparams& hyper) {
  hyper.validate();
  if (fs.size() < hyper.anchors)
    throw ParamError("need n >= m, got n=" + std::to_string(fs.size()) + ", m=" +
                     std::to_string(hyper.anchors));
  const PreparedData data = prepare(fs, hyper.center);
  return train(data, make_anchors(data, hyper), hyper);
}

TrainResult train_ablation(const FeatureSet& fs, const Hyperparams& hyper) {
  if (hyper.mode == Mode::kJpsh) throw ParamError("train_ablation needs JSH_ONLY or PSH_ONLY");
  return train(fs, hyper);
}

}  // namespace jpsh
