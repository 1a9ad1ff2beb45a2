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

#include "jpsh/graphs.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "jpsh/error.hpp"
#include "jpsh/log.hpp"

namespace jpsh {
namespace {

using Neighbor = std::pair<double, std::uint32_t>;  // (squared distance, index)

// The `count` smallest entries of `dist`, ordered by (distance, index).
std::vector<Neighbor> smallest(const Eigen::Ref<const Vector>& dist, std::size_t count,
                               std::int64_t skip = -1) {
  std::vector<Neighbor> all;
  all.reserve(static_cast<std::size_t>(dist.size()));
  for (Eigen::Index j = 0; j < dist.size(); ++j)
    if (j != skip) all.emplace_back(dist(j), static_cast<std::uint32_t>(j));
  count = std::min(count, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(count), all.end());
  all.resize(count);
  return all;
}

}  // namespace

AnchorAffinity build_affinity(const Matrix& points, const AnchorSet& anchors, std::size_t k,
                              std::optional<double> theta) {
  const std::size_t m = anchors.count();
  if (k < 1) throw ParamError("k must be >= 1");
  if (k > m)
    throw ParamError("k=" + std::to_string(k) + " exceeds anchor count m=" + std::to_string(m));
  if (theta && !(*theta > 0.0)) throw ParamError("theta must be positive");
  if (points.cols() != anchors.centers.cols())
    throw ShapeError("points and anchors differ in dimension");

  const auto n = static_cast<std::size_t>(points.rows());
  Matrix dist = -2.0 * points * anchors.centers.transpose();
  dist.colwise() += points.rowwise().squaredNorm();
  dist.rowwise() += anchors.centers.rowwise().squaredNorm().transpose();
  dist = dist.cwiseMax(0.0);

  std::vector<std::vector<Neighbor>> nearest(n);
  double kth_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    nearest[i] = smallest(dist.row(static_cast<Eigen::Index>(i)).transpose(), k);
    kth_sum += nearest[i].back().first;
  }

  AnchorAffinity out;
  out.k = k;
  if (theta) {
    out.theta = *theta;
  } else {
    out.theta = kth_sum / static_cast<double>(n);
    if (!(out.theta > 0.0)) out.theta = 1.0;  // every sample sits on its anchors
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(n * k);
  std::size_t fallbacks = 0;
  std::vector<double> w(k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& nb = nearest[i];
    // Shift by the nearest distance; the normalization cancels it.
    const double base = nb.front().first;
    double sum = 0.0;
    for (std::size_t t = 0; t < nb.size(); ++t) {
      w[t] = std::exp(-(nb[t].first - base) / out.theta);
      sum += w[t];
    }
    if (!(sum > 0.0) || !std::isfinite(sum)) {
      ++fallbacks;
      std::fill(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(nb.size()), 1.0);
      sum = static_cast<double>(nb.size());
    }
    for (std::size_t t = 0; t < nb.size(); ++t)
      triplets.emplace_back(static_cast<int>(i), static_cast<int>(nb[t].second), w[t] / sum);
  }
  if (fallbacks > 0)
    log::warn("affinity: " + std::to_string(fallbacks) +
              " rows had a degenerate kernel; used uniform weights");
  out.values.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  out.values.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

AnchorSimilarity build_anchor_similarity(const AnchorSet& anchors, std::size_t psi,
                                         std::optional<double> delta) {
  const std::size_t m = anchors.count();
  if (psi < 1) throw ParamError("psi must be >= 1");
  if (psi >= m)
    throw ParamError("psi=" + std::to_string(psi) + " must be below anchor count m=" +
                     std::to_string(m));
  if (delta && !(*delta > 0.0)) throw ParamError("delta must be positive");

  const auto& c = anchors.centers;
  Matrix dist = Matrix::Zero(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < c.rows(); ++i)
    for (Eigen::Index j = i + 1; j < c.rows(); ++j) {
      const double dd = (c.row(i) - c.row(j)).squaredNorm();
      dist(i, j) = dd;
      dist(j, i) = dd;
    }

  std::vector<std::vector<std::uint8_t>> linked(m, std::vector<std::uint8_t>(m, 0));
  double mean_dist = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    const auto nb = smallest(dist.row(static_cast<Eigen::Index>(i)).transpose(), psi,
                             static_cast<std::int64_t>(i));
    double row_sum = 0.0;
    for (const auto& [dd, j] : nb) {
      linked[i][j] = 1;
      linked[j][i] = 1;
      row_sum += std::sqrt(dd);
    }
    mean_dist += row_sum / static_cast<double>(nb.size());
  }
  mean_dist /= static_cast<double>(m);

  AnchorSimilarity out;
  out.psi = psi;
  out.delta = delta ? *delta : (mean_dist > 0.0 ? mean_dist : 1.0);
  const double denom = out.delta * out.delta;

  std::vector<Eigen::Triplet<double>> triplets;
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (linked[i][j]) {
        // Floor keeps linked pairs strictly positive when the kernel underflows.
        const double v = std::max(std::exp(-dist(static_cast<Eigen::Index>(i),
                                                 static_cast<Eigen::Index>(j)) /
                                           denom),
                                  std::numeric_limits<double>::min());
        triplets.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
      }
  out.values.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(m));
  out.values.setFromTriplets(triplets.begin(), triplets.end());
  return out;
}

void write_coo_csv(const SparseMatrix& matrix, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << "row,col,value\n";
  std::array<char, 32> buf{};
  for (Eigen::Index r = 0; r < matrix.outerSize(); ++r)
    for (SparseMatrix::InnerIterator it(matrix, r); it; ++it) {
      const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), it.value());
      out << it.row() << ',' << it.col() << ',';
      out.write(buf.data(), res.ptr - buf.data());
      out << '\n';
    }
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace jpsh
