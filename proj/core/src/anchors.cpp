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

#include "jpsh/anchors.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "jpsh/error.hpp"
#include "jpsh/log.hpp"

namespace jpsh {
namespace {

void check_count(const Matrix& points, std::size_t m) {
  if (m < 1) throw ParamError("anchor count must be >= 1");
  if (m > static_cast<std::size_t>(points.rows()))
    throw ParamError("anchor count m=" + std::to_string(m) + " exceeds sample count n=" +
                     std::to_string(points.rows()));
}

// Squared distances via |x|^2 + |c|^2 - 2 x.c, clamped at zero.
Matrix pairwise_sq_distances(const Matrix& points, const Matrix& centers) {
  Matrix dist = -2.0 * points * centers.transpose();
  dist.colwise() += points.rowwise().squaredNorm();
  dist.rowwise() += centers.rowwise().squaredNorm().transpose();
  return dist.cwiseMax(0.0);
}

std::vector<std::uint32_t> argmin_rows(const Matrix& dist) {
  std::vector<std::uint32_t> out(static_cast<std::size_t>(dist.rows()));
  for (Eigen::Index i = 0; i < dist.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index j = 1; j < dist.cols(); ++j)
      if (dist(i, j) < dist(i, best)) best = j;
    out[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(best);
  }
  return out;
}

Matrix kmeanspp_init(const Matrix& points, std::size_t m, std::mt19937_64& rng) {
  const auto n = static_cast<std::size_t>(points.rows());
  Matrix centers(static_cast<Eigen::Index>(m), points.cols());
  std::vector<std::uint8_t> chosen(n, 0);
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());

  std::size_t pick = std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
  for (std::size_t c = 0; c < m; ++c) {
    if (c > 0) {
      const double total = std::accumulate(d2.begin(), d2.end(), 0.0);
      if (total > 0.0) {
        const double u = std::uniform_real_distribution<double>(0.0, total)(rng);
        double cum = 0.0;
        pick = n;
        for (std::size_t i = 0; i < n; ++i) {
          cum += d2[i];
          if (d2[i] > 0.0 && cum > u) {
            pick = i;
            break;
          }
        }
        if (pick == n) {  // u landed in the rounding gap at the top
          for (std::size_t i = n; i-- > 0;)
            if (d2[i] > 0.0) {
              pick = i;
              break;
            }
        }
      } else {
        // Remaining points all coincide with chosen centers.
        std::vector<std::size_t> free_rows;
        for (std::size_t i = 0; i < n; ++i)
          if (!chosen[i]) free_rows.push_back(i);
        pick = free_rows[std::uniform_int_distribution<std::size_t>(0, free_rows.size() - 1)(rng)];
      }
    }
    chosen[pick] = 1;
    centers.row(static_cast<Eigen::Index>(c)) = points.row(static_cast<Eigen::Index>(pick));
    for (std::size_t i = 0; i < n; ++i) {
      const double dd = chosen[i] ? 0.0
                                  : (points.row(static_cast<Eigen::Index>(i)) -
                                     centers.row(static_cast<Eigen::Index>(c)))
                                        .squaredNorm();
      d2[i] = std::min(d2[i], dd);
    }
  }
  return centers;
}

// Moves each empty center onto the point farthest from its own center,
// taking points only from clusters that keep at least one member.
void repair_empty_clusters(const Matrix& points, Matrix& centers,
                           std::vector<std::uint32_t>& assignment,
                           std::vector<std::size_t>& counts) {
  for (std::size_t j = 0; j < counts.size(); ++j) {
    if (counts[j] != 0) continue;
    double worst = -1.0;
    std::size_t worst_row = 0;
    for (std::size_t i = 0; i < assignment.size(); ++i) {
      if (counts[assignment[i]] < 2) continue;
      const double dd = (points.row(static_cast<Eigen::Index>(i)) -
                         centers.row(static_cast<Eigen::Index>(assignment[i])))
                            .squaredNorm();
      if (dd > worst) {
        worst = dd;
        worst_row = i;
      }
    }
    if (worst < 0.0) continue;  // cannot happen while m <= n
    log::warn("k-means: cluster " + std::to_string(j) + " became empty; re-seeded from row " +
              std::to_string(worst_row));
    --counts[assignment[worst_row]];
    assignment[worst_row] = static_cast<std::uint32_t>(j);
    counts[j] = 1;
    centers.row(static_cast<Eigen::Index>(j)) = points.row(static_cast<Eigen::Index>(worst_row));
  }
}

}  // namespace

std::size_t nearest_center(const Matrix& centers, const Eigen::Ref<const Vector>& x) {
  if (centers.cols() != x.size())
    throw ShapeError("query has " + std::to_string(x.size()) + " dims, centers have " +
                     std::to_string(centers.cols()));
  std::size_t best = 0;
  double best_d = std::numeric_limits<double>::infinity();
  for (Eigen::Index j = 0; j < centers.rows(); ++j) {
    const double dd = (centers.row(j).transpose() - x).squaredNorm();
    if (dd < best_d) {
      best_d = dd;
      best = static_cast<std::size_t>(j);
    }
  }
  return best;
}

std::vector<std::uint32_t> assign_nearest(const Matrix& points, const Matrix& centers) {
  if (points.cols() != centers.cols()) throw ShapeError("points and centers differ in dimension");
  return argmin_rows(pairwise_sq_distances(points, centers));
}

double within_cluster_ss(const Matrix& points, const Matrix& centers,
                         const std::vector<std::uint32_t>& assignment) {
  double total = 0.0;
  for (std::size_t i = 0; i < assignment.size(); ++i)
    total += (points.row(static_cast<Eigen::Index>(i)) -
              centers.row(static_cast<Eigen::Index>(assignment[i])))
                 .squaredNorm();
  return total;
}

AnchorSet kmeans(const Matrix& points, std::size_t m, std::uint64_t seed, std::size_t max_iters) {
  check_count(points, m);
  if (max_iters < 1) throw ParamError("k-means max_iters must be >= 1");
  std::mt19937_64 rng(seed);

  AnchorSet out;
  out.centers = kmeanspp_init(points, m, rng);
  out.assignment = assign_nearest(points, out.centers);
  out.wcss_trace.push_back(within_cluster_ss(points, out.centers, out.assignment));

  for (std::size_t iter = 0; iter < max_iters; ++iter) {
    std::vector<std::size_t> counts(m, 0);
    Matrix sums = Matrix::Zero(static_cast<Eigen::Index>(m), points.cols());
    for (std::size_t i = 0; i < out.assignment.size(); ++i) {
      sums.row(out.assignment[i]) += points.row(static_cast<Eigen::Index>(i));
      ++counts[out.assignment[i]];
    }
    for (std::size_t j = 0; j < m; ++j)
      if (counts[j] > 0)
        out.centers.row(static_cast<Eigen::Index>(j)) =
            sums.row(static_cast<Eigen::Index>(j)) / static_cast<double>(counts[j]);
    repair_empty_clusters(points, out.centers, out.assignment, counts);

    auto next = assign_nearest(points, out.centers);
    const bool stable = next == out.assignment;
    out.assignment = std::move(next);
    out.wcss_trace.push_back(within_cluster_ss(points, out.centers, out.assignment));
    if (stable) break;
  }
  return out;
}

AnchorSet random_anchor_set(const Matrix& points, std::size_t m, std::uint64_t seed) {
  check_count(points, m);
  const auto n = static_cast<std::size_t>(points.rows());
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> rows(n);
  std::iota(rows.begin(), rows.end(), std::size_t{0});
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t j = std::uniform_int_distribution<std::size_t>(i, n - 1)(rng);
    std::swap(rows[i], rows[j]);
  }
  AnchorSet out;
  out.centers.resize(static_cast<Eigen::Index>(m), points.cols());
  for (std::size_t i = 0; i < m; ++i)
    out.centers.row(static_cast<Eigen::Index>(i)) = points.row(static_cast<Eigen::Index>(rows[i]));
  out.assignment = assign_nearest(points, out.centers);
  out.wcss_trace.push_back(within_cluster_ss(points, out.centers, out.assignment));
  return out;
}

}  // namespace jpsh
