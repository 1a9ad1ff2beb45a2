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

#include "jpsh/metrics.hpp"

#include <algorithm>
#include <fstream>
#include <string>

#include "jpsh/error.hpp"
#include "jpsh/index.hpp"

namespace jpsh {

bool relevant(std::span<const std::uint32_t> query_labels,
              std::span<const std::uint32_t> db_labels) {
  if (query_labels.empty() || db_labels.empty())
    throw LabelError("relevance needs labels on both sides");
  auto a = query_labels.begin();
  auto b = db_labels.begin();
  while (a != query_labels.end() && b != db_labels.end()) {
    if (*a == *b) return true;
    if (*a < *b) ++a; else ++b;
  }
  return false;
}

double average_precision(std::span<const std::uint8_t> flags) {
  std::size_t hits = 0;
  double sum = 0.0;
  for (std::size_t p = 0; p < flags.size(); ++p)
    if (flags[p]) sum += static_cast<double>(++hits) / static_cast<double>(p + 1);
  return hits == 0 ? 0.0 : sum / static_cast<double>(hits);
}

double truncated_average_precision(std::span<const std::uint8_t> flags, std::size_t cutoff) {
  return average_precision(flags.first(std::min(cutoff, flags.size())));
}

EvalReport evaluate(const CodeSet& queries, const Labels& query_labels, const CodeSet& db,
                    const Labels& db_labels, const EvalOptions& options) {
  if (queries.empty()) throw DataError("evaluation needs at least one query");
  for (const auto n : options.top_ns)
    if (n == 0) throw ParamError("top-N cutoffs must be >= 1");
  if (db.empty()) throw EmptyIndexError("evaluation needs a non-empty database");
  if (queries.bits() != db.bits())
    throw ShapeError("query codes have " + std::to_string(queries.bits()) +
                     " bits, database codes have " + std::to_string(db.bits()));
  if (query_labels.size() != queries.size() || db_labels.size() != db.size())
    throw LabelError("label count does not match code count");
  for (std::size_t i = 0; i < query_labels.size(); ++i)
    if (query_labels[i].empty()) throw LabelError("query " + queries.id(i) + " has no labels");
  for (std::size_t i = 0; i < db_labels.size(); ++i)
    if (db_labels[i].empty()) throw LabelError("database item " + db.id(i) + " has no labels");

  const std::uint32_t bits = static_cast<std::uint32_t>(db.bits());
  const std::size_t n_db = db.size();
  const HammingIndex index(db);

  EvalReport report;
  report.ap_cutoff = options.ap_cutoff;
  report.radius = options.radius;
  report.queries = queries.size();
  report.database = n_db;

  std::vector<double> prec_sum(options.top_ns.size(), 0.0);
  std::vector<double> rec_sum(options.top_ns.size(), 0.0);
  // Pooled counts per radius: retrieved items and relevant retrieved items.
  std::vector<double> pooled_retrieved(bits + 1, 0.0);
  std::vector<double> pooled_hits(bits + 1, 0.0);
  double pooled_relevant = 0.0;
  double map_sum = 0.0;
  double ap_cut_sum = 0.0;
  double radius_sum = 0.0;

  std::vector<std::uint8_t> flags(n_db);
  for (std::size_t q = 0; q < queries.size(); ++q) {
    const auto dist = index.distances(queries.code(q));
    const auto order = rank_by_distance(dist, bits);
    std::size_t total_relevant = 0;
    std::vector<double> hits_at(bits + 1, 0.0);
    std::vector<double> count_at(bits + 1, 0.0);
    for (std::size_t r = 0; r < n_db; ++r) {
      const std::size_t p = order[r];
      flags[r] = relevant(query_labels[q], db_labels[p]) ? 1 : 0;
      total_relevant += flags[r];
      count_at[dist[p]] += 1.0;
      hits_at[dist[p]] += flags[r];
    }
    if (total_relevant == 0) ++report.queries_without_relevant;
    map_sum += average_precision(flags);
    ap_cut_sum += truncated_average_precision(flags, options.ap_cutoff);

    std::vector<std::size_t> cum(n_db + 1, 0);
    for (std::size_t r = 0; r < n_db; ++r) cum[r + 1] = cum[r] + flags[r];
    for (std::size_t i = 0; i < options.top_ns.size(); ++i) {
      const std::size_t n = std::min(options.top_ns[i], n_db);
      prec_sum[i] += static_cast<double>(cum[n]) / static_cast<double>(n);
      if (total_relevant > 0)
        rec_sum[i] += static_cast<double>(cum[n]) / static_cast<double>(total_relevant);
    }

    double retrieved = 0.0;
    double retrieved_hits = 0.0;
    for (std::uint32_t d = 0; d <= bits; ++d) {
      retrieved += count_at[d];
      retrieved_hits += hits_at[d];
      pooled_retrieved[d] += retrieved;
      pooled_hits[d] += retrieved_hits;
      if (d == options.radius && retrieved > 0.0) radius_sum += retrieved_hits / retrieved;
    }
    pooled_relevant += static_cast<double>(total_relevant);
  }

  const double nq = static_cast<double>(queries.size());
  report.map = map_sum / nq;
  report.ap_at_cutoff = ap_cut_sum / nq;
  report.radius_precision = radius_sum / nq;
  for (std::size_t i = 0; i < options.top_ns.size(); ++i) {
    report.precision_at[options.top_ns[i]] = prec_sum[i] / nq;
    report.recall_at[options.top_ns[i]] = rec_sum[i] / nq;
  }
  for (std::uint32_t d = 0; d <= bits; ++d) {
    PrPoint pt;
    pt.radius = d;
    pt.precision = pooled_retrieved[d] > 0.0 ? pooled_hits[d] / pooled_retrieved[d] : 0.0;
    pt.recall = pooled_relevant > 0.0 ? pooled_hits[d] / pooled_relevant : 0.0;
    report.pr_curve.push_back(pt);
  }
  return report;
}

namespace {

std::ofstream open_csv(const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.precision(17);
  return out;
}

}  // namespace

void write_topn_csv(const EvalReport& report, const std::filesystem::path& path) {
  auto out = open_csv(path);
  out << "N,precision,recall\n";
  for (const auto& [n, p] : report.precision_at) out << n << ',' << p << ',' << report.recall_at.at(n) << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

void write_pr_csv(const EvalReport& report, const std::filesystem::path& path) {
  auto out = open_csv(path);
  out << "radius,precision,recall\n";
  for (const auto& pt : report.pr_curve)
    out << pt.radius << ',' << pt.precision << ',' << pt.recall << '\n';
  if (!out) throw Error("write failed: " + path.string());
}

}  // namespace jpsh
