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

#include "jpsh/data_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <random>
#include <sstream>
#include <string>

#include "binary_io.hpp"
#include "jpsh/error.hpp"

namespace jpsh {
namespace {

constexpr std::string_view kFvecMagic = "JPSHF1";
constexpr std::uint32_t kIdxImageMagic = 0x00000803;
constexpr std::uint32_t kIdxLabelMagic = 0x00000801;

std::vector<std::string> row_ids(std::size_t n) {
  std::vector<std::string> ids(n);
  for (std::size_t i = 0; i < n; ++i) ids[i] = std::to_string(i);
  return ids;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

std::uint32_t read_be32(std::istream& in, const std::filesystem::path& path) {
  std::array<unsigned char, 4> b{};
  in.read(reinterpret_cast<char*>(b.data()), 4);
  if (!in) throw FormatError(path.string() + ": truncated IDX header");
  return (std::uint32_t{b[0]} << 24) | (std::uint32_t{b[1]} << 16) |
         (std::uint32_t{b[2]} << 8) | std::uint32_t{b[3]};
}

FeatureSet load_fvec(const std::filesystem::path& path) {
  detail::BinaryReader in(path);
  in.expect_magic(kFvecMagic);
  const std::uint64_t n = in.u64();
  const std::uint64_t d = in.u64();
  if (n == 0 || d == 0) throw FormatError(path.string() + ": empty matrix in header");
  if (n > (std::uint64_t{1} << 40) / d || n * d * sizeof(float) != in.remaining())
    throw FormatError(path.string() + ": payload size does not match header " +
                      std::to_string(n) + "x" + std::to_string(d));
  FeatureSet fs;
  fs.features.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  std::vector<float> row(d);
  for (std::uint64_t i = 0; i < n; ++i) {
    in.raw(row.data(), d * sizeof(float));
    for (std::uint64_t j = 0; j < d; ++j)
      fs.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = row[j];
  }
  fs.ids = row_ids(n);
  return fs;
}

FeatureSet load_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open " + path.string());
  std::vector<double> values;
  std::size_t d = 0;
  std::size_t n = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view text = trim(line);
    if (text.empty()) continue;
    std::size_t cols = 0;
    std::size_t pos = 0;
    while (true) {
      const std::size_t comma = text.find(',', pos);
      const std::string_view cell =
          trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos
                                                                 : comma - pos));
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
        throw FormatError(path.string() + ":" + std::to_string(line_no) +
                          ": cannot parse \"" + std::string(cell) + "\"");
      values.push_back(v);
      ++cols;
      if (comma == std::string_view::npos) break;
      pos = comma + 1;
    }
    if (n == 0) {
      d = cols;
    } else if (cols != d) {
      throw DataError(path.string() + ": row " + std::to_string(n) + " has " +
                      std::to_string(cols) + " columns, expected " + std::to_string(d));
    }
    ++n;
  }
  if (n == 0) throw FormatError(path.string() + ": no rows");
  FeatureSet fs;
  fs.features = Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                               Eigen::RowMajor>>(
      values.data(), static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  fs.ids = row_ids(n);
  return fs;
}

FeatureSet load_idx_images(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  const std::uint32_t magic = read_be32(in, path);
  if (magic != kIdxImageMagic)
    throw FormatError(path.string() + ": not an IDX3 unsigned-byte image file");
  const std::uint32_t n = read_be32(in, path);
  const std::uint32_t rows = read_be32(in, path);
  const std::uint32_t cols = read_be32(in, path);
  if (n == 0 || rows == 0 || cols == 0) throw FormatError(path.string() + ": empty IDX file");
  const std::size_t d = std::size_t{rows} * cols;
  std::vector<unsigned char> pixels(std::size_t{n} * d);
  in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
  if (!in) throw FormatError(path.string() + ": truncated IDX payload");
  if (in.peek() != std::char_traits<char>::eof())
    throw FormatError(path.string() + ": trailing bytes after IDX payload");
  FeatureSet fs;
  fs.features.resize(n, static_cast<Eigen::Index>(d));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j)
      fs.features(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          pixels[i * d + j] / 255.0;
  fs.ids = row_ids(n);
  return fs;
}

void normalize_row(std::vector<std::uint32_t>& row) {
  std::sort(row.begin(), row.end());
  row.erase(std::unique(row.begin(), row.end()), row.end());
}

}  // namespace

void FeatureSet::validate() const {
  if (features.rows() < 1 || features.cols() < 1)
    throw DataError("feature set must have n >= 1 and d >= 1");
  if (ids.size() != size())
    throw DataError("feature set has " + std::to_string(ids.size()) + " ids for " +
                    std::to_string(size()) + " rows");
  for (Eigen::Index i = 0; i < features.rows(); ++i)
    for (Eigen::Index j = 0; j < features.cols(); ++j)
      if (!std::isfinite(features(i, j)))
        throw DataError("non-finite value at row " + std::to_string(i) + ", col " +
                        std::to_string(j));
  if (labels && labels->size() != size())
    throw DataError("label file has " + std::to_string(labels->size()) + " rows, features have " +
                    std::to_string(size()));
}

FeatureSet FeatureSet::subset(std::span<const std::size_t> rows) const {
  FeatureSet out;
  out.features.resize(static_cast<Eigen::Index>(rows.size()), features.cols());
  out.ids.reserve(rows.size());
  if (labels) out.labels.emplace().reserve(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    out.features.row(static_cast<Eigen::Index>(r)) =
        features.row(static_cast<Eigen::Index>(rows[r]));
    out.ids.push_back(ids[rows[r]]);
    if (labels) out.labels->push_back((*labels)[rows[r]]);
  }
  return out;
}

FeatureFormat parse_feature_format(std::string_view name) {
  if (name == "fvec-binary" || name == "fvec" || name == "jpshf") return FeatureFormat::kFvecBinary;
  if (name == "csv") return FeatureFormat::kCsv;
  if (name == "idx-image" || name == "idx") return FeatureFormat::kIdxImage;
  throw ParamError("unknown feature format \"" + std::string(name) +
                   "\" (expected fvec-binary, csv or idx-image)");
}

std::string_view to_string(FeatureFormat format) {
  switch (format) {
    case FeatureFormat::kFvecBinary: return "fvec-binary";
    case FeatureFormat::kCsv: return "csv";
    case FeatureFormat::kIdxImage: return "idx-image";
  }
  return "?";
}

FeatureFormat guess_feature_format(const std::filesystem::path& path) {
  const std::string name = path.filename().string();
  const std::string ext = path.extension().string();
  if (ext == ".csv" || ext == ".txt") return FeatureFormat::kCsv;
  if (name.find("idx3") != std::string::npos || ext == ".idx") return FeatureFormat::kIdxImage;
  return FeatureFormat::kFvecBinary;
}

FeatureSet load_features(const std::filesystem::path& path, FeatureFormat format) {
  if (!std::filesystem::exists(path)) throw Error("no such file: " + path.string());
  FeatureSet fs;
  switch (format) {
    case FeatureFormat::kFvecBinary: fs = load_fvec(path); break;
    case FeatureFormat::kCsv: fs = load_csv(path); break;
    case FeatureFormat::kIdxImage: fs = load_idx_images(path); break;
  }
  fs.validate();
  return fs;
}

void save_features(const FeatureSet& fs, const std::filesystem::path& path,
                   FeatureFormat format) {
  fs.validate();
  switch (format) {
    case FeatureFormat::kFvecBinary: {
      detail::BinaryWriter out(path);
      out.magic(kFvecMagic);
      out.u64(fs.size());
      out.u64(fs.dim());
      for (Eigen::Index i = 0; i < fs.features.rows(); ++i)
        for (Eigen::Index j = 0; j < fs.features.cols(); ++j)
          out.f32(static_cast<float>(fs.features(i, j)));
      out.close();
      return;
    }
    case FeatureFormat::kCsv: {
      std::ofstream out(path);
      if (!out) throw Error("cannot open " + path.string() + " for writing");
      std::array<char, 32> buf{};
      for (Eigen::Index i = 0; i < fs.features.rows(); ++i) {
        for (Eigen::Index j = 0; j < fs.features.cols(); ++j) {
          if (j) out << ',';
          const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), fs.features(i, j));
          out.write(buf.data(), res.ptr - buf.data());
        }
        out << '\n';
      }
      if (!out) throw Error("write failed: " + path.string());
      return;
    }
    case FeatureFormat::kIdxImage:
      throw FormatError("writing IDX images is not supported");
  }
}

Labels load_labels(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  // IDX1 label files start with 0x00000801.
  std::array<unsigned char, 4> head{};
  in.read(reinterpret_cast<char*>(head.data()), 4);
  if (in && head[0] == 0 && head[1] == 0 && head[2] == 8 && head[3] == 1) {
    const std::uint32_t n = read_be32(in, path);
    Labels labels(n);
    for (std::uint32_t i = 0; i < n; ++i) {
      const int c = in.get();
      if (c == std::char_traits<char>::eof()) throw FormatError(path.string() + ": truncated IDX1");
      labels[i] = {static_cast<std::uint32_t>(c)};
    }
    return labels;
  }
  in.clear();
  in.seekg(0);
  Labels labels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::vector<std::uint32_t> row;
    std::string_view text = trim(line);
    while (!text.empty()) {
      const std::size_t comma = text.find(',');
      const std::string_view cell = trim(text.substr(0, comma));
      std::uint32_t v = 0;
      const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
      if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
        throw FormatError(path.string() + ":" + std::to_string(line_no) + ": bad label \"" +
                          std::string(cell) + "\"");
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      text.remove_prefix(comma + 1);
    }
    normalize_row(row);
    labels.push_back(std::move(row));
  }
  return labels;
}

void save_labels(const Labels& labels, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  for (const auto& row : labels) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
  if (!out) throw Error("write failed: " + path.string());
}

void attach_labels(FeatureSet& fs, Labels labels) {
  if (labels.size() != fs.size())
    throw DataError("label file has " + std::to_string(labels.size()) + " rows, features have " +
                    std::to_string(fs.size()));
  for (auto& row : labels) normalize_row(row);
  fs.labels = std::move(labels);
}

std::vector<std::size_t> unlabeled_rows(const FeatureSet& fs) {
  std::vector<std::size_t> rows;
  if (!fs.labels) return rows;
  for (std::size_t i = 0; i < fs.labels->size(); ++i)
    if ((*fs.labels)[i].empty()) rows.push_back(i);
  return rows;
}

SplitStrategy parse_split_strategy(std::string_view name) {
  if (name == "per-class" || name == "per-class-stratified" || name == "stratified")
    return SplitStrategy::kPerClassStratified;
  if (name == "uniform") return SplitStrategy::kUniform;
  throw ParamError("unknown split strategy \"" + std::string(name) + "\"");
}

std::string_view to_string(SplitStrategy strategy) {
  return strategy == SplitStrategy::kUniform ? "uniform" : "per-class-stratified";
}

std::pair<FeatureSet, FeatureSet> split(const FeatureSet& fs, const SplitSpec& spec) {
  if (spec.test_per_class < 1) throw ParamError("test_per_class must be >= 1");
  std::mt19937_64 rng(spec.seed);
  std::vector<std::uint8_t> is_test(fs.size(), 0);

  if (spec.strategy == SplitStrategy::kPerClassStratified) {
    if (!fs.labels) throw SplitError("per-class split needs labels");
    std::map<std::uint32_t, std::vector<std::size_t>> by_class;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      const auto& row = (*fs.labels)[i];
      if (row.size() != 1)
        throw SplitError("per-class split needs exactly one label per sample; row " +
                         std::to_string(i) + " has " + std::to_string(row.size()));
      by_class[row.front()].push_back(i);
    }
    for (auto& [label, rows] : by_class) {
      if (rows.size() < spec.test_per_class)
        throw SplitError("class " + std::to_string(label) + " has " +
                         std::to_string(rows.size()) + " samples, fewer than test_per_class=" +
                         std::to_string(spec.test_per_class));
      std::shuffle(rows.begin(), rows.end(), rng);
      for (std::size_t t = 0; t < spec.test_per_class; ++t) is_test[rows[t]] = 1;
    }
  } else {
    if (spec.test_per_class > fs.size())
      throw SplitError("requested " + std::to_string(spec.test_per_class) +
                       " test rows from " + std::to_string(fs.size()));
    std::vector<std::size_t> rows(fs.size());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    std::shuffle(rows.begin(), rows.end(), rng);
    for (std::size_t t = 0; t < spec.test_per_class; ++t) is_test[rows[t]] = 1;
  }

  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
  for (std::size_t i = 0; i < fs.size(); ++i) (is_test[i] ? test_rows : train_rows).push_back(i);
  return {fs.subset(train_rows), fs.subset(test_rows)};
}

CenteredFeatures center(const FeatureSet& fs) {
  CenteredFeatures out;
  out.mean = fs.features.colwise().mean().transpose();
  out.features = apply_center(fs, out.mean);
  return out;
}

FeatureSet apply_center(const FeatureSet& fs, const Vector& mean) {
  if (static_cast<std::size_t>(mean.size()) != fs.dim())
    throw ShapeError("mean has " + std::to_string(mean.size()) + " entries for d=" +
                     std::to_string(fs.dim()));
  FeatureSet out = fs;
  out.features.rowwise() -= mean.transpose();
  return out;
}

}  // namespace jpsh
