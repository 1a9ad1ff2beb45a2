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

#include "commands.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "jpsh/encoder.hpp"
#include "jpsh/experiment.hpp"
#include "jpsh/index.hpp"
#include "jpsh/log.hpp"
#include "jpsh/model_io.hpp"

namespace jpsh::cli {
namespace fs = std::filesystem;

namespace {

const std::vector<std::string_view> kDataKeys = {"data", "format", "labels"};
const std::vector<std::string_view> kHyperKeys = {
    "bits", "m",     "k",    "psi",          "l1",          "l2",     "l3",    "iters",
    "eps",  "tol",   "ridge", "kmeans_iters", "anchor_init", "center", "theta", "delta"};
const std::vector<std::string_view> kSplitKeys = {"test_data", "test_labels", "test_per_class",
                                                  "split", "split_seed"};
const std::vector<std::string_view> kEvalKeys = {"seeds", "top_ns", "ap_cutoff", "radius",
                                                 "out_dir"};

std::vector<std::string_view> join(std::initializer_list<std::vector<std::string_view>> parts) {
  std::vector<std::string_view> out;
  for (const auto& part : parts) out.insert(out.end(), part.begin(), part.end());
  return out;
}

std::string fmt(double v, int precision = 4) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(precision) << v;
  return os.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

void write_manifest(const Settings& s, std::string_view command, const fs::path& path) {
  for (const auto& c : commands())
    if (c.name == command) write_text(path, s.manifest(c.keys));
}

fs::path output_dir(const Settings& s) {
  const fs::path dir = s.str("out_dir");
  fs::create_directories(dir);
  return dir;
}

// Encodes with whichever model kind the file holds.
CodeSet encode_with_model(const fs::path& model_path, const FeatureSet& data) {
  if (peek_model_kind(model_path) == ModelKind::kLsh)
    return lsh_encode_batch(load_lsh_model(model_path), data);
  return encode_batch(load_jpsh_model(model_path), data);
}

Method method_of(const JpshModel& model) {
  switch (model.hyper.mode) {
    case Mode::kJshOnly:
      return Method::kJshOnly;
    case Mode::kPshOnly:
      return Method::kPshOnly;
    case Mode::kJpsh:
      break;
  }
  return model.hyper.anchor_init == AnchorInit::kRandom ? Method::kJpshRandomAnchors
                                                        : Method::kJpsh;
}

std::pair<FeatureSet, FeatureSet> train_test(const Settings& s) {
  FeatureSet all = load_dataset(s, "data", "labels");
  if (s.maybe_str("test_data")) {
    FeatureSet test = load_dataset(s, "test_data", "test_labels");
    return {std::move(all), std::move(test)};
  }
  return split(all, split_spec_from(s));
}

void write_curves(const std::vector<CellReport>& cells, const fs::path& dir) {
  const fs::path curves = dir / "curves";
  fs::create_directories(curves);
  for (const auto& cell : cells) {
    for (const auto& run : cell.runs) {
      const std::string stem = std::string(to_string(cell.method)) + "_" +
                               std::to_string(cell.bits) + "b_seed" + std::to_string(run.seed);
      write_topn_csv(run.report, curves / (stem + "_topn.csv"));
      write_pr_csv(run.report, curves / (stem + "_pr.csv"));
    }
  }
}

std::vector<double> maps_of(const CellReport& cell) {
  std::vector<double> out;
  for (const auto& run : cell.runs) out.push_back(run.report.map);
  return out;
}

void print_cells(const std::vector<CellReport>& cells, std::ostream& out) {
  out << "method\tbits\truns\tmAP\tstddev\tradius_precision\n";
  for (const auto& cell : cells) {
    const auto m = summarize(maps_of(cell));
    std::vector<double> rp;
    for (const auto& run : cell.runs) rp.push_back(run.report.radius_precision);
    out << to_string(cell.method) << '\t' << cell.bits << '\t' << cell.runs.size() << '\t'
        << fmt(m.mean) << '\t' << fmt(m.stddev) << '\t' << fmt(summarize(rp).mean) << '\n';
  }
}

std::vector<CellReport> run_grid(const Settings& s, const std::vector<Method>& methods) {
  auto [train_set, test_set] = train_test(s);
  ExperimentRunner runner(std::move(train_set), std::move(test_set), eval_options_from(s));
  const auto bits_list = s.uint_list("bits");
  const auto seeds = s.uint_list("seeds");
  std::vector<CellReport> cells;
  for (const auto method : methods) {
    for (const auto bits : bits_list) {
      CellReport cell;
      cell.method = method;
      cell.bits = bits;
      for (const auto seed : seeds) {
        Hyperparams base = hyperparams_from(s, bits);
        base.seed = seed;
        log::info(std::string(to_string(method)) + " bits=" + std::to_string(bits) +
                  " seed=" + std::to_string(seed));
        cell.runs.push_back(runner.run(method, base));
      }
      cells.push_back(std::move(cell));
    }
  }
  return cells;
}

void write_report(const Settings& s, std::string_view command, const std::vector<CellReport>& cells) {
  const fs::path dir = output_dir(s);
  write_text(dir / "report.json", to_json(cells) + "\n");
  write_curves(cells, dir);
  write_manifest(s, command, dir / "manifest.toml");
}

}  // namespace

const std::vector<Command>& commands() {
  static const std::vector<Command> table = {
      {"train", "learn a model from a feature file",
       join({kDataKeys, kHyperKeys, {"mode", "seed", "out_dir", "trace_timing"}}), cmd_train},
      {"encode", "encode a feature file into packed codes",
       {"model", "data", "format", "codes"}, cmd_encode},
      {"search", "rank database codes for each query vector",
       {"model", "codes", "query", "query_format", "top_n", "radius", "buckets"},
       cmd_search},
      {"eval", "train and evaluate methods over bit lengths and seeds",
       join({kDataKeys, kSplitKeys, kHyperKeys, kEvalKeys, {"methods", "model"}}), cmd_eval},
      {"ablate", "compare JSH_ONLY, PSH_ONLY and JPSH",
       join({kDataKeys, kSplitKeys, kHyperKeys, kEvalKeys}), cmd_ablate},
  };
  return table;
}

void check_keys_apply(const Command& command, const Settings& settings) {
  for (const auto& key : settings.given_keys()) {
    if (std::find(command.keys.begin(), command.keys.end(), key) == command.keys.end())
      throw ConfigError("setting \"" + key + "\" does not apply to " + std::string(command.name));
  }
}

int cmd_train(const Settings& s, std::ostream& out) {
  const Hyperparams hyper = hyperparams_from(s);
  const FeatureSet data = load_dataset(s, "data", "labels");
  const TrainResult result = train(data, hyper);
  const fs::path dir = output_dir(s);
  save_model(result.model, dir / "model.jpshm");
  result.trace.write_csv(dir / "trace.csv", s.boolean("trace_timing"));
  write_manifest(s, "train", dir / "manifest.toml");

  const auto& last = result.trace.entries.back();
  out << "iterations\t" << result.trace.entries.size()
      << (result.trace.converged ? " (converged)" : "") << '\n';
  out << "objective\t" << fmt(last.objective, 6) << '\n';
  out << "personalized_fit\t" << fmt(last.terms.personalized_fit, 6) << '\n';
  out << "pairwise_fit\t" << fmt(last.terms.pairwise_fit, 6) << '\n';
  out << "personalized_sparsity\t" << fmt(last.terms.personalized_sparsity, 6) << '\n';
  out << "network_lasso\t" << fmt(last.terms.network_lasso, 6) << '\n';
  out << "pairwise_sparsity\t" << fmt(last.terms.pairwise_sparsity, 6) << '\n';
  out << "model\t" << (dir / "model.jpshm").string() << '\n';
  return 0;
}

int cmd_encode(const Settings& s, std::ostream& out) {
  const fs::path model = require_existing(s, "model");
  const FeatureSet data = load_dataset(s, "data", "labels");
  const CodeSet codes = encode_with_model(model, data);
  const fs::path target = s.str("codes");
  if (target.has_parent_path()) fs::create_directories(target.parent_path());
  save_codes(codes, target);
  write_manifest(s, "encode", fs::path(target.string() + ".manifest.toml"));
  out << "encoded\t" << codes.size() << " x " << codes.bits() << " bits\t" << target.string()
      << '\n';
  return 0;
}

int cmd_search(const Settings& s, std::ostream& out) {
  const fs::path model = require_existing(s, "model");
  const fs::path db_path = require_existing(s, "codes");
  const FeatureSet queries = load_dataset(s, "query", "labels", "query_format");
  const CodeSet query_codes = encode_with_model(model, queries);
  // An explicit radius switches from top-N ranking to a radius lookup.
  const bool by_radius = s.given("radius");
  const HammingIndex index(load_codes(db_path), by_radius && s.boolean("buckets"));
  if (query_codes.bits() != index.codes().bits())
    throw ConfigError("model produces " + std::to_string(query_codes.bits()) +
                      "-bit codes but " + db_path.string() + " holds " +
                      std::to_string(index.codes().bits()) + "-bit codes");

  for (std::size_t q = 0; q < query_codes.size(); ++q) {
    const SearchResult result =
        by_radius
            ? index.search_radius(query_codes.code(q),
                                  static_cast<std::uint32_t>(s.integer("radius")))
            : index.search_ranked(query_codes.code(q), static_cast<std::size_t>(s.integer("top_n")));
    if (query_codes.size() > 1) out << "# query " << query_codes.id(q) << '\n';
    for (std::size_t r = 0; r < result.size(); ++r)
      out << result.ids[r] << '\t' << result.distances[r] << '\n';
  }
  return 0;
}

int cmd_eval(const Settings& s, std::ostream& out) {
  std::vector<CellReport> cells;
  if (s.maybe_str("model")) {
    const fs::path model_path = require_existing(s, "model");
    auto [train_set, test_set] = train_test(s);
    if (test_set.size() == 0) throw DataError("the test set is empty");
    if (!test_set.labels) throw LabelError("the test set has no labels");
    const CodeSet db = encode_with_model(model_path, train_set);
    const CodeSet queries = encode_with_model(model_path, test_set);
    CellReport cell;
    RunOutcome run;
    if (peek_model_kind(model_path) == ModelKind::kLsh) {
      const LshModel m = load_lsh_model(model_path);
      cell.method = Method::kLsh;
      run.seed = m.seed;
    } else {
      const JpshModel m = load_jpsh_model(model_path);
      cell.method = method_of(m);
      run.seed = m.hyper.seed;
    }
    cell.bits = db.bits();
    run.method = cell.method;
    run.bits = cell.bits;
    run.report = evaluate(queries, *test_set.labels, db,
                          train_set.labels ? *train_set.labels : Labels{}, eval_options_from(s));
    cell.runs.push_back(std::move(run));
    cells.push_back(std::move(cell));
  } else {
    std::vector<Method> methods;
    for (const auto& name : s.list("methods")) methods.push_back(parse_method(name));
    if (methods.empty()) throw ConfigError("--methods must not be empty");
    cells = run_grid(s, methods);
  }
  write_report(s, "eval", cells);
  print_cells(cells, out);
  return 0;
}

int cmd_ablate(const Settings& s, std::ostream& out) {
  const std::vector<Method> methods = {Method::kJshOnly, Method::kPshOnly, Method::kJpsh};
  const auto cells = run_grid(s, methods);
  write_report(s, "ablate", cells);

  const auto bits_list = s.uint_list("bits");
  out << "method";
  for (const auto bits : bits_list) out << '\t' << bits << " bits";
  out << '\n';
  for (const auto method : methods) {
    out << to_string(method);
    for (const auto& cell : cells) {
      if (cell.method != method) continue;
      const auto m = summarize(maps_of(cell));
      out << '\t' << fmt(m.mean) << " +/- " << fmt(m.stddev);
    }
    out << '\n';
  }
  return 0;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const SolverError*>(&e)) return 3;
  if (dynamic_cast<const DataError*>(&e) || dynamic_cast<const FormatError*>(&e) ||
      dynamic_cast<const SplitError*>(&e) || dynamic_cast<const LabelError*>(&e) ||
      dynamic_cast<const ShapeError*>(&e) || dynamic_cast<const EmptyIndexError*>(&e))
    return 4;
  return 2;
}

}  // namespace jpsh::cli
