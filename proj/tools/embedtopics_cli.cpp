// Copyright 2026 The embedtopics Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command line front end: preprocess, fit, topics, eval, run, sweep, bench.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "embedtopics/bench.hpp"
#include "embedtopics/clustering.hpp"
#include "embedtopics/corpus.hpp"
#include "embedtopics/error.hpp"
#include "embedtopics/evaluation.hpp"
#include "embedtopics/pipeline.hpp"
#include "embedtopics/topics.hpp"

namespace et = embedtopics;

namespace {

struct FlagSpec {
  const char* key;
  const char* help;
};

// Long flag names double as config-file keys.
constexpr FlagSpec kCorpusFlags[] = {
    {"corpus", "corpus directory (20ng) or file (lines)"},
    {"corpus-format", "20ng | lines (default 20ng)"},
    {"split", "lines format: file of 1-based test line numbers"},
    {"stopwords", "stopword file (default: built-in English list)"},
    {"min-df", "minimum training document frequency (default 5)"},
};

constexpr FlagSpec kModelFlags[] = {
    {"embeddings", "embedding file"},
    {"embedding-format", "glove_text | word2vec_text | word2vec_binary (default glove_text)"},
    {"embedding-name", "label used in provenance (default: file stem)"},
    {"algorithm", "km | sk | kd | gmm (default km)"},
    {"k", "number of clusters (default 20)"},
    {"top-j", "words per topic (default 10)"},
    {"weighting", "clustering weights: uniform | tf | tf_idf | tf_df (default uniform)"},
    {"reranking", "none | tf | tf_idf | tf_df (default none)"},
    {"window", "rerank candidate window (default 100)"},
    {"pca-dim", "PCA target dimension, or none (default none)"},
    {"seeds", "comma-separated seeds (default 0,1,2,3,4)"},
    {"npmi-window", "NPMI sliding window, 0 for whole documents (default 10)"},
    {"max-iter", "iteration cap (default 300)"},
    {"tol", "convergence tolerance (default 1e-4 centroid shift, 1e-5 for gmm)"},
};

class ConfigFlags {
 public:
  void attach(CLI::App* app, bool with_model) {
    app->add_option("--config", config_file_, "key = value config file; flags override it");
    for (const auto& f : kCorpusFlags) add(app, f);
    if (with_model) {
      for (const auto& f : kModelFlags) add(app, f);
    }
    app->add_option("--output", values_["output"], "output directory (default out)");
  }

  et::RunConfig resolve() const {
    et::RunConfig config;
    if (!config_file_.empty()) config = et::load_config(config_file_, config);
    for (const auto& [key, value] : values_) {
      if (value) et::apply_setting(config, key, *value);
    }
    return config;
  }

 private:
  void add(CLI::App* app, const FlagSpec& f) {
    app->add_option(std::string("--") + f.key, values_[f.key], f.help);
  }

  std::string config_file_;
  std::map<std::string, std::optional<std::string>> values_;
};

void print_json(const nlohmann::json& j) { std::cout << j.dump(1) << '\n'; }

int emit_error(std::string_view code, const std::string& message, const std::string& context) {
  nlohmann::json j{{"error", code}, {"message", message}};
  if (!context.empty()) j["context"] = context;
  std::cerr << j.dump() << '\n';
  return code == "UsageError" ? 2 : 1;
}

et::FitOptions fit_options(const et::RunConfig& config, std::uint64_t seed) {
  et::FitOptions options;
  options.k = config.k;
  options.seed = seed;
  options.max_iter = config.max_iter;
  options.tol = config.tol;
  return options;
}

void cmd_preprocess(const et::RunConfig& config) {
  et::PipelineCache cache;
  const auto& data = cache.corpus(config);
  et::save_vocabulary(config.output_dir / "vocab.tsv", data.vocab);
  std::vector<et::Document> all = data.train;
  all.insert(all.end(), data.test.begin(), data.test.end());
  et::save_documents(config.output_dir / "documents.tsv", all);
  print_json({{"train_docs", data.train.size()},
              {"test_docs", data.test.size()},
              {"vocab_size", data.vocab.size()},
              {"total_tokens", data.vocab.total_tokens()}});
}

void cmd_fit(const et::RunConfig& config) {
  et::PipelineCache cache;
  const et::PreparedInputs inputs = et::prepare_inputs(config, cache);
  nlohmann::json summary = nlohmann::json::array();
  for (std::uint64_t seed : config.seeds) {
    const auto model = et::fit(config.algorithm, inputs.table.vectors, inputs.weights.weights,
                               fit_options(config, seed));
    et::save_model(config.output_dir / "models" / (std::to_string(seed) + ".json"), model);
    summary.push_back({{"seed", seed},
                       {"iterations", model.iterations_run},
                       {"converged", model.converged},
                       {"objective", model.objective_trace.back()}});
  }
  print_json(summary);
}

void cmd_topics(const et::RunConfig& config, const std::filesystem::path& models_dir) {
  et::PipelineCache cache;
  const et::PreparedInputs inputs = et::prepare_inputs(config, cache);
  const auto dir = models_dir.empty() ? config.output_dir / "models" : models_dir;
  for (std::uint64_t seed : config.seeds) {
    const std::string tag = std::to_string(seed);
    const auto model = et::load_model(dir / (tag + ".json"));
    if (model.kind != config.algorithm || model.k != config.k) {
      throw et::Error(et::ErrorCode::kProvenanceMismatch,
                      "model " + tag + " was fitted with a different algorithm or k");
    }
    const auto topics = et::topics_for_model(config, inputs, model);
    if (inputs.rerank_weights) {
      et::save_topics(config.output_dir / "topics" / (tag + ".proximity.json"),
                      config.output_dir / "topics" / (tag + ".proximity.txt"), topics.proximity);
    }
    et::save_topics(config.output_dir / "topics" / (tag + ".json"),
                    config.output_dir / "topics" / (tag + ".txt"), topics.final_topics);
  }
}

void cmd_eval(const et::RunConfig& config, const std::filesystem::path& topics_dir) {
  et::PipelineCache cache;
  const auto& index = cache.index(config);
  const auto dir = topics_dir.empty() ? config.output_dir / "topics" : topics_dir;
  std::vector<et::TopicSet> sets;
  for (std::uint64_t seed : config.seeds) sets.push_back(et::load_topics(dir / (std::to_string(seed) + ".json")));
  const et::NpmiReport report = et::evaluate_run(sets, index);
  std::ostringstream js;
  et::write_report_json(js, report);
  std::filesystem::create_directories(config.output_dir);
  std::ofstream(config.output_dir / "report.json", std::ios::binary) << js.str();
  std::ofstream(config.output_dir / "results.csv", std::ios::binary)
      << et::results_csv_header() << '\n' << et::results_csv_row(report) << '\n';
  std::cout << et::results_csv_header() << '\n' << et::results_csv_row(report) << '\n';
}

void cmd_run(const et::RunConfig& config) {
  const et::RunResult result = et::run(config);
  std::cout << et::results_csv_header() << '\n' << et::results_csv_row(result.report) << '\n';
}

void cmd_sweep(const et::RunConfig& config, const std::string& axis, const std::vector<std::string>& values) {
  et::PipelineCache cache;
  const auto cells = et::sweep(config, et::parse_sweep_axis(axis), values, cache);
  const auto parsed = et::parse_sweep_axis(axis);
  std::cout << et::sweep_csv_header() << '\n';
  for (const auto& cell : cells) std::cout << et::sweep_csv_row(config, parsed, cell) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"embedtopics: topic models from clustered word embeddings"};
  app.require_subcommand(1);

  ConfigFlags preprocess_flags;
  auto* preprocess = app.add_subcommand("preprocess", "tokenize the corpus and write vocab.tsv, documents.tsv");
  preprocess_flags.attach(preprocess, false);

  ConfigFlags fit_flags;
  auto* fit = app.add_subcommand("fit", "fit one clustering per seed and write models/<seed>.json");
  fit_flags.attach(fit, true);

  ConfigFlags topics_flags;
  std::filesystem::path models_dir;
  auto* topics = app.add_subcommand("topics", "extract (and rerank) top-J words from fitted models");
  topics_flags.attach(topics, true);
  topics->add_option("--models", models_dir, "directory of <seed>.json models (default <output>/models)");

  ConfigFlags eval_flags;
  std::filesystem::path topics_dir;
  auto* eval = app.add_subcommand("eval", "score topics/<seed>.json with NPMI on the test split");
  eval_flags.attach(eval, true);
  eval->add_option("--topics", topics_dir, "directory of <seed>.json topic sets (default <output>/topics)");

  ConfigFlags run_flags;
  auto* run = app.add_subcommand("run", "full pipeline for every seed");
  run_flags.attach(run, true);

  ConfigFlags sweep_flags;
  std::string axis;
  std::vector<std::string> values;
  auto* sweep = app.add_subcommand("sweep", "one run per value of an axis; writes sweep.csv");
  sweep_flags.attach(sweep, true);
  sweep->add_option("--axis", axis, "pca_dims | algorithms | weight_schemes | rerank_schemes")->required();
  sweep->add_option("--values", values, "axis values, comma or space separated")->required()->delimiter(',');

  std::string bench_axis = "n";
  std::vector<std::size_t> bench_sizes;
  std::string bench_algorithm = "km";
  std::size_t bench_reps = 5;
  et::ScalingBase bench_base;
  std::filesystem::path bench_output;
  auto* bench = app.add_subcommand("bench", "time pinned-iteration fits on synthetic data");
  bench->add_option("--axis", bench_axis, "n | m | k")->capture_default_str();
  bench->add_option("--sizes", bench_sizes, "values of the varied axis")->required()->delimiter(',');
  bench->add_option("--algorithm", bench_algorithm, "km | sk | kd | gmm")->capture_default_str();
  bench->add_option("--reps", bench_reps, "timed repetitions per cell")->capture_default_str();
  bench->add_option("--n", bench_base.n, "fixed n")->capture_default_str();
  bench->add_option("--m", bench_base.m, "fixed m")->capture_default_str();
  bench->add_option("--k", bench_base.k, "fixed k")->capture_default_str();
  bench->add_option("--iterations", bench_base.iterations, "pinned iteration count")->capture_default_str();
  bench->add_option("--output", bench_output, "CSV path (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return emit_error("UsageError", e.what(), "");
  }

  try {
    if (*preprocess) {
      cmd_preprocess(preprocess_flags.resolve());
    } else if (*fit) {
      cmd_fit(fit_flags.resolve());
    } else if (*topics) {
      cmd_topics(topics_flags.resolve(), models_dir);
    } else if (*eval) {
      cmd_eval(eval_flags.resolve(), topics_dir);
    } else if (*run) {
      cmd_run(run_flags.resolve());
    } else if (*sweep) {
      cmd_sweep(sweep_flags.resolve(), axis, values);
    } else if (*bench) {
      const auto rows = et::bench_scaling(et::parse_scaling_axis(bench_axis), bench_sizes,
                                          et::parse_cluster_kind(bench_algorithm), bench_reps, bench_base);
      const std::string csv = et::timing_csv(rows);
      if (bench_output.empty()) {
        std::cout << csv;
      } else {
        std::ofstream(bench_output, std::ios::binary) << csv;
      }
    }
  } catch (const et::Error& e) {
    return emit_error(et::error_code_name(e.code()), e.what(), e.context());
  } catch (const std::exception& e) {
    return emit_error("InternalError", e.what(), "");
  }
  return 0;
}
