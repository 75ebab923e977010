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

#include "embedtopics/pipeline.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <sstream>

#include "embedtopics/error.hpp"
#include "text.hpp"

namespace embedtopics {

namespace {

using nlohmann::json;

std::string normalize_key(std::string_view key) {
  std::string out(detail::trim(key));
  std::replace(out.begin(), out.end(), '_', '-');
  return out;
}

std::uint64_t parse_count(std::string_view key, std::string_view value) {
  std::uint64_t out = 0;
  if (!detail::parse_uint(detail::trim(value), out)) {
    throw Error(ErrorCode::kInvalidArgument,
                std::string(key) + ": expected a nonnegative integer, got '" + std::string(value) + "'");
  }
  return out;
}

std::vector<std::uint64_t> parse_seed_list(std::string_view value) {
  std::vector<std::uint64_t> seeds;
  std::string_view rest = value;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = detail::trim(rest.substr(0, comma));
    if (item.empty()) throw Error(ErrorCode::kInvalidArgument, "empty entry in seed list '" + std::string(value) + "'");
    seeds.push_back(parse_count("seeds", item));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return seeds;
}

// Runs one pipeline stage, attaching the stage name to library errors.
template <typename F>
auto stage(std::string_view name, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const Error& e) {
    throw e.with_context("stage " + std::string(name));
  }
}

std::string embedding_label(const RunConfig& config) {
  return config.embedding_name.empty() ? config.embedding_path.stem().string() : config.embedding_name;
}

json config_to_json(const RunConfig& c) {
  json j;
  j["corpus"] = c.corpus_path.generic_string();
  j["corpus_format"] = to_string(c.corpus_format);
  j["split"] = c.split_path.generic_string();
  j["stopwords"] = c.stopwords_path.generic_string();
  j["min_df"] = c.min_df;
  j["embeddings"] = c.embedding_path.generic_string();
  j["embedding_format"] = to_string(c.embedding_format);
  j["embedding_name"] = embedding_label(c);
  j["algorithm"] = to_string(c.algorithm);
  j["k"] = c.k;
  j["top_j"] = c.top_j;
  j["weighting"] = to_string(c.weighting);
  j["reranking"] = to_string(c.reranking);
  j["window"] = c.rerank_window;
  j["pca_dim"] = c.pca_dim ? json(*c.pca_dim) : json(nullptr);
  j["seeds"] = c.seeds;
  j["npmi_window"] = c.npmi_window;
  j["max_iter"] = c.max_iter;
  j["tol"] = c.tol ? json(*c.tol) : json(nullptr);
  return j;
}

void write_json(const std::filesystem::path& path, const json& j) {
  detail::write_file(path, j.dump(1) + "\n");
}

}  // namespace

std::string_view to_string(CorpusFormat format) {
  return format == CorpusFormat::kLines ? "lines" : "20ng";
}

CorpusFormat parse_corpus_format(std::string_view name) {
  if (name == "20ng") return CorpusFormat::k20Newsgroups;
  if (name == "lines") return CorpusFormat::kLines;
  throw Error(ErrorCode::kInvalidArgument, "unknown corpus format '" + std::string(name) + "'");
}

void RunConfig::validate() const {
  auto fail = [](const std::string& msg) { throw Error(ErrorCode::kInvalidArgument, msg); };
  if (corpus_path.empty()) fail("corpus path is required");
  if (embedding_path.empty()) fail("embedding path is required");
  if (corpus_format == CorpusFormat::kLines && split_path.empty()) fail("lines corpus needs a split file");
  if (k < 1) fail("k must be at least 1");
  if (top_j < 1) fail("top_j must be at least 1");
  if (rerank_window < top_j) fail("rerank window must be at least top_j");
  if (seeds.empty()) fail("at least one seed is required");
  if (pca_dim && *pca_dim < 1) fail("pca dimension must be at least 1");
  if (max_iter < 1) fail("max_iter must be at least 1");
  if (tol && !(*tol >= 0.0)) fail("tol must be nonnegative");
  if (output_dir.empty()) fail("output directory is required");
}

void apply_setting(RunConfig& config, std::string_view raw_key, std::string_view raw_value) {
  const std::string key = normalize_key(raw_key);
  const std::string value(detail::trim(raw_value));
  try {
    if (key == "corpus") {
      config.corpus_path = value;
    } else if (key == "corpus-format") {
      config.corpus_format = parse_corpus_format(value);
    } else if (key == "split") {
      config.split_path = value;
    } else if (key == "stopwords") {
      config.stopwords_path = value;
    } else if (key == "min-df") {
      config.min_df = parse_count(key, value);
    } else if (key == "embeddings") {
      config.embedding_path = value;
    } else if (key == "embedding-format") {
      config.embedding_format = parse_embedding_format(value);
    } else if (key == "embedding-name") {
      config.embedding_name = value;
    } else if (key == "algorithm") {
      config.algorithm = parse_cluster_kind(value);
    } else if (key == "k") {
      config.k = parse_count(key, value);
    } else if (key == "top-j") {
      config.top_j = parse_count(key, value);
    } else if (key == "weighting") {
      config.weighting = parse_weight_scheme(value);
    } else if (key == "reranking") {
      config.reranking = parse_rerank_scheme(value);
    } else if (key == "window") {
      config.rerank_window = parse_count(key, value);
    } else if (key == "pca-dim") {
      if (value == "none" || value.empty()) {
        config.pca_dim.reset();
      } else {
        config.pca_dim = parse_count(key, value);
      }
    } else if (key == "seeds") {
      config.seeds = parse_seed_list(value);
    } else if (key == "npmi-window") {
      config.npmi_window = parse_count(key, value);
    } else if (key == "max-iter") {
      config.max_iter = parse_count(key, value);
    } else if (key == "tol") {
      double tol = 0.0;
      if (!detail::parse_double(value, tol)) {
        throw Error(ErrorCode::kInvalidArgument, "tol: expected a number, got '" + value + "'");
      }
      config.tol = tol;
    } else if (key == "output") {
      config.output_dir = value;
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown setting '" + std::string(raw_key) + "'");
    }
  } catch (const Error& e) {
    throw e.with_context("setting " + key);
  }
}

RunConfig load_config(const std::filesystem::path& path, RunConfig base) {
  const std::string text = detail::read_file(path);
  const std::filesystem::path dir = path.parent_path();
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view body = detail::trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto eq = body.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorCode::kFormatError,
                  path.string() + ":" + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = normalize_key(body.substr(0, eq));
    std::string value(detail::trim(body.substr(eq + 1)));
    // Paths in a config file are relative to the file itself.
    const bool is_path = key == "corpus" || key == "split" || key == "stopwords" ||
                         key == "embeddings" || key == "output";
    if (is_path && !value.empty() && std::filesystem::path(value).is_relative()) {
      value = (dir / value).lexically_normal().string();
    }
    try {
      apply_setting(base, key, value);
    } catch (const Error& e) {
      throw e.with_context(path.string() + ":" + std::to_string(line_no));
    }
  }
  return base;
}

std::string PipelineCache::hash_path(const std::filesystem::path& path) {
  if (path.empty()) return "-";
  const std::string key = std::filesystem::absolute(path).lexically_normal().string();
  if (const auto it = file_hashes_.find(key); it != file_hashes_.end()) return it->second;
  detail::Fnv1a h;
  if (std::filesystem::is_directory(path)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(path)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
      const std::string rel = std::filesystem::relative(f, path).generic_string();
      h.update(rel);
      h.update(std::string_view("\0", 1));
      h.update(detail::read_file(f));
      h.update(std::string_view("\0", 1));
    }
  } else {
    h.update(detail::read_file(path));
  }
  const std::string digest = h.hex();
  file_hashes_.emplace(key, digest);
  return digest;
}

std::string PipelineCache::corpus_key(const RunConfig& config) {
  detail::Fnv1a h;
  h.update(to_string(config.corpus_format));
  h.update(hash_path(config.corpus_path));
  h.update(config.corpus_format == CorpusFormat::kLines ? hash_path(config.split_path) : "-");
  h.update(hash_path(config.stopwords_path));
  h.update(std::to_string(config.min_df));
  return h.hex();
}

std::string PipelineCache::embedding_key(const RunConfig& config) {
  detail::Fnv1a h;
  h.update(corpus_key(config));
  h.update(to_string(config.embedding_format));
  h.update(hash_path(config.embedding_path));
  h.update(embedding_label(config));
  return h.hex();
}

const PipelineCache::CorpusData& PipelineCache::corpus(const RunConfig& config) {
  const std::string key = corpus_key(config);
  if (const auto it = corpora_.find(key); it != corpora_.end()) {
    ++hits_;
    return *it->second;
  }
  ++misses_;
  const StopwordSet stopwords =
      config.stopwords_path.empty() ? default_stopwords() : load_stopwords(config.stopwords_path);
  std::vector<Document> docs = config.corpus_format == CorpusFormat::kLines
                                   ? load_line_corpus(config.corpus_path, config.split_path, stopwords)
                                   : load_20ng(config.corpus_path, stopwords);
  auto data = std::make_unique<CorpusData>();
  for (auto& d : docs) (d.split == Split::kTrain ? data->train : data->test).push_back(std::move(d));
  data->vocab = build_vocabulary(data->train, config.min_df);
  data->per_doc_tf = document_term_frequencies(data->train, data->vocab);
  return *corpora_.emplace(key, std::move(data)).first->second;
}

const LoadedEmbeddings& PipelineCache::embeddings(const RunConfig& config) {
  const std::string key = embedding_key(config);
  if (const auto it = embeddings_.find(key); it != embeddings_.end()) {
    ++hits_;
    return *it->second;
  }
  const CorpusData& data = corpus(config);
  ++misses_;
  auto loaded = std::make_unique<LoadedEmbeddings>(load_embeddings(
      config.embedding_path, config.embedding_format, data.vocab, embedding_label(config)));
  return *embeddings_.emplace(key, std::move(loaded)).first->second;
}

const CooccurrenceIndex& PipelineCache::index(const RunConfig& config) {
  const std::string key = corpus_key(config) + "/" + std::to_string(config.npmi_window);
  if (const auto it = indexes_.find(key); it != indexes_.end()) {
    ++hits_;
    return *it->second;
  }
  const CorpusData& data = corpus(config);
  ++misses_;
  if (data.test.empty()) throw Error(ErrorCode::kMissingSplit, "corpus has no test documents");
  auto built = std::make_unique<CooccurrenceIndex>(build_index(data.test, config.npmi_window));
  return *indexes_.emplace(key, std::move(built)).first->second;
}

PreparedInputs prepare_inputs(const RunConfig& config, PipelineCache& cache) {
  stage("config", [&] { config.validate(); });
  const std::filesystem::path& out = config.output_dir;
  PreparedInputs in;
  in.corpus = &stage("corpus", [&]() -> const PipelineCache::CorpusData& {
    const auto& d = cache.corpus(config);
    save_vocabulary(out / "vocab.tsv", d.vocab);
    return d;
  });
  in.loaded = &stage("embeddings", [&]() -> const LoadedEmbeddings& { return cache.embeddings(config); });
  const Vocabulary& vocab = in.loaded->vocab;
  if (vocab.size() < config.k) {
    throw Error(ErrorCode::kInvalidArgument,
                "working vocabulary has " + std::to_string(vocab.size()) + " types, fewer than k = " +
                    std::to_string(config.k))
        .with_context("stage embeddings");
  }
  save_vocabulary(out / "working_vocab.tsv", vocab);
  in.table = stage("pca", [&] {
    if (!config.pca_dim) return in.loaded->table;
    EmbeddingTable reduced = pca_reduce(in.loaded->table, *config.pca_dim);
    save_word2vec_text(out / "cache" / ("pca-" + std::to_string(*config.pca_dim) + ".txt"), reduced, vocab);
    return reduced;
  });
  if (config.algorithm == ClusterKind::kSpherical) {
    in.table = stage("normalize", [&] { return normalize_rows(in.table); });
  }
  in.weights = stage("weighting", [&] {
    WeightVector w = compute_weights(config.weighting, vocab, in.corpus->per_doc_tf);
    save_weights(out / "weights.tsv", w, vocab);
    return w;
  });
  if (const auto scheme = weight_scheme_for(config.reranking)) {
    in.rerank_weights = stage("weighting", [&] {
      WeightVector w = compute_weights(*scheme, vocab, in.corpus->per_doc_tf);
      save_weights(out / "rerank_weights.tsv", w, vocab);
      return w;
    });
  }
  return in;
}

SeedTopics topics_for_model(const RunConfig& config, const PreparedInputs& inputs,
                            const ClusterModel& model) {
  const std::string tag = std::to_string(model.seed);
  Provenance provenance{embedding_label(config), config.algorithm, config.weighting,
                        RerankScheme::kNone, model.seed};
  SeedTopics out;
  out.proximity = stage("topics seed " + tag, [&] {
    return extract_top_j(model, inputs.table, inputs.vocab(), config.top_j, provenance);
  });
  out.final_topics = out.proximity;
  if (inputs.rerank_weights) {
    out.final_topics = stage("rerank seed " + tag, [&] {
      return rerank(out.proximity, model, inputs.table, inputs.vocab(), *inputs.rerank_weights,
                    config.rerank_window, config.top_j);
    });
  }
  return out;
}

RunResult run(const RunConfig& config, PipelineCache& cache) {
  const PreparedInputs inputs = prepare_inputs(config, cache);
  const std::filesystem::path& out = config.output_dir;
  const CooccurrenceIndex& index = stage("index", [&]() -> const CooccurrenceIndex& {
    return cache.index(config);
  });

  RunResult result;
  result.working_vocab_size = inputs.vocab().size();
  result.dim = inputs.table.dim();
  result.coverage = inputs.loaded->table.coverage;
  for (std::uint64_t seed : config.seeds) {
    const std::string tag = std::to_string(seed);
    FitOptions options;
    options.k = config.k;
    options.seed = seed;
    options.max_iter = config.max_iter;
    options.tol = config.tol;
    const ClusterModel model = stage("fit seed " + tag, [&] {
      ClusterModel m = fit(config.algorithm, inputs.table.vectors, inputs.weights.weights, options);
      save_model(out / "models" / (tag + ".json"), m);
      return m;
    });
    SeedTopics topics = topics_for_model(config, inputs, model);
    if (inputs.rerank_weights) {
      save_topics(out / "topics" / (tag + ".proximity.json"), out / "topics" / (tag + ".proximity.txt"),
                  topics.proximity);
    }
    save_topics(out / "topics" / (tag + ".json"), out / "topics" / (tag + ".txt"), topics.final_topics);
    result.proximity_topic_sets.push_back(std::move(topics.proximity));
    result.topic_sets.push_back(std::move(topics.final_topics));
  }

  result.report = stage("evaluate", [&] { return evaluate_run(result.topic_sets, index); });
  std::ostringstream report;
  write_report_json(report, result.report);
  detail::write_file(out / "report.json", report.str());
  detail::write_file(out / "results.csv", results_csv_header() + "\n" + results_csv_row(result.report) + "\n");

  const auto& data = *inputs.corpus;
  json manifest;
  manifest["config"] = config_to_json(config);
  manifest["corpus_key"] = cache.corpus_key(config);
  manifest["embedding_key"] = cache.embedding_key(config);
  manifest["train_docs"] = data.train.size();
  manifest["test_docs"] = data.test.size();
  manifest["corpus_vocab_size"] = data.vocab.size();
  manifest["working_vocab_size"] = result.working_vocab_size;
  manifest["coverage"] = result.coverage;
  manifest["dim"] = result.dim;
  manifest["total_windows"] = index.total_windows();
  write_json(out / "manifest.json", manifest);
  return result;
}

RunResult run(const RunConfig& config) {
  PipelineCache cache;
  return run(config, cache);
}

std::string_view to_string(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::kPcaDims: return "pca_dims";
    case SweepAxis::kAlgorithms: return "algorithms";
    case SweepAxis::kWeightSchemes: return "weight_schemes";
    case SweepAxis::kRerankSchemes: return "rerank_schemes";
  }
  return "pca_dims";
}

SweepAxis parse_sweep_axis(std::string_view name) {
  if (name == "pca_dims") return SweepAxis::kPcaDims;
  if (name == "algorithms") return SweepAxis::kAlgorithms;
  if (name == "weight_schemes") return SweepAxis::kWeightSchemes;
  if (name == "rerank_schemes") return SweepAxis::kRerankSchemes;
  throw Error(ErrorCode::kInvalidArgument, "unknown sweep axis '" + std::string(name) + "'");
}

namespace {

RunConfig cell_config(const RunConfig& base, SweepAxis axis, const std::string& value) {
  RunConfig c = base;
  switch (axis) {
    case SweepAxis::kPcaDims: apply_setting(c, "pca-dim", value); break;
    case SweepAxis::kAlgorithms: apply_setting(c, "algorithm", value); break;
    case SweepAxis::kWeightSchemes: apply_setting(c, "weighting", value); break;
    case SweepAxis::kRerankSchemes: apply_setting(c, "reranking", value); break;
  }
  c.output_dir = base.output_dir / (std::string(to_string(axis)) + "-" + value);
  return c;
}

std::string csv_escape(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string describe(const Error& e) {
  std::string msg(error_code_name(e.code()));
  msg += ": ";
  if (!e.context().empty()) msg += e.context() + ": ";
  return msg + e.what();
}

}  // namespace

std::vector<SweepCell> sweep(const RunConfig& base, SweepAxis axis,
                             const std::vector<std::string>& values, PipelineCache& cache) {
  if (values.empty()) throw Error(ErrorCode::kInvalidArgument, "sweep needs at least one value");
  std::vector<SweepCell> cells;
  std::string csv = sweep_csv_header() + "\n";
  for (const std::string& value : values) {
    SweepCell cell;
    cell.value = value;
    try {
      cell.report = run(cell_config(base, axis, value), cache).report;
    } catch (const Error& e) {
      cell.error = describe(e);
    }
    csv += sweep_csv_row(base, axis, cell) + "\n";
    cells.push_back(std::move(cell));
  }
  detail::write_file(base.output_dir / "sweep.csv", csv);
  return cells;
}

std::string sweep_csv_header() {
  return "axis,value,embedding,algorithm,weighting,reranking,pca_dim,seeds,mean_npmi,std_npmi,error";
}

std::string sweep_csv_row(const RunConfig& base, SweepAxis axis, const SweepCell& cell) {
  RunConfig c = base;
  try {
    c = cell_config(base, axis, cell.value);
  } catch (const Error&) {
    // An unparseable value keeps the base settings; the error column says why.
  }
  std::string seeds;
  for (std::uint64_t s : c.seeds) seeds += (seeds.empty() ? "" : ";") + std::to_string(s);
  std::string row = std::string(to_string(axis)) + "," + csv_escape(cell.value) + "," +
                    csv_escape(embedding_label(c)) + "," + std::string(to_string(c.algorithm)) + "," +
                    std::string(to_string(c.weighting)) + "," + std::string(to_string(c.reranking)) +
                    "," + (c.pca_dim ? std::to_string(*c.pca_dim) : std::string("none")) + "," + seeds +
                    ",";
  if (cell.report) {
    row += detail::format_double(cell.report->mean) + "," + detail::format_double(cell.report->std_dev) + ",";
  } else {
    row += ",," + csv_escape(cell.error.empty() ? "error" : "ERROR " + cell.error);
  }
  return row;
}

}  // namespace embedtopics
