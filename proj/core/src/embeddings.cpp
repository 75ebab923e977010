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

#include "embedtopics/embeddings.hpp"

#include <nlohmann/json.hpp>

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>

#include "embedtopics/error.hpp"
#include "text.hpp"

namespace embedtopics {

namespace {

namespace fs = std::filesystem;

[[noreturn]] void format_error(const fs::path& path, std::string_view where, const std::string& what) {
  throw Error(ErrorCode::kFormatError, path.string() + " " + std::string(where) + ": " + what);
}

std::string line_ref(std::size_t line_no) { return "line " + std::to_string(line_no); }

// Collects vectors for vocabulary types while the file is streamed.
class Collector {
 public:
  explicit Collector(const Vocabulary& vocab) : vocab_(vocab), found_(vocab.size(), false) {}

  void set_dim(std::size_t dim) {
    dim_ = dim;
    rows_.resize(static_cast<Eigen::Index>(vocab_.size()), static_cast<Eigen::Index>(dim));
  }
  std::size_t dim() const { return dim_; }

  /// Row to fill for `word`, or nullptr when the word is not wanted.
  double* slot(std::string_view word) {
    const auto idx = vocab_.find(word);
    if (!idx || found_[*idx]) return nullptr;
    found_[*idx] = true;
    return rows_.row(static_cast<Eigen::Index>(*idx)).data();
  }

  LoadedEmbeddings finish(std::string source_name) {
    // All-zero rows carry no direction and count as missing.
    for (std::size_t i = 0; i < found_.size(); ++i) {
      if (found_[i] && rows_.row(static_cast<Eigen::Index>(i)).isZero(0.0)) found_[i] = false;
    }
    LoadedEmbeddings out;
    out.vocab = vocab_.restrict_to(found_);
    out.table.source_name = std::move(source_name);
    out.table.vectors.resize(static_cast<Eigen::Index>(out.vocab.size()),
                             static_cast<Eigen::Index>(dim_));
    Eigen::Index r = 0;
    for (std::size_t i = 0; i < found_.size(); ++i) {
      if (!found_[i]) continue;
      out.table.vectors.row(r++) = rows_.row(static_cast<Eigen::Index>(i));
    }
    out.table.coverage = vocab_.empty() ? 0.0
                                        : static_cast<double>(out.vocab.size()) /
                                              static_cast<double>(vocab_.size());
    return out;
  }

 private:
  const Vocabulary& vocab_;
  std::vector<bool> found_;
  RowMatrix rows_;
  std::size_t dim_ = 0;
};

void parse_values(const fs::path& path, std::size_t line_no,
                  std::span<const std::string_view> fields, double* dest) {
  for (std::size_t j = 0; j < fields.size(); ++j) {
    double v = 0.0;
    if (!detail::parse_double(fields[j], v) || !std::isfinite(v)) {
      format_error(path, line_ref(line_no), "bad value '" + std::string(fields[j]) + "'");
    }
    if (dest != nullptr) dest[j] = v;
  }
}

std::pair<std::uint64_t, std::uint64_t> parse_header(const fs::path& path, std::string_view line) {
  const auto fields = detail::split_fields(line);
  std::uint64_t n = 0;
  std::uint64_t m = 0;
  if (fields.size() != 2 || !detail::parse_uint(fields[0], n) || !detail::parse_uint(fields[1], m) ||
      m == 0) {
    format_error(path, line_ref(1), "expected header '<count> <dim>'");
  }
  return {n, m};
}

void load_text(const fs::path& path, bool has_header, Collector& collector) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::string line;
  std::size_t line_no = 0;
  std::uint64_t declared_rows = 0;
  std::uint64_t rows = 0;
  if (has_header) {
    if (!std::getline(in, line)) format_error(path, line_ref(1), "missing header");
    line_no = 1;
    const auto [n, m] = parse_header(path, line);
    declared_rows = n;
    collector.set_dim(m);
  }
  while (std::getline(in, line)) {
    ++line_no;
    const auto fields = detail::split_fields(line);
    if (fields.empty()) continue;
    if (collector.dim() == 0) {
      if (fields.size() < 2) format_error(path, line_ref(line_no), "no vector values");
      collector.set_dim(fields.size() - 1);
    }
    const std::size_t m = collector.dim();
    ++rows;
    if (fields.size() < m + 1 || (has_header && fields.size() != m + 1)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  path.string() + " " + line_ref(line_no) + ": expected " + std::to_string(m) +
                      " values, found " + std::to_string(fields.size() - 1));
    }
    const std::span<const std::string_view> values(fields.data() + fields.size() - m, m);
    if (fields.size() > m + 1) {
      // Key containing whitespace; cannot match a preprocessed type.
      parse_values(path, line_no, values, nullptr);
      continue;
    }
    parse_values(path, line_no, values, collector.slot(fields[0]));
  }
  if (has_header && rows != declared_rows) {
    format_error(path, "header", "declares " + std::to_string(declared_rows) + " rows, found " +
                                     std::to_string(rows));
  }
  if (collector.dim() == 0) format_error(path, "line 1", "no vectors");
}

void load_binary(const fs::path& path, Collector& collector) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::string header;
  if (!std::getline(in, header)) format_error(path, "byte 0", "missing header");
  const auto [n, m] = parse_header(path, header);
  collector.set_dim(m);
  std::uint64_t offset = header.size() + 1;

  std::vector<char> raw(m * sizeof(float));
  std::vector<double> scratch(m);
  std::string word;
  for (std::uint64_t row = 0; row < n; ++row) {
    word.clear();
    int c = in.get();
    while (c == '\n' || c == '\r') {
      ++offset;
      c = in.get();
    }
    const std::uint64_t entry_offset = offset;
    while (c != EOF && c != ' ') {
      word.push_back(static_cast<char>(c));
      ++offset;
      c = in.get();
    }
    if (c == EOF || word.empty()) {
      format_error(path, "byte " + std::to_string(entry_offset),
                   "truncated entry " + std::to_string(row + 1) + " of " + std::to_string(n));
    }
    ++offset;
    if (!in.read(raw.data(), static_cast<std::streamsize>(raw.size()))) {
      format_error(path, "byte " + std::to_string(offset), "truncated vector for '" + word + "'");
    }
    for (std::size_t j = 0; j < m; ++j) {
      std::uint32_t bits = 0;
      std::memcpy(&bits, raw.data() + j * sizeof(float), sizeof(bits));
      if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap32(bits);
      const float f = std::bit_cast<float>(bits);
      if (!std::isfinite(f)) {
        format_error(path, "byte " + std::to_string(offset + j * sizeof(float)),
                     "non-finite value for '" + word + "'");
      }
      scratch[j] = static_cast<double>(f);
    }
    offset += raw.size();
    if (double* dest = collector.slot(word)) std::copy(scratch.begin(), scratch.end(), dest);
  }
}

}  // namespace

std::string_view to_string(EmbeddingFormat format) {
  switch (format) {
    case EmbeddingFormat::kWord2VecText: return "word2vec_text";
    case EmbeddingFormat::kWord2VecBinary: return "word2vec_binary";
    case EmbeddingFormat::kGloveText: return "glove_text";
  }
  return "unknown";
}

EmbeddingFormat parse_embedding_format(std::string_view name) {
  if (name == "word2vec_text") return EmbeddingFormat::kWord2VecText;
  if (name == "word2vec_binary") return EmbeddingFormat::kWord2VecBinary;
  if (name == "glove_text") return EmbeddingFormat::kGloveText;
  throw Error(ErrorCode::kInvalidArgument, "unknown embedding format '" + std::string(name) + "'");
}

LoadedEmbeddings load_embeddings(const fs::path& path, EmbeddingFormat format,
                                 const Vocabulary& vocab, std::string source_name) {
  if (source_name.empty()) source_name = path.stem().string();
  Collector collector(vocab);
  switch (format) {
    case EmbeddingFormat::kWord2VecText: load_text(path, true, collector); break;
    case EmbeddingFormat::kGloveText: load_text(path, false, collector); break;
    case EmbeddingFormat::kWord2VecBinary: load_binary(path, collector); break;
  }
  return collector.finish(std::move(source_name));
}

void save_word2vec_text(const fs::path& path, const EmbeddingTable& table, const Vocabulary& vocab) {
  if (vocab.size() != table.rows()) {
    throw Error(ErrorCode::kInvalidArgument, "table and vocabulary differ in size");
  }
  std::string out = std::to_string(table.rows()) + " " + std::to_string(table.dim()) + "\n";
  for (std::size_t i = 0; i < table.rows(); ++i) {
    out += vocab.types()[i];
    for (std::size_t j = 0; j < table.dim(); ++j) {
      out += ' ';
      out += detail::format_double(table.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
    }
    out += '\n';
  }
  detail::write_file(path, out);
}

EmbeddingTable normalize_rows(const EmbeddingTable& table) {
  EmbeddingTable out = table;
  for (Eigen::Index i = 0; i < out.vectors.rows(); ++i) {
    const double norm = out.vectors.row(i).norm();
    if (norm == 0.0) {
      throw Error(ErrorCode::kZeroVector, "row " + std::to_string(i) + " has zero norm");
    }
    out.vectors.row(i) /= norm;
  }
  return out;
}

PcaModel pca_fit(const EmbeddingTable& table, std::size_t target_dim) {
  const std::size_t dim = table.dim();
  if (target_dim < 1 || target_dim > dim) {
    throw Error(ErrorCode::kInvalidArgument, "PCA target dimension " + std::to_string(target_dim) +
                                                 " outside [1, " + std::to_string(dim) + "]");
  }
  PcaModel model;
  model.mean = table.vectors.colwise().mean();
  const Eigen::MatrixXd centered = table.vectors.rowwise() - model.mean;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(centered, Eigen::ComputeThinV);
  const Eigen::VectorXd& sigma = svd.singularValues();

  const double cutoff = sigma.size() == 0
                            ? 0.0
                            : static_cast<double>(std::max(table.rows(), dim)) *
                                  std::numeric_limits<double>::epsilon() * sigma(0);
  std::size_t rank = 0;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma(i) > cutoff) ++rank;
  }
  if (rank < target_dim) {
    throw Error(ErrorCode::kRankDeficient, "centered table has rank " + std::to_string(rank) +
                                               " < target dimension " + std::to_string(target_dim));
  }

  const auto kept = static_cast<Eigen::Index>(target_dim);
  model.components = svd.matrixV().leftCols(kept);
  for (Eigen::Index c = 0; c < kept; ++c) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index r = 0; r < model.components.rows(); ++r) {
      const double a = std::abs(model.components(r, c));
      if (a > best) {
        best = a;
        arg = r;
      }
    }
    if (model.components(arg, c) < 0.0) model.components.col(c) *= -1.0;
  }
  const double denom = static_cast<double>(table.rows() - 1);
  model.explained_variance = sigma.head(kept).array().square() / denom;
  model.total_variance = sigma.squaredNorm() / denom;
  return model;
}

EmbeddingTable pca_transform(const PcaModel& model, const EmbeddingTable& table) {
  if (static_cast<Eigen::Index>(table.dim()) != model.mean.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "PCA model and table differ in dimension");
  }
  EmbeddingTable out;
  out.vectors = (table.vectors.rowwise() - model.mean) * model.components;
  out.coverage = table.coverage;
  out.source_name = table.source_name + "+pca" + std::to_string(model.components.cols());
  return out;
}

EmbeddingTable pca_reduce(const EmbeddingTable& table, std::size_t target_dim) {
  return pca_transform(pca_fit(table, target_dim), table);
}

EmbeddingSidecar load_sidecar(const fs::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(detail::read_file(path));
  } catch (const nlohmann::json::exception& e) {
    format_error(path, "json", e.what());
  }
  EmbeddingSidecar s;
  try {
    s.model = j.at("model").get<std::string>();
    s.layer = j.contains("layer") ? j["layer"].dump() : std::string{};
    if (j.contains("layer") && j["layer"].is_string()) s.layer = j["layer"].get<std::string>();
    s.strategy = j.at("strategy").get<std::string>();
    s.coverage = j.at("coverage").get<double>();
    if (j.contains("dim")) s.dim = j["dim"].get<std::size_t>();
  } catch (const nlohmann::json::exception& e) {
    format_error(path, "json", e.what());
  }
  return s;
}

std::optional<EmbeddingSidecar> find_sidecar(const fs::path& embedding_path) {
  fs::path candidate = embedding_path;
  candidate += ".json";
  if (!fs::is_regular_file(candidate)) return std::nullopt;
  return load_sidecar(candidate);
}

}  // namespace embedtopics
