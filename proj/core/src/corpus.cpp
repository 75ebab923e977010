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

#include "embedtopics/corpus.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "embedtopics/error.hpp"
#include "text.hpp"

namespace embedtopics {

namespace detail {
extern const std::string_view kStopwordsText;
}  // namespace detail

namespace {

namespace fs = std::filesystem;

StopwordSet parse_stopwords(std::string_view text) {
  StopwordSet words;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view line = detail::trim(text.substr(pos, end - pos));
    if (!line.empty() && line.front() != '#') {
      // Tokens are lowercased before the lookup, so entries must be too.
      std::string word;
      for (const char32_t cp : detail::decode_utf8(line)) detail::append_utf8(word, detail::to_lower(cp));
      words.emplace(std::move(word));
    }
    pos = end + 1;
  }
  return words;
}

// Body of a news message: everything after the first blank line.
std::string_view message_body(std::string_view text) {
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) return {};
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) return text.substr(end + 1);
    pos = end + 1;
  }
  return {};
}

std::vector<fs::path> sorted_entries(const fs::path& dir, bool directories) {
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (directories ? entry.is_directory() : entry.is_regular_file()) out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void read_split(const fs::path& dir, std::string_view tag, Split split,
                const StopwordSet& stopwords, std::vector<Document>& out) {
  for (const auto& group : sorted_entries(dir, true)) {
    for (const auto& file : sorted_entries(group, false)) {
      Document doc;
      doc.id = std::string(tag) + "/" + group.filename().string() + "/" + file.filename().string();
      doc.split = split;
      doc.tokens = preprocess(message_body(detail::read_file(file)), stopwords);
      out.push_back(std::move(doc));
    }
  }
}

std::string_view split_name(Split split) { return split == Split::kTrain ? "train" : "test"; }

}  // namespace

const StopwordSet& default_stopwords() {
  static const StopwordSet words = parse_stopwords(detail::kStopwordsText);
  return words;
}

StopwordSet load_stopwords(const fs::path& path) {
  return parse_stopwords(detail::read_file(path));
}

std::vector<std::string> preprocess(std::string_view raw_text, const StopwordSet& stopwords) {
  const std::u32string text = detail::decode_utf8(raw_text);
  std::vector<std::string> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && detail::is_unicode_space(text[i])) ++i;
    std::size_t begin = i;
    while (i < text.size() && !detail::is_unicode_space(text[i])) ++i;
    std::size_t end = i;
    while (begin < end && detail::is_unicode_punct(text[begin])) ++begin;
    while (end > begin && detail::is_unicode_punct(text[end - 1])) --end;
    if (begin == end) continue;

    bool rejected = false;
    std::string token;
    token.reserve(end - begin);
    for (std::size_t j = begin; j < end; ++j) {
      const char32_t cp = text[j];
      if (detail::is_unicode_digit(cp) || detail::is_unicode_punct(cp)) {
        rejected = true;
        break;
      }
      detail::append_utf8(token, detail::to_lower(cp));
    }
    if (rejected || stopwords.contains(token)) continue;
    tokens.push_back(std::move(token));
  }
  return tokens;
}

Vocabulary::Vocabulary(std::vector<std::string> types, std::vector<std::uint64_t> term_freq,
                       std::vector<std::uint64_t> doc_freq, std::uint64_t total_tokens,
                       std::uint64_t num_docs)
    : types_(std::move(types)),
      term_freq_(std::move(term_freq)),
      doc_freq_(std::move(doc_freq)),
      total_tokens_(total_tokens),
      num_docs_(num_docs) {
  if (term_freq_.size() != types_.size() || doc_freq_.size() != types_.size()) {
    throw Error(ErrorCode::kInvalidArgument, "vocabulary arrays differ in length");
  }
  index_.reserve(types_.size());
  for (std::size_t i = 0; i < types_.size(); ++i) {
    if (i > 0 && !(types_[i - 1] < types_[i])) {
      throw Error(ErrorCode::kInvalidArgument,
                  "vocabulary types not strictly increasing at '" + types_[i] + "'");
    }
    index_.emplace(types_[i], i);
  }
}

std::optional<std::size_t> Vocabulary::find(std::string_view type) const {
  const auto it = index_.find(type);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Vocabulary Vocabulary::restrict_to(const std::vector<bool>& keep) const {
  if (keep.size() != size()) throw Error(ErrorCode::kInvalidArgument, "keep mask size mismatch");
  std::vector<std::string> types;
  std::vector<std::uint64_t> tf;
  std::vector<std::uint64_t> df;
  for (std::size_t i = 0; i < size(); ++i) {
    if (!keep[i]) continue;
    types.push_back(types_[i]);
    tf.push_back(term_freq_[i]);
    df.push_back(doc_freq_[i]);
  }
  return Vocabulary(std::move(types), std::move(tf), std::move(df), total_tokens_, num_docs_);
}

Vocabulary build_vocabulary(std::span<const Document> docs, std::uint64_t min_df) {
  struct Counts {
    std::uint64_t tf = 0;
    std::uint64_t df = 0;
    std::size_t last_doc = static_cast<std::size_t>(-1);
  };
  std::unordered_map<std::string_view, Counts> counts;
  std::uint64_t num_docs = 0;
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (docs[d].split != Split::kTrain) continue;
    ++num_docs;
    for (const auto& token : docs[d].tokens) {
      Counts& c = counts[token];
      ++c.tf;
      if (c.last_doc != d) {
        ++c.df;
        c.last_doc = d;
      }
    }
  }
  if (num_docs == 0) throw Error(ErrorCode::kInvalidArgument, "no training documents");

  std::vector<std::string_view> kept;
  for (const auto& [type, c] : counts) {
    if (c.df >= min_df) kept.push_back(type);
  }
  if (kept.empty()) {
    throw Error(ErrorCode::kEmptyVocabulary,
                "no type appears in at least " + std::to_string(min_df) + " training documents");
  }
  std::sort(kept.begin(), kept.end());

  std::vector<std::string> types;
  std::vector<std::uint64_t> tf;
  std::vector<std::uint64_t> df;
  std::uint64_t total = 0;
  types.reserve(kept.size());
  for (const auto type : kept) {
    const Counts& c = counts.at(type);
    types.emplace_back(type);
    tf.push_back(c.tf);
    df.push_back(c.df);
    total += c.tf;
  }
  return Vocabulary(std::move(types), std::move(tf), std::move(df), total, num_docs);
}

std::vector<Document> load_20ng(const fs::path& root, const StopwordSet& stopwords) {
  const fs::path train = root / "20news-bydate-train";
  const fs::path test = root / "20news-bydate-test";
  for (const auto& dir : {train, test}) {
    if (!fs::is_directory(dir)) {
      throw Error(ErrorCode::kMissingSplit, "missing split directory " + dir.string());
    }
  }
  std::vector<Document> docs;
  read_split(train, "train", Split::kTrain, stopwords, docs);
  read_split(test, "test", Split::kTest, stopwords, docs);
  return docs;
}

std::vector<Document> load_line_corpus(const fs::path& corpus_file, const fs::path& split_file,
                                       const StopwordSet& stopwords) {
  if (split_file.empty() || !fs::is_regular_file(split_file)) {
    throw Error(ErrorCode::kMissingSplit, "missing split file " + split_file.string());
  }
  const std::string text = detail::read_file(corpus_file);
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    std::string_view line(text.data() + pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }

  std::vector<bool> is_test(lines.size(), false);
  std::istringstream split_in(detail::read_file(split_file));
  std::string field;
  std::size_t num_test = 0;
  while (split_in >> field) {
    std::uint64_t line_no = 0;
    if (!detail::parse_uint(field, line_no) || line_no == 0 || line_no > lines.size()) {
      throw Error(ErrorCode::kFormatError,
                  split_file.string() + ": invalid test line number '" + field + "'");
    }
    if (!is_test[line_no - 1]) ++num_test;
    is_test[line_no - 1] = true;
  }
  if (num_test == 0 || num_test == lines.size()) {
    throw Error(ErrorCode::kMissingSplit,
                "line corpus needs both train and test documents (" + std::to_string(num_test) +
                    " of " + std::to_string(lines.size()) + " lines marked test)");
  }

  std::vector<Document> docs;
  docs.reserve(lines.size());
  for (const Split split : {Split::kTrain, Split::kTest}) {
    for (std::size_t i = 0; i < lines.size(); ++i) {
      if (is_test[i] != (split == Split::kTest)) continue;
      Document doc;
      doc.id = "line:" + std::to_string(i + 1);
      doc.split = split;
      doc.tokens = preprocess(lines[i], stopwords);
      docs.push_back(std::move(doc));
    }
  }
  return docs;
}

DocTermFrequencies document_term_frequencies(std::span<const Document> docs,
                                             const Vocabulary& vocab) {
  DocTermFrequencies out;
  out.types = vocab.types();
  std::unordered_map<std::uint32_t, std::uint64_t> counts;
  for (const auto& doc : docs) {
    if (doc.split != Split::kTrain) continue;
    counts.clear();
    std::uint64_t length = 0;
    for (const auto& token : doc.tokens) {
      if (const auto idx = vocab.find(token)) {
        ++counts[static_cast<std::uint32_t>(*idx)];
        ++length;
      }
    }
    if (length == 0) continue;
    std::vector<std::pair<std::uint32_t, double>> entries;
    entries.reserve(counts.size());
    for (const auto& [idx, c] : counts) {
      entries.emplace_back(idx, static_cast<double>(c) / static_cast<double>(length));
    }
    std::sort(entries.begin(), entries.end());
    out.docs.push_back(std::move(entries));
  }
  return out;
}

void write_vocabulary(std::ostream& out, const Vocabulary& vocab) {
  out << "#total_tokens=" << vocab.total_tokens() << " num_docs=" << vocab.num_docs() << '\n';
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out << vocab.types()[i] << '\t' << vocab.term_freq()[i] << '\t' << vocab.doc_freq()[i]
        << '\n';
  }
}

Vocabulary read_vocabulary(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kFormatError, "vocabulary: empty input");
  std::uint64_t total = 0;
  std::uint64_t num_docs = 0;
  {
    constexpr std::string_view kTotal = "#total_tokens=";
    constexpr std::string_view kDocs = " num_docs=";
    const std::string_view header = detail::trim(line);
    const std::size_t docs_pos = header.find(kDocs);
    if (!header.starts_with(kTotal) || docs_pos == std::string_view::npos ||
        !detail::parse_uint(header.substr(kTotal.size(), docs_pos - kTotal.size()), total) ||
        !detail::parse_uint(header.substr(docs_pos + kDocs.size()), num_docs)) {
      throw Error(ErrorCode::kFormatError, "vocabulary line 1: malformed header");
    }
  }
  std::vector<std::string> types;
  std::vector<std::uint64_t> tf;
  std::vector<std::uint64_t> df;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    std::uint64_t f = 0;
    std::uint64_t d = 0;
    if (t2 == std::string::npos ||
        !detail::parse_uint(std::string_view(line).substr(t1 + 1, t2 - t1 - 1), f) ||
        !detail::parse_uint(std::string_view(line).substr(t2 + 1), d)) {
      throw Error(ErrorCode::kFormatError, "vocabulary line " + std::to_string(line_no) +
                                               ": expected type<TAB>term_freq<TAB>doc_freq");
    }
    types.push_back(line.substr(0, t1));
    tf.push_back(f);
    df.push_back(d);
  }
  return Vocabulary(std::move(types), std::move(tf), std::move(df), total, num_docs);
}

void save_vocabulary(const fs::path& path, const Vocabulary& vocab) {
  std::ostringstream out;
  write_vocabulary(out, vocab);
  detail::write_file(path, out.str());
}

Vocabulary load_vocabulary(const fs::path& path) {
  std::istringstream in(detail::read_file(path));
  return read_vocabulary(in);
}

void save_documents(const fs::path& path, std::span<const Document> docs) {
  std::string out;
  for (const auto& doc : docs) {
    out += split_name(doc.split);
    out += '\t';
    out += doc.id;
    out += '\t';
    for (std::size_t i = 0; i < doc.tokens.size(); ++i) {
      if (i > 0) out += ' ';
      out += doc.tokens[i];
    }
    out += '\n';
  }
  detail::write_file(path, out);
}

std::vector<Document> load_documents(const fs::path& path) {
  std::istringstream in(detail::read_file(path));
  std::vector<Document> docs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::size_t t1 = line.find('\t');
    const std::size_t t2 = t1 == std::string::npos ? t1 : line.find('\t', t1 + 1);
    if (t2 == std::string::npos) {
      throw Error(ErrorCode::kFormatError,
                  path.string() + " line " + std::to_string(line_no) + ": expected split<TAB>id<TAB>tokens");
    }
    Document doc;
    const std::string_view split = std::string_view(line).substr(0, t1);
    if (split == "train") {
      doc.split = Split::kTrain;
    } else if (split == "test") {
      doc.split = Split::kTest;
    } else {
      throw Error(ErrorCode::kFormatError,
                  path.string() + " line " + std::to_string(line_no) + ": unknown split");
    }
    doc.id = line.substr(t1 + 1, t2 - t1 - 1);
    for (const auto field : detail::split_fields(std::string_view(line).substr(t2 + 1))) {
      doc.tokens.emplace_back(field);
    }
    docs.push_back(std::move(doc));
  }
  return docs;
}

}  // namespace embedtopics
