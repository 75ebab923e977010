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

#ifndef EMBEDTOPICS_CORPUS_HPP
#define EMBEDTOPICS_CORPUS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace embedtopics {

using StopwordSet = std::unordered_set<std::string>;

/// The stopword list compiled into the library (core/data/stopwords_en.txt).
const StopwordSet& default_stopwords();

/// Reads a stopword file: one word per line, `#` starts a comment line.
/// Entries are lowercased like tokens.
StopwordSet load_stopwords(const std::filesystem::path& path);

/// Splits on Unicode whitespace, lowercases, strips leading and trailing
/// punctuation, then drops stopwords and any token that still contains a
/// digit or a punctuation character. Invalid UTF-8 is replaced with U+FFFD,
/// which counts as punctuation.
std::vector<std::string> preprocess(std::string_view raw_text, const StopwordSet& stopwords);

enum class Split : std::uint8_t { kTrain, kTest };

struct Document {
  std::string id;
  std::vector<std::string> tokens;
  Split split = Split::kTrain;
};

/// Type statistics over the training split.
///
/// Types are kept in lexicographic (byte) order. `total_tokens` and
/// `num_docs` describe the corpus the vocabulary was built from and are
/// carried unchanged through `restrict_to`, so relative frequencies keep
/// their corpus-level denominators after out-of-vocabulary filtering.
class Vocabulary {
 public:
  Vocabulary() = default;

  /// Validates that `types` is strictly increasing and the arrays agree in
  /// length; throws kInvalidArgument otherwise.
  Vocabulary(std::vector<std::string> types, std::vector<std::uint64_t> term_freq,
             std::vector<std::uint64_t> doc_freq, std::uint64_t total_tokens,
             std::uint64_t num_docs);

  std::size_t size() const noexcept { return types_.size(); }
  bool empty() const noexcept { return types_.empty(); }

  const std::vector<std::string>& types() const noexcept { return types_; }
  const std::string& type(std::size_t i) const { return types_.at(i); }
  std::optional<std::size_t> find(std::string_view type) const;

  const std::vector<std::uint64_t>& term_freq() const noexcept { return term_freq_; }
  const std::vector<std::uint64_t>& doc_freq() const noexcept { return doc_freq_; }
  std::uint64_t total_tokens() const noexcept { return total_tokens_; }
  std::uint64_t num_docs() const noexcept { return num_docs_; }

  /// Keeps the types whose flag is set, preserving order and counts.
  Vocabulary restrict_to(const std::vector<bool>& keep) const;

  friend bool operator==(const Vocabulary& a, const Vocabulary& b) {
    return a.types_ == b.types_ && a.term_freq_ == b.term_freq_ && a.doc_freq_ == b.doc_freq_ &&
           a.total_tokens_ == b.total_tokens_ && a.num_docs_ == b.num_docs_;
  }

 private:
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  std::vector<std::string> types_;
  std::vector<std::uint64_t> term_freq_;
  std::vector<std::uint64_t> doc_freq_;
  std::uint64_t total_tokens_ = 0;
  std::uint64_t num_docs_ = 0;
  std::unordered_map<std::string, std::size_t, Hash, std::equal_to<>> index_;
};

/// Counts term and document frequencies over the train-split documents in
/// `docs` (test documents are ignored) and keeps types with
/// doc_freq >= min_df. `total_tokens` is the number of retained tokens.
/// Throws kInvalidArgument when there are no training documents and
/// kEmptyVocabulary when nothing survives the filter.
Vocabulary build_vocabulary(std::span<const Document> docs, std::uint64_t min_df = 5);

/// Loads the 20 Newsgroups "bydate" archive layout:
/// <root>/20news-bydate-train/<group>/<file> and the matching -test tree.
/// Message headers (everything up to the first blank line) are dropped.
/// Documents are returned train first, then test, each sorted by path.
std::vector<Document> load_20ng(const std::filesystem::path& root, const StopwordSet& stopwords);

/// Generic corpus: one document per line of `corpus_file`. `split_file`
/// lists the 1-based line numbers of test documents, whitespace separated;
/// every other line is a training document.
std::vector<Document> load_line_corpus(const std::filesystem::path& corpus_file,
                                       const std::filesystem::path& split_file,
                                       const StopwordSet& stopwords);

/// Per-document normalized term frequencies f_{t,d} / len(d) over training
/// documents, with each document restricted to vocabulary types first.
/// Indices refer to `types`, which is the vocabulary's type list at the
/// time of construction.
struct DocTermFrequencies {
  std::vector<std::string> types;
  std::vector<std::vector<std::pair<std::uint32_t, double>>> docs;
};

DocTermFrequencies document_term_frequencies(std::span<const Document> docs,
                                             const Vocabulary& vocab);

/// TSV: `#total_tokens=<N> num_docs=<D>` then `type\tterm_freq\tdoc_freq`.
void write_vocabulary(std::ostream& out, const Vocabulary& vocab);
Vocabulary read_vocabulary(std::istream& in);
void save_vocabulary(const std::filesystem::path& path, const Vocabulary& vocab);
Vocabulary load_vocabulary(const std::filesystem::path& path);

/// Tokenized corpus dump: `split\tid\ttoken token ...` per document.
void save_documents(const std::filesystem::path& path, std::span<const Document> docs);
std::vector<Document> load_documents(const std::filesystem::path& path);

}  // namespace embedtopics

#endif  // EMBEDTOPICS_CORPUS_HPP
