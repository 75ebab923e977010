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

#ifndef EMBEDTOPICS_EVALUATION_HPP
#define EMBEDTOPICS_EVALUATION_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "embedtopics/corpus.hpp"
#include "embedtopics/topics.hpp"

namespace embedtopics {

/// Boolean co-occurrence counts over sliding token windows.
///
/// Windows have `window_size` tokens and stride 1; a document shorter than
/// the window is one window, an empty document contributes none. A window
/// size of 0 selects whole-document windows. Counts are answered from a
/// positional index built once, so unigram and pair queries are read-only
/// and safe to issue from several threads.
class CooccurrenceIndex {
 public:
  static constexpr std::size_t kWholeDocument = 0;

  CooccurrenceIndex() = default;

  std::size_t window_size() const noexcept { return window_size_; }
  std::uint64_t total_windows() const noexcept { return total_windows_; }

  /// Number of windows containing `type`.
  std::uint64_t unigram_count(std::string_view type) const;
  /// Number of windows containing both types. Symmetric. A type paired with
  /// itself returns its unigram count.
  std::uint64_t pair_count(std::string_view a, std::string_view b) const;

  friend CooccurrenceIndex build_index(std::span<const Document> docs, std::size_t window_size);

 private:
  struct Interval {
    std::uint64_t begin;  // global window ids, half open
    std::uint64_t end;
  };
  struct Posting {
    std::vector<Interval> windows;  // sorted, disjoint, non-adjacent
    std::uint64_t count = 0;
  };
  struct Hash {
    using is_transparent = void;
    std::size_t operator()(std::string_view s) const noexcept {
      return std::hash<std::string_view>{}(s);
    }
  };

  const Posting* find(std::string_view type) const;

  std::size_t window_size_ = 10;
  std::uint64_t total_windows_ = 0;
  std::unordered_map<std::string, Posting, Hash, std::equal_to<>> postings_;
};

/// Indexes every document passed in; callers pass the test split.
/// Throws kInvalidArgument when `docs` is empty.
CooccurrenceIndex build_index(std::span<const Document> docs, std::size_t window_size = 10);

/// Default smoothing for a given index: 1e-3 / total_windows^2.
double default_epsilon(const CooccurrenceIndex& index);

/// NPMI of one word pair. Zero joint counts use `epsilon` as the joint
/// probability; a word that never occurs scores -1.
double pair_npmi(std::string_view a, std::string_view b, const CooccurrenceIndex& index,
                 double epsilon);

/// Mean pairwise NPMI over the topic's words (i < j). A single-word topic
/// has no pairs and scores 0.
double npmi(const Topic& topic, const CooccurrenceIndex& index,
            std::optional<double> epsilon = std::nullopt);

struct SeedScore {
  std::uint64_t seed = 0;
  std::vector<double> per_topic;
  double mean = 0.0;
};

struct NpmiReport {
  Provenance provenance;  ///< seed field is the first seed's
  std::vector<SeedScore> per_seed;
  double mean = 0.0;
  double std_dev = 0.0;  ///< population deviation of the per-seed means

  std::vector<std::uint64_t> seeds() const;
};

/// Scores every topic set and aggregates across seeds. Throws
/// kProvenanceMismatch if the sets differ in anything but the seed and
/// kInvalidArgument if `topic_sets` is empty.
NpmiReport evaluate_run(std::span<const TopicSet> topic_sets, const CooccurrenceIndex& index,
                        std::optional<double> epsilon = std::nullopt);

void write_report_json(std::ostream& out, const NpmiReport& report);
/// Header for the results CSV: one row per (embedding, algorithm,
/// weighting, reranking) cell.
std::string results_csv_header();
std::string results_csv_row(const NpmiReport& report);

}  // namespace embedtopics

#endif  // EMBEDTOPICS_EVALUATION_HPP
