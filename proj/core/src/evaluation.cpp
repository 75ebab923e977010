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

#include "embedtopics/evaluation.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <ostream>

#include "embedtopics/error.hpp"
#include "text.hpp"

namespace embedtopics {

const CooccurrenceIndex::Posting* CooccurrenceIndex::find(std::string_view type) const {
  const auto it = postings_.find(type);
  return it == postings_.end() ? nullptr : &it->second;
}

std::uint64_t CooccurrenceIndex::unigram_count(std::string_view type) const {
  const Posting* p = find(type);
  return p == nullptr ? 0 : p->count;
}

std::uint64_t CooccurrenceIndex::pair_count(std::string_view a, std::string_view b) const {
  const Posting* pa = find(a);
  const Posting* pb = find(b);
  if (pa == nullptr || pb == nullptr) return 0;
  if (pa == pb) return pa->count;
  std::uint64_t total = 0;
  auto ia = pa->windows.begin();
  auto ib = pb->windows.begin();
  while (ia != pa->windows.end() && ib != pb->windows.end()) {
    const std::uint64_t lo = std::max(ia->begin, ib->begin);
    const std::uint64_t hi = std::min(ia->end, ib->end);
    if (lo < hi) total += hi - lo;
    if (ia->end < ib->end) {
      ++ia;
    } else {
      ++ib;
    }
  }
  return total;
}

CooccurrenceIndex build_index(std::span<const Document> docs, std::size_t window_size) {
  if (docs.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot index an empty document set");
  CooccurrenceIndex index;
  index.window_size_ = window_size;
  std::uint64_t base = 0;
  for (const Document& doc : docs) {
    const std::uint64_t len = doc.tokens.size();
    if (len == 0) continue;
    const bool single = window_size == CooccurrenceIndex::kWholeDocument || len <= window_size;
    const std::uint64_t windows = single ? 1 : len - window_size + 1;
    for (std::uint64_t p = 0; p < len; ++p) {
      // Token p lies in windows max(0, p-w+1) .. min(p, windows-1).
      CooccurrenceIndex::Interval span{base, base + 1};
      if (!single) {
        span.begin = base + (p + 1 >= window_size ? p + 1 - window_size : 0);
        span.end = base + std::min(p, windows - 1) + 1;
      }
      auto& posting = index.postings_[doc.tokens[p]];
      if (!posting.windows.empty() && posting.windows.back().end >= span.begin) {
        auto& last = posting.windows.back();
        if (span.end > last.end) {
          posting.count += span.end - last.end;
          last.end = span.end;
        }
      } else {
        posting.windows.push_back(span);
        posting.count += span.end - span.begin;
      }
    }
    base += windows;
  }
  index.total_windows_ = base;
  if (base == 0) throw Error(ErrorCode::kInvalidArgument, "every document to index is empty");
  return index;
}

double default_epsilon(const CooccurrenceIndex& index) {
  const auto t = static_cast<double>(index.total_windows());
  return t > 0.0 ? 1e-3 / (t * t) : 1e-3;
}

double pair_npmi(std::string_view a, std::string_view b, const CooccurrenceIndex& index,
                 double epsilon) {
  const auto total = static_cast<double>(index.total_windows());
  const std::uint64_t ca = index.unigram_count(a);
  const std::uint64_t cb = index.unigram_count(b);
  if (ca == 0 || cb == 0 || total == 0.0) return -1.0;
  const std::uint64_t cab = index.pair_count(a, b);
  const double joint = cab == 0 ? epsilon : static_cast<double>(cab) / total;
  if (cab == index.total_windows()) return 1.0;
  const double pa = static_cast<double>(ca) / total;
  const double pb = static_cast<double>(cb) / total;
  return std::log(joint / (pa * pb)) / -std::log(joint);
}

double npmi(const Topic& topic, const CooccurrenceIndex& index, std::optional<double> epsilon) {
  const double eps = epsilon.value_or(default_epsilon(index));
  const auto& w = topic.words;
  double sum = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    for (std::size_t j = i + 1; j < w.size(); ++j) {
      sum += pair_npmi(w[i], w[j], index, eps);
      ++pairs;
    }
  }
  return pairs == 0 ? 0.0 : sum / static_cast<double>(pairs);
}

std::vector<std::uint64_t> NpmiReport::seeds() const {
  std::vector<std::uint64_t> out;
  for (const auto& s : per_seed) out.push_back(s.seed);
  return out;
}

NpmiReport evaluate_run(std::span<const TopicSet> topic_sets, const CooccurrenceIndex& index,
                        std::optional<double> epsilon) {
  if (topic_sets.empty()) throw Error(ErrorCode::kInvalidArgument, "no topic sets to evaluate");
  NpmiReport report;
  report.provenance = topic_sets.front().provenance;
  for (const TopicSet& set : topic_sets) {
    Provenance p = set.provenance;
    p.seed = report.provenance.seed;
    if (!(p == report.provenance)) {
      throw Error(ErrorCode::kProvenanceMismatch,
                  "topic set for seed " + std::to_string(set.provenance.seed) +
                      " differs from the first set in more than the seed");
    }
    SeedScore score;
    score.seed = set.provenance.seed;
    for (const Topic& t : set.topics) score.per_topic.push_back(npmi(t, index, epsilon));
    double sum = 0.0;
    for (double v : score.per_topic) sum += v;
    score.mean = score.per_topic.empty() ? 0.0 : sum / static_cast<double>(score.per_topic.size());
    report.per_seed.push_back(std::move(score));
  }
  const auto s = static_cast<double>(report.per_seed.size());
  double sum = 0.0;
  for (const auto& seed : report.per_seed) sum += seed.mean;
  report.mean = sum / s;
  double sq = 0.0;
  for (const auto& seed : report.per_seed) sq += (seed.mean - report.mean) * (seed.mean - report.mean);
  report.std_dev = std::sqrt(sq / s);
  return report;
}

void write_report_json(std::ostream& out, const NpmiReport& report) {
  nlohmann::json j;
  j["provenance"] = {{"embedding", report.provenance.embedding},
                     {"algorithm", to_string(report.provenance.algorithm)},
                     {"weighting", to_string(report.provenance.weighting)},
                     {"reranking", to_string(report.provenance.reranking)}};
  j["seeds"] = report.seeds();
  nlohmann::json per_seed = nlohmann::json::array();
  for (const auto& s : report.per_seed) {
    per_seed.push_back({{"seed", s.seed}, {"mean", s.mean}, {"per_topic", s.per_topic}});
  }
  j["per_seed"] = std::move(per_seed);
  j["mean"] = report.mean;
  j["std_dev"] = report.std_dev;
  out << j.dump(1) << '\n';
}

std::string results_csv_header() {
  return "embedding,algorithm,weighting,reranking,seeds,mean_npmi,std_npmi";
}

std::string results_csv_row(const NpmiReport& report) {
  std::string seeds;
  for (std::uint64_t s : report.seeds()) {
    if (!seeds.empty()) seeds += ';';
    seeds += std::to_string(s);
  }
  std::string name = report.provenance.embedding;
  if (name.find_first_of(",\"\n") != std::string::npos) {
    std::string quoted = "\"";
    for (char c : name) {
      if (c == '"') quoted += '"';
      quoted += c;
    }
    name = quoted + "\"";
  }
  return name + "," + std::string(to_string(report.provenance.algorithm)) + "," +
         std::string(to_string(report.provenance.weighting)) + "," +
         std::string(to_string(report.provenance.reranking)) + "," + seeds + "," +
         detail::format_double(report.mean) + "," + detail::format_double(report.std_dev);
}

}  // namespace embedtopics
