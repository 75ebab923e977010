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

#ifndef EMBEDTOPICS_SRC_TEXT_HPP
#define EMBEDTOPICS_SRC_TEXT_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace embedtopics::detail {

inline constexpr char32_t kReplacementChar = 0xFFFD;

/// Decodes UTF-8, replacing each invalid or truncated sequence with U+FFFD.
std::u32string decode_utf8(std::string_view bytes);
void append_utf8(std::string& out, char32_t cp);

bool is_unicode_space(char32_t cp);
bool is_unicode_digit(char32_t cp);
/// ASCII punctuation and symbols, Latin-1 punctuation, General Punctuation,
/// CJK and full-width punctuation, plus U+FFFD.
bool is_unicode_punct(char32_t cp);
/// Simple case mapping for ASCII, Latin-1, Latin Extended-A, Greek and
/// Cyrillic.
char32_t to_lower(char32_t cp);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);

/// Shortest representation that parses back to the same double.
std::string format_double(double value);
/// Fixed six-decimal rendering used in CSV reports.
std::string format_fixed(double value, int decimals = 6);

/// Parses the entire field as a double; false on any leftover characters.
bool parse_double(std::string_view text, double& value);
bool parse_uint(std::string_view text, std::uint64_t& value);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split_fields(std::string_view line);

/// 64-bit FNV-1a.
class Fnv1a {
 public:
  void update(std::string_view bytes);
  std::uint64_t digest() const noexcept { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 14695981039346656037ull;
};

}  // namespace embedtopics::detail

#endif  // EMBEDTOPICS_SRC_TEXT_HPP
