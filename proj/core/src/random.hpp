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

#ifndef EMBEDTOPICS_SRC_RANDOM_HPP
#define EMBEDTOPICS_SRC_RANDOM_HPP

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace embedtopics::detail {

/// mt19937_64 with distribution code written out here, so a seed produces
/// the same stream regardless of the standard library in use.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller; consumes two uniforms per call.
  double normal();
  /// Index i with probability mass[i] / sum(mass). Returns mass.size() if
  /// the total mass is zero.
  std::size_t sample(std::span<const double> mass);

 private:
  std::mt19937_64 engine_;
};

}  // namespace embedtopics::detail

#endif  // EMBEDTOPICS_SRC_RANDOM_HPP
