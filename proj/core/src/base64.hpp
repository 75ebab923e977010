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

#ifndef EMBEDTOPICS_SRC_BASE64_HPP
#define EMBEDTOPICS_SRC_BASE64_HPP

#include <string>
#include <string_view>

namespace embedtopics::detail {

std::string base64_encode(std::string_view bytes);
/// Throws Error(kFormatError) on characters outside the alphabet or bad
/// padding.
std::string base64_decode(std::string_view text);

}  // namespace embedtopics::detail

#endif  // EMBEDTOPICS_SRC_BASE64_HPP
