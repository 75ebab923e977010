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

#include <nlohmann/json.hpp>

#include <bit>
#include <cstring>

#include "base64.hpp"
#include "embedtopics/clustering.hpp"
#include "embedtopics/error.hpp"
#include "text.hpp"

namespace embedtopics {

namespace {

using nlohmann::json;

constexpr int kModelFormatVersion = 1;

std::string pack_doubles(const double* values, std::size_t count) {
  std::string bytes(count * sizeof(double), '\0');
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t bits = std::bit_cast<std::uint64_t>(values[i]);
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    std::memcpy(bytes.data() + i * sizeof(double), &bits, sizeof(bits));
  }
  return detail::base64_encode(bytes);
}

std::vector<double> unpack_doubles(const std::string& text, std::size_t expected) {
  const std::string bytes = detail::base64_decode(text);
  if (bytes.size() != expected * sizeof(double)) {
    throw Error(ErrorCode::kFormatError, "model blob holds " + std::to_string(bytes.size()) +
                                             " bytes, expected " + std::to_string(expected * 8));
  }
  std::vector<double> out(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, bytes.data() + i * sizeof(double), sizeof(bits));
    if constexpr (std::endian::native == std::endian::big) bits = __builtin_bswap64(bits);
    out[i] = std::bit_cast<double>(bits);
  }
  return out;
}

template <typename Matrix>
json matrix_to_json(const Matrix& m) {
  const RowMatrix rows = m;  // row-major copy
  return json{{"rows", rows.rows()},
              {"cols", rows.cols()},
              {"f64le", pack_doubles(rows.data(), static_cast<std::size_t>(rows.size()))}};
}

RowMatrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  if (rows < 0 || cols < 0) throw Error(ErrorCode::kFormatError, "negative matrix shape");
  const auto values = unpack_doubles(j.at("f64le").get<std::string>(), static_cast<std::size_t>(rows * cols));
  RowMatrix out(rows, cols);
  std::copy(values.begin(), values.end(), out.data());
  return out;
}

}  // namespace

void save_model(const std::filesystem::path& path, const ClusterModel& model) {
  json j;
  j["format_version"] = kModelFormatVersion;
  j["kind"] = to_string(model.kind);
  j["k"] = model.k;
  j["seed"] = model.seed;
  j["iterations_run"] = model.iterations_run;
  j["converged"] = model.converged;
  j["objective_trace"] = matrix_to_json(
      Eigen::Map<const RowMatrix>(model.objective_trace.data(), 1,
                                  static_cast<Eigen::Index>(model.objective_trace.size())));
  j["centroids"] = matrix_to_json(model.centroids);
  j["labels"] = model.labels;
  if (!model.medoids.empty()) j["medoids"] = model.medoids;
  if (model.gmm) {
    json g;
    g["reg"] = pack_doubles(&model.gmm->reg, 1);
    g["means"] = matrix_to_json(model.gmm->means);
    g["mixture_weights"] = matrix_to_json(model.gmm->mixture_weights.transpose());
    json covs = json::array();
    for (const auto& cov : model.gmm->covariances) covs.push_back(matrix_to_json(cov));
    g["covariances"] = std::move(covs);
    j["gmm"] = std::move(g);
    j["responsibilities"] = matrix_to_json(model.responsibilities);
  }
  detail::write_file(path, j.dump(1) + "\n");
}

ClusterModel load_model(const std::filesystem::path& path) {
  try {
    const json j = json::parse(detail::read_file(path));
    if (j.at("format_version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorCode::kFormatError, path.string() + ": unsupported model format version");
    }
    ClusterModel model;
    model.kind = parse_cluster_kind(j.at("kind").get<std::string>());
    model.k = j.at("k").get<std::size_t>();
    model.seed = j.at("seed").get<std::uint64_t>();
    model.iterations_run = j.at("iterations_run").get<std::size_t>();
    model.converged = j.at("converged").get<bool>();
    const RowMatrix trace = matrix_from_json(j.at("objective_trace"));
    model.objective_trace.assign(trace.data(), trace.data() + trace.size());
    model.centroids = matrix_from_json(j.at("centroids"));
    model.labels = j.at("labels").get<std::vector<std::int32_t>>();
    if (j.contains("medoids")) model.medoids = j["medoids"].get<std::vector<std::size_t>>();
    if (j.contains("gmm")) {
      const json& g = j["gmm"];
      GmmParams params;
      params.reg = unpack_doubles(g.at("reg").get<std::string>(), 1).front();
      params.means = matrix_from_json(g.at("means"));
      params.mixture_weights = matrix_from_json(g.at("mixture_weights")).transpose();
      for (const auto& cov : g.at("covariances")) params.covariances.emplace_back(matrix_from_json(cov));
      model.gmm = std::move(params);
      model.responsibilities = matrix_from_json(j.at("responsibilities"));
    }
    if (static_cast<std::size_t>(model.centroids.rows()) != model.k) {
      throw Error(ErrorCode::kFormatError, path.string() + ": centroid count differs from k");
    }
    return model;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormatError, path.string() + ": " + e.what());
  }
}

}  // namespace embedtopics
