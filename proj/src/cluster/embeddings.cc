// Copyright 2026 The Sparsedit Authors
// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sparsedit/cluster/embeddings.h"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "sparsedit/errors.h"

namespace sparsedit::cluster {

namespace {

void CheckFinite(const FloatMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (!m.row(i).allFinite()) throw NonFiniteValue(i);
  }
}

float ParseFloat(const std::string& token, Eigen::Index row) {
  float value = 0;
  auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec == std::errc::result_out_of_range) throw NonFiniteValue(row);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw DimMismatch("row " + std::to_string(row) + ": bad number '" +
                      token + "'");
  }
  return value;
}

EmbeddingMatrix ReadText(std::istream& in) {
  long long n = -1, d = -1;
  std::string header;
  std::getline(in, header);
  std::istringstream hs(header);
  if (!(hs >> n >> d) || n < 0 || d < 0) {
    throw DimMismatch("embedding header must be 'n d', got '" + header + "'");
  }
  EmbeddingMatrix out;
  out.values.resize(n, d);
  std::string line;
  Eigen::Index row = 0;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string token;
    std::vector<float> values;
    while (ls >> token) values.push_back(ParseFloat(token, row));
    if (values.empty()) continue;
    if (row >= n) throw DimMismatch("more than " + std::to_string(n) + " rows");
    if (static_cast<long long>(values.size()) != d) {
      throw DimMismatch("row " + std::to_string(row) + " has " +
                        std::to_string(values.size()) + " values, expected " +
                        std::to_string(d));
    }
    for (long long j = 0; j < d; ++j) out.values(row, j) = values[j];
    out.ids.push_back(std::to_string(row));
    ++row;
  }
  if (row != n) {
    throw DimMismatch("expected " + std::to_string(n) + " rows, found " +
                      std::to_string(row));
  }
  return out;
}

EmbeddingMatrix ReadJsonl(std::istream& in) {
  std::vector<std::vector<float>> rows;
  std::vector<std::string> ids;
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const Eigen::Index row = static_cast<Eigen::Index>(rows.size());
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw DimMismatch("row " + std::to_string(row) + ": " + e.what());
    }
    if (!j.contains("vec") || !j["vec"].is_array()) {
      throw DimMismatch("row " + std::to_string(row) + " has no vec array");
    }
    std::vector<float> values;
    for (const auto& v : j["vec"]) {
      if (v.is_null()) {
        values.push_back(std::numeric_limits<float>::quiet_NaN());
      } else if (v.is_number()) {
        values.push_back(v.get<float>());
      } else {
        throw DimMismatch("row " + std::to_string(row) + ": non-numeric value");
      }
    }
    if (!rows.empty() && values.size() != rows[0].size()) {
      throw DimMismatch("row " + std::to_string(row) + " has " +
                        std::to_string(values.size()) + " values, expected " +
                        std::to_string(rows[0].size()));
    }
    const auto& id = j.contains("id") ? j["id"] : nlohmann::json();
    ids.push_back(id.is_string() ? id.get<std::string>()
                  : id.is_null() ? std::to_string(row)
                                 : id.dump());
    rows.push_back(std::move(values));
  }
  EmbeddingMatrix out;
  out.ids = std::move(ids);
  out.values.resize(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (size_t i = 0; i < rows.size(); ++i) {
    for (size_t j = 0; j < rows[i].size(); ++j) out.values(i, j) = rows[i][j];
  }
  return out;
}

}  // namespace

EmbeddingMatrix ReadEmbeddings(std::istream& in) {
  in >> std::ws;
  EmbeddingMatrix out = in.peek() == '{' ? ReadJsonl(in) : ReadText(in);
  CheckFinite(out.values);
  return out;
}

EmbeddingMatrix LoadEmbeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open embeddings file " + path);
  return ReadEmbeddings(in);
}

std::vector<std::string> Words(std::string_view text) {
  std::vector<std::string> words;
  std::string current;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    if (std::isalnum(u) || u >= 0x80) {
      current.push_back(static_cast<char>(std::tolower(u)));
    } else if (!current.empty()) {
      words.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) words.push_back(std::move(current));
  return words;
}

Eigen::VectorXf HashedBowEmbedder::Embed(std::string_view text) const {
  Eigen::VectorXf v = Eigen::VectorXf::Zero(dim_);
  for (const auto& word : Words(text)) {
    uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : word) {
      h ^= c;
      h *= 1099511628211ULL;
    }
    v(static_cast<Eigen::Index>(h % static_cast<uint64_t>(dim_))) +=
        (h >> 63) ? -1.0f : 1.0f;
  }
  const float norm = v.norm();
  if (norm > 0) v /= norm;
  return v;
}

FloatMatrix HashedBowEmbedder::EmbedAll(
    const std::vector<std::string>& texts) const {
  FloatMatrix out(static_cast<Eigen::Index>(texts.size()), dim_);
  for (size_t i = 0; i < texts.size(); ++i) {
    out.row(static_cast<Eigen::Index>(i)) = Embed(texts[i]).transpose();
  }
  return out;
}

}  // namespace sparsedit::cluster
