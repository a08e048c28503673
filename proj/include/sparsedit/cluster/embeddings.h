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

#pragma once

#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace sparsedit::cluster {

using FloatMatrix =
    Eigen::Matrix<float, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

struct EmbeddingMatrix {
  std::vector<std::string> ids;  // one per row
  FloatMatrix values;
};

// Reads either a text matrix (header "n d", then n rows of d numbers; ids
// are the row indices) or JSONL {"id": ..., "vec": [...]}. Throws DimMismatch
// on shape errors and NonFiniteValue(row) with a 0-based row index.
EmbeddingMatrix ReadEmbeddings(std::istream& in);
EmbeddingMatrix LoadEmbeddings(const std::string& path);

// Hashed bag-of-words sentence embedder: lowercased alphanumeric words are
// hashed (64-bit FNV-1a) into `dim` signed buckets and the vector is
// L2-normalized. Text without words maps to the zero vector.
class HashedBowEmbedder {
 public:
  static constexpr int kDefaultDim = 256;

  explicit HashedBowEmbedder(int dim = kDefaultDim) : dim_(dim) {}
  int dim() const { return dim_; }

  Eigen::VectorXf Embed(std::string_view text) const;
  FloatMatrix EmbedAll(const std::vector<std::string>& texts) const;

 private:
  int dim_;
};

// Lowercased alphanumeric words of `text`, in order.
std::vector<std::string> Words(std::string_view text);

}  // namespace sparsedit::cluster
