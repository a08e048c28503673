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

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "sparsedit/edit/tags.h"

namespace sparsedit::encoder {

enum class SparsityMode { kDense, kSparseFfn, kSparseLastLayer };
enum class RouterKind { kTaskId, kLinear, kTaskIdLinear };
enum class Granularity { kSequence, kToken };
enum class Mode { kTag = 0, kGen = 1 };

std::string_view SparsityModeName(SparsityMode mode);
std::string_view RouterKindName(RouterKind kind);
std::string_view GranularityName(Granularity granularity);
std::string_view ModeName(Mode mode);
SparsityMode ParseSparsityMode(std::string_view name);
RouterKind ParseRouterKind(std::string_view name);
Granularity ParseGranularity(std::string_view name);

struct EncoderConfig {
  int num_layers = 4;
  int hidden_dim = 128;
  int num_heads = 4;
  int ffn_dim = 512;
  int vocab_size = 8000;  // upper bound; the built vocabulary may be smaller
  int max_seq_len = 128;
  std::vector<std::string> intents = {"fluency", "readability",
                                      "simplification", "neutralization"};
  SparsityMode sparsity = SparsityMode::kSparseFfn;
  RouterKind router = RouterKind::kTaskId;
  Granularity granularity = Granularity::kSequence;
  bool share_tag_gen = false;
  double lambda = 1.0;
  int n_masks = 4;
  double temperature = 0.7;
  double init_std = 0.02;
  double router_init_std = 0.001;
  edit::TagSetVariant tag_set = edit::TagSetVariant::kCore14;
  uint64_t seed = 0;

  int num_intents() const { return static_cast<int>(intents.size()); }
  bool sparse() const { return sparsity != SparsityMode::kDense; }
  // Experts per sparse slot: 2n, or n when tagging and generation share.
  int experts_per_slot() const {
    return share_tag_gen ? num_intents() : 2 * num_intents();
  }
  // Flat expert index z * n + r (r when shared).
  int ExpertIndex(int intent, Mode mode) const {
    return share_tag_gen ? intent
                         : static_cast<int>(mode) * num_intents() + intent;
  }
  int IntentIndex(std::string_view intent) const;  // -1 when unknown

  // Throws UsageError on violated invariants.
  void Validate() const;

  nlohmann::ordered_json ToJson() const;
  // Missing keys keep their defaults; unknown keys throw UsageError.
  static EncoderConfig FromJson(const nlohmann::json& j);
};

}  // namespace sparsedit::encoder
