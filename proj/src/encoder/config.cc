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

#include "sparsedit/encoder/config.h"

#include <algorithm>
#include <set>

#include "sparsedit/errors.h"

namespace sparsedit::encoder {

namespace {

template <typename Enum, size_t N>
Enum ParseEnum(std::string_view name, const std::string_view (&names)[N],
               const char* what) {
  for (size_t i = 0; i < N; ++i) {
    if (names[i] == name) return static_cast<Enum>(i);
  }
  throw UsageError(std::string("unknown ") + what + " '" + std::string(name) +
                   "'");
}

constexpr std::string_view kSparsityNames[] = {"dense", "sparse_ffn",
                                               "sparse_last_layer"};
constexpr std::string_view kRouterNames[] = {"task_id", "linear",
                                             "task_id_linear"};
constexpr std::string_view kGranularityNames[] = {"sequence", "token"};

}  // namespace

std::string_view SparsityModeName(SparsityMode mode) {
  return kSparsityNames[static_cast<int>(mode)];
}
std::string_view RouterKindName(RouterKind kind) {
  return kRouterNames[static_cast<int>(kind)];
}
std::string_view GranularityName(Granularity granularity) {
  return kGranularityNames[static_cast<int>(granularity)];
}
std::string_view ModeName(Mode mode) {
  return mode == Mode::kTag ? "tag" : "gen";
}
SparsityMode ParseSparsityMode(std::string_view name) {
  return ParseEnum<SparsityMode>(name, kSparsityNames, "sparsity mode");
}
RouterKind ParseRouterKind(std::string_view name) {
  return ParseEnum<RouterKind>(name, kRouterNames, "router");
}
Granularity ParseGranularity(std::string_view name) {
  return ParseEnum<Granularity>(name, kGranularityNames, "routing granularity");
}

int EncoderConfig::IntentIndex(std::string_view intent) const {
  auto it = std::find(intents.begin(), intents.end(), intent);
  return it == intents.end() ? -1 : static_cast<int>(it - intents.begin());
}

void EncoderConfig::Validate() const {
  auto require = [](bool ok, const std::string& message) {
    if (!ok) throw UsageError("invalid encoder config: " + message);
  };
  require(num_layers >= 1, "num_layers must be >= 1");
  require(hidden_dim >= 1 && num_heads >= 1, "sizes must be positive");
  require(hidden_dim % num_heads == 0,
          "hidden_dim must be divisible by num_heads");
  require(ffn_dim >= 1, "ffn_dim must be >= 1");
  require(vocab_size >= 1, "vocab_size must be >= 1");
  require(max_seq_len >= 2, "max_seq_len must be >= 2");
  require(!intents.empty(), "at least one intent is required");
  require(std::set<std::string>(intents.begin(), intents.end()).size() ==
              intents.size(),
          "intent names must be distinct");
  require(lambda >= 0, "lambda must be >= 0");
  require(n_masks >= 1, "n_masks must be >= 1");
  require(temperature > 0, "temperature must be > 0");
  require(init_std >= 0 && router_init_std >= 0, "init std must be >= 0");
}

nlohmann::ordered_json EncoderConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["num_layers"] = num_layers;
  j["hidden_dim"] = hidden_dim;
  j["num_heads"] = num_heads;
  j["ffn_dim"] = ffn_dim;
  j["vocab_size"] = vocab_size;
  j["max_seq_len"] = max_seq_len;
  j["intents"] = intents;
  j["sparsity"] = SparsityModeName(sparsity);
  j["router"] = RouterKindName(router);
  j["granularity"] = GranularityName(granularity);
  j["share_tag_gen"] = share_tag_gen;
  j["lambda"] = lambda;
  j["n_masks"] = n_masks;
  j["temperature"] = temperature;
  j["init_std"] = init_std;
  j["router_init_std"] = router_init_std;
  j["tag_set"] = edit::TagSetVariantName(tag_set);
  j["seed"] = seed;
  return j;
}

EncoderConfig EncoderConfig::FromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw UsageError("encoder config must be an object");
  EncoderConfig c;
  try {
    for (const auto& [key, value] : j.items()) {
      if (key == "num_layers") c.num_layers = value.get<int>();
      else if (key == "hidden_dim") c.hidden_dim = value.get<int>();
      else if (key == "num_heads") c.num_heads = value.get<int>();
      else if (key == "ffn_dim") c.ffn_dim = value.get<int>();
      else if (key == "vocab_size") c.vocab_size = value.get<int>();
      else if (key == "max_seq_len") c.max_seq_len = value.get<int>();
      else if (key == "intents") c.intents = value.get<std::vector<std::string>>();
      else if (key == "sparsity") c.sparsity = ParseSparsityMode(value.get<std::string>());
      else if (key == "router") c.router = ParseRouterKind(value.get<std::string>());
      else if (key == "granularity") c.granularity = ParseGranularity(value.get<std::string>());
      else if (key == "share_tag_gen") c.share_tag_gen = value.get<bool>();
      else if (key == "lambda") c.lambda = value.get<double>();
      else if (key == "n_masks") c.n_masks = value.get<int>();
      else if (key == "temperature") c.temperature = value.get<double>();
      else if (key == "init_std") c.init_std = value.get<double>();
      else if (key == "router_init_std") c.router_init_std = value.get<double>();
      else if (key == "tag_set") {
        auto variant = edit::ParseTagSetVariant(value.get<std::string>());
        if (!variant) throw UsageError("unknown tag set '" + value.get<std::string>() + "'");
        c.tag_set = *variant;
      } else if (key == "seed") c.seed = value.get<uint64_t>();
      else throw UsageError("unknown encoder config key '" + key + "'");
    }
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("bad encoder config value: ") + e.what());
  }
  c.Validate();
  return c;
}

}  // namespace sparsedit::encoder
