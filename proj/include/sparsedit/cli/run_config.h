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
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sparsedit/cluster/embeddings.h"
#include "sparsedit/cluster/pipeline.h"
#include "sparsedit/edit/tags.h"
#include "sparsedit/encoder/config.h"
#include "sparsedit/encoder/trainer.h"
#include "sparsedit/ingest/filters.h"

namespace sparsedit::cli {

struct IngestSection {
  ingest::FilterConfig filter;
};

struct ClusterSection {
  cluster::ClusterConfig params;
  int embedder_dim = cluster::HashedBowEmbedder::kDefaultDim;
  std::optional<std::string> prompts;  // seed-prompt file; built-in when empty
};

struct AnnotateSection {
  edit::TagSetVariant tag_set = edit::TagSetVariant::kCore14;
  int n_masks = 4;
};

struct TrainSection {
  encoder::EncoderConfig encoder;
  encoder::TrainOptions options;
};

struct EvalSection {
  std::vector<std::string> datasets;
  bool sari = true;
  bool gleu = true;
  bool em = true;
};

// Effective configuration of a run. The top-level seed is the only source
// of randomness; it is copied into the encoder config.
struct RunConfig {
  uint64_t seed = 0;
  IngestSection ingest;
  ClusterSection cluster;
  AnnotateSection annotate;
  TrainSection train;
  EvalSection eval;

  // Missing keys keep their defaults. Unknown keys, a seed inside a section
  // and tag-set or mask settings that disagree between annotate and
  // train.encoder throw UsageError.
  static RunConfig FromJson(const nlohmann::json& j);
  static RunConfig Load(const std::string& path);  // IoError, UsageError
  nlohmann::ordered_json ToJson() const;
};

}  // namespace sparsedit::cli
