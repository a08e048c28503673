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

#include <array>
#include <optional>
#include <vector>

#include "sparsedit/edit/masked.h"
#include "sparsedit/encoder/config.h"
#include "sparsedit/encoder/model.h"
#include "sparsedit/encoder/vocab.h"
#include "sparsedit/sentence_pair.h"

namespace sparsedit::encoder {

// One encoded training sequence. `ids` starts with [CLS], which stands for
// the virtual sentence-start position.
struct Example {
  std::vector<int> ids;
  std::vector<int> label_rows;
  std::vector<int> labels;
};

// [CLS] followed by the token ids.
std::vector<int> EncodeInput(const Vocabulary& vocab,
                             const edit::TokenSequence& tokens);

// Tagging example: every row is labeled, row 0 with the start tag.
Example EncodeTagging(const Vocabulary& vocab,
                      const edit::TaggingExample& tagging);

// Generation example labeled at its [MASK] rows; nullopt when the input has
// no [MASK].
std::optional<Example> EncodeGeneration(const Vocabulary& vocab,
                                        const edit::GenerationExample& gen);

// Training pools per intent, indexed [intent][mode].
struct TrainingPools {
  std::vector<std::array<std::vector<Example>, 2>> pools;
  int64_t dropped_too_long = 0;
  int64_t dropped_long_insertion = 0;
  int64_t dropped_unknown_intent = 0;

  std::vector<Example>& at(int intent, Mode mode) {
    return pools.at(intent)[static_cast<int>(mode)];
  }
  const std::vector<Example>& at(int intent, Mode mode) const {
    return pools.at(intent)[static_cast<int>(mode)];
  }
};

// Annotates intent-labeled pairs and encodes them. Pairs whose intent is not
// in config.intents, whose insertions exceed config.n_masks or whose inputs
// exceed config.max_seq_len are counted and skipped.
TrainingPools BuildTrainingPools(const std::vector<SentencePair>& pairs,
                                 const EncoderConfig& config,
                                 const Vocabulary& vocab);

// Token sequences (sources and targets) for vocabulary building.
std::vector<edit::TokenSequence> VocabularyCorpus(
    const std::vector<SentencePair>& pairs);

Batch MakeBatch(const std::vector<const Example*>& examples, int intent,
                Mode mode);

}  // namespace sparsedit::encoder
