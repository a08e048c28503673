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

#include <optional>
#include <string>
#include <vector>

#include "sparsedit/edit/plan.h"
#include "sparsedit/sentence_pair.h"
#include "sparsedit/edit/tags.h"
#include "sparsedit/edit/tokenizer.h"

namespace sparsedit::edit {

using ::sparsedit::SentencePair;

inline constexpr char kMaskToken[] = "[MASK]";
inline constexpr char kPadToken[] = "[PAD]";
inline constexpr char kDeleteOpen[] = "[DELETE]";
inline constexpr char kDeleteClose[] = "[/DELETE]";
inline constexpr char kVerbOpen[] = "[TRANSFORM_VERB]";
inline constexpr char kVerbClose[] = "[/TRANSFORM_VERB]";

// Generator input: the source after tagging-phase edits, with n [MASK]
// tokens at every insertion site. `gold` has one entry per [MASK], in order.
struct MaskedInput {
  TokenSequence tokens;
  TokenSequence gold;
};

// Layout per position: KEEP -> tok; DELETE -> [DELETE] tok [/DELETE];
// APPEND -> tok [MASK]*n; REPLACE -> [MASK]*n [DELETE] tok [/DELETE];
// TRANSFORM_VERB -> [MASK]*n [TRANSFORM_VERB] tok [/TRANSFORM_VERB];
// other transforms -> their output tokens. Throws InsertionTooLong when a
// slot holds more than n_masks tokens.
MaskedInput RenderMaskedInput(const TokenSequence& source,
                              const EditPlan& plan, int n_masks);

struct TaggingExample {
  TokenSequence tokens;     // source tokens (position 0 is the virtual start)
  std::vector<int> labels;  // tag ids, size tokens.size() + 1
};

struct GenerationExample {
  TokenSequence tokens;  // masked input
  TokenSequence gold;    // one target per [MASK]
};

struct AnnotatedPair {
  SentencePair pair;
  EditPlan plan;
  TaggingExample tagging;
  GenerationExample generation;
};

// Aligns and renders a pair. Returns nullopt when an insertion is longer
// than n_masks (the pair is dropped from training).
std::optional<AnnotatedPair> PlanToExamples(const SentencePair& pair,
                                            const TagSet& tag_set,
                                            int n_masks);

// Training-example JSONL line:
// {"source","target","intent","tags","insertions":{"<slot>":[...]}}.
std::string ToJsonLine(const AnnotatedPair& example);

}  // namespace sparsedit::edit
