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
#include <span>
#include <string>
#include <string_view>

#include "sparsedit/edit/tags.h"
#include "sparsedit/edit/tokenizer.h"

namespace sparsedit::edit {

// Applies a transform tag to the head of `tokens` and returns the produced
// tokens. MERGE_* consumes tokens[0] and tokens[1]; every other transform
// consumes tokens[0] only (see TransformArity). The generic TRANSFORM_VERB
// takes its corrected form from an insertion slot and so cannot be applied
// here. Throws InapplicableTransform when the rule cannot fire or when the
// result would not survive re-tokenization.
TokenSequence ApplyTransform(const EditTag& tag,
                             std::span<const std::string> tokens);

// Single-token convenience form for one-in/one-out transforms.
std::string ApplyTransform(const EditTag& tag, std::string_view token);

// Source tokens consumed by a transform (2 for MERGE_*, otherwise 1).
int TransformArity(const EditTag& tag);

// First one-to-one transform in `tag_set` mapping src to tgt, in priority
// order case > agreement > verb. For Core14 a verb-form change yields the
// generic TRANSFORM_VERB; for Extended34 the specific VERB_X_Y tag.
std::optional<EditTag> DetectTransform(std::string_view src,
                                       std::string_view tgt,
                                       const TagSet& tag_set);

// Merge tag in `tag_set` turning (first, second) into `merged`, if any.
std::optional<EditTag> DetectMerge(std::string_view first,
                                   std::string_view second,
                                   std::string_view merged,
                                   const TagSet& tag_set);

// True when the tag set has SPLIT_HYPHEN and splitting `token` yields
// exactly `parts`.
bool DetectSplit(std::string_view token, std::span<const std::string> parts,
                 const TagSet& tag_set);

// True when src and tgt are two forms of one verb.
bool IsVerbFormChange(std::string_view src, std::string_view tgt);

}  // namespace sparsedit::edit
