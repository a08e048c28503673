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

#include <string>
#include <vector>

#include "sparsedit/edit/tags.h"
#include "sparsedit/edit/tokenizer.h"

namespace sparsedit::edit {

// Per-position tags for a source sentence plus the insertion slots they
// reference. tags[0] is the virtual sentence-start position (KEEP or
// APPEND); tags[i] belongs to source token i-1. Slot ids index `insertions`
// and are assigned left to right.
struct EditPlan {
  std::vector<EditTag> tags;
  std::vector<TokenSequence> insertions;

  bool operator==(const EditPlan& other) const;
};

// All-KEEP plan for a source of `length` tokens.
EditPlan IdentityPlan(size_t length);

// Checks slot bookkeeping and position constraints; throws
// PlanShapeMismatch.
void ValidatePlan(const EditPlan& plan, size_t source_length);

// Emits the edited token sequence left to right. Throws PlanShapeMismatch or
// InapplicableTransform.
TokenSequence ApplyPlan(const TokenSequence& source, const EditPlan& plan);

// Wire labels of the plan (one string per position; the consumed token of a
// merge is written as KEEP).
std::vector<std::string> PlanTagNames(const EditPlan& plan);

// Inverse of PlanTagNames + insertions: restores merge markers and slot ids.
EditPlan PlanFromTagNames(const std::vector<std::string>& names,
                          std::vector<TokenSequence> insertions);

}  // namespace sparsedit::edit
