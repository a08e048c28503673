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

#include "sparsedit/edit/plan.h"
#include "sparsedit/edit/tags.h"
#include "sparsedit/edit/tokenizer.h"

namespace sparsedit::edit {

// Operation costs, in half units so the DP stays in integers.
inline constexpr int kKeepCost = 0;
inline constexpr int kTransformCost = 1;
inline constexpr int kReplaceCost = 2;
inline constexpr int kDeleteCost = 2;
inline constexpr int kInsertCost = 2;

// Minimum-cost word alignment of source onto target, encoded as an EditPlan.
//
// Moves: KEEP (exact match, 0), TRANSFORM (0.5; one-to-one rewrites, hyphen
// merge of two source tokens, hyphen split into several target tokens),
// REPLACE (1), DELETE (1) and INSERT (1 per target token). Inserted tokens
// join the slot of the nearest preceding KEEP/REPLACE position, or the
// virtual start, so an insertion may only follow such a position (possibly
// across deletions). Among equal-cost alignments the earliest decision is
// taken in the order KEEP > TRANSFORM > REPLACE > DELETE > INSERT.
EditPlan Align(const TokenSequence& source, const TokenSequence& target,
               const TagSet& tag_set);

// Cost of a plan under the same cost model (in whole units).
double PlanCost(const EditPlan& plan);

}  // namespace sparsedit::edit
