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

#include "sparsedit/edit/plan.h"

#include "sparsedit/edit/transforms.h"
#include "sparsedit/errors.h"

namespace sparsedit::edit {

namespace {

bool IsMerge(const EditTag& tag) {
  return tag.kind == TagKind::kMergeHyphen || tag.kind == TagKind::kMergeSpace;
}

[[noreturn]] void Mismatch(const std::string& what) {
  throw PlanShapeMismatch(what);
}

}  // namespace

bool EditPlan::operator==(const EditPlan& other) const {
  if (tags.size() != other.tags.size() || insertions != other.insertions) {
    return false;
  }
  for (size_t i = 0; i < tags.size(); ++i) {
    if (!tags[i].SameLabel(other.tags[i]) || tags[i].slot != other.tags[i].slot) {
      return false;
    }
  }
  return true;
}

EditPlan IdentityPlan(size_t length) {
  return EditPlan{std::vector<EditTag>(length + 1, EditTag::Keep()), {}};
}

void ValidatePlan(const EditPlan& plan, size_t source_length) {
  if (plan.tags.size() != source_length + 1) {
    Mismatch("plan has " + std::to_string(plan.tags.size()) +
             " tags for a source of " + std::to_string(source_length) +
             " tokens");
  }
  const TagKind start = plan.tags[0].kind;
  if (start != TagKind::kKeep && start != TagKind::kAppend) {
    Mismatch("start position must be KEEP or APPEND");
  }
  std::vector<int> references(plan.insertions.size(), 0);
  int expected_slot = 0;
  for (size_t i = 0; i < plan.tags.size(); ++i) {
    const EditTag& tag = plan.tags[i];
    if (tag.UsesSlot()) {
      if (tag.slot != expected_slot ||
          tag.slot >= static_cast<int>(plan.insertions.size())) {
        Mismatch("slot reference out of order at position " +
                 std::to_string(i));
      }
      ++references[tag.slot];
      ++expected_slot;
    } else if (tag.slot != -1) {
      Mismatch("tag without slot semantics carries a slot");
    }
    if (IsMerge(tag) && (i + 1 >= plan.tags.size() ||
                         plan.tags[i + 1].kind != TagKind::kMerged)) {
      Mismatch("merge is not followed by a merged marker");
    }
    if (tag.kind == TagKind::kMerged && (i < 2 || !IsMerge(plan.tags[i - 1]))) {
      Mismatch("merged marker without a preceding merge");
    }
  }
  if (expected_slot != static_cast<int>(plan.insertions.size())) {
    Mismatch("unreferenced insertion slot");
  }
}

TokenSequence ApplyPlan(const TokenSequence& source, const EditPlan& plan) {
  ValidatePlan(plan, source.size());
  TokenSequence out;
  auto emit_slot = [&](const EditTag& tag) {
    const TokenSequence& slot = plan.insertions[tag.slot];
    out.insert(out.end(), slot.begin(), slot.end());
  };
  if (plan.tags[0].kind == TagKind::kAppend) emit_slot(plan.tags[0]);
  for (size_t i = 0; i < source.size(); ++i) {
    const EditTag& tag = plan.tags[i + 1];
    switch (tag.kind) {
      case TagKind::kKeep:
        out.push_back(source[i]);
        break;
      case TagKind::kAppend:
        out.push_back(source[i]);
        emit_slot(tag);
        break;
      case TagKind::kDelete:
      case TagKind::kMerged:
        break;
      case TagKind::kReplace:
      case TagKind::kVerb:
        emit_slot(tag);
        break;
      default: {
        TokenSequence produced = ApplyTransform(
            tag, std::span<const std::string>(source).subspan(i));
        out.insert(out.end(), produced.begin(), produced.end());
      }
    }
  }
  return out;
}

std::vector<std::string> PlanTagNames(const EditPlan& plan) {
  std::vector<std::string> names;
  names.reserve(plan.tags.size());
  for (const EditTag& tag : plan.tags) names.push_back(TagName(tag));
  return names;
}

EditPlan PlanFromTagNames(const std::vector<std::string>& names,
                          std::vector<TokenSequence> insertions) {
  EditPlan plan;
  plan.insertions = std::move(insertions);
  int next_slot = 0;
  for (const std::string& name : names) {
    auto tag = ParseTagName(name);
    if (!tag) Mismatch("unknown tag '" + name + "'");
    if (!plan.tags.empty() && IsMerge(plan.tags.back()) &&
        tag->kind == TagKind::kKeep) {
      tag = EditTag::Of(TagKind::kMerged);
    }
    if (tag->UsesSlot()) tag->slot = next_slot++;
    plan.tags.push_back(*tag);
  }
  return plan;
}

}  // namespace sparsedit::edit
