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

#include "sparsedit/edit/masked.h"

#include "json.hpp"

#include "sparsedit/edit/align.h"
#include "sparsedit/edit/transforms.h"
#include "sparsedit/errors.h"

namespace sparsedit::edit {

MaskedInput RenderMaskedInput(const TokenSequence& source,
                              const EditPlan& plan, int n_masks) {
  if (n_masks < 1) throw InsertionTooLong("n_masks must be at least 1");
  ValidatePlan(plan, source.size());
  MaskedInput out;
  auto masks = [&](const EditTag& tag) {
    const TokenSequence& slot = plan.insertions[tag.slot];
    if (static_cast<int>(slot.size()) > n_masks) {
      throw InsertionTooLong("insertion of " + std::to_string(slot.size()) +
                             " tokens exceeds " + std::to_string(n_masks) +
                             " masks");
    }
    for (int k = 0; k < n_masks; ++k) {
      out.tokens.emplace_back(kMaskToken);
      out.gold.push_back(k < static_cast<int>(slot.size()) ? slot[k]
                                                           : kPadToken);
    }
  };
  auto wrap = [&](const char* open, const std::string& token,
                  const char* close) {
    out.tokens.emplace_back(open);
    out.tokens.push_back(token);
    out.tokens.emplace_back(close);
  };
  if (plan.tags[0].kind == TagKind::kAppend) masks(plan.tags[0]);
  for (size_t i = 0; i < source.size(); ++i) {
    const EditTag& tag = plan.tags[i + 1];
    switch (tag.kind) {
      case TagKind::kKeep:
        out.tokens.push_back(source[i]);
        break;
      case TagKind::kMerged:
        break;
      case TagKind::kDelete:
        wrap(kDeleteOpen, source[i], kDeleteClose);
        break;
      case TagKind::kAppend:
        out.tokens.push_back(source[i]);
        masks(tag);
        break;
      case TagKind::kReplace:
        masks(tag);
        wrap(kDeleteOpen, source[i], kDeleteClose);
        break;
      case TagKind::kVerb:
        masks(tag);
        wrap(kVerbOpen, source[i], kVerbClose);
        break;
      default: {
        TokenSequence produced = ApplyTransform(
            tag, std::span<const std::string>(source).subspan(i));
        out.tokens.insert(out.tokens.end(), produced.begin(), produced.end());
      }
    }
  }
  return out;
}

std::optional<AnnotatedPair> PlanToExamples(const SentencePair& pair,
                                            const TagSet& tag_set,
                                            int n_masks) {
  const TokenSequence source = Tokenize(pair.source);
  const TokenSequence target = Tokenize(pair.target);
  EditPlan plan = Align(source, target, tag_set);
  for (const TokenSequence& slot : plan.insertions) {
    if (static_cast<int>(slot.size()) > n_masks) return std::nullopt;
  }
  AnnotatedPair out;
  out.pair = pair;
  out.tagging.tokens = source;
  for (const EditTag& tag : plan.tags) {
    out.tagging.labels.push_back(tag_set.IndexOf(tag));
  }
  MaskedInput masked = RenderMaskedInput(source, plan, n_masks);
  out.generation.tokens = std::move(masked.tokens);
  out.generation.gold = std::move(masked.gold);
  out.plan = std::move(plan);
  return out;
}

std::string ToJsonLine(const AnnotatedPair& example) {
  nlohmann::ordered_json j;
  j["source"] = example.pair.source;
  j["target"] = example.pair.target;
  j["intent"] = example.pair.intent.value_or("");
  j["tags"] = PlanTagNames(example.plan);
  nlohmann::ordered_json insertions = nlohmann::ordered_json::object();
  for (size_t slot = 0; slot < example.plan.insertions.size(); ++slot) {
    insertions[std::to_string(slot)] = example.plan.insertions[slot];
  }
  j["insertions"] = std::move(insertions);
  return j.dump();
}

}  // namespace sparsedit::edit
