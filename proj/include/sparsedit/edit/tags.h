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
#include <string_view>
#include <vector>

namespace sparsedit::edit {

enum class VerbForm { kVB = 0, kVBD, kVBG, kVBN, kVBZ };
inline constexpr int kNumVerbForms = 5;

std::string_view VerbFormName(VerbForm form);

enum class TagKind {
  kKeep,
  kDelete,
  kReplace,
  kAppend,
  kMergeHyphen,
  kMergeSpace,
  kAgreementPlural,
  kAgreementSingular,
  kCaseCapital,
  kCaseCapital1,
  kCaseLower,
  kCaseUpper,
  kCaseUpperButLast,
  kSplitHyphen,
  kVerb,         // generic verb-form change; the corrected form rides in a slot
  kVerbForm,     // VERB_<from>_<to>, resolved through the verb lexicon
  kMerged,       // internal: the token consumed by a preceding MERGE_*
};

// One per-position operation. `slot` is set for APPEND, REPLACE and the
// generic verb tag; `from`/`to` only for kVerbForm.
struct EditTag {
  TagKind kind = TagKind::kKeep;
  VerbForm from = VerbForm::kVB;
  VerbForm to = VerbForm::kVB;
  int slot = -1;

  static EditTag Keep() { return {}; }
  static EditTag Of(TagKind kind) { return EditTag{kind}; }
  static EditTag WithSlot(TagKind kind, int slot) {
    return EditTag{kind, VerbForm::kVB, VerbForm::kVB, slot};
  }
  static EditTag Verb(VerbForm from, VerbForm to) {
    return EditTag{TagKind::kVerbForm, from, to, -1};
  }

  bool UsesSlot() const {
    return kind == TagKind::kAppend || kind == TagKind::kReplace ||
           kind == TagKind::kVerb;
  }
  bool IsTransform() const;
  // Label equality ignores slot ids.
  bool SameLabel(const EditTag& other) const {
    return kind == other.kind &&
           (kind != TagKind::kVerbForm ||
            (from == other.from && to == other.to));
  }
};

// Canonical label string, e.g. "TRANSFORM_CASE_UPPER_-1". kMerged renders as
// "KEEP": on the wire the consumed token of a merge is a plain KEEP.
std::string TagName(const EditTag& tag);
std::optional<EditTag> ParseTagName(std::string_view name);

enum class TagSetVariant { kKdra4, kCore14, kExtended34 };

std::string_view TagSetVariantName(TagSetVariant variant);
std::optional<TagSetVariant> ParseTagSetVariant(std::string_view name);

// An ordered label inventory. Label ids follow the published listing order
// and never change between runs.
class TagSet {
 public:
  explicit TagSet(TagSetVariant variant);

  TagSetVariant variant() const { return variant_; }
  int size() const { return static_cast<int>(tags_.size()); }
  const std::vector<EditTag>& tags() const { return tags_; }
  std::vector<std::string> names() const;

  bool Contains(const EditTag& tag) const { return IndexOf(tag) >= 0; }
  // Label id of `tag`, or -1. kMerged maps to KEEP's id.
  int IndexOf(const EditTag& tag) const;
  const EditTag& At(int index) const { return tags_.at(index); }
  int keep_index() const { return IndexOf(EditTag::Keep()); }

 private:
  TagSetVariant variant_;
  std::vector<EditTag> tags_;
};

}  // namespace sparsedit::edit
