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

#include "sparsedit/edit/tags.h"

#include <array>
#include <stdexcept>

namespace sparsedit::edit {

namespace {

constexpr std::array<std::string_view, kNumVerbForms> kVerbFormNames = {
    "VB", "VBD", "VBG", "VBN", "VBZ"};

struct NamedKind {
  TagKind kind;
  std::string_view name;
};

constexpr std::array<NamedKind, 15> kKindNames = {{
    {TagKind::kKeep, "KEEP"},
    {TagKind::kDelete, "DELETE"},
    {TagKind::kReplace, "REPLACE"},
    {TagKind::kAppend, "APPEND"},
    {TagKind::kMergeHyphen, "MERGE_HYPHEN"},
    {TagKind::kMergeSpace, "MERGE_SPACE"},
    {TagKind::kAgreementPlural, "TRANSFORM_AGREEMENT_PLURAL"},
    {TagKind::kAgreementSingular, "TRANSFORM_AGREEMENT_SINGULAR"},
    {TagKind::kCaseCapital, "TRANSFORM_CASE_CAPITAL"},
    {TagKind::kCaseCapital1, "TRANSFORM_CASE_CAPITAL_1"},
    {TagKind::kCaseLower, "TRANSFORM_CASE_LOWER"},
    {TagKind::kCaseUpper, "TRANSFORM_CASE_UPPER"},
    {TagKind::kCaseUpperButLast, "TRANSFORM_CASE_UPPER_-1"},
    {TagKind::kSplitHyphen, "TRANSFORM_SPLIT_HYPHEN"},
    {TagKind::kVerb, "TRANSFORM_VERB"},
}};

constexpr std::string_view kVerbPrefix = "TRANSFORM_VERB_";

std::vector<EditTag> Kinds(std::initializer_list<TagKind> kinds) {
  std::vector<EditTag> out;
  for (TagKind k : kinds) out.push_back(EditTag::Of(k));
  return out;
}

}  // namespace

std::string_view VerbFormName(VerbForm form) {
  return kVerbFormNames[static_cast<int>(form)];
}

bool EditTag::IsTransform() const {
  switch (kind) {
    case TagKind::kKeep:
    case TagKind::kDelete:
    case TagKind::kReplace:
    case TagKind::kAppend:
    case TagKind::kMerged:
      return false;
    default:
      return true;
  }
}

std::string TagName(const EditTag& tag) {
  if (tag.kind == TagKind::kMerged) return "KEEP";
  if (tag.kind == TagKind::kVerbForm) {
    return std::string(kVerbPrefix) + std::string(VerbFormName(tag.from)) +
           "_" + std::string(VerbFormName(tag.to));
  }
  for (const auto& [kind, name] : kKindNames) {
    if (kind == tag.kind) return std::string(name);
  }
  throw std::logic_error("unnamed tag kind");
}

std::optional<EditTag> ParseTagName(std::string_view name) {
  for (const auto& [kind, kind_name] : kKindNames) {
    if (kind_name == name) return EditTag::Of(kind);
  }
  if (name.substr(0, kVerbPrefix.size()) == kVerbPrefix) {
    std::string_view rest = name.substr(kVerbPrefix.size());
    size_t sep = rest.find('_');
    if (sep == std::string_view::npos) return std::nullopt;
    std::optional<int> from, to;
    for (int f = 0; f < kNumVerbForms; ++f) {
      if (kVerbFormNames[f] == rest.substr(0, sep)) from = f;
      if (kVerbFormNames[f] == rest.substr(sep + 1)) to = f;
    }
    if (!from || !to || *from == *to) return std::nullopt;
    return EditTag::Verb(static_cast<VerbForm>(*from),
                         static_cast<VerbForm>(*to));
  }
  return std::nullopt;
}

std::string_view TagSetVariantName(TagSetVariant variant) {
  switch (variant) {
    case TagSetVariant::kKdra4:
      return "kdra4";
    case TagSetVariant::kCore14:
      return "core14";
    case TagSetVariant::kExtended34:
      return "extended34";
  }
  return "";
}

std::optional<TagSetVariant> ParseTagSetVariant(std::string_view name) {
  for (TagSetVariant v : {TagSetVariant::kKdra4, TagSetVariant::kCore14,
                          TagSetVariant::kExtended34}) {
    if (TagSetVariantName(v) == name) return v;
  }
  return std::nullopt;
}

TagSet::TagSet(TagSetVariant variant) : variant_(variant) {
  using K = TagKind;
  using V = VerbForm;
  switch (variant) {
    case TagSetVariant::kKdra4:
      tags_ = Kinds({K::kKeep, K::kDelete, K::kReplace, K::kAppend});
      break;
    case TagSetVariant::kCore14:
      tags_ = Kinds({K::kAppend, K::kDelete, K::kKeep, K::kMergeHyphen,
                     K::kReplace, K::kAgreementPlural, K::kAgreementSingular,
                     K::kCaseCapital, K::kCaseCapital1, K::kCaseLower,
                     K::kCaseUpper, K::kCaseUpperButLast, K::kSplitHyphen,
                     K::kVerb});
      break;
    case TagSetVariant::kExtended34: {
      tags_ = Kinds({K::kAppend, K::kDelete, K::kKeep, K::kMergeHyphen,
                     K::kMergeSpace, K::kReplace, K::kAgreementPlural,
                     K::kAgreementSingular, K::kCaseCapital, K::kCaseCapital1,
                     K::kCaseLower, K::kCaseUpper, K::kCaseUpperButLast,
                     K::kSplitHyphen});
      // Listing order: VBD, VBG, VBN, VBZ sources first, then VB.
      for (V from : {V::kVBD, V::kVBG, V::kVBN, V::kVBZ, V::kVB}) {
        for (V to : {V::kVB, V::kVBD, V::kVBG, V::kVBN, V::kVBZ}) {
          if (from != to) tags_.push_back(EditTag::Verb(from, to));
        }
      }
      break;
    }
  }
}

std::vector<std::string> TagSet::names() const {
  std::vector<std::string> out;
  out.reserve(tags_.size());
  for (const EditTag& t : tags_) out.push_back(TagName(t));
  return out;
}

int TagSet::IndexOf(const EditTag& tag) const {
  EditTag probe = tag;
  if (probe.kind == TagKind::kMerged) probe = EditTag::Keep();
  for (size_t i = 0; i < tags_.size(); ++i) {
    if (tags_[i].SameLabel(probe)) return static_cast<int>(i);
  }
  return -1;
}

}  // namespace sparsedit::edit
