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

#include "sparsedit/edit/transforms.h"

#include <algorithm>
#include <cctype>

#include "sparsedit/edit/morphology.h"
#include "sparsedit/errors.h"

namespace sparsedit::edit {

namespace {

char Upper(char c) {
  return static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
}
char Lower(char c) {
  return static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
}

[[noreturn]] void Inapplicable(const EditTag& tag, std::string_view token) {
  throw InapplicableTransform(TagName(tag) + " cannot apply to '" +
                              std::string(token) + "'");
}

// A produced token must tokenize back to itself.
bool IsStableToken(const std::string& token) {
  TokenSequence t = Tokenize(token);
  return t.size() == 1 && t[0] == token;
}

std::optional<std::string> TryOneToOne(const EditTag& tag,
                                       std::string_view token) {
  std::string out(token);
  switch (tag.kind) {
    case TagKind::kCaseCapital:
      if (out.empty()) return std::nullopt;
      out[0] = Upper(out[0]);
      break;
    case TagKind::kCaseCapital1:
      if (out.size() < 2) return std::nullopt;
      out[1] = Upper(out[1]);
      break;
    case TagKind::kCaseLower:
      for (char& c : out) c = Lower(c);
      break;
    case TagKind::kCaseUpper:
      for (char& c : out) c = Upper(c);
      break;
    case TagKind::kCaseUpperButLast:
      if (out.size() < 2) return std::nullopt;
      for (size_t i = 0; i + 1 < out.size(); ++i) out[i] = Upper(out[i]);
      break;
    case TagKind::kAgreementPlural: {
      auto plural = Pluralize(token);
      if (!plural) return std::nullopt;
      out = std::move(*plural);
      break;
    }
    case TagKind::kAgreementSingular: {
      auto singular = Singularize(token);
      if (!singular) return std::nullopt;
      out = *singular;
      break;
    }
    case TagKind::kVerbForm: {
      auto converted = ConvertVerb(token, tag.from, tag.to);
      if (!converted) return std::nullopt;
      out = *converted;
      break;
    }
    default:
      return std::nullopt;
  }
  if (!IsStableToken(out)) return std::nullopt;
  return out;
}

std::string ApplyOneToOne(const EditTag& tag, std::string_view token) {
  auto out = TryOneToOne(tag, token);
  if (!out) Inapplicable(tag, token);
  return std::move(*out);
}

bool CaseInsensitiveEqual(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (Lower(a[i]) != Lower(b[i])) return false;
  }
  return true;
}

}  // namespace

int TransformArity(const EditTag& tag) {
  return tag.kind == TagKind::kMergeHyphen || tag.kind == TagKind::kMergeSpace
             ? 2
             : 1;
}

TokenSequence ApplyTransform(const EditTag& tag,
                             std::span<const std::string> tokens) {
  if (tokens.empty() || static_cast<int>(tokens.size()) < TransformArity(tag)) {
    Inapplicable(tag, tokens.empty() ? std::string_view() : tokens[0]);
  }
  const std::string& token = tokens[0];
  switch (tag.kind) {
    case TagKind::kSplitHyphen: {
      if (token.find('-') == std::string::npos) Inapplicable(tag, token);
      TokenSequence parts;
      size_t start = 0;
      while (true) {
        size_t dash = token.find('-', start);
        std::string part = token.substr(
            start, dash == std::string::npos ? std::string::npos : dash - start);
        if (part.empty() || !IsStableToken(part)) Inapplicable(tag, token);
        parts.push_back(std::move(part));
        if (dash == std::string::npos) break;
        start = dash + 1;
      }
      return parts;
    }
    case TagKind::kMergeHyphen:
    case TagKind::kMergeSpace: {
      std::string merged = token +
                           (tag.kind == TagKind::kMergeHyphen ? "-" : "") +
                           tokens[1];
      if (!IsStableToken(merged)) Inapplicable(tag, token);
      return {merged};
    }
    default:
      return {ApplyOneToOne(tag, token)};
  }
}

std::string ApplyTransform(const EditTag& tag, std::string_view token) {
  if (TransformArity(tag) != 1 || tag.kind == TagKind::kSplitHyphen) {
    TokenSequence out = ApplyTransform(tag, std::span<const std::string>(
                                                TokenSequence{std::string(token)}));
    if (out.size() != 1) Inapplicable(tag, token);
    return out[0];
  }
  return ApplyOneToOne(tag, token);
}

bool IsVerbFormChange(std::string_view src, std::string_view tgt) {
  if (src == tgt) return false;
  for (int f = 0; f < kNumVerbForms; ++f) {
    for (int t = 0; t < kNumVerbForms; ++t) {
      if (f == t) continue;
      auto out = ConvertVerb(src, static_cast<VerbForm>(f),
                             static_cast<VerbForm>(t));
      if (out && *out == tgt) return true;
    }
  }
  return false;
}

std::optional<EditTag> DetectTransform(std::string_view src,
                                       std::string_view tgt,
                                       const TagSet& tag_set) {
  if (src == tgt) return std::nullopt;
  constexpr TagKind kOneToOne[] = {
      TagKind::kCaseCapital,     TagKind::kCaseCapital1,
      TagKind::kCaseLower,       TagKind::kCaseUpper,
      TagKind::kCaseUpperButLast, TagKind::kAgreementPlural,
      TagKind::kAgreementSingular};
  const bool same_letters = CaseInsensitiveEqual(src, tgt);
  for (TagKind kind : kOneToOne) {
    const bool is_case = kind != TagKind::kAgreementPlural &&
                         kind != TagKind::kAgreementSingular;
    if (is_case != same_letters) continue;
    EditTag tag = EditTag::Of(kind);
    if (!tag_set.Contains(tag)) continue;
    auto out = TryOneToOne(tag, src);
    if (out && *out == tgt) return tag;
  }
  if (same_letters) return std::nullopt;
  if (tag_set.Contains(EditTag::Of(TagKind::kVerb))) {
    if (IsVerbFormChange(src, tgt) && IsStableToken(std::string(tgt))) {
      return EditTag::Of(TagKind::kVerb);
    }
    return std::nullopt;
  }
  for (const EditTag& tag : tag_set.tags()) {
    if (tag.kind != TagKind::kVerbForm) continue;
    auto out = TryOneToOne(tag, src);
    if (out && *out == tgt) return tag;
  }
  return std::nullopt;
}

std::optional<EditTag> DetectMerge(std::string_view first,
                                   std::string_view second,
                                   std::string_view merged,
                                   const TagSet& tag_set) {
  if (merged.size() < first.size() + second.size() ||
      merged.substr(0, first.size()) != first ||
      merged.substr(merged.size() - second.size()) != second) {
    return std::nullopt;
  }
  const TokenSequence pair = {std::string(first), std::string(second)};
  for (TagKind kind : {TagKind::kMergeHyphen, TagKind::kMergeSpace}) {
    EditTag tag = EditTag::Of(kind);
    if (!tag_set.Contains(tag)) continue;
    try {
      if (ApplyTransform(tag, pair)[0] == merged) return tag;
    } catch (const InapplicableTransform&) {
    }
  }
  return std::nullopt;
}

bool DetectSplit(std::string_view token, std::span<const std::string> parts,
                 const TagSet& tag_set) {
  EditTag tag = EditTag::Of(TagKind::kSplitHyphen);
  if (!tag_set.Contains(tag) || parts.size() < 2 ||
      parts[0].size() >= token.size() ||
      token.substr(0, parts[0].size()) != parts[0]) {
    return false;
  }
  try {
    TokenSequence out =
        ApplyTransform(tag, TokenSequence{std::string(token)});
    return std::equal(out.begin(), out.end(), parts.begin(), parts.end());
  } catch (const InapplicableTransform&) {
    return false;
  }
}

}  // namespace sparsedit::edit
