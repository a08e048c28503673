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

// Test-only oracles for the edit-ops module. Nothing here shares code with
// the DP aligner: paths are enumerated by plain recursion and transforms are
// tried tag by tag through ApplyTransform.

#include <algorithm>
#include <limits>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "sparsedit/edit/tags.h"
#include "sparsedit/edit/tokenizer.h"
#include "sparsedit/edit/transforms.h"
#include "sparsedit/errors.h"

namespace sparsedit::testing {

using edit::EditTag;
using edit::TagKind;
using edit::TagSet;
using edit::TokenSequence;

// Minimum alignment cost over every edit path, in whole units. `can_insert`
// tracks whether the previous emitting move may host an insertion.
inline double ExhaustiveMinCost(const TokenSequence& s, const TokenSequence& t,
                                const TagSet& tags, size_t i = 0,
                                size_t j = 0, bool can_insert = true) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  if (i == s.size() && j == t.size()) return 0.0;
  double best = kInf;
  if (i < s.size() && j < t.size()) {
    if (s[i] == t[j]) {
      best = std::min(best, ExhaustiveMinCost(s, t, tags, i + 1, j + 1, true));
    } else {
      best = std::min(best,
                      1.0 + ExhaustiveMinCost(s, t, tags, i + 1, j + 1, true));
    }
    for (const EditTag& tag : tags.tags()) {
      if (!tag.IsTransform()) continue;
      if (tag.kind == TagKind::kVerb) {
        if (s[i] != t[j] && edit::IsVerbFormChange(s[i], t[j])) {
          best = std::min(best, 0.5 + ExhaustiveMinCost(s, t, tags, i + 1,
                                                        j + 1, false));
        }
        continue;
      }
      TokenSequence produced;
      try {
        produced = edit::ApplyTransform(
            tag, std::span<const std::string>(s).subspan(i));
      } catch (const InapplicableTransform&) {
        continue;
      }
      const size_t consumed = edit::TransformArity(tag);
      if (j + produced.size() > t.size()) continue;
      if (!std::equal(produced.begin(), produced.end(), t.begin() + j)) {
        continue;
      }
      if (consumed == 1 && produced.size() == 1 && produced[0] == s[i]) {
        continue;
      }
      best = std::min(best, 0.5 + ExhaustiveMinCost(s, t, tags, i + consumed,
                                                    j + produced.size(),
                                                    false));
    }
  }
  if (i < s.size()) {
    best = std::min(best,
                    1.0 + ExhaustiveMinCost(s, t, tags, i + 1, j, can_insert));
  }
  if (j < t.size() && can_insert) {
    best = std::min(best, 1.0 + ExhaustiveMinCost(s, t, tags, i, j + 1, true));
  }
  return best;
}

// Words with reachable transforms: case, agreement, hyphenation, verbs.
inline const std::vector<std::string>& FuzzVocabulary() {
  static const std::vector<std::string> words = {
      "the",   "a",      "dog",     "cat",    "box",     "child",  "mouse",
      "run",   "ran",    "walk",    "walked", "goes",    "went",   "well",
      "known", "state",  "of-the",  "art",    "nasa",    "iphone", "jimi",
      "he",    "would",  "retire",  "great",  "fact",    "x-ray",  "to",
      "day",   "pcs",    "write",   "writing", "people", "study",  "."};
  return words;
}

// Random token sequence and a randomly edited version of it. Edits mix
// keeps, deletions, substitutions, insertions, transforms, merges and
// splits so every tag kind is exercised.
inline std::pair<TokenSequence, TokenSequence> RandomEditPair(
    std::mt19937_64& rng, const std::vector<std::string>& vocab,
    size_t max_len) {
  std::uniform_int_distribution<size_t> len_dist(0, max_len);
  std::uniform_int_distribution<size_t> word(0, vocab.size() - 1);
  std::uniform_int_distribution<int> op(0, 9);
  TokenSequence source(len_dist(rng));
  for (auto& w : source) w = vocab[word(rng)];
  static const TagSet all(edit::TagSetVariant::kExtended34);
  TokenSequence target;
  for (size_t i = 0; i < source.size(); ++i) {
    switch (op(rng)) {
      case 0:
        break;  // delete
      case 1:
        target.push_back(vocab[word(rng)]);
        break;
      case 2:
        target.push_back(source[i]);
        target.push_back(vocab[word(rng)]);
        break;
      case 3:
      case 4: {
        std::vector<EditTag> transforms;
        for (const EditTag& tag : all.tags()) {
          if (tag.IsTransform()) transforms.push_back(tag);
        }
        std::shuffle(transforms.begin(), transforms.end(), rng);
        bool applied = false;
        for (const EditTag& tag : transforms) {
          try {
            TokenSequence out = edit::ApplyTransform(
                tag, std::span<const std::string>(source).subspan(i));
            target.insert(target.end(), out.begin(), out.end());
            i += edit::TransformArity(tag) - 1;
            applied = true;
            break;
          } catch (const InapplicableTransform&) {
          }
        }
        if (!applied) target.push_back(source[i]);
        break;
      }
      default:
        target.push_back(source[i]);
    }
  }
  if (op(rng) == 0) target.insert(target.begin(), vocab[word(rng)]);
  return {source, target};
}

}  // namespace sparsedit::testing
