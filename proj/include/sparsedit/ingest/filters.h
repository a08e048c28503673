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
#include <string_view>
#include <vector>

#include "sparsedit/sentence_pair.h"

namespace sparsedit::ingest {

// Either kept (with `text` holding the normalized value) or dropped with a
// reason such as "empty" or "blacklist:photo".
struct Decision {
  bool keep = false;
  std::string text;
  std::string reason;

  static Decision Keep(std::string text = "") { return {true, std::move(text), ""}; }
  static Decision Drop(std::string reason) { return {false, "", std::move(reason)}; }
};

// Lowercased substrings that mark a revision comment as unusable.
const std::vector<std::string>& CommentBlacklist();

// Drops empty or blacklisted comments; otherwise expands the policy
// shortcuts ([[WP:TYPO]] -> "typo", ...) and collapses whitespace.
Decision FilterComment(std::string_view comment);

struct FilterConfig {
  double bleu_min = 0.2;
  double bleu_max = 0.95;
  double len_ratio = 3.0;
  bool check_len_ratio = true;
  double comment_sim_max = 0.6;
};

// True when every token that differs between the two sentences carries a
// digit or is a month name.
bool IsNumberOrTimeEdit(const std::string& source, const std::string& target);

// Reasons: "identical", "number_time", "len_ratio", "bleu_min", "bleu_max",
// "comment_sim". Checked in that order.
Decision FilterPair(const SentencePair& pair, const FilterConfig& config);

}  // namespace sparsedit::ingest
