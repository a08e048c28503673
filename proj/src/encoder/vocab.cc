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

#include "sparsedit/encoder/vocab.h"

#include <algorithm>
#include <map>

#include "sparsedit/edit/masked.h"
#include "sparsedit/errors.h"

namespace sparsedit::encoder {

namespace {

std::vector<std::string> Specials() {
  return {edit::kPadToken,    "[UNK]",           "[CLS]",
          edit::kMaskToken,   edit::kDeleteOpen, edit::kDeleteClose,
          edit::kVerbOpen,    edit::kVerbClose};
}

}  // namespace

Vocabulary::Vocabulary() : Vocabulary(Specials()) {}

Vocabulary::Vocabulary(std::vector<std::string> tokens)
    : tokens_(std::move(tokens)) {
  const auto specials = Specials();
  if (tokens_.size() < specials.size() ||
      !std::equal(specials.begin(), specials.end(), tokens_.begin())) {
    throw UsageError("vocabulary must start with the special tokens");
  }
  for (size_t i = 0; i < tokens_.size(); ++i) {
    if (!index_.emplace(tokens_[i], static_cast<int>(i)).second) {
      throw UsageError("duplicate vocabulary entry '" + tokens_[i] + "'");
    }
  }
}

Vocabulary Vocabulary::Build(const std::vector<edit::TokenSequence>& corpus,
                             int max_size) {
  std::vector<std::string> tokens = Specials();
  std::map<std::string, long> counts;
  for (const auto& seq : corpus) {
    for (const auto& t : seq) ++counts[t];
  }
  for (const auto& s : tokens) counts.erase(s);
  std::vector<std::pair<std::string, long>> sorted(counts.begin(), counts.end());
  std::stable_sort(sorted.begin(), sorted.end(),
                   [](const auto& a, const auto& b) { return a.second > b.second; });
  for (const auto& [token, count] : sorted) {
    if (static_cast<int>(tokens.size()) >= max_size) break;
    tokens.push_back(token);
  }
  return Vocabulary(std::move(tokens));
}

int Vocabulary::Id(const std::string& token) const {
  auto it = index_.find(token);
  return it == index_.end() ? kUnk : it->second;
}

std::vector<int> Vocabulary::Encode(const edit::TokenSequence& tokens) const {
  std::vector<int> ids;
  ids.reserve(tokens.size());
  for (const auto& t : tokens) ids.push_back(Id(t));
  return ids;
}

}  // namespace sparsedit::encoder
