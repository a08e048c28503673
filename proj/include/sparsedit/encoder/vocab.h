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
#include <unordered_map>
#include <vector>

#include "sparsedit/edit/tokenizer.h"

namespace sparsedit::encoder {

// Word-level vocabulary. Ids 0..7 are reserved for the special tokens in
// this order: [PAD], [UNK], [CLS], [MASK], [DELETE], [/DELETE],
// [TRANSFORM_VERB], [/TRANSFORM_VERB].
class Vocabulary {
 public:
  static constexpr int kPad = 0;
  static constexpr int kUnk = 1;
  static constexpr int kCls = 2;
  static constexpr int kMask = 3;
  static constexpr int kNumSpecial = 8;

  Vocabulary();  // specials only
  explicit Vocabulary(std::vector<std::string> tokens);

  // Keeps the most frequent words (ties in lexicographic order) so the total
  // size including specials is at most `max_size`.
  static Vocabulary Build(const std::vector<edit::TokenSequence>& corpus,
                          int max_size);

  int size() const { return static_cast<int>(tokens_.size()); }
  int Id(const std::string& token) const;  // kUnk when absent
  const std::string& Token(int id) const { return tokens_.at(id); }
  const std::vector<std::string>& tokens() const { return tokens_; }
  bool IsSpecial(int id) const { return id < kNumSpecial; }
  std::vector<int> Encode(const edit::TokenSequence& tokens) const;

 private:
  std::vector<std::string> tokens_;
  std::unordered_map<std::string, int> index_;
};

}  // namespace sparsedit::encoder
