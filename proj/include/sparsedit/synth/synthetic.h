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

#include <cstdint>
#include <string>
#include <vector>

#include "sparsedit/sentence_pair.h"

namespace sparsedit::synth {

// Toy editing intents with rule-generated pairs:
//   lowercase_fix    an ALL-CAPS word is lowercased (only the leftmost one
//                    when two are present)
//   plural_fix       a noun after a number word is pluralized
//   marker_deletion  hesitation markers (um, uh, er) are removed
//   substitution     a word from a closed list is replaced by its synonym
inline const std::vector<std::string>& Intents() {
  static const std::vector<std::string> intents = {
      "lowercase_fix", "plural_fix", "marker_deletion", "substitution"};
  return intents;
}

struct SynthConfig {
  int train_per_intent = 2000;
  int heldout_per_intent = 200;
  // Share of lowercase_fix sources carrying a second ALL-CAPS word.
  double two_error_rate = 0.2;
  // Share of sources that also contain another intent's trigger, which the
  // target leaves untouched.
  double distractor_rate = 0.25;
  uint64_t seed = 0;
};

struct SynthCorpus {
  std::vector<SentencePair> train;
  std::vector<SentencePair> heldout;  // sources disjoint from train
};

SynthCorpus GenerateCorpus(const SynthConfig& config);

// A lowercase_fix input with two ALL-CAPS words, and its fully corrected
// form.
struct TwoErrorCase {
  std::string input;
  std::string after_one_pass;
  std::string fixed;
};
TwoErrorCase MakeTwoErrorCase(uint64_t seed);

}  // namespace sparsedit::synth
