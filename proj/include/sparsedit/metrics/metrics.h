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
#include <vector>

#include "sparsedit/edit/tokenizer.h"

namespace sparsedit::metrics {

using edit::TokenSequence;

struct EvalInstance {
  std::string source;
  std::string prediction;
  std::vector<std::string> references;
};

inline constexpr int kMaxOrder = 4;

// SARI in [0, 100]: mean over n = 1..4 of the addition F1, keep F1 and
// deletion precision, averaged across the three operations. A ratio whose
// denominator is empty counts as 1 when the opposite side is empty as well
// and 0 otherwise. Throws EmptyReferenceSet.
double Sari(const EvalInstance& instance);
double Sari(const TokenSequence& source, const TokenSequence& prediction,
            const std::vector<TokenSequence>& references);

// Sentence GLEU in [0, 100], averaged over references. For each reference,
// n-gram precision rewards overlap with the reference and subtracts n-grams
// the prediction keeps from the source that the reference dropped; the
// geometric mean over n = 1..4 is unsmoothed and scaled by the BLEU brevity
// penalty. Throws EmptyReferenceSet.
double Gleu(const EvalInstance& instance);
double Gleu(const TokenSequence& source, const TokenSequence& prediction,
            const std::vector<TokenSequence>& references);

// 100 when the whitespace-collapsed prediction equals some reference.
double ExactMatch(const EvalInstance& instance);

// Sentence BLEU in [0, 1] with add-one smoothing for n >= 2.
double Bleu(const TokenSequence& candidate, const TokenSequence& reference);

std::string CollapseWhitespace(const std::string& text);

}  // namespace sparsedit::metrics
