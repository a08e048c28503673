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

#include "sparsedit/edit/tokenizer.h"

namespace sparsedit::metrics {

using edit::TokenSequence;

// Multiset of n-grams keyed by the tokens joined with '\x1f'.
using NgramCounts = std::unordered_map<std::string, int>;

NgramCounts CountNgrams(const TokenSequence& tokens, int n);

// Multiset intersection (min of counts) and saturating difference.
NgramCounts Intersect(const NgramCounts& a, const NgramCounts& b);
NgramCounts Subtract(const NgramCounts& a, const NgramCounts& b);
int Total(const NgramCounts& counts);

}  // namespace sparsedit::metrics
