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

#include "sparsedit/metrics/ngram.h"

#include <algorithm>

namespace sparsedit::metrics {

NgramCounts CountNgrams(const TokenSequence& tokens, int n) {
  NgramCounts counts;
  if (n <= 0) return counts;
  for (size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key = tokens[i];
    for (int k = 1; k < n; ++k) {
      key.push_back('\x1f');
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

NgramCounts Intersect(const NgramCounts& a, const NgramCounts& b) {
  NgramCounts out;
  for (const auto& [gram, count] : a) {
    auto it = b.find(gram);
    if (it != b.end()) out[gram] = std::min(count, it->second);
  }
  return out;
}

NgramCounts Subtract(const NgramCounts& a, const NgramCounts& b) {
  NgramCounts out;
  for (const auto& [gram, count] : a) {
    auto it = b.find(gram);
    const int remaining = count - (it == b.end() ? 0 : it->second);
    if (remaining > 0) out[gram] = remaining;
  }
  return out;
}

int Total(const NgramCounts& counts) {
  int total = 0;
  for (const auto& [gram, count] : counts) total += count;
  return total;
}

}  // namespace sparsedit::metrics
