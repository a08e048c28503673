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

#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "sparsedit/ingest/dump.h"
#include "sparsedit/ingest/filters.h"
#include "sparsedit/sentence_pair.h"

namespace sparsedit::ingest {

// Aligns the two sentence lists on their longest common subsequence of
// identical sentences. Inside each changed block the i-th source sentence is
// paired with the i-th target sentence; leftovers are discarded.
std::vector<SentencePair> ExtractSentencePairs(
    const std::vector<std::string>& source_sentences,
    const std::vector<std::string>& target_sentences,
    const std::string& comment);

// Convenience overload over plain-text documents.
std::vector<SentencePair> ExtractSentencePairs(const std::string& source_doc,
                                               const std::string& target_doc,
                                               const std::string& comment);

struct IngestStats {
  int64_t pages = 0;
  int64_t revisions = 0;
  // Revision dispositions: "keep", "no_parent", "empty", "blacklist:<term>".
  std::map<std::string, int64_t> revision_dispositions;
  int64_t candidate_pairs = 0;
  // Pair dispositions: "keep" plus the FilterPair drop reasons.
  std::map<std::string, int64_t> pair_dispositions;

  std::string ToJson() const;
};

using PairSink = std::function<void(const SentencePair&)>;

// Streams every page through comment filtering, markup stripping, sentence
// alignment and pair filtering. Kept pairs are handed to `sink` in
// (page order, rev_id) order.
IngestStats RunIngest(PageReader& reader, const FilterConfig& config,
                      const PairSink& sink);

// {"source","target","comment"} plus "intent" when set.
std::string PairToJson(const SentencePair& pair);
SentencePair PairFromJson(const std::string& line);

}  // namespace sparsedit::ingest
