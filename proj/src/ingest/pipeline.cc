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

#include "sparsedit/ingest/pipeline.h"

#include <cstdint>
#include <optional>
#include <unordered_map>

#include "json.hpp"
#include "sparsedit/errors.h"
#include "sparsedit/ingest/wikitext.h"

namespace sparsedit::ingest {

namespace {

// Largest changed region (source x target sentences) the quadratic LCS table
// is built for. Bigger rewrites yield no pairs.
constexpr size_t kMaxLcsCells = size_t{1} << 22;

void PairBlock(const std::vector<std::string>& source, size_t s_begin,
               size_t s_end, const std::vector<std::string>& target,
               size_t t_begin, size_t t_end, const std::string& comment,
               std::vector<SentencePair>* out) {
  for (size_t i = s_begin, j = t_begin; i < s_end && j < t_end; ++i, ++j) {
    if (source[i] == target[j]) continue;
    out->push_back({source[i], target[j], comment, std::nullopt});
  }
}

}  // namespace

std::vector<SentencePair> ExtractSentencePairs(
    const std::vector<std::string>& source,
    const std::vector<std::string>& target, const std::string& comment) {
  std::vector<SentencePair> out;
  size_t lo = 0;
  while (lo < source.size() && lo < target.size() && source[lo] == target[lo]) {
    ++lo;
  }
  size_t s_hi = source.size(), t_hi = target.size();
  while (s_hi > lo && t_hi > lo && source[s_hi - 1] == target[t_hi - 1]) {
    --s_hi;
    --t_hi;
  }
  const size_t n = s_hi - lo, m = t_hi - lo;
  if (n == 0 || m == 0) return out;
  if ((n + 1) * (m + 1) > kMaxLcsCells) return out;

  std::unordered_map<std::string, int> ids;
  std::vector<int> a(n), b(m);
  for (size_t i = 0; i < n; ++i) {
    a[i] = ids.emplace(source[lo + i], static_cast<int>(ids.size())).first->second;
  }
  for (size_t j = 0; j < m; ++j) {
    b[j] = ids.emplace(target[lo + j], static_cast<int>(ids.size())).first->second;
  }
  // suffix[i][j] = LCS length of a[i:] and b[j:].
  std::vector<uint32_t> suffix((n + 1) * (m + 1), 0);
  auto at = [m](size_t i, size_t j) { return i * (m + 1) + j; };
  for (size_t i = n; i-- > 0;) {
    for (size_t j = m; j-- > 0;) {
      suffix[at(i, j)] = a[i] == b[j]
                             ? suffix[at(i + 1, j + 1)] + 1
                             : std::max(suffix[at(i + 1, j)], suffix[at(i, j + 1)]);
    }
  }
  size_t i = 0, j = 0, block_i = 0, block_j = 0;
  while (i < n && j < m) {
    if (a[i] == b[j] && suffix[at(i, j)] == suffix[at(i + 1, j + 1)] + 1) {
      PairBlock(source, lo + block_i, lo + i, target, lo + block_j, lo + j,
                comment, &out);
      block_i = ++i;
      block_j = ++j;
    } else if (suffix[at(i + 1, j)] >= suffix[at(i, j + 1)]) {
      ++i;
    } else {
      ++j;
    }
  }
  PairBlock(source, lo + block_i, s_hi, target, lo + block_j, t_hi, comment,
            &out);
  return out;
}

std::vector<SentencePair> ExtractSentencePairs(const std::string& source_doc,
                                               const std::string& target_doc,
                                               const std::string& comment) {
  return ExtractSentencePairs(SplitSentences(source_doc),
                              SplitSentences(target_doc), comment);
}

std::string IngestStats::ToJson() const {
  nlohmann::ordered_json j;
  j["pages"] = pages;
  j["revisions"] = revisions;
  j["revision_dispositions"] = revision_dispositions;
  j["candidate_pairs"] = candidate_pairs;
  j["pair_dispositions"] = pair_dispositions;
  return j.dump(2);
}

IngestStats RunIngest(PageReader& reader, const FilterConfig& config,
                      const PairSink& sink) {
  IngestStats stats;
  Page page;
  while (reader.Next(&page)) {
    ++stats.pages;
    const auto& revs = page.revisions;
    std::unordered_map<int64_t, size_t> index;
    for (size_t i = 0; i < revs.size(); ++i) index[revs[i].rev_id] = i;
    std::vector<std::optional<std::vector<std::string>>> sentences(revs.size());
    auto sentences_of = [&](size_t i) -> const std::vector<std::string>& {
      if (!sentences[i]) sentences[i] = SplitSentences(StripMarkup(revs[i].text));
      return *sentences[i];
    };
    for (size_t i = 0; i < revs.size(); ++i) {
      ++stats.revisions;
      std::optional<size_t> parent;
      if (revs[i].parent_rev_id) {
        auto it = index.find(*revs[i].parent_rev_id);
        if (it != index.end() && it->second != i) parent = it->second;
      } else if (i > 0) {
        parent = i - 1;
      }
      if (!parent) {
        ++stats.revision_dispositions["no_parent"];
        continue;
      }
      const Decision comment = FilterComment(revs[i].comment);
      if (!comment.keep) {
        ++stats.revision_dispositions[comment.reason];
        continue;
      }
      ++stats.revision_dispositions["keep"];
      for (const auto& pair : ExtractSentencePairs(
               sentences_of(*parent), sentences_of(i), comment.text)) {
        ++stats.candidate_pairs;
        const Decision verdict = FilterPair(pair, config);
        ++stats.pair_dispositions[verdict.keep ? "keep" : verdict.reason];
        if (verdict.keep) sink(pair);
      }
    }
  }
  return stats;
}

std::string PairToJson(const SentencePair& pair) {
  nlohmann::ordered_json j;
  j["source"] = pair.source;
  j["target"] = pair.target;
  j["comment"] = pair.comment;
  if (pair.intent) j["intent"] = *pair.intent;
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

SentencePair PairFromJson(const std::string& line) {
  try {
    const auto j = nlohmann::json::parse(line);
    SentencePair pair;
    pair.source = j.at("source").get<std::string>();
    pair.target = j.at("target").get<std::string>();
    pair.comment = j.value("comment", "");
    if (j.contains("intent") && !j["intent"].is_null()) {
      pair.intent = j["intent"].get<std::string>();
    }
    return pair;
  } catch (const nlohmann::json::exception& e) {
    throw Error(std::string("bad sentence pair record: ") + e.what());
  }
}

}  // namespace sparsedit::ingest
