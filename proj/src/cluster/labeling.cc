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

#include "sparsedit/cluster/labeling.h"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <limits>
#include <unordered_set>

#include "json.hpp"
#include "sparsedit/cluster/embeddings.h"
#include "sparsedit/cluster/kmeans.h"
#include "sparsedit/errors.h"
#include "sparsedit/ingest/pipeline.h"

namespace sparsedit::cluster {

const std::vector<SeedPrompt>& DefaultSeedPrompts() {
  static const std::vector<SeedPrompt> kPrompts = {
      {"fluency", "fix grammar errors"},
      {"fluency", "fix spelling and grammar"},
      {"fluency", "correct typos"},
      {"fluency", "fix the grammar in this sentence"},
      {"fluency", "copyedit grammar and punctuation"},
      {"readability", "improve text cohesion"},
      {"readability", "make the sentence easier to read"},
      {"readability", "clarify wording"},
      {"readability", "improve readability"},
      {"readability", "reword for clarity and flow"},
      {"simplification", "simplify this sentence"},
      {"simplification", "use simpler words"},
      {"simplification", "make the text shorter and simpler"},
      {"simplification", "remove unnecessary detail"},
      {"simplification", "simplify wording"},
      {"neutralization", "remove point of view"},
      {"neutralization", "make the sentence neutral"},
      {"neutralization", "remove biased language"},
      {"neutralization", "neutral point of view"},
      {"neutralization", "remove peacock terms"},
  };
  return kPrompts;
}

std::vector<SeedPrompt> LoadSeedPrompts(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open seed prompts " + path);
  nlohmann::ordered_json j;
  try {
    j = nlohmann::ordered_json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("bad seed prompt file " + path + ": " + e.what());
  }
  if (!j.is_object()) throw UsageError("seed prompt file must be an object");
  std::vector<SeedPrompt> out;
  for (const auto& [intent, prompts] : j.items()) {
    if (!prompts.is_array()) {
      throw UsageError("prompts for '" + intent + "' must be an array");
    }
    for (const auto& p : prompts) out.push_back({intent, p.get<std::string>()});
  }
  return out;
}

std::vector<std::string> PromptIntents(const std::vector<SeedPrompt>& prompts) {
  std::vector<std::string> intents;
  for (const auto& p : prompts) {
    if (std::find(intents.begin(), intents.end(), p.intent) == intents.end()) {
      intents.push_back(p.intent);
    }
  }
  return intents;
}

ClusterLabeling LabelClusters(const Eigen::MatrixXd& centroids,
                              const std::vector<std::string>& prompt_intents,
                              const Eigen::MatrixXd& prompt_points,
                              bool allow_unlabeled) {
  if (static_cast<Eigen::Index>(prompt_intents.size()) != prompt_points.rows()) {
    throw DimMismatch("one intent per prompt row expected");
  }
  if (prompt_points.rows() > 0 && prompt_points.cols() != centroids.cols()) {
    throw DimMismatch("prompt and centroid dimensions differ");
  }
  const int k = static_cast<int>(centroids.rows());
  std::vector<std::string> intents;
  for (const auto& intent : prompt_intents) {
    if (std::find(intents.begin(), intents.end(), intent) == intents.end()) {
      intents.push_back(intent);
    }
  }
  ClusterLabeling out;
  out.labels.assign(k, std::nullopt);
  // Best claimant per cluster: (intent index, mean distance).
  std::vector<int> owner(k, -1);
  std::vector<double> owner_distance(k, std::numeric_limits<double>::infinity());
  for (size_t t = 0; t < intents.size(); ++t) {
    std::vector<int> votes(k, 0);
    std::vector<Eigen::Index> rows;
    for (size_t p = 0; p < prompt_intents.size(); ++p) {
      if (prompt_intents[p] != intents[t]) continue;
      rows.push_back(static_cast<Eigen::Index>(p));
      ++votes[NearestCentroid(prompt_points.row(p), centroids)];
    }
    const int winner = static_cast<int>(
        std::max_element(votes.begin(), votes.end()) - votes.begin());
    if (2 * votes[winner] <= static_cast<int>(rows.size())) continue;
    double mean = 0;
    for (Eigen::Index r : rows) {
      if (NearestCentroid(prompt_points.row(r), centroids) != winner) continue;
      mean += (prompt_points.row(r) - centroids.row(winner)).squaredNorm();
    }
    mean /= votes[winner];
    if (mean < owner_distance[winner]) {
      owner[winner] = static_cast<int>(t);
      owner_distance[winner] = mean;
    }
  }
  std::vector<bool> labeled(intents.size(), false);
  for (int c = 0; c < k; ++c) {
    if (owner[c] < 0) continue;
    out.labels[c] = intents[owner[c]];
    labeled[owner[c]] = true;
  }
  for (size_t t = 0; t < intents.size(); ++t) {
    if (!labeled[t]) out.unlabeled.push_back(intents[t]);
  }
  if (!allow_unlabeled && !out.unlabeled.empty()) {
    throw UnlabeledIntent(out.unlabeled.front());
  }
  return out;
}

std::map<std::string, std::vector<SentencePair>> ExportCorpus(
    const std::vector<SentencePair>& pairs, const std::vector<int>& assignments,
    const ClusterLabeling& labeling, const std::vector<std::string>& intents) {
  if (pairs.size() != assignments.size()) {
    throw DimMismatch("one cluster assignment per pair expected");
  }
  std::map<std::string, std::vector<SentencePair>> out;
  for (const auto& intent : intents) out[intent];
  for (size_t i = 0; i < pairs.size(); ++i) {
    const int c = assignments[i];
    if (c < 0 || c >= static_cast<int>(labeling.labels.size())) {
      throw DimMismatch("assignment " + std::to_string(c) + " out of range");
    }
    if (!labeling.labels[c]) continue;
    SentencePair pair = pairs[i];
    pair.intent = *labeling.labels[c];
    out[*labeling.labels[c]].push_back(std::move(pair));
  }
  return out;
}

std::map<std::string, size_t> WriteCorpus(
    const std::map<std::string, std::vector<SentencePair>>& corpus,
    const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::map<std::string, size_t> counts;
  for (const auto& [intent, pairs] : corpus) {
    const std::string path = dir + "/" + intent + ".jsonl";
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path);
    for (const auto& pair : pairs) out << ingest::PairToJson(pair) << '\n';
    counts[intent] = pairs.size();
  }
  return counts;
}

std::string ClusterReportJson(const std::vector<std::string>& comments,
                              const std::vector<int>& assignments,
                              const ClusterLabeling& labeling, int top_terms) {
  static const std::unordered_set<std::string> kStopwords = {
      "a",  "an", "and", "the", "of", "to", "in", "on", "for", "is",
      "it", "as", "at",  "by",  "be", "or", "with", "from", "this", "that"};
  const size_t k = labeling.labels.size();
  std::vector<size_t> sizes(k, 0);
  std::vector<std::map<std::string, int>> counts(k);
  for (size_t i = 0; i < assignments.size(); ++i) {
    const size_t c = static_cast<size_t>(assignments[i]);
    ++sizes[c];
    if (i >= comments.size()) continue;
    for (const auto& w : Words(comments[i])) {
      if (!kStopwords.count(w)) ++counts[c][w];
    }
  }
  nlohmann::ordered_json report = nlohmann::ordered_json::object();
  for (size_t c = 0; c < k; ++c) {
    std::vector<std::pair<std::string, int>> terms(counts[c].begin(),
                                                   counts[c].end());
    std::stable_sort(terms.begin(), terms.end(),
                     [](const auto& a, const auto& b) { return a.second > b.second; });
    nlohmann::ordered_json top = nlohmann::ordered_json::array();
    for (size_t t = 0; t < terms.size() && t < static_cast<size_t>(top_terms); ++t) {
      top.push_back(terms[t].first);
    }
    nlohmann::ordered_json entry;
    entry["size"] = sizes[c];
    entry["label"] = labeling.labels[c] ? nlohmann::ordered_json(*labeling.labels[c])
                                        : nlohmann::ordered_json(nullptr);
    entry["top_terms"] = top;
    report[std::to_string(c)] = entry;
  }
  return report.dump(2);
}

}  // namespace sparsedit::cluster
