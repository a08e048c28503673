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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sparsedit/sentence_pair.h"

namespace sparsedit::cluster {

struct SeedPrompt {
  std::string intent;
  std::string text;
};

// Five prompts for each of fluency, readability, simplification and
// neutralization.
const std::vector<SeedPrompt>& DefaultSeedPrompts();

// Reads {"intent": ["prompt", ...], ...}.
std::vector<SeedPrompt> LoadSeedPrompts(const std::string& path);

// Distinct intents in first-appearance order.
std::vector<std::string> PromptIntents(const std::vector<SeedPrompt>& prompts);

struct ClusterLabeling {
  std::vector<std::optional<std::string>> labels;  // per cluster; empty = discarded
  std::vector<std::string> unlabeled;              // intents left without a cluster
};

// Each prompt votes for its nearest centroid. An intent claims the cluster
// holding a strict majority of its prompts; when several intents claim the
// same cluster, the one whose prompts in that cluster have the smaller mean
// squared distance to its centroid wins (earlier intent on exact ties).
// Throws UnlabeledIntent for the first intent left without a cluster unless
// `allow_unlabeled`.
ClusterLabeling LabelClusters(const Eigen::MatrixXd& centroids,
                              const std::vector<std::string>& prompt_intents,
                              const Eigen::MatrixXd& prompt_points,
                              bool allow_unlabeled = false);

// Pairs grouped by the intent of their cluster, with `intent` filled in.
// Every intent in `intents` gets an entry, possibly empty.
std::map<std::string, std::vector<SentencePair>> ExportCorpus(
    const std::vector<SentencePair>& pairs, const std::vector<int>& assignments,
    const ClusterLabeling& labeling, const std::vector<std::string>& intents);

// Writes <dir>/<intent>.jsonl for every entry; returns the counts.
std::map<std::string, size_t> WriteCorpus(
    const std::map<std::string, std::vector<SentencePair>>& corpus,
    const std::string& dir);

// {"<cluster>": {"size", "label", "top_terms"}}; discarded clusters have a
// null label. Top terms are the most frequent non-stopword comment words.
std::string ClusterReportJson(const std::vector<std::string>& comments,
                              const std::vector<int>& assignments,
                              const ClusterLabeling& labeling,
                              int top_terms = 5);

}  // namespace sparsedit::cluster
