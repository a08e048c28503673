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

#include "sparsedit/cluster/pipeline.h"

#include <algorithm>

#include "sparsedit/errors.h"

namespace sparsedit::cluster {

ClusterRun ClusterComments(const Eigen::MatrixXd& comment_embeddings,
                           const std::vector<SeedPrompt>& prompts,
                           const Eigen::MatrixXd& prompt_embeddings,
                           const ClusterConfig& config, uint64_t seed) {
  const Eigen::Index n = comment_embeddings.rows();
  if (n == 0) throw DegenerateData("no comment embeddings to cluster");
  if (n < config.k) {
    throw DegenerateData("need at least " + std::to_string(config.k) +
                         " comments, got " + std::to_string(n));
  }
  const Eigen::Index rank = std::min<Eigen::Index>(
      config.svd_dim, std::min(n, comment_embeddings.cols()));
  ClusterRun run;
  run.svd = TruncatedSvd(comment_embeddings, rank, config.center);
  run.model =
      KMeansFit(run.svd.scores, config.k, seed, config.max_iter, config.tol);
  std::vector<std::string> intents;
  for (const auto& p : prompts) intents.push_back(p.intent);
  const Eigen::MatrixXd prompt_points =
      prompts.empty() ? Eigen::MatrixXd(0, rank)
                      : run.svd.Transform(prompt_embeddings);
  run.labeling = LabelClusters(run.model.centroids, intents, prompt_points,
                               config.allow_unlabeled);
  return run;
}

}  // namespace sparsedit::cluster
