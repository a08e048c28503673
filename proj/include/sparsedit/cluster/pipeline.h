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
#include <vector>

#include <Eigen/Dense>

#include "sparsedit/cluster/kmeans.h"
#include "sparsedit/cluster/labeling.h"
#include "sparsedit/cluster/svd.h"

namespace sparsedit::cluster {

struct ClusterConfig {
  int k = 10;
  int svd_dim = 100;  // clipped to min(n, d)
  bool center = true;
  int max_iter = 300;
  double tol = 1e-6;
  bool allow_unlabeled = true;
};

struct ClusterRun {
  SvdResult<double> svd;
  ClusterModel<double> model;
  ClusterLabeling labeling;
};

// Reduces the comment embeddings, clusters them and labels the clusters with
// the seed prompts projected into the same reduced space.
ClusterRun ClusterComments(const Eigen::MatrixXd& comment_embeddings,
                           const std::vector<SeedPrompt>& prompts,
                           const Eigen::MatrixXd& prompt_embeddings,
                           const ClusterConfig& config, uint64_t seed);

}  // namespace sparsedit::cluster
