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

#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "sparsedit/metrics/metrics.h"

namespace sparsedit::metrics {

struct MetricSelection {
  bool sari = true;
  bool gleu = true;
  bool em = true;
};

struct InstanceScores {
  std::optional<double> sari, gleu, em;
};

// Per-dataset means over instances. Metrics that were not requested stay
// empty and are omitted from the JSON form.
struct DatasetReport {
  std::string name;
  size_t count = 0;
  std::optional<double> sari, gleu, em;
};

struct EvalReport {
  std::vector<DatasetReport> datasets;
  std::string ToJson() const;
};

InstanceScores ScoreInstance(const EvalInstance& instance,
                             const MetricSelection& metrics);

// Scores every instance in order and averages. `per_instance`, when given,
// receives the individual scores.
DatasetReport EvaluateDataset(const std::string& name,
                              const std::vector<EvalInstance>& instances,
                              const MetricSelection& metrics,
                              std::vector<InstanceScores>* per_instance = nullptr);

// Reads {"source","prediction","references":[...]} lines.
std::vector<EvalInstance> ReadEvalJsonl(std::istream& in);

}  // namespace sparsedit::metrics
