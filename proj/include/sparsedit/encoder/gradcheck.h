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
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "sparsedit/encoder/model.h"

namespace sparsedit::encoder {

// |analytic - numeric| / max(|analytic|, |numeric|, floor).
double RelativeError(double analytic, double numeric, double floor);

struct GradCheckOptions {
  double step = 1e-5;
  double floor = 1e-5;
  double tolerance = 1e-4;
};

struct GradCheckResult {
  double max_relative_error = 0;
  std::string worst_tensor;
  int64_t worst_index = -1;
  int64_t entries = 0;
  std::map<std::string, double> per_tensor;  // max error per tensor

  bool passed(double tolerance) const { return max_relative_error <= tolerance; }
  nlohmann::ordered_json ToJson() const;
};

// Compares back-propagated gradients of model.Loss on each batch with
// central finite differences, for every entry of every tensor. Parameter
// values are restored afterwards.
GradCheckResult GradCheck(EncoderModel<double>& model,
                          const std::vector<Batch>& batches,
                          const GradCheckOptions& options = {});

// Tiny random tag and generation batches for a model's vocabulary and tag
// inventory, drawn from `seed`.
std::vector<Batch> RandomBatches(const EncoderConfig& config, int num_tags,
                                 int sequences, int max_len, uint64_t seed);

}  // namespace sparsedit::encoder
