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
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "json.hpp"
#include "sparsedit/encoder/data.h"
#include "sparsedit/encoder/model.h"
#include "sparsedit/encoder/optimizer.h"

namespace sparsedit::encoder {

struct TrainOptions {
  int64_t steps = 2000;
  int batch_size = 32;
  double clip_norm = 1.0;
  AdamConfig adam;
};

template <typename Scalar>
struct TrainState {
  AdamState<Scalar> adam;
  RoundRobinSchedule schedule;
  std::mt19937_64 rng;

  TrainState(int num_tasks, uint64_t seed) : schedule(num_tasks), rng(seed) {}
};

struct TrainLogEntry {
  int64_t step = 0;
  int task = 0;
  Mode mode = Mode::kTag;
  std::optional<double> loss;  // empty when the cell had no examples
  double grad_norm = 0;

  nlohmann::ordered_json ToJson(const std::vector<std::string>& intents) const;
};

// One optimizer step on `batch`: forward, backward, global-norm clipping,
// Adam. Returns the loss and the pre-clip gradient norm. Propagates
// NonFiniteGradient.
template <typename Scalar>
std::pair<double, double> TrainStep(EncoderModel<Scalar>& model,
                                    AdamState<Scalar>& adam, const Batch& batch,
                                    const AdamConfig& config, double clip_norm);

// Runs the round-robin schedule over per-(intent, mode) pools. Each cell
// walks a reshuffled permutation of its pool; a cell with an empty pool
// consumes its turn without an update.
template <typename Scalar>
class Trainer {
 public:
  Trainer(EncoderModel<Scalar>* model, const TrainingPools* pools,
          TrainOptions options, uint64_t seed);

  TrainLogEntry Step();
  void Run(int64_t steps,
           const std::function<void(const TrainLogEntry&)>& on_step = {});
  const TrainState<Scalar>& state() const { return state_; }

 private:
  Batch NextBatch(int task, Mode mode);

  EncoderModel<Scalar>* model_;
  const TrainingPools* pools_;
  TrainOptions options_;
  TrainState<Scalar> state_;
  std::vector<std::vector<int>> order_;  // per cell
  std::vector<size_t> cursor_;
};

extern template class Trainer<float>;
extern template class Trainer<double>;

}  // namespace sparsedit::encoder
