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

#include "sparsedit/encoder/trainer.h"

#include <numeric>

#include "sparsedit/errors.h"
#include "sparsedit/random.h"

namespace sparsedit::encoder {

nlohmann::ordered_json TrainLogEntry::ToJson(
    const std::vector<std::string>& intents) const {
  nlohmann::ordered_json j;
  j["step"] = step;
  j["task"] = intents.at(task);
  j["mode"] = std::string(ModeName(mode));
  j["loss"] = loss ? nlohmann::ordered_json(*loss) : nlohmann::ordered_json();
  j["grad_norm"] = grad_norm;
  return j;
}

template <typename Scalar>
std::pair<double, double> TrainStep(EncoderModel<Scalar>& model,
                                    AdamState<Scalar>& adam, const Batch& batch,
                                    const AdamConfig& config, double clip_norm) {
  model.params().ZeroGrad();
  Tape<Scalar> tape;
  auto out = model.Forward(tape, batch);
  Var loss = model.Loss(tape, batch, out.logits);
  tape.Backward(loss);
  const double norm = ClipGradNorm(model.params(), clip_norm);
  AdamUpdate(model.params(), adam, config);
  return {static_cast<double>(tape.value(loss)(0, 0)), norm};
}

template <typename Scalar>
Trainer<Scalar>::Trainer(EncoderModel<Scalar>* model,
                         const TrainingPools* pools, TrainOptions options,
                         uint64_t seed)
    : model_(model),
      pools_(pools),
      options_(options),
      state_(model->config().num_intents(), seed) {
  if (static_cast<int>(pools->pools.size()) != model->config().num_intents()) {
    throw UsageError("training pools do not match the model's intents");
  }
  if (options.batch_size < 1) throw UsageError("batch_size must be >= 1");
  order_.resize(2 * pools->pools.size());
  cursor_.assign(order_.size(), 0);
}

template <typename Scalar>
Batch Trainer<Scalar>::NextBatch(int task, Mode mode) {
  const std::vector<Example>& pool = pools_->at(task, mode);
  const size_t cell = 2 * task + static_cast<int>(mode);
  std::vector<int>& order = order_[cell];
  std::vector<const Example*> picked;
  while (static_cast<int>(picked.size()) < options_.batch_size &&
         picked.size() < pool.size()) {
    if (cursor_[cell] >= order.size()) {
      order.resize(pool.size());
      std::iota(order.begin(), order.end(), 0);
      Shuffle(order, state_.rng);
      cursor_[cell] = 0;
    }
    picked.push_back(&pool[order[cursor_[cell]++]]);
  }
  return MakeBatch(picked, task, mode);
}

template <typename Scalar>
TrainLogEntry Trainer<Scalar>::Step() {
  TrainLogEntry entry;
  entry.step = state_.schedule.step();
  auto [task, mode] = state_.schedule.Next();
  entry.task = task;
  entry.mode = mode;
  if (pools_->at(task, mode).empty()) return entry;
  Batch batch = NextBatch(task, mode);
  auto [loss, norm] = TrainStep(*model_, state_.adam, batch, options_.adam,
                                options_.clip_norm);
  entry.loss = loss;
  entry.grad_norm = norm;
  return entry;
}

template <typename Scalar>
void Trainer<Scalar>::Run(
    int64_t steps, const std::function<void(const TrainLogEntry&)>& on_step) {
  for (int64_t i = 0; i < steps; ++i) {
    TrainLogEntry entry = Step();
    if (on_step) on_step(entry);
  }
}

template std::pair<double, double> TrainStep(EncoderModel<float>&,
                                             AdamState<float>&, const Batch&,
                                             const AdamConfig&, double);
template std::pair<double, double> TrainStep(EncoderModel<double>&,
                                             AdamState<double>&, const Batch&,
                                             const AdamConfig&, double);
template class Trainer<float>;
template class Trainer<double>;

}  // namespace sparsedit::encoder
