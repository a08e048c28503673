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

#include "sparsedit/encoder/gradcheck.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "sparsedit/encoder/vocab.h"
#include "sparsedit/random.h"

namespace sparsedit::encoder {

double RelativeError(double analytic, double numeric, double floor) {
  const double scale =
      std::max({std::abs(analytic), std::abs(numeric), floor});
  return std::abs(analytic - numeric) / scale;
}

nlohmann::ordered_json GradCheckResult::ToJson() const {
  nlohmann::ordered_json j;
  j["max_relative_error"] = max_relative_error;
  j["worst_tensor"] = worst_tensor;
  j["worst_index"] = worst_index;
  j["entries"] = entries;
  nlohmann::ordered_json tensors = nlohmann::ordered_json::object();
  for (const auto& [name, err] : per_tensor) tensors[name] = err;
  j["per_tensor"] = std::move(tensors);
  return j;
}

namespace {

double TotalLoss(const EncoderModel<double>& model,
                 const std::vector<Batch>& batches) {
  double total = 0;
  for (const Batch& batch : batches) {
    Tape<double> tape;
    auto out = model.Forward(tape, batch);
    total += tape.value(model.Loss(tape, batch, out.logits))(0, 0);
  }
  return total;
}

}  // namespace

GradCheckResult GradCheck(EncoderModel<double>& model,
                          const std::vector<Batch>& batches,
                          const GradCheckOptions& options) {
  model.params().ZeroGrad();
  for (const Batch& batch : batches) {
    Tape<double> tape;
    auto out = model.Forward(tape, batch);
    tape.Backward(model.Loss(tape, batch, out.logits));
  }
  GradCheckResult result;
  for (auto& [name, p] : model.params().tensors()) {
    double worst = 0;
    for (Eigen::Index i = 0; i < p.value.size(); ++i) {
      double& x = p.value.data()[i];
      const double saved = x;
      x = saved + options.step;
      const double plus = TotalLoss(model, batches);
      x = saved - options.step;
      const double minus = TotalLoss(model, batches);
      x = saved;
      const double numeric = (plus - minus) / (2 * options.step);
      const double err =
          RelativeError(p.grad.data()[i], numeric, options.floor);
      ++result.entries;
      worst = std::max(worst, err);
      if (err > result.max_relative_error || result.worst_index < 0) {
        result.max_relative_error = std::max(err, result.max_relative_error);
        result.worst_tensor = name;
        result.worst_index = i;
      }
    }
    result.per_tensor[name] = worst;
  }
  return result;
}

std::vector<Batch> RandomBatches(const EncoderConfig& config, int num_tags,
                                 int sequences, int max_len, uint64_t seed) {
  std::mt19937_64 rng(seed);
  const int words = config.vocab_size - Vocabulary::kNumSpecial;
  auto word = [&] {
    return Vocabulary::kNumSpecial + static_cast<int>(UniformIndex(rng, words));
  };
  std::vector<Batch> batches;
  for (int r = 0; r < config.num_intents(); ++r) {
    for (Mode mode : {Mode::kTag, Mode::kGen}) {
      Batch batch;
      batch.intent = r;
      batch.mode = mode;
      for (int s = 0; s < sequences; ++s) {
        const int len = 2 + static_cast<int>(UniformIndex(rng, max_len - 1));
        std::vector<int> ids = {Vocabulary::kCls};
        std::vector<int> rows, labels;
        for (int i = 1; i < len; ++i) ids.push_back(word());
        if (mode == Mode::kTag) {
          for (int i = 0; i < len; ++i) {
            rows.push_back(i);
            labels.push_back(static_cast<int>(UniformIndex(rng, num_tags)));
          }
        } else {
          for (int i = 1; i < len; ++i) {
            if (i == 1 || UniformUnit(rng) < 0.3) {
              ids[i] = Vocabulary::kMask;
              rows.push_back(i);
              labels.push_back(
                  static_cast<int>(UniformIndex(rng, config.vocab_size)));
            }
          }
        }
        batch.AddSequence(ids, rows, labels);
      }
      batches.push_back(std::move(batch));
    }
  }
  return batches;
}

}  // namespace sparsedit::encoder
