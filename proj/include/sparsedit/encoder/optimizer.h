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
#include <utility>
#include <vector>

#include "sparsedit/encoder/config.h"
#include "sparsedit/encoder/model.h"

namespace sparsedit::encoder {

struct AdamConfig {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

template <typename Scalar>
struct AdamState {
  struct Moments {
    Matrix<Scalar> m;
    Matrix<Scalar> v;
  };
  std::map<std::string, Moments> moments;
  int64_t step = 0;
};

// L2 norm over the gradients of trainable tensors (missing gradients count
// as zero).
template <typename Scalar>
double GlobalGradNorm(const ParamStore<Scalar>& params);

// Rescales trainable gradients so their global norm is at most `max_norm`
// and returns the norm before clipping. Throws NonFiniteGradient.
template <typename Scalar>
double ClipGradNorm(ParamStore<Scalar>& params, double max_norm);

// One bias-corrected Adam step on every trainable tensor with a gradient.
template <typename Scalar>
void AdamUpdate(ParamStore<Scalar>& params, AdamState<Scalar>& state,
                const AdamConfig& config);

// Strict round-robin over (task 0, tag), (task 0, gen), (task 1, tag), ...
class RoundRobinSchedule {
 public:
  explicit RoundRobinSchedule(int num_tasks);
  std::pair<int, Mode> Next();
  int64_t step() const { return step_; }
  int num_tasks() const { return num_tasks_; }
  // Steps taken per cell, indexed task * 2 + mode.
  const std::vector<int64_t>& counts() const { return counts_; }

 private:
  int num_tasks_;
  int64_t step_ = 0;
  std::vector<int64_t> counts_;
};

}  // namespace sparsedit::encoder
