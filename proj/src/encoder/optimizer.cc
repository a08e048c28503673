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

#include "sparsedit/encoder/optimizer.h"

#include <cmath>

#include "sparsedit/errors.h"

namespace sparsedit::encoder {

template <typename Scalar>
double GlobalGradNorm(const ParamStore<Scalar>& params) {
  double sum = 0;
  for (const auto& [name, p] : params.tensors()) {
    if (!p.trainable || p.grad.size() == 0) continue;
    sum += p.grad.template cast<double>().squaredNorm();
  }
  return std::sqrt(sum);
}

template <typename Scalar>
double ClipGradNorm(ParamStore<Scalar>& params, double max_norm) {
  const double norm = GlobalGradNorm(params);
  if (!std::isfinite(norm)) {
    throw NonFiniteGradient("gradient norm is not finite");
  }
  if (norm > max_norm) {
    const Scalar factor = static_cast<Scalar>(max_norm / norm);
    for (auto& [name, p] : params.tensors()) {
      if (p.trainable && p.grad.size() != 0) p.grad *= factor;
    }
  }
  return norm;
}

template <typename Scalar>
void AdamUpdate(ParamStore<Scalar>& params, AdamState<Scalar>& state,
                const AdamConfig& config) {
  ++state.step;
  const double t = static_cast<double>(state.step);
  const Scalar b1 = static_cast<Scalar>(config.beta1);
  const Scalar b2 = static_cast<Scalar>(config.beta2);
  const Scalar correction1 =
      static_cast<Scalar>(1.0 - std::pow(config.beta1, t));
  const Scalar correction2 =
      static_cast<Scalar>(1.0 - std::pow(config.beta2, t));
  const Scalar lr = static_cast<Scalar>(config.learning_rate);
  const Scalar eps = static_cast<Scalar>(config.epsilon);
  for (auto& [name, p] : params.tensors()) {
    if (!p.trainable || p.grad.size() == 0) continue;
    auto& mom = state.moments[name];
    if (mom.m.size() == 0) {
      mom.m = Matrix<Scalar>::Zero(p.value.rows(), p.value.cols());
      mom.v = Matrix<Scalar>::Zero(p.value.rows(), p.value.cols());
    }
    mom.m = b1 * mom.m + (Scalar(1) - b1) * p.grad;
    mom.v = b2 * mom.v + (Scalar(1) - b2) * p.grad.cwiseAbs2();
    p.value.array() -= lr * (mom.m.array() / correction1) /
                       ((mom.v.array() / correction2).sqrt() + eps);
  }
}

RoundRobinSchedule::RoundRobinSchedule(int num_tasks)
    : num_tasks_(num_tasks), counts_(2 * num_tasks, 0) {
  if (num_tasks < 1) throw UsageError("schedule needs at least one task");
}

std::pair<int, Mode> RoundRobinSchedule::Next() {
  const int cell = static_cast<int>(step_ % (2 * num_tasks_));
  ++step_;
  ++counts_[cell];
  return {cell / 2, cell % 2 == 0 ? Mode::kTag : Mode::kGen};
}

template double GlobalGradNorm(const ParamStore<float>&);
template double GlobalGradNorm(const ParamStore<double>&);
template double ClipGradNorm(ParamStore<float>&, double);
template double ClipGradNorm(ParamStore<double>&, double);
template void AdamUpdate(ParamStore<float>&, AdamState<float>&,
                         const AdamConfig&);
template void AdamUpdate(ParamStore<double>&, AdamState<double>&,
                         const AdamConfig&);

}  // namespace sparsedit::encoder
