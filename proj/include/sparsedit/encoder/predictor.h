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

#include <string>
#include <string_view>
#include <vector>

#include "sparsedit/edit/plan.h"
#include "sparsedit/edit/tags.h"
#include "sparsedit/encoder/model.h"
#include "sparsedit/encoder/vocab.h"

namespace sparsedit::encoder {

// Two-pass editor over a trained model: tag every position, render the
// masked input from the predicted plan, fill the masks, apply the plan.
// Holds references; safe to share between threads.
template <typename Scalar>
class Editor {
 public:
  Editor(const EncoderModel<Scalar>& model, const Vocabulary& vocab);

  // Predicted plan for `tokens`. The start position is restricted to KEEP or
  // APPEND; tags that cannot apply to their token fall back to KEEP. Inputs
  // whose tagging or masked sequence exceeds max_seq_len get the identity
  // plan.
  edit::EditPlan PredictPlan(const edit::TokenSequence& tokens,
                             int intent) const;

  // Throws UnknownIntent. Returns `text` unchanged when the predicted plan is
  // the identity.
  std::string Edit(std::string_view text, std::string_view intent) const;
  // Applies Edit up to `depth` times, stopping at a fixed point. `passes`
  // receives the number of passes run.
  std::string EditIterative(std::string_view text, std::string_view intent,
                            int depth, int* passes = nullptr) const;
  // Same, for many inputs at once.
  std::vector<std::string> EditAll(const std::vector<std::string>& texts,
                                   std::string_view intent, int depth) const;

 private:
  int IntentId(std::string_view intent) const;
  std::string EditOnce(const std::string& text, int intent) const;

  const EncoderModel<Scalar>& model_;
  const Vocabulary& vocab_;
  edit::TagSet tag_set_;
};

extern template class Editor<float>;
extern template class Editor<double>;

}  // namespace sparsedit::encoder
