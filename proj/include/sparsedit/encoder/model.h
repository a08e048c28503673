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

#include <map>
#include <string>
#include <vector>

#include "sparsedit/encoder/config.h"
#include "sparsedit/encoder/tape.h"

namespace sparsedit::encoder {

// Named parameter tensors, iterated in lexicographic name order.
template <typename Scalar>
class ParamStore {
 public:
  using Map = std::map<std::string, Param<Scalar>>;

  Param<Scalar>& Add(const std::string& name, Matrix<Scalar> value);
  Param<Scalar>& at(const std::string& name);
  const Param<Scalar>& at(const std::string& name) const;
  bool Contains(const std::string& name) const {
    return tensors_.count(name) > 0;
  }
  Map& tensors() { return tensors_; }
  const Map& tensors() const { return tensors_; }
  int64_t NumScalars() const;

  void ZeroGrad();
  // Sets `trainable` on every tensor to keep(name).
  template <typename Pred>
  void SetTrainable(Pred keep) {
    for (auto& [name, p] : tensors_) p.trainable = keep(name);
  }

 private:
  Map tensors_;
};

// Packed batch: sequences are concatenated row-wise, sequence s spans rows
// [offsets[s], offsets[s+1]). Every sequence is routed with the same intent
// and mode. Logits are produced at `label_rows`; `labels` (when present)
// holds one target per label row.
struct Batch {
  std::vector<int> ids;
  std::vector<int> offsets = {0};
  int intent = 0;
  Mode mode = Mode::kTag;
  std::vector<int> label_rows;
  std::vector<int> labels;

  int num_sequences() const { return static_cast<int>(offsets.size()) - 1; }
  int num_rows() const { return static_cast<int>(ids.size()); }
  // Appends one sequence; `rows` are relative to the sequence start.
  void AddSequence(const std::vector<int>& sequence_ids,
                   const std::vector<int>& rows,
                   const std::vector<int>& targets);
};

// Expert choice for one sparse slot. For sequence granularity there is one
// entry per sequence, for token granularity one per row. `intent` is the
// chosen intent column; the flat expert index is config.ExpertIndex(intent,
// mode).
struct RoutingDecision {
  std::vector<int> intent;
  std::vector<double> gate;
};

// Top-1 routing from router logits (one row per routed unit): softmax with
// `temperature`, arg-max with ties to the lowest index.
template <typename Scalar>
RoutingDecision RouteTop1(const Matrix<Scalar>& logits, double temperature);

// Static routing to the intent's own expert with gate 1.
RoutingDecision RouteTaskId(int intent, int units);

// Mean cross-entropy of row-wise softmax(logits) against targets.
template <typename Scalar>
double CrossEntropyLoss(const Matrix<Scalar>& logits,
                        const std::vector<int>& targets);

// Transformer encoder with optional sparse expert slots, a tagging head and a
// mask-infilling head. Parameter names:
//   embed.{token,position}, embed.ln.{gamma,beta}
//   layer<l>.attn.{q,k,v,o}.{w,b}, layer<l>.ln{1,2}.{gamma,beta},
//   layer<l>.ffn.{w1,b1,w2,b2}
//   layer<l>.expert.<r>.<tag|gen|shared>.<suffix>   (sparse slots)
//   layer<l>.router.w  or  layer<l>.router.<r>.w   (learned routers)
//   head.tag.{w,b}, head.gen.{w,b}
template <typename Scalar>
class EncoderModel {
 public:
  struct Output {
    Var logits;
    Var hidden;
    std::vector<RoutingDecision> routing;  // one per sparse slot
  };

  // Validates `config` and draws the initial parameters from config.seed.
  explicit EncoderModel(EncoderConfig config);
  EncoderModel(EncoderConfig config, ParamStore<Scalar> params);

  const EncoderConfig& config() const { return config_; }
  ParamStore<Scalar>& params() { return params_; }
  const ParamStore<Scalar>& params() const { return params_; }
  int num_tags() const { return num_tags_; }

  // Records the forward pass on `tape`. Parameters enter the tape by
  // reference; Tape::Backward adds into their `grad`. Throws ShapeMismatch
  // or UnknownIntent.
  Output Forward(Tape<Scalar>& tape, const Batch& batch) const;
  // Tagging loss, or lambda times the generation loss, from Forward logits.
  Var Loss(Tape<Scalar>& tape, const Batch& batch, Var logits) const;
  // Logits at the batch's label rows, without recording gradients.
  Matrix<Scalar> Logits(const Batch& batch) const;

  // Appends one intent per name, each with bit-identical copies of the
  // source intent's experts and router entries.
  void CloneExpert(const std::string& source_intent,
                   const std::vector<std::string>& new_intents);
  // Leaves only expert tensors trainable. Throws UsageError for a dense
  // model.
  void FreezeForFinetune();

  static bool IsExpertTensor(const std::string& name);
  std::string ExpertPrefix(int layer, int intent, Mode mode) const;

 private:
  Var EncoderLayer(Tape<Scalar>& tape, Var x, const std::string& prefix,
                   const std::vector<int>& offsets, bool with_attention,
                   bool with_ffn) const;
  Var SparseSlot(Tape<Scalar>& tape, Var x, int layer, const Batch& batch,
                 RoutingDecision* decision) const;
  Var P(Tape<Scalar>& tape, const std::string& name) const;
  void Initialize();

  EncoderConfig config_;
  int num_tags_;
  ParamStore<Scalar> params_;
};

extern template class ParamStore<float>;
extern template class ParamStore<double>;
extern template class EncoderModel<float>;
extern template class EncoderModel<double>;

// Converts every tensor (value only) to another scalar type.
template <typename To, typename From>
ParamStore<To> CastParams(const ParamStore<From>& from) {
  ParamStore<To> out;
  for (const auto& [name, p] : from.tensors()) {
    out.Add(name, p.value.template cast<To>()).trainable = p.trainable;
  }
  return out;
}

}  // namespace sparsedit::encoder
