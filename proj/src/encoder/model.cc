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

#include "sparsedit/encoder/model.h"

#include <algorithm>
#include <cmath>
#include <random>

#include "sparsedit/edit/tags.h"
#include "sparsedit/errors.h"
#include "sparsedit/random.h"

namespace sparsedit::encoder {

template <typename Scalar>
Param<Scalar>& ParamStore<Scalar>::Add(const std::string& name,
                                       Matrix<Scalar> value) {
  Param<Scalar>& p = tensors_[name];
  p.value = std::move(value);
  p.grad.resize(0, 0);
  p.trainable = true;
  return p;
}

template <typename Scalar>
Param<Scalar>& ParamStore<Scalar>::at(const std::string& name) {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) throw ShapeMismatch("missing tensor " + name);
  return it->second;
}

template <typename Scalar>
const Param<Scalar>& ParamStore<Scalar>::at(const std::string& name) const {
  auto it = tensors_.find(name);
  if (it == tensors_.end()) throw ShapeMismatch("missing tensor " + name);
  return it->second;
}

template <typename Scalar>
int64_t ParamStore<Scalar>::NumScalars() const {
  int64_t total = 0;
  for (const auto& [name, p] : tensors_) total += p.value.size();
  return total;
}

template <typename Scalar>
void ParamStore<Scalar>::ZeroGrad() {
  for (auto& [name, p] : tensors_) {
    p.grad = Matrix<Scalar>::Zero(p.value.rows(), p.value.cols());
  }
}

void Batch::AddSequence(const std::vector<int>& sequence_ids,
                        const std::vector<int>& rows,
                        const std::vector<int>& targets) {
  const int start = offsets.back();
  ids.insert(ids.end(), sequence_ids.begin(), sequence_ids.end());
  offsets.push_back(start + static_cast<int>(sequence_ids.size()));
  for (int r : rows) label_rows.push_back(start + r);
  labels.insert(labels.end(), targets.begin(), targets.end());
}

template <typename Scalar>
RoutingDecision RouteTop1(const Matrix<Scalar>& logits, double temperature) {
  Matrix<Scalar> p = logits / static_cast<Scalar>(temperature);
  Tape<Scalar>::SoftmaxRowsInPlace(p);
  RoutingDecision d;
  for (Eigen::Index i = 0; i < p.rows(); ++i) {
    Eigen::Index best = 0;
    for (Eigen::Index c = 1; c < p.cols(); ++c) {
      if (p(i, c) > p(i, best)) best = c;
    }
    d.intent.push_back(static_cast<int>(best));
    d.gate.push_back(static_cast<double>(p(i, best)));
  }
  return d;
}

RoutingDecision RouteTaskId(int intent, int units) {
  return RoutingDecision{std::vector<int>(units, intent),
                         std::vector<double>(units, 1.0)};
}

template <typename Scalar>
double CrossEntropyLoss(const Matrix<Scalar>& logits,
                        const std::vector<int>& targets) {
  Tape<Scalar> tape;
  Var l = tape.CrossEntropy(tape.Constant(logits), targets);
  return static_cast<double>(tape.value(l)(0, 0));
}

namespace {

std::string L(int layer) { return "layer" + std::to_string(layer) + "."; }

template <typename Scalar>
Matrix<Scalar> Normal(std::mt19937_64& rng, int rows, int cols, double sd) {
  Matrix<Scalar> m(rows, cols);
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    m.data()[i] = static_cast<Scalar>(StandardNormal(rng) * sd);
  }
  return m;
}

constexpr const char* kFfnSuffixes[] = {"ffn.w1", "ffn.b1", "ffn.w2",
                                        "ffn.b2"};

}  // namespace

template <typename Scalar>
EncoderModel<Scalar>::EncoderModel(EncoderConfig config)
    : config_(std::move(config)),
      num_tags_(edit::TagSet(config_.tag_set).size()) {
  config_.Validate();
  Initialize();
}

template <typename Scalar>
EncoderModel<Scalar>::EncoderModel(EncoderConfig config,
                                   ParamStore<Scalar> params)
    : config_(std::move(config)),
      num_tags_(edit::TagSet(config_.tag_set).size()),
      params_(std::move(params)) {
  config_.Validate();
}

template <typename Scalar>
bool EncoderModel<Scalar>::IsExpertTensor(const std::string& name) {
  return name.find(".expert.") != std::string::npos;
}

template <typename Scalar>
std::string EncoderModel<Scalar>::ExpertPrefix(int layer, int intent,
                                               Mode mode) const {
  const char* m = config_.share_tag_gen ? "shared"
                  : mode == Mode::kTag  ? "tag"
                                        : "gen";
  return L(layer) + "expert." + std::to_string(intent) + "." + m + ".";
}

template <typename Scalar>
void EncoderModel<Scalar>::Initialize() {
  const int h = config_.hidden_dim, f = config_.ffn_dim;
  const int v = config_.vocab_size, nl = config_.num_layers;
  const double init_std = config_.init_std;
  std::mt19937_64 rng(config_.seed);
  using M = Matrix<Scalar>;
  auto ones = [](int n) { return M::Ones(1, n); };
  auto zeros = [](int n) { return M::Zero(1, n); };

  // The dense architecture is always drawn first, in this order, so sparse
  // and dense models built from one seed share their backbone.
  ParamStore<Scalar> dense;
  dense.Add("embed.token", Normal<Scalar>(rng, v, h, init_std));
  dense.Add("embed.position", Normal<Scalar>(rng, config_.max_seq_len, h, init_std));
  dense.Add("embed.ln.gamma", ones(h));
  dense.Add("embed.ln.beta", zeros(h));
  for (int l = 0; l < nl; ++l) {
    for (const char* proj : {"q", "k", "v", "o"}) {
      dense.Add(L(l) + "attn." + proj + ".w", Normal<Scalar>(rng, h, h, init_std));
      dense.Add(L(l) + "attn." + proj + ".b", zeros(h));
    }
    dense.Add(L(l) + "ln1.gamma", ones(h));
    dense.Add(L(l) + "ln1.beta", zeros(h));
    dense.Add(L(l) + "ffn.w1", Normal<Scalar>(rng, h, f, init_std));
    dense.Add(L(l) + "ffn.b1", zeros(f));
    dense.Add(L(l) + "ffn.w2", Normal<Scalar>(rng, f, h, init_std));
    dense.Add(L(l) + "ffn.b2", zeros(h));
    dense.Add(L(l) + "ln2.gamma", ones(h));
    dense.Add(L(l) + "ln2.beta", zeros(h));
  }
  dense.Add("head.tag.w", Normal<Scalar>(rng, h, num_tags_, init_std));
  dense.Add("head.tag.b", zeros(num_tags_));
  dense.Add("head.gen.w", Normal<Scalar>(rng, h, v, init_std));
  dense.Add("head.gen.b", zeros(v));

  params_ = ParamStore<Scalar>();
  auto expert_layer = [&](int l) {
    return config_.sparsity == SparsityMode::kSparseFfn ||
           (config_.sparsity == SparsityMode::kSparseLastLayer && l == nl - 1);
  };
  std::vector<Mode> modes = {Mode::kTag};
  if (!config_.share_tag_gen) modes.push_back(Mode::kGen);
  for (auto& [name, p] : dense.tensors()) {
    int layer = -1;
    if (name.rfind("layer", 0) == 0) layer = std::stoi(name.substr(5));
    if (layer < 0 || !expert_layer(layer)) {
      params_.Add(name, p.value);
      continue;
    }
    const std::string suffix = name.substr(name.find('.') + 1);
    const bool in_expert =
        config_.sparsity == SparsityMode::kSparseLastLayer ||
        std::find(std::begin(kFfnSuffixes), std::end(kFfnSuffixes), suffix) !=
            std::end(kFfnSuffixes);
    if (!in_expert) {
      params_.Add(name, p.value);
      continue;
    }
    for (int r = 0; r < config_.num_intents(); ++r) {
      for (Mode mode : modes) {
        params_.Add(ExpertPrefix(layer, r, mode) + suffix, p.value);
      }
    }
  }

  if (config_.sparse() && config_.router != RouterKind::kTaskId) {
    std::mt19937_64 router_rng(config_.seed ^ 0x9E3779B97F4A7C15ULL);
    const int n = config_.num_intents();
    for (int l = 0; l < nl; ++l) {
      if (!expert_layer(l)) continue;
      if (config_.router == RouterKind::kLinear) {
        params_.Add(L(l) + "router.w", Normal<Scalar>(router_rng, h, n,
                                                      config_.router_init_std));
      } else {
        for (int r = 0; r < n; ++r) {
          params_.Add(L(l) + "router." + std::to_string(r) + ".w",
                      Normal<Scalar>(router_rng, h, n,
                                     config_.router_init_std));
        }
      }
    }
  }
}

template <typename Scalar>
Var EncoderModel<Scalar>::P(Tape<Scalar>& tape, const std::string& name) const {
  // The tape only writes gradients into the parameter during Backward.
  return tape.Parameter(const_cast<Param<Scalar>*>(&params_.at(name)));
}

template <typename Scalar>
Var EncoderModel<Scalar>::EncoderLayer(Tape<Scalar>& tape, Var x,
                                       const std::string& prefix,
                                       const std::vector<int>& offsets,
                                       bool with_attention,
                                       bool with_ffn) const {
  auto linear = [&](Var in, const std::string& name) {
    return tape.AddBias(tape.MatMul(in, P(tape, prefix + name + ".w")),
                        P(tape, prefix + name + ".b"));
  };
  if (with_attention) {
    Var q = linear(x, "attn.q");
    Var k = linear(x, "attn.k");
    Var v = linear(x, "attn.v");
    Var a = tape.Attention(q, k, v, offsets, config_.num_heads);
    Var o = linear(a, "attn.o");
    x = tape.LayerNorm(tape.Add(x, o), P(tape, prefix + "ln1.gamma"),
                       P(tape, prefix + "ln1.beta"));
  }
  if (with_ffn) {
    Var hidden = tape.Gelu(tape.AddBias(tape.MatMul(x, P(tape, prefix + "ffn.w1")),
                                        P(tape, prefix + "ffn.b1")));
    x = tape.AddBias(tape.MatMul(hidden, P(tape, prefix + "ffn.w2")),
                     P(tape, prefix + "ffn.b2"));
  }
  return x;
}

template <typename Scalar>
Var EncoderModel<Scalar>::SparseSlot(Tape<Scalar>& tape, Var x, int layer,
                                     const Batch& batch,
                                     RoutingDecision* decision) const {
  const bool whole_layer = config_.sparsity == SparsityMode::kSparseLastLayer;
  auto expert = [&](Var in, int intent) {
    const std::string prefix = ExpertPrefix(layer, intent, batch.mode);
    if (!whole_layer) return EncoderLayer(tape, in, prefix, {}, false, true);
    Var h = EncoderLayer(tape, in, prefix, batch.offsets, true, false);
    Var f = EncoderLayer(tape, h, prefix, {}, false, true);
    return tape.LayerNorm(tape.Add(h, f), P(tape, prefix + "ln2.gamma"),
                          P(tape, prefix + "ln2.beta"));
  };

  const int rows = batch.num_rows();
  if (config_.router == RouterKind::kTaskId) {
    const int units = config_.granularity == Granularity::kSequence
                          ? batch.num_sequences()
                          : rows;
    *decision = RouteTaskId(batch.intent, units);
    return expert(x, batch.intent);
  }

  const std::string router_name =
      config_.router == RouterKind::kLinear
          ? L(layer) + "router.w"
          : L(layer) + "router." + std::to_string(batch.intent) + ".w";
  const bool per_sequence = config_.granularity == Granularity::kSequence;
  Var context = per_sequence ? tape.SegmentMean(x, batch.offsets) : x;
  Var logits = tape.MatMul(context, P(tape, router_name));
  std::vector<int> choice;
  Var gate = tape.Top1Gate(logits, static_cast<Scalar>(config_.temperature),
                           &choice);
  decision->intent = choice;
  decision->gate.clear();
  for (Eigen::Index i = 0; i < tape.value(gate).rows(); ++i) {
    decision->gate.push_back(static_cast<double>(tape.value(gate)(i, 0)));
  }

  std::vector<int> row_unit(rows);
  for (int s = 0; s < batch.num_sequences(); ++s) {
    for (int i = batch.offsets[s]; i < batch.offsets[s + 1]; ++i) {
      row_unit[i] = per_sequence ? s : i;
    }
  }
  std::map<int, std::vector<int>> rows_by_intent;
  for (int i = 0; i < rows; ++i) rows_by_intent[choice[row_unit[i]]].push_back(i);

  Var total{};
  for (const auto& [intent, selected] : rows_by_intent) {
    std::vector<int> units;
    for (int i : selected) units.push_back(row_unit[i]);
    Var out = whole_layer ? tape.GatherRows(expert(x, intent), selected)
                          : expert(tape.GatherRows(x, selected), intent);
    out = tape.RowScale(out, tape.GatherRows(gate, std::move(units)));
    out = tape.ScatterRows(out, selected, rows);
    total = total.id < 0 ? out : tape.Add(total, out);
  }
  return total;
}

template <typename Scalar>
typename EncoderModel<Scalar>::Output EncoderModel<Scalar>::Forward(
    Tape<Scalar>& tape, const Batch& batch) const {
  const int rows = batch.num_rows();
  if (batch.intent < 0 || batch.intent >= config_.num_intents()) {
    throw UnknownIntent("intent id " + std::to_string(batch.intent) +
                        " outside [0, " +
                        std::to_string(config_.num_intents()) + ")");
  }
  if (batch.offsets.empty() || batch.offsets.front() != 0 ||
      batch.offsets.back() != rows || rows == 0) {
    throw ShapeMismatch("batch offsets do not cover the token ids");
  }
  std::vector<int> positions(rows);
  for (int s = 0; s < batch.num_sequences(); ++s) {
    const int len = batch.offsets[s + 1] - batch.offsets[s];
    if (len < 1 || len > config_.max_seq_len) {
      throw ShapeMismatch("sequence length " + std::to_string(len) +
                          " outside [1, " +
                          std::to_string(config_.max_seq_len) + "]");
    }
    for (int i = 0; i < len; ++i) positions[batch.offsets[s] + i] = i;
  }
  for (int row : batch.label_rows) {
    if (row < 0 || row >= rows) throw ShapeMismatch("label row out of range");
  }
  if (!batch.labels.empty() && batch.labels.size() != batch.label_rows.size()) {
    throw ShapeMismatch("labels do not match label rows");
  }

  Output out;
  Var x = tape.Add(tape.Gather(P(tape, "embed.token"), batch.ids),
                   tape.Gather(P(tape, "embed.position"), positions));
  x = tape.LayerNorm(x, P(tape, "embed.ln.gamma"), P(tape, "embed.ln.beta"));
  const int nl = config_.num_layers;
  for (int l = 0; l < nl; ++l) {
    const std::string prefix = L(l);
    if (config_.sparsity == SparsityMode::kDense ||
        (config_.sparsity == SparsityMode::kSparseLastLayer && l < nl - 1)) {
      Var h = EncoderLayer(tape, x, prefix, batch.offsets, true, false);
      Var f = EncoderLayer(tape, h, prefix, {}, false, true);
      x = tape.LayerNorm(tape.Add(h, f), P(tape, prefix + "ln2.gamma"),
                         P(tape, prefix + "ln2.beta"));
    } else if (config_.sparsity == SparsityMode::kSparseFfn) {
      Var h = EncoderLayer(tape, x, prefix, batch.offsets, true, false);
      out.routing.emplace_back();
      Var f = SparseSlot(tape, h, l, batch, &out.routing.back());
      x = tape.LayerNorm(tape.Add(h, f), P(tape, prefix + "ln2.gamma"),
                         P(tape, prefix + "ln2.beta"));
    } else {
      out.routing.emplace_back();
      x = SparseSlot(tape, x, l, batch, &out.routing.back());
    }
  }
  out.hidden = x;
  const std::string head = batch.mode == Mode::kTag ? "head.tag" : "head.gen";
  Var picked = tape.GatherRows(x, batch.label_rows);
  out.logits = tape.AddBias(tape.MatMul(picked, P(tape, head + ".w")),
                            P(tape, head + ".b"));
  return out;
}

template <typename Scalar>
Var EncoderModel<Scalar>::Loss(Tape<Scalar>& tape, const Batch& batch,
                               Var logits) const {
  Var ce = tape.CrossEntropy(logits, batch.labels);
  if (batch.mode == Mode::kTag) return ce;
  return tape.Scale(ce, static_cast<Scalar>(config_.lambda));
}

template <typename Scalar>
Matrix<Scalar> EncoderModel<Scalar>::Logits(const Batch& batch) const {
  Tape<Scalar> tape;
  return tape.value(Forward(tape, batch).logits);
}

template <typename Scalar>
void EncoderModel<Scalar>::CloneExpert(
    const std::string& source_intent,
    const std::vector<std::string>& new_intents) {
  const int source = config_.IntentIndex(source_intent);
  if (source < 0) throw UnknownIntent("unknown intent '" + source_intent + "'");
  if (!config_.sparse()) {
    throw UsageError("cannot clone experts of a dense model");
  }
  for (const std::string& name : new_intents) {
    if (config_.IntentIndex(name) >= 0) {
      throw UsageError("intent '" + name + "' already exists");
    }
    const int target = config_.num_intents();
    std::vector<std::pair<std::string, Param<Scalar>>> copies;
    for (const auto& [tensor, p] : params_.tensors()) {
      if (!IsExpertTensor(tensor)) continue;
      const size_t at = tensor.find(".expert.") + 8;
      const size_t dot = tensor.find('.', at);
      if (std::stoi(tensor.substr(at, dot - at)) != source) continue;
      copies.emplace_back(tensor.substr(0, at) + std::to_string(target) +
                              tensor.substr(dot),
                          p);
    }
    for (int l = 0; l < config_.num_layers; ++l) {
      if (params_.Contains(L(l) + "router.w")) {
        Param<Scalar>& w = params_.at(L(l) + "router.w");
        w.value.conservativeResize(Eigen::NoChange, w.value.cols() + 1);
        w.value.col(w.value.cols() - 1) = w.value.col(source);
        w.grad.resize(0, 0);
      }
      const std::string per_task = L(l) + "router." + std::to_string(source) + ".w";
      if (params_.Contains(per_task)) {
        copies.emplace_back(L(l) + "router." + std::to_string(target) + ".w",
                            params_.at(per_task));
      }
    }
    config_.intents.push_back(name);
    // Per-task routers of existing tasks gain a column for the new intent.
    for (int l = 0; l < config_.num_layers; ++l) {
      for (int r = 0; r < target; ++r) {
        const std::string n = L(l) + "router." + std::to_string(r) + ".w";
        if (!params_.Contains(n)) continue;
        Param<Scalar>& w = params_.at(n);
        w.value.conservativeResize(Eigen::NoChange, w.value.cols() + 1);
        w.value.col(w.value.cols() - 1) = w.value.col(source);
        w.grad.resize(0, 0);
      }
    }
    for (auto& [tensor, p] : copies) {
      if (tensor.find(".router.") != std::string::npos) {
        p.value.conservativeResize(Eigen::NoChange, p.value.cols() + 1);
        p.value.col(p.value.cols() - 1) = p.value.col(source);
      }
      Param<Scalar>& added = params_.Add(tensor, p.value);
      added.trainable = p.trainable;
    }
  }
}

template <typename Scalar>
void EncoderModel<Scalar>::FreezeForFinetune() {
  if (!config_.sparse()) {
    throw UsageError("fine-tuning freezes all but the experts; the model is dense");
  }
  params_.SetTrainable([](const std::string& name) { return IsExpertTensor(name); });
}

template class ParamStore<float>;
template class ParamStore<double>;
template class EncoderModel<float>;
template class EncoderModel<double>;
template RoutingDecision RouteTop1(const Matrix<float>&, double);
template RoutingDecision RouteTop1(const Matrix<double>&, double);
template double CrossEntropyLoss(const Matrix<float>&, const std::vector<int>&);
template double CrossEntropyLoss(const Matrix<double>&, const std::vector<int>&);

}  // namespace sparsedit::encoder
