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

#include "sparsedit/encoder/predictor.h"

#include <limits>
#include <span>

#include "sparsedit/edit/masked.h"
#include "sparsedit/edit/tokenizer.h"
#include "sparsedit/edit/transforms.h"
#include "sparsedit/encoder/data.h"
#include "sparsedit/errors.h"

namespace sparsedit::encoder {

namespace {

using edit::EditPlan;
using edit::EditTag;
using edit::TagKind;

bool IsMerge(const EditTag& tag) {
  return tag.kind == TagKind::kMergeHyphen || tag.kind == TagKind::kMergeSpace;
}

// True when a non-slot transform can rewrite tokens[i...].
bool Applicable(const EditTag& tag, const edit::TokenSequence& tokens,
                size_t i) {
  if (IsMerge(tag) && i + 1 >= tokens.size()) return false;
  try {
    edit::ApplyTransform(tag, std::span<const std::string>(tokens).subspan(i));
    return true;
  } catch (const InapplicableTransform&) {
    return false;
  }
}

// Drops empty slots (APPEND -> KEEP, REPLACE -> DELETE, generic verb ->
// KEEP) and renumbers the rest left to right.
EditPlan Normalize(const EditPlan& plan) {
  EditPlan out;
  for (EditTag tag : plan.tags) {
    if (tag.UsesSlot()) {
      const edit::TokenSequence& slot = plan.insertions[tag.slot];
      if (slot.empty()) {
        tag = tag.kind == TagKind::kReplace ? EditTag::Of(TagKind::kDelete)
                                            : EditTag::Keep();
      } else {
        tag.slot = static_cast<int>(out.insertions.size());
        out.insertions.push_back(slot);
      }
    }
    out.tags.push_back(tag);
  }
  return out;
}

}  // namespace

template <typename Scalar>
Editor<Scalar>::Editor(const EncoderModel<Scalar>& model,
                       const Vocabulary& vocab)
    : model_(model), vocab_(vocab), tag_set_(model.config().tag_set) {
  if (vocab.size() != model.config().vocab_size) {
    throw ShapeMismatch("vocabulary size " + std::to_string(vocab.size()) +
                        " does not match the model's " +
                        std::to_string(model.config().vocab_size));
  }
}

template <typename Scalar>
int Editor<Scalar>::IntentId(std::string_view intent) const {
  const int id = model_.config().IntentIndex(intent);
  if (id < 0) throw UnknownIntent("unknown intent '" + std::string(intent) + "'");
  return id;
}

template <typename Scalar>
EditPlan Editor<Scalar>::PredictPlan(const edit::TokenSequence& tokens,
                                     int intent) const {
  const EncoderConfig& config = model_.config();
  EditPlan plan = edit::IdentityPlan(tokens.size());
  if (tokens.empty() ||
      static_cast<int>(tokens.size()) + 1 > config.max_seq_len) {
    return plan;
  }

  Batch tag_batch;
  tag_batch.intent = intent;
  tag_batch.mode = Mode::kTag;
  std::vector<int> rows(tokens.size() + 1);
  for (size_t i = 0; i < rows.size(); ++i) rows[i] = static_cast<int>(i);
  tag_batch.AddSequence(EncodeInput(vocab_, tokens), rows, {});
  const Matrix<Scalar> tag_logits = model_.Logits(tag_batch);

  int next_slot = 0;
  for (size_t pos = 0; pos < plan.tags.size(); ++pos) {
    if (pos >= 2 && IsMerge(plan.tags[pos - 1])) {
      plan.tags[pos] = EditTag::Of(TagKind::kMerged);
      continue;
    }
    int best = -1;
    for (int t = 0; t < tag_set_.size(); ++t) {
      const TagKind kind = tag_set_.At(t).kind;
      if (pos == 0 && kind != TagKind::kKeep && kind != TagKind::kAppend) continue;
      if (best < 0 || tag_logits(pos, t) > tag_logits(pos, best)) best = t;
    }
    EditTag tag = tag_set_.At(best);
    if (pos > 0 && tag.IsTransform() && tag.kind != TagKind::kVerb &&
        !Applicable(tag, tokens, pos - 1)) {
      tag = EditTag::Keep();
    }
    if (tag.UsesSlot()) tag.slot = next_slot++;
    plan.tags[pos] = tag;
  }
  plan.insertions.assign(next_slot, {});
  if (next_slot == 0) return plan;

  const edit::MaskedInput masked =
      edit::RenderMaskedInput(tokens, plan, config.n_masks);
  std::vector<int> ids = EncodeInput(vocab_, masked.tokens);
  if (static_cast<int>(ids.size()) > config.max_seq_len) {
    return edit::IdentityPlan(tokens.size());
  }
  std::vector<int> mask_rows;
  for (size_t i = 1; i < ids.size(); ++i) {
    if (ids[i] == Vocabulary::kMask) mask_rows.push_back(static_cast<int>(i));
  }
  Batch gen_batch;
  gen_batch.intent = intent;
  gen_batch.mode = Mode::kGen;
  gen_batch.AddSequence(ids, mask_rows, {});
  const Matrix<Scalar> gen_logits = model_.Logits(gen_batch);
  for (size_t m = 0; m < mask_rows.size(); ++m) {
    int best = Vocabulary::kPad;
    for (int v = Vocabulary::kNumSpecial; v < gen_logits.cols(); ++v) {
      if (gen_logits(m, v) > gen_logits(m, best)) best = v;
    }
    if (best == Vocabulary::kPad) continue;
    plan.insertions[m / config.n_masks].push_back(vocab_.Token(best));
  }
  return Normalize(plan);
}

template <typename Scalar>
std::string Editor<Scalar>::EditOnce(const std::string& text,
                                     int intent) const {
  const edit::TokenSequence tokens = edit::Tokenize(text);
  const EditPlan plan = PredictPlan(tokens, intent);
  if (plan == edit::IdentityPlan(tokens.size())) return text;
  return edit::Detokenize(edit::ApplyPlan(tokens, plan));
}

template <typename Scalar>
std::string Editor<Scalar>::Edit(std::string_view text,
                                 std::string_view intent) const {
  return EditOnce(std::string(text), IntentId(intent));
}

template <typename Scalar>
std::string Editor<Scalar>::EditIterative(std::string_view text,
                                          std::string_view intent,
                                          int depth, int* passes) const {
  if (depth < 0) throw UsageError("depth must be >= 0");
  const int id = IntentId(intent);
  std::string current(text);
  if (passes != nullptr) *passes = 0;
  for (int d = 0; d < depth; ++d) {
    std::string next = EditOnce(current, id);
    if (passes != nullptr) ++*passes;
    if (next == current) break;
    current = std::move(next);
  }
  return current;
}

template <typename Scalar>
std::vector<std::string> Editor<Scalar>::EditAll(
    const std::vector<std::string>& texts, std::string_view intent,
    int depth) const {
  std::vector<std::string> out;
  out.reserve(texts.size());
  for (const std::string& text : texts) {
    out.push_back(EditIterative(text, intent, depth));
  }
  return out;
}

template class Editor<float>;
template class Editor<double>;

}  // namespace sparsedit::encoder
