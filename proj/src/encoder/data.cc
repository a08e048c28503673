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

#include "sparsedit/encoder/data.h"

#include "sparsedit/edit/tags.h"
#include "sparsedit/edit/tokenizer.h"

namespace sparsedit::encoder {

std::vector<int> EncodeInput(const Vocabulary& vocab,
                             const edit::TokenSequence& tokens) {
  std::vector<int> ids = {Vocabulary::kCls};
  for (int id : vocab.Encode(tokens)) ids.push_back(id);
  return ids;
}

Example EncodeTagging(const Vocabulary& vocab,
                      const edit::TaggingExample& tagging) {
  Example ex;
  ex.ids = EncodeInput(vocab, tagging.tokens);
  for (size_t i = 0; i < ex.ids.size(); ++i) {
    ex.label_rows.push_back(static_cast<int>(i));
  }
  ex.labels = tagging.labels;
  return ex;
}

std::optional<Example> EncodeGeneration(const Vocabulary& vocab,
                                        const edit::GenerationExample& gen) {
  Example ex;
  ex.ids = EncodeInput(vocab, gen.tokens);
  for (size_t i = 1; i < ex.ids.size(); ++i) {
    if (ex.ids[i] == Vocabulary::kMask) ex.label_rows.push_back(static_cast<int>(i));
  }
  if (ex.label_rows.empty()) return std::nullopt;
  for (const std::string& token : gen.gold) ex.labels.push_back(vocab.Id(token));
  return ex;
}

TrainingPools BuildTrainingPools(const std::vector<SentencePair>& pairs,
                                 const EncoderConfig& config,
                                 const Vocabulary& vocab) {
  const edit::TagSet tag_set(config.tag_set);
  TrainingPools out;
  out.pools.resize(config.num_intents());
  for (const SentencePair& pair : pairs) {
    const int intent = config.IntentIndex(pair.intent.value_or(""));
    if (intent < 0) {
      ++out.dropped_unknown_intent;
      continue;
    }
    auto annotated = edit::PlanToExamples(pair, tag_set, config.n_masks);
    if (!annotated) {
      ++out.dropped_long_insertion;
      continue;
    }
    Example tag = EncodeTagging(vocab, annotated->tagging);
    auto gen = EncodeGeneration(vocab, annotated->generation);
    if (static_cast<int>(tag.ids.size()) > config.max_seq_len ||
        (gen && static_cast<int>(gen->ids.size()) > config.max_seq_len)) {
      ++out.dropped_too_long;
      continue;
    }
    out.at(intent, Mode::kTag).push_back(std::move(tag));
    if (gen) out.at(intent, Mode::kGen).push_back(std::move(*gen));
  }
  return out;
}

std::vector<edit::TokenSequence> VocabularyCorpus(
    const std::vector<SentencePair>& pairs) {
  std::vector<edit::TokenSequence> corpus;
  corpus.reserve(pairs.size() * 2);
  for (const SentencePair& pair : pairs) {
    corpus.push_back(edit::Tokenize(pair.source));
    corpus.push_back(edit::Tokenize(pair.target));
  }
  return corpus;
}

Batch MakeBatch(const std::vector<const Example*>& examples, int intent,
                Mode mode) {
  Batch batch;
  batch.intent = intent;
  batch.mode = mode;
  for (const Example* ex : examples) {
    batch.AddSequence(ex->ids, ex->label_rows, ex->labels);
  }
  return batch;
}

}  // namespace sparsedit::encoder
