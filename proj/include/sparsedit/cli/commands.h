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

#include <istream>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "sparsedit/cli/run_config.h"
#include "sparsedit/encoder/gradcheck.h"
#include "sparsedit/sentence_pair.h"

namespace sparsedit::cli {

// Every command that takes an output directory writes config.json and
// manifest.json there and self-checks them before returning.

struct IngestArgs {
  std::string dump;  // XML export or JSONL revisions
  std::string out;
};
// Writes pairs.jsonl and stats.json.
void RunIngestCommand(const RunConfig& config, const IngestArgs& args);

struct ClusterArgs {
  std::vector<std::string> pairs;
  std::string out;
  // Comment embeddings, one row per pair. When given, prompt_embeddings
  // (one row per seed prompt) is required too. Without them both sides use
  // the hashed bag-of-words embedder.
  std::optional<std::string> embeddings;
  std::optional<std::string> prompt_embeddings;
};
// Writes corpus/<intent>.jsonl, assignments.json and cluster_report.json.
void RunClusterCommand(const RunConfig& config, const ClusterArgs& args);

struct AnnotateArgs {
  std::vector<std::string> pairs;
  std::string out;
};
// Writes examples.jsonl and stats.json.
void RunAnnotateCommand(const RunConfig& config, const AnnotateArgs& args);

struct TrainArgs {
  std::vector<std::string> pairs;  // intent-labeled
  std::string out;
};
// Writes model.ckpt, train_log.jsonl and stats.json.
void RunTrainCommand(const RunConfig& config, const TrainArgs& args);

struct FinetuneArgs {
  std::string checkpoint;
  std::string clone_from;
  std::vector<std::string> new_intents;
  std::vector<std::string> pairs;
  std::string out;
};
// Clones the experts of `clone_from` into each new intent, freezes every
// non-expert tensor and trains. Writes the same files as train.
void RunFinetuneCommand(const RunConfig& config, const FinetuneArgs& args);

struct EditArgs {
  std::string checkpoint;
  std::string intent;
  int depth = 1;
};
// Edits every line of `in` and writes one line per input to `out`.
void RunEditCommand(const EditArgs& args, std::istream& in, std::ostream& out);

struct EvalArgs {
  std::vector<std::string> inputs;  // defaults to eval.datasets
  std::string out;
  bool per_instance = false;
  // With a checkpoint the inputs hold {"source", "references"} (or
  // "target") and predictions come from the model.
  std::optional<std::string> checkpoint;
  std::string intent;
  int depth = 1;
};
// Writes report.json, plus per_instance.jsonl and predictions/<name>.jsonl
// when requested or generated. Returns the report JSON.
std::string RunEvalCommand(const RunConfig& config, const EvalArgs& args);

// 2 layers, hidden 8, 2 heads, FFN 16, vocabulary 20, max length 12.
encoder::EncoderConfig GradCheckToyConfig();

struct GradCheckArgs {
  encoder::EncoderConfig model = GradCheckToyConfig();
  int sequences = 3;
  int max_len = 6;
  encoder::GradCheckOptions options;
  std::optional<std::string> out;
};
// Writes gradcheck.json when `out` is set.
encoder::GradCheckResult RunGradCheckCommand(const RunConfig& config,
                                             const GradCheckArgs& args);

struct SynthArgs {
  std::string out;
  int train_per_intent = 2000;
  int heldout_per_intent = 200;
};
// Writes train.jsonl, heldout.jsonl and two_error.json.
void RunSynthCommand(const RunConfig& config, const SynthArgs& args);

std::vector<SentencePair> ReadPairs(const std::string& path);

}  // namespace sparsedit::cli
