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

// sparsedit: command-line entry point for the editing pipeline.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "sparsedit/cli/commands.h"
#include "sparsedit/cli/run_config.h"
#include "sparsedit/errors.h"

namespace {

using sparsedit::cli::RunConfig;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct CommonFlags {
  std::string config_path;
  std::optional<uint64_t> seed;

  void Register(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "Run configuration (JSON)");
    cmd->add_option("--seed", seed, "Overrides the configuration seed");
  }

  RunConfig Load() const {
    RunConfig config =
        config_path.empty() ? RunConfig() : RunConfig::Load(config_path);
    if (seed) {
      nlohmann::json j = config.ToJson();
      j["seed"] = *seed;
      config = RunConfig::FromJson(j);
    }
    return config;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sparse-expert text editing toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "sparsedit 0.1.0");

  CommonFlags common;
  std::function<int()> action;

  auto* ingest = app.add_subcommand("ingest", "Mine sentence pairs from a revision dump");
  sparsedit::cli::IngestArgs ingest_args;
  bool print_config = false;
  common.Register(ingest);
  ingest->add_option("--dump", ingest_args.dump, "MediaWiki XML or JSONL revisions");
  ingest->add_option("--out", ingest_args.out, "Output directory");
  ingest->add_flag("--print-config", print_config,
                   "Print the effective filter configuration and exit");
  ingest->callback([&] {
    action = [&] {
      const RunConfig config = common.Load();
      if (print_config) {
        std::cout << config.ToJson()["ingest"].dump(2) << '\n';
        return 0;
      }
      if (ingest_args.dump.empty() || ingest_args.out.empty()) {
        throw sparsedit::UsageError("ingest needs --dump and --out");
      }
      sparsedit::cli::RunIngestCommand(config, ingest_args);
      return 0;
    };
  });

  auto* cluster = app.add_subcommand("cluster", "Cluster revision comments into intents");
  sparsedit::cli::ClusterArgs cluster_args;
  common.Register(cluster);
  cluster->add_option("--pairs", cluster_args.pairs, "Sentence-pair JSONL")->required();
  cluster->add_option("--out", cluster_args.out, "Output directory")->required();
  cluster->add_option("--embeddings", cluster_args.embeddings,
                      "Comment embeddings, one row per pair");
  cluster->add_option("--prompt-embeddings", cluster_args.prompt_embeddings,
                      "Seed-prompt embeddings, one row per prompt");
  cluster->callback([&] {
    action = [&] {
      sparsedit::cli::RunClusterCommand(common.Load(), cluster_args);
      return 0;
    };
  });

  auto* annotate = app.add_subcommand("annotate", "Convert pairs into edit-tag examples");
  sparsedit::cli::AnnotateArgs annotate_args;
  common.Register(annotate);
  annotate->add_option("--pairs", annotate_args.pairs, "Sentence-pair JSONL")->required();
  annotate->add_option("--out", annotate_args.out, "Output directory")->required();
  annotate->callback([&] {
    action = [&] {
      sparsedit::cli::RunAnnotateCommand(common.Load(), annotate_args);
      return 0;
    };
  });

  auto* train = app.add_subcommand("train", "Train an editing model");
  sparsedit::cli::TrainArgs train_args;
  common.Register(train);
  train->add_option("--pairs", train_args.pairs, "Intent-labeled pair JSONL")->required();
  train->add_option("--out", train_args.out, "Output directory")->required();
  train->callback([&] {
    action = [&] {
      sparsedit::cli::RunTrainCommand(common.Load(), train_args);
      return 0;
    };
  });

  auto* finetune = app.add_subcommand(
      "finetune", "Clone an intent's experts and train them on a new intent");
  sparsedit::cli::FinetuneArgs finetune_args;
  common.Register(finetune);
  finetune->add_option("--checkpoint", finetune_args.checkpoint, "Trained model")->required();
  finetune->add_option("--clone-from", finetune_args.clone_from,
                       "Intent whose experts are copied")->required();
  finetune->add_option("--new-intent", finetune_args.new_intents,
                       "Name of the new intent (repeatable)")->required();
  finetune->add_option("--pairs", finetune_args.pairs, "Intent-labeled pair JSONL")->required();
  finetune->add_option("--out", finetune_args.out, "Output directory")->required();
  finetune->callback([&] {
    action = [&] {
      sparsedit::cli::RunFinetuneCommand(common.Load(), finetune_args);
      return 0;
    };
  });

  auto* edit = app.add_subcommand("edit", "Edit text read line by line");
  sparsedit::cli::EditArgs edit_args;
  std::string edit_in, edit_out;
  edit->add_option("--checkpoint", edit_args.checkpoint, "Trained model")->required();
  edit->add_option("--intent", edit_args.intent,
                   "fluency, readability, simplification, neutralization or "
                   "any intent the model was trained on")->required();
  edit->add_option("--depth", edit_args.depth, "Editing passes (0 echoes the input)")
      ->capture_default_str();
  edit->add_option("--in", edit_in, "Input file (default: stdin)");
  edit->add_option("--out", edit_out, "Output file (default: stdout)");
  edit->callback([&] {
    action = [&] {
      std::ifstream in_file;
      if (!edit_in.empty()) {
        in_file.open(edit_in);
        if (!in_file) throw sparsedit::IoError("cannot open '" + edit_in + "'");
      }
      std::ofstream out_file;
      if (!edit_out.empty()) {
        out_file.open(edit_out);
        if (!out_file) throw sparsedit::IoError("cannot write '" + edit_out + "'");
      }
      sparsedit::cli::RunEditCommand(
          edit_args, edit_in.empty() ? std::cin : in_file,
          edit_out.empty() ? std::cout : out_file);
      return 0;
    };
  });

  auto* eval = app.add_subcommand("eval", "Score predictions with SARI, GLEU and EM");
  sparsedit::cli::EvalArgs eval_args;
  common.Register(eval);
  eval->add_option("--in", eval_args.inputs,
                   "Dataset JSONL (repeatable; default: eval.datasets)");
  eval->add_option("--out", eval_args.out, "Output directory")->required();
  eval->add_flag("--per-instance", eval_args.per_instance,
                 "Also write per-instance scores");
  eval->add_option("--checkpoint", eval_args.checkpoint,
                   "Generate predictions with this model");
  eval->add_option("--intent", eval_args.intent, "Intent used with --checkpoint");
  eval->add_option("--depth", eval_args.depth, "Editing passes with --checkpoint")
      ->capture_default_str();
  eval->callback([&] {
    action = [&] {
      if (eval_args.checkpoint && eval_args.intent.empty()) {
        throw sparsedit::UsageError("--checkpoint requires --intent");
      }
      std::cout << sparsedit::cli::RunEvalCommand(common.Load(), eval_args) << '\n';
      return 0;
    };
  });

  auto* gradcheck = app.add_subcommand(
      "gradcheck", "Compare analytic gradients with finite differences");
  sparsedit::cli::GradCheckArgs gc_args;
  std::string gc_out, sparsity = "sparse_ffn", router = "task_id",
                      granularity = "sequence";
  bool share = false;
  common.Register(gradcheck);
  gradcheck->add_option("--out", gc_out, "Output directory");
  gradcheck->add_option("--sparsity", sparsity, "dense, sparse_ffn or sparse_last_layer")
      ->capture_default_str();
  gradcheck->add_option("--router", router, "task_id, linear or task_id_linear")
      ->capture_default_str();
  gradcheck->add_option("--granularity", granularity, "sequence or token")
      ->capture_default_str();
  gradcheck->add_flag("--share-tag-gen", share, "One expert per intent for both heads");
  gradcheck->add_option("--tolerance", gc_args.options.tolerance)->capture_default_str();
  gradcheck->callback([&] {
    action = [&] {
      gc_args.model.sparsity = sparsedit::encoder::ParseSparsityMode(sparsity);
      gc_args.model.router = sparsedit::encoder::ParseRouterKind(router);
      gc_args.model.granularity = sparsedit::encoder::ParseGranularity(granularity);
      gc_args.model.share_tag_gen = share;
      if (!gc_out.empty()) gc_args.out = gc_out;
      const auto result = sparsedit::cli::RunGradCheckCommand(common.Load(), gc_args);
      std::cout << result.ToJson().dump(2) << '\n';
      const bool passed = result.passed(gc_args.options.tolerance);
      std::cerr << (passed ? "gradcheck passed" : "gradcheck FAILED")
                << ": max relative error " << result.max_relative_error
                << " (" << result.worst_tensor << ")\n";
      return passed ? 0 : kExitFailure;
    };
  });

  auto* synth = app.add_subcommand("synth", "Generate the synthetic four-intent corpus");
  sparsedit::cli::SynthArgs synth_args;
  common.Register(synth);
  synth->add_option("--out", synth_args.out, "Output directory")->required();
  synth->add_option("--train-per-intent", synth_args.train_per_intent)->capture_default_str();
  synth->add_option("--heldout-per-intent", synth_args.heldout_per_intent)
      ->capture_default_str();
  synth->callback([&] {
    action = [&] {
      sparsedit::cli::RunSynthCommand(common.Load(), synth_args);
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    return action();
  } catch (const sparsedit::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const sparsedit::UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}
