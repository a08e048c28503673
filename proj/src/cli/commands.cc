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

#include "sparsedit/cli/commands.h"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>

#include "json.hpp"
#include "sparsedit/cli/run_dir.h"
#include "sparsedit/cluster/embeddings.h"
#include "sparsedit/cluster/labeling.h"
#include "sparsedit/cluster/pipeline.h"
#include "sparsedit/edit/masked.h"
#include "sparsedit/encoder/checkpoint.h"
#include "sparsedit/encoder/data.h"
#include "sparsedit/encoder/model.h"
#include "sparsedit/encoder/predictor.h"
#include "sparsedit/encoder/trainer.h"
#include "sparsedit/encoder/vocab.h"
#include "sparsedit/errors.h"
#include "sparsedit/ingest/dump.h"
#include "sparsedit/ingest/pipeline.h"
#include "sparsedit/metrics/report.h"
#include "sparsedit/synth/synthetic.h"

namespace sparsedit::cli {

namespace fs = std::filesystem;
using OJson = nlohmann::ordered_json;

namespace {

std::ifstream OpenInput(const std::string& path) {
  if (!fs::is_regular_file(path)) throw IoError("no such file: '" + path + "'");
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  return in;
}

class OutputFile {
 public:
  OutputFile(RunDirectory& dir, const std::string& name)
      : dir_(dir), name_(name), out_(dir.Path(name), std::ios::binary) {
    if (!out_) throw IoError("cannot write '" + dir.Path(name).string() + "'");
  }
  std::ofstream& stream() { return out_; }
  void Close() {
    out_.close();
    if (!out_) throw IoError("error writing '" + dir_.Path(name_).string() + "'");
    dir_.AddOutput(name_);
  }

 private:
  RunDirectory& dir_;
  std::string name_;
  std::ofstream out_;
};

void WriteFile(RunDirectory& dir, const std::string& name,
               const std::string& text) {
  OutputFile file(dir, name);
  file.stream() << text;
  file.Close();
}

std::vector<SentencePair> ReadAllPairs(const std::vector<std::string>& paths,
                                       RunDirectory& dir) {
  if (paths.empty()) throw UsageError("at least one pairs file is required");
  std::vector<SentencePair> pairs;
  for (const std::string& path : paths) {
    auto more = ReadPairs(path);
    pairs.insert(pairs.end(), std::make_move_iterator(more.begin()),
                 std::make_move_iterator(more.end()));
    dir.AddInput(path);
  }
  return pairs;
}

Eigen::MatrixXd ToDouble(const cluster::FloatMatrix& m) {
  return m.cast<double>();
}

Eigen::MatrixXd LoadMatrix(const std::string& path, size_t rows,
                           const std::string& what) {
  if (!fs::is_regular_file(path)) throw IoError("no such file: '" + path + "'");
  const cluster::EmbeddingMatrix e = cluster::LoadEmbeddings(path);
  if (static_cast<size_t>(e.values.rows()) != rows) {
    throw DimMismatch(what + " has " + std::to_string(e.values.rows()) +
                      " rows, expected " + std::to_string(rows));
  }
  return ToDouble(e.values);
}

OJson PoolStats(const encoder::TrainingPools& pools,
                const encoder::EncoderConfig& config) {
  OJson j;
  for (int i = 0; i < config.num_intents(); ++i) {
    j["examples"][config.intents[i]] = {
        {"tag", pools.at(i, encoder::Mode::kTag).size()},
        {"gen", pools.at(i, encoder::Mode::kGen).size()}};
  }
  j["dropped_too_long"] = pools.dropped_too_long;
  j["dropped_long_insertion"] = pools.dropped_long_insertion;
  j["dropped_unknown_intent"] = pools.dropped_unknown_intent;
  return j;
}

// Trains `model` on `pools` and writes the checkpoint, log and stats.
void TrainAndSave(const RunConfig& config, encoder::EncoderModel<float>& model,
                  const encoder::Vocabulary& vocab,
                  const encoder::TrainingPools& pools, RunDirectory& dir,
                  OJson stats) {
  const auto& options = config.train.options;
  encoder::Trainer<float> trainer(&model, &pools, options, config.seed);
  {
    OutputFile log(dir, "train_log.jsonl");
    const auto& intents = model.config().intents;
    trainer.Run(options.steps, [&](const encoder::TrainLogEntry& entry) {
      log.stream() << entry.ToJson(intents).dump() << '\n';
    });
    log.Close();
  }
  encoder::SaveCheckpoint(dir.Path("model.ckpt").string(), model.config(),
                          vocab, model.params());
  dir.AddOutput("model.ckpt");
  stats["vocab_size"] = vocab.size();
  stats["parameters"] = model.params().NumScalars();
  stats["steps"] = options.steps;
  WriteFile(dir, "stats.json", stats.dump(2) + "\n");
}

}  // namespace

std::vector<SentencePair> ReadPairs(const std::string& path) {
  std::ifstream in = OpenInput(path);
  std::vector<SentencePair> pairs;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      pairs.push_back(ingest::PairFromJson(line));
    } catch (const Error& e) {
      throw Error(path + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return pairs;
}

void RunIngestCommand(const RunConfig& config, const IngestArgs& args) {
  std::ifstream in = OpenInput(args.dump);
  RunDirectory dir(args.out, "ingest", config.ToJson());
  dir.SetArguments({{"dump", args.dump}});
  dir.AddInput(args.dump);
  auto reader = ingest::NewPageReader(in);
  OutputFile pairs(dir, "pairs.jsonl");
  const ingest::IngestStats stats =
      ingest::RunIngest(*reader, config.ingest.filter, [&](const SentencePair& p) {
        pairs.stream() << ingest::PairToJson(p) << '\n';
      });
  pairs.Close();
  WriteFile(dir, "stats.json", stats.ToJson() + "\n");
  dir.Finalize();
}

void RunClusterCommand(const RunConfig& config, const ClusterArgs& args) {
  if (args.embeddings.has_value() != args.prompt_embeddings.has_value()) {
    throw UsageError(
        "--embeddings and --prompt-embeddings must be given together");
  }
  RunDirectory dir(args.out, "cluster", config.ToJson());
  OJson arguments = {{"pairs", args.pairs}};
  if (args.embeddings) {
    arguments["embeddings"] = *args.embeddings;
    arguments["prompt_embeddings"] = *args.prompt_embeddings;
  }
  dir.SetArguments(arguments);
  const std::vector<SentencePair> pairs = ReadAllPairs(args.pairs, dir);

  std::vector<cluster::SeedPrompt> prompts;
  if (config.cluster.prompts) {
    if (!fs::is_regular_file(*config.cluster.prompts)) {
      throw IoError("no such file: '" + *config.cluster.prompts + "'");
    }
    prompts = cluster::LoadSeedPrompts(*config.cluster.prompts);
    dir.AddInput(*config.cluster.prompts);
  } else {
    prompts = cluster::DefaultSeedPrompts();
  }

  std::vector<std::string> comments;
  for (const auto& p : pairs) comments.push_back(p.comment);
  Eigen::MatrixXd comment_points, prompt_points;
  if (args.embeddings) {
    comment_points = LoadMatrix(*args.embeddings, pairs.size(), "embedding file");
    prompt_points = LoadMatrix(*args.prompt_embeddings, prompts.size(),
                               "prompt embedding file");
    dir.AddInput(*args.embeddings);
    dir.AddInput(*args.prompt_embeddings);
  } else {
    const cluster::HashedBowEmbedder embedder(config.cluster.embedder_dim);
    std::vector<std::string> prompt_texts;
    for (const auto& p : prompts) prompt_texts.push_back(p.text);
    comment_points = ToDouble(embedder.EmbedAll(comments));
    prompt_points = ToDouble(embedder.EmbedAll(prompt_texts));
  }

  const cluster::ClusterRun run = cluster::ClusterComments(
      comment_points, prompts, prompt_points, config.cluster.params, config.seed);
  const auto& assignments = run.model.assignments;
  const auto corpus = cluster::ExportCorpus(pairs, assignments, run.labeling,
                                            cluster::PromptIntents(prompts));
  fs::create_directories(dir.Path("corpus"));
  const auto counts = cluster::WriteCorpus(corpus, dir.Path("corpus").string());
  for (const auto& [intent, count] : counts) {
    dir.AddOutput("corpus/" + intent + ".jsonl");
  }
  OJson assign;
  assign["assignments"] = assignments;
  assign["inertia"] = run.model.inertia;
  assign["iterations"] = run.model.iterations;
  assign["unlabeled_intents"] = run.labeling.unlabeled;
  assign["corpus_sizes"] = counts;
  WriteFile(dir, "assignments.json", assign.dump(2) + "\n");
  WriteFile(dir, "cluster_report.json",
            cluster::ClusterReportJson(comments, assignments, run.labeling) + "\n");
  dir.Finalize();
}

void RunAnnotateCommand(const RunConfig& config, const AnnotateArgs& args) {
  RunDirectory dir(args.out, "annotate", config.ToJson());
  dir.SetArguments({{"pairs", args.pairs}});
  const auto pairs = ReadAllPairs(args.pairs, dir);
  const edit::TagSet tag_set(config.annotate.tag_set);
  int64_t annotated = 0, dropped = 0;
  OutputFile examples(dir, "examples.jsonl");
  for (const SentencePair& pair : pairs) {
    auto example = edit::PlanToExamples(pair, tag_set, config.annotate.n_masks);
    if (!example) {
      ++dropped;
      continue;
    }
    examples.stream() << edit::ToJsonLine(*example) << '\n';
    ++annotated;
  }
  examples.Close();
  const OJson stats = {{"pairs", pairs.size()},
                       {"annotated", annotated},
                       {"dropped_long_insertion", dropped}};
  WriteFile(dir, "stats.json", stats.dump(2) + "\n");
  dir.Finalize();
}

void RunTrainCommand(const RunConfig& config, const TrainArgs& args) {
  RunDirectory dir(args.out, "train", config.ToJson());
  dir.SetArguments({{"pairs", args.pairs}});
  const auto pairs = ReadAllPairs(args.pairs, dir);
  encoder::EncoderConfig model_config = config.train.encoder;
  const encoder::Vocabulary vocab = encoder::Vocabulary::Build(
      encoder::VocabularyCorpus(pairs), model_config.vocab_size);
  model_config.vocab_size = vocab.size();
  encoder::EncoderModel<float> model(model_config);
  const encoder::TrainingPools pools =
      encoder::BuildTrainingPools(pairs, model_config, vocab);
  TrainAndSave(config, model, vocab, pools, dir, PoolStats(pools, model_config));
  dir.Finalize();
}

void RunFinetuneCommand(const RunConfig& config, const FinetuneArgs& args) {
  if (args.clone_from.empty()) throw UsageError("--clone-from is required");
  if (args.new_intents.empty()) throw UsageError("at least one new intent is required");
  if (!fs::is_regular_file(args.checkpoint)) {
    throw IoError("no such file: '" + args.checkpoint + "'");
  }
  RunDirectory dir(args.out, "finetune", config.ToJson());
  dir.SetArguments({{"checkpoint", args.checkpoint},
                    {"clone_from", args.clone_from},
                    {"new_intents", args.new_intents},
                    {"pairs", args.pairs}});
  dir.AddInput(args.checkpoint);
  encoder::Checkpoint ckpt = encoder::LoadCheckpoint(args.checkpoint);
  const auto pairs = ReadAllPairs(args.pairs, dir);
  encoder::EncoderModel<float> model(ckpt.config, std::move(ckpt.params));
  model.CloneExpert(args.clone_from, args.new_intents);
  model.FreezeForFinetune();
  const encoder::TrainingPools pools =
      encoder::BuildTrainingPools(pairs, model.config(), ckpt.vocab);
  TrainAndSave(config, model, ckpt.vocab, pools, dir,
               PoolStats(pools, model.config()));
  dir.Finalize();
}

void RunEditCommand(const EditArgs& args, std::istream& in, std::ostream& out) {
  if (args.depth < 0) throw UsageError("--depth must be >= 0");
  if (!fs::is_regular_file(args.checkpoint)) {
    throw IoError("no such file: '" + args.checkpoint + "'");
  }
  const encoder::Checkpoint ckpt = encoder::LoadCheckpoint(args.checkpoint);
  const encoder::EncoderModel<float> model(ckpt.config, ckpt.params);
  const encoder::Editor<float> editor(model, ckpt.vocab);
  if (model.config().IntentIndex(args.intent) < 0) {
    throw UnknownIntent("unknown intent '" + args.intent + "'");
  }
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    out << editor.EditIterative(line, args.intent, args.depth) << '\n';
  }
  if (!out) throw IoError("error writing edited text");
}

std::string RunEvalCommand(const RunConfig& config, const EvalArgs& args) {
  const std::vector<std::string> inputs =
      args.inputs.empty() ? config.eval.datasets : args.inputs;
  if (inputs.empty()) throw UsageError("no evaluation datasets given");
  if (args.depth < 0) throw UsageError("--depth must be >= 0");
  RunDirectory dir(args.out, "eval", config.ToJson());
  OJson arguments = {{"inputs", inputs}, {"per_instance", args.per_instance}};
  if (args.checkpoint) {
    arguments["checkpoint"] = *args.checkpoint;
    arguments["intent"] = args.intent;
    arguments["depth"] = args.depth;
  }
  dir.SetArguments(arguments);

  std::optional<encoder::Checkpoint> ckpt;
  std::optional<encoder::EncoderModel<float>> model;
  std::optional<encoder::Editor<float>> editor;
  if (args.checkpoint) {
    if (!fs::is_regular_file(*args.checkpoint)) {
      throw IoError("no such file: '" + *args.checkpoint + "'");
    }
    dir.AddInput(*args.checkpoint);
    ckpt = encoder::LoadCheckpoint(*args.checkpoint);
    model.emplace(ckpt->config, ckpt->params);
    editor.emplace(*model, ckpt->vocab);
    if (model->config().IntentIndex(args.intent) < 0) {
      throw UnknownIntent("unknown intent '" + args.intent + "'");
    }
    fs::create_directories(dir.Path("predictions"));
  }

  const metrics::MetricSelection selection{config.eval.sari, config.eval.gleu,
                                           config.eval.em};
  metrics::EvalReport report;
  std::optional<OutputFile> per_instance;
  if (args.per_instance) per_instance.emplace(dir, "per_instance.jsonl");
  for (const std::string& path : inputs) {
    const std::string name = fs::path(path).stem().string();
    std::ifstream in = OpenInput(path);
    dir.AddInput(path);
    std::vector<metrics::EvalInstance> instances;
    if (editor) {
      std::string line;
      size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
          const auto j = nlohmann::json::parse(line);
          metrics::EvalInstance inst;
          inst.source = j.at("source").get<std::string>();
          inst.references =
              j.contains("references")
                  ? j["references"].get<std::vector<std::string>>()
                  : std::vector<std::string>{j.at("target").get<std::string>()};
          instances.push_back(std::move(inst));
        } catch (const nlohmann::json::exception& e) {
          throw Error(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
      }
      std::vector<std::string> sources;
      for (const auto& inst : instances) sources.push_back(inst.source);
      const auto predictions = editor->EditAll(sources, args.intent, args.depth);
      const std::string pred_name = "predictions/" + name + ".jsonl";
      OutputFile pred(dir, pred_name);
      for (size_t i = 0; i < instances.size(); ++i) {
        instances[i].prediction = predictions[i];
        OJson j = {{"source", instances[i].source},
                   {"prediction", predictions[i]},
                   {"references", instances[i].references}};
        pred.stream() << j.dump() << '\n';
      }
      pred.Close();
    } else {
      instances = metrics::ReadEvalJsonl(in);
    }
    std::vector<metrics::InstanceScores> scores;
    report.datasets.push_back(metrics::EvaluateDataset(
        name, instances, selection, per_instance ? &scores : nullptr));
    if (per_instance) {
      for (size_t i = 0; i < scores.size(); ++i) {
        OJson j = {{"dataset", name}, {"index", i}};
        if (scores[i].sari) j["sari"] = *scores[i].sari;
        if (scores[i].gleu) j["gleu"] = *scores[i].gleu;
        if (scores[i].em) j["em"] = *scores[i].em;
        per_instance->stream() << j.dump() << '\n';
      }
    }
  }
  if (per_instance) per_instance->Close();
  const std::string json = report.ToJson();
  WriteFile(dir, "report.json", json + "\n");
  dir.Finalize();
  return json;
}

encoder::EncoderConfig GradCheckToyConfig() {
  encoder::EncoderConfig c;
  c.num_layers = 2;
  c.hidden_dim = 8;
  c.num_heads = 2;
  c.ffn_dim = 16;
  c.vocab_size = 20;
  c.max_seq_len = 12;
  c.init_std = 0.5;
  c.router_init_std = 0.5;
  return c;
}

encoder::GradCheckResult RunGradCheckCommand(const RunConfig& config,
                                             const GradCheckArgs& args) {
  encoder::EncoderConfig model_config = args.model;
  model_config.seed = config.seed;
  std::optional<RunDirectory> dir;
  if (args.out) {
    dir.emplace(*args.out, "gradcheck", config.ToJson());
    OJson arguments = {{"model", model_config.ToJson()},
                       {"sequences", args.sequences},
                       {"max_len", args.max_len},
                       {"step", args.options.step},
                       {"floor", args.options.floor},
                       {"tolerance", args.options.tolerance}};
    dir->SetArguments(arguments);
  }
  encoder::EncoderModel<double> model(model_config);
  const auto batches =
      encoder::RandomBatches(model_config, model.num_tags(), args.sequences,
                             args.max_len, config.seed);
  const encoder::GradCheckResult result =
      encoder::GradCheck(model, batches, args.options);
  if (dir) {
    OJson j = result.ToJson();
    j["tolerance"] = args.options.tolerance;
    j["passed"] = result.passed(args.options.tolerance);
    WriteFile(*dir, "gradcheck.json", j.dump(2) + "\n");
    dir->Finalize();
  }
  return result;
}

void RunSynthCommand(const RunConfig& config, const SynthArgs& args) {
  RunDirectory dir(args.out, "synth", config.ToJson());
  dir.SetArguments({{"train_per_intent", args.train_per_intent},
                    {"heldout_per_intent", args.heldout_per_intent}});
  synth::SynthConfig sc;
  sc.train_per_intent = args.train_per_intent;
  sc.heldout_per_intent = args.heldout_per_intent;
  sc.seed = config.seed;
  const synth::SynthCorpus corpus = synth::GenerateCorpus(sc);
  for (const auto& [name, pairs] :
       {std::pair{"train.jsonl", &corpus.train},
        std::pair{"heldout.jsonl", &corpus.heldout}}) {
    OutputFile file(dir, name);
    for (const auto& p : *pairs) file.stream() << ingest::PairToJson(p) << '\n';
    file.Close();
  }
  const synth::TwoErrorCase two = synth::MakeTwoErrorCase(config.seed);
  const OJson j = {{"intent", "lowercase_fix"},
                   {"input", two.input},
                   {"after_one_pass", two.after_one_pass},
                   {"fixed", two.fixed}};
  WriteFile(dir, "two_error.json", j.dump(2) + "\n");
  dir.Finalize();
}

}  // namespace sparsedit::cli
