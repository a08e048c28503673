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

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "sparsedit/cli/commands.h"
#include "sparsedit/cli/run_config.h"
#include "sparsedit/cli/run_dir.h"
#include "sparsedit/encoder/checkpoint.h"
#include "sparsedit/errors.h"
#include "support/test_data.h"

namespace sparsedit::cli {
namespace {

namespace fs = std::filesystem;
using ::testing::HasSubstr;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() /
            (std::string("sparsedit_cli_") + info->test_suite_name() + "_" +
             info->name());
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path operator/(const std::string& name) const { return path_ / name; }

 private:
  fs::path path_;
};

int RunCli(const std::string& args) {
  const std::string command =
      std::string(SPARSEDIT_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

RunConfig SmallTrainConfig(uint64_t seed) {
  nlohmann::json j = {
      {"seed", seed},
      {"train",
       {{"steps", 24},
        {"batch_size", 8},
        {"encoder",
         {{"num_layers", 1},
          {"hidden_dim", 16},
          {"num_heads", 2},
          {"ffn_dim", 32},
          {"max_seq_len", 32},
          {"intents", {"lowercase_fix", "plural_fix", "marker_deletion",
                       "substitution"}}}}}}};
  return RunConfig::FromJson(j);
}

TEST(RunConfigTest, DefaultsRoundTrip) {
  const RunConfig c;
  const RunConfig back = RunConfig::FromJson(c.ToJson());
  EXPECT_EQ(back.ToJson().dump(), c.ToJson().dump());
  EXPECT_EQ(c.cluster.params.k, 10);
  EXPECT_EQ(c.cluster.params.svd_dim, 100);
  EXPECT_EQ(c.annotate.n_masks, 4);
  EXPECT_EQ(c.train.encoder.lambda, 1.0);
}

TEST(RunConfigTest, RejectsUnknownKeys) {
  EXPECT_THROW(RunConfig::FromJson({{"trian", nlohmann::json::object()}}),
               UsageError);
  EXPECT_THROW(RunConfig::FromJson({{"cluster", {{"kk", 3}}}}), UsageError);
  EXPECT_THROW(
      RunConfig::FromJson({{"train", {{"encoder", {{"layers", 2}}}}}}),
      UsageError);
  EXPECT_THROW(RunConfig::FromJson({{"cluster", {{"k", "ten"}}}}), UsageError);
}

TEST(RunConfigTest, SingleSeed) {
  EXPECT_THROW(
      RunConfig::FromJson({{"train", {{"encoder", {{"seed", 4}}}}}}),
      UsageError);
  const RunConfig c = RunConfig::FromJson({{"seed", 42}});
  EXPECT_EQ(c.train.encoder.seed, 42u);
  EXPECT_FALSE(c.ToJson()["train"]["encoder"].contains("seed"));
}

TEST(RunConfigTest, AnnotateAndEncoderShareTagSettings) {
  const RunConfig c = RunConfig::FromJson(
      {{"annotate", {{"tag_set", "kdra4"}, {"n_masks", 3}}}});
  EXPECT_EQ(c.train.encoder.tag_set, edit::TagSetVariant::kKdra4);
  EXPECT_EQ(c.train.encoder.n_masks, 3);
  EXPECT_THROW(RunConfig::FromJson({{"annotate", {{"n_masks", 3}}},
                                    {"train", {{"encoder", {{"n_masks", 2}}}}}}),
               UsageError);
}

TEST(RunDirectoryTest, ManifestHashesAndSelfCheck) {
  TempDir tmp;
  RunDirectory dir(tmp / "run", "test", {{"a", 1}});
  {
    std::ofstream out(dir.Path("out.txt"));
    out << "abc";
  }
  dir.AddOutput("out.txt");
  dir.Finalize();
  const auto manifest = nlohmann::json::parse(ReadFile(tmp / "run/manifest.json"));
  EXPECT_EQ(manifest["outputs"][0]["sha256"],
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
  EXPECT_NO_THROW(SelfCheck(tmp / "run"));

  {
    std::ofstream out(dir.Path("out.txt"));
    out << "abd";
  }
  EXPECT_THROW(SelfCheck(tmp / "run"), Error);
  fs::remove(tmp / "run/config.json");
  EXPECT_THROW(SelfCheck(tmp / "run"), Error);
}

TEST(IngestCommandTest, GoldenFixtureIsByteStable) {
  TempDir tmp;
  const RunConfig config;
  IngestArgs args{testing::TestDataPath("ingest/sample_dump.xml"),
                  (tmp / "a").string()};
  RunIngestCommand(config, args);
  args.out = (tmp / "b").string();
  RunIngestCommand(config, args);
  const std::string golden = testing::ReadTestFile("ingest/expected_pairs.jsonl");
  EXPECT_EQ(ReadFile(tmp / "a/pairs.jsonl"), golden);
  EXPECT_EQ(ReadFile(tmp / "b/pairs.jsonl"), golden);
  EXPECT_EQ(ReadFile(tmp / "a/manifest.json"), ReadFile(tmp / "b/manifest.json"));
  EXPECT_EQ(ReadFile(tmp / "a/config.json"), config.ToJson().dump(2) + "\n");
}

TEST(IngestCommandTest, EmptyDumpGivesEmptyOutput) {
  TempDir tmp;
  { std::ofstream out(tmp / "empty.jsonl"); }
  RunIngestCommand(RunConfig(), {(tmp / "empty.jsonl").string(),
                                 (tmp / "out").string()});
  EXPECT_EQ(ReadFile(tmp / "out/pairs.jsonl"), "");
  const auto stats = nlohmann::json::parse(ReadFile(tmp / "out/stats.json"));
  EXPECT_EQ(stats["pages"], 0);
  EXPECT_EQ(stats["candidate_pairs"], 0);
}

TEST(IngestCommandTest, MissingDumpIsIoError) {
  TempDir tmp;
  EXPECT_THROW(RunIngestCommand(RunConfig(), {(tmp / "nope.xml").string(),
                                              (tmp / "out").string()}),
               IoError);
}

void WriteCommentPairs(const fs::path& path, int n) {
  const char* comments[] = {
      "fix grammar",          "fixed typo",      "improve readability",
      "simplify wording",     "remove peacock terms", "neutral wording",
      "copyedit for clarity", "reword for flow", "spelling",
      "removed puffery",      "clarify",         "shorter sentences"};
  std::ofstream out(path);
  for (int i = 0; i < n; ++i) {
    out << nlohmann::json({{"source", "a b " + std::to_string(i)},
                           {"target", "a c " + std::to_string(i)},
                           {"comment", comments[i % 12]}})
               .dump()
        << '\n';
  }
}

TEST(ClusterCommandTest, FallbackEmbedderIsDeterministic) {
  TempDir tmp;
  WriteCommentPairs(tmp / "pairs.jsonl", 40);
  const RunConfig config = RunConfig::FromJson({{"seed", 9}});
  RunClusterCommand(config, {{(tmp / "pairs.jsonl").string()},
                             (tmp / "a").string(), {}, {}});
  RunClusterCommand(config, {{(tmp / "pairs.jsonl").string()},
                             (tmp / "b").string(), {}, {}});
  for (const char* name : {"cluster_report.json", "assignments.json",
                           "corpus/fluency.jsonl", "manifest.json"}) {
    EXPECT_EQ(ReadFile(tmp / "a" / name), ReadFile(tmp / "b" / name)) << name;
  }
  const auto report = nlohmann::json::parse(ReadFile(tmp / "a/cluster_report.json"));
  EXPECT_EQ(report.size(), 10u);
}

TEST(ClusterCommandTest, TooFewPairsIsDegenerate) {
  TempDir tmp;
  WriteCommentPairs(tmp / "pairs.jsonl", 5);
  EXPECT_THROW(RunClusterCommand(RunConfig(), {{(tmp / "pairs.jsonl").string()},
                                               (tmp / "out").string(), {}, {}}),
               DegenerateData);
}

TEST(AnnotateCommandTest, WritesExamples) {
  TempDir tmp;
  {
    std::ofstream out(tmp / "pairs.jsonl");
    out << R"({"source":"the cat sat","target":"The cat sat down","intent":"fluency"})"
        << '\n'
        << R"({"source":"a","target":"a b c d e f","intent":"fluency"})" << '\n';
  }
  RunAnnotateCommand(RunConfig(), {{(tmp / "pairs.jsonl").string()},
                                   (tmp / "out").string()});
  EXPECT_EQ(ReadFile(tmp / "out/examples.jsonl"),
            R"({"source":"the cat sat","target":"The cat sat down","intent":"fluency",)"
            R"("tags":["KEEP","TRANSFORM_CASE_CAPITAL","KEEP","APPEND"],)"
            R"("insertions":{"0":["down"]}})"
            "\n");
  const auto stats = nlohmann::json::parse(ReadFile(tmp / "out/stats.json"));
  EXPECT_EQ(stats["dropped_long_insertion"], 1);
}

TEST(EvalCommandTest, ReproducesFixtureScores) {
  TempDir tmp;
  EvalArgs args;
  args.inputs = {testing::TestDataPath("eval/sari_fixtures.jsonl")};
  args.out = (tmp / "out").string();
  args.per_instance = true;
  RunEvalCommand(RunConfig(), args);
  std::ifstream in(tmp / "out/per_instance.jsonl");
  std::vector<double> sari;
  std::string line;
  while (std::getline(in, line)) {
    sari.push_back(nlohmann::json::parse(line)["sari"].get<double>());
  }
  ASSERT_EQ(sari.size(), 3u);
  EXPECT_NEAR(sari[0], 100.0, 1e-9);
  EXPECT_NEAR(sari[1], 37.22222222222222, 1e-9);
  EXPECT_NEAR(sari[2], 54.124895572263995, 1e-9);
  const auto report = nlohmann::json::parse(ReadFile(tmp / "out/report.json"));
  EXPECT_NEAR(report["sari_fixtures"]["sari"].get<double>(),
              (100.0 + 37.22222222222222 + 54.124895572263995) / 3, 1e-9);
}

TEST(GradCheckCommandTest, ToyConfigPasses) {
  TempDir tmp;
  GradCheckArgs args;
  args.out = (tmp / "gc").string();
  const auto result = RunGradCheckCommand(RunConfig(), args);
  EXPECT_TRUE(result.passed(1e-4)) << result.max_relative_error;
  const auto j = nlohmann::json::parse(ReadFile(tmp / "gc/gradcheck.json"));
  EXPECT_TRUE(j["passed"].get<bool>());
}

class TrainedModelTest : public ::testing::Test {
 protected:
  void SetUp() override {
    SynthArgs synth{(tmp_ / "synth").string(), 40, 5};
    RunSynthCommand(SmallTrainConfig(1), synth);
    RunTrainCommand(SmallTrainConfig(1), {{(tmp_ / "synth/train.jsonl").string()},
                                          (tmp_ / "train").string()});
  }
  TempDir tmp_;
};

TEST_F(TrainedModelTest, TrainingIsByteReproducible) {
  RunTrainCommand(SmallTrainConfig(1), {{(tmp_ / "synth/train.jsonl").string()},
                                        (tmp_ / "again").string()});
  for (const char* name : {"model.ckpt", "train_log.jsonl", "stats.json",
                           "manifest.json", "config.json"}) {
    EXPECT_EQ(ReadFile(tmp_ / "train" / name), ReadFile(tmp_ / "again" / name))
        << name;
  }
  std::ifstream log(tmp_ / "train/train_log.jsonl");
  std::string first;
  std::getline(log, first);
  const auto entry = nlohmann::json::parse(first);
  for (const char* key : {"step", "task", "mode", "loss", "grad_norm"}) {
    EXPECT_TRUE(entry.contains(key)) << key;
  }
}

TEST_F(TrainedModelTest, EditDepthZeroEchoes) {
  std::istringstream in("KEEP THIS as is\nsecond LINE\n");
  std::ostringstream out;
  RunEditCommand({(tmp_ / "train/model.ckpt").string(), "lowercase_fix", 0},
                 in, out);
  EXPECT_EQ(out.str(), "KEEP THIS as is\nsecond LINE\n");
}

TEST_F(TrainedModelTest, EditRejectsUnknownIntent) {
  std::istringstream in("x\n");
  std::ostringstream out;
  EXPECT_THROW(RunEditCommand({(tmp_ / "train/model.ckpt").string(), "poetry", 1},
                              in, out),
               UnknownIntent);
}

TEST_F(TrainedModelTest, FinetuneFreezesBackbone) {
  RunFinetuneCommand(SmallTrainConfig(2),
                     {(tmp_ / "train/model.ckpt").string(),
                      "plural_fix",
                      {"plural_fix_v2"},
                      {(tmp_ / "synth/train.jsonl").string()},
                      (tmp_ / "ft").string()});
  const auto before = encoder::LoadCheckpoint((tmp_ / "train/model.ckpt").string());
  const auto after = encoder::LoadCheckpoint((tmp_ / "ft/model.ckpt").string());
  EXPECT_EQ(after.config.intents.back(), "plural_fix_v2");
  bool expert_changed = false;
  for (const auto& [name, p] : before.params.tensors()) {
    const auto& q = after.params.at(name);
    const bool same = p.value.rows() == q.value.rows() &&
                      p.value.cols() == q.value.cols() &&
                      p.value.cwiseEqual(q.value).all();
    if (encoder::EncoderModel<float>::IsExpertTensor(name)) {
      expert_changed = expert_changed || !same;
    } else if (name.find(".router") == std::string::npos) {
      EXPECT_TRUE(same) << name;
    }
  }
  EXPECT_TRUE(expert_changed);
}

TEST_F(TrainedModelTest, ExitCodes) {
  const std::string ckpt = (tmp_ / "train/model.ckpt").string();
  EXPECT_EQ(RunCli("edit --checkpoint " + ckpt +
                   " --intent lowercase_fix --depth 0 </dev/null"),
            0);
  EXPECT_EQ(RunCli("edit --checkpoint " + ckpt + " --intent poetry </dev/null"), 1);
  EXPECT_EQ(RunCli("edit --checkpoint /nonexistent --intent x </dev/null"), 2);
  EXPECT_EQ(RunCli("ingest --dump /nonexistent --out " + (tmp_ / "x").string()), 2);
  EXPECT_EQ(RunCli("bogus"), 2);
  EXPECT_EQ(RunCli("finetune --checkpoint " + ckpt), 2);
  EXPECT_EQ(RunCli("gradcheck"), 0);
}

TEST(SynthCommandTest, WritesCorpusAndTwoErrorCase) {
  TempDir tmp;
  RunSynthCommand(RunConfig(), {(tmp / "s").string(), 10, 2});
  const auto two = nlohmann::json::parse(ReadFile(tmp / "s/two_error.json"));
  EXPECT_NE(two["input"], two["fixed"]);
  EXPECT_NO_THROW(SelfCheck(tmp / "s"));
  EXPECT_EQ(ReadPairs((tmp / "s/train.jsonl").string()).size(), 40u);
  EXPECT_THAT(ReadFile(tmp / "s/manifest.json"), HasSubstr("\"train_per_intent\": 10"));
}

}  // namespace
}  // namespace sparsedit::cli
