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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// nonzero when any criterion fails.

#include <chrono>
#include <algorithm>
#include <array>
#include <cmath>
#include <cstring>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sparsedit/cluster/kmeans.h"
#include "sparsedit/cluster/svd.h"
#include "sparsedit/edit/align.h"
#include "sparsedit/edit/plan.h"
#include "sparsedit/edit/tokenizer.h"
#include "sparsedit/edit/tags.h"
#include "sparsedit/encoder/data.h"
#include "sparsedit/encoder/gradcheck.h"
#include "sparsedit/encoder/model.h"
#include "sparsedit/encoder/optimizer.h"
#include "sparsedit/encoder/predictor.h"
#include "sparsedit/encoder/tape.h"
#include "sparsedit/encoder/trainer.h"
#include "sparsedit/encoder/vocab.h"
#include "sparsedit/ingest/dump.h"
#include "sparsedit/ingest/filters.h"
#include "sparsedit/ingest/pipeline.h"
#include "sparsedit/metrics/metrics.h"
#include "sparsedit/synth/synthetic.h"
#include "support/edit_oracles.h"

namespace sparsedit::acceptance {
namespace {

using Clock = std::chrono::steady_clock;

// Pinned thresholds.
constexpr int kFuzzPairs = 10000;
constexpr double kRoundTripSeconds = 30.0;
constexpr int kOptimalityCases = 2000;
constexpr int kOptimalityMaxLen = 6;
constexpr int kParityPairsPerSet = 10000;
constexpr int kKMeansSeeds = 100;
constexpr int kKMeansRequired = 95;
constexpr double kKMeansOptimumSlack = 1e-9;
constexpr double kSvdReconstructionTol = 1e-6;
constexpr double kSvdValueTol = 1e-9;
constexpr double kGradCheckTol = 1e-4;
constexpr double kGradCheckStep = 1e-5;
constexpr int kIsolationBatches = 100;
constexpr int kFreezeSteps = 200;
constexpr int kScheduleSteps = 8000;
constexpr int kScheduleTasks = 4;
constexpr int kScheduleExpected = 1000;
constexpr int kSynthTrainPerIntent = 2000;
constexpr int kSynthHeldoutPerIntent = 200;
constexpr double kSynthMinEm = 90.0;
constexpr double kSynthDenseMargin = 2.0;
constexpr double kSynthBudgetSeconds = 600.0;
constexpr int kSynthSeeds = 3;
constexpr int64_t kSynthSteps = 4000;
constexpr double kMetricTol = 1e-9;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c);
  return buf;
}

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

std::string DataPath(const std::string& relative) {
  return std::string(SPARSEDIT_TEST_DATA_DIR) + "/" + relative;
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ------------------------------------------------------------- edit-ops

Outcome RoundTrip() {
  std::mt19937_64 rng(20240501);
  const edit::TagSet tags(edit::TagSetVariant::kCore14);
  const auto start = Clock::now();
  int passed = 0;
  for (int i = 0; i < kFuzzPairs; ++i) {
    const auto [source, target] =
        testing::RandomEditPair(rng, testing::FuzzVocabulary(), 12);
    passed += edit::ApplyPlan(source, edit::Align(source, target, tags)) == target;
  }
  const double seconds = Seconds(start);
  return {passed == kFuzzPairs && seconds < kRoundTripSeconds,
          Format("%.0f/%.0f pairs restored in %.2f s", passed, kFuzzPairs,
                 seconds)};
}

Outcome AlignmentOptimality() {
  std::mt19937_64 rng(77);
  const std::vector<std::string> alphabet = {"a", "b", "c"};
  // The alphabet plus forms reachable by case, agreement and hyphen
  // transforms.
  const std::vector<std::string> variants = {"a", "b", "c",  "A",   "B",
                                             "C", "as", "bs", "a-b", "AS"};
  int matched = 0;
  for (int trial = 0; trial < kOptimalityCases; ++trial) {
    const edit::TagSet tags(trial % 2 == 0 ? edit::TagSetVariant::kCore14
                                           : edit::TagSetVariant::kExtended34);
    const auto source =
        testing::RandomEditPair(rng, alphabet, kOptimalityMaxLen).first;
    edit::TokenSequence target;
    if (trial % 3 == 0) {
      target = testing::RandomEditPair(rng, variants, kOptimalityMaxLen).first;
    } else {
      // A lightly edited copy of the source, within the length bound.
      target = source;
      std::uniform_int_distribution<int> pick(0, 9);
      for (auto& w : target) {
        if (pick(rng) < 2) w = variants[rng() % variants.size()];
      }
      if (pick(rng) < 3 && target.size() < kOptimalityMaxLen) {
        target.insert(target.begin() + rng() % (target.size() + 1),
                      alphabet[rng() % alphabet.size()]);
      }
      if (pick(rng) < 3 && !target.empty()) {
        target.erase(target.begin() + rng() % target.size());
      }
    }
    const double dp = edit::PlanCost(edit::Align(source, target, tags));
    matched += dp == testing::ExhaustiveMinCost(source, target, tags);
  }
  return {matched == kOptimalityCases,
          Format("%.0f/%.0f cases at the exhaustive minimum", matched,
                 kOptimalityCases)};
}

Outcome TagSetParity() {
  std::string detail;
  bool ok = true;
  for (edit::TagSetVariant variant :
       {edit::TagSetVariant::kKdra4, edit::TagSetVariant::kCore14,
        edit::TagSetVariant::kExtended34}) {
    std::mt19937_64 rng(4242);
    const edit::TagSet tags(variant);
    int passed = 0;
    for (int i = 0; i < kParityPairsPerSet; ++i) {
      const auto [source, target] =
          testing::RandomEditPair(rng, testing::FuzzVocabulary(), 12);
      const edit::EditPlan plan = edit::Align(source, target, tags);
      bool closed = true;
      for (const auto& tag : plan.tags) {
        closed = closed && (tag.kind == edit::TagKind::kMerged || tags.Contains(tag));
      }
      passed += closed && edit::ApplyPlan(source, plan) == target;
    }
    ok = ok && passed == kParityPairsPerSet;
    detail += std::string(edit::TagSetVariantName(variant)) + " " +
              std::to_string(passed) + "/" + std::to_string(kParityPairsPerSet) +
              " ";
  }
  return {ok, detail + "round-trip with closed tag usage"};
}

// ------------------------------------------------------------- clustering

double BruteForceTwoMeans(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  double best = std::numeric_limits<double>::infinity();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    if (mask == 0 || mask == (1u << n) - 1) continue;
    double cost = 0;
    for (unsigned side : {0u, 1u}) {
      Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(x.cols());
      int count = 0;
      for (int i = 0; i < n; ++i) {
        if (((mask >> i) & 1u) == side) {
          mean += x.row(i);
          ++count;
        }
      }
      mean /= count;
      for (int i = 0; i < n; ++i) {
        if (((mask >> i) & 1u) == side) cost += (x.row(i) - mean).squaredNorm();
      }
    }
    best = std::min(best, cost);
  }
  return best;
}

bool NonIncreasing(const std::vector<double>& history) {
  for (size_t i = 1; i < history.size(); ++i) {
    if (history[i] > history[i - 1]) return false;
  }
  return true;
}

Outcome Clustering() {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> coord(-10, 10);
  int optimal = 0, runs = 0, monotone = 0;
  for (uint64_t seed = 0; seed < kKMeansSeeds; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);  // 3..8 points
    const int d = 1 + static_cast<int>(seed % 3);
    Eigen::MatrixXd x(n, d);
    for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = coord(rng);
    const auto model = cluster::KMeansFit(x, 2, seed);
    optimal += model.inertia <= BruteForceTwoMeans(x) + kKMeansOptimumSlack;
    ++runs;
    monotone += NonIncreasing(model.inertia_history);
  }
  // Larger instances for the monotonicity assertion.
  std::normal_distribution<double> normal;
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Eigen::MatrixXd x(200, 5);
    for (Eigen::Index i = 0; i < x.size(); ++i) {
      x.data()[i] = normal(rng) + 3.0 * static_cast<double>((i % 200) % 4);
    }
    const auto model = cluster::KMeansFit(x, 2 + static_cast<int>(seed % 9), seed);
    ++runs;
    monotone += NonIncreasing(model.inertia_history);
  }
  return {optimal >= kKMeansRequired && monotone == runs,
          Format("%.0f/100 seeds at the global 2-means optimum; ", optimal) +
              Format("%.0f/%.0f runs with non-increasing inertia", monotone,
                     runs)};
}

Outcome Svd() {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  double worst = 0;
  const std::vector<std::array<int, 3>> shapes = {
      {20, 8, 3}, {50, 10, 5}, {6, 6, 1}, {30, 4, 4}, {12, 9, 2}};
  for (const auto& [n, d, r] : shapes) {
    Eigen::MatrixXd a(n, r), b(r, d);
    for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = normal(rng);
    for (Eigen::Index i = 0; i < b.size(); ++i) b.data()[i] = normal(rng);
    const Eigen::MatrixXd x = a * b;
    const auto svd = cluster::TruncatedSvd(x, r, /*center=*/false);
    worst = std::max(worst, (svd.Reconstruct() - x).norm());
  }
  Eigen::MatrixXd fixture(3, 2);
  fixture << 1, 0, 0, 1, 1, 1;
  const auto svd = cluster::TruncatedSvd(fixture, 2, /*center=*/false);
  const double err = std::max(std::abs(svd.singular_values(0) - std::sqrt(3.0)),
                              std::abs(svd.singular_values(1) - 1.0));
  return {worst <= kSvdReconstructionTol && err <= kSvdValueTol,
          Format("max rank-r reconstruction error %.3g; 3x2 singular value "
                 "error %.3g",
                 worst, err)};
}

// ------------------------------------------------------------- encoder

encoder::EncoderConfig ToyConfig() {
  encoder::EncoderConfig c;
  c.num_layers = 2;
  c.hidden_dim = 8;
  c.num_heads = 2;
  c.ffn_dim = 16;
  c.vocab_size = 20;
  c.max_seq_len = 12;
  c.init_std = 0.5;
  c.router_init_std = 0.5;
  c.seed = 17;
  return c;
}

Outcome GradientCheck() {
  using encoder::RouterKind;
  using encoder::SparsityMode;
  struct Variant {
    SparsityMode sparsity;
    RouterKind router;
    encoder::Granularity granularity;
  };
  const std::vector<Variant> variants = {
      {SparsityMode::kSparseFfn, RouterKind::kTaskId, encoder::Granularity::kSequence},
      {SparsityMode::kSparseFfn, RouterKind::kLinear, encoder::Granularity::kToken},
      {SparsityMode::kSparseLastLayer, RouterKind::kTaskIdLinear,
       encoder::Granularity::kSequence},
      {SparsityMode::kDense, RouterKind::kTaskId, encoder::Granularity::kSequence}};
  double worst = 0;
  int64_t entries = 0;
  std::string worst_tensor;
  encoder::GradCheckOptions options;
  options.step = kGradCheckStep;
  options.tolerance = kGradCheckTol;
  for (const Variant& v : variants) {
    encoder::EncoderConfig c = ToyConfig();
    c.sparsity = v.sparsity;
    c.router = v.router;
    c.granularity = v.granularity;
    encoder::EncoderModel<double> model(c);
    const auto result = encoder::GradCheck(
        model, encoder::RandomBatches(c, model.num_tags(), 2, 6, 23), options);
    entries += result.entries;
    if (result.max_relative_error >= worst) {
      worst = result.max_relative_error;
      worst_tensor = result.worst_tensor;
    }
  }
  return {worst <= kGradCheckTol,
          Format("max relative error %.3g over %.0f entries in 4 variants (",
                 worst, static_cast<double>(entries)) +
              worst_tensor + ")"};
}

Outcome ExpertIsolation() {
  const encoder::EncoderConfig c = ToyConfig();
  encoder::EncoderModel<double> model(c);
  int64_t leaks = 0, own_nonzero = 0;
  int batches = 0;
  for (uint64_t seed = 0; batches < kIsolationBatches; ++seed) {
    for (const encoder::Batch& batch :
         encoder::RandomBatches(c, model.num_tags(), 3, 10, 1000 + seed)) {
      if (batches == kIsolationBatches) break;
      ++batches;
      model.params().ZeroGrad();
      encoder::Tape<double> tape;
      const auto out = model.Forward(tape, batch);
      tape.Backward(model.Loss(tape, batch, out.logits));
      const std::string own = ".expert." + std::to_string(batch.intent) + "." +
                              std::string(encoder::ModeName(batch.mode)) + ".";
      bool any_own = false;
      for (const auto& [name, p] : model.params().tensors()) {
        if (!encoder::EncoderModel<double>::IsExpertTensor(name)) continue;
        if (name.find(own) != std::string::npos) {
          any_own = any_own || !p.grad.isZero(0.0);
        } else {
          leaks += (p.grad.array().abs() > 0.0).count();
        }
      }
      own_nonzero += any_own;
    }
  }
  return {leaks == 0 && own_nonzero == batches,
          Format("%.0f non-selected expert gradient entries above 0 across %.0f "
                 "batches",
                 static_cast<double>(leaks), batches)};
}

Outcome FreezeIntegrity() {
  synth::SynthConfig sc;
  sc.train_per_intent = 100;
  sc.heldout_per_intent = 0;
  sc.seed = 8;
  const auto corpus = synth::GenerateCorpus(sc);
  encoder::EncoderConfig c;
  c.num_layers = 2;
  c.hidden_dim = 16;
  c.num_heads = 2;
  c.ffn_dim = 32;
  c.max_seq_len = 32;
  c.intents = synth::Intents();
  c.seed = 8;
  const auto vocab = encoder::Vocabulary::Build(
      encoder::VocabularyCorpus(corpus.train), 8000);
  c.vocab_size = vocab.size();
  encoder::EncoderModel<float> model(c);
  model.CloneExpert("plural_fix", {"plural_fix_copy"});
  model.FreezeForFinetune();
  std::vector<SentencePair> pairs = corpus.train;
  for (auto& p : pairs) {
    if (p.intent == "plural_fix") p.intent = "plural_fix_copy";
  }
  const auto pools = encoder::BuildTrainingPools(pairs, model.config(), vocab);
  std::map<std::string, encoder::Matrix<float>> before;
  for (const auto& [name, p] : model.params().tensors()) before[name] = p.value;
  encoder::TrainOptions options;
  options.batch_size = 8;
  encoder::Trainer<float> trainer(&model, &pools, options, 8);
  int updates = 0;
  trainer.Run(kFreezeSteps, [&](const encoder::TrainLogEntry& e) {
    updates += e.loss.has_value();
  });
  int frozen_changed = 0, experts_changed = 0;
  for (const auto& [name, p] : model.params().tensors()) {
    const auto& old = before.at(name);
    const bool same = std::memcmp(old.data(), p.value.data(),
                                  sizeof(float) * old.size()) == 0;
    if (encoder::EncoderModel<float>::IsExpertTensor(name)) {
      experts_changed += !same;
    } else {
      frozen_changed += !same;
    }
  }
  return {frozen_changed == 0 && experts_changed > 0,
          Format("%.0f steps (%.0f updates): %.0f non-expert tensors changed, ",
                 kFreezeSteps, updates, frozen_changed) +
              Format("%.0f expert tensors changed", experts_changed)};
}

Outcome ScheduleBalance() {
  encoder::RoundRobinSchedule schedule(kScheduleTasks);
  for (int i = 0; i < kScheduleSteps; ++i) schedule.Next();
  int balanced = 0;
  std::string counts;
  for (int task = 0; task < kScheduleTasks; ++task) {
    for (int mode = 0; mode < 2; ++mode) {
      const int64_t n = schedule.counts()[task * 2 + mode];
      balanced += n == kScheduleExpected;
      counts += (counts.empty() ? "" : " ") + std::to_string(n);
    }
  }
  return {balanced == 2 * kScheduleTasks, "counters " + counts};
}

// ------------------------------------------------------------- synthetic

struct SynthRun {
  std::vector<double> em;  // per intent
  double seconds = 0;
  double mean() const {
    double s = 0;
    for (double v : em) s += v;
    return s / em.size();
  }
};

struct SynthExperiment {
  synth::SynthCorpus corpus;
  encoder::Vocabulary vocab;
  std::vector<SynthRun> sparse, dense;
  // Seed-0 sparse model, kept for the metric and iterative criteria.
  std::optional<encoder::EncoderModel<float>> model;
  std::vector<std::string> predictions;  // seed-0 sparse, heldout order
};

encoder::EncoderConfig SynthModelConfig(bool dense, uint64_t seed, int vocab) {
  encoder::EncoderConfig c;
  c.num_layers = 2;
  c.hidden_dim = 64;
  c.num_heads = 4;
  c.ffn_dim = 128;
  c.max_seq_len = 32;
  c.intents = synth::Intents();
  c.sparsity = dense ? encoder::SparsityMode::kDense
                     : encoder::SparsityMode::kSparseFfn;
  c.router = encoder::RouterKind::kTaskId;
  c.vocab_size = vocab;
  c.seed = seed;
  return c;
}

SynthExperiment& Experiment() {
  static SynthExperiment* exp = [] {
    auto* e = new SynthExperiment;
    synth::SynthConfig sc;
    sc.train_per_intent = kSynthTrainPerIntent;
    sc.heldout_per_intent = kSynthHeldoutPerIntent;
    sc.seed = 2023;
    e->corpus = synth::GenerateCorpus(sc);
    e->vocab = encoder::Vocabulary::Build(
        encoder::VocabularyCorpus(e->corpus.train), 8000);
    for (bool dense : {false, true}) {
      for (uint64_t seed = 0; seed < kSynthSeeds; ++seed) {
        const auto start = Clock::now();
        const auto config = SynthModelConfig(dense, seed, e->vocab.size());
        encoder::EncoderModel<float> model(config);
        const auto pools =
            encoder::BuildTrainingPools(e->corpus.train, config, e->vocab);
        encoder::TrainOptions options;
        options.batch_size = 32;
        encoder::Trainer<float> trainer(&model, &pools, options, seed);
        trainer.Run(kSynthSteps);
        const encoder::Editor<float> editor(model, e->vocab);
        SynthRun run;
        std::vector<std::string> predictions;
        for (const std::string& intent : synth::Intents()) {
          int hit = 0, total = 0;
          for (const auto& p : e->corpus.heldout) {
            if (p.intent != intent) continue;
            const std::string out = editor.Edit(p.source, intent);
            hit += out == p.target;
            ++total;
            predictions.push_back(out);
          }
          run.em.push_back(100.0 * hit / total);
        }
        run.seconds = Seconds(start);
        std::fprintf(stderr, "  synthetic %s seed %d: EM %.1f %.1f %.1f %.1f in %.1f s\n",
                     dense ? "dense " : "sparse", static_cast<int>(seed),
                     run.em[0], run.em[1], run.em[2], run.em[3], run.seconds);
        (dense ? e->dense : e->sparse).push_back(run);
        if (!dense && seed == 0) {
          e->model.emplace(std::move(model));
          e->predictions = std::move(predictions);
        }
      }
    }
    return e;
  }();
  return *exp;
}

Outcome SyntheticEndToEnd() {
  const SynthExperiment& e = Experiment();
  double min_em = 100, max_seconds = 0, sparse_mean = 0, dense_mean = 0;
  for (const SynthRun& r : e.sparse) {
    for (double v : r.em) min_em = std::min(min_em, v);
    max_seconds = std::max(max_seconds, r.seconds);
    sparse_mean += r.mean() / e.sparse.size();
  }
  for (const SynthRun& r : e.dense) dense_mean += r.mean() / e.dense.size();
  const bool pass = min_em >= kSynthMinEm && max_seconds < kSynthBudgetSeconds &&
                    dense_mean <= sparse_mean + kSynthDenseMargin;
  return {pass, Format("sparse min per-intent EM %.1f, slowest run %.1f s; ",
                       min_em, max_seconds) +
                    Format("mean EM sparse %.2f vs dense %.2f", sparse_mean,
                           dense_mean)};
}

Outcome Metrics() {
  using edit::Tokenize;
  // Values from tests/oracles/metrics_oracle.py.
  const std::vector<std::pair<metrics::EvalInstance, double>> sari = {
      {{"a b c", "a b d", {"a b d"}}, 100.0},
      {{"a b c", "a b c", {"a b d"}}, 37.22222222222222},
      {{"the big cat sat on the mat", "the large cat sat on a mat",
        {"the cat sat on the mat", "the large cat sat on the mat"}},
       54.124895572263995}};
  const std::vector<std::pair<metrics::EvalInstance, double>> gleu = {
      {{"a b c d e", "a b c x e", {"a b c x e"}}, 100.0},
      {{"a b c z d e", "a b c d e", {"a b c d f"}}, 56.23413251903491},
      {{"the the cat sat down", "the cat sat down now",
        {"the cat sat down now"}},
       94.57416090031758}};
  const std::vector<std::tuple<std::string, std::string, double>> bleu = {
      {"the cat sat down", "the cat sat down", 1.0},
      {"the cat sat down", "the cat sat", 0.6580370064762462},
      {"the cat", "the cat sat down", 0.36787944117144233}};
  int passed = 0, total = 0;
  for (const auto& [inst, want] : sari) {
    passed += std::abs(metrics::Sari(inst) - want) <= kMetricTol;
    ++total;
  }
  for (const auto& [inst, want] : gleu) {
    passed += std::abs(metrics::Gleu(inst) - want) <= kMetricTol;
    ++total;
  }
  for (const auto& [hyp, ref, want] : bleu) {
    passed += std::abs(metrics::Bleu(Tokenize(hyp), Tokenize(ref)) - want) <=
              kMetricTol;
    ++total;
  }

  const SynthExperiment& e = Experiment();
  double copy = 0, model = 0;
  size_t i = 0;
  for (const std::string& intent : synth::Intents()) {
    for (const auto& p : e.corpus.heldout) {
      if (p.intent != intent) continue;
      copy += metrics::Sari({p.source, p.source, {p.target}});
      model += metrics::Sari({p.source, e.predictions[i++], {p.target}});
    }
  }
  copy /= e.corpus.heldout.size();
  model /= e.corpus.heldout.size();
  return {passed == total && copy < model,
          Format("%.0f/%.0f metric fixtures; ", passed, total) +
              Format("SARI copy %.2f < model %.2f", copy, model)};
}

Outcome IterativeEditing() {
  const SynthExperiment& e = Experiment();
  const encoder::Editor<float> editor(*e.model, e.vocab);
  const synth::TwoErrorCase two = synth::MakeTwoErrorCase(99);
  int passes = 0;
  const std::string depth2 =
      editor.EditIterative(two.input, "lowercase_fix", 2, &passes);
  const bool fixed_point = editor.Edit(depth2, "lowercase_fix") == depth2;
  const std::string depth1 = editor.EditIterative(two.input, "lowercase_fix", 1);
  bool identity = true;
  for (const auto& p : e.corpus.heldout) {
    identity = identity && editor.EditIterative(p.source, *p.intent, 0) == p.source;
  }
  const bool pass = depth2 == two.fixed && fixed_point && identity;
  return {pass, "'" + two.input + "' -> depth 1 '" + depth1 + "' -> depth 2 '" +
                    depth2 + "'" + (fixed_point ? " (fixed point)" : "") +
                    (identity ? "; depth 0 is the identity" : "; depth 0 changed text")};
}

// ------------------------------------------------------------- ingestion

Outcome Ingestion() {
  const std::vector<std::string> terms = {
      "template", "image", "infobox", "pic",  "link", "photo",
      "comment",  "http:", "https:",  ".jpg", ".png", "reply"};
  int dropped = 0;
  for (const std::string& term : terms) {
    const auto d = ingest::FilterComment("fixed " + term + " here");
    dropped += !d.keep;
  }
  const std::vector<std::pair<std::string, std::string>> shortcuts = {
      {"[[WP:NPOV|POV]]", "neutral point of view"},
      {"[[WP:TYPO]]", "typo"},
      {"[[WP:RS]]", "reliable sources"},
      {"[[WP:SYN]]", "synthesis"}};
  int expanded = 0;
  for (const auto& [shortcut, expansion] : shortcuts) {
    expanded += ingest::FilterComment(shortcut).text == expansion;
  }
  auto run = [] {
    std::ifstream in(DataPath("ingest/sample_dump.xml"), std::ios::binary);
    auto reader = ingest::NewPageReader(in);
    std::string out;
    const auto stats = ingest::RunIngest(
        *reader, ingest::FilterConfig{},
        [&](const SentencePair& p) { out += ingest::PairToJson(p) + "\n"; });
    return std::pair{out, stats.pages};
  };
  const auto [first, pages] = run();
  const auto second = run().first;
  const bool golden =
      pages == 3 && first == second &&
      first == ReadFile(DataPath("ingest/expected_pairs.jsonl"));
  return {dropped == 12 && expanded == 4 && golden,
          Format("%.0f/12 blacklist terms drop, %.0f/4 shortcuts expand, ",
                 dropped, expanded) +
              (golden ? "golden 3-page output reproduced" : "golden output differs")};
}

}  // namespace
}  // namespace sparsedit::acceptance

// Optional arguments restrict the run to the named criteria.
int main(int argc, char** argv) {
  using namespace sparsedit::acceptance;
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"round-trip", RoundTrip},
      {"alignment-optimality", AlignmentOptimality},
      {"tag-set-parity", TagSetParity},
      {"clustering", Clustering},
      {"svd", Svd},
      {"gradient-check", GradientCheck},
      {"expert-isolation", ExpertIsolation},
      {"freeze-integrity", FreezeIntegrity},
      {"schedule-balance", ScheduleBalance},
      {"synthetic-end-to-end", SyntheticEndToEnd},
      {"metrics", Metrics},
      {"iterative-editing", IterativeEditing},
      {"ingestion", Ingestion},
  };
  const std::vector<std::string> only(argv + 1, argv + argc);
  int failed = 0;
  for (const auto& [name, check] : criteria) {
    if (!only.empty() && std::find(only.begin(), only.end(), name) == only.end()) {
      continue;
    }
    Outcome outcome;
    try {
      outcome = check();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    failed += !outcome.pass;
    std::printf("%s %s: %s\n", outcome.pass ? "PASS" : "FAIL", name.c_str(),
                outcome.detail.c_str());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
