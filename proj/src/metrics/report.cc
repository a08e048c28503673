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

#include "sparsedit/metrics/report.h"

#include "json.hpp"
#include "sparsedit/errors.h"

namespace sparsedit::metrics {

InstanceScores ScoreInstance(const EvalInstance& instance,
                             const MetricSelection& metrics) {
  if (instance.references.empty()) throw EmptyReferenceSet();
  const TokenSequence source = edit::Tokenize(instance.source);
  const TokenSequence prediction = edit::Tokenize(instance.prediction);
  std::vector<TokenSequence> refs;
  for (const auto& r : instance.references) refs.push_back(edit::Tokenize(r));
  InstanceScores scores;
  if (metrics.sari) scores.sari = Sari(source, prediction, refs);
  if (metrics.gleu) scores.gleu = Gleu(source, prediction, refs);
  if (metrics.em) scores.em = ExactMatch(instance);
  return scores;
}

DatasetReport EvaluateDataset(const std::string& name,
                              const std::vector<EvalInstance>& instances,
                              const MetricSelection& metrics,
                              std::vector<InstanceScores>* per_instance) {
  DatasetReport report;
  report.name = name;
  report.count = instances.size();
  double sari = 0.0, gleu = 0.0, em = 0.0;
  for (const EvalInstance& instance : instances) {
    InstanceScores s = ScoreInstance(instance, metrics);
    sari += s.sari.value_or(0.0);
    gleu += s.gleu.value_or(0.0);
    em += s.em.value_or(0.0);
    if (per_instance) per_instance->push_back(s);
  }
  if (!instances.empty()) {
    const double n = static_cast<double>(instances.size());
    if (metrics.sari) report.sari = sari / n;
    if (metrics.gleu) report.gleu = gleu / n;
    if (metrics.em) report.em = em / n;
  }
  return report;
}

std::string EvalReport::ToJson() const {
  nlohmann::ordered_json root = nlohmann::ordered_json::object();
  for (const DatasetReport& d : datasets) {
    nlohmann::ordered_json entry;
    entry["count"] = d.count;
    if (d.sari) entry["sari"] = *d.sari;
    if (d.gleu) entry["gleu"] = *d.gleu;
    if (d.em) entry["em"] = *d.em;
    root[d.name] = std::move(entry);
  }
  return root.dump(2);
}

std::vector<EvalInstance> ReadEvalJsonl(std::istream& in) {
  std::vector<EvalInstance> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      auto j = nlohmann::json::parse(line);
      EvalInstance inst;
      inst.source = j.at("source").get<std::string>();
      inst.prediction = j.at("prediction").get<std::string>();
      inst.references = j.at("references").get<std::vector<std::string>>();
      out.push_back(std::move(inst));
    } catch (const nlohmann::json::exception& e) {
      throw Error("eval line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

}  // namespace sparsedit::metrics
