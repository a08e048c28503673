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

#include "sparsedit/cli/run_config.h"

#include <fstream>
#include <functional>
#include <map>

#include "sparsedit/errors.h"

namespace sparsedit::cli {

namespace {

using Json = nlohmann::json;
using Setter = std::function<void(const Json&)>;

std::string Qualified(const std::string& section, const std::string& key) {
  return section.empty() ? key : section + "." + key;
}

void ApplyObject(const Json& j, const std::string& section,
                 const std::map<std::string, Setter>& setters) {
  if (!j.is_object()) {
    throw UsageError((section.empty() ? "config" : "'" + section + "'") +
                     std::string(" must be an object"));
  }
  for (const auto& [key, value] : j.items()) {
    auto it = setters.find(key);
    if (it == setters.end()) {
      throw UsageError("unknown config key '" + Qualified(section, key) + "'");
    }
    try {
      it->second(value);
    } catch (const Json::exception& e) {
      throw UsageError("bad value for '" + Qualified(section, key) + "': " +
                       e.what());
    }
  }
}

template <typename T>
Setter Set(T& field) {
  return [&field](const Json& v) { field = v.get<T>(); };
}

edit::TagSetVariant ParseTagSet(const Json& v) {
  auto variant = edit::ParseTagSetVariant(v.get<std::string>());
  if (!variant) {
    throw UsageError("unknown tag set '" + v.get<std::string>() + "'");
  }
  return *variant;
}

}  // namespace

RunConfig RunConfig::FromJson(const Json& j) {
  RunConfig c;
  bool annotate_masks = false, annotate_tags = false;
  std::optional<Json> encoder_json;
  ApplyObject(
      j, "",
      {{"seed", Set(c.seed)},
       {"ingest",
        [&](const Json& s) {
          auto& f = c.ingest.filter;
          ApplyObject(s, "ingest",
                      {{"bleu_min", Set(f.bleu_min)},
                       {"bleu_max", Set(f.bleu_max)},
                       {"len_ratio", Set(f.len_ratio)},
                       {"check_len_ratio", Set(f.check_len_ratio)},
                       {"comment_sim_max", Set(f.comment_sim_max)}});
        }},
       {"cluster",
        [&](const Json& s) {
          auto& p = c.cluster.params;
          ApplyObject(s, "cluster",
                      {{"k", Set(p.k)},
                       {"svd_dim", Set(p.svd_dim)},
                       {"center", Set(p.center)},
                       {"max_iter", Set(p.max_iter)},
                       {"tol", Set(p.tol)},
                       {"allow_unlabeled", Set(p.allow_unlabeled)},
                       {"embedder_dim", Set(c.cluster.embedder_dim)},
                       {"prompts", [&](const Json& v) {
                          if (v.is_null()) {
                            c.cluster.prompts.reset();
                          } else {
                            c.cluster.prompts = v.get<std::string>();
                          }
                        }}});
        }},
       {"annotate",
        [&](const Json& s) {
          ApplyObject(s, "annotate",
                      {{"tag_set",
                        [&](const Json& v) {
                          c.annotate.tag_set = ParseTagSet(v);
                          annotate_tags = true;
                        }},
                       {"n_masks", [&](const Json& v) {
                          c.annotate.n_masks = v.get<int>();
                          annotate_masks = true;
                        }}});
        }},
       {"train",
        [&](const Json& s) {
          auto& o = c.train.options;
          ApplyObject(s, "train",
                      {{"encoder", [&](const Json& v) { encoder_json = v; }},
                       {"steps", Set(o.steps)},
                       {"batch_size", Set(o.batch_size)},
                       {"learning_rate", Set(o.adam.learning_rate)},
                       {"beta1", Set(o.adam.beta1)},
                       {"beta2", Set(o.adam.beta2)},
                       {"epsilon", Set(o.adam.epsilon)},
                       {"clip_norm", Set(o.clip_norm)}});
        }},
       {"eval", [&](const Json& s) {
          auto& e = c.eval;
          ApplyObject(s, "eval",
                      {{"datasets", Set(e.datasets)},
                       {"sari", Set(e.sari)},
                       {"gleu", Set(e.gleu)},
                       {"em", Set(e.em)}});
        }}});

  if (encoder_json) {
    if (encoder_json->is_object() && encoder_json->contains("seed")) {
      throw UsageError("train.encoder.seed is not allowed; use the top-level seed");
    }
    c.train.encoder = encoder::EncoderConfig::FromJson(*encoder_json);
    const bool has_tags = encoder_json->contains("tag_set");
    const bool has_masks = encoder_json->contains("n_masks");
    if (has_tags && annotate_tags &&
        c.train.encoder.tag_set != c.annotate.tag_set) {
      throw UsageError("annotate.tag_set and train.encoder.tag_set disagree");
    }
    if (has_masks && annotate_masks &&
        c.train.encoder.n_masks != c.annotate.n_masks) {
      throw UsageError("annotate.n_masks and train.encoder.n_masks disagree");
    }
    if (has_tags) c.annotate.tag_set = c.train.encoder.tag_set;
    if (has_masks) c.annotate.n_masks = c.train.encoder.n_masks;
  }
  c.train.encoder.tag_set = c.annotate.tag_set;
  c.train.encoder.n_masks = c.annotate.n_masks;
  c.train.encoder.seed = c.seed;

  if (c.cluster.params.k < 1) throw UsageError("cluster.k must be >= 1");
  if (c.cluster.params.svd_dim < 1) throw UsageError("cluster.svd_dim must be >= 1");
  if (c.cluster.embedder_dim < 1) throw UsageError("cluster.embedder_dim must be >= 1");
  if (c.annotate.n_masks < 1) throw UsageError("annotate.n_masks must be >= 1");
  if (c.train.options.steps < 0) throw UsageError("train.steps must be >= 0");
  if (c.train.options.batch_size < 1) throw UsageError("train.batch_size must be >= 1");
  if (!(c.train.options.adam.learning_rate > 0)) throw UsageError("train.learning_rate must be > 0");
  if (!(c.train.options.clip_norm > 0)) throw UsageError("train.clip_norm must be > 0");
  c.train.encoder.Validate();
  return c;
}

RunConfig RunConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file '" + path + "'");
  Json j;
  try {
    j = Json::parse(in);
  } catch (const Json::exception& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return FromJson(j);
}

nlohmann::ordered_json RunConfig::ToJson() const {
  nlohmann::ordered_json j;
  j["seed"] = seed;
  const auto& f = ingest.filter;
  j["ingest"] = {{"bleu_min", f.bleu_min},
                 {"bleu_max", f.bleu_max},
                 {"len_ratio", f.len_ratio},
                 {"check_len_ratio", f.check_len_ratio},
                 {"comment_sim_max", f.comment_sim_max}};
  const auto& p = cluster.params;
  j["cluster"] = {{"k", p.k},
                  {"svd_dim", p.svd_dim},
                  {"center", p.center},
                  {"max_iter", p.max_iter},
                  {"tol", p.tol},
                  {"allow_unlabeled", p.allow_unlabeled},
                  {"embedder_dim", cluster.embedder_dim}};
  j["cluster"]["prompts"] =
      cluster.prompts ? nlohmann::ordered_json(*cluster.prompts) : nullptr;
  j["annotate"] = {{"tag_set", edit::TagSetVariantName(annotate.tag_set)},
                   {"n_masks", annotate.n_masks}};
  nlohmann::ordered_json enc = train.encoder.ToJson();
  enc.erase("seed");
  const auto& o = train.options;
  j["train"] = {{"encoder", enc},
                {"steps", o.steps},
                {"batch_size", o.batch_size},
                {"learning_rate", o.adam.learning_rate},
                {"beta1", o.adam.beta1},
                {"beta2", o.adam.beta2},
                {"epsilon", o.adam.epsilon},
                {"clip_norm", o.clip_norm}};
  j["eval"] = {{"datasets", eval.datasets},
               {"sari", eval.sari},
               {"gleu", eval.gleu},
               {"em", eval.em}};
  return j;
}

}  // namespace sparsedit::cli
