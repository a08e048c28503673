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

#include "sparsedit/metrics/metrics.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <unordered_set>

#include "sparsedit/errors.h"
#include "sparsedit/metrics/ngram.h"

namespace sparsedit::metrics {

namespace {

std::vector<TokenSequence> TokenizeAll(const std::vector<std::string>& texts) {
  std::vector<TokenSequence> out;
  out.reserve(texts.size());
  for (const auto& t : texts) out.push_back(edit::Tokenize(t));
  return out;
}

// numerator / |denominator set| with the empty-set convention.
double Ratio(double numerator, size_t denominator, bool other_side_empty) {
  if (denominator == 0) return other_side_empty ? 1.0 : 0.0;
  return numerator / static_cast<double>(denominator);
}

double F1(double precision, double recall) {
  if (precision + recall == 0.0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

NgramCounts Scale(const NgramCounts& counts, int factor) {
  NgramCounts out = counts;
  for (auto& [gram, count] : out) count *= factor;
  return out;
}

double SumRatio(const NgramCounts& keys, const NgramCounts& numerator,
                const NgramCounts& denominator) {
  double sum = 0.0;
  for (const auto& [gram, count] : keys) {
    auto num = numerator.find(gram);
    auto den = denominator.find(gram);
    if (num == numerator.end() || den == denominator.end()) continue;
    sum += static_cast<double>(num->second) / den->second;
  }
  return sum;
}

struct SariComponents {
  double add_f1;
  double keep_f1;
  double del_precision;
};

SariComponents SariForOrder(const TokenSequence& source,
                            const TokenSequence& prediction,
                            const std::vector<TokenSequence>& references,
                            int n) {
  const int num_refs = static_cast<int>(references.size());
  NgramCounts ref_counts;
  for (const auto& ref : references) {
    for (const auto& [gram, count] : CountNgrams(ref, n)) {
      ref_counts[gram] += count;
    }
  }
  const NgramCounts src = CountNgrams(source, n);
  const NgramCounts src_rep = Scale(src, num_refs);
  const NgramCounts pred = CountNgrams(prediction, n);
  const NgramCounts pred_rep = Scale(pred, num_refs);

  // Keep.
  const NgramCounts keep = Intersect(src_rep, pred_rep);
  const NgramCounts keep_good = Intersect(keep, ref_counts);
  const NgramCounts keep_all = Intersect(src_rep, ref_counts);
  const double keep_p = Ratio(SumRatio(keep, keep_good, keep),
                              keep.size(), keep_all.empty());
  const double keep_r = Ratio(SumRatio(keep_all, keep_good, keep_all),
                              keep_all.size(), keep.empty());

  // Deletion (precision only).
  const NgramCounts del = Subtract(src_rep, pred_rep);
  const NgramCounts del_all = Subtract(src_rep, ref_counts);
  const NgramCounts del_good = Intersect(del, del_all);
  const double del_p =
      Ratio(SumRatio(del, del_good, del), del.size(), del_all.empty());

  // Addition, on n-gram types.
  size_t add = 0, add_good = 0, add_all = 0;
  for (const auto& [gram, count] : pred) {
    if (src.count(gram)) continue;
    ++add;
    add_good += ref_counts.count(gram);
  }
  for (const auto& [gram, count] : ref_counts) add_all += !src.count(gram);
  const double add_p = Ratio(static_cast<double>(add_good), add, add_all == 0);
  const double add_r = Ratio(static_cast<double>(add_good), add_all, add == 0);
  return {F1(add_p, add_r), F1(keep_p, keep_r), del_p};
}

double GleuSingle(const TokenSequence& source, const TokenSequence& prediction,
                  const TokenSequence& reference) {
  const double hyp_len = static_cast<double>(prediction.size());
  const double ref_len = static_cast<double>(reference.size());
  if (prediction.empty()) return reference.empty() ? 100.0 : 0.0;
  double log_sum = 0.0;
  for (int n = 1; n <= kMaxOrder; ++n) {
    const NgramCounts hyp = CountNgrams(prediction, n);
    const NgramCounts ref = CountNgrams(reference, n);
    const NgramCounts src_only = Subtract(CountNgrams(source, n), ref);
    const int numerator = std::max(
        0, Total(Intersect(hyp, ref)) - Total(Intersect(hyp, src_only)));
    const int denominator =
        std::max(0, static_cast<int>(prediction.size()) + 1 - n);
    double precision;
    if (denominator == 0) {
      precision = static_cast<int>(reference.size()) < n ? 1.0 : 0.0;
    } else {
      precision = static_cast<double>(numerator) / denominator;
    }
    if (precision == 0.0) return 0.0;
    log_sum += std::log(precision);
  }
  const double brevity = std::min(0.0, 1.0 - ref_len / hyp_len);
  return 100.0 * std::exp(brevity + log_sum / kMaxOrder);
}

}  // namespace

double Sari(const TokenSequence& source, const TokenSequence& prediction,
            const std::vector<TokenSequence>& references) {
  if (references.empty()) throw EmptyReferenceSet();
  double add = 0.0, keep = 0.0, del = 0.0;
  for (int n = 1; n <= kMaxOrder; ++n) {
    SariComponents c = SariForOrder(source, prediction, references, n);
    add += c.add_f1;
    keep += c.keep_f1;
    del += c.del_precision;
  }
  return 100.0 * (add + keep + del) / (3.0 * kMaxOrder);
}

double Sari(const EvalInstance& instance) {
  return Sari(edit::Tokenize(instance.source),
              edit::Tokenize(instance.prediction),
              TokenizeAll(instance.references));
}

double Gleu(const TokenSequence& source, const TokenSequence& prediction,
            const std::vector<TokenSequence>& references) {
  if (references.empty()) throw EmptyReferenceSet();
  double sum = 0.0;
  for (const auto& ref : references) sum += GleuSingle(source, prediction, ref);
  return sum / static_cast<double>(references.size());
}

double Gleu(const EvalInstance& instance) {
  return Gleu(edit::Tokenize(instance.source),
              edit::Tokenize(instance.prediction),
              TokenizeAll(instance.references));
}

std::string CollapseWhitespace(const std::string& text) {
  std::string out;
  bool pending_space = false;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) out.push_back(' ');
    pending_space = false;
    out.push_back(c);
  }
  return out;
}

double ExactMatch(const EvalInstance& instance) {
  const std::string prediction = CollapseWhitespace(instance.prediction);
  for (const auto& ref : instance.references) {
    if (CollapseWhitespace(ref) == prediction) return 100.0;
  }
  return 0.0;
}

double Bleu(const TokenSequence& candidate, const TokenSequence& reference) {
  if (candidate.empty()) return reference.empty() ? 1.0 : 0.0;
  double log_sum = 0.0;
  for (int n = 1; n <= kMaxOrder; ++n) {
    const NgramCounts cand = CountNgrams(candidate, n);
    const int matches = Total(Intersect(cand, CountNgrams(reference, n)));
    const int total = std::max(0, static_cast<int>(candidate.size()) - n + 1);
    double precision;
    if (n == 1) {
      precision = static_cast<double>(matches) / total;
    } else {
      precision = (matches + 1.0) / (total + 1.0);
    }
    if (precision == 0.0) return 0.0;
    log_sum += std::log(precision);
  }
  const double c = static_cast<double>(candidate.size());
  const double r = static_cast<double>(reference.size());
  const double brevity = c < r ? std::exp(1.0 - r / c) : 1.0;
  return brevity * std::exp(log_sum / kMaxOrder);
}

}  // namespace sparsedit::metrics
