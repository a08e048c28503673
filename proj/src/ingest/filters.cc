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

#include "sparsedit/ingest/filters.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

#include "sparsedit/edit/tokenizer.h"
#include "sparsedit/metrics/metrics.h"

namespace sparsedit::ingest {

namespace {

std::string Lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::string ReplaceAllNoCase(const std::string& text, std::string_view from,
                             std::string_view to) {
  const std::string lower = Lower(text);
  const std::string needle = Lower(from);
  std::string out;
  size_t pos = 0;
  while (true) {
    const size_t hit = lower.find(needle, pos);
    if (hit == std::string::npos) break;
    out.append(text, pos, hit - pos);
    out.append(to);
    pos = hit + needle.size();
  }
  out.append(text, pos);
  return out;
}

std::string CollapseSpaces(const std::string& text) {
  std::string out;
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      if (!out.empty() && out.back() != ' ') out.push_back(' ');
    } else {
      out.push_back(c);
    }
  }
  if (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

bool IsMonthName(const std::string& token) {
  static constexpr std::array<std::string_view, 24> kMonths = {
      "January", "February", "March",    "April",   "May",      "June",
      "July",    "August",   "September", "October", "November", "December",
      "Jan",     "Feb",      "Mar",      "Apr",     "Jun",      "Jul",
      "Aug",     "Sep",      "Sept",     "Oct",     "Nov",      "Dec"};
  return std::find(kMonths.begin(), kMonths.end(), token) != kMonths.end();
}

bool IsNumberOrTimeToken(const std::string& token) {
  if (std::any_of(token.begin(), token.end(), [](char c) {
        return std::isdigit(static_cast<unsigned char>(c));
      })) {
    return true;
  }
  return IsMonthName(token);
}

}  // namespace

const std::vector<std::string>& CommentBlacklist() {
  static const std::vector<std::string> kTerms = {
      "template", "image",   "infobox", "pic",  "link", "photo",
      "comment",  "http:",   "https:",  ".jpg", ".png", "reply"};
  return kTerms;
}

Decision FilterComment(std::string_view comment) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 4>
      kShortcuts = {{{"[[WP:NPOV|POV]]", "neutral point of view"},
                     {"[[WP:TYPO]]", "typo"},
                     {"[[WP:RS]]", "reliable sources"},
                     {"[[WP:SYN]]", "synthesis"}}};
  std::string text = CollapseSpaces(std::string(comment));
  if (text.empty()) return Decision::Drop("empty");
  const std::string lower = Lower(text);
  for (const auto& term : CommentBlacklist()) {
    if (lower.find(term) != std::string::npos) {
      return Decision::Drop("blacklist:" + term);
    }
  }
  for (const auto& [shortcut, expansion] : kShortcuts) {
    text = ReplaceAllNoCase(text, shortcut, expansion);
  }
  return Decision::Keep(CollapseSpaces(text));
}

bool IsNumberOrTimeEdit(const std::string& source, const std::string& target) {
  std::map<std::string, int> balance;
  for (const auto& t : edit::Tokenize(source)) ++balance[t];
  for (const auto& t : edit::Tokenize(target)) --balance[t];
  bool any = false;
  for (const auto& [token, count] : balance) {
    if (count == 0) continue;
    if (!IsNumberOrTimeToken(token)) return false;
    any = true;
  }
  return any;
}

Decision FilterPair(const SentencePair& pair, const FilterConfig& config) {
  const auto source = edit::Tokenize(pair.source);
  const auto target = edit::Tokenize(pair.target);
  if (source == target) return Decision::Drop("identical");
  if (IsNumberOrTimeEdit(pair.source, pair.target)) {
    return Decision::Drop("number_time");
  }
  if (config.check_len_ratio) {
    const double a = static_cast<double>(std::max<size_t>(source.size(), 1));
    const double b = static_cast<double>(std::max<size_t>(target.size(), 1));
    if (a / b > config.len_ratio || b / a > config.len_ratio) {
      return Decision::Drop("len_ratio");
    }
  }
  const double bleu = metrics::Bleu(target, source);
  if (bleu < config.bleu_min) return Decision::Drop("bleu_min");
  if (bleu > config.bleu_max) return Decision::Drop("bleu_max");
  const double comment_sim =
      metrics::Bleu(edit::Tokenize(pair.comment), source);
  if (comment_sim > config.comment_sim_max) {
    return Decision::Drop("comment_sim");
  }
  return Decision::Keep();
}

}  // namespace sparsedit::ingest
