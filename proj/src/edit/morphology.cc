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

#include "sparsedit/edit/morphology.h"

#include <array>
#include <cctype>
#include <unordered_map>
#include <vector>

namespace sparsedit::edit {

namespace {

using VerbRow = std::array<std::string_view, kNumVerbForms>;

constexpr VerbRow kVerbTable[] = {
#include "verb_table.inc"
};

constexpr std::pair<std::string_view, std::string_view> kIrregularPlurals[] = {
    {"child", "children"}, {"man", "men"},     {"woman", "women"},
    {"foot", "feet"},      {"tooth", "teeth"}, {"mouse", "mice"},
    {"person", "people"},
};

bool EndsWith(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() &&
         s.substr(s.size() - suffix.size()) == suffix;
}

bool IsVowel(char c) { return std::string_view("aeiou").find(c) != std::string_view::npos; }

bool IsLowerWord(std::string_view w) {
  if (w.empty()) return false;
  for (char c : w) {
    if (!std::islower(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

bool IsAlphaWord(std::string_view w) {
  if (w.empty()) return false;
  for (char c : w) {
    if (!std::isalpha(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

// (form, word) -> row indices, built once.
class VerbIndex {
 public:
  VerbIndex() {
    for (size_t row = 0; row < std::size(kVerbTable); ++row) {
      for (int f = 0; f < kNumVerbForms; ++f) {
        by_form_[f].emplace(kVerbTable[row][f], row);
        any_form_.emplace(kVerbTable[row][f], row);
      }
    }
  }
  const VerbRow* Find(std::string_view word, VerbForm form) const {
    auto it = by_form_[static_cast<int>(form)].find(word);
    return it == by_form_[static_cast<int>(form)].end()
               ? nullptr
               : &kVerbTable[it->second];
  }
  bool Known(std::string_view word) const { return any_form_.count(word) > 0; }

 private:
  // First row wins on collisions, which keeps lookups deterministic.
  std::array<std::unordered_map<std::string_view, size_t>, kNumVerbForms>
      by_form_;
  std::unordered_map<std::string_view, size_t> any_form_;
};

const VerbIndex& Index() {
  static const VerbIndex index;
  return index;
}

std::string RegularForm(const std::string& lemma, VerbForm form) {
  switch (form) {
    case VerbForm::kVB:
      return lemma;
    case VerbForm::kVBZ:
      if (EndsWith(lemma, "s") || EndsWith(lemma, "x") ||
          EndsWith(lemma, "z") || EndsWith(lemma, "ch") ||
          EndsWith(lemma, "sh") || EndsWith(lemma, "o")) {
        return lemma + "es";
      }
      if (EndsWith(lemma, "y") && lemma.size() > 1 &&
          !IsVowel(lemma[lemma.size() - 2])) {
        return lemma.substr(0, lemma.size() - 1) + "ies";
      }
      return lemma + "s";
    case VerbForm::kVBD:
    case VerbForm::kVBN:
      if (EndsWith(lemma, "e")) return lemma + "d";
      if (EndsWith(lemma, "y") && lemma.size() > 1 &&
          !IsVowel(lemma[lemma.size() - 2])) {
        return lemma.substr(0, lemma.size() - 1) + "ied";
      }
      return lemma + "ed";
    case VerbForm::kVBG:
      if (EndsWith(lemma, "ie")) return lemma.substr(0, lemma.size() - 2) + "ying";
      if (EndsWith(lemma, "e") && !EndsWith(lemma, "ee")) {
        return lemma.substr(0, lemma.size() - 1) + "ing";
      }
      return lemma + "ing";
  }
  return lemma;
}

// Candidate lemmas whose regular `form` could be `word`.
std::vector<std::string> RegularLemmas(std::string_view word, VerbForm form) {
  std::string w(word);
  std::vector<std::string> out;
  auto strip = [&](std::string_view suffix, std::string_view add) {
    if (EndsWith(w, suffix) && w.size() > suffix.size()) {
      out.push_back(w.substr(0, w.size() - suffix.size()) + std::string(add));
    }
  };
  switch (form) {
    case VerbForm::kVB:
      out.push_back(w);
      break;
    case VerbForm::kVBZ:
      strip("ies", "y");
      strip("es", "");
      strip("s", "");
      break;
    case VerbForm::kVBD:
    case VerbForm::kVBN:
      strip("ied", "y");
      strip("ed", "");
      strip("d", "");
      break;
    case VerbForm::kVBG:
      strip("ying", "ie");
      strip("ing", "e");
      strip("ing", "");
      break;
  }
  return out;
}

}  // namespace

int VerbLexiconSize() { return static_cast<int>(std::size(kVerbTable)); }

std::optional<std::string> Pluralize(std::string_view noun) {
  if (!IsAlphaWord(noun)) return std::nullopt;
  for (const auto& [singular, plural] : kIrregularPlurals) {
    if (noun == singular) return std::string(plural);
  }
  std::string w(noun);
  if (EndsWith(w, "s") || EndsWith(w, "x") || EndsWith(w, "z") ||
      EndsWith(w, "ch") || EndsWith(w, "sh")) {
    return w + "es";
  }
  if (EndsWith(w, "y") && w.size() > 1 && !IsVowel(w[w.size() - 2])) {
    return w.substr(0, w.size() - 1) + "ies";
  }
  return w + "s";
}

std::optional<std::string> Singularize(std::string_view noun) {
  if (!IsAlphaWord(noun)) return std::nullopt;
  for (const auto& [singular, plural] : kIrregularPlurals) {
    if (noun == plural) return std::string(singular);
  }
  std::string w(noun);
  for (std::string_view suffix : {"sses", "xes", "zes", "ches", "shes"}) {
    if (EndsWith(w, suffix)) return w.substr(0, w.size() - 2);
  }
  if (EndsWith(w, "ies") && w.size() > 3) {
    return w.substr(0, w.size() - 3) + "y";
  }
  if (EndsWith(w, "s") && !EndsWith(w, "ss") && w.size() > 1) {
    return w.substr(0, w.size() - 1);
  }
  return std::nullopt;
}

std::optional<std::string> ConvertVerb(std::string_view word, VerbForm from,
                                       VerbForm to) {
  if (from == to) return std::nullopt;
  const VerbIndex& index = Index();
  if (const VerbRow* row = index.Find(word, from)) {
    return std::string((*row)[static_cast<int>(to)]);
  }
  // Lexicon words only convert through their own rows.
  if (index.Known(word) || !IsLowerWord(word)) return std::nullopt;
  for (const std::string& lemma : RegularLemmas(word, from)) {
    if (lemma.size() < 3 || index.Known(lemma)) continue;
    if (RegularForm(lemma, from) == word) return RegularForm(lemma, to);
  }
  return std::nullopt;
}

}  // namespace sparsedit::edit
