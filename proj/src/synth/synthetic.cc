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

#include "sparsedit/synth/synthetic.h"

#include <algorithm>
#include <cctype>
#include <random>
#include <set>
#include <utility>

#include "sparsedit/edit/morphology.h"
#include "sparsedit/edit/tokenizer.h"
#include "sparsedit/errors.h"
#include "sparsedit/random.h"

namespace sparsedit::synth {

namespace {

enum class Role { kDet, kNum, kAdj, kNoun, kVerb, kAdv, kMarker, kPunct };

const std::vector<std::string> kDets = {"the", "a",   "this", "that", "my",
                                        "your", "our", "his",  "her"};
const std::vector<std::string> kNums = {"two", "three", "four", "five",
                                        "six", "several", "many"};
const std::vector<std::string> kAdjs = {"red",   "old",  "new",   "green",
                                        "dark",  "warm", "cold",  "tall",
                                        "young", "quiet", "loud", "soft"};
const std::vector<std::string> kNouns = {
    "cat",    "dog",    "bird",  "car",   "book",   "tree",  "house",
    "girl",   "boy",    "friend", "teacher", "farmer", "window", "garden",
    "river",  "road",   "apple", "song",  "letter", "table", "chair",
    "door",   "lamp",   "cup",   "horse", "king",   "ship",  "coat"};
const std::vector<std::string> kVerbs = {
    "saw",    "liked",   "found",   "moved",   "painted", "watched",
    "visited", "opened", "cleaned", "carried", "helped",  "followed"};
const std::vector<std::vector<std::string>> kAdverbials = {
    {"today"},           {"yesterday"},      {"again"},
    {"in", "the", "park"}, {"at", "night"},  {"near", "the", "river"},
    {"after", "lunch"}};
const std::vector<std::string> kMarkers = {"um", "uh", "er"};
const std::vector<std::pair<std::string, std::string>> kSynonyms = {
    {"big", "large"}, {"quick", "fast"}, {"happy", "glad"},
    {"smart", "clever"}, {"pretty", "lovely"}};

struct Sentence {
  std::vector<std::string> tokens;
  std::vector<Role> roles;

  void Push(std::string token, Role role) {
    tokens.push_back(std::move(token));
    roles.push_back(role);
  }
  void Insert(size_t at, std::string token, Role role) {
    tokens.insert(tokens.begin() + at, std::move(token));
    roles.insert(roles.begin() + at, role);
  }
  std::string Text() const { return edit::Detokenize(tokens); }
  std::vector<size_t> Positions(std::initializer_list<Role> wanted) const {
    std::vector<size_t> out;
    for (size_t i = 0; i < roles.size(); ++i) {
      if (std::find(wanted.begin(), wanted.end(), roles[i]) != wanted.end()) {
        out.push_back(i);
      }
    }
    return out;
  }
};

class Generator {
 public:
  explicit Generator(uint64_t seed) : rng_(seed) {}

  template <typename T>
  const T& Pick(const std::vector<T>& items) {
    return items[UniformIndex(rng_, items.size())];
  }
  bool Chance(double p) { return UniformUnit(rng_) < p; }
  size_t Index(size_t n) { return UniformIndex(rng_, n); }

  // det [adj] noun, or num [adj] noun-plural/singular.
  void NounPhrase(Sentence& s, bool numbered, bool plural) {
    if (numbered) {
      s.Push(Pick(kNums), Role::kNum);
    } else {
      s.Push(Pick(kDets), Role::kDet);
    }
    if (Chance(0.4)) s.Push(Pick(kAdjs), Role::kAdj);
    const std::string& noun = Pick(kNouns);
    s.Push(numbered && plural ? *edit::Pluralize(noun) : noun, Role::kNoun);
  }

  Sentence Clean(bool numbered_object, bool plural_object) {
    Sentence s;
    NounPhrase(s, false, false);
    s.Push(Pick(kVerbs), Role::kVerb);
    NounPhrase(s, numbered_object, plural_object);
    if (Chance(0.5)) {
      for (const std::string& t : Pick(kAdverbials)) s.Push(t, Role::kAdv);
    }
    s.Push(".", Role::kPunct);
    return s;
  }

  // Puts `adjective` in front of a random noun, replacing an existing
  // adjective there.
  void SetAdjective(Sentence& s, size_t noun, const std::string& adjective) {
    if (noun > 0 && s.roles[noun - 1] == Role::kAdj) {
      s.tokens[noun - 1] = adjective;
    } else {
      s.Insert(noun, adjective, Role::kAdj);
    }
  }

  void InsertMarker(Sentence& s) {
    s.Insert(Index(s.tokens.size()), Pick(kMarkers), Role::kMarker);
  }

 private:
  std::mt19937_64 rng_;
};

std::string Upper(std::string word) {
  for (char& c : word) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return word;
}

std::vector<size_t> ContentPositions(const Sentence& s) {
  return s.Positions({Role::kAdj, Role::kNoun, Role::kVerb});
}

// Applies another intent's trigger to `s` (kept identical in source and
// target).
void AddDistractor(Generator& gen, Sentence& s, int own_intent) {
  std::vector<int> others;
  for (int i = 0; i < 4; ++i) {
    if (i != own_intent) others.push_back(i);
  }
  switch (gen.Pick(others)) {
    case 0: {
      // The plural_fix edit site stays lowercase.
      std::vector<size_t> pos = ContentPositions(s);
      if (own_intent == 1) pos.erase(pos.end() - 1);
      const size_t at = gen.Pick(pos);
      s.tokens[at] = Upper(s.tokens[at]);
      break;
    }
    case 1: {
      // Singular noun after a number word, left uncorrected.
      const auto nums = s.Positions({Role::kNum});
      const size_t noun_at = s.Positions({Role::kNoun}).back();
      if (nums.empty()) {
        const size_t det = s.Positions({Role::kDet}).back();
        s.tokens[det] = gen.Pick(kNums);
        s.roles[det] = Role::kNum;
      }
      if (auto single = edit::Singularize(s.tokens[noun_at])) {
        s.tokens[noun_at] = *single;
      }
      break;
    }
    case 2:
      gen.InsertMarker(s);
      break;
    default: {
      const auto nouns = s.Positions({Role::kNoun});
      gen.SetAdjective(s, gen.Pick(nouns), gen.Pick(kSynonyms).first);
    }
  }
}

SentencePair MakePair(Generator& gen, int intent, const SynthConfig& config) {
  const bool distract = gen.Chance(config.distractor_rate);
  Sentence target;
  if (intent == 1) {
    target = gen.Clean(true, true);
  } else {
    target = gen.Clean(gen.Chance(0.15), true);
  }
  if (distract) AddDistractor(gen, target, intent);
  Sentence source = target;
  switch (intent) {
    case 0: {
      std::vector<size_t> pos;
      for (size_t p : ContentPositions(target)) {
        if (Upper(target.tokens[p]) != target.tokens[p]) pos.push_back(p);
      }
      const size_t first = gen.Pick(pos);
      source.tokens[first] = Upper(source.tokens[first]);
      if (gen.Chance(config.two_error_rate)) {
        std::vector<size_t> later;
        for (size_t p : pos) {
          if (p > first) later.push_back(p);
        }
        if (!later.empty()) {
          const size_t second = gen.Pick(later);
          source.tokens[second] = Upper(source.tokens[second]);
          target.tokens[second] = source.tokens[second];
        }
      }
      break;
    }
    case 1: {
      const size_t noun_at = target.Positions({Role::kNoun}).back();
      source.tokens[noun_at] = *edit::Singularize(target.tokens[noun_at]);
      break;
    }
    case 2:
      gen.InsertMarker(source);
      if (gen.Chance(0.3)) gen.InsertMarker(source);
      break;
    default: {
      const auto nouns = target.Positions({Role::kNoun});
      const size_t noun = gen.Pick(nouns);
      const auto& [from, to] = gen.Pick(kSynonyms);
      gen.SetAdjective(source, noun, from);
      gen.SetAdjective(target, noun, to);
    }
  }
  SentencePair pair;
  pair.source = source.Text();
  pair.target = target.Text();
  pair.comment = "synthetic";
  pair.intent = Intents()[intent];
  return pair;
}

}  // namespace

SynthCorpus GenerateCorpus(const SynthConfig& config) {
  if (config.train_per_intent < 0 || config.heldout_per_intent < 0) {
    throw UsageError("synthetic corpus sizes must be non-negative");
  }
  Generator gen(config.seed);
  SynthCorpus corpus;
  for (int intent = 0; intent < 4; ++intent) {
    std::set<std::string> seen;
    auto fill = [&](int count, std::vector<SentencePair>& out) {
      int made = 0;
      for (int attempts = 0; made < count; ++attempts) {
        if (attempts > 200 * (count + 10)) {
          throw UsageError("cannot generate enough distinct synthetic pairs");
        }
        SentencePair pair = MakePair(gen, intent, config);
        if (!seen.insert(pair.source).second) continue;
        out.push_back(std::move(pair));
        ++made;
      }
    };
    fill(config.train_per_intent, corpus.train);
    fill(config.heldout_per_intent, corpus.heldout);
  }
  return corpus;
}

TwoErrorCase MakeTwoErrorCase(uint64_t seed) {
  Generator gen(seed);
  Sentence clean = gen.Clean(false, false);
  const auto pos = ContentPositions(clean);
  const size_t first = pos.front(), second = pos.back();
  TwoErrorCase out;
  out.fixed = clean.Text();
  clean.tokens[second] = Upper(clean.tokens[second]);
  out.after_one_pass = clean.Text();
  clean.tokens[first] = Upper(clean.tokens[first]);
  out.input = clean.Text();
  return out;
}

}  // namespace sparsedit::synth
