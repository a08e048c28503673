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

#include "sparsedit/edit/tokenizer.h"

#include <cctype>

namespace sparsedit::edit {

bool IsAsciiPunct(char c) {
  return std::ispunct(static_cast<unsigned char>(c)) != 0;
}

namespace {

bool IsSpace(char c) { return std::isspace(static_cast<unsigned char>(c)); }

void SplitChunk(std::string_view chunk, TokenSequence& out) {
  size_t begin = 0;
  size_t end = chunk.size();
  while (begin < end && IsAsciiPunct(chunk[begin])) {
    out.emplace_back(1, chunk[begin]);
    ++begin;
  }
  size_t trail_begin = end;
  while (trail_begin > begin && IsAsciiPunct(chunk[trail_begin - 1])) {
    --trail_begin;
  }
  if (trail_begin > begin) {
    out.emplace_back(chunk.substr(begin, trail_begin - begin));
  }
  for (size_t i = trail_begin; i < end; ++i) out.emplace_back(1, chunk[i]);
}

bool HugsLeft(const std::string& token) {
  return token.size() == 1 && std::string_view(",.!?;:)]}%").find(token[0]) !=
                                  std::string_view::npos;
}

bool HugsRight(const std::string& token) {
  return token.size() == 1 &&
         std::string_view("([{").find(token[0]) != std::string_view::npos;
}

}  // namespace

TokenSequence Tokenize(std::string_view text) {
  TokenSequence out;
  size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && IsSpace(text[i])) ++i;
    size_t start = i;
    while (i < text.size() && !IsSpace(text[i])) ++i;
    if (i > start) SplitChunk(text.substr(start, i - start), out);
  }
  return out;
}

std::string Detokenize(const TokenSequence& tokens) {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !HugsLeft(tokens[i]) && !HugsRight(tokens[i - 1])) {
      out.push_back(' ');
    }
    out += tokens[i];
  }
  return out;
}

}  // namespace sparsedit::edit
