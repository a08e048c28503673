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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace sparsedit::edit {

using TokenSequence = std::vector<std::string>;

// Splits on whitespace, then peels leading and trailing ASCII punctuation
// off each chunk as single-character tokens. Punctuation inside a word
// ("well-known", "don't", "U.S") stays attached. Never emits empty tokens.
TokenSequence Tokenize(std::string_view text);

// Joins tokens with single spaces, except that closing punctuation hugs the
// preceding token and opening brackets hug the following one. For any output
// of Tokenize, Tokenize(Detokenize(t)) == t.
std::string Detokenize(const TokenSequence& tokens);

bool IsAsciiPunct(char c);

}  // namespace sparsedit::edit
