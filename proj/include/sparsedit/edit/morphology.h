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

#include <optional>
#include <string>
#include <string_view>

#include "sparsedit/edit/tags.h"

namespace sparsedit::edit {

// English noun agreement: suffix rules plus a small irregular table
// (child/children, man/men, woman/women, foot/feet, tooth/teeth,
// mouse/mice, person/people). Returns nullopt when no rule fires.
std::optional<std::string> Pluralize(std::string_view noun);
std::optional<std::string> Singularize(std::string_view noun);

// Rewrites `word`, read as verb form `from`, into form `to`. Lexicon verbs
// use their table row; other words fall back to regular-suffix rules.
std::optional<std::string> ConvertVerb(std::string_view word, VerbForm from,
                                       VerbForm to);

// Number of lexicon rows (each row carries all five forms).
int VerbLexiconSize();

}  // namespace sparsedit::edit
