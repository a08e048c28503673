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

namespace sparsedit::ingest {

// Removes the common wikitext constructs: templates (up to one level of
// nesting), <ref> blocks, HTML comments and tags, internal and external links
// (keeping display text), file and category links, bold/italic quotes,
// heading markers and list bullets. Anything it cannot parse is left as is.
std::string StripMarkup(std::string_view wikitext);

// Rule-based splitter. A sentence ends at '.', '!' or '?' (plus any closing
// quotes or brackets) followed by whitespace and an uppercase letter, quote or
// digit, unless the word before the period is a known abbreviation or a
// single-letter initial. Line breaks always end a sentence. Whitespace inside
// a sentence is collapsed to single spaces.
std::vector<std::string> SplitSentences(std::string_view text);

}  // namespace sparsedit::ingest
