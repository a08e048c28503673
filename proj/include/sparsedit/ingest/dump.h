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

#include <cstdint>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace sparsedit::ingest {

struct RawRevision {
  int64_t page_id = 0;
  int64_t rev_id = 0;
  std::optional<int64_t> parent_rev_id;
  std::string comment;
  std::string text;
};

struct Page {
  int64_t page_id = 0;
  std::string title;
  std::vector<RawRevision> revisions;  // Sorted by rev_id.
};

// Pull-style reader over a revision dump. Only one page (plus at most one
// input chunk of lookahead) is held in memory at a time.
class PageReader {
 public:
  virtual ~PageReader() = default;
  // Fills `page` and returns true, or returns false at end of input. Throws
  // MalformedDump on syntax or structural errors.
  virtual bool Next(Page* page) = 0;
};

// MediaWiki XML export subset: <page><id/><title/><revision><id/><parentid/>
// <comment/><text/></revision>...</page>.
std::unique_ptr<PageReader> NewXmlPageReader(std::istream& in);

// One RawRevision object per line. Consecutive lines with the same page_id
// form a page.
std::unique_ptr<PageReader> NewJsonlPageReader(std::istream& in);

// Picks the format from the first non-blank byte: '<' for XML, '{' for JSONL.
// An empty stream yields no pages.
std::unique_ptr<PageReader> NewPageReader(std::istream& in);

}  // namespace sparsedit::ingest
