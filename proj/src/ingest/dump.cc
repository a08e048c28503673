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

#include "sparsedit/ingest/dump.h"

#include <expat.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <deque>
#include <unordered_set>

#include "json.hpp"
#include "sparsedit/errors.h"

namespace sparsedit::ingest {

namespace {

constexpr size_t kChunkSize = 1 << 16;

// Sorts by rev_id and rejects duplicates.
void FinishPage(Page* page, int64_t offset) {
  std::sort(page->revisions.begin(), page->revisions.end(),
            [](const RawRevision& a, const RawRevision& b) {
              return a.rev_id < b.rev_id;
            });
  for (size_t i = 1; i < page->revisions.size(); ++i) {
    if (page->revisions[i].rev_id == page->revisions[i - 1].rev_id) {
      throw MalformedDump("duplicate revision id " +
                              std::to_string(page->revisions[i].rev_id) +
                              " in page " + std::to_string(page->page_id),
                          offset);
    }
  }
}

int64_t ParseId(const std::string& text, const char* what, int64_t offset) {
  size_t begin = text.find_first_not_of(" \t\r\n");
  size_t end = text.find_last_not_of(" \t\r\n");
  int64_t value = 0;
  if (begin == std::string::npos) {
    throw MalformedDump(std::string("empty ") + what, offset);
  }
  auto [ptr, ec] =
      std::from_chars(text.data() + begin, text.data() + end + 1, value);
  if (ec != std::errc() || ptr != text.data() + end + 1) {
    throw MalformedDump(std::string("bad ") + what + " '" + text + "'",
                        offset);
  }
  return value;
}

class XmlPageReader : public PageReader {
 public:
  XmlPageReader(std::istream& in, int64_t base_offset)
      : in_(in), base_offset_(base_offset), parser_(XML_ParserCreate("UTF-8")) {
    XML_SetUserData(parser_, this);
    XML_SetElementHandler(parser_, &XmlPageReader::OnStart,
                          &XmlPageReader::OnEnd);
    XML_SetCharacterDataHandler(parser_, &XmlPageReader::OnText);
  }
  ~XmlPageReader() override { XML_ParserFree(parser_); }

  bool Next(Page* page) override {
    while (ready_.empty() && !done_) Feed();
    if (ready_.empty()) return false;
    *page = std::move(ready_.front());
    ready_.pop_front();
    return true;
  }

 private:
  enum class Field { kNone, kPageId, kTitle, kRevId, kParentId, kComment, kText };

  void Feed() {
    in_.read(buffer_.data(), buffer_.size());
    const std::streamsize got = in_.gcount();
    if (got < 0 || (got == 0 && in_.bad())) {
      throw IoError("read error in dump stream");
    }
    const bool final = got == 0 || in_.eof();
    if (XML_Parse(parser_, buffer_.data(), static_cast<int>(got),
                  final ? XML_TRUE : XML_FALSE) == XML_STATUS_ERROR) {
      if (pending_error_) std::rethrow_exception(pending_error_);
      throw MalformedDump(XML_ErrorString(XML_GetErrorCode(parser_)),
                          Offset());
    }
    if (final) {
      if (in_page_) {
        throw MalformedDump("unterminated <page>", Offset());
      }
      done_ = true;
    }
  }

  int64_t Offset() const {
    return base_offset_ + XML_GetCurrentByteIndex(parser_);
  }

  // Exceptions must not cross the C parser; park them and stop parsing.
  template <typename Fn>
  static void Guard(void* self_ptr, Fn fn) {
    auto* self = static_cast<XmlPageReader*>(self_ptr);
    if (self->pending_error_) return;
    try {
      fn(self);
    } catch (...) {
      self->pending_error_ = std::current_exception();
      XML_StopParser(self->parser_, XML_FALSE);
    }
  }

  static void OnStart(void* self_ptr, const XML_Char* name, const XML_Char**) {
    Guard(self_ptr, [name](XmlPageReader* self) { self->Start(name); });
  }
  static void OnEnd(void* self_ptr, const XML_Char* name) {
    Guard(self_ptr, [name](XmlPageReader* self) { self->End(name); });
  }
  static void OnText(void* self_ptr, const XML_Char* text, int len) {
    auto* self = static_cast<XmlPageReader*>(self_ptr);
    if (self->field_ != Field::kNone) self->text_.append(text, len);
  }

  void Start(const std::string& name) {
    ++depth_;
    if (name == "page") {
      if (in_page_) throw MalformedDump("nested <page>", Offset());
      in_page_ = true;
      page_ = Page{};
      page_depth_ = depth_;
      has_page_id_ = false;
      return;
    }
    if (!in_page_) return;
    if (name == "revision") {
      if (in_revision_) throw MalformedDump("nested <revision>", Offset());
      in_revision_ = true;
      revision_depth_ = depth_;
      revision_ = RawRevision{};
      has_rev_id_ = false;
      return;
    }
    field_ = Field::kNone;
    if (in_revision_ && depth_ == revision_depth_ + 1) {
      if (name == "id") field_ = Field::kRevId;
      if (name == "parentid") field_ = Field::kParentId;
      if (name == "comment") field_ = Field::kComment;
      if (name == "text") field_ = Field::kText;
    } else if (!in_revision_ && depth_ == page_depth_ + 1) {
      if (name == "id") field_ = Field::kPageId;
      if (name == "title") field_ = Field::kTitle;
    }
    text_.clear();
  }

  void End(const std::string& name) {
    const int depth = depth_--;
    if (!in_page_) return;
    if (name == "page" && depth == page_depth_) {
      if (!has_page_id_) throw MalformedDump("<page> without <id>", Offset());
      for (auto& rev : page_.revisions) rev.page_id = page_.page_id;
      FinishPage(&page_, Offset());
      ready_.push_back(std::move(page_));
      in_page_ = false;
      return;
    }
    if (name == "revision" && in_revision_ && depth == revision_depth_) {
      if (!has_rev_id_) {
        throw MalformedDump("<revision> without <id>", Offset());
      }
      page_.revisions.push_back(std::move(revision_));
      in_revision_ = false;
      return;
    }
    switch (field_) {
      case Field::kPageId:
        page_.page_id = ParseId(text_, "page id", Offset());
        has_page_id_ = true;
        break;
      case Field::kTitle:
        page_.title = text_;
        break;
      case Field::kRevId:
        revision_.rev_id = ParseId(text_, "revision id", Offset());
        has_rev_id_ = true;
        break;
      case Field::kParentId:
        revision_.parent_rev_id = ParseId(text_, "parent id", Offset());
        break;
      case Field::kComment:
        revision_.comment = text_;
        break;
      case Field::kText:
        revision_.text = text_;
        break;
      case Field::kNone:
        break;
    }
    field_ = Field::kNone;
  }

  std::istream& in_;
  int64_t base_offset_;
  XML_Parser parser_;
  std::array<char, kChunkSize> buffer_;
  std::deque<Page> ready_;
  std::exception_ptr pending_error_;
  bool done_ = false;

  int depth_ = 0;
  bool in_page_ = false;
  int page_depth_ = 0;
  bool has_page_id_ = false;
  bool in_revision_ = false;
  int revision_depth_ = 0;
  bool has_rev_id_ = false;
  Field field_ = Field::kNone;
  std::string text_;
  Page page_;
  RawRevision revision_;
};

class JsonlPageReader : public PageReader {
 public:
  JsonlPageReader(std::istream& in, int64_t base_offset)
      : in_(in), offset_(base_offset) {}

  bool Next(Page* page) override {
    if (!pending_ && !ReadRevision()) return false;
    Page out;
    out.page_id = pending_->page_id;
    const int64_t start = pending_offset_;
    while (pending_ && pending_->page_id == out.page_id) {
      out.revisions.push_back(std::move(*pending_));
      pending_.reset();
      ReadRevision();
    }
    FinishPage(&out, start);
    *page = std::move(out);
    return true;
  }

 private:
  bool ReadRevision() {
    std::string line;
    while (true) {
      const int64_t line_offset = offset_;
      if (!std::getline(in_, line)) return false;
      offset_ += static_cast<int64_t>(line.size()) + 1;
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      pending_offset_ = line_offset;
      pending_ = Parse(line, line_offset);
      return true;
    }
  }

  static RawRevision Parse(const std::string& line, int64_t offset) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw MalformedDump(std::string("invalid JSON: ") + e.what(),
                          offset + static_cast<int64_t>(e.byte) - 1);
    }
    try {
      RawRevision rev;
      rev.page_id = j.at("page_id").get<int64_t>();
      rev.rev_id = j.at("rev_id").get<int64_t>();
      if (j.contains("parent_rev_id") && !j["parent_rev_id"].is_null()) {
        rev.parent_rev_id = j["parent_rev_id"].get<int64_t>();
      }
      if (j.contains("comment") && !j["comment"].is_null()) {
        rev.comment = j["comment"].get<std::string>();
      }
      rev.text = j.value("text", "");
      return rev;
    } catch (const nlohmann::json::exception& e) {
      throw MalformedDump(std::string("bad revision record: ") + e.what(),
                          offset);
    }
  }

  std::istream& in_;
  int64_t offset_;
  int64_t pending_offset_ = 0;
  std::optional<RawRevision> pending_;
};

class EmptyPageReader : public PageReader {
 public:
  bool Next(Page*) override { return false; }
};

}  // namespace

std::unique_ptr<PageReader> NewXmlPageReader(std::istream& in) {
  return std::make_unique<XmlPageReader>(in, 0);
}

std::unique_ptr<PageReader> NewJsonlPageReader(std::istream& in) {
  return std::make_unique<JsonlPageReader>(in, 0);
}

std::unique_ptr<PageReader> NewPageReader(std::istream& in) {
  int64_t skipped = 0;
  int c;
  while ((c = in.peek()) != std::char_traits<char>::eof() &&
         std::isspace(c)) {
    in.get();
    ++skipped;
  }
  if (c == std::char_traits<char>::eof()) {
    if (in.bad()) throw IoError("read error in dump stream");
    return std::make_unique<EmptyPageReader>();
  }
  if (c == '<') return std::make_unique<XmlPageReader>(in, skipped);
  if (c == '{') return std::make_unique<JsonlPageReader>(in, skipped);
  throw MalformedDump("unrecognized dump format", skipped);
}

}  // namespace sparsedit::ingest
