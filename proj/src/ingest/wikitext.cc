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

#include "sparsedit/ingest/wikitext.h"

#include <algorithm>
#include <array>
#include <cctype>

namespace sparsedit::ingest {

namespace {

bool StartsWithNoCase(std::string_view text, size_t pos,
                      std::string_view prefix) {
  if (pos + prefix.size() > text.size()) return false;
  for (size_t i = 0; i < prefix.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(text[pos + i])) !=
        std::tolower(static_cast<unsigned char>(prefix[i]))) {
      return false;
    }
  }
  return true;
}

size_t FindNoCase(std::string_view text, std::string_view needle, size_t from) {
  for (size_t i = from; i + needle.size() <= text.size(); ++i) {
    if (StartsWithNoCase(text, i, needle)) return i;
  }
  return std::string_view::npos;
}

std::string RemoveHtmlComments(std::string_view in) {
  std::string out;
  size_t pos = 0;
  while (pos < in.size()) {
    const size_t open = in.find("<!--", pos);
    if (open == std::string_view::npos) break;
    const size_t close = in.find("-->", open + 4);
    if (close == std::string_view::npos) break;
    out.append(in.substr(pos, open - pos));
    pos = close + 3;
  }
  out.append(in.substr(pos));
  return out;
}

std::string RemoveRefs(std::string_view in) {
  std::string out;
  size_t pos = 0;
  while (pos < in.size()) {
    size_t open = FindNoCase(in, "<ref", pos);
    while (open != std::string_view::npos && open + 4 < in.size() &&
           !(in[open + 4] == '>' || in[open + 4] == '/' ||
             std::isspace(static_cast<unsigned char>(in[open + 4])))) {
      open = FindNoCase(in, "<ref", open + 4);
    }
    if (open == std::string_view::npos) break;
    const size_t tag_end = in.find('>', open);
    if (tag_end == std::string_view::npos) break;
    size_t resume;
    if (in[tag_end - 1] == '/') {
      resume = tag_end + 1;
    } else {
      const size_t close = FindNoCase(in, "</ref>", tag_end);
      if (close == std::string_view::npos) break;
      resume = close + 6;
    }
    out.append(in.substr(pos, open - pos));
    pos = resume;
  }
  out.append(in.substr(pos));
  return out;
}

// Drops every {{...}} that has no template inside it.
std::string RemoveInnermostTemplates(std::string_view in) {
  std::string out;
  size_t pos = 0;
  size_t copied = 0;
  size_t open = std::string_view::npos;
  while (pos + 1 < in.size()) {
    if (in[pos] == '{' && in[pos + 1] == '{') {
      open = pos;
      pos += 2;
    } else if (in[pos] == '}' && in[pos + 1] == '}' &&
               open != std::string_view::npos) {
      out.append(in.substr(copied, open - copied));
      pos += 2;
      copied = pos;
      open = std::string_view::npos;
    } else {
      ++pos;
    }
  }
  out.append(in.substr(copied));
  return out;
}

// Position just past the "]]" matching the "[[" at `open`, or npos.
size_t MatchLink(std::string_view in, size_t open) {
  int depth = 0;
  for (size_t i = open; i + 1 < in.size(); ++i) {
    if (in[i] == '[' && in[i + 1] == '[') {
      ++depth;
      ++i;
    } else if (in[i] == ']' && in[i + 1] == ']') {
      if (--depth == 0) return i + 2;
      ++i;
    }
  }
  return std::string_view::npos;
}

std::string StripLinks(std::string_view in);

std::string LinkText(std::string_view inner) {
  size_t start = inner.find_first_not_of(" :");
  if (start == std::string_view::npos) return "";
  for (std::string_view ns : {"file:", "image:", "category:", "media:"}) {
    if (StartsWithNoCase(inner, start, ns)) return "";
  }
  int depth = 0;
  for (size_t i = 0; i < inner.size(); ++i) {
    if (inner[i] == '[') ++depth;
    if (inner[i] == ']') --depth;
    if (inner[i] == '|' && depth == 0) return StripLinks(inner.substr(i + 1));
  }
  return std::string(inner);
}

bool IsUrlStart(std::string_view in, size_t pos) {
  for (std::string_view scheme : {"http://", "https://", "ftp://", "//"}) {
    if (StartsWithNoCase(in, pos, scheme)) return true;
  }
  return false;
}

std::string StripLinks(std::string_view in) {
  std::string out;
  size_t pos = 0;
  while (pos < in.size()) {
    if (in.compare(pos, 2, "[[") == 0) {
      const size_t end = MatchLink(in, pos);
      if (end != std::string_view::npos) {
        out += LinkText(in.substr(pos + 2, end - pos - 4));
        pos = end;
        continue;
      }
    } else if (in[pos] == '[' && IsUrlStart(in, pos + 1)) {
      const size_t end = in.find(']', pos);
      if (end != std::string_view::npos) {
        const std::string_view inner = in.substr(pos + 1, end - pos - 1);
        const size_t space = inner.find(' ');
        if (space != std::string_view::npos) out += inner.substr(space + 1);
        pos = end + 1;
        continue;
      }
    }
    out.push_back(in[pos++]);
  }
  return out;
}

std::string RemoveQuotesAndTags(std::string_view in) {
  std::string out;
  size_t pos = 0;
  while (pos < in.size()) {
    if (in[pos] == '\'' && pos + 1 < in.size() && in[pos + 1] == '\'') {
      while (pos < in.size() && in[pos] == '\'') ++pos;
      continue;
    }
    if (in[pos] == '<') {
      size_t name = pos + 1;
      if (name < in.size() && in[name] == '/') ++name;
      if (name < in.size() &&
          std::isalpha(static_cast<unsigned char>(in[name]))) {
        const size_t end = in.find('>', name);
        if (end != std::string_view::npos) {
          pos = end + 1;
          continue;
        }
      }
    }
    out.push_back(in[pos++]);
  }
  return out;
}

std::string DecodeEntities(std::string_view in) {
  static constexpr std::array<std::pair<std::string_view, std::string_view>, 8>
      kEntities = {{{"&nbsp;", " "},
                    {"&amp;", "&"},
                    {"&quot;", "\""},
                    {"&lt;", "<"},
                    {"&gt;", ">"},
                    {"&ndash;", "-"},
                    {"&mdash;", "-"},
                    {"&#39;", "'"}}};
  std::string out;
  size_t pos = 0;
  while (pos < in.size()) {
    bool replaced = false;
    if (in[pos] == '&') {
      for (const auto& [entity, text] : kEntities) {
        if (in.compare(pos, entity.size(), entity) == 0) {
          out += text;
          pos += entity.size();
          replaced = true;
          break;
        }
      }
    }
    if (!replaced) out.push_back(in[pos++]);
  }
  return out;
}

std::string_view Trim(std::string_view s) {
  const size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string CleanLines(std::string_view in) {
  std::string out;
  size_t pos = 0;
  while (pos <= in.size()) {
    size_t nl = in.find('\n', pos);
    if (nl == std::string_view::npos) nl = in.size();
    std::string_view line = Trim(in.substr(pos, nl - pos));
    pos = nl + 1;
    if (!line.empty() && (line[0] == '|' || line[0] == '!' ||
                          line.substr(0, 2) == "{|")) {
      line = {};
    }
    if (line.size() >= 2 && line.front() == '=' && line.back() == '=') {
      line = Trim(line.substr(line.find_first_not_of('='),
                              line.find_last_not_of('=') -
                                  line.find_first_not_of('=') + 1));
    }
    while (!line.empty() && std::string_view("*#:;").find(line[0]) !=
                                std::string_view::npos) {
      line = Trim(line.substr(1));
    }
    if (!out.empty()) out.push_back('\n');
    out.append(line);
  }
  return out;
}

bool IsAbbreviation(std::string_view word) {
  static constexpr std::array<std::string_view, 11> kAbbreviations = {
      "Mr.", "Mrs.", "Ms.", "Dr.", "St.", "Jr.",
      "vs.", "e.g.", "i.e.", "etc.", "U.S."};
  while (!word.empty() && std::string_view("(\"'[").find(word.front()) !=
                              std::string_view::npos) {
    word.remove_prefix(1);
  }
  if (word.size() == 2 && std::isupper(static_cast<unsigned char>(word[0]))) {
    return true;
  }
  return std::find(kAbbreviations.begin(), kAbbreviations.end(), word) !=
         kAbbreviations.end();
}

bool CanStartSentence(std::string_view text, size_t pos) {
  const unsigned char c = text[pos];
  if (std::isupper(c) || std::isdigit(c) || c == '"' || c == '\'') return true;
  // UTF-8 opening quotes.
  return text.compare(pos, 3, "\xE2\x80\x9C") == 0 ||
         text.compare(pos, 3, "\xE2\x80\x98") == 0;
}

std::string Squeeze(std::string_view text) {
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

void SplitLine(std::string_view line, std::vector<std::string>* out) {
  size_t start = 0;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c != '.' && c != '!' && c != '?') continue;
    size_t end = i + 1;
    while (end < line.size() &&
           std::string_view(".!?\"')]").find(line[end]) !=
               std::string_view::npos) {
      ++end;
    }
    if (end >= line.size() ||
        !std::isspace(static_cast<unsigned char>(line[end]))) {
      continue;
    }
    size_t next = end;
    while (next < line.size() &&
           std::isspace(static_cast<unsigned char>(line[next]))) {
      ++next;
    }
    if (next >= line.size() || !CanStartSentence(line, next)) continue;
    if (c == '.' && end == i + 1) {
      size_t word_start = line.find_last_of(" \t", i);
      word_start = word_start == std::string_view::npos ? 0 : word_start + 1;
      if (IsAbbreviation(line.substr(word_start, i + 1 - word_start))) {
        continue;
      }
    }
    std::string sentence = Squeeze(line.substr(start, end - start));
    if (!sentence.empty()) out->push_back(std::move(sentence));
    start = next;
    i = next - 1;
  }
  std::string rest = Squeeze(line.substr(std::min(start, line.size())));
  if (!rest.empty()) out->push_back(std::move(rest));
}

}  // namespace

std::string StripMarkup(std::string_view wikitext) {
  std::string text = RemoveHtmlComments(wikitext);
  text = RemoveRefs(text);
  text = RemoveInnermostTemplates(text);
  text = RemoveInnermostTemplates(text);
  text = StripLinks(text);
  text = RemoveQuotesAndTags(text);
  text = DecodeEntities(text);
  return CleanLines(text);
}

std::vector<std::string> SplitSentences(std::string_view text) {
  std::vector<std::string> out;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    SplitLine(text.substr(pos, nl - pos), &out);
    pos = nl + 1;
  }
  return out;
}

}  // namespace sparsedit::ingest
