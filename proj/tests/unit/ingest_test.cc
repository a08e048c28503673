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

#include <fstream>
#include <random>
#include <sstream>
#include <streambuf>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "sparsedit/errors.h"
#include "sparsedit/ingest/dump.h"
#include "sparsedit/ingest/filters.h"
#include "sparsedit/ingest/pipeline.h"
#include "sparsedit/ingest/wikitext.h"
#include "support/test_data.h"

namespace sparsedit::ingest {
namespace {

using ::testing::ElementsAre;
using ::testing::IsEmpty;

std::vector<Page> ReadAll(const std::string& dump) {
  std::istringstream in(dump);
  auto reader = NewPageReader(in);
  std::vector<Page> pages;
  Page page;
  while (reader->Next(&page)) pages.push_back(page);
  return pages;
}

std::string RunToJsonl(const std::string& dump, IngestStats* stats = nullptr) {
  std::istringstream in(dump);
  auto reader = NewPageReader(in);
  std::string out;
  IngestStats s = RunIngest(*reader, FilterConfig{}, [&](const SentencePair& p) {
    out += PairToJson(p) + "\n";
  });
  if (stats != nullptr) *stats = s;
  return out;
}

TEST(DumpReaderTest, EmptyDump) {
  EXPECT_THAT(ReadAll(""), IsEmpty());
  EXPECT_THAT(ReadAll("  \n"), IsEmpty());
}

TEST(DumpReaderTest, XmlPagesAndOrderedRevisions) {
  auto pages = ReadAll(testing::ReadTestFile("ingest/sample_dump.xml"));
  ASSERT_EQ(pages.size(), 3u);
  EXPECT_EQ(pages[0].page_id, 10);
  EXPECT_EQ(pages[0].title, "Bridge");
  ASSERT_EQ(pages[0].revisions.size(), 4u);
  EXPECT_EQ(pages[0].revisions[1].parent_rev_id, 100);
  EXPECT_EQ(pages[0].revisions[1].comment, "fix [[WP:TYPO]]");
  // Missing <comment> element.
  EXPECT_EQ(pages[0].revisions[3].comment, "");
  // Contributor ids must not clobber revision ids.
  EXPECT_EQ(pages[0].revisions[0].rev_id, 100);
  std::vector<int64_t> chess;
  for (const auto& r : pages[2].revisions) chess.push_back(r.rev_id);
  EXPECT_THAT(chess, ElementsAre(300, 301, 302));
  EXPECT_NE(pages[2].revisions[0].text.find("<ref>"), std::string::npos);
}

TEST(DumpReaderTest, JsonlMatchesXml) {
  auto xml = ReadAll(testing::ReadTestFile("ingest/sample_dump.xml"));
  auto jsonl = ReadAll(testing::ReadTestFile("ingest/sample_dump.jsonl"));
  ASSERT_EQ(xml.size(), jsonl.size());
  for (size_t p = 0; p < xml.size(); ++p) {
    ASSERT_EQ(xml[p].revisions.size(), jsonl[p].revisions.size());
    for (size_t r = 0; r < xml[p].revisions.size(); ++r) {
      const auto& a = xml[p].revisions[r];
      const auto& b = jsonl[p].revisions[r];
      EXPECT_EQ(a.page_id, b.page_id);
      EXPECT_EQ(a.rev_id, b.rev_id);
      EXPECT_EQ(a.parent_rev_id, b.parent_rev_id);
      EXPECT_EQ(a.comment, b.comment);
      EXPECT_EQ(a.text, b.text);
    }
  }
}

TEST(DumpReaderTest, MalformedXmlReportsOffset) {
  const std::string dump = "<mediawiki><page><id>1</id><revision><id>2</id>"
                           "<text>abc</revision></page></mediawiki>";
  try {
    ReadAll(dump);
    FAIL() << "expected MalformedDump";
  } catch (const MalformedDump& e) {
    const auto tag = static_cast<int64_t>(dump.find("</revision>"));
    EXPECT_GE(e.byte_offset(), tag);
    EXPECT_LT(e.byte_offset(), tag + 11);
  }
  EXPECT_THROW(ReadAll("<mediawiki><page><id>x</id></page></mediawiki>"),
               MalformedDump);
  EXPECT_THROW(ReadAll("<mediawiki><page><revision><id>1</id></revision>"
                       "</page></mediawiki>"),
               MalformedDump);
  EXPECT_THROW(ReadAll("<mediawiki><page><id>1</id>"), MalformedDump);
  EXPECT_THROW(ReadAll("nonsense"), MalformedDump);
}

TEST(DumpReaderTest, MalformedJsonlReportsLineOffset) {
  const std::string good = R"({"page_id":1,"rev_id":1,"text":"a"})"
                           "\n";
  try {
    ReadAll(good + "{\"page_id\":1,\n");
    FAIL() << "expected MalformedDump";
  } catch (const MalformedDump& e) {
    EXPECT_GE(e.byte_offset(), static_cast<int64_t>(good.size()));
  }
  try {
    ReadAll(good + R"({"page_id":1})" + "\n");
    FAIL() << "expected MalformedDump";
  } catch (const MalformedDump& e) {
    EXPECT_EQ(e.byte_offset(), static_cast<int64_t>(good.size()));
  }
  EXPECT_THROW(ReadAll(good + good), MalformedDump);  // Duplicate rev_id.
}

TEST(CommentFilterTest, Examples) {
  Decision d = FilterComment("fix [[WP:TYPO]]");
  EXPECT_TRUE(d.keep);
  EXPECT_EQ(d.text, "fix typo");
  d = FilterComment("added photo of the bridge");
  EXPECT_FALSE(d.keep);
  EXPECT_EQ(d.reason, "blacklist:photo");
  d = FilterComment("");
  EXPECT_FALSE(d.keep);
  EXPECT_EQ(d.reason, "empty");
  EXPECT_EQ(FilterComment("   ").reason, "empty");
}

TEST(CommentFilterTest, EveryBlacklistTermDrops) {
  ASSERT_EQ(CommentBlacklist().size(), 12u);
  for (const auto& term : CommentBlacklist()) {
    const std::string base = "copyedit for clarity";
    ASSERT_TRUE(FilterComment(base).keep);
    for (const std::string& comment :
         {term + " " + base, base + " " + term, "x" + term + "x"}) {
      Decision d = FilterComment(comment);
      EXPECT_FALSE(d.keep) << comment;
      EXPECT_EQ(d.reason, "blacklist:" + term) << comment;
    }
    std::string upper = term;
    for (char& c : upper) c = static_cast<char>(std::toupper(c));
    EXPECT_FALSE(FilterComment("Fixed " + upper).keep) << upper;
  }
}

TEST(CommentFilterTest, ShortcutExpansion) {
  EXPECT_EQ(FilterComment("[[WP:NPOV|POV]]").text, "neutral point of view");
  EXPECT_EQ(FilterComment("[[WP:TYPO]]").text, "typo");
  EXPECT_EQ(FilterComment("per [[WP:RS]]").text, "per reliable sources");
  EXPECT_EQ(FilterComment("rm [[WP:SYN]] claim").text, "rm synthesis claim");
  EXPECT_EQ(FilterComment("  two\tspaces ").text, "two spaces");
}

TEST(StripMarkupTest, Examples) {
  EXPECT_EQ(StripMarkup("a [[dog|hound]] ran"), "a hound ran");
  EXPECT_EQ(StripMarkup("x {{cite web}} y"), "x  y");
  EXPECT_EQ(StripMarkup("plain"), "plain");
}

TEST(StripMarkupTest, Constructs) {
  EXPECT_EQ(StripMarkup("a [[dog]]s ran"), "a dogs ran");
  EXPECT_EQ(StripMarkup("x {{a|{{b}}}} y"), "x  y");
  EXPECT_EQ(StripMarkup("a<ref name=\"n\">cite</ref> b<ref name=\"m\" /> c"),
            "a b c");
  EXPECT_EQ(StripMarkup("see [http://example.org the site] and [http://x.y]"),
            "see the site and");
  EXPECT_EQ(StripMarkup("'''bold''' and ''it''"), "bold and it");
  EXPECT_EQ(StripMarkup("== History ==\nText"), "History\nText");
  EXPECT_EQ(StripMarkup("[[File:X.jpg|thumb|A [[cap]]]]Body"), "Body");
  EXPECT_EQ(StripMarkup("[[Category:Birds]]"), "");
  EXPECT_EQ(StripMarkup("a<!-- hidden -->b"), "ab");
  EXPECT_EQ(StripMarkup("* item"), "item");
  EXPECT_EQ(StripMarkup("a&nbsp;b <small>c</small>"), "a b c");
  // Unterminated constructs pass through.
  EXPECT_EQ(StripMarkup("a [[b c"), "a [[b c");
  EXPECT_EQ(StripMarkup("{{a|{{b|{{c}}}}}}"), "{{a|}}");
}

TEST(SplitSentencesTest, Examples) {
  EXPECT_THAT(SplitSentences("A b. C d."), ElementsAre("A b.", "C d."));
  EXPECT_THAT(SplitSentences("Dr. Smith left."), ElementsAre("Dr. Smith left."));
  EXPECT_THAT(SplitSentences(""), IsEmpty());
}

TEST(SplitSentencesTest, Rules) {
  EXPECT_THAT(SplitSentences("It rained. then it stopped."),
              ElementsAre("It rained. then it stopped."));
  EXPECT_THAT(SplitSentences("Why? \"Because.\" 1990 came."),
              ElementsAre("Why?", "\"Because.\"", "1990 came."));
  EXPECT_THAT(SplitSentences("He saw e.g. Rome. The U.S. Army came."),
              ElementsAre("He saw e.g. Rome.", "The U.S. Army came."));
  EXPECT_THAT(SplitSentences("J. R. Smith wrote it. Then left."),
              ElementsAre("J. R. Smith wrote it.", "Then left."));
  EXPECT_THAT(SplitSentences("Heading\nBody  text here"),
              ElementsAre("Heading", "Body text here"));
}

TEST(ExtractPairsTest, Examples) {
  EXPECT_THAT(ExtractSentencePairs(std::string("A b. C d."),
                                   std::string("A b. C d."), "c"),
              IsEmpty());
  auto one = ExtractSentencePairs(std::string("A b. C d. E f."),
                                  std::string("A b. C x. E f."), "c");
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].source, "C d.");
  EXPECT_EQ(one[0].target, "C x.");
  EXPECT_EQ(one[0].comment, "c");
  EXPECT_THAT(ExtractSentencePairs(std::string("A b. C d."),
                                   std::string("A b. New one. C d."), "c"),
              IsEmpty());
}

TEST(ExtractPairsTest, PositionalPairingInsideBlocks) {
  std::vector<std::string> src = {"s1", "a", "b", "s2", "c"};
  std::vector<std::string> tgt = {"s1", "a2", "s2", "c2", "c3"};
  auto pairs = ExtractSentencePairs(src, tgt, "");
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_EQ(pairs[0].source, "a");
  EXPECT_EQ(pairs[0].target, "a2");
  EXPECT_EQ(pairs[1].source, "c");
  EXPECT_EQ(pairs[1].target, "c2");
}

TEST(FilterPairTest, Examples) {
  FilterConfig config;
  EXPECT_EQ(FilterPair({"We bought 2 units.", "We bought 3 units.", "fix", {}},
                       config).reason,
            "number_time");
  EXPECT_EQ(FilterPair({"alpha beta gamma delta", "one two three four", "x", {}},
                       config).reason,
            "bleu_min");
  Decision fluency = FilterPair(
      {"At the end of the 1986 season, he announced that would retire after "
       "completing the 1987 NFL season.",
       "At the end of the 1986 season, he announced that he would retire "
       "after completing the 1987 NFL season.",
       "fluency", {}},
      config);
  EXPECT_TRUE(fluency.keep) << fluency.reason;
}

TEST(FilterPairTest, OtherReasons) {
  FilterConfig config;
  EXPECT_EQ(FilterPair({"It opened in May 2001.", "It opened in June 2001.",
                        "", {}}, config).reason,
            "number_time");
  EXPECT_EQ(FilterPair({"A b c.", "A b c d e f g h i j k l m.", "", {}}, config)
                .reason,
            "len_ratio");
  config.check_len_ratio = false;
  EXPECT_NE(FilterPair({"A b c.", "A b c d e f g h i j k l m.", "", {}}, config)
                .reason,
            "len_ratio");
  config = FilterConfig{};
  config.bleu_max = 0.3;
  EXPECT_EQ(FilterPair({"She sing in the choir.", "She sings in the choir.",
                        "", {}}, config).reason,
            "bleu_max");
  config = FilterConfig{};
  EXPECT_EQ(FilterPair({"She sing in the choir.", "She sings in the choir.",
                        "She sing in the choir", {}}, config).reason,
            "comment_sim");
  EXPECT_EQ(FilterPair({"a  b", "a b", "", {}}, config).reason, "identical");
}

TEST(PipelineTest, GoldenSample) {
  IngestStats stats;
  const std::string out =
      RunToJsonl(testing::ReadTestFile("ingest/sample_dump.xml"), &stats);
  EXPECT_EQ(out, testing::ReadTestFile("ingest/expected_pairs.jsonl"));
  EXPECT_EQ(RunToJsonl(testing::ReadTestFile("ingest/sample_dump.jsonl")), out);
  EXPECT_EQ(stats.pages, 3);
  EXPECT_EQ(stats.revisions, 9);
  EXPECT_EQ(stats.revision_dispositions,
            (std::map<std::string, int64_t>{{"keep", 4},
                                            {"no_parent", 3},
                                            {"empty", 1},
                                            {"blacklist:photo", 1}}));
  EXPECT_EQ(stats.candidate_pairs, 5);
  EXPECT_EQ(stats.pair_dispositions,
            (std::map<std::string, int64_t>{
                {"keep", 3}, {"number_time", 1}, {"bleu_min", 1}}));
}

TEST(PipelineTest, Deterministic) {
  const std::string dump = testing::ReadTestFile("ingest/sample_dump.xml");
  EXPECT_EQ(RunToJsonl(dump), RunToJsonl(dump));
}

TEST(PipelineTest, PairJsonRoundTrip) {
  SentencePair p{"a \"b\"", "c", "d", std::string("lowercase")};
  SentencePair q = PairFromJson(PairToJson(p));
  EXPECT_EQ(q.source, p.source);
  EXPECT_EQ(q.target, p.target);
  EXPECT_EQ(q.comment, p.comment);
  EXPECT_EQ(q.intent, p.intent);
  EXPECT_THROW(PairFromJson("{\"source\":\"a\"}"), Error);
}

std::string RandomRevisionText(std::mt19937_64& rng) {
  static const std::vector<std::string> sentences = {
      "The cat sat on the mat.", "The cat sits on the mat.",
      "A dog ran home.",         "A dog runs home.",
      "It was built in 1990.",   "It was built in 1991.",
      "Birds sing loudly.",      "[[Bird|Birds]] sing {{cn}} loudly."};
  std::uniform_int_distribution<size_t> pick(0, sentences.size() - 1);
  std::uniform_int_distribution<int> len(0, 4);
  std::string text;
  for (int k = len(rng); k > 0; --k) text += sentences[pick(rng)] + " ";
  return text;
}

TEST(PipelinePropertyTest, EveryRevisionGetsOneDisposition) {
  static const std::vector<std::string> comments = {
      "", "fix", "added image", "[[WP:TYPO]]", "grammar", "reply to x"};
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::string dump;
    int64_t rev_id = 1, expected_revisions = 0;
    for (int page = 1; page <= 5; ++page) {
      const int n = static_cast<int>(rng() % 6);
      for (int r = 0; r < n; ++r, ++rev_id, ++expected_revisions) {
        nlohmann::json j = {{"page_id", page},
                            {"rev_id", rev_id},
                            {"comment", comments[rng() % comments.size()]},
                            {"text", RandomRevisionText(rng)}};
        if (r > 0 && rng() % 3 != 0) {
          j["parent_rev_id"] = rev_id - 1 - static_cast<int64_t>(rng() % r);
        }
        dump += j.dump() + "\n";
      }
    }
    IngestStats stats;
    const std::string out = RunToJsonl(dump, &stats);
    int64_t revisions = 0, pairs = 0;
    for (const auto& [reason, count] : stats.revision_dispositions) {
      revisions += count;
    }
    for (const auto& [reason, count] : stats.pair_dispositions) pairs += count;
    EXPECT_EQ(revisions, expected_revisions);
    EXPECT_EQ(stats.revisions, expected_revisions);
    EXPECT_EQ(pairs, stats.candidate_pairs);
    const int64_t kept = stats.pair_dispositions.count("keep")
                             ? stats.pair_dispositions.at("keep")
                             : 0;
    EXPECT_EQ(static_cast<int64_t>(std::count(out.begin(), out.end(), '\n')),
              kept);
    EXPECT_EQ(RunToJsonl(dump), out);
  }
}

// Produces a synthetic XML dump page by page without materializing it.
class SyntheticDumpBuf : public std::streambuf {
 public:
  explicit SyntheticDumpBuf(int pages) : pages_(pages) {
    chunk_ = "<mediawiki>\n";
    Reset();
  }

 protected:
  int_type underflow() override {
    if (gptr() < egptr()) return traits_type::to_int_type(*gptr());
    if (next_page_ > pages_ + 1) return traits_type::eof();
    chunk_ = next_page_ <= pages_ ? PageXml(next_page_) : "</mediawiki>\n";
    ++next_page_;
    Reset();
    return traits_type::to_int_type(*gptr());
  }

 private:
  void Reset() { setg(chunk_.data(), chunk_.data(), chunk_.data() + chunk_.size()); }

  static std::string PageXml(int page) {
    const std::string id = std::to_string(page);
    std::string body;
    for (int k = 0; k < 12; ++k) {
      body += "Sentence number " + std::to_string(k) + " of page " + id +
              " talks about the river. ";
    }
    std::string xml = "<page><title>P" + id + "</title><id>" + id + "</id>";
    for (int r = 0; r < 3; ++r) {
      const std::string rev = std::to_string(page * 10 + r);
      xml += "<revision><id>" + rev + "</id>";
      if (r > 0) xml += "<parentid>" + std::to_string(page * 10 + r - 1) + "</parentid>";
      xml += "<comment>copyedit</comment><text>" + body +
             (r == 2 ? "The bridge were old. " : "The bridge was old. ") +
             "</text></revision>";
    }
    return xml + "</page>\n";
  }

  int pages_;
  int next_page_ = 1;
  std::string chunk_;
};

int64_t PeakRssKb() {
  std::ifstream status("/proc/self/status");
  std::string line;
  while (std::getline(status, line)) {
    if (line.rfind("VmHWM:", 0) == 0) return std::stoll(line.substr(6));
  }
  return -1;
}

IngestStats RunSynthetic(int pages, int64_t* kept) {
  SyntheticDumpBuf buf(pages);
  std::istream in(&buf);
  auto reader = NewPageReader(in);
  return RunIngest(*reader, FilterConfig{},
                   [kept](const SentencePair&) { ++*kept; });
}

TEST(PipelineStreamingTest, MemoryDoesNotGrowWithPageCount) {
  int64_t kept = 0;
  IngestStats warmup = RunSynthetic(500, &kept);
  ASSERT_EQ(warmup.pages, 500);
  const int64_t baseline = PeakRssKb();
  ASSERT_GT(baseline, 0);
  kept = 0;
  IngestStats stats = RunSynthetic(10000, &kept);
  EXPECT_EQ(stats.pages, 10000);
  EXPECT_EQ(stats.revisions, 30000);
  EXPECT_EQ(kept, 10000);
  // The 10k-page dump is about 30 MB of XML; the budget is a small fraction.
  EXPECT_LT(PeakRssKb() - baseline, 4 * 1024);
}

}  // namespace
}  // namespace sparsedit::ingest
