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

#include "sparsedit/edit/transforms.h"

#include "gtest/gtest.h"
#include "sparsedit/edit/morphology.h"
#include "sparsedit/errors.h"

namespace sparsedit::edit {
namespace {

const TagSet kCore(TagSetVariant::kCore14);
const TagSet kExtended(TagSetVariant::kExtended34);

TEST(TagSetTest, SizesMatchPublishedDesigns) {
  EXPECT_EQ(TagSet(TagSetVariant::kKdra4).size(), 4);
  EXPECT_EQ(kCore.size(), 14);
  EXPECT_EQ(kExtended.size(), 34);
}

TEST(TagSetTest, StableListingOrder) {
  EXPECT_EQ(TagSet(TagSetVariant::kKdra4).names(),
            (std::vector<std::string>{"KEEP", "DELETE", "REPLACE", "APPEND"}));
  const auto core = kCore.names();
  EXPECT_EQ(core.front(), "APPEND");
  EXPECT_EQ(core[11], "TRANSFORM_CASE_UPPER_-1");
  EXPECT_EQ(core.back(), "TRANSFORM_VERB");
  const auto ext = kExtended.names();
  EXPECT_EQ(ext[4], "MERGE_SPACE");
  EXPECT_EQ(ext[14], "TRANSFORM_VERB_VBD_VB");
  EXPECT_EQ(ext[16], "TRANSFORM_VERB_VBD_VBN");
  EXPECT_EQ(ext[30], "TRANSFORM_VERB_VB_VBD");
  EXPECT_EQ(ext.back(), "TRANSFORM_VERB_VB_VBZ");
}

TEST(TagSetTest, NamesRoundTripThroughParser) {
  for (const EditTag& tag : kExtended.tags()) {
    auto parsed = ParseTagName(TagName(tag));
    ASSERT_TRUE(parsed.has_value()) << TagName(tag);
    EXPECT_TRUE(parsed->SameLabel(tag));
  }
  EXPECT_FALSE(ParseTagName("TRANSFORM_VERB_VB_VB").has_value());
  EXPECT_FALSE(ParseTagName("NOPE").has_value());
}

TEST(ApplyTransformTest, CaseRules) {
  EXPECT_EQ(ApplyTransform(EditTag::Of(TagKind::kCaseUpper), "nasa"), "NASA");
  EXPECT_EQ(ApplyTransform(EditTag::Of(TagKind::kCaseCapital1), "iphone"),
            "iPhone");
  EXPECT_EQ(ApplyTransform(EditTag::Of(TagKind::kCaseCapital), "jimi"), "Jimi");
  EXPECT_EQ(ApplyTransform(EditTag::Of(TagKind::kCaseLower), "CaT"), "cat");
  EXPECT_EQ(ApplyTransform(EditTag::Of(TagKind::kCaseUpperButLast), "pcs"),
            "PCs");
}

TEST(ApplyTransformTest, SplitWithoutHyphenIsInapplicable) {
  EXPECT_THROW(ApplyTransform(EditTag::Of(TagKind::kSplitHyphen), "cat"),
               InapplicableTransform);
}

TEST(ApplyTransformTest, HyphenSplitAndMerge) {
  const TokenSequence one = {"state-of-the-art"};
  EXPECT_EQ(ApplyTransform(EditTag::Of(TagKind::kSplitHyphen), one),
            (TokenSequence{"state", "of", "the", "art"}));
  const TokenSequence two = {"well", "known"};
  EXPECT_EQ(ApplyTransform(EditTag::Of(TagKind::kMergeHyphen), two),
            (TokenSequence{"well-known"}));
  const TokenSequence space = {"to", "day"};
  EXPECT_EQ(ApplyTransform(EditTag::Of(TagKind::kMergeSpace), space),
            (TokenSequence{"today"}));
  const TokenSequence lone = {"well"};
  EXPECT_THROW(ApplyTransform(EditTag::Of(TagKind::kMergeHyphen), lone),
               InapplicableTransform);
}

TEST(ApplyTransformTest, Agreement) {
  const EditTag plural = EditTag::Of(TagKind::kAgreementPlural);
  const EditTag singular = EditTag::Of(TagKind::kAgreementSingular);
  EXPECT_EQ(ApplyTransform(plural, "dog"), "dogs");
  EXPECT_EQ(ApplyTransform(plural, "box"), "boxes");
  EXPECT_EQ(ApplyTransform(plural, "city"), "cities");
  EXPECT_EQ(ApplyTransform(plural, "child"), "children");
  EXPECT_EQ(ApplyTransform(singular, "teeth"), "tooth");
  EXPECT_EQ(ApplyTransform(singular, "horses"), "horse");
  EXPECT_THROW(ApplyTransform(singular, "glass"), InapplicableTransform);
  EXPECT_THROW(ApplyTransform(plural, "3"), InapplicableTransform);
}

TEST(ApplyTransformTest, VerbForms) {
  EXPECT_GE(VerbLexiconSize(), 200);
  EXPECT_EQ(ApplyTransform(EditTag::Verb(VerbForm::kVBD, VerbForm::kVB), "went"),
            "go");
  EXPECT_EQ(ApplyTransform(EditTag::Verb(VerbForm::kVB, VerbForm::kVBG), "write"),
            "writing");
  // Regular fallback for a word outside the lexicon.
  EXPECT_EQ(ApplyTransform(EditTag::Verb(VerbForm::kVB, VerbForm::kVBD), "blink"),
            "blinked");
  EXPECT_THROW(
      ApplyTransform(EditTag::Verb(VerbForm::kVBG, VerbForm::kVB), "went"),
      InapplicableTransform);
  // The generic tag needs its slot.
  EXPECT_THROW(ApplyTransform(EditTag::Of(TagKind::kVerb), "went"),
               InapplicableTransform);
}

TEST(DetectTransformTest, SpecExamples) {
  auto capital = DetectTransform("jimi", "Jimi", kCore);
  ASSERT_TRUE(capital);
  EXPECT_EQ(TagName(*capital), "TRANSFORM_CASE_CAPITAL");
  auto plural = DetectTransform("dog", "dogs", kCore);
  ASSERT_TRUE(plural);
  EXPECT_EQ(TagName(*plural), "TRANSFORM_AGREEMENT_PLURAL");
  EXPECT_FALSE(DetectTransform("dog", "cat", kCore));
}

TEST(DetectTransformTest, PriorityAndTagSetScope) {
  // "walks" is both a plural and a VBZ; agreement outranks verbs.
  EXPECT_EQ(TagName(*DetectTransform("walk", "walks", kCore)),
            "TRANSFORM_AGREEMENT_PLURAL");
  EXPECT_EQ(TagName(*DetectTransform("go", "went", kCore)), "TRANSFORM_VERB");
  EXPECT_EQ(TagName(*DetectTransform("go", "went", kExtended)),
            "TRANSFORM_VERB_VB_VBD");
  EXPECT_FALSE(DetectTransform("jimi", "Jimi", TagSet(TagSetVariant::kKdra4)));
  EXPECT_FALSE(DetectMerge("to", "day", "today", kCore));
  EXPECT_TRUE(DetectMerge("to", "day", "today", kExtended));
}

// Soundness: whatever DetectTransform reports, ApplyTransform reproduces.
TEST(DetectTransformTest, DetectedTagsReproduceTarget) {
  const std::vector<std::string> words = {
      "dog", "dogs", "Dog", "DOG", "go", "went", "goes", "going", "gone",
      "walk", "walked", "walking", "walks", "iphone", "iPhone", "PCs", "pcs",
      "child", "children", "box", "boxes", "be", "was", "is"};
  for (const TagSet* tags : {&kCore, &kExtended}) {
    for (const auto& a : words) {
      for (const auto& b : words) {
        auto tag = DetectTransform(a, b, *tags);
        if (!tag) continue;
        ASSERT_TRUE(tags->Contains(*tag));
        if (tag->kind == TagKind::kVerb) {
          EXPECT_TRUE(IsVerbFormChange(a, b));
        } else {
          EXPECT_EQ(ApplyTransform(*tag, a), b) << a << " -> " << b;
        }
      }
    }
  }
}

}  // namespace
}  // namespace sparsedit::edit
