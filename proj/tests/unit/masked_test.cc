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

#include "sparsedit/edit/masked.h"

#include "gtest/gtest.h"
#include "sparsedit/edit/align.h"
#include "sparsedit/errors.h"

namespace sparsedit::edit {
namespace {

const TagSet kCore(TagSetVariant::kCore14);

TEST(RenderMaskedInputTest, AllKeepHasNoMasks) {
  MaskedInput masked = RenderMaskedInput({"a", "b"}, IdentityPlan(2), 4);
  EXPECT_EQ(masked.tokens, (TokenSequence{"a", "b"}));
  EXPECT_TRUE(masked.gold.empty());
}

TEST(RenderMaskedInputTest, AppendPadsGoldToMaskBudget) {
  const TokenSequence source = {"that", "would", "retire"};
  EditPlan plan = Align(source, {"that", "he", "would", "retire"}, kCore);
  MaskedInput masked = RenderMaskedInput(source, plan, 4);
  EXPECT_EQ(masked.tokens,
            (TokenSequence{"that", "[MASK]", "[MASK]", "[MASK]", "[MASK]",
                           "would", "retire"}));
  EXPECT_EQ(masked.gold, (TokenSequence{"he", "[PAD]", "[PAD]", "[PAD]"}));
}

TEST(RenderMaskedInputTest, DeletedWordIsWrapped) {
  const TokenSequence source = {"a", "great", "musician"};
  EditPlan plan = Align(source, {"a", "musician"}, kCore);
  MaskedInput masked = RenderMaskedInput(source, plan, 4);
  EXPECT_EQ(masked.tokens, (TokenSequence{"a", "[DELETE]", "great",
                                          "[/DELETE]", "musician"}));
  EXPECT_TRUE(masked.gold.empty());
}

TEST(RenderMaskedInputTest, ReplaceAndVerbLayouts) {
  const TokenSequence source = {"he", "go", "big"};
  EditPlan plan = Align(source, {"he", "went", "large"}, kCore);
  MaskedInput masked = RenderMaskedInput(source, plan, 2);
  EXPECT_EQ(masked.tokens,
            (TokenSequence{"he", "[MASK]", "[MASK]", "[TRANSFORM_VERB]", "go",
                           "[/TRANSFORM_VERB]", "[MASK]", "[MASK]", "[DELETE]",
                           "big", "[/DELETE]"}));
  EXPECT_EQ(masked.gold, (TokenSequence{"went", "[PAD]", "large", "[PAD]"}));
}

TEST(RenderMaskedInputTest, TransformsAreRealized) {
  const TokenSequence source = {"the", "CAT", "well", "known"};
  EditPlan plan = Align(source, {"the", "cat", "well-known"}, kCore);
  EXPECT_EQ(RenderMaskedInput(source, plan, 4).tokens,
            (TokenSequence{"the", "cat", "well-known"}));
}

TEST(RenderMaskedInputTest, OversizeInsertionThrows) {
  const TokenSequence source = {"a"};
  EditPlan plan = Align(source, {"a", "b", "c", "d"}, kCore);
  EXPECT_THROW(RenderMaskedInput(source, plan, 2), InsertionTooLong);
}

TEST(PlanToExamplesTest, IdentityPair) {
  auto ex = PlanToExamples({"a b", "a b", "c", "fluency"}, kCore, 4);
  ASSERT_TRUE(ex);
  EXPECT_EQ(ex->tagging.labels,
            std::vector<int>(3, kCore.keep_index()));
  EXPECT_TRUE(ex->generation.gold.empty());
}

TEST(PlanToExamplesTest, FluencyPairHasOneAppend) {
  auto ex = PlanToExamples(
      {"he announced that would retire", "he announced that he would retire",
       "Minor grammatical fix", "fluency"},
      kCore, 4);
  ASSERT_TRUE(ex);
  int appends = 0;
  for (int label : ex->tagging.labels) {
    appends += kCore.At(label).kind == TagKind::kAppend;
  }
  EXPECT_EQ(appends, 1);
  ASSERT_EQ(ex->plan.insertions.size(), 1u);
  EXPECT_EQ(ex->plan.insertions[0].size(), 1u);
}

TEST(PlanToExamplesTest, DropsInsertionsLongerThanBudget) {
  EXPECT_FALSE(PlanToExamples({"a", "a b c d e f g", "", std::nullopt}, kCore, 4));
}

TEST(PlanToExamplesTest, JsonLineFieldOrder) {
  auto ex = PlanToExamples({"well known", "a well-known", "c", "fluency"},
                           kCore, 4);
  ASSERT_TRUE(ex);
  EXPECT_EQ(ToJsonLine(*ex),
            R"({"source":"well known","target":"a well-known","intent":"fluency",)"
            R"("tags":["APPEND","MERGE_HYPHEN","KEEP"],"insertions":{"0":["a"]}})");
}

}  // namespace
}  // namespace sparsedit::edit
