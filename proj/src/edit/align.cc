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

#include "sparsedit/edit/align.h"

#include <limits>
#include <optional>
#include <vector>

#include "sparsedit/edit/transforms.h"

namespace sparsedit::edit {

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

// Transform candidates between source position i and target position j.
struct Candidates {
  std::optional<EditTag> one_to_one;  // case, agreement or verb
  std::optional<EditTag> merge;       // consumes source i, i+1 -> target j
  int split_parts = 0;                // source i -> target j..j+parts
};

class Aligner {
 public:
  Aligner(const TokenSequence& source, const TokenSequence& target,
          const TagSet& tag_set)
      : s_(source),
        t_(target),
        n_(source.size()),
        m_(target.size()),
        candidates_((n_ + 1) * (m_ + 1)),
        cost_((n_ + 1) * (m_ + 1) * 2, kInf) {
    for (size_t i = 0; i < n_; ++i) {
      int parts = 1;
      for (char c : s_[i]) parts += c == '-';
      for (size_t j = 0; j < m_; ++j) {
        Candidates& c = candidates_[Index(i, j)];
        if (s_[i] != t_[j]) c.one_to_one = DetectTransform(s_[i], t_[j], tag_set);
        if (i + 1 < n_) c.merge = DetectMerge(s_[i], s_[i + 1], t_[j], tag_set);
        if (parts >= 2 && j + parts <= m_ &&
            DetectSplit(s_[i],
                        std::span<const std::string>(t_).subspan(j, parts),
                        tag_set)) {
          c.split_parts = parts;
        }
      }
    }
    Fill();
  }

  EditPlan Trace() const {
    EditPlan plan;
    plan.tags.assign(n_ + 1, EditTag::Keep());
    size_t host = 0;  // plan position that receives insertions
    size_t i = 0, j = 0;
    int h = 1;
    auto add_to_host = [&](const std::string& token) {
      EditTag& tag = plan.tags[host];
      if (tag.slot < 0) {
        tag.kind = host == 0 || tag.kind == TagKind::kKeep ? TagKind::kAppend
                                                           : tag.kind;
        tag.slot = static_cast<int>(plan.insertions.size());
        plan.insertions.emplace_back();
      }
      plan.insertions[tag.slot].push_back(token);
    };
    while (i < n_ || j < m_) {
      const int here = Cost(i, j, h);
      if (i < n_ && j < m_) {
        const Candidates& c = candidates_[Index(i, j)];
        if (s_[i] == t_[j] && Cost(i + 1, j + 1, 1) + kKeepCost == here) {
          host = i + 1;
          i += 1, j += 1, h = 1;
          continue;
        }
        const bool verb = c.one_to_one && IsVerbTag(*c.one_to_one);
        if (c.one_to_one && !verb &&
            Cost(i + 1, j + 1, 0) + kTransformCost == here) {
          plan.tags[i + 1] = *c.one_to_one;
          i += 1, j += 1, h = 0;
          continue;
        }
        if (c.merge && Cost(i + 2, j + 1, 0) + kTransformCost == here) {
          plan.tags[i + 1] = *c.merge;
          plan.tags[i + 2] = EditTag::Of(TagKind::kMerged);
          i += 2, j += 1, h = 0;
          continue;
        }
        if (c.split_parts > 0 &&
            Cost(i + 1, j + c.split_parts, 0) + kTransformCost == here) {
          plan.tags[i + 1] = EditTag::Of(TagKind::kSplitHyphen);
          i += 1, j += c.split_parts, h = 0;
          continue;
        }
        if (verb && Cost(i + 1, j + 1, 0) + kTransformCost == here) {
          EditTag tag = *c.one_to_one;
          if (tag.kind == TagKind::kVerb) {
            tag.slot = static_cast<int>(plan.insertions.size());
            plan.insertions.push_back({t_[j]});
          }
          plan.tags[i + 1] = tag;
          i += 1, j += 1, h = 0;
          continue;
        }
        if (s_[i] != t_[j] && Cost(i + 1, j + 1, 1) + kReplaceCost == here) {
          plan.tags[i + 1] = EditTag::WithSlot(
              TagKind::kReplace, static_cast<int>(plan.insertions.size()));
          plan.insertions.push_back({t_[j]});
          host = i + 1;
          i += 1, j += 1, h = 1;
          continue;
        }
      }
      if (i < n_ && Cost(i + 1, j, h) + kDeleteCost == here) {
        plan.tags[i + 1] = EditTag::Of(TagKind::kDelete);
        i += 1;
        continue;
      }
      // Only an insertion is left.
      add_to_host(t_[j]);
      j += 1;
    }
    return plan;
  }

 private:
  static bool IsVerbTag(const EditTag& tag) {
    return tag.kind == TagKind::kVerb || tag.kind == TagKind::kVerbForm;
  }

  size_t Index(size_t i, size_t j) const { return i * (m_ + 1) + j; }
  int Cost(size_t i, size_t j, int h) const {
    return cost_[Index(i, j) * 2 + h];
  }

  // Suffix DP: cost_[i, j, h] aligns s[i:] with t[j:] where h says whether
  // an insertion may attach at this point.
  void Fill() {
    for (size_t i = n_ + 1; i-- > 0;) {
      for (size_t j = m_ + 1; j-- > 0;) {
        for (int h = 0; h < 2; ++h) {
          int best = kInf;
          auto relax = [&](int next, int step) {
            if (next < kInf) best = std::min(best, next + step);
          };
          if (i == n_ && j == m_) best = 0;
          if (i < n_ && j < m_) {
            const Candidates& c = candidates_[Index(i, j)];
            if (s_[i] == t_[j]) {
              relax(Cost(i + 1, j + 1, 1), kKeepCost);
            } else {
              relax(Cost(i + 1, j + 1, 1), kReplaceCost);
            }
            if (c.one_to_one) relax(Cost(i + 1, j + 1, 0), kTransformCost);
            if (c.merge) relax(Cost(i + 2, j + 1, 0), kTransformCost);
            if (c.split_parts > 0) {
              relax(Cost(i + 1, j + c.split_parts, 0), kTransformCost);
            }
          }
          if (i < n_) relax(Cost(i + 1, j, h), kDeleteCost);
          if (j < m_ && h == 1) relax(Cost(i, j + 1, 1), kInsertCost);
          cost_[Index(i, j) * 2 + h] = best;
        }
      }
    }
  }

  const TokenSequence& s_;
  const TokenSequence& t_;
  size_t n_, m_;
  std::vector<Candidates> candidates_;
  std::vector<int> cost_;
};

}  // namespace

EditPlan Align(const TokenSequence& source, const TokenSequence& target,
               const TagSet& tag_set) {
  return Aligner(source, target, tag_set).Trace();
}

double PlanCost(const EditPlan& plan) {
  int half_units = 0;
  for (const EditTag& tag : plan.tags) {
    const int inserted =
        tag.slot >= 0 ? static_cast<int>(plan.insertions[tag.slot].size()) : 0;
    switch (tag.kind) {
      case TagKind::kKeep:
      case TagKind::kMerged:
        break;
      case TagKind::kAppend:
        half_units += inserted * kInsertCost;
        break;
      case TagKind::kReplace:
        half_units += kReplaceCost + (inserted - 1) * kInsertCost;
        break;
      case TagKind::kDelete:
        half_units += kDeleteCost;
        break;
      default:
        half_units += kTransformCost;
    }
  }
  return half_units / 2.0;
}

}  // namespace sparsedit::edit
