// Copyright 2026 The tepir Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include "tepir/params.hpp"

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "tepir/error.hpp"

namespace tepir {
namespace {

ErrorCode derive_error(int n, int k, int t, int e, std::optional<std::uint64_t> q = std::nullopt) {
  try {
    derive(n, k, t, e, q);
  } catch (const Error& err) {
    return err.code();
  }
  ADD_FAILURE() << "accepted (" << n << "," << k << "," << t << "," << e << ")";
  return ErrorCode::kUsage;
}

TEST(Derive, TwoFilesThreeDatabases) {
  const auto p = derive(3, 2, 2, 1);
  EXPECT_EQ(p.j, 5);
  EXPECT_EQ(p.l, 13);
  EXPECT_EQ(p.round_download, 15);
  EXPECT_EQ(p.q, 11u);
  ASSERT_EQ(p.rand_partition.size(), 2u);
  EXPECT_EQ(p.rand_partition[0].size, 3);
  EXPECT_EQ(p.rand_partition[1].size, 2);
  EXPECT_EQ(p.msg_partition[0].size, 6);
  EXPECT_EQ(p.msg_partition[1].size, 7);
  EXPECT_EQ(p.msg_partition[1].start, 6);
  EXPECT_EQ(p.rand_partition[1].start, 3);
}

TEST(Derive, PaperSizes) {
  const auto three = derive(3, 3, 2, 1);
  EXPECT_EQ(three.j, 19);
  EXPECT_EQ(three.l, 62);
  EXPECT_EQ(three.round_download, 57);
  const auto four = derive(4, 2, 3, 2);
  EXPECT_EQ(four.j, 7);
  EXPECT_EQ(four.l, 18);
  EXPECT_EQ(four.round_download, 28);
}

TEST(Derive, InvalidParameters) {
  EXPECT_EQ(derive_error(3, 2, 2, 3), ErrorCode::kInvalidParameters);
  EXPECT_EQ(derive_error(3, 2, 4, 1), ErrorCode::kInvalidParameters);
  EXPECT_EQ(derive_error(3, 0, 2, 1), ErrorCode::kInvalidParameters);
  EXPECT_EQ(derive_error(3, 2, 0, 0), ErrorCode::kInvalidParameters);
  EXPECT_EQ(derive_error(3, 2, 2, -1), ErrorCode::kInvalidParameters);
  EXPECT_EQ(derive_error(3, 2, 3, 3), ErrorCode::kInvalidParameters);
}

TEST(Derive, FieldSelection) {
  EXPECT_EQ(derive(3, 2, 2, 1, 13).q, 13u);
  EXPECT_EQ(derive_error(3, 2, 2, 1, 12), ErrorCode::kNonPrimeModulus);
  EXPECT_EQ(derive_error(3, 2, 2, 1, 7), ErrorCode::kFieldTooSmall);
  EXPECT_EQ(derive(4, 2, 3, 1).q, 17u);
  EXPECT_EQ(derive(3, 3, 2, 1).q, 29u);
  EXPECT_EQ(derive_error(10, 10, 7, 3), ErrorCode::kFieldTooSmall);
}

TEST(Derive, AllColludeShape) {
  const auto p = derive(3, 2, 3, 1);
  EXPECT_TRUE(p.all_collude());
  EXPECT_EQ(p.l, 2);
  EXPECT_EQ(p.j, 2 * 3);
  EXPECT_TRUE(p.msg_partition.empty());
}

TEST(CanonicalSubsets, SizeThenLexicographic) {
  const auto s = canonical_subsets(3);
  std::vector<std::string> labels;
  for (Subset x : s) labels.push_back(subset_label(x));
  EXPECT_EQ(labels, (std::vector<std::string>{"{1}", "{2}", "{3}", "{1,2}", "{1,3}", "{2,3}",
                                              "{1,2,3}"}));
}

TEST(SubsetPlan, TwoFiles) {
  const auto p = derive(3, 2, 2, 1);
  const auto plan = subset_plan(p, 0);
  ASSERT_EQ(plan.desired_family.size(), 2u);
  EXPECT_EQ(subset_label(plan.desired_family[0].members), "{1}");
  EXPECT_EQ(plan.desired_family[0].length, 6);
  EXPECT_EQ(subset_label(plan.desired_family[1].members), "{1,2}");
  EXPECT_EQ(plan.desired_family[1].length, 3);
  ASSERT_EQ(plan.undesired[1].size(), 1u);
  const auto& code = plan.undesired[1][0];
  EXPECT_EQ(subset_label(code.members), "{2}");
  EXPECT_EQ(code.alpha, 6);
  EXPECT_EQ(code.expansion, 9);
  EXPECT_EQ(code.expansion - code.alpha, 3);
  EXPECT_TRUE(plan.undesired[0].empty());
}

TEST(SubsetPlan, ThreeFiles) {
  const auto plan = subset_plan(derive(3, 3, 2, 1), 0);
  std::vector<long long> lengths;
  for (const auto& d : plan.desired_family) lengths.push_back(d.length);
  EXPECT_EQ(lengths, (std::vector<long long>{12, 6, 6, 3}));
  ASSERT_EQ(plan.undesired[1].size(), 2u);
  EXPECT_EQ(plan.undesired[1][0].alpha, 12);
  EXPECT_EQ(plan.undesired[1][0].expansion, 18);
  EXPECT_EQ(plan.undesired[1][1].alpha, 6);
  EXPECT_EQ(plan.undesired[1][1].expansion, 9);
  EXPECT_EQ(plan.undesired[1][1].column_offset, 12);
  EXPECT_EQ(subset_label(plan.undesired[1][1].members), "{2,3}");
}

TEST(SubsetPlan, SingleFile) {
  const auto p = derive(3, 1, 2, 1);
  const auto plan = subset_plan(p, 0);
  ASSERT_EQ(plan.desired_family.size(), 1u);
  EXPECT_EQ(plan.desired_family[0].length, 3);
  ASSERT_EQ(plan.undesired.size(), 1u);
  EXPECT_TRUE(plan.undesired[0].empty());
}

TEST(SubsetPlan, RejectsBadIndexAndAllCollude) {
  EXPECT_THROW(subset_plan(derive(3, 2, 2, 1), 2), Error);
  EXPECT_THROW(subset_plan(derive(3, 2, 3, 1), 0), Error);
}

TEST(Divisibility, Examples) {
  auto lengths = [](const DivisibilityReport& r) {
    std::vector<long long> out;
    for (const auto& b : r.blocks) out.push_back(b.length);
    return out;
  };
  const auto a = check_divisibilities(derive_shape(3, 2, 2, 1));
  EXPECT_TRUE(a.ok());
  EXPECT_EQ(lengths(a), (std::vector<long long>{6, 6, 3}));
  const auto b = check_divisibilities(derive_shape(4, 2, 3, 1));
  EXPECT_TRUE(b.ok());
  EXPECT_EQ(lengths(b), (std::vector<long long>{12, 12, 4}));
  const auto c = check_divisibilities(derive_shape(10, 10, 7, 3));
  EXPECT_TRUE(c.ok());
  EXPECT_EQ(c.blocks.size(), 1023u);
  for (const auto& blk : c.blocks) EXPECT_EQ(blk.length % 10, 0);
}

// Identities over 1 <= E <= T < N <= 6, K <= 4, with the closed-form J and
// binomial sums as references.
TEST(DeriveGrid, IntegerIdentities) {
  for (int n = 2; n <= 6; ++n)
    for (int k = 1; k <= 4; ++k)
      for (int t = 1; t < n; ++t)
        for (int e = 1; e <= t; ++e) {
          SCOPED_TRACE(testing::Message() << n << "," << k << "," << t << "," << e);
          const auto s = derive_shape(n, k, t, e);
          long long nk = 1, tk = 1;
          for (int i = 0; i < k; ++i) nk *= n, tk *= t;
          EXPECT_EQ(s.j, oracle::geometric_j(n, k, t));
          EXPECT_EQ(s.j * (n - t), nk - tk);
          EXPECT_EQ(s.l, k * nk - e * s.j);
          long long wsum = 0, ssum = 0;
          for (int i = 0; i < k; ++i) {
            EXPECT_EQ(s.msg_partition[i].size + s.rand_partition[i].size, nk);
            EXPECT_EQ(s.msg_partition[i].start, wsum);
            EXPECT_EQ(s.rand_partition[i].start, ssum);
            wsum += s.msg_partition[i].size;
            ssum += s.rand_partition[i].size;
          }
          EXPECT_EQ(wsum, s.l);
          EXPECT_EQ(ssum, e * s.j);
          // sum_{L containing l} N (N-T)^(|L|-1) T^(K-|L|) = sum_m C(K-1, m) ...
          long long binomial = 0;
          for (int m = 0; m < k; ++m) {
            long long term = n * oracle::binom(k - 1, m);
            for (int i = 0; i < m; ++i) term *= n - t;
            for (int i = 0; i < k - 1 - m; ++i) term *= t;
            binomial += term;
          }
          EXPECT_EQ(binomial, nk);
          EXPECT_TRUE(check_divisibilities(s).ok());
          for (int l = 0; l < k; ++l) {
            const auto plan = subset_plan(s, l);
            long long desired = 0;
            for (const auto& d : plan.desired_family) desired += d.length;
            EXPECT_EQ(desired, nk);
            EXPECT_EQ(plan.desired_family.size(), std::size_t{1} << (k - 1));
            for (int other = 0; other < k; ++other) {
              if (other == l) continue;
              long long alpha = 0, expanded = 0;
              for (const auto& c : plan.undesired[other]) {
                alpha += c.alpha;
                expanded += c.expansion;
                EXPECT_EQ(c.expansion * t, n * c.alpha);
              }
              EXPECT_EQ(plan.undesired[other].size(), k >= 2 ? std::size_t{1} << (k - 2) : 0);
              EXPECT_EQ(alpha, t * nk / n);
              EXPECT_EQ(expanded, nk);
            }
            // Each file's segments tile [0, N^K).
            for (int f = 0; f < k; ++f) {
              long long at = 0;
              for (const auto& seg : plan.segments[f]) {
                EXPECT_EQ(seg.x_offset, at);
                EXPECT_EQ(seg.length, plan.blocks[seg.block].length);
                EXPECT_TRUE(subset_contains(plan.blocks[seg.block].members, f));
                at += seg.length;
              }
              EXPECT_EQ(at, nk);
            }
          }
          const Rational rate(s.l, k * s.round_download);
          EXPECT_EQ(rate, (1 - Rational(t, n)) / (1 - oracle::rpow(Rational(t, n), k)) -
                              Rational(e, k * n));
        }
}

}  // namespace
}  // namespace tepir
