// Copyright 2026 The pifotree authors
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

#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "generators.hpp"
#include "oracles.hpp"
#include "pifotree/embed_algorithms.hpp"

namespace pifotree {
namespace {

using testing::Rng;

const Topo kStar = Topo::leaf();
Topo n(std::vector<Topo> kids) { return Topo::node(std::move(kids)); }
Addr addr(std::initializer_list<std::size_t> ix) { return Addr(std::vector<std::size_t>(ix)); }

// Four children, the last of which is ternary.
const Topo kWideSource = n({kStar, kStar, kStar, n({kStar, kStar, kStar})});
const Topo kTwinTarget = n({n({kStar, n({kStar, kStar})}), n({kStar, n({kStar, kStar})})});

Addr parent(const Addr& a) { return Addr(std::vector<std::size_t>(a.indices().begin(), a.indices().end() - 1)); }

TEST(Greedy, TernaryIntoBinary) {
  const DaryEmbedding r = embed_into_dary(n({kStar, kStar, kStar}), 2);
  EXPECT_EQ(r.height, 2u);
  EXPECT_EQ(r.embedding.target(), complete_dary(2, 2));
  ASSERT_TRUE(validate(r.embedding));
  // Two leaves share a transit node; the third sits under the other root child.
  std::multiset<Addr> parents;
  for (std::size_t i = 1; i <= 3; ++i) parents.insert(parent(r.embedding(addr({i}))));
  std::size_t shared = 0;
  for (const Addr& p : parents) shared = std::max(shared, parents.count(p));
  EXPECT_EQ(shared, 2u);
  EXPECT_EQ(serialize(r.embedding),
            "# pifotree-embedding v1\n"
            "source [*, *, *]\n"
            "target [[*, *], [*, *]]\n"
            ". -> .\n"
            "1 -> 1.1\n"
            "2 -> 1.2\n"
            "3 -> 2.1\n");
}

TEST(Greedy, CompleteSourceMapsToItself) {
  for (std::size_t d : {2u, 3u}) {
    for (std::size_t h = 0; h <= 3; ++h) {
      const Topo t = complete_dary(d, h);
      const DaryEmbedding r = embed_into_dary(t, d);
      EXPECT_EQ(r.height, h);
      EXPECT_EQ(r.embedding, Embedding::identity(t));
    }
  }
}

TEST(Greedy, UnaryNodesNeedTheirOwnLevel) {
  EXPECT_EQ(embed_into_dary(n({kStar}), 2).height, 1u);
  EXPECT_EQ(embed_into_dary(n({n({kStar})}), 3).height, 2u);
  EXPECT_EQ(embed_into_dary(n({n({kStar}), kStar}), 2).height, 2u);
}

TEST(Greedy, LoneMinimumIsPromoted) {
  // Leaves 0,0,0 and a height-2 child in binary: two leaves merge to 1, the
  // third leaf is promoted to 1, they merge to 2, then meet the child at 3.
  const Topo t = n({kStar, kStar, kStar, n({kStar, kStar, kStar})});
  const DaryEmbedding r = embed_into_dary(t, 2);
  EXPECT_EQ(r.height, 3u);
  EXPECT_TRUE(validate(r.embedding));
}

TEST(Greedy, RejectsUnaryArity) { EXPECT_THROW(embed_into_dary(kStar, 1), StructureError); }

// Minimal height cross-checked against the closed-form bound and, where the
// instance is small, against exhaustive search.
TEST(Greedy, HeightIsMinimal) {
  for (const Topo& t : testing::all_topos_up_to(6)) {
    for (std::size_t d : {2u, 3u}) {
      const DaryEmbedding r = embed_into_dary(t, d);
      ASSERT_TRUE(validate(r.embedding)) << to_string(t);
      ASSERT_EQ(r.height, testing::kraft_min_height(t, d)) << to_string(t) << " d=" << d;
      if (r.height > 0 && node_count(complete_dary(d, r.height - 1)) <= 40) {
        ASSERT_FALSE(brute_force_embed(t, complete_dary(d, r.height - 1), {8, 40}))
            << to_string(t) << " d=" << d;
      }
    }
  }
}

TEST(Dp, SourceEqualsTarget) {
  Rng rng(51);
  for (int k = 0; k < 100; ++k) {
    const Topo t = testing::random_topo(rng, 9);
    const auto e = embed_into_arbitrary(t, t);
    ASSERT_TRUE(e.has_value()) << to_string(t);
    ASSERT_TRUE(validate(*e));
  }
  const Topo t = n({kStar, n({kStar, kStar})});
  EXPECT_EQ(*embed_into_arbitrary(t, t), Embedding::identity(t));
}

TEST(Dp, TernaryIntoSkewedTarget) {
  const auto e = embed_into_arbitrary(n({kStar, kStar, kStar}), n({kStar, n({kStar, kStar})}));
  ASSERT_TRUE(e.has_value());
  EXPECT_TRUE(validate(*e));
  EXPECT_EQ(serialize(*e),
            "# pifotree-embedding v1\n"
            "source [*, *, *]\n"
            "target [*, [*, *]]\n"
            ". -> .\n"
            "1 -> 1\n"
            "2 -> 2.1\n"
            "3 -> 2.2\n");
}

TEST(Dp, DeeperSourceDoesNotFitShallowTarget) {
  const Topo s = n({kStar, n({kStar, kStar})});
  const Topo t = n({kStar, kStar, kStar});
  EXPECT_FALSE(embed_into_arbitrary(s, t).has_value());
  EXPECT_FALSE(brute_force_embed(s, t).has_value());
}

TEST(Dp, WideSourceIntoTwinTarget) {
  const auto e = embed_into_arbitrary(kWideSource, kTwinTarget);
  ASSERT_TRUE(e.has_value());
  EXPECT_TRUE(validate(*e));
  EXPECT_TRUE(brute_force_embed(kWideSource, kTwinTarget, {8, 11}).has_value());
}

TEST(Dp, ArityCap) {
  const Topo wide = n(std::vector<Topo>(7, kStar));
  EXPECT_THROW(embed_into_arbitrary(wide, wide), StructureError);
  EXPECT_TRUE(embed_into_arbitrary(wide, wide, 7).has_value());
}

TEST(BruteForce, Basics) {
  EXPECT_EQ(*brute_force_embed(kStar, kStar), Embedding::identity(kStar));
  EXPECT_FALSE(brute_force_embed(n({kStar}), kStar).has_value());
  EXPECT_THROW(brute_force_embed(kWideSource, kTwinTarget), StructureError);
  EXPECT_THROW(brute_force_embed(complete_dary(2, 3), kStar), StructureError);
}

TEST(SearchProperty, DpAgreesWithBruteForce) {
  Rng rng(52);
  int found = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const Topo s = testing::random_topo(rng, 8);
    const Topo t = testing::random_topo(rng, 10);
    const auto dp = embed_into_arbitrary(s, t);
    const auto bf = brute_force_embed(s, t);
    ASSERT_EQ(dp.has_value(), bf.has_value()) << to_string(s) << " into " << to_string(t);
    if (dp) {
      ++found;
      ASSERT_TRUE(validate(*dp));
    }
    if (leaf_count(s) > leaf_count(t)) {
      ASSERT_FALSE(dp.has_value());
    }
  }
  EXPECT_GT(found, 20);
}

}  // namespace
}  // namespace pifotree
