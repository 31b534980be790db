#include <gtest/gtest.h>

#include "ens/corpus.hpp"
#include "ens/linear2.hpp"
#include "ens/properties.hpp"
#include "fixtures.hpp"

using namespace ens;
using ens::testing::chain;

TEST(Index, PartnersAreSymmetric) {
  auto ts = chain({"a", "b", "a", "c"});
  SecondOccurrenceIndex idx(ts);
  EXPECT_EQ(idx(0), 2);
  EXPECT_EQ(idx(2), 0);
  EXPECT_EQ(idx(1), -1);
  EXPECT_EQ(idx(3), -1);
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    SecondOccurrenceIndex r(random_linear(rng, 2 + i % 12, 6, 2));
    for (std::size_t k = 0; k < r.size(); ++k)
      if (r(k) != -1) EXPECT_EQ(r(static_cast<std::size_t>(r(k))), static_cast<std::int64_t>(k));
  }
}

TEST(Index, RejectsWrongClass) {
  EXPECT_THROW(SecondOccurrenceIndex(chain({"a", "a", "a"})), ContractError);
  EXPECT_THROW(SecondOccurrenceIndex(ens::testing::grade2_duplicator()), ContractError);
}

TEST(Exact2fold, Examples) {
  EXPECT_EQ(find_exact_2fold_subsequence(chain({"a", "b", "a", "b"})), std::make_pair(std::size_t{0}, std::size_t{4}));
  EXPECT_FALSE(find_exact_2fold_subsequence(chain({"a", "b", "c"})));
  EXPECT_FALSE(find_exact_2fold_subsequence(chain({"a", "b", "a", "c", "b"})));
  EXPECT_EQ(find_exact_2fold_subsequence(chain({"a", "a"})), std::make_pair(std::size_t{0}, std::size_t{2}));
}

TEST(Separator, UniqueEventBetween) {
  auto ts = chain({"a", "b", "a"});
  SecondOccurrenceIndex idx(ts);
  auto r = separator(idx, 1, 2);
  EXPECT_EQ(r, (SeparatorResult{ts.event("b"), std::nullopt}));
  auto region = induced_region(ts, r);
  ASSERT_TRUE(region);
  EXPECT_EQ(region->members(), (std::vector<StateId>{ts.state("s0"), ts.state("s1")}));
}

TEST(Separator, FailsOnNonSeparablePair) {
  SecondOccurrenceIndex idx(chain({"a", "b", "a", "b"}));
  EXPECT_TRUE(separator(idx, 0, 4).failed());
  EXPECT_THROW(separator(idx, 2, 2), ContractError);
  EXPECT_THROW(separator(idx, 0, 5), ContractError);
}

TEST(Separator, AdjacentUniqueEvent) {
  auto ts = chain({"a", "b", "c", "a"});
  SecondOccurrenceIndex idx(ts);
  for (std::size_t i : {1u, 2u}) EXPECT_EQ(separator(idx, i, i + 1).exit, idx.event(i));
}

TEST(Linear2Ssp, Examples) {
  auto abc = linear2_ssp(chain({"a", "b", "c"}));
  EXPECT_TRUE(abc.holds);
  EXPECT_EQ(abc.witnesses.size(), 6u);
  auto abab = linear2_ssp(chain({"a", "b", "a", "b"}));
  EXPECT_FALSE(abab.holds);
  EXPECT_EQ(abab.counterexample, std::make_pair(std::size_t{0}, std::size_t{4}));
  auto aa = linear2_ssp(chain({"a", "a"}));
  EXPECT_FALSE(aa.holds);
  EXPECT_EQ(aa.counterexample, std::make_pair(std::size_t{0}, std::size_t{2}));
}

TEST(Linear2Ssp, AgreesWithGeneralDecider) {
  Rng rng(41);
  int holds = 0;
  for (int n = 0; n < 1000; ++n) {
    const std::size_t states = 2 + n % 11;
    auto ts = random_linear(rng, states, states / 2 + n % 3, 2);
    auto v = linear2_ssp(ts);
    ASSERT_EQ(v.holds, has_ssp(System(ts)).holds) << serialize_ts(ts);
    ASSERT_EQ(v.holds, !find_exact_2fold_subsequence(ts).has_value());
    holds += v.holds;
    for (auto& [pair, r] : v.witnesses) {
      if (r.failed()) continue;
      auto region = induced_region(ts, r);
      if (!v.holds && !region) continue;
      ASSERT_TRUE(region);
      auto order = linear_states(ts);
      if (v.holds) EXPECT_NE(region->contains(order[pair.first]), region->contains(order[pair.second]));
      EXPECT_LE(region->exits().size() + region->enters().size(), 2u);
    }
  }
  EXPECT_GT(holds, 100);
}

TEST(Linear2Ssp, ParityOnExactSubsequences) {
  Rng rng(43);
  for (int n = 0; n < 300; ++n) {
    const std::size_t states = 3 + n % 10;
    auto ts = random_linear(rng, states, states / 2, 2);
    auto sub = find_exact_2fold_subsequence(ts);
    if (!sub) continue;
    for (auto& r : enumerate_regions(System(ts))) EXPECT_EQ(aggregate_signature(r, ts, sub->first, sub->second) % 2, 0);
  }
}
