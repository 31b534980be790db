#include <gtest/gtest.h>

#include <set>

#include "ens/corpus.hpp"
#include "ens/regions.hpp"
#include "fixtures.hpp"

using namespace ens;
using ens::testing::chain;
using ens::testing::master;

namespace {

Bitset members(const System& sys, std::initializer_list<const char*> names) {
  Bitset m(sys.state_count());
  for (auto n : names) m.set(sys.state(n));
  return m;
}

std::set<Bitset> memberships(const std::vector<Region>& regions) {
  std::set<Bitset> out;
  for (auto& r : regions) out.insert(r.membership());
  return out;
}

}  // namespace

TEST(CheckRegion, MasterKeyRegion) {
  System sys(master());
  auto r = check_region(sys, members(sys, {"m0", "m3", "m7"}));
  ASSERT_TRUE(r);
  EXPECT_EQ(r->sig(sys.event("k")), Sign::exit);
  EXPECT_EQ(r->sig(sys.event("o_0")), Sign::enter);
  EXPECT_EQ(r->sig(sys.event("v_1")), Sign::enter);
  EXPECT_EQ(r->sig(sys.event("z_0")), Sign::obey);
  EXPECT_EQ(r->sig(sys.event("h")), Sign::obey);
  EXPECT_EQ(format_region(sys, *r), "region: {m0, m3, m7}\nsig: k=-1, o_0=+1, v_1=+1");
}

TEST(CheckRegion, FullSetObeysEverywhere) {
  System sys(master());
  Bitset all(sys.state_count());
  all.set();
  auto r = check_region(sys, all);
  ASSERT_TRUE(r);
  for (EventId e = 0; e < sys.event_count(); ++e) EXPECT_EQ(r->sig(e), Sign::obey);
}

TEST(CheckRegion, SingletonInitialIsNoRegion) {
  System sys(master());
  EXPECT_FALSE(check_region(sys, members(sys, {"m0"})));
}

TEST(CheckRegion, ByName) {
  System sys(master());
  std::vector<std::string> names{"m0", "m3", "m7"};
  EXPECT_TRUE(check_region(sys, names));
}

TEST(Complement, NegatesSignature) {
  System sys(master());
  auto r = *check_region(sys, members(sys, {"m0", "m3", "m7"}));
  auto c = complement(r);
  EXPECT_EQ(c.members(), (std::vector<StateId>{1, 2, 4, 5, 6, 8}));
  EXPECT_EQ(c.sig(sys.event("k")), Sign::enter);
  EXPECT_TRUE(check_region(sys, c.membership()));
  EXPECT_EQ(complement(c), r);
  Bitset all(sys.state_count());
  all.set();
  auto empty = complement(*check_region(sys, all));
  EXPECT_TRUE(empty.membership().none());
}

TEST(Enumerate, SingleEdgeHasFourRegions) {
  System sys(chain({"a"}));
  EXPECT_EQ(enumerate_regions(sys).size(), 4u);
}

TEST(Enumerate, RepeatedEventHasTwoRegions) {
  System sys(chain({"a", "a"}));
  auto all = enumerate_regions(sys);
  ASSERT_EQ(all.size(), 2u);
  EXPECT_TRUE(all[0].membership().none());
  EXPECT_TRUE(all[1].membership().all());
}

TEST(Enumerate, CapIsEnforced) {
  System sys(make_chain(std::vector<std::string>(23, "a")));
  EXPECT_THROW(enumerate_regions(sys), ContractError);
  EXPECT_THROW(enumerate_regions(System(master()), 5), ContractError);
}

TEST(Enumerate, ClosedUnderComplement) {
  Rng rng(21);
  for (int i = 0; i < 100; ++i) {
    System sys(random_ts(rng, 2 + i % 10, 3, 4));
    auto all = enumerate_regions(sys);
    auto set = memberships(all);
    for (auto& r : all) {
      auto c = complement(r);
      ASSERT_TRUE(check_region(sys, c.membership()));
      EXPECT_TRUE(set.count(c.membership()));
      for (EventId e = 0; e < sys.event_count(); ++e) EXPECT_EQ(c.sig(e), negate(r.sig(e)));
    }
  }
}

TEST(Solver, MatchesEnumerationOnMaster) {
  System sys(master());
  auto all = enumerate_regions(sys);
  auto solved = solve_all_regions(sys, RegionConstraint());
  EXPECT_EQ(memberships(all), memberships(solved));
  EXPECT_EQ(solved.size(), all.size());
}

TEST(Solver, OracleEquivalenceOnRandomSystems) {
  Rng rng(1);
  for (int i = 0; i < 300; ++i) {
    System sys(random_ts(rng, 2 + i % 13, 2 + i % 4, i % 9));
    auto all = enumerate_regions(sys);
    auto solved = solve_all_regions(sys, RegionConstraint());
    ASSERT_EQ(solved.size(), all.size());
    EXPECT_EQ(memberships(all), memberships(solved));
  }
}

TEST(Solver, ConstrainedQueriesAreComplete) {
  Rng rng(2);
  for (int i = 0; i < 150; ++i) {
    System sys(random_ts(rng, 2 + i % 13, 3, i % 7));
    auto all = enumerate_regions(sys);
    RegionSolver solver(sys);
    for (EventId e = 0; e < sys.event_count(); ++e)
      for (StateId s = 0; s < sys.state_count(); ++s) {
        auto r = solver.solve(RegionConstraint().fix_event(e, Sign::exit).fix_state(s, false));
        bool expected = false, mirrored = false;
        for (auto& x : all) {
          expected |= x.sig(e) == Sign::exit && !x.contains(s);
          mirrored |= x.sig(e) == Sign::enter && x.contains(s);
        }
        EXPECT_EQ(r.has_value(), expected);
        EXPECT_EQ(expected, mirrored);
        if (r) {
          EXPECT_EQ(r->sig(e), Sign::exit);
          EXPECT_FALSE(r->contains(s));
        }
      }
  }
}

TEST(Solver, DeterministicOrder) {
  System sys(master());
  auto a = solve_all_regions(sys, RegionConstraint());
  auto b = solve_all_regions(sys, RegionConstraint());
  EXPECT_EQ(a, b);
  EXPECT_EQ(solve_all_regions(sys, RegionConstraint(), 3).size(), 3u);
  EXPECT_TRUE(solve_all_regions(sys, RegionConstraint(), 0).empty());
}

TEST(Solver, InfeasibleConstraint) {
  System sys(chain({"a", "a"}));
  EXPECT_FALSE(solve_region(sys, RegionConstraint().fix_event(0, Sign::enter)));
}

TEST(Solver, ExpiredDeadlineTimesOut) {
  Rng rng(4);
  System sys(random_ts(rng, 14, 3, 10));
  RegionSolver solver(sys);
  solver.set_deadline(RegionSolver::Clock::now() - std::chrono::seconds(1));
  EXPECT_THROW(solver.solve_all(RegionConstraint()), Timeout);
}

TEST(Constraint, ConflictsAreRejected) {
  RegionConstraint c;
  c.fix_event(0, Sign::enter);
  EXPECT_THROW(c.fix_event(0, Sign::exit), ContractError);
  c.fix_state(1, true);
  EXPECT_NO_THROW(c.fix_state(1, true));
  EXPECT_THROW(c.fix_state(1, false), ContractError);
}

TEST(Aggregate, MasterKeyRegion) {
  auto m = master();
  System sys(m);
  auto r = *check_region(sys, members(sys, {"m0", "m3", "m7"}));
  EXPECT_EQ(aggregate_signature(r, m, 0, 8), -1);
  EXPECT_EQ(aggregate_signature(r, m, 4, 5), 0);
  EXPECT_THROW(aggregate_signature(r, m, 3, 3), ContractError);
  EXPECT_THROW(aggregate_signature(r, m, 0, 9), ContractError);
}

TEST(Aggregate, EqualsMembershipDifference) {
  Rng rng(8);
  for (int i = 0; i < 60; ++i) {
    auto ts = random_linear(rng, 2 + i % 10, 4, 3);
    System sys(ts);
    auto order = linear_states(ts);
    for (auto& r : enumerate_regions(sys))
      for (std::size_t a = 0; a + 1 < order.size(); ++a)
        for (std::size_t b = a + 1; b < order.size(); ++b)
          EXPECT_EQ(aggregate_signature(r, ts, a, b), int(r.contains(order[b])) - int(r.contains(order[a])));
  }
}
