#include <gtest/gtest.h>

#include "ens/corpus.hpp"
#include "ens/properties.hpp"
#include "ens/unions.hpp"
#include "fixtures.hpp"

using namespace ens;
using ens::testing::chain;
using ens::testing::master;

TEST(Union, MonadicUnionIsTheTs) {
  auto u = make_union({master()});
  EXPECT_EQ(u.size(), 1u);
  EXPECT_EQ(join(u), master());
}

TEST(Union, FlattenPreservesOrder) {
  auto a = make_chain({"a"}, "x"), b = make_chain({"b"}, "y"), c = make_chain({"c"}, "w");
  TsUnion ab({a, b}, {"A", "B"});
  TsUnion cc({c}, {"C"});
  std::vector<TsUnion> nested{ab, cc};
  EXPECT_EQ(flatten(nested), TsUnion({a, b, c}, {"A", "B", "C"}));
}

TEST(Union, StateClashIsRejected) {
  try {
    make_union({chain({"a"}), chain({"b"})});
    FAIL();
  } catch (const StructuralError& e) {
    EXPECT_NE(std::string(e.what()).find("s0"), std::string::npos);
  }
}

TEST(Join, TwoSingleEdges) {
  auto j = join(make_union({make_chain({"a"}, "x"), make_chain({"b"}, "y")}));
  EXPECT_EQ(j.state_count(), 5u);
  EXPECT_TRUE(is_linear(j));
  EXPECT_EQ(linear_word_names(j), (std::vector<std::string>{"a", "y1+1", "y2+1", "b"}));
  EXPECT_TRUE(j.find_state("z+1"));
  EXPECT_TRUE(validate(j).ok());
}

TEST(Join, ExplicitTerminals) {
  auto d = ens::testing::grade2_duplicator();
  TsUnion u({d, make_chain({"q"}, "x")});
  EXPECT_THROW(join(u), ContractError);
  JoinPlan plan{{std::string("d0"), std::nullopt}};
  auto j = join(u, plan);
  EXPECT_TRUE(validate(j).ok());
  EXPECT_EQ(*j.successor(j.state("d0"), j.event("y1+1")), j.state("z+1"));
  JoinPlan bad{{std::string("nope"), std::nullopt}};
  EXPECT_THROW(join(u, bad), ContractError);
}

TEST(Join, ConnectorNamesMustBeFresh) {
  EXPECT_THROW(join(make_union({make_chain({"y1+1"}, "x"), make_chain({"b"}, "y")})), ContractError);
}

TEST(Join, PreservesAdmissibility) {
  Rng rng(23);
  for (int i = 0; i < 200; ++i) {
    auto u = TsUnion(random_linear_union(rng, 3, 5, 4, 3));
    auto j = join(u);
    EXPECT_TRUE(validate(j).ok());
    EXPECT_TRUE(is_linear(j));
  }
}

TEST(Join, SspAndFeasibilityArePreserved) {
  Rng rng(29);
  int ssp = 0, feasible = 0;
  for (int i = 0; i < 200; ++i) {
    TsUnion u(random_linear_union(rng, 3, 5, 4, 3));
    System joined(join(u));
    const bool a = has_ssp(u.system()).holds, b = is_feasible(u.system()).holds;
    EXPECT_EQ(a, has_ssp(joined).holds) << serialize_union(u);
    EXPECT_EQ(b, is_feasible(joined).holds) << serialize_union(u);
    ssp += a;
    feasible += b;
  }
  EXPECT_GT(ssp, 20);
  EXPECT_GT(feasible, 10);
}

TEST(Lift, UnconstrainedComponentStaysOutside) {
  auto u = make_union({make_chain({"a", "b"}, "x")});
  auto r = *check_region(u.system(), std::vector<std::string>{"x0"});
  std::vector<TransitionSystem> extra{make_chain({"c", "d"}, "y")};
  auto lifted = lift_region(u, r, extra);
  const System& sys = lifted.extended.system();
  for (auto s : {"y0", "y1", "y2"}) EXPECT_FALSE(lifted.region.contains(sys.state(s)));
  EXPECT_EQ(lifted.region.sig(sys.event("c")), Sign::obey);
  EXPECT_EQ(lifted.region.sig(sys.event("a")), Sign::exit);
}

TEST(Lift, EnteringEdgeStartsMembership) {
  auto u = make_union({make_chain({"a", "e"}, "x")});
  auto r = *check_region(u.system(), std::vector<std::string>{"x2"});
  std::vector<TransitionSystem> extra{make_chain({"c", "e", "d"}, "y"), make_chain({"a", "f"}, "w")};
  auto lifted = lift_region(u, r, extra);
  const System& sys = lifted.extended.system();
  EXPECT_FALSE(lifted.region.contains(sys.state("y1")));
  EXPECT_TRUE(lifted.region.contains(sys.state("y2")));
  EXPECT_TRUE(lifted.region.contains(sys.state("y3")));
  EXPECT_FALSE(lifted.region.contains(sys.state("w0")));
}

TEST(Lift, ExitingEdgeEndsMembership) {
  auto u = make_union({make_chain({"a", "e"}, "x")});
  auto r = *check_region(u.system(), std::vector<std::string>{"x0"});
  std::vector<TransitionSystem> extra{make_chain({"c", "a", "d"}, "y")};
  auto lifted = lift_region(u, r, extra);
  const System& sys = lifted.extended.system();
  EXPECT_EQ(lifted.region.members(),
            (std::vector<StateId>{sys.state("x0"), sys.state("y0"), sys.state("y1")}));
}

TEST(Lift, RefusesTwoConstrainedEdges) {
  auto u = make_union({make_chain({"a", "e"}, "x")});
  auto r = *check_region(u.system(), std::vector<std::string>{"x1"});
  std::vector<TransitionSystem> extra{make_chain({"a", "e"}, "y")};
  EXPECT_THROW(lift_region(u, r, extra), ContractError);
}

TEST(Lift, AlwaysYieldsRegions) {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    TsUnion u(random_linear_union(rng, 2, 5, 3, 3));
    const System& base = u.system();
    // One edge labelled by an event of the union, between fresh events.
    const auto shared = base.event_name(static_cast<EventId>(rng() % base.event_count()));
    std::vector<TransitionSystem> extra{make_chain({"p", shared, "q"}, "n")};
    for (auto& r : enumerate_regions(base)) {
      auto lifted = lift_region(u, r, extra);
      EXPECT_TRUE(check_region(lifted.extended.system(), lifted.region.membership()));
      for (EventId e = 0; e < base.event_count(); ++e) EXPECT_EQ(lifted.region.sig(e), r.sig(e));
    }
  }
}

TEST(Rectify, RoundTripAndDisjointness) {
  TsUnion u({master(), chain({"a", "k"})});
  auto r = rectify(u, "k", "m6");
  EXPECT_EQ(r.component(0).state_name(0), "k:m6:m0");
  EXPECT_EQ(strip(r, "k", "m6"), u);
  auto other = rectify(u, "k", "m5");
  std::vector<TsUnion> both{r, other};
  EXPECT_NO_THROW(flatten(both));
  EXPECT_THROW(strip(r, "k", "m5"), ContractError);
}

TEST(Rectify, RegionsTransportBijectively) {
  TsUnion u({chain({"a", "b", "a"}), make_chain({"b", "c"}, "x")});
  auto r = rectify(u, "e", "s");
  auto before = enumerate_regions(u.system());
  auto after = enumerate_regions(r.system());
  ASSERT_EQ(before.size(), after.size());
  for (std::size_t i = 0; i < before.size(); ++i) {
    EXPECT_EQ(before[i].membership(), after[i].membership());
    EXPECT_EQ(transport(before[i], r.system()), after[i]);
  }
}

TEST(UnionFile, RoundTrip) {
  TsUnion u({master(), make_chain({"a"}, "x")}, {"M", "X"});
  JoinPlan plan{{std::string("m8"), std::nullopt}};
  auto text = serialize_union(u, plan);
  auto parsed = parse_union(text);
  EXPECT_EQ(parsed.components, u);
  EXPECT_EQ(parsed.plan.terminals[0], std::optional<std::string>("m8"));
  EXPECT_EQ(serialize_union(parsed.components, parsed.plan), text);
}

TEST(UnionFile, Errors) {
  EXPECT_THROW(parse_union(""), ParseError);
  EXPECT_THROW(parse_union(".union\ncomponent A inline\ninitial a\n"), ParseError);
  EXPECT_THROW(parse_union(".union\ncomponent A missing.ts\n"), ParseError);
  EXPECT_THROW(parse_union(".union\ncomponent A inline\ninitial a\nedge a e b\nend\nterminal B b\n"), ParseError);
}
