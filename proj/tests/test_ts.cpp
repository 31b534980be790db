#include <gtest/gtest.h>

#include "ens/corpus.hpp"
#include "fixtures.hpp"

using namespace ens;
using ens::testing::chain;
using ens::testing::master;

TEST(Validate, MasterIsAdmissible) {
  auto m = master();
  EXPECT_EQ(m.state_count(), 9u);
  EXPECT_TRUE(validate(m).ok());
}

TEST(Validate, UnusedEventBreaksReducedness) {
  auto ts = parse_ts(".ts\ninitial s0\nevent e\n");
  auto report = validate(ts);
  EXPECT_TRUE(report.violates(Invariant::reduced));
  EXPECT_EQ(report.violations.size(), 1u);
}

TEST(Validate, ReportsEveryViolation) {
  auto ts = parse_ts(R"(.ts
initial s0
edge s0 e s1
edge s0 e s2
edge s1 f s1
edge s3 g s0
edge s3 h s0
)");
  auto r = validate(ts);
  EXPECT_TRUE(r.violates(Invariant::deterministic));
  EXPECT_TRUE(r.violates(Invariant::loop_free));
  EXPECT_TRUE(r.violates(Invariant::simple));
  EXPECT_TRUE(r.violates(Invariant::reachable));
  EXPECT_FALSE(r.violates(Invariant::reduced));
  EXPECT_NE(describe(ts, r).find("deterministic"), std::string::npos);
}

TEST(Validate, DanglingReferenceIsStructural) {
  EXPECT_THROW(TransitionSystem({"s0"}, {"a"}, {{0, 0, 1}}, 0), StructuralError);
  EXPECT_THROW(TransitionSystem({}, {"a"}, {}, 0), StructuralError);
}

TEST(Classify, ReferenceShapes) {
  EXPECT_EQ(classify(master()), (TsClass{3, 1, true}));
  // In isolation every event of the duplicator labels one edge; it is the
  // shared key copies that make the whole union 2-fold.
  EXPECT_EQ(classify(ens::testing::grade2_duplicator()), (TsClass{1, 2, false}));
  EXPECT_EQ(classify(chain({"a"})), (TsClass{1, 1, true}));
}

TEST(Classify, BranchingIsNotLinear) {
  auto ts = parse_ts(".ts\ninitial s0\nedge s0 a s1\nedge s0 b s2\n");
  EXPECT_EQ(classify(ts), (TsClass{1, 2, false}));
}

TEST(Classify, MonotoneUnderEdgeDeletion) {
  Rng rng(7);
  for (int round = 0; round < 200; ++round) {
    auto ts = random_ts(rng, 3 + round % 8, 4, 6);
    const auto before = classify(ts);
    // Drop the last edge if the rest stays reachable, then re-reduce.
    std::vector<Edge> edges(ts.edges().begin(), ts.edges().end() - 1);
    std::vector<std::string> events;
    std::vector<int> used(ts.event_count(), 0);
    for (auto& e : edges) used[e.event] = 1;
    std::vector<EventId> remap(ts.event_count());
    for (EventId e = 0; e < ts.event_count(); ++e)
      if (used[e]) {
        remap[e] = static_cast<EventId>(events.size());
        events.push_back(ts.event_name(e));
      }
    if (events.empty()) continue;
    for (auto& e : edges) e.event = remap[e.event];
    TransitionSystem smaller(ts.state_names(), events, edges, ts.initial());
    const auto after = classify(smaller);
    EXPECT_LE(after.manifoldness, before.manifoldness);
    EXPECT_LE(after.degree, before.degree);
  }
}

TEST(LinearWord, Master) {
  EXPECT_EQ(linear_word_names(master()),
            (std::vector<std::string>{"k", "z_0", "o_0", "k", "h", "z_0", "v_1", "k"}));
}

TEST(LinearWord, Refresher) {
  auto f = make_chain({"o_0", "k_0", "o_1", "k_1", "o_0", "k_2", "o_1"}, "f_0_");
  EXPECT_EQ(linear_word_names(f), (std::vector<std::string>{"o_0", "k_0", "o_1", "k_1", "o_0", "k_2", "o_1"}));
}

TEST(LinearWord, SingleEdge) { EXPECT_EQ(linear_word_names(chain({"a"})), (std::vector<std::string>{"a"})); }

TEST(LinearWord, LengthIsStatesMinusOne) {
  Rng rng(3);
  for (int i = 0; i < 100; ++i) {
    auto ts = random_linear(rng, 2 + i % 12, 5, 3);
    EXPECT_EQ(linear_word(ts).size(), ts.state_count() - 1);
  }
}

TEST(LinearWord, RejectsBranching) {
  EXPECT_THROW(linear_word(ens::testing::grade2_duplicator()), ContractError);
}

TEST(Parse, OneEdge) {
  auto ts = parse_ts(".ts\ninitial m0\nedge m0 k m1");
  EXPECT_EQ(ts.state_count(), 2u);
  EXPECT_EQ(ts.edge_count(), 1u);
  EXPECT_EQ(ts.state_name(ts.initial()), "m0");
}

TEST(Parse, CommentsAndBlankLines) {
  auto ts = parse_ts("# header comment\n\n.ts  # trailing\ninitial a # x\nedge a e b\n");
  EXPECT_EQ(ts.edge_count(), 1u);
}

TEST(Parse, Errors) {
  EXPECT_THROW(parse_ts(""), ParseError);
  try {
    parse_ts(".ts\ninitial a\ninitial b\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  EXPECT_THROW(parse_ts(".ts\nedge a e b\n"), ParseError);
  EXPECT_THROW(parse_ts("initial a\n"), ParseError);
  EXPECT_THROW(parse_ts(".ts\ninitial a\nedge a e\n"), ParseError);
  EXPECT_THROW(parse_ts(".ts\ninitial a\nedge a e$ b\n"), ParseError);
  EXPECT_THROW(parse_ts(".ts\ninitial a\nfoo a\n"), ParseError);
}

TEST(Parse, RoundTrip) {
  auto m = master();
  EXPECT_EQ(parse_ts(serialize_ts(m)), m);
  EXPECT_EQ(serialize_ts(parse_ts(serialize_ts(m))), serialize_ts(m));
  auto reduced = parse_ts(".ts\ninitial s0\nevent e\n");
  EXPECT_EQ(parse_ts(serialize_ts(reduced)), reduced);
  Rng rng(11);
  for (int i = 0; i < 50; ++i) {
    auto ts = random_ts(rng, 2 + i % 10, 3, 5);
    EXPECT_EQ(parse_ts(serialize_ts(ts)), ts);
  }
}

TEST(Corpus, GeneratedSystemsValidate) {
  Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    EXPECT_TRUE(validate(random_ts(rng, 2 + i % 13, 4, 8)).ok());
    auto lin = random_linear(rng, 2 + i % 12, 6, 2);
    EXPECT_TRUE(validate(lin).ok());
    EXPECT_LE(classify(lin).manifoldness, 2u);
  }
  EXPECT_EQ(all_linear(4, 3, 3).size(), 3u + 9 + 27 + 78);
}
