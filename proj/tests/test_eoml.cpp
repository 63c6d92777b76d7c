#include "arrival/eoml.hpp"

#include "catch2/catch_amalgamated.hpp"
#include "fixtures.hpp"

#include <vector>

using namespace arrival;
using fixtures::flow_of;

TEST_CASE("successor walks the run one step at a time", "[eoml]") {
  const ArrivalEoml prob(fixtures::four_vertex_graph());

  SECTION("source steps to the one-step prefix") {
    REQUIRE(prob.successor(prob.source()) == flow_of({1, 0, 0, 0, 0, 0, 0, 0}));
  }

  SECTION("chaining successors reproduces the whole run") {
    EomlPoint x = prob.source();
    for (int k = 0; k < 5; ++k) x = prob.successor(x);
    REQUIRE(x == fixtures::four_vertex_profile());
  }

  SECTION("the full profile is a fixed point") {
    REQUIRE(prob.successor(fixtures::four_vertex_profile()) ==
            fixtures::four_vertex_profile());
  }

  SECTION("off-path points self-loop") {
    const EomlPoint junk = flow_of({7, 7, 7, 7, 7, 7, 7, 7});
    REQUIRE(prob.successor(junk) == junk);
    REQUIRE(prob.predecessor(junk) == junk);
    REQUIRE(prob.valuation(junk) == 0);
  }

  SECTION("a coordinate at 2^n + 1 makes a prefix a fixed point") {
    SwitchGraph g;
    g.slots = {{0, 0}, {1, 1}};  // o self-loops, n = 2, cap = 5
    g.origin = 0;
    g.dest = 1;
    const ArrivalEoml lost(g);
    REQUIRE(lost.cap() == 5);
    const EomlPoint at_cap = flow_of({5, 4, 0, 0});
    REQUIRE(lost.successor(at_cap) == at_cap);
    // One below the cap still advances...
    REQUIRE(lost.successor(flow_of({4, 4, 0, 0})) == at_cap);
    // ...and the walk from the source parks exactly there.
    const WalkResult w = walk(lost, lost.source(), BigInt{100});
    REQUIRE(w.point == at_cap);
    REQUIRE(w.advances == 9);
  }
}

TEST_CASE("predecessor undoes successor along the path", "[eoml]") {
  const ArrivalEoml prob(fixtures::four_vertex_graph());

  REQUIRE(prob.predecessor(prob.source()) == prob.source());
  REQUIRE(prob.predecessor(flow_of({1, 0, 1, 0, 1, 0, 0, 0})) ==
          flow_of({1, 0, 1, 0, 0, 0, 0, 0}));

  SECTION("along the whole path") {
    EomlPoint x = prob.source();
    for (int k = 0; k < 5; ++k) {
      const EomlPoint y = prob.successor(x);
      REQUIRE(prob.predecessor(y) == x);
      REQUIRE(prob.successor(prob.predecessor(y)) == y);
      x = y;
    }
  }
}

TEST_CASE("valuation meters the path", "[eoml]") {
  const ArrivalEoml prob(fixtures::four_vertex_graph());
  REQUIRE(prob.valuation(prob.source()) == 1);
  REQUIRE(prob.valuation(flow_of({1, 0, 1, 0, 1, 0, 0, 0})) == 4);
  REQUIRE(prob.valuation(fixtures::four_vertex_profile()) == 6);
  REQUIRE(prob.valuation(flow_of({1, 1, 1, 1, 1, 1, 1, 1})) == 0);
}

TEST_CASE("solution classification singles out the path's endpoint", "[eoml]") {
  const ArrivalEoml prob(fixtures::four_vertex_graph());

  REQUIRE(check_eoml_solution(fixtures::four_vertex_profile(), prob) ==
          EomlSolutionType::type1);
  REQUIRE(check_eoml_solution(prob.source(), prob) == EomlSolutionType::not_a_solution);
  REQUIRE(check_eoml_solution(flow_of({1, 0, 1, 0, 1, 0, 0, 0}), prob) ==
          EomlSolutionType::not_a_solution);
  REQUIRE(check_eoml_solution(flow_of({2, 2, 0, 0, 0, 0, 0, 0}), prob) ==
          EomlSolutionType::not_a_solution);

  SECTION("every point along the path except the sink is a non-solution") {
    EomlPoint x = prob.source();
    for (int k = 0; k < 4; ++k) {
      REQUIRE(check_eoml_solution(x, prob) == EomlSolutionType::not_a_solution);
      x = prob.successor(x);
    }
  }

  SECTION("a hand-built problem exhibits Type2 and Type3") {
    // Points 0..9 on a line with doctored structure.
    struct Line {
      EomlPoint source() const { return fixtures::flow_of({0}); }
      EomlPoint successor(const EomlPoint& x) const {
        EomlPoint y = x;
        if (y.entries[0] < 9) ++y.entries[0];
        return y;
      }
      EomlPoint predecessor(const EomlPoint& x) const {
        EomlPoint y = x;
        // Point 4 wrongly claims a fresh start: P(4) = 4.
        if (y.entries[0] > 0 && y.entries[0] != 4) --y.entries[0];
        return y;
      }
      BigInt valuation(const EomlPoint& x) const {
        // Value jumps by 2 between points 6 and 7.
        const BigInt& v = x.entries[0];
        return v >= 7 ? v + 2 : v + 1;
      }
    } line;

    // P(S(3)) = P(4) = 4 != 3: endpoint-shaped defect.
    REQUIRE(check_eoml_solution(fixtures::flow_of({3}), line) == EomlSolutionType::type1);
    // x = 4: P(x) = x, so S(P(x)) = 5 != 4: also Type1.
    REQUIRE(check_eoml_solution(fixtures::flow_of({4}), line) == EomlSolutionType::type1);
    // x = 5: structure fine, but V(5) = 6, V(P(5)) = V(4) = 5, V(S(5)) =
    // V(6) = 7: all consistent... and x = 6: V(S(6)) - V(6) = 9 - 7 = 2:
    // the meter skips a beat: Type3.
    REQUIRE(check_eoml_solution(fixtures::flow_of({5}), line) ==
            EomlSolutionType::not_a_solution);
    REQUIRE(check_eoml_solution(fixtures::flow_of({6}), line) == EomlSolutionType::type3);

    // A second problem where some non-source point has valuation 1.
    struct TwoStarts {
      EomlPoint source() const { return fixtures::flow_of({0}); }
      EomlPoint successor(const EomlPoint& x) const { return x; }
      EomlPoint predecessor(const EomlPoint& x) const { return x; }
      BigInt valuation(const EomlPoint&) const { return 1; }
    } two;
    REQUIRE(check_eoml_solution(fixtures::flow_of({3}), two) == EomlSolutionType::type2);
  }
}

TEST_CASE("walk reaches the sink and counts evaluations", "[eoml]") {
  const ArrivalEoml prob(fixtures::four_vertex_graph());

  SECTION("from the source") {
    const WalkResult w = walk(prob, prob.source(), BigInt{100});
    REQUIRE(w.point == fixtures::four_vertex_profile());
    REQUIRE(w.advances == 5);
    REQUIRE(w.evaluations == 6);
  }

  SECTION("from the sink itself") {
    const WalkResult w = walk(prob, fixtures::four_vertex_profile(), BigInt{100});
    REQUIRE(w.point == fixtures::four_vertex_profile());
    REQUIRE(w.evaluations == 1);
    REQUIRE(w.advances == 0);
  }

  SECTION("from a mid-path point") {
    const WalkResult w = walk(prob, flow_of({1, 0, 1, 0, 1, 0, 0, 0}), BigInt{100});
    REQUIRE(w.point == fixtures::four_vertex_profile());
    REQUIRE(w.advances == 2);
  }

  SECTION("the budget is enforced") {
    REQUIRE_THROWS_AS(walk(prob, prob.source(), BigInt{3}), BudgetExhaustedError);
    REQUIRE_NOTHROW(walk(prob, prob.source(), BigInt{6}));
  }
}

TEST_CASE("dead-end instances have their sink at d or the dead end", "[eoml]") {
  const std::size_t n = GENERATE(3u, 5u, 7u);
  const std::uint64_t seed = GENERATE(range(0, 8));
  const SwitchGraph g = gen_random(n, seed, GenModel::uniform);
  const DeadEndInstance inst = dead_end_transform(g);
  const ArrivalEoml prob(inst);

  const WalkResult w = walk(prob, prob.source(), step_budget(inst.graph));
  const VertexId end = end_vertex(w.point, inst.graph);
  REQUIRE((end == inst.graph.dest || end == inst.dead_end));
  REQUIRE(check_eoml_solution(w.point, prob) == EomlSolutionType::type1);

  // The walk is the run: same profile as simulating directly.
  REQUIRE(w.point == run(inst).profile);
}
