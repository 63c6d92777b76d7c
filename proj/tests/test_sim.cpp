#include "arrival/sim.hpp"

#include "catch2/catch_amalgamated.hpp"
#include "fixtures.hpp"
#include "oracle.hpp"

#include <vector>

using namespace arrival;

TEST_CASE("init places the train at the origin with all switches fresh", "[sim]") {
  const SwitchGraph g = fixtures::four_vertex_graph();
  const RunState st = init(g);
  REQUIRE(st.position == g.origin);
  REQUIRE(st.steps == 0);
  REQUIRE(st.flow.is_zero());
  REQUIRE(st.next_slot == std::vector<std::uint8_t>(4, 0));
}

TEST_CASE("step moves the train and alternates slots per visit", "[sim]") {
  const SwitchGraph g = fixtures::four_vertex_graph();
  RunState st = init(g);

  st = step(st, g);  // o -> v1 via slot 0
  REQUIRE(st.position == 1);
  REQUIRE(st.flow.at(0, 0) == 1);
  REQUIRE(st.next_slot[0] == 1);
  REQUIRE(st.steps == 1);

  st = step(st, g);  // v1 -> v2 via slot 0
  st = step(st, g);  // v2 -> v2 via slot 0 (self-loop)
  REQUIRE(st.position == 2);
  REQUIRE(st.flow.at(2, 0) == 1);

  st = step(st, g);  // v2 -> v1, second visit uses slot 1
  REQUIRE(st.position == 1);
  REQUIRE(st.flow.at(2, 1) == 1);

  st = step(st, g);  // v1 -> d, second visit uses slot 1
  REQUIRE(st.position == 3);
  REQUIRE(st.flow == fixtures::four_vertex_profile());
  REQUIRE(st.steps == 5);

  SECTION("stepping at a stop vertex is an error") {
    const std::vector<VertexId> stops{g.dest};
    REQUIRE_THROWS_AS(step(st, g, stops), Error);
  }

  SECTION("two visits to a vertex with equal slots use both edges") {
    SwitchGraph loop;
    loop.slots = {{0, 0}, {1, 1}};
    loop.origin = 0;
    loop.dest = 1;
    RunState s = init(loop);
    s = step(s, loop);
    s = step(s, loop);
    REQUIRE(s.flow.at(0, 0) == 1);
    REQUIRE(s.flow.at(0, 1) == 1);
  }
}

TEST_CASE("run reproduces the frozen worked examples", "[sim]") {
  SECTION("four-vertex example: five steps") {
    const RunOutcome out = run(fixtures::four_vertex_graph());
    REQUIRE(out.reached());
    REQUIRE(out.stop_vertex == 3);
    REQUIRE(out.steps == 5);
    REQUIRE(out.profile == fixtures::four_vertex_profile());
  }

  SECTION("eleven-vertex example: 33 steps") {
    const RunOutcome out = run(fixtures::eleven_vertex_graph());
    REQUIRE(out.reached());
    REQUIRE(out.steps == 33);
    REQUIRE(out.profile == fixtures::eleven_vertex_profile());
  }

  SECTION("origin equal to destination stops immediately") {
    SwitchGraph g;
    g.slots = {{0, 0}};
    g.origin = 0;
    g.dest = 0;
    const RunOutcome out = run(g);
    REQUIRE(out.reached());
    REQUIRE(out.steps == 0);
    REQUIRE(out.profile.is_zero());
  }

  SECTION("a lost train is cut off with the budget spent") {
    SwitchGraph g;
    g.slots = {{0, 0}, {1, 1}};  // o never leaves its self-loops
    g.origin = 0;
    g.dest = 1;
    const VertexId stops[] = {g.dest};
    const RunOutcome out = run(g, stops, BigInt{10});
    REQUIRE(!out.reached());
    REQUIRE(out.steps == 10);
    REQUIRE(out.profile.at(0, 0) + out.profile.at(0, 1) == 10);
  }
}

TEST_CASE("step_budget is n * 2^n", "[sim]") {
  REQUIRE(step_budget(fixtures::four_vertex_graph()) == 64);
  SwitchGraph tiny;
  tiny.slots = {{0, 0}};
  tiny.origin = tiny.dest = 0;
  REQUIRE(step_budget(tiny) == 2);
  REQUIRE(step_budget(gen_random(10, 0, GenModel::uniform)) == 10240);
}

TEST_CASE("runs agree with the literal-simulation oracle", "[sim][oracle]") {
  const std::size_t n = GENERATE(2u, 4u, 6u, 8u);
  const std::uint64_t seed = GENERATE(range(0, 10));
  const SwitchGraph g = gen_random(n, seed, GenModel::uniform);

  const RunOutcome out = run(g);
  const oracle::LiteralRun lit =
      oracle::literal_run(g, {g.dest}, static_cast<long long>(g.n()) * (1LL << g.n()));
  REQUIRE(out.reached() == lit.stopped);
  REQUIRE(out.profile == oracle::to_flow(lit.prefixes.back()));
  REQUIRE(out.steps == static_cast<long long>(lit.prefixes.size()) - 1);
}

TEST_CASE("PrefixStream yields every prefix of the run once", "[sim]") {
  SECTION("four-vertex example yields six prefixes") {
    PrefixStream stream(fixtures::four_vertex_graph());
    std::vector<FlowVector> prefixes;
    while (auto f = stream.next()) prefixes.push_back(*f);
    REQUIRE(prefixes.size() == 6);
    REQUIRE(prefixes.front().is_zero());
    REQUIRE(prefixes.back() == fixtures::four_vertex_profile());
  }

  SECTION("degenerate o == d run yields only the zero prefix") {
    SwitchGraph g;
    g.slots = {{0, 0}};
    g.origin = g.dest = 0;
    PrefixStream stream(g);
    REQUIRE(stream.next().has_value());
    REQUIRE(!stream.next().has_value());
  }

  SECTION("consecutive prefixes differ by one on a single edge") {
    const std::uint64_t seed = GENERATE(range(0, 10));
    const SwitchGraph g = gen_random(6, seed, GenModel::uniform);
    PrefixStream stream(g);
    FlowVector prev = *stream.next();
    BigInt index = 0;
    while (auto f = stream.next()) {
      ++index;
      REQUIRE(f->sum() == index);  // prefix k has exactly k traversals
      int changed = 0;
      for (std::size_t i = 0; i < f->size(); ++i) {
        if (f->entries[i] != prev.entries[i]) {
          ++changed;
          REQUIRE(f->entries[i] == prev.entries[i] + 1);
        }
      }
      REQUIRE(changed == 1);
      prev = *f;
    }
  }

  SECTION("switch state equals the difference of the slot counts") {
    const std::uint64_t seed = GENERATE(range(0, 10));
    const SwitchGraph g = gen_random(5, seed, GenModel::uniform);
    PrefixStream stream(g);
    while (stream.next()) {
      const RunState& st = stream.state();
      for (VertexId v = 0; v < g.n(); ++v)
        REQUIRE(BigInt{st.next_slot[v]} == st.flow.at(v, 0) - st.flow.at(v, 1));
    }
  }
}

TEST_CASE("runs on dead-end instances always stop within budget", "[sim]") {
  const std::size_t n = GENERATE(2u, 4u, 7u, 9u);
  const std::uint64_t seed = GENERATE(range(0, 10));
  const SwitchGraph g = gen_random(n, seed, GenModel::uniform);
  const DeadEndInstance inst = dead_end_transform(g);

  const RunOutcome out = run(inst);
  REQUIRE(out.reached());
  REQUIRE((out.stop_vertex == inst.graph.dest || out.stop_vertex == inst.dead_end));
  REQUIRE(out.steps <= step_budget(inst.graph));

  // Traversal counts of a terminating run never exceed 2^n.
  const BigInt cap = pow2(inst.graph.n());
  for (const BigInt& e : out.profile.entries) REQUIRE(e <= cap);

  // If the raw run reached d, the instance run agrees step for step.
  const RunOutcome raw = run(g);
  if (raw.reached()) {
    REQUIRE(out.stop_vertex == g.dest);
    REQUIRE(out.steps == raw.steps);
  } else {
    REQUIRE(out.stop_vertex == inst.dead_end);
  }
}
