#pragma once

// The run procedure. A train starts at the origin; each vertex forwards it
// along slot 0 on the first visit and alternates slots on every later
// visit. The run stops when the train enters a stop vertex (default: the
// destination) or a step budget is exhausted.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "arrival/errors.hpp"
#include "arrival/flow.hpp"
#include "arrival/graph.hpp"
#include "arrival/numeric.hpp"

namespace arrival {

struct RunState {
  VertexId position = 0;
  // next_slot[v] = slot the next departure from v will use. Equals
  // flow[s0(v)] - flow[s1(v)], maintained incrementally.
  std::vector<std::uint8_t> next_slot;
  FlowVector flow;
  BigInt steps;
};

inline RunState init(const SwitchGraph& g) {
  RunState st;
  st.position = g.origin;
  st.next_slot.assign(g.n(), 0);
  st.flow = FlowVector::zeros(g.n());
  st.steps = 0;
  return st;
}

inline bool contains(std::span<const VertexId> set, VertexId v) {
  for (VertexId s : set)
    if (s == v) return true;
  return false;
}

namespace detail {

// One transition, in place. Returns the edge traversed.
inline EdgeId advance(RunState& st, const SwitchGraph& g) {
  const VertexId v = st.position;
  const std::uint8_t b = st.next_slot[v];
  st.next_slot[v] ^= 1;
  ++st.flow.at(v, b);
  st.position = g.slots[v][b];
  ++st.steps;
  return EdgeId{v, b};
}

}  // namespace detail

// Single step as a value transformer. stop_set is only used to reject
// illegal calls: stepping a run that has already stopped is an error.
inline RunState step(RunState st, const SwitchGraph& g,
                     std::span<const VertexId> stop_set = {}) {
  if (contains(stop_set, st.position))
    throw Error("step called at a stop vertex");
  detail::advance(st, g);
  return st;
}

// Steps before a run is declared cut off: n * 2^n, enough for any run that
// terminates at all (a longer run must repeat a full configuration).
inline BigInt step_budget(const SwitchGraph& g) {
  return BigInt{g.n()} * pow2(g.n());
}

struct RunOutcome {
  enum class Tag { reached, cutoff };
  Tag tag = Tag::cutoff;
  VertexId stop_vertex = 0;  // meaningful when tag == reached
  FlowVector profile;        // traversal counts at the moment the run ended
  BigInt steps;

  bool reached() const { return tag == Tag::reached; }
};

// Observer signature for traced runs: (step index, from, slot, to), called
// after each transition with step index starting at 1.
using StepObserver = void (*)(void*, const BigInt&, VertexId, unsigned, VertexId);

inline RunOutcome run(const SwitchGraph& g, std::span<const VertexId> stop_set,
                      const BigInt& max_steps, StepObserver observer = nullptr,
                      void* observer_arg = nullptr) {
  RunState st = init(g);
  while (!contains(stop_set, st.position)) {
    if (st.steps >= max_steps)
      return RunOutcome{RunOutcome::Tag::cutoff, 0, std::move(st.flow),
                        std::move(st.steps)};
    const VertexId from = st.position;
    const EdgeId e = detail::advance(st, g);
    if (observer) observer(observer_arg, st.steps, from, e.slot, st.position);
  }
  return RunOutcome{RunOutcome::Tag::reached, st.position, std::move(st.flow),
                    std::move(st.steps)};
}

// Default runs: stop at the destination, budget n * 2^n.
inline RunOutcome run(const SwitchGraph& g) {
  const VertexId stops[] = {g.dest};
  return run(g, stops, step_budget(g));
}

// Runs on a dead-end instance stop at the destination or the dead end and
// always terminate within the default budget.
inline RunOutcome run(const DeadEndInstance& inst) {
  const std::vector<VertexId> stops = inst.stop_set();
  return run(inst.graph, stops, step_budget(inst.graph));
}

// Yields the traversal-count vectors of a run's prefixes: after 0 steps,
// 1 step, ... until the run stops or the budget is exhausted.
class PrefixStream {
 public:
  PrefixStream(const SwitchGraph& g, std::vector<VertexId> stop_set, BigInt max_steps)
      : graph_(g), stop_set_(std::move(stop_set)), budget_(std::move(max_steps)),
        state_(init(g)) {}

  explicit PrefixStream(const SwitchGraph& g)
      : PrefixStream(g, {g.dest}, step_budget(g)) {}

  explicit PrefixStream(const DeadEndInstance& inst)
      : PrefixStream(inst.graph, inst.stop_set(), step_budget(inst.graph)) {}

  // Next prefix, or nullopt once the run has stopped (the final profile is
  // the last value yielded) or the budget ran out.
  std::optional<FlowVector> next() {
    if (done_) return std::nullopt;
    if (!emitted_initial_) {
      emitted_initial_ = true;
      return state_.flow;
    }
    if (contains(stop_set_, state_.position) || state_.steps >= budget_) {
      done_ = true;
      return std::nullopt;
    }
    detail::advance(state_, graph_);
    return state_.flow;
  }

  const RunState& state() const { return state_; }

 private:
  SwitchGraph graph_;
  std::vector<VertexId> stop_set_;
  BigInt budget_;
  RunState state_;
  bool emitted_initial_ = false;
  bool done_ = false;
};

}  // namespace arrival
