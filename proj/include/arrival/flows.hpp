#pragma once

// Switching flows and run-profile verification.
//
// A run's traversal counts form a "switching flow": flow conservation from
// the origin towards the vertex the train sits on, plus the switching-order
// condition f[s1(v)] <= f[s0(v)] <= f[s1(v)] + 1 at every vertex. The
// converse fails: a switching flow may contain superfluous circulation the
// train never performed. The gap is closed by the last-used-edge graph,
// which keeps, for every vertex with positive outflow, only the edge whose
// traversal the switching order says happened last (slot 0 when the counts
// differ, slot 1 when they are equal). A switching flow is a genuine run
// prefix if and only if the stop vertices have zero outflow and this graph
// has either no cycle, or exactly one cycle and the train's position lies
// on it. All checks below are polynomial in the bit size of the flow.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "arrival/errors.hpp"
#include "arrival/flow.hpp"
#include "arrival/graph.hpp"
#include "arrival/numeric.hpp"

namespace arrival {

// Net in-flow minus out-flow per vertex.
inline std::vector<BigInt> net_flow(const FlowVector& f, const SwitchGraph& g) {
  std::vector<BigInt> net(g.n(), BigInt{0});
  for (VertexId v = 0; v < g.n(); ++v) {
    for (unsigned b : {0u, 1u}) {
      const BigInt& x = f.at(v, b);
      net[v] -= x;
      net[g.slots[v][b]] += x;
    }
  }
  return net;
}

// The vertex the flow runs to: net flow must be +1 there, -1 at the origin
// and 0 elsewhere; a circulation runs to the origin itself. nullopt when
// the net pattern is not of this shape.
inline std::optional<VertexId> try_end_vertex(const FlowVector& f, const SwitchGraph& g) {
  const std::vector<BigInt> net = net_flow(f, g);
  std::optional<VertexId> sink;
  for (VertexId v = 0; v < g.n(); ++v) {
    if (net[v] == 0) continue;
    if (v == g.origin) {
      if (net[v] != -1) return std::nullopt;
    } else if (net[v] == 1) {
      if (sink) return std::nullopt;
      sink = v;
    } else {
      return std::nullopt;
    }
  }
  if (!sink) {
    // Circulation; legal only if the origin balances too.
    return net[g.origin] == 0 ? std::optional<VertexId>{g.origin} : std::nullopt;
  }
  return net[g.origin] == -1 ? sink : std::nullopt;
}

inline VertexId end_vertex(const FlowVector& f, const SwitchGraph& g) {
  const std::optional<VertexId> v = try_end_vertex(f, g);
  if (!v) throw NotAFlowError("net flow is not a flow from the origin");
  return *v;
}

inline bool nonnegative(const FlowVector& f) {
  for (const BigInt& x : f.entries)
    if (x < 0) return false;
  return true;
}

// Switching order: slot 0 is used first and the counts alternate, so
// f[s1(v)] <= f[s0(v)] <= f[s1(v)] + 1 at every vertex.
inline bool parity_condition(const FlowVector& f, const SwitchGraph& g) {
  for (VertexId v = 0; v < g.n(); ++v) {
    const BigInt& f0 = f.at(v, 0);
    const BigInt& f1 = f.at(v, 1);
    if (f0 < f1 || f0 > f1 + 1) return false;
  }
  return true;
}

// Flow from the origin to some vertex, satisfying the switching order.
inline bool is_partial_switching_flow(const FlowVector& f, const SwitchGraph& g) {
  return nonnegative(f) && try_end_vertex(f, g).has_value() && parity_condition(f, g);
}

// Full switching flow: runs to the destination.
inline bool is_switching_flow(const FlowVector& f, const SwitchGraph& g) {
  return nonnegative(f) && parity_condition(f, g) &&
         try_end_vertex(f, g) == std::optional<VertexId>{g.dest};
}

// Last-used-edge graph: at most one out-edge per vertex. For a vertex with
// positive outflow, the switching order determines which of its two edges
// was traversed last: slot 0 if the counts differ, slot 1 if they are
// equal. Untouched vertices have no edge.
struct LastEdgeGraph {
  std::vector<std::optional<std::uint8_t>> out_slot;

  std::optional<EdgeId> out_edge(VertexId v) const {
    if (!out_slot[v]) return std::nullopt;
    return EdgeId{v, *out_slot[v]};
  }
};

inline LastEdgeGraph last_edge_graph(const FlowVector& f, const SwitchGraph& g) {
  LastEdgeGraph le;
  le.out_slot.assign(g.n(), std::nullopt);
  for (VertexId v = 0; v < g.n(); ++v) {
    const BigInt& f0 = f.at(v, 0);
    const BigInt& f1 = f.at(v, 1);
    if (f0 != f1)
      le.out_slot[v] = 0;
    else if (f0 > 0)
      le.out_slot[v] = 1;
  }
  return le;
}

struct CycleDiagnosis {
  std::size_t cycle_count = 0;
  // Vertices of the cycle through `end` when there is one, in traversal
  // order; otherwise the first cycle found, if any.
  std::vector<VertexId> cycle_vertices;
  bool contains_end = false;
};

// Cycle census of a functional graph with out-degree <= 1.
inline CycleDiagnosis diagnose_cycles(const LastEdgeGraph& le, const SwitchGraph& g,
                                      VertexId end) {
  const std::size_t n = le.out_slot.size();
  CycleDiagnosis diag;
  std::vector<std::uint8_t> done(n, 0);
  std::vector<std::size_t> stamp(n, 0), pos(n, 0);
  std::vector<VertexId> path;
  std::size_t walk = 0;

  for (VertexId v0 = 0; v0 < n; ++v0) {
    if (done[v0]) continue;
    ++walk;
    path.clear();
    VertexId u = v0;
    std::optional<std::vector<VertexId>> cycle;
    for (;;) {
      if (done[u]) break;  // joins a previously explored walk; no new cycle
      if (stamp[u] == walk) {
        // Current walk re-entered itself: path[pos(u)..] is a cycle.
        cycle.emplace(path.begin() + static_cast<std::ptrdiff_t>(pos[u]), path.end());
        break;
      }
      stamp[u] = walk;
      pos[u] = path.size();
      path.push_back(u);
      const std::optional<EdgeId> e = le.out_edge(u);
      if (!e) break;
      u = g.target(*e);
    }
    for (VertexId w : path) done[w] = 1;
    if (cycle) {
      ++diag.cycle_count;
      const bool through_end =
          std::find(cycle->begin(), cycle->end(), end) != cycle->end();
      if (through_end || diag.cycle_vertices.empty()) diag.cycle_vertices = *cycle;
      diag.contains_end = diag.contains_end || through_end;
    }
  }
  return diag;
}

inline CycleDiagnosis diagnose_cycles(const FlowVector& f, const SwitchGraph& g,
                                      VertexId end) {
  return diagnose_cycles(last_edge_graph(f, g), g, end);
}

// Is f exactly the traversal-count vector of some prefix of the run? True
// iff f is a partial switching flow, no stop vertex has outflow, and the
// last-used-edge graph has no cycle or a single cycle through the end
// vertex.
inline bool is_partial_run_profile(const FlowVector& f, const SwitchGraph& g,
                                   std::span<const VertexId> stop_set) {
  if (!nonnegative(f) || !parity_condition(f, g)) return false;
  const std::optional<VertexId> end = try_end_vertex(f, g);
  if (!end) return false;
  for (VertexId s : stop_set)
    if (f.at(s, 0) != 0 || f.at(s, 1) != 0) return false;
  const CycleDiagnosis diag = diagnose_cycles(f, g, *end);
  return diag.cycle_count == 0 || (diag.cycle_count == 1 && diag.contains_end);
}

inline bool is_partial_run_profile(const FlowVector& f, const SwitchGraph& g) {
  const VertexId stops[] = {g.dest};
  return is_partial_run_profile(f, g, stops);
}

// Profile of a complete run from the origin into the destination.
inline bool is_run_profile(const FlowVector& f, const SwitchGraph& g) {
  return is_partial_run_profile(f, g) && try_end_vertex(f, g) == std::optional{g.dest};
}

// Where the train stood one step earlier. The last transition entered the
// end vertex, so the previous position is the end's unique predecessor in
// the last-used-edge graph - unless that graph has its cycle through the
// end, in which case the walk around the cycle was what happened last and
// the predecessor on the cycle wins.
inline VertexId previous_vertex(const FlowVector& f, const SwitchGraph& g,
                                std::span<const VertexId> stop_set) {
  if (f.is_zero()) throw EmptyRunError("zero-step run has no previous vertex");
  if (!is_partial_run_profile(f, g, stop_set))
    throw NotARunProfileError("previous_vertex needs a run profile");
  const VertexId end = end_vertex(f, g);
  const LastEdgeGraph le = last_edge_graph(f, g);
  const CycleDiagnosis diag = diagnose_cycles(le, g, end);
  if (diag.contains_end) {
    const auto it = std::find(diag.cycle_vertices.begin(), diag.cycle_vertices.end(), end);
    const std::size_t i = static_cast<std::size_t>(it - diag.cycle_vertices.begin());
    return diag.cycle_vertices[(i + diag.cycle_vertices.size() - 1) %
                               diag.cycle_vertices.size()];
  }
  std::optional<VertexId> pred;
  for (VertexId u = 0; u < g.n(); ++u) {
    const std::optional<EdgeId> e = le.out_edge(u);
    if (e && g.target(*e) == end) {
      if (pred) throw NotARunProfileError("end vertex has two last-edge predecessors");
      pred = u;
    }
  }
  if (!pred) throw NotARunProfileError("end vertex has no last-edge predecessor");
  return *pred;
}

inline VertexId previous_vertex(const FlowVector& f, const SwitchGraph& g) {
  const VertexId stops[] = {g.dest};
  return previous_vertex(f, g, stops);
}

// The last edge the run traversed: leaves the previous vertex u, on slot 1
// if u's counts are equal (the balancing traversal happened last) and on
// slot 0 otherwise. This is exactly u's edge in the last-used-edge graph.
inline EdgeId last_edge(const FlowVector& f, const SwitchGraph& g,
                        std::span<const VertexId> stop_set) {
  const VertexId u = previous_vertex(f, g, stop_set);
  const std::uint8_t slot = f.at(u, 0) == f.at(u, 1) ? 1 : 0;
  return EdgeId{u, slot};
}

// Positive certificate that the train reaches the destination: the full
// run profile itself, checkable in polynomial time.
inline bool verify_up_witness(const FlowVector& f, const SwitchGraph& g) {
  return is_run_profile(f, g);
}

// Negative certificate on a dead-end instance: a run profile into the dead
// end. A train that reaches the dead end can never reach the destination.
inline bool verify_coup_witness(const FlowVector& f, const DeadEndInstance& inst) {
  const std::vector<VertexId> stops = inst.stop_set();
  return is_partial_run_profile(f, inst.graph, stops) &&
         try_end_vertex(f, inst.graph) == std::optional{inst.dead_end};
}

// Solutions of the one-player-free search version of the game: either a
// run profile reaching the destination, or a run prefix whose latest
// traversal count just exceeded 2^n (all other counts at most 2^n), which
// proves the run never terminates.
enum class SimplifiedVerdict { run_to_d, cutoff_profile, invalid };

inline SimplifiedVerdict verify_simplified_solution(const FlowVector& f,
                                                    const SwitchGraph& g) {
  if (is_run_profile(f, g)) return SimplifiedVerdict::run_to_d;
  const VertexId stops[] = {g.dest};
  if (!is_partial_run_profile(f, g, stops) || f.is_zero())
    return SimplifiedVerdict::invalid;
  const EdgeId last = last_edge(f, g, stops);
  const BigInt cap = pow2(g.n());
  if (f[last] != cap + 1) return SimplifiedVerdict::invalid;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (i != last.index() && f.entries[i] > cap) return SimplifiedVerdict::invalid;
  return SimplifiedVerdict::cutoff_profile;
}

}  // namespace arrival
