#pragma once

// A run viewed as a line graph over flow vectors, in the style of
// end-of-metered-line search problems. Points are edge-count vectors with
// coordinates in [0, 2^n + 1]; the prefixes of the run form a path
//
//   source (all zero) -> 1-step prefix -> 2-step prefix -> ...
//
// with every other point an isolated self-loop. The successor of a prefix
// appends the run's next step; it self-loops once the run has entered a
// stop vertex (the run ended) or a coordinate has reached 2^n + 1 (the run
// provably never ends). The valuation of a prefix is 1 + its step count, 0
// off the path. Solving the game therefore reduces to finding the end of
// the path, a problem local search can attack from any on-path point.

#include <cstddef>
#include <utility>
#include <vector>

#include "arrival/errors.hpp"
#include "arrival/flow.hpp"
#include "arrival/flows.hpp"
#include "arrival/graph.hpp"
#include "arrival/numeric.hpp"
#include "arrival/sim.hpp"

namespace arrival {

using EomlPoint = FlowVector;

class ArrivalEoml {
 public:
  ArrivalEoml(SwitchGraph g, std::vector<VertexId> stop_set)
      : graph_(std::move(g)), stop_set_(std::move(stop_set)), cap_(pow2(graph_.n()) + 1) {}

  explicit ArrivalEoml(const SwitchGraph& g) : ArrivalEoml(g, {g.dest}) {}

  explicit ArrivalEoml(const DeadEndInstance& inst)
      : ArrivalEoml(inst.graph, inst.stop_set()) {}

  const SwitchGraph& graph() const { return graph_; }
  const std::vector<VertexId>& stop_set() const { return stop_set_; }
  const BigInt& cap() const { return cap_; }  // largest legal coordinate

  EomlPoint source() const { return FlowVector::zeros(graph_.n()); }

  // On-path points are run prefixes; everything else self-loops.
  bool in_domain(const EomlPoint& x) const {
    if (x.size() != graph_.edge_count()) return false;
    for (const BigInt& e : x.entries)
      if (e > cap_) return false;
    return is_partial_run_profile(x, graph_, stop_set_);
  }

  EomlPoint successor(const EomlPoint& x) const {
    if (!in_domain(x)) return x;
    const VertexId v = end_vertex(x, graph_);
    if (contains(stop_set_, v)) return x;  // run over: path sink
    for (const BigInt& e : x.entries)
      if (e == cap_) return x;  // cutoff: path sink
    // The next departure from v uses slot 0 after an even number of
    // visits, slot 1 after an odd number - i.e. slot f[s0(v)] - f[s1(v)].
    const unsigned b = x.at(v, 0) == x.at(v, 1) ? 0 : 1;
    EomlPoint y = x;
    ++y.at(v, b);
    return y;
  }

  EomlPoint predecessor(const EomlPoint& x) const {
    if (!in_domain(x) || x.is_zero()) return x;
    const EdgeId e = last_edge(x, graph_, stop_set_);
    EomlPoint y = x;
    --y[e];
    return y;
  }

  BigInt valuation(const EomlPoint& x) const {
    return in_domain(x) ? BigInt{1} + x.sum() : BigInt{0};
  }

 private:
  SwitchGraph graph_;
  std::vector<VertexId> stop_set_;
  BigInt cap_;
};

enum class EomlSolutionType { type1, type2, type3, not_a_solution };

inline const char* eoml_solution_name(EomlSolutionType t) {
  switch (t) {
    case EomlSolutionType::type1: return "Type1";
    case EomlSolutionType::type2: return "Type2";
    case EomlSolutionType::type3: return "Type3";
    default: return "NotASolution";
  }
}

// Classifies x against the three solution shapes of end-of-metered-line
// problems, checking in order Type1, Type2, Type3:
//   Type1: P(S(x)) != x, or x != source and S(P(x)) != x  (endpoint)
//   Type2: x != source and V(x) = 1                       (second start)
//   Type3: V jumps by something other than 1 along the path at x
// The path's sink satisfies both Type1 and Type3; the fixed order reports
// such points as Type1.
template <class Problem>
EomlSolutionType check_eoml_solution(const EomlPoint& x, const Problem& p) {
  const EomlPoint sx = p.successor(x);
  const bool is_source = x == p.source();
  if (p.predecessor(sx) != x) return EomlSolutionType::type1;
  if (!is_source && p.successor(p.predecessor(x)) != x) return EomlSolutionType::type1;
  if (!is_source && p.valuation(x) == 1) return EomlSolutionType::type2;
  const BigInt vx = p.valuation(x);
  if (vx > 0 && p.valuation(sx) - vx != 1) return EomlSolutionType::type3;
  if (vx > 1 && vx - p.valuation(p.predecessor(x)) != 1) return EomlSolutionType::type3;
  return EomlSolutionType::not_a_solution;
}

struct WalkResult {
  EomlPoint point;     // first point with successor(point) == point
  BigInt evaluations;  // successor calls made, including the detecting one
  BigInt advances;     // evaluations - 1
};

// Follows successors from start until a fixed point. From a point of the
// prefix path the fixed point reached is the path's sink, after
// (sink valuation - start valuation) + 1 evaluations.
template <class Problem>
WalkResult walk(const Problem& p, EomlPoint start, const BigInt& max_evaluations) {
  EomlPoint x = std::move(start);
  BigInt evals = 0;
  for (;;) {
    if (evals >= max_evaluations)
      throw BudgetExhaustedError("walk exceeded its evaluation budget");
    EomlPoint y = p.successor(x);
    ++evals;
    if (y == x) return WalkResult{std::move(x), evals, evals - 1};
    x = std::move(y);
  }
}

}  // namespace arrival
