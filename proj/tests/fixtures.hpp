#pragma once

// Shared fixtures: two worked instances whose runs and derived structures
// were computed independently (by hand and by the oracle in oracle.hpp)
// and then frozen.

#include "arrival/flow.hpp"
#include "arrival/graph.hpp"

#include <initializer_list>

namespace fixtures {

using arrival::FlowVector;
using arrival::SwitchGraph;

inline FlowVector flow_of(std::initializer_list<long long> entries) {
  FlowVector f;
  for (long long x : entries) f.entries.emplace_back(x);
  return f;
}

// Four vertices; the run is o -> v1 -> v2 -> v2 -> v1 -> d, five steps.
//
//   o=0: (v1, o)   v1=1: (v2, d)   v2=2: (v2, v1)   d=3: (d, d)
inline SwitchGraph four_vertex_graph() {
  SwitchGraph g;
  g.slots = {{1, 0}, {2, 3}, {2, 1}, {3, 3}};
  g.origin = 0;
  g.dest = 3;
  return g;
}

// Traversal counts of the full five-step run of four_vertex_graph().
inline FlowVector four_vertex_profile() { return flow_of({1, 0, 1, 1, 1, 1, 0, 0}); }

// Eleven vertices (o = 0, d = 10), trickier topology: the run takes 33
// steps and several vertices are visited many times.
inline SwitchGraph eleven_vertex_graph() {
  SwitchGraph g;
  g.slots = {{1, 0}, {2, 3}, {2, 1}, {5, 7}, {5, 4}, {8, 7},
             {3, 10}, {4, 5}, {9, 6}, {7, 7}, {10, 10}};
  g.origin = 0;
  g.dest = 10;
  return g;
}

// Traversal counts of the full 33-step run of eleven_vertex_graph().
inline FlowVector eleven_vertex_profile() {
  return flow_of({1, 0, 1, 1, 1, 1, 1, 1, 3, 2, 4, 3, 1, 1, 3, 3, 2, 2, 1, 1, 0, 0});
}

}  // namespace fixtures
