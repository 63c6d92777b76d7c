#pragma once

// Switch graphs: data model, text format, dead-end completion, random
// instances.
//
// A switch graph has n vertices, each with exactly two ordered out-edges
// s0(v) and s1(v), an origin o and a destination d. Edges are identified by
// (vertex, slot); the canonical index of edge (v, b) is 2*v + b, and every
// flat edge-indexed vector in this library uses that order.

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "arrival/errors.hpp"
#include "arrival/rng.hpp"

namespace arrival {

using VertexId = std::uint32_t;

struct EdgeId {
  VertexId vertex = 0;
  std::uint8_t slot = 0;  // 0 or 1

  std::size_t index() const { return 2 * std::size_t{vertex} + slot; }
  friend bool operator==(const EdgeId&, const EdgeId&) = default;
};

struct SwitchGraph {
  // slots[v] = {s0(v), s1(v)}. Both targets must be < n().
  std::vector<std::array<VertexId, 2>> slots;
  VertexId origin = 0;
  VertexId dest = 0;

  std::size_t n() const { return slots.size(); }
  std::size_t edge_count() const { return 2 * slots.size(); }
  VertexId target(VertexId v, unsigned slot) const { return slots[v][slot]; }
  VertexId target(EdgeId e) const { return slots[e.vertex][e.slot]; }

  friend bool operator==(const SwitchGraph&, const SwitchGraph&) = default;
};

// Both out-edges of the destination redirected to itself. Runs are
// insensitive to this (they stop at d), but flow constraints assume it.
inline SwitchGraph normalize(SwitchGraph g) {
  g.slots[g.dest] = {g.dest, g.dest};
  return g;
}

inline bool is_normalized(const SwitchGraph& g) {
  return g.slots[g.dest][0] == g.dest && g.slots[g.dest][1] == g.dest;
}

// Mask over vertices: true iff the vertex has a directed path (over either
// slot, any length >= 0) to the destination. Reverse traversal from d.
inline std::vector<bool> vertices_reaching_dest(const SwitchGraph& g) {
  std::vector<std::vector<VertexId>> rev(g.n());
  for (VertexId v = 0; v < g.n(); ++v) {
    rev[g.slots[v][0]].push_back(v);
    rev[g.slots[v][1]].push_back(v);
  }
  std::vector<bool> reach(g.n(), false);
  std::vector<VertexId> stack{g.dest};
  reach[g.dest] = true;
  while (!stack.empty()) {
    const VertexId v = stack.back();
    stack.pop_back();
    for (VertexId u : rev[v]) {
      if (!reach[u]) {
        reach[u] = true;
        stack.push_back(u);
      }
    }
  }
  return reach;
}

// A graph plus a dead-end vertex such that every vertex reaches the
// destination or the dead end; runs are therefore finite. Produced by
// dead_end_transform; the dead end is always the highest-numbered vertex.
struct DeadEndInstance {
  SwitchGraph graph;
  VertexId dead_end = 0;

  std::vector<VertexId> stop_set() const { return {graph.dest, dead_end}; }
};

// Append a dead end dbar and redirect both slots of every vertex that
// cannot reach d to dbar. Vertices that can reach d keep their edges, so
// any run that would have reached d is unchanged.
inline DeadEndInstance dead_end_transform(const SwitchGraph& input) {
  const SwitchGraph g = normalize(input);
  const std::vector<bool> reach = vertices_reaching_dest(g);
  const VertexId dbar = static_cast<VertexId>(g.n());

  DeadEndInstance inst;
  inst.dead_end = dbar;
  inst.graph.origin = g.origin;
  inst.graph.dest = g.dest;
  inst.graph.slots.resize(g.n() + 1);
  for (VertexId v = 0; v < g.n(); ++v)
    inst.graph.slots[v] = reach[v] ? g.slots[v] : std::array<VertexId, 2>{dbar, dbar};
  inst.graph.slots[dbar] = {dbar, dbar};
  return inst;
}

// --- Text format ------------------------------------------------------
//
//   arrival v1
//   n <N> o <O> d <D>
//   <v> <s0> <s1>          (N lines, v = 0..N-1 in order)
//
// Lines starting with '#' are comments. Serialization is canonical:
// single spaces, LF line endings, no comments, one trailing newline.

namespace detail {

inline bool parse_u32(const std::string& tok, VertexId& out) {
  if (tok.empty() || tok.size() > 9) return false;
  std::uint64_t v = 0;
  for (char c : tok) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + static_cast<std::uint64_t>(c - '0');
  }
  out = static_cast<VertexId>(v);
  return true;
}

inline std::vector<std::string> split_ws(const std::string& line) {
  std::vector<std::string> toks;
  std::istringstream in(line);
  std::string t;
  while (in >> t) toks.push_back(t);
  return toks;
}

}  // namespace detail

inline SwitchGraph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;

  enum class Stage { header, counts, body, done } stage = Stage::header;
  SwitchGraph g;
  VertexId n = 0;
  VertexId next_vertex = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') continue;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    const std::vector<std::string> toks = detail::split_ws(line);
    switch (stage) {
      case Stage::header:
        if (toks != std::vector<std::string>{"arrival", "v1"})
          throw ParseError(line_no, "expected header 'arrival v1'");
        stage = Stage::counts;
        break;

      case Stage::counts: {
        VertexId o = 0, d = 0;
        if (toks.size() != 6 || toks[0] != "n" || toks[2] != "o" || toks[4] != "d" ||
            !detail::parse_u32(toks[1], n) || !detail::parse_u32(toks[3], o) ||
            !detail::parse_u32(toks[5], d))
          throw ParseError(line_no, "expected 'n <N> o <O> d <D>'");
        if (n == 0) throw ParseError(line_no, "vertex count must be positive");
        if (o >= n) throw ParseError(line_no, "origin index out of range");
        if (d >= n) throw ParseError(line_no, "destination index out of range");
        g.origin = o;
        g.dest = d;
        g.slots.resize(n);
        stage = Stage::body;
        break;
      }

      case Stage::body: {
        VertexId v = 0, s0 = 0, s1 = 0;
        if (toks.size() != 3 || !detail::parse_u32(toks[0], v) ||
            !detail::parse_u32(toks[1], s0) || !detail::parse_u32(toks[2], s1))
          throw ParseError(line_no, "expected '<v> <s0> <s1>'");
        if (v < next_vertex) throw ParseError(line_no, "duplicate vertex line");
        if (v != next_vertex) throw ParseError(line_no, "vertex lines must appear in order");
        if (s0 >= n || s1 >= n) throw ParseError(line_no, "edge target out of range");
        g.slots[v] = {s0, s1};
        if (++next_vertex == n) stage = Stage::done;
        break;
      }

      case Stage::done:
        throw ParseError(line_no, "unexpected content after vertex lines");
    }
  }

  if (stage != Stage::done) throw ParseError(line_no + 1, "unexpected end of input");
  return g;
}

inline std::string serialize_graph(const SwitchGraph& g) {
  std::ostringstream out;
  out << "arrival v1\n";
  out << "n " << g.n() << " o " << g.origin << " d " << g.dest << "\n";
  for (VertexId v = 0; v < g.n(); ++v)
    out << v << " " << g.slots[v][0] << " " << g.slots[v][1] << "\n";
  return out.str();
}

enum class GenModel { uniform, reachable };

// Random instance with origin 0 and destination n-1, normalized. Pure in
// (n, seed, model). In the reachable model, graphs without an o->d path are
// rejected and redrawn; gives up after 10000 rejections.
inline SwitchGraph gen_random(std::size_t n, std::uint64_t seed, GenModel model) {
  if (n < 2) throw Error("gen_random needs at least 2 vertices");
  SplitMix64 rng(mix64(seed));
  for (int attempt = 0; attempt < 10000; ++attempt) {
    SwitchGraph g;
    g.origin = 0;
    g.dest = static_cast<VertexId>(n - 1);
    g.slots.resize(n);
    for (VertexId v = 0; v < n; ++v) {
      g.slots[v][0] = static_cast<VertexId>(rng.below(n));
      g.slots[v][1] = static_cast<VertexId>(rng.below(n));
    }
    g = normalize(g);
    if (model == GenModel::uniform || vertices_reaching_dest(g)[g.origin]) return g;
  }
  throw Error("gen_random: no reachable instance after 10000 rejections");
}

}  // namespace arrival
