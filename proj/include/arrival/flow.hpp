#pragma once

// Edge-indexed integer vectors. A FlowVector assigns a nonnegative count to
// every edge of a switch graph, in canonical edge order (vertex, then slot).

#include <cstddef>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "arrival/errors.hpp"
#include "arrival/graph.hpp"
#include "arrival/numeric.hpp"

namespace arrival {

struct FlowVector {
  std::vector<BigInt> entries;  // size 2n, index 2*v + slot

  static FlowVector zeros(std::size_t n_vertices) {
    FlowVector f;
    f.entries.assign(2 * n_vertices, BigInt{0});
    return f;
  }

  std::size_t size() const { return entries.size(); }

  BigInt& operator[](EdgeId e) { return entries[e.index()]; }
  const BigInt& operator[](EdgeId e) const { return entries[e.index()]; }

  BigInt& at(VertexId v, unsigned slot) { return entries[2 * std::size_t{v} + slot]; }
  const BigInt& at(VertexId v, unsigned slot) const {
    return entries[2 * std::size_t{v} + slot];
  }

  bool is_zero() const {
    for (const BigInt& x : entries)
      if (x != 0) return false;
    return true;
  }

  BigInt sum() const {
    BigInt s = 0;
    for (const BigInt& x : entries) s += x;
    return s;
  }

  friend bool operator==(const FlowVector&, const FlowVector&) = default;
};

// --- Text format ------------------------------------------------------
//
//   flow v1
//   <2n decimal integers, whitespace-separated, canonical edge order>
//
// Serialization puts all entries on one space-separated line.

inline FlowVector parse_flow(std::string_view text, std::size_t n_vertices) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;

  bool saw_header = false;
  FlowVector f;
  f.entries.reserve(2 * n_vertices);

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty() && line.front() == '#') continue;
    if (line.find_first_not_of(" \t") == std::string::npos) continue;

    if (!saw_header) {
      if (detail::split_ws(line) != std::vector<std::string>{"flow", "v1"})
        throw ParseError(line_no, "expected header 'flow v1'");
      saw_header = true;
      continue;
    }
    for (const std::string& tok : detail::split_ws(line)) {
      if (f.entries.size() == 2 * n_vertices)
        throw ParseError(line_no, "too many entries");
      if (tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line_no, "entries must be nonnegative integers");
      f.entries.emplace_back(tok);
    }
  }

  if (!saw_header) throw ParseError(line_no + 1, "expected header 'flow v1'");
  if (f.entries.size() != 2 * n_vertices)
    throw ParseError(line_no + 1, "expected " + std::to_string(2 * n_vertices) +
                                      " entries, got " + std::to_string(f.entries.size()));
  return f;
}

inline std::string serialize_flow(const FlowVector& f) {
  std::ostringstream out;
  out << "flow v1\n";
  for (std::size_t i = 0; i < f.entries.size(); ++i) {
    if (i) out << " ";
    out << f.entries[i];
  }
  out << "\n";
  return out.str();
}

}  // namespace arrival
