#pragma once

// Recovering a run prefix from its end vertex and switch parities.
//
// On a dead-end instance, a prefix's traversal counts are pinned down by
// far less data than the counts themselves: the vertex the train sits on
// and, per interior vertex, the single bit f[s0(v)] - f[s1(v)]. Those
// bits plus flow conservation give a square linear system over the
// interior edges - Kirchhoff rows (net flow 0 except -1 at the origin and
// +1 at the end vertex) and parity rows (f[s0(v)] - f[s1(v)] = bit). The
// matrix depends only on the instance and is invertible whenever every
// vertex reaches a sink, which the dead-end construction guarantees; so
// each (end, bits) pair decodes to at most one candidate flow, which is
// then validated and checked to be a genuine run prefix. Solving is done
// in exact rational arithmetic - entries grow exponentially in n and the
// accept/reject answer must be exact.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "arrival/errors.hpp"
#include "arrival/flow.hpp"
#include "arrival/flows.hpp"
#include "arrival/graph.hpp"
#include "arrival/numeric.hpp"

namespace arrival {

// Switch parities of the interior vertices (everything except destination
// and dead end), in ascending vertex order. Bit 1 means the vertex has
// forwarded an odd number of trains: f[s0(v)] = f[s1(v)] + 1.
using ParityVector = std::vector<std::uint8_t>;

struct ParityEncoding {
  VertexId end = 0;
  ParityVector parity;

  friend bool operator==(const ParityEncoding&, const ParityEncoding&) = default;
};

inline std::vector<VertexId> interior_vertices(const DeadEndInstance& inst) {
  std::vector<VertexId> vs;
  vs.reserve(inst.graph.n() - 2);
  for (VertexId v = 0; v < inst.graph.n(); ++v)
    if (v != inst.graph.dest && v != inst.dead_end) vs.push_back(v);
  return vs;
}

// Square integer system over the interior edges: one Kirchhoff row and one
// parity row per interior vertex. All coefficients are in {-1, 0, 1}.
struct LinearSystem {
  std::vector<std::vector<int>> a;
  std::vector<int> rhs;
  std::vector<EdgeId> edges;  // column j corresponds to edges[j]

  std::size_t dim() const { return a.size(); }
};

inline LinearSystem build_system(const DeadEndInstance& inst, VertexId target,
                                 const ParityVector& parity) {
  const SwitchGraph& g = inst.graph;
  const std::vector<VertexId> interior = interior_vertices(inst);
  if (parity.size() != interior.size())
    throw Error("parity vector has wrong length");

  LinearSystem sys;
  for (VertexId v : interior) {
    sys.edges.push_back(EdgeId{v, 0});
    sys.edges.push_back(EdgeId{v, 1});
  }
  const std::size_t m = sys.edges.size();
  sys.a.assign(2 * interior.size(), std::vector<int>(m, 0));
  sys.rhs.assign(2 * interior.size(), 0);

  // Kirchhoff rows. A self-loop contributes -1 + 1 = 0.
  for (std::size_t i = 0; i < interior.size(); ++i) {
    const VertexId v = interior[i];
    for (std::size_t j = 0; j < m; ++j) {
      const EdgeId e = sys.edges[j];
      if (e.vertex == v) sys.a[i][j] -= 1;
      if (g.target(e) == v) sys.a[i][j] += 1;
    }
    sys.rhs[i] = (v == target ? 1 : 0) - (v == g.origin ? 1 : 0);
  }

  // Parity rows: f[s0(v)] - f[s1(v)] = bit.
  for (std::size_t i = 0; i < interior.size(); ++i) {
    const std::size_t r = interior.size() + i;
    sys.a[r][2 * i] = 1;
    sys.a[r][2 * i + 1] = -1;
    sys.rhs[r] = parity[i];
  }
  return sys;
}

// Gaussian elimination over exact rationals; pivot is the first row with a
// nonzero entry in the current column.
inline std::vector<BigRat> solve_exact(const LinearSystem& sys) {
  const std::size_t m = sys.dim();
  std::vector<std::vector<BigRat>> a(m, std::vector<BigRat>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) a[i][j] = sys.a[i][j];
    a[i][m] = sys.rhs[i];
  }

  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && a[pivot][col] == 0) ++pivot;
    if (pivot == m)
      throw SingularSystemError("decode system is singular; some vertex reaches no sink");
    if (pivot != col) std::swap(a[pivot], a[col]);
    for (std::size_t r = col + 1; r < m; ++r) {
      if (a[r][col] == 0) continue;
      const BigRat factor = a[r][col] / a[col][col];
      for (std::size_t j = col; j <= m; ++j) a[r][j] -= factor * a[col][j];
    }
  }

  std::vector<BigRat> x(m);
  for (std::size_t i = m; i-- > 0;) {
    BigRat acc = a[i][m];
    for (std::size_t j = i + 1; j < m; ++j) acc -= a[i][j] * x[j];
    x[i] = acc / a[i][i];
  }
  return x;
}

// Parity encoding of a run prefix. Lossy on its face - the counts are
// dropped - yet decode() inverts it exactly.
inline ParityEncoding encode(const FlowVector& f, const DeadEndInstance& inst) {
  const std::vector<VertexId> stops = inst.stop_set();
  if (!is_partial_run_profile(f, inst.graph, stops))
    throw NotARunProfileError("encode needs a run prefix");
  ParityEncoding enc;
  enc.end = end_vertex(f, inst.graph);
  for (VertexId v : interior_vertices(inst))
    enc.parity.push_back(static_cast<std::uint8_t>(f.at(v, 0) - f.at(v, 1)));
  return enc;
}

enum class DecodeReject {
  accepted,
  fractional_entry,
  negative_entry,
  sink_kirchhoff,
  not_a_profile,
};

namespace detail {

// Shared validation tail: candidate interior entries -> checked profile.
inline std::optional<FlowVector> finish_decode(const DeadEndInstance& inst,
                                               const ParityEncoding& enc,
                                               const std::vector<EdgeId>& edges,
                                               std::vector<BigInt> values,
                                               DecodeReject* why) {
  const SwitchGraph& g = inst.graph;
  for (const BigInt& v : values) {
    if (v < 0) {
      if (why) *why = DecodeReject::negative_entry;
      return std::nullopt;
    }
  }
  FlowVector f = FlowVector::zeros(g.n());
  for (std::size_t j = 0; j < edges.size(); ++j) f[edges[j]] = std::move(values[j]);

  // The system forced Kirchhoff at interior vertices only; the sinks'
  // balance is not implied and must be checked against the claimed end.
  const std::vector<BigInt> net = net_flow(f, g);
  for (VertexId v : {g.dest, inst.dead_end}) {
    const int expect = (v == enc.end ? 1 : 0) - (v == g.origin ? 1 : 0);
    if (net[v] != expect) {
      if (why) *why = DecodeReject::sink_kirchhoff;
      return std::nullopt;
    }
  }
  const std::vector<VertexId> stops = inst.stop_set();
  if (!is_partial_run_profile(f, g, stops)) {
    if (why) *why = DecodeReject::not_a_profile;
    return std::nullopt;
  }
  if (why) *why = DecodeReject::accepted;
  return f;
}

}  // namespace detail

// Attempts to invert the parity encoding: solves the linear system for the
// interior edge counts, then validates. Returns nullopt when (end, parity)
// does not describe any run prefix - the solution had a fractional or
// negative entry, unbalanced sinks, or failed the run-prefix check.
inline std::optional<FlowVector> decode(const DeadEndInstance& inst,
                                        const ParityEncoding& enc,
                                        DecodeReject* why = nullptr) {
  if (enc.end >= inst.graph.n()) throw Error("end vertex out of range");
  const LinearSystem sys = build_system(inst, enc.end, enc.parity);
  const std::vector<BigRat> sol = solve_exact(sys);
  std::vector<BigInt> values;
  values.reserve(sol.size());
  for (const BigRat& x : sol) {
    if (denominator(x) != 1) {
      if (why) *why = DecodeReject::fractional_entry;
      return std::nullopt;
    }
    values.push_back(numerator(x));
  }
  return detail::finish_decode(inst, enc, sys.edges, std::move(values), why);
}

// Decoder with the instance-dependent work hoisted out: the system matrix
// is inverted once (integrally, as adjugate / determinant), after which
// each decode costs one integer matrix-vector product. Produces bit-for-
// bit the same accept/reject decisions and flows as decode().
class DecodeContext {
 public:
  explicit DecodeContext(const DeadEndInstance& inst) : inst_(inst) {
    const std::vector<VertexId> interior = interior_vertices(inst);
    const LinearSystem sys =
        build_system(inst, inst.graph.origin, ParityVector(interior.size(), 0));
    edges_ = sys.edges;
    const std::size_t m = sys.dim();

    // Gauss-Jordan on [A | I] over rationals; det from the pivots.
    std::vector<std::vector<BigRat>> a(m, std::vector<BigRat>(2 * m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) a[i][j] = sys.a[i][j];
      a[i][m + i] = 1;
    }
    BigRat det = 1;
    for (std::size_t col = 0; col < m; ++col) {
      std::size_t pivot = col;
      while (pivot < m && a[pivot][col] == 0) ++pivot;
      if (pivot == m)
        throw SingularSystemError("decode system is singular; some vertex reaches no sink");
      if (pivot != col) {
        std::swap(a[pivot], a[col]);
        det = -det;
      }
      det *= a[col][col];
      const BigRat inv = BigRat{1} / a[col][col];
      for (std::size_t j = col; j < 2 * m; ++j) a[col][j] *= inv;
      for (std::size_t r = 0; r < m; ++r) {
        if (r == col || a[r][col] == 0) continue;
        const BigRat factor = a[r][col];
        for (std::size_t j = col; j < 2 * m; ++j) a[r][j] -= factor * a[col][j];
      }
    }
    // A is integral, so det(A) and det * A^{-1} (the adjugate) are too;
    // anything else means the elimination above is broken.
    if (denominator(det) != 1) throw Error("internal: determinant not integral");
    det_ = numerator(det);

    adjugate_.assign(m, std::vector<BigInt>(m));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = 0; j < m; ++j) {
        const BigRat entry = a[i][m + j] * det;
        if (denominator(entry) != 1) throw Error("internal: adjugate not integral");
        adjugate_[i][j] = numerator(entry);
      }
    }

    // Right-hand sides decompose as (Kirchhoff base for t) + (parity
    // bits); precompute the constant origin part.
    base_rhs_.assign(m, 0);
    for (std::size_t i = 0; i < interior.size(); ++i)
      if (interior[i] == inst.graph.origin) base_rhs_[i] -= 1;
    interior_index_.assign(inst.graph.n(), m);
    for (std::size_t i = 0; i < interior.size(); ++i) interior_index_[interior[i]] = i;
  }

  const BigInt& det() const { return det_; }

  std::optional<FlowVector> decode(const ParityEncoding& enc,
                                   DecodeReject* why = nullptr) const {
    const std::size_t m = edges_.size();
    if (enc.end >= inst_.graph.n()) throw Error("end vertex out of range");
    if (enc.parity.size() * 2 != m) throw Error("parity vector has wrong length");
    std::vector<int> rhs = base_rhs_;
    if (interior_index_[enc.end] < m) rhs[interior_index_[enc.end]] += 1;
    for (std::size_t i = 0; i < enc.parity.size(); ++i)
      rhs[m / 2 + i] = base_rhs_[m / 2 + i] + enc.parity[i];

    std::vector<BigInt> values(m);
    for (std::size_t i = 0; i < m; ++i) {
      BigInt acc = 0;
      for (std::size_t j = 0; j < m; ++j)
        if (rhs[j] != 0) acc += adjugate_[i][j] * rhs[j];
      // x_i = acc / det must be a nonnegative integer.
      BigInt q, r;
      divide_qr(acc, det_, q, r);
      if (r != 0) {
        if (why) *why = DecodeReject::fractional_entry;
        return std::nullopt;
      }
      values[i] = std::move(q);
    }
    return detail::finish_decode(inst_, enc, edges_, std::move(values), why);
  }

 private:
  DeadEndInstance inst_;
  std::vector<EdgeId> edges_;
  std::vector<std::vector<BigInt>> adjugate_;  // det * A^{-1}
  BigInt det_;
  std::vector<int> base_rhs_;
  std::vector<std::size_t> interior_index_;
};

}  // namespace arrival
