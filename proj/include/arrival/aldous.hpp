#pragma once

// Sample-then-walk solver.
//
// The run prefixes of a dead-end instance form a path of length L + 1 in a
// space of roughly N * 2^{N-2} candidate points, each describable by an
// (end vertex, parity bits) pair. Drawing about sqrt of the space size of
// such pairs uniformly, decoding each one, and starting a successor walk
// from the best hit lands, in expectation, within O(sqrt(space)) steps of
// the path's sink - the same trick as birthday-paradox search. The walk
// end is the run's final profile; the scheme solves the game with an
// expected 2^{m/2} * poly(N) operations instead of the simulator's worst
// case of N * 2^N.
//
// Determinism contract: for a fixed (instance, seed, samples) the report
// is identical whatever the worker count, because sample i is generated
// from its own stream derived from (seed, i) and candidates are merged by
// a total order.

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "arrival/decode.hpp"
#include "arrival/eoml.hpp"
#include "arrival/errors.hpp"
#include "arrival/flow.hpp"
#include "arrival/flows.hpp"
#include "arrival/graph.hpp"
#include "arrival/numeric.hpp"
#include "arrival/rng.hpp"
#include "arrival/sim.hpp"

namespace arrival {

struct SolverConfig {
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  BigInt walk_budget;
  unsigned workers = 1;
};

// ceil(sqrt(2^m)) samples for the m-bit encoding space, capped at 2^24;
// walk budget n * 2^n, enough to reach the sink from any start.
inline SolverConfig default_config(const DeadEndInstance& inst, std::uint64_t seed = 0) {
  const std::size_t n = inst.graph.n();
  const std::size_t m = (n - 2) + ceil_log2(n);
  const BigInt space = pow2(m);
  BigInt root = sqrt(space);
  if (root * root < space) ++root;
  const BigInt cap = BigInt{1} << 24;
  if (root > cap) root = cap;

  SolverConfig cfg;
  cfg.seed = seed;
  cfg.samples = root.convert_to<std::uint64_t>();
  cfg.walk_budget = step_budget(inst.graph);
  cfg.workers = 1;
  return cfg;
}

// Uniform draw from the encoding space: end over all vertices, each
// interior parity bit an independent coin.
inline ParityEncoding sample_encoding(SplitMix64& rng, const DeadEndInstance& inst) {
  ParityEncoding enc;
  enc.end = static_cast<VertexId>(rng.below(inst.graph.n()));
  const std::size_t nbits = inst.graph.n() - 2;
  enc.parity.resize(nbits);
  std::uint64_t word = 0;
  for (std::size_t i = 0; i < nbits; ++i) {
    if (i % 64 == 0) word = rng.next();
    enc.parity[i] = static_cast<std::uint8_t>((word >> (i % 64)) & 1);
  }
  return enc;
}

struct SolverReport {
  FlowVector solution;  // full profile of the run
  VertexId reached = 0;
  BigInt steps;
  std::uint64_t samples_drawn = 0;
  std::uint64_t valid_samples = 0;
  BigInt best_sample_value;  // valuation of the walk's start point
  BigInt successor_evaluations;
  BigInt walk_advances;
  double wall_time_ms = 0;

  // Stable key-value rendering; wall time is optional so reports can be
  // compared across runs.
  std::vector<std::string> lines(bool include_wall_time) const {
    std::vector<std::string> out;
    out.push_back("samples_drawn " + std::to_string(samples_drawn));
    out.push_back("valid_samples " + std::to_string(valid_samples));
    out.push_back("best_sample_value " + best_sample_value.str());
    out.push_back("successor_evaluations " + successor_evaluations.str());
    out.push_back("walk_advances " + walk_advances.str());
    out.push_back("reached " + std::to_string(reached));
    out.push_back("steps " + steps.str());
    if (include_wall_time) out.push_back("wall_time_ms " + std::to_string(wall_time_ms));
    return out;
  }
};

namespace detail {

inline BigInt parity_to_int(const ParityVector& parity) {
  BigInt x = 0;
  for (std::size_t i = parity.size(); i-- > 0;) {
    x <<= 1;
    x += parity[i];
  }
  return x;
}

struct Candidate {
  BigInt value;       // valuation; higher is better
  VertexId end = 0;   // tie-break 1: lower wins
  BigInt parity_key;  // tie-break 2: lower wins
  EomlPoint point;

  bool better_than(const Candidate& o) const {
    if (value != o.value) return value > o.value;
    if (end != o.end) return end < o.end;
    return parity_key < o.parity_key;
  }
};

}  // namespace detail

inline SolverReport aldous_solve(const DeadEndInstance& inst, const SolverConfig& cfg) {
  const auto t0 = std::chrono::steady_clock::now();
  const ArrivalEoml eoml(inst);
  const DecodeContext ctx(inst);

  // The empty prefix is always available, so the walk never lacks a start.
  detail::Candidate best{BigInt{1}, inst.graph.origin, BigInt{0}, eoml.source()};
  std::uint64_t valid = 0;

  auto scan = [&](std::uint64_t lo, std::uint64_t hi, detail::Candidate& local_best,
                  std::uint64_t& local_valid) {
    for (std::uint64_t i = lo; i < hi; ++i) {
      SplitMix64 rng = sample_stream(cfg.seed, i);
      const ParityEncoding enc = sample_encoding(rng, inst);
      const std::optional<FlowVector> point = ctx.decode(enc);
      if (!point) continue;
      const BigInt value = eoml.valuation(*point);
      if (value == 0) continue;  // decodable but outside the point space
      ++local_valid;
      detail::Candidate cand{value, enc.end, detail::parity_to_int(enc.parity),
                             std::move(*point)};
      if (cand.better_than(local_best)) local_best = std::move(cand);
    }
  };

  const unsigned workers =
      cfg.workers > 1 && cfg.samples >= 2 * cfg.workers ? cfg.workers : 1;
  if (workers == 1) {
    scan(0, cfg.samples, best, valid);
  } else {
    std::vector<detail::Candidate> bests(workers, best);
    std::vector<std::uint64_t> valids(workers, 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (cfg.samples + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::uint64_t lo = std::min<std::uint64_t>(w * chunk, cfg.samples);
      const std::uint64_t hi = std::min<std::uint64_t>(lo + chunk, cfg.samples);
      pool.emplace_back([&, lo, hi, w] { scan(lo, hi, bests[w], valids[w]); });
    }
    for (std::thread& t : pool) t.join();
    for (unsigned w = 0; w < workers; ++w) {
      valid += valids[w];
      if (bests[w].better_than(best)) best = std::move(bests[w]);
    }
  }

  SolverReport rep;
  rep.samples_drawn = cfg.samples;
  rep.valid_samples = valid;
  rep.best_sample_value = best.value;

  WalkResult end = walk(eoml, std::move(best.point), cfg.walk_budget);
  rep.successor_evaluations = end.evaluations;
  rep.walk_advances = end.advances;
  rep.solution = std::move(end.point);
  rep.reached = end_vertex(rep.solution, inst.graph);
  rep.steps = rep.solution.sum();

  // The result must be a checkable certificate, not just a fixed point.
  const std::vector<VertexId> stops = inst.stop_set();
  if (!is_partial_run_profile(rep.solution, inst.graph, stops) ||
      !contains(stops, rep.reached))
    throw Error("internal: walk ended off the run path");

  rep.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
          .count();
  return rep;
}

// Generic local-optimum search over any such problem: draw starts, keep
// the best by valuation (first hit wins ties), climb until the valuation
// stops improving. Sampler: (index) -> optional point.
struct LocalOptResult {
  EomlPoint point;
  BigInt value;
  std::uint64_t samples_drawn = 0;
  std::uint64_t valid_samples = 0;
  BigInt best_sample_value;
  BigInt successor_evaluations;
};

template <class Problem, class Sampler>
LocalOptResult localopt_solve(const Problem& p, Sampler&& sample, std::uint64_t samples,
                              const BigInt& budget) {
  EomlPoint best = p.source();
  BigInt best_value = p.valuation(best);
  std::uint64_t valid = 0;
  for (std::uint64_t i = 0; i < samples; ++i) {
    std::optional<EomlPoint> cand = sample(i);
    if (!cand) continue;
    const BigInt value = p.valuation(*cand);
    if (value == 0) continue;
    ++valid;
    if (value > best_value) {
      best_value = value;
      best = std::move(*cand);
    }
  }

  LocalOptResult res;
  res.samples_drawn = samples;
  res.valid_samples = valid;
  res.best_sample_value = best_value;
  res.successor_evaluations = 0;
  for (;;) {
    if (res.successor_evaluations >= budget)
      throw BudgetExhaustedError("local search exceeded its evaluation budget");
    EomlPoint next = p.successor(best);
    ++res.successor_evaluations;
    if (p.valuation(best) >= p.valuation(next)) break;
    best = std::move(next);
  }
  res.point = std::move(best);
  res.value = p.valuation(res.point);
  return res;
}

// aldous_solve expressed through the generic search; used to cross-check
// the two implementations against each other.
inline LocalOptResult localopt_solve(const DeadEndInstance& inst, const SolverConfig& cfg) {
  const ArrivalEoml eoml(inst);
  const DecodeContext ctx(inst);
  auto sampler = [&](std::uint64_t i) -> std::optional<EomlPoint> {
    SplitMix64 rng = sample_stream(cfg.seed, i);
    return ctx.decode(sample_encoding(rng, inst));
  };
  return localopt_solve(eoml, sampler, cfg.samples, cfg.walk_budget);
}

}  // namespace arrival
