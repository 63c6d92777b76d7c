// Command-line front end for the arrival library.
//
// Exit codes, uniform across subcommands:
//   0  success / property holds
//   1  input or usage error
//   2  a step or evaluation budget was exhausted
//   3  the checked property does not hold

#include "arrival/arrival.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace arrival;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitBudget = 2;
constexpr int kExitFails = 3;

std::string read_input(const std::string& path) {
  if (path == "-") {
    std::ostringstream buf;
    buf << std::cin.rdbuf();
    return buf.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path + "' for writing");
  out << text;
}

SwitchGraph load_graph(const std::string& path) { return parse_graph(read_input(path)); }

// The stop-set flag: "d" stops at the destination only; "d+dbar" also
// stops at the highest-numbered vertex, the dead end's slot in graphs
// written by the deadend subcommand.
std::vector<VertexId> stop_vertices(const SwitchGraph& g, const std::string& mode) {
  if (mode == "d") return {g.dest};
  const VertexId last = static_cast<VertexId>(g.n() - 1);
  if (last == g.dest) return {g.dest};
  return {g.dest, last};
}

std::string vertex_label(const SwitchGraph& g, VertexId v, const std::string& mode) {
  if (v == g.dest) return "d";
  if (mode == "d+dbar" && v + 1 == g.n()) return "dbar";
  return std::to_string(v);
}

// Why a flow fails to be a run prefix, or nullopt if it is one.
std::optional<std::string> partial_profile_reason(const FlowVector& f,
                                                  const SwitchGraph& g,
                                                  const std::vector<VertexId>& stops) {
  if (!is_partial_switching_flow(f, g)) return "not a switching flow";
  for (VertexId s : stops)
    if (f.at(s, 0) != 0 || f.at(s, 1) != 0) return "outflow at stop vertex";
  const CycleDiagnosis diag = diagnose_cycles(f, g, end_vertex(f, g));
  if (diag.cycle_count > 0 && !(diag.cycle_count == 1 && diag.contains_end))
    return "cycle off the end vertex";
  return std::nullopt;
}

int cmd_simulate(const std::string& graph_path, const std::string& stop_mode,
                 const std::string& max_steps_text, bool trace) {
  const SwitchGraph g = load_graph(graph_path);
  const std::vector<VertexId> stops = stop_vertices(g, stop_mode);
  BigInt budget = step_budget(g);
  if (!max_steps_text.empty()) {
    if (max_steps_text.find_first_not_of("0123456789") != std::string::npos)
      throw Error("--max-steps must be a nonnegative integer");
    budget = BigInt(max_steps_text);
  }

  struct TracePrinter {
    static void print(void*, const BigInt& step, VertexId from, unsigned slot,
                      VertexId to) {
      std::cout << step << " " << from << " " << slot << " " << to << "\n";
    }
  };
  const RunOutcome out =
      run(g, stops, budget, trace ? &TracePrinter::print : nullptr, nullptr);

  if (out.reached())
    std::cout << "reached " << vertex_label(g, out.stop_vertex, stop_mode) << " steps "
              << out.steps << "\n";
  else
    std::cout << "cutoff steps " << out.steps << "\n";
  std::cout << serialize_flow(out.profile);
  return out.reached() ? kExitOk : kExitBudget;
}

// Shared by verify-flow and verify-run; the two differ only in which line
// decides the exit code.
int cmd_verify(const std::string& graph_path, const std::string& flow_path,
               const std::string& stop_mode, bool require_full) {
  const SwitchGraph g = load_graph(graph_path);
  const FlowVector f = parse_flow(read_input(flow_path), g.n());
  const std::vector<VertexId> stops = stop_vertices(g, stop_mode);

  const bool switching = is_partial_switching_flow(f, g);
  const std::optional<VertexId> end = try_end_vertex(f, g);
  std::cout << "switching-flow: " << (switching ? "yes" : "no") << "\n";
  std::cout << "end-vertex: ";
  if (end)
    std::cout << *end << "\n";
  else
    std::cout << "none\n";

  const CycleDiagnosis diag = diagnose_cycles(f, g, end.value_or(g.origin));
  std::cout << "cycles: " << diag.cycle_count << "\n";
  std::cout << "cycle-through-end: " << (diag.contains_end ? "yes" : "no") << "\n";

  const std::optional<std::string> reason = partial_profile_reason(f, g, stops);
  if (reason)
    std::cout << "partial-run-profile: no (" << *reason << ")\n";
  else
    std::cout << "partial-run-profile: yes\n";

  bool full = false;
  if (reason) {
    std::cout << "run-profile: no (" << *reason << ")\n";
  } else if (!contains(stops, *end)) {
    std::cout << "run-profile: no (end-vertex " << *end << " not a stop vertex)\n";
  } else {
    full = true;
    std::cout << "run-profile: yes\n";
  }

  if (require_full) return full ? kExitOk : kExitFails;
  return switching ? kExitOk : kExitFails;
}

int cmd_deadend(const std::string& graph_path, const std::string& out_path) {
  const DeadEndInstance inst = dead_end_transform(load_graph(graph_path));
  write_output(out_path, serialize_graph(inst.graph));
  return kExitOk;
}

int cmd_gen(std::size_t n, std::uint64_t seed, const std::string& model,
            const std::string& out_path) {
  const GenModel m = model == "reachable" ? GenModel::reachable : GenModel::uniform;
  write_output(out_path, serialize_graph(gen_random(n, seed, m)));
  return kExitOk;
}

std::string profile_line(const FlowVector& f) {
  std::ostringstream out;
  out << "profile";
  for (const BigInt& e : f.entries) out << " " << e;
  return out.str();
}

int cmd_solve(const std::string& graph_path, const std::string& method,
              std::uint64_t seed, std::optional<std::uint64_t> samples, unsigned workers,
              bool with_walltime) {
  const SwitchGraph g = load_graph(graph_path);
  const DeadEndInstance inst = dead_end_transform(g);
  const auto t0 = std::chrono::steady_clock::now();

  std::cout << "method " << method << "\n";
  std::cout << "n " << inst.graph.n() << "\n";

  auto elapsed_ms = [&t0] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     t0)
        .count();
  };
  const auto label = [&](VertexId v) { return vertex_label(inst.graph, v, "d+dbar"); };

  if (method == "run") {
    const RunOutcome out = run(inst);
    std::cout << "reached " << label(out.stop_vertex) << "\n";
    std::cout << "steps " << out.steps << "\n";
    std::cout << profile_line(out.profile) << "\n";
    if (with_walltime) std::cout << "wall_time_ms " << elapsed_ms() << "\n";
    std::cout << "record method=run n=" << inst.graph.n() << " reached="
              << label(out.stop_vertex) << " steps=" << out.steps << "\n";
    return kExitOk;
  }

  SolverConfig cfg = default_config(inst, seed);
  if (samples) cfg.samples = *samples;
  cfg.workers = workers;

  if (method == "localopt") {
    const LocalOptResult res = localopt_solve(inst, cfg);
    std::cout << "reached " << label(end_vertex(res.point, inst.graph)) << "\n";
    std::cout << "steps " << res.point.sum() << "\n";
    std::cout << "samples_drawn " << res.samples_drawn << "\n";
    std::cout << "valid_samples " << res.valid_samples << "\n";
    std::cout << "best_sample_value " << res.best_sample_value << "\n";
    std::cout << "successor_evaluations " << res.successor_evaluations << "\n";
    std::cout << profile_line(res.point) << "\n";
    if (with_walltime) std::cout << "wall_time_ms " << elapsed_ms() << "\n";
    std::cout << "record method=localopt n=" << inst.graph.n() << " seed=" << seed
              << " samples=" << res.samples_drawn << " reached="
              << label(end_vertex(res.point, inst.graph)) << " steps=" << res.point.sum()
              << " evals=" << res.successor_evaluations << "\n";
    return kExitOk;
  }

  const SolverReport rep = aldous_solve(inst, cfg);
  std::cout << "reached " << label(rep.reached) << "\n";
  std::cout << "steps " << rep.steps << "\n";
  std::cout << "samples_drawn " << rep.samples_drawn << "\n";
  std::cout << "valid_samples " << rep.valid_samples << "\n";
  std::cout << "best_sample_value " << rep.best_sample_value << "\n";
  std::cout << "successor_evaluations " << rep.successor_evaluations << "\n";
  std::cout << "walk_advances " << rep.walk_advances << "\n";
  std::cout << profile_line(rep.solution) << "\n";
  if (with_walltime) std::cout << "wall_time_ms " << rep.wall_time_ms << "\n";
  std::cout << "record method=aldous n=" << inst.graph.n() << " seed=" << seed
            << " samples=" << rep.samples_drawn << " workers=" << cfg.workers
            << " valid=" << rep.valid_samples << " reached=" << label(rep.reached)
            << " steps=" << rep.steps << " evals=" << rep.successor_evaluations << "\n";
  return kExitOk;
}

int cmd_eoml_check(const std::string& graph_path, const std::string& flow_path,
                   const std::string& stop_mode) {
  const SwitchGraph g = load_graph(graph_path);
  const FlowVector f = parse_flow(read_input(flow_path), g.n());
  const ArrivalEoml prob(g, stop_vertices(g, stop_mode));
  const EomlSolutionType t = check_eoml_solution(f, prob);
  std::cout << "classification " << eoml_solution_name(t) << "\n";
  return t == EomlSolutionType::not_a_solution ? kExitFails : kExitOk;
}

int cmd_bench(std::size_t min_n, std::size_t max_n, std::size_t instances,
              std::uint64_t seed, unsigned workers) {
  if (min_n < 2) throw Error("bench needs n >= 2");
  std::cout << "# n instance method steps evals samples wall_ms\n";
  for (std::size_t n = min_n; n <= max_n; ++n) {
    for (std::size_t i = 0; i < instances; ++i) {
      const std::uint64_t gseed = seed ^ (n * 1000003ULL + i);
      const DeadEndInstance inst =
          dead_end_transform(gen_random(n, gseed, GenModel::uniform));

      const auto t0 = std::chrono::steady_clock::now();
      const RunOutcome out = run(inst);
      const double run_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();
      std::cout << n << " " << i << " run " << out.steps << " " << out.steps << " 0 "
                << run_ms << "\n";

      SolverConfig cfg = default_config(inst, seed);
      cfg.workers = workers;
      const SolverReport rep = aldous_solve(inst, cfg);
      std::cout << n << " " << i << " aldous " << rep.steps << " "
                << rep.successor_evaluations << " " << rep.samples_drawn << " "
                << rep.wall_time_ms << "\n";
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Switch-graph train runs: simulate, verify, solve"};
  app.require_subcommand(1);

  std::string graph_path, flow_path, out_path, stop_mode = "d", max_steps_text;
  std::string method = "aldous", model = "uniform";
  bool trace = false, no_walltime = false;
  std::size_t gen_n = 0, min_n = 2, max_n = 6, instances = 3;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  std::optional<std::uint64_t> samples;

  CLI::App* sim = app.add_subcommand("simulate", "Run the train until it stops");
  sim->add_option("graph", graph_path, "graph file ('-' for stdin)")->required();
  sim->add_option("--stop", stop_mode, "stop set: d or d+dbar")
      ->check(CLI::IsMember({"d", "d+dbar"}));
  sim->add_option("--max-steps", max_steps_text, "step budget (default n*2^n)");
  sim->add_flag("--trace", trace, "print one line per step");

  CLI::App* vflow = app.add_subcommand("verify-flow", "Check the switching-flow conditions");
  vflow->add_option("graph", graph_path)->required();
  vflow->add_option("flow", flow_path)->required();
  vflow->add_option("--stop", stop_mode)->check(CLI::IsMember({"d", "d+dbar"}));

  CLI::App* vrun = app.add_subcommand("verify-run", "Check that a flow is a full run profile");
  vrun->add_option("graph", graph_path)->required();
  vrun->add_option("flow", flow_path)->required();
  vrun->add_option("--stop", stop_mode)->check(CLI::IsMember({"d", "d+dbar"}));

  CLI::App* dead = app.add_subcommand("deadend", "Append a dead end; redirect lost vertices");
  dead->add_option("graph", graph_path)->required();
  dead->add_option("-o,--output", out_path, "output file (default stdout)");

  CLI::App* solve = app.add_subcommand("solve", "Decide where the train ends up");
  solve->add_option("graph", graph_path)->required();
  solve->add_option("--method", method)->check(CLI::IsMember({"aldous", "run", "localopt"}));
  solve->add_option("--seed", seed);
  solve->add_option("--samples", samples, "sample count (default ceil(2^(m/2)))");
  solve->add_option("--workers", workers)->check(CLI::Range(1u, 64u));
  solve->add_flag("--no-walltime", no_walltime, "omit the wall_time_ms line");

  CLI::App* gen = app.add_subcommand("gen", "Generate a random instance");
  gen->add_option("n", gen_n, "vertex count")->required()->check(CLI::Range(std::size_t{2}, std::size_t{1000000}));
  gen->add_option("--seed", seed);
  gen->add_option("--model", model)->check(CLI::IsMember({"uniform", "reachable"}));
  gen->add_option("-o,--output", out_path);

  CLI::App* check = app.add_subcommand("eoml-check", "Classify a point of the successor line graph");
  check->add_option("graph", graph_path)->required();
  check->add_option("flow", flow_path)->required();
  check->add_option("--stop", stop_mode)->check(CLI::IsMember({"d", "d+dbar"}));

  CLI::App* bench = app.add_subcommand("bench", "Compare solver methods on random instances");
  bench->add_option("--min-n", min_n);
  bench->add_option("--max-n", max_n);
  bench->add_option("--instances", instances);
  bench->add_option("--seed", seed);
  bench->add_option("--workers", workers)->check(CLI::Range(1u, 64u));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (sim->parsed()) return cmd_simulate(graph_path, stop_mode, max_steps_text, trace);
    if (vflow->parsed()) return cmd_verify(graph_path, flow_path, stop_mode, false);
    if (vrun->parsed()) return cmd_verify(graph_path, flow_path, stop_mode, true);
    if (dead->parsed()) return cmd_deadend(graph_path, out_path);
    if (solve->parsed())
      return cmd_solve(graph_path, method, seed, samples, workers, !no_walltime);
    if (gen->parsed()) return cmd_gen(gen_n, seed, model, out_path);
    if (check->parsed()) return cmd_eoml_check(graph_path, flow_path, stop_mode);
    if (bench->parsed()) return cmd_bench(min_n, max_n, instances, seed, workers);
  } catch (const BudgetExhaustedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}
