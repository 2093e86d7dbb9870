// polyeq: generate polymatrix games, solve them exactly (Lemke) or
// approximately (descent), and run benchmark suites.

#include <chrono>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "polyeq/bench.hpp"
#include "polyeq/descent.hpp"
#include "polyeq/game.hpp"
#include "polyeq/lcp.hpp"

namespace {

using namespace polyeq;

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_profile(const std::string& path, const MixedProfile<Rational>& x) {
  std::ostringstream out;
  out << "profile 1\nplayers " << x.size() << "\n";
  for (size_t i = 0; i < x.size(); ++i) {
    out << "strategy " << i;
    for (const Rational& p : x[i]) out << " " << rational_to_string(p);
    out << "\n";
  }
  write_text(path, out.str());
}

int cmd_generate(const InstanceSpec& spec, const std::string& out_path) {
  const RationalGame game = build_instance(spec);
  save_game(game, out_path, "genspec: " + genspec_string(spec));
  if (is_bayesian_class(spec.cls)) write_text(out_path + ".meta", instance_meta(spec));
  std::cout << "wrote " << out_path << ": " << game.player_count() << " players, "
            << game.payoff_entry_count() << " payoffs\n";
  return 0;
}

int cmd_solve(const std::string& in_path, const std::string& algo, double timeout_s,
              const std::string& out_csv, const std::string& profile_path,
              const std::string& dump_lcp, const std::string& trace_path,
              DescentConfig descent_cfg) {
  const RationalGame game = load_game(in_path);
  const auto timeout_ms = static_cast<std::int64_t>(timeout_s * 1000);

  BenchmarkRecord rec;
  rec.instance_id = in_path;
  rec.game_class = "file";
  rec.genspec = in_path;
  rec.payoff_count = game.payoff_entry_count();
  rec.lcp_dimension = game.lcp_dimension();
  rec.algo = algo;

  const auto t0 = std::chrono::steady_clock::now();
  const auto wall_ms = [&t0] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };

  if (algo == "lemke") {
    const LcpReduction red = polymatrix_to_lcp(game);
    if (!dump_lcp.empty()) write_text(dump_lcp, serialize_lcp(red.lcp));
    LemkeOptions opts;
    opts.deadline = Deadline::after_ms(timeout_ms);
    const LcpResult res = lemke(red.lcp, opts);
    rec.pivots = res.pivots;
    if (res.outcome == LcpOutcome::Solution) {
      const MixedProfile<Rational> x = extract_profile(red.map, res.z);
      rec.has_epsilon = true;
      rec.epsilon = epsilon(game, x);
      rec.has_pure = true;
      rec.pure = is_pure(x);
      if (!profile_path.empty()) write_profile(profile_path, x);
      std::cout << "solution after " << res.pivots << " pivots; epsilon = "
                << rational_to_string(rec.epsilon) << (rec.pure ? " (pure)" : "") << "\n";
    } else if (res.outcome == LcpOutcome::Interrupted) {
      rec.timed_out = true;
      std::cout << "timed out after " << res.pivots << " pivots\n";
    } else {
      rec.note = res.outcome == LcpOutcome::SecondaryRay ? "secondary-ray" : "pivot-limit";
      std::cout << rec.note << " after " << res.pivots << " pivots\n";
    }
  } else if (algo == "descent") {
    rec.delta = descent_cfg.delta;
    descent_cfg.deadline = Deadline::after_ms(timeout_ms);
    const DescentResult res = descend(game, descent_cfg);
    rec.iterations = res.iterations;
    rec.has_epsilon = true;
    rec.epsilon = res.epsilon_exact;
    rec.has_pure = true;
    rec.pure = is_pure(res.profile);
    rec.timed_out = res.trace.reason == DescentStop::Timeout;
    rec.note = descent_stop_name(res.trace.reason);
    if (!profile_path.empty()) write_profile(profile_path, round_profile(res.profile));
    if (!trace_path.empty()) {
      std::ostringstream out;
      out << "iter f alpha gamma elapsed_ms\n";
      for (size_t k = 0; k < res.trace.steps.size(); ++k) {
        const DescentStep& s = res.trace.steps[k];
        out << k << " " << s.f << " " << s.alpha << " " << s.gamma << " " << s.elapsed_ms
            << "\n";
      }
      write_text(trace_path, out.str());
    }
    std::cout << "descent stopped (" << rec.note << ") after " << res.iterations
              << " iterations; epsilon ~= " << to_double(res.epsilon_exact) << "\n";
  } else {
    throw std::runtime_error("unknown algorithm '" + algo + "'");
  }

  rec.time_ms = rec.timed_out ? timeout_ms : std::min<long long>(wall_ms(), timeout_ms);
  if (!out_csv.empty())
    write_text(out_csv, records_csv_header() + "\n" + record_csv_row(rec) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"polymatrix game equilibrium toolkit"};
  app.require_subcommand(1);

  // generate
  auto* gen = app.add_subcommand("generate", "generate a game instance");
  std::string g_class, g_out;
  InstanceSpec spec;
  gen->add_option("--class", g_class, "game class")->required();
  gen->add_option("--out", g_out, "output game file")->required();
  gen->add_option("--seed", spec.seed, "generator seed");
  const std::vector<std::pair<std::string, std::string>> passthrough = {
      {"--graph", "graph"},       {"--players", "players"},
      {"--actions", "actions"},   {"--p", "p"},
      {"--groups", "groups"},     {"--colors", "colors"},
      {"--universe-mult", "umult"}, {"--rule", "rule"},
      {"--valuation", "valuation"}, {"--items", "items"},
      {"--types", "types"},       {"--max", "max"},
      {"--min", "min"},           {"--tie", "tie"},
      {"--tie-favor", "favor"},   {"--hills", "hills"},
      {"--soldiers", "soldiers"}, {"--points", "points"},
      {"--blotto-types", "blottotype"}, {"--aw-equalize", "awmode"},
  };
  std::map<std::string, std::string> opt_values;
  for (const auto& [flag, key] : passthrough)
    gen->add_option(flag, opt_values[key], key);

  // solve
  auto* solve = app.add_subcommand("solve", "compute an equilibrium of a game file");
  std::string s_algo, s_in, s_out, s_profile, s_dump, s_trace;
  double s_timeout = 600;
  DescentConfig dcfg;
  bool no_line_search = false;
  solve->add_option("--algo", s_algo, "lemke | descent")->required();
  solve->add_option("--in", s_in, "input game file")->required();
  solve->add_option("--timeout", s_timeout, "wall-clock budget in seconds");
  solve->add_option("--out", s_out, "write a one-row result CSV");
  solve->add_option("--profile", s_profile, "write the equilibrium profile");
  solve->add_option("--dump-lcp", s_dump, "write the LCP (lemke only)");
  solve->add_option("--trace", s_trace, "write the per-iteration trace (descent)");
  solve->add_option("--delta", dcfg.delta, "descent accuracy parameter");
  solve->add_option("--ls-points", dcfg.line_search_points, "line-search grid size");
  solve->add_flag("--no-line-search", no_line_search, "fixed step delta/(delta+2)");
  solve->add_option("--max-iters", dcfg.max_iterations, "descent iteration cap");
  solve->add_option("--seed", dcfg.seed, "start-profile seed");
  solve->add_flag("--random-start", dcfg.random_start, "Dirichlet random start profile");

  // bench
  auto* bench = app.add_subcommand("bench", "run a benchmark suite");
  std::string b_suite, b_out;
  int b_workers = 0;
  bench->add_option("--suite", b_suite, "suite description file")->required();
  bench->add_option("--workers", b_workers, "parallel workers (overrides the suite)");
  bench->add_option("--out", b_out, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) {
      spec.cls = g_class;
      for (const auto& [key, value] : opt_values)
        if (!value.empty()) spec.params[key] = value;
      return cmd_generate(spec, g_out);
    }
    if (solve->parsed()) {
      dcfg.use_line_search = !no_line_search;
      return cmd_solve(s_in, s_algo, s_timeout, s_out, s_profile, s_dump, s_trace, dcfg);
    }
    if (bench->parsed()) {
      const SuiteSpec suite = parse_suite(read_text(b_suite));
      const std::vector<BenchmarkRecord> records = run_suite(suite, b_workers);
      write_suite_outputs(records, b_out);
      int errors = 0;
      for (const BenchmarkRecord& r : records)
        if (r.note.rfind("error:", 0) == 0) ++errors;
      std::cout << records.size() << " records -> " << b_out
                << (errors ? " (" + std::to_string(errors) + " errored)" : "") << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
