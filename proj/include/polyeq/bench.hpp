#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "polyeq/bayesian.hpp"
#include "polyeq/descent.hpp"
#include "polyeq/game.hpp"

namespace polyeq {

// Generator invocation: class tag plus string parameters. The same spec
// drives the CLI, the suite runner, and the acceptance suites, and its
// canonical rendering is stamped into generated files.
struct InstanceSpec {
  std::string cls;
  std::map<std::string, std::string> params;
  std::uint64_t seed = 1;
};

std::string genspec_string(const InstanceSpec& spec);
bool is_bayesian_class(const std::string& cls);
RationalGame build_instance(const InstanceSpec& spec);
// Sidecar metadata for Bayesian classes (types, action labels, prior).
std::string instance_meta(const InstanceSpec& spec);

struct AlgoConfig {
  enum class Kind { Lemke, Descent };
  Kind kind = Kind::Lemke;
  DescentConfig descent;

  // "lemke", "descent", or a suffixed descent tag when the line-search
  // configuration is not the default.
  std::string label() const;
};

struct BenchmarkRecord {
  std::string instance_id;
  std::string game_class;
  std::string genspec;
  long long payoff_count = 0;
  int lcp_dimension = 0;
  std::string algo;
  double delta = 0;  // meaningful for descent only
  long long time_ms = 0;
  bool timed_out = false;
  bool has_epsilon = false;
  Rational epsilon;
  bool has_pure = false;
  bool pure = false;
  long long pivots = -1;      // lemke
  long long iterations = -1;  // descent
  int worker = 0;
  std::string note;  // outcome tags and errors; not part of the CSV schema
};

// Runs one algorithm on one game under a wall-clock budget. Timed-out
// records report the budget as their time; descent records keep the best
// epsilon reached. Solver errors come back as a tagged record, never as an
// exception.
BenchmarkRecord run_instance(const RationalGame& game, const std::string& instance_id,
                             const std::string& game_class, const std::string& genspec,
                             const AlgoConfig& algo, std::int64_t timeout_ms);

struct GroupSummary {
  std::string group;  // genspec minus the seed, plus the algorithm tag
  std::string game_class;
  std::string algo;
  double delta = 0;
  long long payoff_count = 0;
  int count = 0;
  double avg_time_ms = 0;
  double pct_timeout = 0;
  bool has_pure_rate = false;
  double pct_pure = 0;  // over records with a solved profile
  bool has_epsilon = false;
  Rational avg_epsilon, median_epsilon, max_epsilon;
  double avg_pivots = -1;
  double avg_iterations = -1;
};

// Averages include timed-out records (at the capped time, with their
// recorded epsilon when present). Throws on an empty group.
GroupSummary aggregate(const std::vector<BenchmarkRecord>& group);

std::string records_csv_header();
std::string record_csv_row(const BenchmarkRecord& r);
void emit_csv(const std::vector<BenchmarkRecord>& records, const std::string& path);
void emit_summary_csv(const std::vector<GroupSummary>& summaries, const std::string& path);
// One "size time epsilon" series file per (class, algorithm), sorted by
// payoff count.
void emit_plotdata(const std::vector<GroupSummary>& summaries, const std::string& dir);

// One block of a suite: a parameterized generator, an inclusive seed
// range, and one algorithm configuration.
struct SuiteRun {
  InstanceSpec base;
  std::uint64_t seed_lo = 1;
  std::uint64_t seed_hi = 1;
  AlgoConfig algo;
};

struct SuiteSpec {
  std::int64_t timeout_ms = 600000;  // 10 minutes
  int workers = 1;
  std::vector<SuiteRun> runs;
};

// Minimal TOML-ish suite format: top-level "key = value" lines, then
// [[run]] blocks. See README for the key list.
SuiteSpec parse_suite(const std::string& text);

// Expands a suite into jobs, runs them on a worker pool (parallel across
// instances only), and returns the records in deterministic job order;
// exactly one record per (instance, config) regardless of errors.
std::vector<BenchmarkRecord> run_suite(const SuiteSpec& spec, int workers_override = 0);

std::vector<GroupSummary> summarize(const std::vector<BenchmarkRecord>& records);

// records.csv, summary.csv, and plot-data series under out_dir.
void write_suite_outputs(const std::vector<BenchmarkRecord>& records,
                         const std::string& out_dir);

}  // namespace polyeq
