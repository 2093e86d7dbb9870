#include "polyeq/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "polyeq/generators.hpp"
#include "polyeq/lcp.hpp"

namespace polyeq {

namespace {

const std::string& require(const InstanceSpec& spec, const std::string& key) {
  const auto it = spec.params.find(key);
  if (it == spec.params.end())
    throw std::invalid_argument("class " + spec.cls + " needs parameter '" + key + "'");
  return it->second;
}

std::string get_or(const InstanceSpec& spec, const std::string& key,
                   const std::string& fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

int to_int(const std::string& v, const std::string& key) {
  try {
    size_t used = 0;
    const int x = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return x;
  } catch (const std::exception&) {
    throw std::invalid_argument("parameter '" + key + "' is not an integer: " + v);
  }
}

int int_param(const InstanceSpec& spec, const std::string& key) {
  return to_int(require(spec, key), key);
}

int int_param_or(const InstanceSpec& spec, const std::string& key, int fallback) {
  const auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : to_int(it->second, key);
}

TieRule tie_param(const InstanceSpec& spec) {
  TieRule tie;
  const std::string t = get_or(spec, "tie", "one");
  if (t == "random")
    tie.random = true;
  else if (t != "one")
    throw std::invalid_argument("tie must be 'one' or 'random'");
  tie.favored = int_param_or(spec, "favor", 1);
  if (tie.favored != 0 && tie.favored != 1)
    throw std::invalid_argument("favor must be 0 or 1");
  return tie;
}

// Canonical key order per class, used for reproducible genspec strings.
const std::vector<std::string>& genspec_keys(const std::string& cls) {
  static const std::map<std::string, std::vector<std::string>> keys = {
      {"netcoord", {"graph", "players", "actions"}},
      {"coordzero", {"graph", "players", "actions", "p"}},
      {"groupzero", {"players", "actions", "groups"}},
      {"strictcomp", {"graph", "players", "actions"}},
      {"weightcoop", {"graph", "players", "colors", "umult"}},
      {"itembid", {"rule", "valuation", "items", "types", "max", "min", "tie", "favor"}},
      {"multiunit", {"rule", "valuation", "items", "types", "max", "min", "tie", "favor"}},
      {"blotto", {"hills", "types", "soldiers", "blottotype"}},
      {"adjwinner", {"items", "types", "points", "awmode"}},
  };
  const auto it = keys.find(cls);
  if (it == keys.end()) throw std::invalid_argument("unknown game class '" + cls + "'");
  return it->second;
}

BayesianParams bayesian_params(const InstanceSpec& spec) {
  BayesianParams p;
  p.game = spec.cls;
  p.types = int_param(spec, "types");
  p.tie = tie_param(spec);
  if (spec.cls == "itembid") {
    p.item_rule = parse_item_rule(require(spec, "rule"));
    p.valuation = parse_valuation_class(get_or(spec, "valuation", "additive"));
    p.items = int_param(spec, "items");
    p.max_value = int_param(spec, "max");
    p.min_value = int_param_or(spec, "min", 1);
  } else if (spec.cls == "multiunit") {
    p.multi_rule = parse_multi_rule(require(spec, "rule"));
    const std::string v = get_or(spec, "valuation", "submodular");
    if (v == "additive")
      p.valuation = ValuationClass::Additive;
    else if (v == "submodular")
      p.valuation = ValuationClass::MultiUnitMarginal;
    else
      throw std::invalid_argument("multiunit valuation must be additive or submodular");
    p.items = int_param(spec, "items");
    p.max_value = int_param(spec, "max");
    p.min_value = int_param_or(spec, "min", 1);
  } else if (spec.cls == "blotto") {
    p.items = int_param(spec, "hills");
    p.soldiers = int_param_or(spec, "soldiers", 8);
    p.blotto_types = get_or(spec, "blottotype", "values");
  } else if (spec.cls == "adjwinner") {
    p.items = int_param(spec, "items");
    p.points = int_param(spec, "points");
    const std::string mode = get_or(spec, "awmode", "points");
    if (mode == "values")
      p.aw_currency = AwCurrency::TrueValues;
    else if (mode != "points")
      throw std::invalid_argument("awmode must be 'points' or 'values'");
  }
  return p;
}

}  // namespace

bool is_bayesian_class(const std::string& cls) {
  return cls == "itembid" || cls == "multiunit" || cls == "blotto" || cls == "adjwinner";
}

std::string genspec_string(const InstanceSpec& spec) {
  std::ostringstream out;
  out << "class=" << spec.cls;
  for (const std::string& key : genspec_keys(spec.cls)) {
    const auto it = spec.params.find(key);
    if (it != spec.params.end()) out << ";" << key << "=" << it->second;
  }
  out << ";seed=" << spec.seed;
  return out.str();
}

RationalGame build_instance(const InstanceSpec& spec) {
  if (is_bayesian_class(spec.cls))
    return to_polymatrix(build_bayesian(bayesian_params(spec), spec.seed));
  GraphTopology topo;
  topo.players = int_param(spec, "players");
  topo.kind = parse_graph_kind(get_or(spec, "graph", "complete"));
  if (spec.cls == "netcoord")
    return gen_net_coordination(topo, int_param(spec, "actions"), spec.seed);
  if (spec.cls == "coordzero")
    return gen_coord_zero(topo, int_param(spec, "actions"), parse_rational(require(spec, "p")),
                          spec.seed);
  if (spec.cls == "groupzero")
    return gen_group_zerosum(topo.players, int_param(spec, "actions"),
                             int_param(spec, "groups"), spec.seed);
  if (spec.cls == "strictcomp")
    return gen_strictly_competitive(topo, int_param(spec, "actions"), spec.seed);
  if (spec.cls == "weightcoop")
    return gen_weighted_cooperation(topo, int_param(spec, "colors"),
                                    int_param_or(spec, "umult", 2), spec.seed);
  throw std::invalid_argument("unknown game class '" + spec.cls + "'");
}

std::string instance_meta(const InstanceSpec& spec) {
  if (!is_bayesian_class(spec.cls)) return "";
  return bayesian_meta_text(build_bayesian(bayesian_params(spec), spec.seed));
}

std::string AlgoConfig::label() const {
  if (kind == Kind::Lemke) return "lemke";
  std::string tag = "descent";
  if (!descent.use_line_search)
    tag += "-nols";
  else if (descent.line_search_points != 201)
    tag += "-ls" + std::to_string(descent.line_search_points);
  return tag;
}

BenchmarkRecord run_instance(const RationalGame& game, const std::string& instance_id,
                             const std::string& game_class, const std::string& genspec,
                             const AlgoConfig& algo, std::int64_t timeout_ms) {
  BenchmarkRecord rec;
  rec.instance_id = instance_id;
  rec.game_class = game_class;
  rec.genspec = genspec;
  rec.payoff_count = game.payoff_entry_count();
  rec.lcp_dimension = game.lcp_dimension();
  rec.algo = algo.label();
  if (algo.kind == AlgoConfig::Kind::Descent) rec.delta = algo.descent.delta;

  const auto t0 = std::chrono::steady_clock::now();
  const auto wall_ms = [&t0] {
    return std::chrono::duration_cast<std::chrono::milliseconds>(
               std::chrono::steady_clock::now() - t0)
        .count();
  };

  try {
    if (algo.kind == AlgoConfig::Kind::Lemke) {
      LemkeOptions opts;
      opts.deadline = Deadline::after_ms(timeout_ms);
      const LcpReduction red = polymatrix_to_lcp(game);
      const LcpResult res = lemke(red.lcp, opts);
      rec.pivots = res.pivots;
      switch (res.outcome) {
        case LcpOutcome::Solution: {
          const MixedProfile<Rational> x = extract_profile(red.map, res.z);
          rec.has_epsilon = true;
          rec.epsilon = epsilon(game, x);
          rec.has_pure = true;
          rec.pure = is_pure(x);
          break;
        }
        case LcpOutcome::Interrupted:
          rec.timed_out = true;
          break;
        case LcpOutcome::SecondaryRay:
          rec.note = "secondary-ray";
          break;
        case LcpOutcome::PivotLimit:
          rec.note = "pivot-limit";
          break;
      }
    } else {
      DescentConfig cfg = algo.descent;
      cfg.deadline = Deadline::after_ms(timeout_ms);
      const DescentResult res = descend(game, cfg);
      rec.iterations = res.iterations;
      rec.has_epsilon = true;
      rec.epsilon = res.epsilon_exact;
      rec.has_pure = true;
      rec.pure = is_pure(res.profile);
      rec.timed_out = res.trace.reason == DescentStop::Timeout;
      rec.note = descent_stop_name(res.trace.reason);
    }
  } catch (const std::exception& e) {
    rec.note = std::string("error: ") + e.what();
  }

  rec.time_ms = rec.timed_out ? timeout_ms : std::min<long long>(wall_ms(), timeout_ms);
  return rec;
}

// ---------------------------------------------------------------------------
// Aggregation and output

GroupSummary aggregate(const std::vector<BenchmarkRecord>& group) {
  if (group.empty()) throw std::invalid_argument("cannot aggregate an empty group");
  GroupSummary s;
  const BenchmarkRecord& head = group.front();
  std::string base = head.genspec;
  const size_t seed_pos = base.rfind(";seed=");
  if (seed_pos != std::string::npos) base.resize(seed_pos);
  s.group = base + "|" + head.algo;
  s.game_class = head.game_class;
  s.algo = head.algo;
  s.delta = head.delta;
  s.payoff_count = head.payoff_count;
  s.count = static_cast<int>(group.size());

  long long time_total = 0;
  int timeouts = 0, pure_denominator = 0, pure_count = 0;
  std::vector<Rational> eps;
  double pivot_total = 0, iter_total = 0;
  int pivot_n = 0, iter_n = 0;
  for (const BenchmarkRecord& r : group) {
    time_total += r.time_ms;
    timeouts += r.timed_out;
    if (r.has_pure) {
      ++pure_denominator;
      pure_count += r.pure;
    }
    if (r.has_epsilon) eps.push_back(r.epsilon);
    if (r.pivots >= 0) {
      pivot_total += static_cast<double>(r.pivots);
      ++pivot_n;
    }
    if (r.iterations >= 0) {
      iter_total += static_cast<double>(r.iterations);
      ++iter_n;
    }
  }
  s.avg_time_ms = static_cast<double>(time_total) / s.count;
  s.pct_timeout = 100.0 * timeouts / s.count;
  s.has_pure_rate = pure_denominator > 0;
  if (s.has_pure_rate) s.pct_pure = 100.0 * pure_count / pure_denominator;
  s.has_epsilon = !eps.empty();
  if (s.has_epsilon) {
    std::sort(eps.begin(), eps.end());
    Rational total(0);
    for (const Rational& e : eps) total += e;
    s.avg_epsilon = total / static_cast<int>(eps.size());
    const size_t k = eps.size();
    s.median_epsilon =
        k % 2 ? eps[k / 2] : (eps[k / 2 - 1] + eps[k / 2]) / 2;
    s.max_epsilon = eps.back();
  }
  if (pivot_n > 0) s.avg_pivots = pivot_total / pivot_n;
  if (iter_n > 0) s.avg_iterations = iter_total / iter_n;
  return s;
}

namespace {

std::string epsilon_text(const Rational& eps) {
  if (eps == 0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9e", to_double(eps));
  return buf;
}

std::string double_text(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

}  // namespace

std::string records_csv_header() {
  return "instance,class,genspec,payoffs,lcp_dim,algo,delta,time_ms,timed_out,epsilon,"
         "pure,pivots,iterations";
}

std::string record_csv_row(const BenchmarkRecord& r) {
  std::ostringstream out;
  out << r.instance_id << "," << r.game_class << "," << r.genspec << ","
      << r.payoff_count << "," << r.lcp_dimension << "," << r.algo << ",";
  if (r.algo != "lemke") out << double_text(r.delta);
  out << "," << r.time_ms << "," << (r.timed_out ? 1 : 0) << ",";
  if (r.has_epsilon) out << epsilon_text(r.epsilon);
  out << ",";
  if (r.has_pure) out << (r.pure ? 1 : 0);
  out << ",";
  if (r.pivots >= 0) out << r.pivots;
  out << ",";
  if (r.iterations >= 0) out << r.iterations;
  return out.str();
}

void emit_csv(const std::vector<BenchmarkRecord>& records, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << records_csv_header() << "\n";
  for (const BenchmarkRecord& r : records) out << record_csv_row(r) << "\n";
  if (!out) throw std::runtime_error("write failed: " + path);
}

void emit_summary_csv(const std::vector<GroupSummary>& summaries, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "group,class,algo,delta,count,payoffs,avg_time_ms,pct_timeout,pct_pure,"
         "avg_epsilon,median_epsilon,max_epsilon,avg_pivots,avg_iterations\n";
  for (const GroupSummary& s : summaries) {
    out << s.group << "," << s.game_class << "," << s.algo << ",";
    if (s.algo != "lemke") out << double_text(s.delta);
    out << "," << s.count << "," << s.payoff_count << "," << double_text(s.avg_time_ms)
        << "," << double_text(s.pct_timeout) << ",";
    if (s.has_pure_rate) out << double_text(s.pct_pure);
    out << ",";
    if (s.has_epsilon)
      out << epsilon_text(s.avg_epsilon) << "," << epsilon_text(s.median_epsilon) << ","
          << epsilon_text(s.max_epsilon);
    else
      out << ",,";
    out << ",";
    if (s.avg_pivots >= 0) out << double_text(s.avg_pivots);
    out << ",";
    if (s.avg_iterations >= 0) out << double_text(s.avg_iterations);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void emit_plotdata(const std::vector<GroupSummary>& summaries, const std::string& dir) {
  std::filesystem::create_directories(dir);
  std::map<std::string, std::vector<const GroupSummary*>> series;
  for (const GroupSummary& s : summaries)
    series[s.game_class + "_" + s.algo].push_back(&s);
  for (auto& [name, rows] : series) {
    std::sort(rows.begin(), rows.end(), [](const GroupSummary* a, const GroupSummary* b) {
      return a->payoff_count < b->payoff_count;
    });
    const std::string path = dir + "/" + name + ".dat";
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    for (const GroupSummary* s : rows) {
      out << s->payoff_count << " " << double_text(s->avg_time_ms) << " "
          << (s->has_epsilon ? epsilon_text(s->avg_epsilon) : std::string("0")) << "\n";
    }
    if (!out) throw std::runtime_error("write failed: " + path);
  }
}

// ---------------------------------------------------------------------------
// Suite parsing and execution

namespace {

std::string strip(const std::string& s) {
  const size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::string unquote(const std::string& s) {
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"')
    return s.substr(1, s.size() - 2);
  return s;
}

}  // namespace

SuiteSpec parse_suite(const std::string& text) {
  SuiteSpec spec;
  std::istringstream in(text);
  std::string raw;
  SuiteRun* run = nullptr;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = strip(raw);
    if (line.empty() || line[0] == '#') continue;
    if (line == "[[run]]") {
      spec.runs.emplace_back();
      run = &spec.runs.back();
      continue;
    }
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("suite line " + std::to_string(line_no) +
                               ": expected key = value");
    const std::string key = strip(line.substr(0, eq));
    const std::string value = unquote(strip(line.substr(eq + 1)));
    if (!run) {
      if (key == "timeout_s")
        spec.timeout_ms = static_cast<std::int64_t>(std::stod(value) * 1000);
      else if (key == "timeout_ms")
        spec.timeout_ms = std::stoll(value);
      else if (key == "workers")
        spec.workers = std::stoi(value);
      else
        throw std::runtime_error("suite line " + std::to_string(line_no) +
                                 ": unknown global key '" + key + "'");
      continue;
    }
    if (key == "class") {
      run->base.cls = value;
    } else if (key == "seeds") {
      const size_t dots = value.find("..");
      if (dots == std::string::npos) {
        run->seed_lo = run->seed_hi = std::stoull(value);
      } else {
        run->seed_lo = std::stoull(value.substr(0, dots));
        run->seed_hi = std::stoull(value.substr(dots + 2));
      }
      if (run->seed_hi < run->seed_lo)
        throw std::runtime_error("suite line " + std::to_string(line_no) +
                                 ": empty seed range");
    } else if (key == "algo") {
      if (value == "lemke")
        run->algo.kind = AlgoConfig::Kind::Lemke;
      else if (value == "descent")
        run->algo.kind = AlgoConfig::Kind::Descent;
      else
        throw std::runtime_error("suite line " + std::to_string(line_no) +
                                 ": unknown algo '" + value + "'");
    } else if (key == "delta") {
      run->algo.descent.delta = std::stod(value);
    } else if (key == "ls_points") {
      run->algo.descent.line_search_points = std::stoi(value);
    } else if (key == "line_search") {
      run->algo.descent.use_line_search = value == "true" || value == "1";
    } else if (key == "max_iters") {
      run->algo.descent.max_iterations = std::stoll(value);
    } else if (key == "random_start") {
      run->algo.descent.random_start = value == "true" || value == "1";
    } else {
      run->base.params[key] = value;
    }
  }
  for (const SuiteRun& r : spec.runs)
    if (r.base.cls.empty()) throw std::runtime_error("every [[run]] needs a class");
  return spec;
}

std::vector<BenchmarkRecord> run_suite(const SuiteSpec& spec, int workers_override) {
  struct Job {
    int run_index;
    std::uint64_t seed;
  };
  std::vector<Job> jobs;
  for (int ri = 0; ri < static_cast<int>(spec.runs.size()); ++ri)
    for (std::uint64_t s = spec.runs[ri].seed_lo; s <= spec.runs[ri].seed_hi; ++s)
      jobs.push_back({ri, s});

  std::vector<BenchmarkRecord> records(jobs.size());
  std::atomic<size_t> next(0);
  const int workers = std::max(1, workers_override > 0 ? workers_override : spec.workers);

  const auto worker_loop = [&](int worker_id) {
    for (;;) {
      const size_t j = next.fetch_add(1);
      if (j >= jobs.size()) return;
      const SuiteRun& run = spec.runs[jobs[j].run_index];
      InstanceSpec inst = run.base;
      inst.seed = jobs[j].seed;
      const std::string id =
          "r" + std::to_string(jobs[j].run_index) + "-s" + std::to_string(jobs[j].seed);
      BenchmarkRecord rec;
      try {
        const RationalGame game = build_instance(inst);
        rec = run_instance(game, id, inst.cls, genspec_string(inst), run.algo,
                           spec.timeout_ms);
      } catch (const std::exception& e) {
        rec.instance_id = id;
        rec.game_class = inst.cls;
        rec.genspec = genspec_string(inst);
        rec.algo = run.algo.label();
        rec.note = std::string("error: ") + e.what();
      }
      rec.worker = worker_id;
      records[j] = std::move(rec);
    }
  };

  if (workers == 1) {
    worker_loop(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker_loop, w);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

std::vector<GroupSummary> summarize(const std::vector<BenchmarkRecord>& records) {
  // Group by genspec-without-seed plus algorithm tag, in first-seen order.
  std::vector<std::string> order;
  std::map<std::string, std::vector<BenchmarkRecord>> groups;
  for (const BenchmarkRecord& r : records) {
    std::string base = r.genspec;
    const size_t pos = base.rfind(";seed=");
    if (pos != std::string::npos) base.resize(pos);
    const std::string key = base + "|" + r.algo + "|" + double_text(r.delta);
    if (!groups.count(key)) order.push_back(key);
    groups[key].push_back(r);
  }
  std::vector<GroupSummary> out;
  out.reserve(order.size());
  for (const std::string& key : order) out.push_back(aggregate(groups[key]));
  return out;
}

void write_suite_outputs(const std::vector<BenchmarkRecord>& records,
                         const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  emit_csv(records, out_dir + "/records.csv");
  emit_summary_csv(summarize(records), out_dir + "/summary.csv");
  emit_plotdata(summarize(records), out_dir + "/plotdata");
}

}  // namespace polyeq
