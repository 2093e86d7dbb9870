#include "polyeq/descent.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "polyeq/lp.hpp"
#include "polyeq/rng.hpp"

namespace polyeq {

const char* descent_stop_name(DescentStop s) {
  switch (s) {
    case DescentStop::Stationary: return "stationary";
    case DescentStop::IterationCap: return "iteration-cap";
    case DescentStop::Timeout: return "timeout";
    case DescentStop::Stalled: return "stalled";
  }
  return "?";
}

std::vector<int> tight_set(const std::vector<double>& regrets, double f_value, double tol) {
  std::vector<int> out;
  for (size_t i = 0; i < regrets.size(); ++i)
    if (regrets[i] >= f_value - tol) out.push_back(static_cast<int>(i));
  return out;
}

namespace {

constexpr double kPbrTol = 1e-9;

std::vector<std::vector<double>> all_payoffs(const FloatGame& g,
                                             const MixedProfile<double>& x) {
  std::vector<std::vector<double>> p(g.player_count());
  for (int i = 0; i < g.player_count(); ++i) p[i] = payoff_vector(g, x, i);
  return p;
}

}  // namespace

DescentDirection direction_lp(const FloatGame& g, const MixedProfile<double>& x,
                              const std::vector<std::vector<double>>& payoffs,
                              const std::vector<int>& tight) {
  const int n = g.player_count();
  std::vector<int> offset(n, 0);
  for (int i = 1; i < n; ++i) offset[i] = offset[i - 1] + g.action_count(i - 1);
  const int total = offset[n - 1] + g.action_count(n - 1);
  const int gain = total;  // gamma = -gain, gain >= 0

  LinearProgram<double> lp(total + 1);
  std::vector<double> objective(total + 1, 0.0);
  objective[gain] = -1.0;
  lp.set_objective(std::move(objective));

  for (int i = 0; i < n; ++i) {
    std::vector<double> row(total + 1, 0.0);
    for (int s = 0; s < g.action_count(i); ++s) row[offset[i] + s] = 1.0;
    lp.add_eq(std::move(row), 1.0);
  }

  for (int i : tight) {
    double best = payoffs[i][0];
    for (double v : payoffs[i]) best = std::max(best, v);
    const double xdotp = dot(payoffs[i], x[i]);
    for (int s = 0; s < g.action_count(i); ++s) {
      if (payoffs[i][s] < best - kPbrTol) continue;  // pure best responses only
      std::vector<double> row(total + 1, 0.0);
      // (z - x_i)^T A_ij x'_j terms over the neighbours of i.
      for (const auto& [e, i_is_u] : g.incident(i)) {
        const EdgePayoffs<double>& eg = g.edges()[e];
        const Matrix<double>& a = i_is_u ? eg.to_u : eg.to_v;
        const int j = i_is_u ? eg.v : eg.u;
        for (int t = 0; t < g.action_count(j); ++t) {
          double coeff = a(s, t);
          for (int sp = 0; sp < g.action_count(i); ++sp) coeff -= x[i][sp] * a(sp, t);
          row[offset[j] + t] += coeff;
        }
      }
      // -(x'_i)^T p_i(x) term; the constant parts land on the rhs.
      for (int sp = 0; sp < g.action_count(i); ++sp) row[offset[i] + sp] -= payoffs[i][sp];
      row[gain] = 1.0;
      lp.add_le(std::move(row), payoffs[i][s] - 2 * xdotp);
    }
  }

  const LpResult<double> res = solve_lp(lp);
  if (res.status != LpStatus::Optimal)
    throw std::logic_error("direction LP must be solvable");

  DescentDirection dir;
  dir.gamma = -res.point[gain];
  dir.target.assign(n, {});
  for (int i = 0; i < n; ++i) {
    dir.target[i].assign(g.action_count(i), 0.0);
    double sum = 0;
    for (int s = 0; s < g.action_count(i); ++s) {
      dir.target[i][s] = std::max(0.0, res.point[offset[i] + s]);
      sum += dir.target[i][s];
    }
    for (double& v : dir.target[i]) v /= sum;
  }
  return dir;
}

double segment_epsilon(const FloatGame& g, const MixedProfile<double>& x,
                       const std::vector<std::vector<double>>& px,
                       const MixedProfile<double>& target,
                       const std::vector<std::vector<double>>& ptarget, double alpha) {
  double worst = 0;
  for (int i = 0; i < g.player_count(); ++i) {
    double best = -std::numeric_limits<double>::infinity();
    double mine = 0;
    for (int s = 0; s < g.action_count(i); ++s) {
      const double pay = (1 - alpha) * px[i][s] + alpha * ptarget[i][s];
      const double weight = (1 - alpha) * x[i][s] + alpha * target[i][s];
      best = std::max(best, pay);
      mine += weight * pay;
    }
    worst = std::max(worst, best - mine);
  }
  return worst;
}

std::vector<double> line_search_grid(int points, double delta) {
  if (points < 2) throw std::invalid_argument("line search needs at least 2 points");
  std::vector<double> grid;
  grid.reserve(points + 1);
  for (int k = 0; k < points; ++k)
    grid.push_back(static_cast<double>(k) / (points - 1));
  grid.push_back(delta / (delta + 2));
  std::sort(grid.begin(), grid.end());
  return grid;
}

double line_search(const FloatGame& g, const MixedProfile<double>& x,
                   const std::vector<std::vector<double>>& px,
                   const MixedProfile<double>& target,
                   const std::vector<std::vector<double>>& ptarget, int points,
                   double delta, double* f_out) {
  double best_alpha = 0;
  double best_f = std::numeric_limits<double>::infinity();
  for (double alpha : line_search_grid(points, delta)) {
    const double f = segment_epsilon(g, x, px, target, ptarget, alpha);
    if (f < best_f) {
      best_f = f;
      best_alpha = alpha;
    }
  }
  if (f_out) *f_out = best_f;
  return best_alpha;
}

MixedProfile<Rational> round_profile(const MixedProfile<double>& x) {
  const long long grid = 1000000000000LL;
  MixedProfile<Rational> out(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    out[i].assign(x[i].size(), Rational(0));
    long long sum = 0;
    size_t top = 0;
    std::vector<long long> num(x[i].size());
    for (size_t s = 0; s < x[i].size(); ++s) {
      num[s] = std::max(0LL, static_cast<long long>(std::llround(x[i][s] * grid)));
      sum += num[s];
      if (num[s] > num[top]) top = s;
    }
    num[top] += grid - sum;  // exact simplex repair on the heaviest entry
    for (size_t s = 0; s < x[i].size(); ++s) out[i][s] = make_rational(num[s], grid);
  }
  return out;
}

namespace {

MixedProfile<double> start_profile(const FloatGame& g, const DescentConfig& cfg) {
  if (!cfg.random_start) return uniform_profile(g);
  // Per-player flat Dirichlet via normalized exponentials.
  Rng rng = Rng::stream(cfg.seed, 0);
  MixedProfile<double> x(g.player_count());
  for (int i = 0; i < g.player_count(); ++i) {
    x[i].assign(g.action_count(i), 0.0);
    double sum = 0;
    for (double& v : x[i]) {
      v = -std::log(1.0 - rng.next_unit_double());
      sum += v;
    }
    for (double& v : x[i]) v /= sum;
  }
  return x;
}

}  // namespace

DescentResult descend(const RationalGame& game, const DescentConfig& cfg) {
  if (cfg.delta <= 0) throw std::invalid_argument("delta must be positive");
  const RationalGame normalized = normalize_game(game);
  const FloatGame g = to_float(normalized);
  const double tight_tol = cfg.effective_tight_tol();
  const double stat_tol = cfg.effective_stationarity_tol();
  const auto t0 = std::chrono::steady_clock::now();
  const auto elapsed_ms = [&t0] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
  };

  MixedProfile<double> x = start_profile(g, cfg);
  DescentResult res;
  res.profile = x;
  res.epsilon_float = std::numeric_limits<double>::infinity();

  long long iter = 0;
  for (;;) {
    const std::vector<std::vector<double>> px = all_payoffs(g, x);
    std::vector<double> regrets(g.player_count());
    double f = 0;
    for (int i = 0; i < g.player_count(); ++i) {
      double best = px[i].empty() ? 0 : *std::max_element(px[i].begin(), px[i].end());
      regrets[i] = best - dot(px[i], x[i]);
      f = std::max(f, regrets[i]);
    }
    if (f < res.epsilon_float) {
      res.epsilon_float = f;
      res.profile = x;
    }
    if (iter >= cfg.max_iterations) {
      res.trace.reason = DescentStop::IterationCap;
      break;
    }
    if (cfg.deadline.expired()) {
      res.trace.reason = DescentStop::Timeout;
      break;
    }

    const std::vector<int> tight = tight_set(regrets, f, tight_tol);
    const DescentDirection dir = direction_lp(g, x, px, tight);

    DescentStep step;
    step.f = f;
    step.gamma = dir.gamma;

    if (dir.gamma >= -stat_tol) {
      step.elapsed_ms = elapsed_ms();
      res.trace.steps.push_back(step);
      ++iter;
      res.trace.reason = DescentStop::Stationary;
      break;
    }

    const std::vector<std::vector<double>> ptarget = all_payoffs(g, dir.target);
    double alpha;
    if (cfg.use_line_search) {
      alpha = line_search(g, x, px, dir.target, ptarget, cfg.line_search_points,
                          cfg.delta, nullptr);
      if (alpha == 0) {
        step.elapsed_ms = elapsed_ms();
        res.trace.steps.push_back(step);
        ++iter;
        res.trace.reason = DescentStop::Stalled;
        break;
      }
    } else {
      alpha = cfg.delta / (cfg.delta + 2);
    }
    step.alpha = alpha;
    step.elapsed_ms = elapsed_ms();
    res.trace.steps.push_back(step);

    for (int i = 0; i < g.player_count(); ++i)
      for (int s = 0; s < g.action_count(i); ++s)
        x[i][s] = (1 - alpha) * x[i][s] + alpha * dir.target[i][s];
    ++iter;
  }

  res.iterations = iter;
  res.epsilon_exact = epsilon(normalized, round_profile(res.profile));
  return res;
}

}  // namespace polyeq
