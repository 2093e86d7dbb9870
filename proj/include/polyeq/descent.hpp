#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "polyeq/cancel.hpp"
#include "polyeq/game.hpp"

namespace polyeq {

struct DescentConfig {
  double delta = 0.1;
  int line_search_points = 201;
  bool use_line_search = true;
  // Negative values select the defaults max(1e-9, delta/10) and delta/2.
  double tight_tolerance = -1;
  double stationarity_tolerance = -1;
  long long max_iterations = 1000000;
  Deadline deadline;
  std::uint64_t seed = 0;
  bool random_start = false;

  double effective_tight_tol() const {
    return tight_tolerance >= 0 ? tight_tolerance : std::max(1e-9, delta / 10);
  }
  double effective_stationarity_tol() const {
    return stationarity_tolerance >= 0 ? stationarity_tolerance : delta / 2;
  }
};

enum class DescentStop { Stationary, IterationCap, Timeout, Stalled };
const char* descent_stop_name(DescentStop s);

struct DescentStep {
  double f = 0;        // max regret before the move
  double alpha = 0;    // step taken
  double gamma = 0;    // direction LP value
  double elapsed_ms = 0;
};

struct DescentTrace {
  std::vector<DescentStep> steps;
  DescentStop reason = DescentStop::Stationary;
};

struct DescentResult {
  MixedProfile<double> profile;  // best profile seen
  double epsilon_float = 0;      // max regret of profile, float arithmetic
  Rational epsilon_exact;        // rational recheck on the rounded profile
  DescentTrace trace;
  long long iterations = 0;
};

// Players whose regret is within tol of the maximum.
std::vector<int> tight_set(const std::vector<double>& regrets, double f_value, double tol);

struct DescentDirection {
  MixedProfile<double> target;  // the x' whose direction is x' - x
  double gamma = 0;             // minimized worst-case directional derivative, <= 0
};

// LP for the steepest feasible direction of the max-regret function:
// minimize gamma over profiles x' subject to, for every tight player and
// every pure best response z,
//   z.(p(x') - p(x)) - (x'_i - x_i).p(x) - x_i.(p(x') - p(x)) <= gamma.
// payoffs must be the per-player payoff vectors at x.
DescentDirection direction_lp(const FloatGame& g, const MixedProfile<double>& x,
                              const std::vector<std::vector<double>>& payoffs,
                              const std::vector<int>& tight);

// Max regret at x + alpha (target - x); payoff vectors are linear in the
// profile, so the blend is evaluated from the endpoint payoffs.
double segment_epsilon(const FloatGame& g, const MixedProfile<double>& x,
                       const std::vector<std::vector<double>>& px,
                       const MixedProfile<double>& target,
                       const std::vector<std::vector<double>>& ptarget, double alpha);

// Equally spaced alphas on [0,1] plus the guarantee-preserving extra point
// delta/(delta+2), sorted ascending.
std::vector<double> line_search_grid(int points, double delta);

// Best alpha on the grid (ties to the smallest); *f_out receives f at it.
double line_search(const FloatGame& g, const MixedProfile<double>& x,
                   const std::vector<std::vector<double>>& px,
                   const MixedProfile<double>& target,
                   const std::vector<std::vector<double>>& ptarget, int points,
                   double delta, double* f_out);

// Gradient descent on the max-regret function with line search. The game
// is normalized internally (idempotent); the reported epsilons are on the
// normalized scale, and the final profile is re-verified in exact
// arithmetic after rounding to a 1e-12 grid.
DescentResult descend(const RationalGame& game, const DescentConfig& cfg);

// Rounds a float profile onto the 1e-12 grid as exact rationals with each
// strategy summing to exactly one.
MixedProfile<Rational> round_profile(const MixedProfile<double>& x);

}  // namespace polyeq
