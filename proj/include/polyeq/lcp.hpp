#pragma once

#include <string>
#include <vector>

#include "polyeq/cancel.hpp"
#include "polyeq/game.hpp"
#include "polyeq/matrix.hpp"
#include "polyeq/rational.hpp"

namespace polyeq {

// Linear complementarity problem: find z >= 0 with w = q + M z >= 0 and
// z.w = 0. d is the covering vector of the auxiliary column, > 0.
struct LcpInstance {
  int n = 0;
  std::vector<Rational> q;
  Matrix<Rational> m;
  std::vector<Rational> d;
};

enum class LcpOutcome { Solution, SecondaryRay, PivotLimit, Interrupted };

struct LcpResult {
  LcpOutcome outcome = LcpOutcome::PivotLimit;
  std::vector<Rational> z;  // populated for Solution
  long long pivots = 0;
};

struct LemkeOptions {
  long long pivot_limit = -1;  // < 0: unlimited
  Deadline deadline;
  // Extra per-pivot verification for tests: tableau/basis consistency
  // against the original system every spot_check_interval pivots, plus a
  // basis-set repetition guard.
  bool validate = false;
  int spot_check_interval = 100;
};

// Lemke's complementary pivoting with integer (fraction-free) tableau
// arithmetic and the lexicographic minimum ratio rule.
LcpResult lemke(const LcpInstance& lcp, const LemkeOptions& opts = {});

// Variable layout of the game reduction, needed to map a solution back to
// a profile.
struct LcpMap {
  std::vector<int> action_counts;
  std::vector<int> offsets;  // offsets[i] = first z index of player i's block
};

struct LcpReduction {
  LcpInstance lcp;
  LcpMap map;
};

// Reduction of a polymatrix game to a Lemke-solvable LCP. The interaction
// graph is padded to a complete one with all-zero bimatrix games, payoffs
// are scaled to integers and shifted strictly positive (best responses are
// unchanged), and the LCP couples best-response slack with simplex
// normalization:
//   M = [[-A, E^T], [E, 0]],  q = (0, -1),
// with A the block payoff matrix and E the block-diagonal of all-ones rows.
// Any complementary solution restricts to exact mixed strategies with an
// exact equilibrium profile.
LcpReduction polymatrix_to_lcp(const RationalGame& g);

MixedProfile<Rational> extract_profile(const LcpMap& map, const std::vector<Rational>& z);

// Exact check of the three LCP solution conditions.
bool check_lcp_solution(const LcpInstance& lcp, const std::vector<Rational>& z);

std::string serialize_lcp(const LcpInstance& lcp);

}  // namespace polyeq
