#include "polyeq/lcp.hpp"

#include <algorithm>
#include <memory>
#include <set>
#include <sstream>

namespace polyeq {

namespace {

// Tableau for Lemke pivoting over the system  w - M z - d z0 = q.
// All entries are integers sharing the implicit denominator det_ > 0
// (fraction-free pivoting: every update divides exactly by the previous
// pivot). Columns: w_0..w_{N-1}, z_0..z_{N-1}, the auxiliary variable,
// rhs. The w-columns double as the lexicographic tail of the ratio test;
// (rhs, w-block) rows stay lexicographically positive once the auxiliary
// variable has entered, which rules out basis repetition.
class LemkeTableau {
 public:
  explicit LemkeTableau(const LcpInstance& lcp)
      : n_(lcp.n), det_(1), basis_(lcp.n), rows_(lcp.n) {
    // Clear denominators row by row; scaling an equation w_i = q_i + ...
    // by a positive constant changes neither feasibility nor
    // complementarity.
    for (int i = 0; i < n_; ++i) {
      BigInt scale(1);
      scale = lcm(scale, lcp.q[i].get_den());
      scale = lcm(scale, lcp.d[i].get_den());
      for (int j = 0; j < n_; ++j) scale = lcm(scale, lcp.m(i, j).get_den());
      rows_[i].assign(2 * n_ + 2, BigInt(0));
      rows_[i][i] = 1;
      for (int j = 0; j < n_; ++j) {
        Rational v = -lcp.m(i, j) * scale;
        rows_[i][n_ + j] = v.get_num();
      }
      rows_[i][aux_col()] = Rational(-lcp.d[i] * scale).get_num();
      rows_[i][rhs_col()] = Rational(lcp.q[i] * scale).get_num();
      basis_[i] = i;  // w_i
    }
  }

  int aux_col() const { return 2 * n_; }
  int rhs_col() const { return 2 * n_ + 1; }
  int var_w(int i) const { return i; }
  int var_z(int i) const { return n_ + i; }
  int var_aux() const { return aux_col(); }

  int basis_var(int row) const { return basis_[row]; }
  const BigInt& entry(int r, int c) const { return rows_[r][c]; }
  const BigInt& det() const { return det_; }

  bool rhs_nonnegative() const {
    for (int i = 0; i < n_; ++i)
      if (rows_[i][rhs_col()] < 0) return false;
    return true;
  }

  // Lexicographic comparison of rows a and b on (rhs, w-block), each
  // divided by its positive denominator: sign of (row_a/den_a - row_b/den_b)
  // at the first differing component.
  int lex_compare(int a, const BigInt& den_a, int b, const BigInt& den_b) const {
    mpz_class lhs, rhs;
    for (int k = -1; k < n_; ++k) {
      const int col = k < 0 ? rhs_col() : k;
      mpz_mul(lhs.get_mpz_t(), rows_[a][col].get_mpz_t(), den_b.get_mpz_t());
      mpz_mul(rhs.get_mpz_t(), rows_[b][col].get_mpz_t(), den_a.get_mpz_t());
      const int c = mpz_cmp(lhs.get_mpz_t(), rhs.get_mpz_t());
      if (c != 0) return c;
    }
    return 0;
  }

  // Row receiving the auxiliary variable: lexicographic minimum of
  // (q_i, w-row)/d_i over the infeasible rows. Negating that row makes its
  // auxiliary coefficient the (positive) pivot.
  int choose_initial_row() const {
    int best = -1;
    for (int i = 0; i < n_; ++i) {
      if (rows_[i][rhs_col()] >= 0) continue;
      if (best < 0 ||
          lex_compare(i, -rows_[i][aux_col()], best, -rows_[best][aux_col()]) < 0)
        best = i;
    }
    return best;
  }

  void negate_row(int r) {
    for (BigInt& v : rows_[r]) v = -v;
  }

  // Leaving row for the entering column, by lexicographic minimum ratio
  // over rows with a positive column entry; -1 signals a secondary ray.
  int choose_leaving_row(int col) const {
    int best = -1;
    for (int i = 0; i < n_; ++i) {
      if (rows_[i][col] <= 0) continue;
      if (best < 0 || lex_compare(i, rows_[i][col], best, rows_[best][col]) < 0)
        best = i;
    }
    return best;
  }

  // Fraction-free pivot: row r keeps its entries, every other row is
  // updated as (pivot*row - row[col]*pivot_row)/old_det, an exact integer
  // division.
  void pivot(int r, int col, int entering_var) {
    const BigInt piv = rows_[r][col];
    mpz_class acc;
    for (int i = 0; i < n_; ++i) {
      if (i == r) continue;
      const BigInt f = rows_[i][col];
      for (int j = 0; j < 2 * n_ + 2; ++j) {
        mpz_mul(acc.get_mpz_t(), piv.get_mpz_t(), rows_[i][j].get_mpz_t());
        mpz_submul(acc.get_mpz_t(), f.get_mpz_t(), rows_[r][j].get_mpz_t());
        mpz_divexact(rows_[i][j].get_mpz_t(), acc.get_mpz_t(), det_.get_mpz_t());
      }
    }
    det_ = piv;
    basis_[r] = entering_var;
  }

  std::vector<Rational> solution() const {
    std::vector<Rational> z(n_, Rational(0));
    for (int i = 0; i < n_; ++i) {
      if (basis_[i] >= n_ && basis_[i] < 2 * n_) {
        Rational v(rows_[i][rhs_col()], det_);
        v.canonicalize();
        z[basis_[i] - n_] = v;
      }
    }
    return z;
  }

  int size() const { return n_; }
  const std::vector<int>& basis() const { return basis_; }

 private:
  int n_;
  BigInt det_;
  std::vector<int> basis_;
  std::vector<std::vector<BigInt>> rows_;
};

// Test-support validator: tableau-vs-original consistency, basis
// repetition, and the almost-complementarity of the pivot path.
class LemkeValidator {
 public:
  LemkeValidator(const LcpInstance& lcp, const LemkeTableau& t, int interval)
      : interval_(interval) {
    const int n = lcp.n;
    original_.assign(n, std::vector<BigInt>(2 * n + 2));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < 2 * n + 2; ++j) original_[i][j] = t.entry(i, j);
  }

  void note_negated_row(int r) {
    for (BigInt& v : original_[r]) v = -v;
  }

  void after_pivot(const LemkeTableau& t, long long pivot_no) {
    const int n = t.size();
    // No basis may repeat under the lexicographic rule.
    std::vector<int> key = t.basis();
    std::sort(key.begin(), key.end());
    if (!seen_.insert(key).second) throw std::logic_error("basis repeated: lexicographic rule broken");
    // While the auxiliary variable is basic, exactly one complementary
    // pair is fully nonbasic.
    std::vector<bool> in_basis(2 * n + 1, false);
    for (int v : t.basis()) in_basis[v] = true;
    if (in_basis[t.var_aux()]) {
      int open_pairs = 0;
      for (int i = 0; i < n; ++i)
        if (!in_basis[t.var_w(i)] && !in_basis[t.var_z(i)]) ++open_pairs;
      if (open_pairs != 1) throw std::logic_error("complementarity lost along pivot path");
    }
    if (pivot_no % interval_ != 0) return;
    // Spot check: basis columns of the original system times any tableau
    // column must reproduce det * original column.
    mpz_class acc, lhs;
    for (int probe = 0; probe < 3; ++probe) {
      const int j = static_cast<int>((pivot_no / interval_ * 7919 + probe * 131) %
                                     (2 * n + 2));
      for (int i = 0; i < n; ++i) {
        acc = 0;
        for (int k = 0; k < n; ++k)
          mpz_addmul(acc.get_mpz_t(), original_[i][t.basis_var(k)].get_mpz_t(),
                     t.entry(k, j).get_mpz_t());
        mpz_mul(lhs.get_mpz_t(), t.det().get_mpz_t(), original_[i][j].get_mpz_t());
        if (mpz_cmp(acc.get_mpz_t(), lhs.get_mpz_t()) != 0)
          throw std::logic_error("tableau drifted from original system");
      }
    }
  }

 private:
  int interval_;
  std::vector<std::vector<BigInt>> original_;
  std::set<std::vector<int>> seen_;
};

}  // namespace

bool check_lcp_solution(const LcpInstance& lcp, const std::vector<Rational>& z) {
  if (static_cast<int>(z.size()) != lcp.n) return false;
  for (const Rational& v : z)
    if (v < 0) return false;
  for (int i = 0; i < lcp.n; ++i) {
    Rational w = lcp.q[i];
    for (int j = 0; j < lcp.n; ++j) w += lcp.m(i, j) * z[j];
    if (w < 0) return false;
    if (z[i] != 0 && w != 0) return false;
  }
  return true;
}

LcpResult lemke(const LcpInstance& lcp, const LemkeOptions& opts) {
  if (lcp.n < 1 || static_cast<int>(lcp.q.size()) != lcp.n ||
      static_cast<int>(lcp.d.size()) != lcp.n || lcp.m.rows() != lcp.n ||
      lcp.m.cols() != lcp.n)
    throw std::invalid_argument("inconsistent LCP shapes");
  for (const Rational& v : lcp.d)
    if (v <= 0) throw std::invalid_argument("covering vector must be strictly positive");

  LcpResult res;
  LemkeTableau t(lcp);

  if (t.rhs_nonnegative()) {
    res.outcome = LcpOutcome::Solution;
    res.z.assign(lcp.n, Rational(0));
    res.pivots = 0;
    return res;
  }

  std::unique_ptr<LemkeValidator> validator;
  if (opts.validate)
    validator = std::make_unique<LemkeValidator>(lcp, t, opts.spot_check_interval);

  if (opts.pivot_limit >= 0 && res.pivots >= opts.pivot_limit) {
    res.outcome = LcpOutcome::PivotLimit;
    return res;
  }

  // Bring the auxiliary variable into the basis at the most infeasible row.
  const int first_row = t.choose_initial_row();
  t.negate_row(first_row);
  if (validator) validator->note_negated_row(first_row);
  int leaving = t.basis_var(first_row);
  t.pivot(first_row, t.aux_col(), t.var_aux());
  res.pivots = 1;
  if (validator) validator->after_pivot(t, res.pivots);

  for (;;) {
    if (opts.pivot_limit >= 0 && res.pivots >= opts.pivot_limit) {
      res.outcome = LcpOutcome::PivotLimit;
      return res;
    }
    if (opts.deadline.expired()) {
      res.outcome = LcpOutcome::Interrupted;
      return res;
    }
    // Complementary rule: the complement of whatever just left enters.
    const int entering =
        leaving < lcp.n ? t.var_z(leaving) : t.var_w(leaving - lcp.n);
    const int col = entering;
    const int row = t.choose_leaving_row(col);
    if (row < 0) {
      res.outcome = LcpOutcome::SecondaryRay;
      return res;
    }
    const int leaving_var = t.basis_var(row);
    t.pivot(row, col, entering);
    ++res.pivots;
    if (validator) validator->after_pivot(t, res.pivots);
    if (leaving_var == t.var_aux()) {
      res.outcome = LcpOutcome::Solution;
      res.z = t.solution();
      if (!check_lcp_solution(lcp, res.z))
        throw std::logic_error("pivoting produced a non-solution");
      return res;
    }
    leaving = leaving_var;
  }
}

// ---------------------------------------------------------------------------
// Game reduction

LcpReduction polymatrix_to_lcp(const RationalGame& g) {
  const int n = g.player_count();
  const int total = g.total_actions();

  LcpMap map;
  map.action_counts = g.action_counts();
  map.offsets.assign(n, 0);
  for (int i = 1; i < n; ++i)
    map.offsets[i] = map.offsets[i - 1] + g.action_count(i - 1);

  // Common denominator of every payoff, then a shift making all entries of
  // the padded complete graph strictly positive. Both transformations
  // preserve best responses, and positivity forces every block of a
  // complementary solution to sum to exactly one.
  BigInt denom(1);
  for (const EdgePayoffs<Rational>& e : g.edges()) {
    for (const Rational& v : e.to_u.data()) denom = lcm(denom, v.get_den());
    for (const Rational& v : e.to_v.data()) denom = lcm(denom, v.get_den());
  }
  BigInt min_scaled(0);  // padded zero blocks exist unless the graph is complete
  bool any = n * (n - 1) / 2 > static_cast<int>(g.edges().size()) && n > 1;
  bool first = !any;
  for (const EdgePayoffs<Rational>& e : g.edges()) {
    for (const Matrix<Rational>* m : {&e.to_u, &e.to_v}) {
      for (const Rational& v : m->data()) {
        BigInt scaled = v.get_num() * (denom / v.get_den());
        if (first || scaled < min_scaled) {
          min_scaled = scaled;
          first = false;
        }
      }
    }
  }
  const BigInt shift = 1 - min_scaled;

  const int dim = total + n;
  LcpInstance lcp;
  lcp.n = dim;
  lcp.q.assign(dim, Rational(0));
  lcp.d.assign(dim, Rational(1));
  lcp.m = Matrix<Rational>(dim, dim, Rational(0));
  for (int i = 0; i < n; ++i) lcp.q[total + i] = Rational(-1);

  // -A block: shifted payoffs, zero diagonal blocks; padding contributes
  // the bare shift.
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const Matrix<Rational>* a = g.payoff_matrix(i, j);
      for (int s = 0; s < g.action_count(i); ++s) {
        for (int u = 0; u < g.action_count(j); ++u) {
          BigInt entry = shift;
          if (a) {
            const Rational& v = (*a)(s, u);
            entry += v.get_num() * (denom / v.get_den());
          }
          lcp.m(map.offsets[i] + s, map.offsets[j] + u) = Rational(-entry);
        }
      }
    }
  }
  // E and E^T blocks.
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < g.action_count(i); ++s) {
      lcp.m(map.offsets[i] + s, total + i) = 1;
      lcp.m(total + i, map.offsets[i] + s) = 1;
    }
  }
  return {std::move(lcp), std::move(map)};
}

MixedProfile<Rational> extract_profile(const LcpMap& map, const std::vector<Rational>& z) {
  const int n = static_cast<int>(map.action_counts.size());
  MixedProfile<Rational> x(n);
  for (int i = 0; i < n; ++i) {
    x[i].assign(map.action_counts[i], Rational(0));
    Rational sum(0);
    for (int s = 0; s < map.action_counts[i]; ++s) {
      x[i][s] = z[map.offsets[i] + s];
      sum += x[i][s];
    }
    if (sum != 1)
      throw std::logic_error("solution block does not sum to one; reduction is buggy");
  }
  return x;
}

std::string serialize_lcp(const LcpInstance& lcp) {
  std::ostringstream out;
  out << "lcp 1\n";
  out << "n " << lcp.n << "\n";
  out << "q";
  for (const Rational& v : lcp.q) out << " " << rational_to_string(v);
  out << "\nd";
  for (const Rational& v : lcp.d) out << " " << rational_to_string(v);
  out << "\nm\n";
  for (int i = 0; i < lcp.n; ++i) {
    for (int j = 0; j < lcp.n; ++j)
      out << (j ? " " : "") << rational_to_string(lcp.m(i, j));
    out << "\n";
  }
  return out.str();
}

}  // namespace polyeq
