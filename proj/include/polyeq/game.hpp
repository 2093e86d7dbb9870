#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "polyeq/matrix.hpp"
#include "polyeq/rational.hpp"

namespace polyeq {

// One mixed strategy per player; entry [i][s] is the probability player i
// puts on action s.
template <class T>
using MixedProfile = std::vector<std::vector<T>>;

// Bimatrix game attached to the edge {u, v}, u < v. to_u has shape
// m_u x m_v and holds the payoffs of u; to_v has shape m_v x m_u and holds
// the payoffs of v. Storing both orientations keeps payoff accumulation and
// the LCP assembly free of transposes.
template <class T>
struct EdgePayoffs {
  int u = 0;
  int v = 0;
  Matrix<T> to_u;
  Matrix<T> to_v;
};

// Game on a graph of players: each edge carries a bimatrix game, a player
// uses one mixed strategy in all incident edge games and earns the sum of
// the edge payoffs. Immutable once constructed.
template <class T>
class PolymatrixGame {
 public:
  PolymatrixGame() = default;

  PolymatrixGame(std::vector<int> action_counts, std::vector<EdgePayoffs<T>> edges)
      : actions_(std::move(action_counts)), edges_(std::move(edges)) {
    const int n = static_cast<int>(actions_.size());
    if (n < 1) throw std::invalid_argument("game needs at least one player");
    for (int m : actions_)
      if (m < 1) throw std::invalid_argument("every player needs at least one action");
    std::sort(edges_.begin(), edges_.end(),
              [](const EdgePayoffs<T>& a, const EdgePayoffs<T>& b) {
                return std::pair(a.u, a.v) < std::pair(b.u, b.v);
              });
    adjacency_.assign(n, {});
    for (size_t e = 0; e < edges_.size(); ++e) {
      const EdgePayoffs<T>& eg = edges_[e];
      if (eg.u < 0 || eg.v >= n || eg.u >= eg.v)
        throw std::invalid_argument("edge endpoints must satisfy 0 <= u < v < n");
      if (e > 0 && edges_[e - 1].u == eg.u && edges_[e - 1].v == eg.v)
        throw std::invalid_argument("duplicate edge");
      if (eg.to_u.rows() != actions_[eg.u] || eg.to_u.cols() != actions_[eg.v] ||
          eg.to_v.rows() != actions_[eg.v] || eg.to_v.cols() != actions_[eg.u])
        throw std::invalid_argument("edge matrix shape does not match action counts");
      adjacency_[eg.u].push_back({static_cast<int>(e), true});
      adjacency_[eg.v].push_back({static_cast<int>(e), false});
    }
  }

  int player_count() const { return static_cast<int>(actions_.size()); }
  int action_count(int i) const { return actions_[i]; }
  const std::vector<int>& action_counts() const { return actions_; }
  const std::vector<EdgePayoffs<T>>& edges() const { return edges_; }

  // Incident edges of player i as (edge index, i-is-u flag).
  const std::vector<std::pair<int, bool>>& incident(int i) const {
    return adjacency_[i];
  }

  int degree(int i) const { return static_cast<int>(adjacency_[i].size()); }

  // A_ij: payoffs of i against j, or nullptr when {i,j} is not an edge.
  const Matrix<T>* payoff_matrix(int i, int j) const {
    for (const auto& [e, i_is_u] : adjacency_[i]) {
      const EdgePayoffs<T>& eg = edges_[e];
      const int other = i_is_u ? eg.v : eg.u;
      if (other == j) return i_is_u ? &eg.to_u : &eg.to_v;
    }
    return nullptr;
  }

  int total_actions() const {
    int s = 0;
    for (int m : actions_) s += m;
    return s;
  }

  // Number of stored payoff entries.
  long long payoff_entry_count() const {
    long long s = 0;
    for (const EdgePayoffs<T>& e : edges_)
      s += 2LL * actions_[e.u] * actions_[e.v];
    return s;
  }

  // Dimension of the LCP the game reduces to: sum of actions plus one
  // normalization variable per player.
  int lcp_dimension() const { return total_actions() + player_count(); }

 private:
  std::vector<int> actions_;
  std::vector<EdgePayoffs<T>> edges_;
  std::vector<std::vector<std::pair<int, bool>>> adjacency_;
};

using RationalGame = PolymatrixGame<Rational>;
using FloatGame = PolymatrixGame<double>;

// ---------------------------------------------------------------------------
// Profile helpers

template <class T>
MixedProfile<T> uniform_profile(const PolymatrixGame<T>& g) {
  MixedProfile<T> x(g.player_count());
  for (int i = 0; i < g.player_count(); ++i)
    x[i].assign(g.action_count(i), T(1) / T(g.action_count(i)));
  return x;
}

template <class T>
MixedProfile<T> pure_profile(const PolymatrixGame<T>& g, const std::vector<int>& actions) {
  MixedProfile<T> x(g.player_count());
  for (int i = 0; i < g.player_count(); ++i) {
    x[i].assign(g.action_count(i), T(0));
    x[i][actions[i]] = T(1);
  }
  return x;
}

template <class T>
void validate_profile(const PolymatrixGame<T>& g, const MixedProfile<T>& x) {
  if (static_cast<int>(x.size()) != g.player_count())
    throw std::invalid_argument("profile has wrong player count");
  for (int i = 0; i < g.player_count(); ++i) {
    if (static_cast<int>(x[i].size()) != g.action_count(i))
      throw std::invalid_argument("strategy vector has wrong length");
    T sum(0);
    const T tol = NumericTraits<T>::sum_tol();
    for (const T& p : x[i]) {
      if (p < T(0) - tol) throw std::invalid_argument("negative probability");
      sum += p;
    }
    if (abs_value<T>(sum - T(1)) > tol)
      throw std::invalid_argument("strategy does not sum to 1");
  }
}

// True iff every strategy is (within tolerance, in float mode) a unit vector.
template <class T>
bool is_pure(const MixedProfile<T>& x) {
  const T tol = NumericTraits<T>::zero_tol();
  for (const auto& xi : x) {
    int ones = 0;
    for (const T& p : xi) {
      if (abs_value<T>(p - T(1)) <= tol)
        ++ones;
      else if (abs_value<T>(p) > tol)
        return false;
    }
    if (ones != 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Payoffs, regret, epsilon

// Expected payoff of every pure action of player i against the opponents'
// mixtures: p_i = sum over incident edges {i,j} of A_ij x_j.
template <class T>
std::vector<T> payoff_vector(const PolymatrixGame<T>& g, const MixedProfile<T>& x, int i) {
  std::vector<T> p(g.action_count(i), T(0));
  for (const auto& [e, i_is_u] : g.incident(i)) {
    const EdgePayoffs<T>& eg = g.edges()[e];
    const Matrix<T>& a = i_is_u ? eg.to_u : eg.to_v;
    const std::vector<T>& other = x[i_is_u ? eg.v : eg.u];
    for (int s = 0; s < a.rows(); ++s) {
      T acc(0);
      for (int t = 0; t < a.cols(); ++t) acc += a(s, t) * other[t];
      p[s] += acc;
    }
  }
  return p;
}

template <class T>
T dot(const std::vector<T>& a, const std::vector<T>& b) {
  T acc(0);
  for (size_t k = 0; k < a.size(); ++k) acc += a[k] * b[k];
  return acc;
}

// Regret of player i: best-response payoff minus the payoff of x_i.
template <class T>
T regret(const PolymatrixGame<T>& g, const MixedProfile<T>& x, int i) {
  const std::vector<T> p = payoff_vector(g, x, i);
  if (p.empty()) return T(0);
  T best = p[0];
  for (const T& v : p)
    if (best < v) best = v;
  return best - dot(p, x[i]);
}

template <class T>
std::vector<T> all_regrets(const PolymatrixGame<T>& g, const MixedProfile<T>& x) {
  std::vector<T> f(g.player_count());
  for (int i = 0; i < g.player_count(); ++i) f[i] = regret(g, x, i);
  return f;
}

// The profile's epsilon: max regret over the players. Zero exactly at a
// Nash equilibrium.
template <class T>
T epsilon(const PolymatrixGame<T>& g, const MixedProfile<T>& x) {
  T best(0);
  for (int i = 0; i < g.player_count(); ++i) {
    T f = regret(g, x, i);
    if (best < f) best = f;
  }
  return best;
}

// ---------------------------------------------------------------------------
// Normalization

// Per-player affine rescaling putting every player's total payoff in [0,1]:
// with L_i = sum_j min(A_ij) and U_i = sum_j max(A_ij), each incident matrix
// becomes (A_ij - L_i/deg(i)) / (U_i - L_i). Best-response sets are
// preserved at every profile; a constant-payoff player's matrices collapse
// to zero. Idempotent.
template <class T>
PolymatrixGame<T> normalize_game(const PolymatrixGame<T>& g) {
  const int n = g.player_count();
  std::vector<T> lo(n, T(0)), hi(n, T(0));
  for (int i = 0; i < n; ++i) {
    for (const auto& [e, i_is_u] : g.incident(i)) {
      const Matrix<T>& a = i_is_u ? g.edges()[e].to_u : g.edges()[e].to_v;
      lo[i] += a.min_entry();
      hi[i] += a.max_entry();
    }
  }
  std::vector<EdgePayoffs<T>> edges = g.edges();
  auto rescale = [&](int i, Matrix<T>& a) {
    if (hi[i] == lo[i]) {
      a = Matrix<T>(a.rows(), a.cols(), T(0));
      return;
    }
    const T shift = lo[i] / T(g.degree(i));
    const T range = hi[i] - lo[i];
    for (T& v : a.data()) v = (v - shift) / range;
  };
  for (EdgePayoffs<T>& e : edges) {
    rescale(e.u, e.to_u);
    rescale(e.v, e.to_v);
  }
  return PolymatrixGame<T>(g.action_counts(), std::move(edges));
}

inline FloatGame to_float(const RationalGame& g) {
  std::vector<EdgePayoffs<double>> edges;
  edges.reserve(g.edges().size());
  for (const EdgePayoffs<Rational>& e : g.edges()) {
    EdgePayoffs<double> d;
    d.u = e.u;
    d.v = e.v;
    d.to_u = Matrix<double>(e.to_u.rows(), e.to_u.cols());
    d.to_v = Matrix<double>(e.to_v.rows(), e.to_v.cols());
    for (size_t k = 0; k < e.to_u.data().size(); ++k)
      d.to_u.data()[k] = to_double(e.to_u.data()[k]);
    for (size_t k = 0; k < e.to_v.data().size(); ++k)
      d.to_v.data()[k] = to_double(e.to_v.data()[k]);
    edges.push_back(std::move(d));
  }
  return FloatGame(g.action_counts(), std::move(edges));
}

// ---------------------------------------------------------------------------
// Text format (see README: line-oriented, '#' comments, exact rationals)

std::string serialize(const RationalGame& g, const std::string& comment = "");
RationalGame deserialize(const std::string& text);
RationalGame load_game(const std::string& path);
void save_game(const RationalGame& g, const std::string& path,
               const std::string& comment = "");

// ---------------------------------------------------------------------------
// Brute-force oracle for tiny games: support enumeration plus an exact
// feasibility solve per support profile. Guarded by prod_i 2^{m_i} <= 2^20.
MixedProfile<Rational> enumerate_equilibrium_small(const RationalGame& g);

}  // namespace polyeq
