#include "polyeq/generators.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace polyeq {

// Stream layout per seed: stream e (0-based index into the sorted edge
// list) feeds edge e's payload; the reserved streams below feed everything
// that is not tied to a single edge. Keeping one stream per edge index
// means one edge's draws never depend on how many values another edge
// consumed.
namespace {
constexpr std::uint64_t kStreamTopology = 1ULL << 32;
constexpr std::uint64_t kStreamAssignment = (1ULL << 32) + 1;
constexpr std::uint64_t kStreamPlayerBase = (1ULL << 32) + 2;
}  // namespace

GraphKind parse_graph_kind(const std::string& name) {
  if (name == "complete") return GraphKind::Complete;
  if (name == "cycle") return GraphKind::Cycle;
  if (name == "star") return GraphKind::Star;
  if (name == "grid") return GraphKind::Grid;
  if (name == "tree") return GraphKind::Tree;
  throw std::invalid_argument("unknown graph kind '" + name + "'");
}

std::string graph_kind_name(GraphKind k) {
  switch (k) {
    case GraphKind::Complete: return "complete";
    case GraphKind::Cycle: return "cycle";
    case GraphKind::Star: return "star";
    case GraphKind::Grid: return "grid";
    case GraphKind::Tree: return "tree";
  }
  return "?";
}

std::vector<std::pair<int, int>> build_graph(const GraphTopology& topo, Rng tree_rng) {
  const int n = topo.players;
  if (n < 1) throw std::invalid_argument("need at least one player");
  std::vector<std::pair<int, int>> edges;
  switch (topo.kind) {
    case GraphKind::Complete:
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
      break;
    case GraphKind::Cycle: {
      if (n < 3) throw std::invalid_argument("cycle needs at least 3 players");
      for (int u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1});
      edges.push_back({0, n - 1});
      break;
    }
    case GraphKind::Star:
      for (int v = 1; v < n; ++v) edges.push_back({0, v});
      break;
    case GraphKind::Grid: {
      const int r = static_cast<int>(std::lround(std::sqrt(double(n))));
      if (r * r != n)
        throw std::invalid_argument("grid needs a perfect-square player count");
      for (int row = 0; row < r; ++row) {
        for (int col = 0; col < r; ++col) {
          const int a = row * r + col;
          if (col + 1 < r) edges.push_back({a, a + 1});
          if (row + 1 < r) edges.push_back({a, a + r});
        }
      }
      break;
    }
    case GraphKind::Tree: {
      // Uniform labelled tree via a random Pruefer sequence.
      if (n >= 3) {
        std::vector<int> pruefer(n - 2);
        for (int& x : pruefer) x = static_cast<int>(tree_rng.next_below(n));
        std::vector<int> degree(n, 1);
        for (int x : pruefer) ++degree[x];
        std::vector<bool> used(n, false);
        for (int x : pruefer) {
          int leaf = -1;
          for (int i = 0; i < n; ++i) {
            if (degree[i] == 1 && !used[i]) {
              leaf = i;
              break;
            }
          }
          edges.push_back({std::min(leaf, x), std::max(leaf, x)});
          used[leaf] = true;
          --degree[x];
        }
        int a = -1, b = -1;
        for (int i = 0; i < n; ++i)
          if (!used[i]) (a < 0 ? a : b) = i;
        edges.push_back({a, b});
      } else if (n == 2) {
        edges.push_back({0, 1});
      }
      break;
    }
  }
  std::sort(edges.begin(), edges.end());
  return edges;
}

Matrix<Rational> random_matrix(int rows, int cols, Rng& rng) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("matrix needs positive shape");
  Matrix<Rational> m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) m(r, c) = rng.next_unit();
  return m;
}

namespace {

RationalGame assemble(int n, int m, const std::vector<std::pair<int, int>>& graph,
                      const std::function<void(int, const std::pair<int, int>&,
                                               EdgePayoffs<Rational>&)>& fill) {
  std::vector<EdgePayoffs<Rational>> edges(graph.size());
  for (size_t e = 0; e < graph.size(); ++e) {
    edges[e].u = graph[e].first;
    edges[e].v = graph[e].second;
    fill(static_cast<int>(e), graph[e], edges[e]);
  }
  return RationalGame(std::vector<int>(n, m), std::move(edges));
}

Matrix<Rational> negated_transpose(const Matrix<Rational>& a) {
  Matrix<Rational> t = a.transposed();
  for (Rational& v : t.data()) v = -v;
  return t;
}

}  // namespace

RationalGame gen_net_coordination(const GraphTopology& topo, int m, std::uint64_t seed) {
  const auto graph = build_graph(topo, Rng::stream(seed, kStreamTopology));
  return assemble(topo.players, m, graph,
                  [&](int e, const std::pair<int, int>&, EdgePayoffs<Rational>& out) {
                    Rng rng = Rng::stream(seed, e);
                    out.to_u = random_matrix(m, m, rng);
                    out.to_v = out.to_u.transposed();
                  });
}

RationalGame gen_coord_zero(const GraphTopology& topo, int m, const Rational& p,
                            std::uint64_t seed) {
  if (p < 0 || p > 1) throw std::invalid_argument("p must lie in [0,1]");
  const auto graph = build_graph(topo, Rng::stream(seed, kStreamTopology));
  const int ecount = static_cast<int>(graph.size());

  // round(p * |E|), computed exactly: floor(p|E| + 1/2).
  Rational target = p * ecount + Rational(1, 2);
  BigInt coord_count_z = target.get_num() / target.get_den();
  const int coord_count = static_cast<int>(coord_count_z.get_si());

  // Uniform subset of the given size via a partial Fisher-Yates shuffle on
  // a dedicated stream, so edge payloads stay independent of the choice.
  std::vector<int> order(ecount);
  for (int i = 0; i < ecount; ++i) order[i] = i;
  Rng pick = Rng::stream(seed, kStreamAssignment);
  for (int i = 0; i < coord_count; ++i) {
    const int j = i + static_cast<int>(pick.next_below(ecount - i));
    std::swap(order[i], order[j]);
  }
  std::vector<bool> coordination(ecount, false);
  for (int i = 0; i < coord_count; ++i) coordination[order[i]] = true;

  return assemble(topo.players, m, graph,
                  [&](int e, const std::pair<int, int>&, EdgePayoffs<Rational>& out) {
                    Rng rng = Rng::stream(seed, e);
                    out.to_u = random_matrix(m, m, rng);
                    out.to_v = coordination[e] ? out.to_u.transposed()
                                               : negated_transpose(out.to_u);
                  });
}

RationalGame gen_group_zerosum(int n, int m, int g, std::uint64_t seed) {
  if (g < 1 || g > n) throw std::invalid_argument("need 1 <= groups <= players");
  const auto graph = build_graph({GraphKind::Complete, n}, Rng::stream(seed, kStreamTopology));

  // Random permutation cut into g blocks whose sizes differ by at most one.
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  Rng assign = Rng::stream(seed, kStreamAssignment);
  for (int i = n - 1; i > 0; --i) {
    const int j = static_cast<int>(assign.next_below(i + 1));
    std::swap(perm[i], perm[j]);
  }
  std::vector<int> group(n);
  int pos = 0;
  for (int b = 0; b < g; ++b) {
    const int size = n / g + (b < n % g ? 1 : 0);
    for (int k = 0; k < size; ++k) group[perm[pos++]] = b;
  }

  return assemble(n, m, graph,
                  [&](int e, const std::pair<int, int>& uv, EdgePayoffs<Rational>& out) {
                    Rng rng = Rng::stream(seed, e);
                    out.to_u = random_matrix(m, m, rng);
                    out.to_v = group[uv.first] == group[uv.second]
                                   ? out.to_u.transposed()
                                   : negated_transpose(out.to_u);
                  });
}

RationalGame gen_strictly_competitive(const GraphTopology& topo, int m, std::uint64_t seed) {
  const auto graph = build_graph(topo, Rng::stream(seed, kStreamTopology));
  return assemble(topo.players, m, graph,
                  [&](int e, const std::pair<int, int>&, EdgePayoffs<Rational>& out) {
                    Rng rng = Rng::stream(seed, e);
                    out.to_u = random_matrix(m, m, rng);
                    const Rational lambda = Rational(1, 2) + Rational(3, 2) * rng.next_unit();
                    const Rational mu = rng.next_unit();
                    out.to_v = Matrix<Rational>(m, m);
                    for (int r = 0; r < m; ++r)
                      for (int c = 0; c < m; ++c)
                        out.to_v(r, c) = lambda * (mu - out.to_u(c, r));
                  });
}

RationalGame gen_weighted_cooperation(const GraphTopology& topo, int k,
                                      int universe_mult, std::uint64_t seed) {
  if (k < 1) throw std::invalid_argument("need at least one colour per player");
  if (universe_mult < 1) throw std::invalid_argument("universe multiplier must be positive");
  const int n = topo.players;
  const auto graph = build_graph(topo, Rng::stream(seed, kStreamTopology));
  const int universe = universe_mult * k;

  // Colour palette of player i: uniform k-subset of the universe, sorted
  // so that action index -> colour is stable.
  std::vector<std::vector<int>> palette(n);
  for (int i = 0; i < n; ++i) {
    Rng rng = Rng::stream(seed, kStreamPlayerBase + static_cast<std::uint64_t>(i));
    std::vector<int> pool(universe);
    for (int c = 0; c < universe; ++c) pool[c] = c;
    for (int t = 0; t < k; ++t) {
      const int j = t + static_cast<int>(rng.next_below(universe - t));
      std::swap(pool[t], pool[j]);
    }
    palette[i].assign(pool.begin(), pool.begin() + k);
    std::sort(palette[i].begin(), palette[i].end());
  }

  return assemble(n, k, graph,
                  [&](int e, const std::pair<int, int>& uv, EdgePayoffs<Rational>& out) {
                    Rng rng = Rng::stream(seed, e);
                    const Rational w = rng.next_unit_positive();
                    out.to_u = Matrix<Rational>(k, k, Rational(0));
                    out.to_v = Matrix<Rational>(k, k, Rational(0));
                    for (int a = 0; a < k; ++a)
                      for (int b = 0; b < k; ++b)
                        if (palette[uv.first][a] == palette[uv.second][b]) {
                          out.to_u(a, b) = w;
                          out.to_v(b, a) = w;
                        }
                  });
}

}  // namespace polyeq
