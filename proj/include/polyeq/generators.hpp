#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "polyeq/game.hpp"
#include "polyeq/rng.hpp"

namespace polyeq {

enum class GraphKind { Complete, Cycle, Star, Grid, Tree };

GraphKind parse_graph_kind(const std::string& name);
std::string graph_kind_name(GraphKind k);

struct GraphTopology {
  GraphKind kind = GraphKind::Complete;
  int players = 0;
};

// Edge list of the topology, sorted by (u, v). Tree draws a uniformly
// random labelled tree from the given stream; all other kinds ignore it.
std::vector<std::pair<int, int>> build_graph(const GraphTopology& topo, Rng tree_rng);

// i.i.d. entries uniform on [0,1) as dyadic rationals.
Matrix<Rational> random_matrix(int rows, int cols, Rng& rng);

// Every edge is a coordination game (A_e, A_e): A_ij = A_ji^T.
RationalGame gen_net_coordination(const GraphTopology& topo, int m, std::uint64_t seed);

// Exactly round(p * |E|) edges, chosen uniformly, are coordination games;
// the remainder are zero-sum (A_e, -A_e).
RationalGame gen_coord_zero(const GraphTopology& topo, int m, const Rational& p,
                            std::uint64_t seed);

// Complete graph; a uniformly random partition into g near-equal groups.
// Within-group edges coordinate, between-group edges are zero-sum.
RationalGame gen_group_zerosum(int n, int m, int g, std::uint64_t seed);

// Each edge carries (A, lambda*(mu*J - A)) with A ~ U[0,1), lambda ~
// U[0.5,2), mu ~ U[0,1): a positive affine image of a zero-sum game, hence
// strictly competitive.
RationalGame gen_strictly_competitive(const GraphTopology& topo, int m, std::uint64_t seed);

// Each player picks one of its k colours (a uniformly random k-subset of a
// universe_mult*k universe); an edge pays its weight w_e ~ U(0,1] to both
// endpoints whenever the chosen colours coincide.
RationalGame gen_weighted_cooperation(const GraphTopology& topo, int k,
                                      int universe_mult, std::uint64_t seed);

}  // namespace polyeq
