#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "polyeq/game.hpp"
#include "polyeq/rng.hpp"

namespace polyeq {

enum class ItemRule { FirstPrice, SecondPrice, AllPay };
enum class MultiUnitRule { Discriminatory, UniformPrice, AllPay };

// Tied high bids either all go to one fixed player or are resolved
// independently uniformly at random; random resolution is computed as an
// exact expectation, never sampled.
struct TieRule {
  bool random = false;
  int favored = 1;  // used when !random
};

enum class ValuationClass {
  Additive,
  BudgetAdditive,
  SingleMinded,
  UnitDemand,
  AndOr,  // realized per side: grand-bundle value for the first bidder, unit demand for the second
  MultiUnitMarginal,
};

ValuationClass parse_valuation_class(const std::string& name);
std::string valuation_class_name(ValuationClass c);
ItemRule parse_item_rule(const std::string& name);      // fp | sp | ap
std::string item_rule_name(ItemRule r);
MultiUnitRule parse_multi_rule(const std::string& name);  // disc | unif | ap
std::string multi_rule_name(MultiUnitRule r);

// A bidder's valuation. Combinatorial classes value item bundles (bitmask
// over items); the multi-unit class is a non-increasing marginal vector.
struct Valuation {
  ValuationClass cls = ValuationClass::Additive;
  std::vector<long long> item_values;  // per-item values, or marginals
  long long budget = 0;                // BudgetAdditive
  unsigned bundle = 0;                 // SingleMinded: wanted bundle
  long long bundle_value = 0;          // SingleMinded

  int items() const { return static_cast<int>(item_values.size()); }
  long long value_of(unsigned mask) const;
  // Multi-unit: total value of the first k units.
  long long prefix_value(int k) const;
};

// Draws a valuation with every item value in [0, M] and at least one item
// worth >= m (resampling until the floor holds). side distinguishes the
// two AndOr roles.
Valuation sample_valuation(ValuationClass cls, int items, long long max_value,
                           long long min_value, Rng& rng, int side = 0);

// All integer bid vectors obeying no-overbidding. Combinatorial classes:
// sum of bids over S never exceeds value_of(S) for any bundle S.
// Multi-unit: non-increasing vectors whose every prefix sum is bounded by
// the valuation's prefix value. The zero vector is always present.
std::vector<std::vector<int>> enumerate_bids(const Valuation& v, long long max_value);

// Simultaneous per-item auction of one item per index; higher bid wins,
// ties per rule. Returns exact expected utilities (value of won bundle
// minus the rule's payment).
std::pair<Rational, Rational> item_auction_utility(ItemRule rule, const TieRule& tie,
                                                   const Valuation& v_row,
                                                   const Valuation& v_col,
                                                   const std::vector<int>& b_row,
                                                   const std::vector<int>& b_col);

// n identical units, marginal valuations, non-increasing bid vectors; the
// n highest of the 2n bids win, cutoff ties per rule.
std::pair<Rational, Rational> multiunit_auction_utility(MultiUnitRule rule,
                                                        const TieRule& tie,
                                                        const Valuation& v_row,
                                                        const Valuation& v_col,
                                                        const std::vector<int>& b_row,
                                                        const std::vector<int>& b_col);

// Hill h pays its value to whoever assigns strictly more soldiers; ties
// pay half to each.
std::pair<Rational, Rational> blotto_utility(const std::vector<Rational>& values_row,
                                             const std::vector<Rational>& values_col,
                                             const std::vector<int>& alloc_row,
                                             const std::vector<int>& alloc_col);

// Which utility scale the adjusted-winner equalization runs in: the points
// the players announced, or their true item values.
enum class AwCurrency { AnnouncedPoints, TrueValues };

// Runs the adjusted-winner procedure on the announced point vectors and
// returns each player's true valuation of the final (at most one item
// fractional) allocation. All arithmetic exact.
std::pair<Rational, Rational> adjusted_winner_utility(const std::vector<Rational>& v_row,
                                                      const std::vector<Rational>& v_col,
                                                      const std::vector<int>& points_row,
                                                      const std::vector<int>& points_col,
                                                      AwCurrency currency);

// Ordered nonnegative integer vectors with the given sum (the pure
// strategies of soldier and point assignment).
std::vector<std::vector<int>> compositions(int total, int parts);

// Two-player game of incomplete information with finitely many types per
// player, an independent uniform prior, per-type action sets, and an exact
// utility oracle.
struct BayesianTwoPlayerGame {
  std::array<std::vector<std::vector<std::string>>, 2> action_labels;
  std::function<std::pair<Rational, Rational>(int t_row, int t_col, int a_row, int a_col)>
      utility;
  std::string description;

  int type_count(int side) const { return static_cast<int>(action_labels[side].size()); }
  int action_count(int side, int type) const {
    return static_cast<int>(action_labels[side][type].size());
  }
};

struct BayesianParams {
  std::string game;  // itembid | multiunit | blotto | adjwinner
  ItemRule item_rule = ItemRule::FirstPrice;
  MultiUnitRule multi_rule = MultiUnitRule::Discriminatory;
  TieRule tie;
  ValuationClass valuation = ValuationClass::Additive;
  int items = 2;  // items, units, or hills
  int types = 2;
  long long max_value = 3;
  long long min_value = 1;
  int soldiers = 8;                  // blotto, complete-information side
  std::string blotto_types = "values";  // values | soldiers
  int points = 5;                    // adjusted winner
  AwCurrency aw_currency = AwCurrency::AnnouncedPoints;
};

BayesianTwoPlayerGame build_bayesian(const BayesianParams& params, std::uint64_t seed);

// Type-graph reduction: one vertex per type, an edge for every pair of
// opposing types, payoffs scaled by the opponent's prior probability. A
// profile of the resulting polymatrix game is an eps-equilibrium exactly
// when the corresponding behavioral strategy is one of the Bayesian game.
PolymatrixGame<Rational> to_polymatrix(const BayesianTwoPlayerGame& b);

// Sidecar text describing types, action labels, and the prior.
std::string bayesian_meta_text(const BayesianTwoPlayerGame& b);

}  // namespace polyeq
