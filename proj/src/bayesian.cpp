#include "polyeq/bayesian.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace polyeq {

ValuationClass parse_valuation_class(const std::string& name) {
  if (name == "additive") return ValuationClass::Additive;
  if (name == "budget") return ValuationClass::BudgetAdditive;
  if (name == "singleminded") return ValuationClass::SingleMinded;
  if (name == "unitdemand") return ValuationClass::UnitDemand;
  if (name == "andor") return ValuationClass::AndOr;
  if (name == "submodular") return ValuationClass::MultiUnitMarginal;
  throw std::invalid_argument("unknown valuation class '" + name + "'");
}

std::string valuation_class_name(ValuationClass c) {
  switch (c) {
    case ValuationClass::Additive: return "additive";
    case ValuationClass::BudgetAdditive: return "budget";
    case ValuationClass::SingleMinded: return "singleminded";
    case ValuationClass::UnitDemand: return "unitdemand";
    case ValuationClass::AndOr: return "andor";
    case ValuationClass::MultiUnitMarginal: return "submodular";
  }
  return "?";
}

ItemRule parse_item_rule(const std::string& name) {
  if (name == "fp") return ItemRule::FirstPrice;
  if (name == "sp") return ItemRule::SecondPrice;
  if (name == "ap") return ItemRule::AllPay;
  throw std::invalid_argument("unknown payment rule '" + name + "'");
}

std::string item_rule_name(ItemRule r) {
  switch (r) {
    case ItemRule::FirstPrice: return "fp";
    case ItemRule::SecondPrice: return "sp";
    case ItemRule::AllPay: return "ap";
  }
  return "?";
}

MultiUnitRule parse_multi_rule(const std::string& name) {
  if (name == "disc") return MultiUnitRule::Discriminatory;
  if (name == "unif") return MultiUnitRule::UniformPrice;
  if (name == "ap") return MultiUnitRule::AllPay;
  throw std::invalid_argument("unknown payment rule '" + name + "'");
}

std::string multi_rule_name(MultiUnitRule r) {
  switch (r) {
    case MultiUnitRule::Discriminatory: return "disc";
    case MultiUnitRule::UniformPrice: return "unif";
    case MultiUnitRule::AllPay: return "ap";
  }
  return "?";
}

long long Valuation::value_of(unsigned mask) const {
  switch (cls) {
    case ValuationClass::Additive: {
      long long s = 0;
      for (int j = 0; j < items(); ++j)
        if (mask >> j & 1u) s += item_values[j];
      return s;
    }
    case ValuationClass::BudgetAdditive: {
      long long s = 0;
      for (int j = 0; j < items(); ++j)
        if (mask >> j & 1u) s += item_values[j];
      return std::min(s, budget);
    }
    case ValuationClass::SingleMinded:
      return (mask & bundle) == bundle ? bundle_value : 0;
    case ValuationClass::UnitDemand: {
      long long best = 0;
      for (int j = 0; j < items(); ++j)
        if (mask >> j & 1u) best = std::max(best, item_values[j]);
      return best;
    }
    default:
      throw std::logic_error("bundle value undefined for this valuation class");
  }
}

long long Valuation::prefix_value(int k) const {
  long long s = 0;
  for (int j = 0; j < k; ++j) s += item_values[j];
  return s;
}

Valuation sample_valuation(ValuationClass cls, int items, long long max_value,
                           long long min_value, Rng& rng, int side) {
  if (items < 1 || min_value < 1 || max_value < min_value)
    throw std::invalid_argument("need items >= 1 and 1 <= m <= M");
  Valuation v;
  switch (cls) {
    case ValuationClass::Additive:
    case ValuationClass::UnitDemand:
    case ValuationClass::BudgetAdditive: {
      v.cls = cls;
      // Per-item values uniform on {0..M}, redrawn until the floor holds.
      for (;;) {
        v.item_values.assign(items, 0);
        long long top = 0;
        for (long long& x : v.item_values) {
          x = rng.next_int(0, max_value);
          top = std::max(top, x);
        }
        if (top >= min_value) break;
      }
      if (cls == ValuationClass::BudgetAdditive) {
        long long total = 0;
        for (long long x : v.item_values) total += x;
        v.budget = rng.next_int(max_value, std::max(total, max_value));
      }
      return v;
    }
    case ValuationClass::SingleMinded: {
      v.cls = ValuationClass::SingleMinded;
      v.item_values.assign(items, 0);
      v.bundle = 1 + static_cast<unsigned>(rng.next_below((1u << items) - 1));
      v.bundle_value = rng.next_int(min_value, max_value);
      return v;
    }
    case ValuationClass::AndOr: {
      if (side == 0) {
        // Positive value for the grand bundle only.
        v.cls = ValuationClass::SingleMinded;
        v.item_values.assign(items, 0);
        v.bundle = (1u << items) - 1;
        v.bundle_value = rng.next_int(min_value, max_value);
        return v;
      }
      return sample_valuation(ValuationClass::UnitDemand, items, max_value, min_value, rng);
    }
    case ValuationClass::MultiUnitMarginal: {
      // Non-increasing marginals: the first from {m..M}, each further one
      // uniform below its predecessor.
      v.cls = ValuationClass::MultiUnitMarginal;
      v.item_values.assign(items, 0);
      v.item_values[0] = rng.next_int(min_value, max_value);
      for (int j = 1; j < items; ++j)
        v.item_values[j] = rng.next_int(0, v.item_values[j - 1]);
      return v;
    }
  }
  throw std::logic_error("unhandled valuation class");
}

std::vector<std::vector<int>> enumerate_bids(const Valuation& v, long long max_value) {
  const int n = v.items();
  std::vector<std::vector<int>> out;
  std::vector<int> bid(n, 0);

  if (v.cls == ValuationClass::MultiUnitMarginal) {
    // Non-increasing vectors with bounded prefix sums.
    const std::function<void(int, int, long long)> rec = [&](int j, int cap, long long used) {
      if (j == n) {
        out.push_back(bid);
        return;
      }
      for (int b = 0; b <= cap; ++b) {
        if (used + b > v.prefix_value(j + 1)) break;
        bid[j] = b;
        rec(j + 1, b, used + b);
      }
      bid[j] = 0;
    };
    rec(0, static_cast<int>(std::min<long long>(max_value, v.prefix_value(1))), 0);
    return out;
  }

  const unsigned full = (1u << n) - 1;
  const std::function<void(int)> rec = [&](int j) {
    if (j == n) {
      for (unsigned mask = 1; mask <= full; ++mask) {
        long long s = 0;
        for (int k = 0; k < n; ++k)
          if (mask >> k & 1u) s += bid[k];
        if (s > v.value_of(mask)) return;
      }
      out.push_back(bid);
      return;
    }
    for (int b = 0; b <= max_value; ++b) {
      if (b > v.value_of(1u << j)) break;  // single-item bound prunes early
      bid[j] = b;
      rec(j + 1);
    }
    bid[j] = 0;
  };
  rec(0);
  return out;
}

// ---------------------------------------------------------------------------
// Item bidding

namespace {

std::pair<Rational, Rational> item_auction_outcome(ItemRule rule, const Valuation& v_row,
                                                   const Valuation& v_col,
                                                   const std::vector<int>& b_row,
                                                   const std::vector<int>& b_col,
                                                   unsigned row_wins) {
  const int n = static_cast<int>(b_row.size());
  long long pay_row = 0, pay_col = 0;
  for (int j = 0; j < n; ++j) {
    const bool row_win = row_wins >> j & 1u;
    switch (rule) {
      case ItemRule::FirstPrice:
        if (row_win)
          pay_row += b_row[j];
        else
          pay_col += b_col[j];
        break;
      case ItemRule::SecondPrice:
        if (row_win)
          pay_row += b_col[j];
        else
          pay_col += b_row[j];
        break;
      case ItemRule::AllPay:
        pay_row += b_row[j];
        pay_col += b_col[j];
        break;
    }
  }
  const unsigned col_wins = ~row_wins & ((1u << n) - 1);
  return {make_rational(v_row.value_of(row_wins) - pay_row),
          make_rational(v_col.value_of(col_wins) - pay_col)};
}

}  // namespace

std::pair<Rational, Rational> item_auction_utility(ItemRule rule, const TieRule& tie,
                                                   const Valuation& v_row,
                                                   const Valuation& v_col,
                                                   const std::vector<int>& b_row,
                                                   const std::vector<int>& b_col) {
  const int n = static_cast<int>(b_row.size());
  if (static_cast<int>(b_col.size()) != n)
    throw std::invalid_argument("bid vectors must have equal length");
  unsigned base = 0;
  std::vector<int> tied;
  for (int j = 0; j < n; ++j) {
    if (b_row[j] > b_col[j])
      base |= 1u << j;
    else if (b_row[j] == b_col[j])
      tied.push_back(j);
  }
  if (!tie.random) {
    if (tie.favored == 0)
      for (int j : tied) base |= 1u << j;
    return item_auction_outcome(rule, v_row, v_col, b_row, b_col, base);
  }
  // Exact expectation over the 2^T equally likely resolutions.
  const int t = static_cast<int>(tied.size());
  Rational u_row(0), u_col(0);
  for (unsigned pick = 0; pick < (1u << t); ++pick) {
    unsigned wins = base;
    for (int k = 0; k < t; ++k)
      if (pick >> k & 1u) wins |= 1u << tied[k];
    const auto [ur, uc] = item_auction_outcome(rule, v_row, v_col, b_row, b_col, wins);
    u_row += ur;
    u_col += uc;
  }
  const Rational scale(1, 1L << t);
  return {u_row * scale, u_col * scale};
}

// ---------------------------------------------------------------------------
// Multi-unit auctions

namespace {

long long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long long r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

std::pair<Rational, Rational> multiunit_outcome(MultiUnitRule rule, const Valuation& v_row,
                                                const Valuation& v_col,
                                                const std::vector<int>& b_row,
                                                const std::vector<int>& b_col, int row_units,
                                                long long clearing_price) {
  const int n = static_cast<int>(b_row.size());
  const int col_units = n - row_units;
  long long pay_row = 0, pay_col = 0;
  switch (rule) {
    case MultiUnitRule::Discriminatory:
      // Winning bids are each player's highest; vectors are non-increasing.
      for (int j = 0; j < row_units; ++j) pay_row += b_row[j];
      for (int j = 0; j < col_units; ++j) pay_col += b_col[j];
      break;
    case MultiUnitRule::UniformPrice:
      pay_row = clearing_price * row_units;
      pay_col = clearing_price * col_units;
      break;
    case MultiUnitRule::AllPay:
      for (int b : b_row) pay_row += b;
      for (int b : b_col) pay_col += b;
      break;
  }
  return {make_rational(v_row.prefix_value(row_units) - pay_row),
          make_rational(v_col.prefix_value(col_units) - pay_col)};
}

}  // namespace

std::pair<Rational, Rational> multiunit_auction_utility(MultiUnitRule rule,
                                                        const TieRule& tie,
                                                        const Valuation& v_row,
                                                        const Valuation& v_col,
                                                        const std::vector<int>& b_row,
                                                        const std::vector<int>& b_col) {
  const int n = static_cast<int>(b_row.size());
  if (static_cast<int>(b_col.size()) != n)
    throw std::invalid_argument("bid vectors must have equal length");
  for (int j = 0; j + 1 < n; ++j)
    if (b_row[j] < b_row[j + 1] || b_col[j] < b_col[j + 1])
      throw std::invalid_argument("multi-unit bids must be non-increasing");

  std::vector<long long> pool;
  pool.reserve(2 * n);
  for (int b : b_row) pool.push_back(b);
  for (int b : b_col) pool.push_back(b);
  std::sort(pool.rbegin(), pool.rend());
  const long long cutoff = pool[n - 1];
  // The market-clearing price (highest losing bid) does not depend on how
  // cutoff ties are allocated.
  const long long clearing_price = pool[n];

  int row_above = 0, col_above = 0, row_at = 0, col_at = 0;
  for (int b : b_row) {
    row_above += b > cutoff;
    row_at += b == cutoff;
  }
  for (int b : b_col) {
    col_above += b > cutoff;
    col_at += b == cutoff;
  }
  const int slots = n - row_above - col_above;  // cutoff bids that win

  if (!tie.random) {
    const int row_take = tie.favored == 0 ? std::min(slots, row_at)
                                          : slots - std::min(slots, col_at);
    return multiunit_outcome(rule, v_row, v_col, b_row, b_col, row_above + row_take,
                             clearing_price);
  }

  // Exact expectation over all equally likely choices of which tied bids
  // win the remaining units (hypergeometric weights).
  Rational u_row(0), u_col(0);
  const long long total = binomial(row_at + col_at, slots);
  for (int take = std::max(0, slots - col_at); take <= std::min(slots, row_at); ++take) {
    const Rational weight =
        make_rational(binomial(row_at, take) * binomial(col_at, slots - take), total);
    const auto [ur, uc] = multiunit_outcome(rule, v_row, v_col, b_row, b_col,
                                            row_above + take, clearing_price);
    u_row += weight * ur;
    u_col += weight * uc;
  }
  return {u_row, u_col};
}

// ---------------------------------------------------------------------------
// Colonel Blotto

std::pair<Rational, Rational> blotto_utility(const std::vector<Rational>& values_row,
                                             const std::vector<Rational>& values_col,
                                             const std::vector<int>& alloc_row,
                                             const std::vector<int>& alloc_col) {
  const size_t hills = values_row.size();
  if (values_col.size() != hills || alloc_row.size() != hills || alloc_col.size() != hills)
    throw std::invalid_argument("hill vectors must have equal length");
  Rational u_row(0), u_col(0);
  for (size_t h = 0; h < hills; ++h) {
    if (alloc_row[h] > alloc_col[h])
      u_row += values_row[h];
    else if (alloc_row[h] < alloc_col[h])
      u_col += values_col[h];
    else {
      u_row += values_row[h] / 2;
      u_col += values_col[h] / 2;
    }
  }
  return {u_row, u_col};
}

// ---------------------------------------------------------------------------
// Adjusted winner

std::pair<Rational, Rational> adjusted_winner_utility(const std::vector<Rational>& v_row,
                                                      const std::vector<Rational>& v_col,
                                                      const std::vector<int>& points_row,
                                                      const std::vector<int>& points_col,
                                                      AwCurrency currency) {
  const int n = static_cast<int>(v_row.size());
  if (static_cast<int>(v_col.size()) != n || static_cast<int>(points_row.size()) != n ||
      static_cast<int>(points_col.size()) != n)
    throw std::invalid_argument("item vectors must have equal length");

  // Initial allocation by announced points; point ties go to the row player.
  std::vector<int> owner(n);
  for (int i = 0; i < n; ++i) owner[i] = points_row[i] >= points_col[i] ? 0 : 1;

  // The equalization currency: announced points, or true item values.
  auto measure = [&](int player, int item) -> Rational {
    if (currency == AwCurrency::AnnouncedPoints)
      return Rational(player == 0 ? points_row[item] : points_col[item]);
    return player == 0 ? v_row[item] : v_col[item];
  };

  Rational util[2] = {Rational(0), Rational(0)};
  for (int i = 0; i < n; ++i) util[owner[i]] += measure(owner[i], i);

  // frac_row[i]: fraction of item i held by the row player at the end.
  std::vector<Rational> frac_row(n);
  for (int i = 0; i < n; ++i) frac_row[i] = owner[i] == 0 ? 1 : 0;

  const int leader = util[0] >= util[1] ? 0 : 1;
  const int follower = 1 - leader;
  std::vector<bool> processed(n, false);

  while (util[leader] > util[follower]) {
    // Leader's unprocessed item with the smallest leader/follower measure
    // ratio; zero follower measure sorts last, ratio ties break on the
    // lower index, and items worth nothing to both sides are skipped.
    int pick = -1;
    for (int i = 0; i < n; ++i) {
      if (processed[i] || owner[i] != leader) continue;
      if (measure(leader, i) + measure(follower, i) == 0) continue;
      if (pick < 0) {
        pick = i;
        continue;
      }
      // measure(L,i)/measure(F,i) < measure(L,pick)/measure(F,pick)?
      const Rational lhs = measure(leader, i) * measure(follower, pick);
      const Rational rhs = measure(leader, pick) * measure(follower, i);
      if (lhs < rhs) pick = i;
    }
    if (pick < 0) break;
    processed[pick] = true;

    const Rational m_l = measure(leader, pick), m_f = measure(follower, pick);
    if (util[leader] - m_l >= util[follower] + m_f) {
      // Whole transfer keeps the leader ahead (or exactly level).
      owner[pick] = follower;
      frac_row[pick] = follower == 0 ? 1 : 0;
      util[leader] -= m_l;
      util[follower] += m_f;
      continue;
    }
    // Split: w of the item to the follower equalizes exactly.
    const Rational w = (util[leader] - util[follower]) / (m_l + m_f);
    util[leader] -= w * m_l;
    util[follower] += w * m_f;
    if (leader == 0)
      frac_row[pick] = 1 - w;
    else
      frac_row[pick] = w;
    break;
  }

  Rational u_row(0), u_col(0);
  for (int i = 0; i < n; ++i) {
    u_row += frac_row[i] * v_row[i];
    u_col += (1 - frac_row[i]) * v_col[i];
  }
  return {u_row, u_col};
}

// ---------------------------------------------------------------------------
// Game assembly

std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(parts, 0);
  const std::function<void(int, int)> rec = [&](int idx, int left) {
    if (idx == parts - 1) {
      cur[idx] = left;
      out.push_back(cur);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      cur[idx] = k;
      rec(idx + 1, left - k);
    }
  };
  if (parts >= 1) rec(0, total);
  return out;
}

namespace {

std::string vec_label(const std::vector<int>& v) {
  std::string s = "(";
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(v[i]);
  }
  return s + ")";
}

std::vector<Rational> sample_unit_vector(int n, Rng& rng) {
  std::vector<Rational> v(n);
  for (Rational& x : v) x = rng.next_unit();
  return v;
}

std::vector<Rational> sample_normalized_vector(int n, Rng& rng) {
  for (;;) {
    std::vector<Rational> v = sample_unit_vector(n, rng);
    Rational sum(0);
    for (const Rational& x : v) sum += x;
    if (sum == 0) continue;
    for (Rational& x : v) x /= sum;
    return v;
  }
}

}  // namespace

BayesianTwoPlayerGame build_bayesian(const BayesianParams& params, std::uint64_t seed) {
  if (params.types < 1) throw std::invalid_argument("need at least one type per player");
  if (params.items < 1) throw std::invalid_argument("need at least one item");
  BayesianTwoPlayerGame game;
  std::ostringstream desc;

  if (params.game == "itembid" || params.game == "multiunit") {
    const bool multi = params.game == "multiunit";
    // Multi-unit additive means constant marginals v_j = v_1.
    const bool flat_marginals = multi && params.valuation == ValuationClass::Additive;
    const ValuationClass cls = multi ? ValuationClass::MultiUnitMarginal : params.valuation;
    std::array<std::vector<Valuation>, 2> vals;
    std::array<std::vector<std::vector<std::vector<int>>>, 2> bids;
    for (int side = 0; side < 2; ++side) {
      Rng rng = Rng::stream(seed, side);
      for (int t = 0; t < params.types; ++t) {
        Valuation v;
        if (flat_marginals) {
          v.cls = ValuationClass::MultiUnitMarginal;
          v.item_values.assign(params.items,
                               rng.next_int(params.min_value, params.max_value));
        } else {
          v = sample_valuation(cls, params.items, params.max_value, params.min_value,
                               rng, side);
        }
        std::vector<std::vector<int>> b = enumerate_bids(v, params.max_value);
        std::vector<std::string> labels;
        labels.reserve(b.size());
        for (const auto& vec : b) labels.push_back(vec_label(vec));
        game.action_labels[side].push_back(std::move(labels));
        vals[side].push_back(std::move(v));
        bids[side].push_back(std::move(b));
      }
    }
    if (multi) {
      const MultiUnitRule rule = params.multi_rule;
      const TieRule tie = params.tie;
      game.utility = [vals, bids, rule, tie](int tr, int tc, int ar, int ac) {
        return multiunit_auction_utility(rule, tie, vals[0][tr], vals[1][tc],
                                         bids[0][tr][ar], bids[1][tc][ac]);
      };
    } else {
      const ItemRule rule = params.item_rule;
      const TieRule tie = params.tie;
      game.utility = [vals, bids, rule, tie](int tr, int tc, int ar, int ac) {
        return item_auction_utility(rule, tie, vals[0][tr], vals[1][tc],
                                    bids[0][tr][ar], bids[1][tc][ac]);
      };
    }
    desc << params.game << " rule="
         << (multi ? multi_rule_name(params.multi_rule) : item_rule_name(params.item_rule))
         << " valuation=" << valuation_class_name(cls);
  } else if (params.game == "blotto") {
    std::array<std::vector<std::vector<Rational>>, 2> values;  // [side][type]
    std::array<std::vector<std::vector<std::vector<int>>>, 2> allocs;
    for (int side = 0; side < 2; ++side) {
      Rng rng = Rng::stream(seed, side);
      if (params.blotto_types == "soldiers") {
        // Complete-information hill values; types differ in soldier count.
        const std::vector<Rational> shared = sample_unit_vector(params.items, rng);
        for (int t = 0; t < params.types; ++t) {
          const int soldiers = static_cast<int>(rng.next_int(3, 15));
          values[side].push_back(shared);
          allocs[side].push_back(compositions(soldiers, params.items));
        }
      } else {
        const auto base_allocs = compositions(params.soldiers, params.items);
        for (int t = 0; t < params.types; ++t) {
          values[side].push_back(sample_unit_vector(params.items, rng));
          allocs[side].push_back(base_allocs);
        }
      }
      for (int t = 0; t < params.types; ++t) {
        std::vector<std::string> labels;
        for (const auto& a : allocs[side][t]) labels.push_back(vec_label(a));
        game.action_labels[side].push_back(std::move(labels));
      }
    }
    game.utility = [values, allocs](int tr, int tc, int ar, int ac) {
      return blotto_utility(values[0][tr], values[1][tc], allocs[0][tr][ar],
                            allocs[1][tc][ac]);
    };
    desc << "blotto hills=" << params.items << " types=" << params.blotto_types;
  } else if (params.game == "adjwinner") {
    std::array<std::vector<std::vector<Rational>>, 2> values;
    const auto point_vectors = compositions(params.points, params.items);
    std::vector<std::string> labels;
    for (const auto& p : point_vectors) labels.push_back(vec_label(p));
    for (int side = 0; side < 2; ++side) {
      Rng rng = Rng::stream(seed, side);
      for (int t = 0; t < params.types; ++t) {
        values[side].push_back(sample_normalized_vector(params.items, rng));
        game.action_labels[side].push_back(labels);
      }
    }
    const AwCurrency currency = params.aw_currency;
    game.utility = [values, point_vectors, currency](int tr, int tc, int ar, int ac) {
      return adjusted_winner_utility(values[0][tr], values[1][tc], point_vectors[ar],
                                     point_vectors[ac], currency);
    };
    desc << "adjwinner items=" << params.items << " points=" << params.points;
  } else {
    throw std::invalid_argument("unknown bayesian game class '" + params.game + "'");
  }

  game.description = desc.str();
  return game;
}

PolymatrixGame<Rational> to_polymatrix(const BayesianTwoPlayerGame& b) {
  const int tr = b.type_count(0), tc = b.type_count(1);
  std::vector<int> actions(tr + tc);
  for (int t = 0; t < tr; ++t) actions[t] = b.action_count(0, t);
  for (int t = 0; t < tc; ++t) actions[tr + t] = b.action_count(1, t);

  // Uniform independent prior: the edge between row type t and column type
  // t' weighs the conditional game by the opponent type's probability.
  const Rational p_col(1, tc), p_row(1, tr);
  std::vector<EdgePayoffs<Rational>> edges;
  edges.reserve(static_cast<size_t>(tr) * tc);
  for (int t = 0; t < tr; ++t) {
    for (int u = 0; u < tc; ++u) {
      EdgePayoffs<Rational> e;
      e.u = t;
      e.v = tr + u;
      e.to_u = Matrix<Rational>(actions[t], actions[tr + u]);
      e.to_v = Matrix<Rational>(actions[tr + u], actions[t]);
      for (int a = 0; a < actions[t]; ++a) {
        for (int c = 0; c < actions[tr + u]; ++c) {
          const auto [ur, uc] = b.utility(t, u, a, c);
          e.to_u(a, c) = ur * p_col;
          e.to_v(c, a) = uc * p_row;
        }
      }
      edges.push_back(std::move(e));
    }
  }
  return PolymatrixGame<Rational>(std::move(actions), std::move(edges));
}

std::string bayesian_meta_text(const BayesianTwoPlayerGame& b) {
  std::ostringstream out;
  out << "bayesian 1\n";
  out << "# " << b.description << "\n";
  for (int side = 0; side < 2; ++side) {
    out << "side " << side << " types " << b.type_count(side) << "\n";
    for (int t = 0; t < b.type_count(side); ++t) {
      out << "type " << t << " prior 1/" << b.type_count(side) << " actions";
      for (const std::string& a : b.action_labels[side][t]) out << " " << a;
      out << "\n";
    }
  }
  return out.str();
}

}  // namespace polyeq
