#include "polyeq/game.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "polyeq/lp.hpp"

namespace polyeq {

Rational parse_rational(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  const std::string s(text);
  const auto bad = [&] { return std::invalid_argument("malformed number '" + s + "'"); };

  const size_t slash = s.find('/');
  if (slash != std::string::npos) {
    const std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (num.empty() || den.empty()) throw bad();
    try {
      Rational r{BigInt(num), BigInt(den)};
      if (r.get_den() == 0) throw bad();
      r.canonicalize();
      return r;
    } catch (const std::invalid_argument&) {
      throw bad();
    }
  }

  size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  std::string digits;
  long frac_digits = -1;
  for (; pos < s.size(); ++pos) {
    if (s[pos] == '.') {
      if (frac_digits >= 0) throw bad();
      frac_digits = 0;
    } else if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
      digits += s[pos];
      if (frac_digits >= 0) ++frac_digits;
    } else {
      throw bad();
    }
  }
  if (digits.empty()) throw bad();
  BigInt num(digits);
  BigInt den(1);
  for (long k = 0; k < std::max(frac_digits, 0L); ++k) den *= 10;
  Rational r(negative ? BigInt(-num) : num, den);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------------------
// Text format

std::string serialize(const RationalGame& g, const std::string& comment) {
  std::ostringstream out;
  if (!comment.empty()) out << "# " << comment << "\n";
  out << "polymatrix 1\n";
  out << "players " << g.player_count() << "\n";
  out << "actions";
  for (int m : g.action_counts()) out << " " << m;
  out << "\n";
  out << "edges " << g.edges().size() << "\n";
  for (const EdgePayoffs<Rational>& e : g.edges()) {
    out << "edge " << e.u << " " << e.v << "\n";
    for (int r = 0; r < e.to_u.rows(); ++r) {
      for (int c = 0; c < e.to_u.cols(); ++c)
        out << (c ? " " : "") << rational_to_string(e.to_u(r, c));
      out << "\n";
    }
    for (int r = 0; r < e.to_v.rows(); ++r) {
      for (int c = 0; c < e.to_v.cols(); ++c)
        out << (c ? " " : "") << rational_to_string(e.to_v(r, c));
      out << "\n";
    }
  }
  return out.str();
}

namespace {

class LineReader {
 public:
  explicit LineReader(const std::string& text) : in_(text) {}

  // Next non-empty, non-comment line; returns false at end of input.
  bool next(std::string& line) {
    while (std::getline(in_, line)) {
      ++line_no_;
      const size_t start = line.find_first_not_of(" \t\r");
      if (start == std::string::npos) continue;
      if (line[start] == '#') continue;
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw std::runtime_error("parse error at line " + std::to_string(line_no_) +
                             ": " + what);
  }

  int line_no() const { return line_no_; }

 private:
  std::istringstream in_;
  int line_no_ = 0;
};

std::vector<std::string> tokens_of(const std::string& line) {
  std::istringstream t(line);
  std::vector<std::string> toks;
  std::string tok;
  while (t >> tok) toks.push_back(tok);
  return toks;
}

long parse_count(LineReader& rd, const std::string& tok, const char* what) {
  try {
    size_t used = 0;
    const long v = std::stol(tok, &used);
    if (used != tok.size()) rd.fail(std::string("malformed ") + what);
    return v;
  } catch (const std::exception&) {
    rd.fail(std::string("malformed ") + what);
  }
}

Matrix<Rational> read_matrix(LineReader& rd, int rows, int cols) {
  Matrix<Rational> m(rows, cols);
  std::string line;
  for (int r = 0; r < rows; ++r) {
    if (!rd.next(line)) rd.fail("unexpected end of file inside payoff matrix");
    const std::vector<std::string> toks = tokens_of(line);
    if (static_cast<int>(toks.size()) != cols)
      rd.fail("expected " + std::to_string(cols) + " payoffs, found " +
              std::to_string(toks.size()));
    for (int c = 0; c < cols; ++c) {
      try {
        m(r, c) = parse_rational(toks[c]);
      } catch (const std::invalid_argument& e) {
        rd.fail(e.what());
      }
    }
  }
  return m;
}

}  // namespace

RationalGame deserialize(const std::string& text) {
  LineReader rd(text);
  std::string line;

  if (!rd.next(line) || tokens_of(line) != std::vector<std::string>{"polymatrix", "1"})
    rd.fail("expected header 'polymatrix 1'");

  if (!rd.next(line)) rd.fail("missing 'players' line");
  auto toks = tokens_of(line);
  if (toks.size() != 2 || toks[0] != "players") rd.fail("expected 'players <n>'");
  const long n = parse_count(rd, toks[1], "player count");
  if (n < 1) rd.fail("player count must be >= 1");

  if (!rd.next(line)) rd.fail("missing 'actions' line");
  toks = tokens_of(line);
  if (toks.empty() || toks[0] != "actions" || static_cast<long>(toks.size()) != n + 1)
    rd.fail("expected 'actions' with one count per player");
  std::vector<int> actions(n);
  for (long i = 0; i < n; ++i) {
    actions[i] = static_cast<int>(parse_count(rd, toks[i + 1], "action count"));
    if (actions[i] < 1) rd.fail("action counts must be >= 1");
  }

  if (!rd.next(line)) rd.fail("missing 'edges' line");
  toks = tokens_of(line);
  if (toks.size() != 2 || toks[0] != "edges") rd.fail("expected 'edges <count>'");
  const long edge_count = parse_count(rd, toks[1], "edge count");
  if (edge_count < 0) rd.fail("edge count must be >= 0");

  std::vector<EdgePayoffs<Rational>> edges;
  edges.reserve(edge_count);
  for (long e = 0; e < edge_count; ++e) {
    if (!rd.next(line)) rd.fail("expected 'edge <u> <v>'");
    toks = tokens_of(line);
    if (toks.size() != 3 || toks[0] != "edge") rd.fail("expected 'edge <u> <v>'");
    EdgePayoffs<Rational> eg;
    eg.u = static_cast<int>(parse_count(rd, toks[1], "edge endpoint"));
    eg.v = static_cast<int>(parse_count(rd, toks[2], "edge endpoint"));
    if (eg.u < 0 || eg.v >= n || eg.u >= eg.v) rd.fail("edge endpoints need 0 <= u < v < n");
    eg.to_u = read_matrix(rd, actions[eg.u], actions[eg.v]);
    eg.to_v = read_matrix(rd, actions[eg.v], actions[eg.u]);
    edges.push_back(std::move(eg));
  }
  if (rd.next(line)) rd.fail("trailing content after last edge");

  try {
    return RationalGame(std::move(actions), std::move(edges));
  } catch (const std::invalid_argument& e) {
    rd.fail(e.what());
  }
}

RationalGame load_game(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize(buf.str());
}

void save_game(const RationalGame& g, const std::string& path, const std::string& comment) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << serialize(g, comment);
  if (!out) throw std::runtime_error("write failed: " + path);
}

// ---------------------------------------------------------------------------
// Support-enumeration oracle

namespace {

// Feasibility program for one support profile: probabilities on the
// support, exact simplex sums, supported actions tie at the player's value
// v_i, off-support actions do not exceed it. Any feasible point is an
// exact equilibrium. Payoffs are linear in the whole profile, so this is
// one LP per support even with many players.
bool support_feasible(const RationalGame& g, const std::vector<unsigned>& support,
                      MixedProfile<Rational>* out) {
  const int n = g.player_count();
  // Variables: one per supported action, then v_i split as v+ - v-.
  std::vector<std::vector<int>> var_of(n);
  int nv = 0;
  for (int i = 0; i < n; ++i) {
    var_of[i].assign(g.action_count(i), -1);
    for (int s = 0; s < g.action_count(i); ++s)
      if (support[i] >> s & 1u) var_of[i][s] = nv++;
  }
  const int vplus0 = nv;
  const int total = nv + 2 * n;

  LinearProgram<Rational> lp(total);
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> row(total, Rational(0));
    for (int s = 0; s < g.action_count(i); ++s)
      if (var_of[i][s] >= 0) row[var_of[i][s]] = 1;
    lp.add_eq(std::move(row), Rational(1));
  }
  for (int i = 0; i < n; ++i) {
    for (int s = 0; s < g.action_count(i); ++s) {
      std::vector<Rational> row(total, Rational(0));
      for (const auto& [e, i_is_u] : g.incident(i)) {
        const EdgePayoffs<Rational>& eg = g.edges()[e];
        const Matrix<Rational>& a = i_is_u ? eg.to_u : eg.to_v;
        const int j = i_is_u ? eg.v : eg.u;
        for (int t = 0; t < g.action_count(j); ++t)
          if (var_of[j][t] >= 0) row[var_of[j][t]] += a(s, t);
      }
      row[vplus0 + 2 * i] -= 1;
      row[vplus0 + 2 * i + 1] += 1;
      if (var_of[i][s] >= 0) {
        lp.add_eq(row, Rational(0));  // p_i(s) = v_i
      } else {
        lp.add_le(row, Rational(0));  // p_i(s) <= v_i
      }
    }
  }

  const LpResult<Rational> res = solve_lp(lp);
  if (res.status != LpStatus::Optimal) return false;
  out->assign(n, {});
  for (int i = 0; i < n; ++i) {
    (*out)[i].assign(g.action_count(i), Rational(0));
    for (int s = 0; s < g.action_count(i); ++s)
      if (var_of[i][s] >= 0) (*out)[i][s] = res.point[var_of[i][s]];
  }
  return true;
}

}  // namespace

MixedProfile<Rational> enumerate_equilibrium_small(const RationalGame& g) {
  const int n = g.player_count();
  double combos = 1.0;
  for (int i = 0; i < n; ++i) combos *= std::pow(2.0, g.action_count(i));
  if (combos > double(1 << 20))
    throw std::invalid_argument("game too large for support enumeration");

  // Odometer over nonempty supports, last player fastest; pure singleton
  // supports come first.
  std::vector<unsigned> support(n, 1u);
  for (;;) {
    MixedProfile<Rational> x;
    if (support_feasible(g, support, &x)) {
      if (epsilon(g, x) != 0)
        throw std::logic_error("support solution is not an equilibrium");
      return x;
    }
    int i = n - 1;
    while (i >= 0) {
      if (++support[i] < (1u << g.action_count(i))) break;
      support[i] = 1u;
      --i;
    }
    if (i < 0) break;
  }
  throw std::logic_error("no equilibrium found; enumeration is buggy");
}

}  // namespace polyeq
