#pragma once

// Brute-force reference evaluators. They share nothing with the engines beyond
// the data types: no interval sets, no Until algorithm, just the quantifier
// clauses checked over a finite grid of cells.

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mtlsem/error.hpp"
#include "mtlsem/formula.hpp"
#include "mtlsem/timed.hpp"

namespace mtlsem::oracle {

struct CriticalPoints {
  std::vector<Rational> points;     // T_d, sorted
  std::vector<Rational> midpoints;  // one per consecutive pair of points

  /// points and midpoints merged in ascending order
  std::vector<Rational> all() const {
    std::vector<Rational> v;
    for (std::size_t i = 0; i < points.size(); ++i) {
      v.push_back(points[i]);
      if (i < midpoints.size()) v.push_back(midpoints[i]);
    }
    return v;
  }
};

/// Closure of `seeds` under +/- every finite bound of f, `temporal_depth(f)` times, within [lo, hi].
inline CriticalPoints critical_points(const std::set<Rational>& seeds, const Formula& f, const Rational& lo,
                                      const Rational& hi) {
  std::set<Rational> t = seeds;
  std::set<Rational> bounds = interval_bounds(f);
  bounds.erase(Rational(0));
  for (std::size_t d = temporal_depth(f); d > 0; --d) {
    std::set<Rational> next = t;
    for (const auto& x : t)
      for (const auto& b : bounds) {
        Rational up = x + b, dn = x - b;
        if (!(hi < up)) next.insert(up);
        if (!(dn < lo)) next.insert(dn);
      }
    if (next.size() == t.size()) break;
    t = std::move(next);
  }
  CriticalPoints cp{{t.begin(), t.end()}, {}};
  for (std::size_t i = 0; i + 1 < cp.points.size(); ++i)
    cp.midpoints.push_back((cp.points[i] + cp.points[i + 1]) * Rational(1, 2));
  return cp;
}

inline CriticalPoints critical_points(const TimedWord& w, const Formula& f) {
  auto ts = w.timestamps();
  return critical_points(std::set<Rational>(ts.begin(), ts.end()), f, Rational(0), w.duration());
}

inline CriticalPoints critical_points(const CompactTimedWord& cw, const Formula& f) {
  std::set<Rational> ts;
  for (const auto& b : cw.blocks()) ts.insert(b.time);
  return critical_points(ts, f, Rational(0), cw.duration());
}

inline CriticalPoints critical_points(const TimedStateSequence& k, const Formula& f) {
  std::set<Rational> ts;
  for (const auto& s : k.steps()) {
    ts.insert(s.interval.lower());
    ts.insert(*s.interval.hi().value);
  }
  return critical_points(ts, f, k.start(), k.duration());
}

namespace detail {

// Does the open interval (x, y) meet I?
inline bool open_meets(const Rational& x, const Rational& y, const Interval& iv) {
  const Rational& lo = iv.lower();
  if (iv.is_punctual()) return x < lo && lo < y;
  Rational a = std::max(x, lo);
  if (!iv.bounded()) return a < y;
  Rational b = std::min(y, *iv.hi().value);
  return a < b;
}

// The timeline cut into cells: even index 2i is the point g_i, odd index 2i+1
// is the open gap (g_i, g_{i+1}). Each cell carries a list of positions (one
// for dense-time models, a block's length for mixed ones).
class CellGrid {
 public:
  explicit CellGrid(std::vector<Rational> g) : g_(std::move(g)) {}

  std::size_t count() const { return 2 * g_.size() - 1; }
  bool is_point(std::size_t c) const { return c % 2 == 0; }
  Rational rep(std::size_t c) const {
    return is_point(c) ? g_[c / 2] : (g_[c / 2] + g_[c / 2 + 1]) * Rational(1, 2);
  }
  const Rational& left(std::size_t c) const { return g_[c / 2]; }
  const Rational& right(std::size_t c) const { return g_[c / 2 + 1]; }

  /// Cell holding t, which must lie in [g_0, g_last].
  std::size_t cell_of(const Rational& t) const {
    auto it = std::lower_bound(g_.begin(), g_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - g_.begin());
    if (it != g_.end() && *it == t) return 2 * i;
    return 2 * i - 1;
  }

 private:
  std::vector<Rational> g_;
};

// Quantifier evaluation over a cell grid with per-cell positions.
// `letters(c)` lists the positions of a cell (empty string = no action).
class LexOracle {
 public:
  using Letters = std::function<std::vector<Symbol>(const Rational&)>;

  LexOracle(CellGrid grid, Letters letters, bool mixed) : grid_(std::move(grid)), letters_(std::move(letters)), mixed_(mixed) {
    for (std::size_t c = 0; c < grid_.count(); ++c) {
      auto l = letters_(grid_.rep(c));
      width_.push_back(mixed_ ? std::max<std::size_t>(1, l.size()) : 1);
      content_.push_back(std::move(l));
    }
  }

  const CellGrid& grid() const { return grid_; }
  std::size_t width(std::size_t c) const { return width_[c]; }

  /// Truth at the representative of cell c, position j.
  bool at_cell(const Formula& f, std::size_t c, std::size_t j) {
    auto key = std::make_tuple(f.id(), c, j);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool v = eval(f, c, grid_.rep(c), j);
    memo_[key] = v;
    return v;
  }

  /// Truth at an arbitrary time t inside cell c (t need not be the representative).
  bool at_time(const Formula& f, const Rational& t, std::size_t j) {
    std::size_t c = grid_.cell_of(t);
    if (t == grid_.rep(c)) return at_cell(f, c, j);
    return eval(f, c, t, j);
  }

 private:
  bool eval(const Formula& f, std::size_t c, const Rational& t, std::size_t j) {
    switch (f.kind()) {
      case Kind::True: return true;
      case Kind::Beta: return j == 0;
      case Kind::Atom: {
        const auto& l = content_[c];
        if (mixed_) return j < l.size() && l[j] == f.atom();
        return std::find(l.begin(), l.end(), f.atom()) != l.end();
      }
      case Kind::Not: return !sub(f.left(), c, t, j);
      case Kind::And: return sub(f.left(), c, t, j) && sub(f.right(), c, t, j);
      case Kind::Until: return until(f, c, t, j);
    }
    return false;
  }

  // Children at the source time: representatives use the memo, other times recurse.
  bool sub(const Formula& f, std::size_t c, const Rational& t, std::size_t j) {
    return t == grid_.rep(c) ? at_cell(f, c, j) : eval(f, c, t, j);
  }

  bool until(const Formula& f, std::size_t c, const Rational& t, std::size_t j) {
    const Formula a = f.left(), b = f.right();
    const Interval& iv = f.interval();
    const bool point = grid_.is_point(c);

    // witnesses inside the source cell
    if (point) {
      for (std::size_t x = j + 1; x < width(c); ++x) {
        if (iv.contains(Rational(0)) && at_cell(b, c, x)) return true;
        if (!at_cell(a, c, x)) break;
      }
    } else {
      // t' in (t, right): needs a and b on the cell and a matching distance
      if (at_cell(a, c, 0) && at_cell(b, c, 0) && open_meets(Rational(0), grid_.right(c) - t, iv)) return true;
    }
    // everything strictly after (t, j) inside the source cell must satisfy a
    if (point) {
      for (std::size_t x = j + 1; x < width(c); ++x)
        if (!at_cell(a, c, x)) return false;
    } else if (!at_cell(a, c, 0)) {
      return false;
    }
    for (std::size_t d = c + 1; d < grid_.count(); ++d) {
      if (grid_.is_point(d)) {
        const Rational& g = grid_.left(d);
        bool timing = iv.contains(g - t);
        for (std::size_t x = 0; x < width(d); ++x) {
          if (timing && at_cell(b, d, x)) return true;
          if (!at_cell(a, d, x)) return false;
        }
      } else {
        if (!at_cell(a, d, 0)) return false;
        if (at_cell(b, d, 0) && open_meets(grid_.left(d) - t, grid_.right(d) - t, iv)) return true;
      }
    }
    return false;
  }

  CellGrid grid_;
  Letters letters_;
  bool mixed_;
  std::vector<std::size_t> width_;
  std::vector<std::vector<Symbol>> content_;
  std::map<std::tuple<const Node*, std::size_t, std::size_t>, bool> memo_;
};

}  // namespace detail

/// Reference itw evaluator; t must lie in [0, mu].
inline bool oracle_eval_itw(const TimedWord& w, const Rational& t, const Formula& f) {
  if (uses_beta(f)) throw Error(ErrorKind::BetaNotInItw, "beta has no interval-based meaning");
  if (t.is_negative() || w.duration() < t) throw Error(ErrorKind::OutOfDomain, "time outside the word");
  auto cp = critical_points(w, f);
  detail::LexOracle o(detail::CellGrid(cp.points),
                      [&w](const Rational& x) {
                        std::vector<Symbol> l;
                        for (const auto& e : w.events())
                          if (e.time == x) l.push_back(e.action);
                        return l;
                      },
                      false);
  return o.at_time(f, t, 0);
}

/// Reference its evaluator; t must lie in the span of k.
inline bool oracle_eval_its(const TimedStateSequence& k, const Rational& t, const Formula& f) {
  if (uses_beta(f)) throw Error(ErrorKind::BetaNotInItw, "beta has no interval-based meaning");
  if (t < k.start() || k.duration() < t) throw Error(ErrorKind::OutOfDomain, "time outside the sequence");
  auto cp = critical_points(k, f);
  detail::LexOracle o(detail::CellGrid(cp.points),
                      [&k](const Rational& x) {
                        const auto& s = k.at(x);
                        return std::vector<Symbol>(s.begin(), s.end());
                      },
                      false);
  return o.at_time(f, t, 0);
}

/// Reference mixed evaluator at (t, j).
inline bool oracle_eval_mx(const CompactTimedWord& cw, const Rational& t, std::size_t j, const Formula& f) {
  if (t.is_negative() || cw.duration() < t) throw Error(ErrorKind::OutOfDomain, "time outside the word");
  std::size_t width = 1;
  for (const auto& b : cw.blocks())
    if (b.time == t) width = b.actions.size();
  if (j >= width) throw Error(ErrorKind::PositionOutOfRange, "position beyond the block", j);
  auto cp = critical_points(cw, f);
  detail::LexOracle o(detail::CellGrid(cp.points),
                      [&cw](const Rational& x) {
                        for (const auto& b : cw.blocks())
                          if (b.time == x) return b.actions;
                        return std::vector<Symbol>{};
                      },
                      true);
  return o.at_time(f, t, j);
}

/// Reference pointwise evaluator: the clauses verbatim, memoized per (subformula, position).
inline bool oracle_eval_pw(const TimedWord& w, std::size_t i, const Formula& f) {
  if (uses_beta(f)) throw Error(ErrorKind::BetaNotInPw, "beta has no pointwise meaning");
  if (i >= w.size()) throw Error(ErrorKind::PositionOutOfRange, "position beyond the word", i);
  std::map<std::pair<const Node*, std::size_t>, bool> memo;
  std::function<bool(const Formula&, std::size_t)> ev = [&](const Formula& g, std::size_t p) -> bool {
    auto key = std::make_pair(g.id(), p);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool v = false;
    switch (g.kind()) {
      case Kind::True: v = true; break;
      case Kind::Beta: v = false; break;
      case Kind::Atom: v = w.action(p) == g.atom(); break;
      case Kind::Not: v = !ev(g.left(), p); break;
      case Kind::And: v = ev(g.left(), p) && ev(g.right(), p); break;
      case Kind::Until:
        for (std::size_t q = p + 1; q < w.size() && !v; ++q) {
          if (!g.interval().contains(w.time(q) - w.time(p)) || !ev(g.right(), q)) continue;
          bool between = true;
          for (std::size_t k = p + 1; k < q && between; ++k) between = ev(g.left(), k);
          v = between;
        }
        break;
    }
    memo[key] = v;
    return v;
  };
  return ev(f, i);
}

/// Reference pointwise verdict on a lasso. Position i >= |prefix| behaves like its
/// slot in the first period (the suffixes differ by a uniform time shift), and
/// every Until search runs a fixed number of periods past its largest bound.
inline bool oracle_eval_pw_lasso(const Lasso& l, const Formula& f, std::size_t pos = 0) {
  if (uses_beta(f)) throw Error(ErrorKind::BetaNotInPw, "beta has no pointwise meaning");
  l.validate();
  const std::size_t n = l.prefix.size(), p = l.period_actions.size();
  Rational reach(0);
  for (const auto& b : interval_bounds(f)) reach = std::max(reach, b);
  std::size_t periods = 4;
  for (Rational r(0); !(reach < r); r += l.period_duration) ++periods;
  const std::size_t limit = n + p * periods;

  auto canon = [&](std::size_t i) { return i < n ? i : n + (i - n) % p; };
  auto action = [&](std::size_t i) -> const Symbol& {
    return i < n ? l.prefix.action(i) : l.period_actions[(i - n) % p];
  };
  auto time = [&](std::size_t i) { return i < n ? l.prefix.time(i) : l.event_time((i - n) / p, (i - n) % p); };

  std::map<std::pair<const Node*, std::size_t>, bool> memo;
  std::function<bool(const Formula&, std::size_t)> ev = [&](const Formula& g, std::size_t i) -> bool {
    i = canon(i);
    auto key = std::make_pair(g.id(), i);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    bool v = false;
    switch (g.kind()) {
      case Kind::True: v = true; break;
      case Kind::Beta: v = false; break;
      case Kind::Atom: v = action(i) == g.atom(); break;
      case Kind::Not: v = !ev(g.left(), i); break;
      case Kind::And: v = ev(g.left(), i) && ev(g.right(), i); break;
      case Kind::Until:
        for (std::size_t j = i + 1; j <= i + limit; ++j) {
          if (g.interval().contains(time(j) - time(i)) && ev(g.right(), j)) {
            v = true;
            break;
          }
          if (!ev(g.left(), j)) break;
        }
        break;
    }
    memo[key] = v;
    return v;
  };
  return ev(f, pos);
}

// ---- generators ----

struct WordShape {
  std::size_t max_len = 8;
  std::int64_t max_den = 2;
  /// Largest gap between consecutive timestamps, in units of 1/max_den.
  std::int64_t max_step = 4;
  /// Chance that an event shares the previous timestamp.
  double simultaneous = 0.35;
};

struct FormulaShape {
  std::size_t max_depth = 4;
  bool bounded_only = false;
  /// Bounds are multiples of 1/den up to max_bound.
  std::int64_t den = 2;
  std::int64_t max_bound = 4;
};

/// Deterministic random structures (std::mt19937_64).
class Generator {
 public:
  explicit Generator(std::uint64_t seed, Alphabet sigma = Alphabet(std::vector<Symbol>{"a", "b", "c"}))
      : rng_(seed), sigma_(std::move(sigma)) {}

  const Alphabet& alphabet() const { return sigma_; }
  std::mt19937_64& rng() { return rng_; }

  std::size_t uniform(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }
  bool chance(double p) { return std::bernoulli_distribution(p)(rng_); }
  const Symbol& letter() { return sigma_.symbols()[uniform(0, sigma_.size() - 1)]; }

  TimedWord word(const WordShape& s = {}) {
    std::size_t n = uniform(1, s.max_len);
    std::vector<Event> ev;
    Rational t(0);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0 && !chance(s.simultaneous))
        t += Rational(static_cast<std::int64_t>(uniform(1, static_cast<std::size_t>(s.max_step))), s.max_den);
      ev.push_back({letter(), t});
    }
    return TimedWord::validate(std::move(ev));
  }

  /// Rejection-samples a word without a repeated letter at one timestamp.
  TimedWord stutter_free_word(const WordShape& s = {}) {
    for (;;) {
      TimedWord w = word(s);
      if (w.is_stutter_free()) return w;
    }
  }

  Interval interval(const FormulaShape& s) {
    auto pick = [&](std::int64_t lo_units) {
      return lo_units + static_cast<std::int64_t>(uniform(0, static_cast<std::size_t>(s.max_bound * s.den / 2)));
    };
    std::int64_t lo = static_cast<std::int64_t>(uniform(0, static_cast<std::size_t>(s.max_bound * s.den / 2)));
    if (chance(0.35)) lo = 0;
    if (!s.bounded_only && chance(0.2)) {
      Rational l(lo, s.den);
      return Interval(Bound{l, chance(0.7)}, Bound::infinity());
    }
    std::int64_t hi = pick(lo);
    Rational l(lo, s.den), u(hi, s.den);
    if (lo == hi) return Interval::punctual(l);
    return Interval(Bound{l, chance(0.6)}, Bound{u, chance(0.6)});
  }

  Formula formula(const FormulaShape& s = {}, bool allow_beta = false) { return formula_at(s, s.max_depth, allow_beta); }

  /// Action-based sequence: punctual non-empty letter sets separated by empty open gaps.
  TimedStateSequence ka(std::size_t max_blocks = 5, std::int64_t max_den = 2) {
    std::size_t n = uniform(1, max_blocks);
    std::vector<Step> steps;
    Rational t(0);
    for (std::size_t i = 0; i < n; ++i) {
      if (i > 0) {
        Rational next = t + Rational(static_cast<std::int64_t>(uniform(1, 4)), max_den);
        steps.push_back({{}, Interval::open(t, next)});
        t = next;
      }
      std::set<Symbol> props;
      while (props.empty())
        for (const auto& a : sigma_.symbols())
          if (chance(0.4)) props.insert(a);
      steps.push_back({std::move(props), Interval::punctual(t)});
    }
    return TimedStateSequence::validate(std::move(steps));
  }

  /// A lasso whose first period event is strictly after the prefix.
  Lasso lasso(const WordShape& s = {}) {
    Lasso l;
    l.prefix = word(s);
    const std::int64_t q = s.max_den * 4;  // offsets live on a 1/q grid
    const std::size_t d_units = 4 * uniform(1, 4);
    l.period_duration = Rational(static_cast<std::int64_t>(d_units), q);
    const std::size_t first = uniform(1, d_units);
    const std::size_t spread = std::min(d_units - first, d_units - 1);
    std::vector<std::size_t> extra;
    for (std::size_t i = uniform(1, 3); i > 0; --i) extra.push_back(uniform(0, spread));
    std::sort(extra.begin(), extra.end());
    for (std::size_t e : extra) {
      l.period_actions.push_back(letter());
      l.period_offsets.push_back(Rational(static_cast<std::int64_t>(first + e), q));
    }
    l.validate();
    return l;
  }

 private:
  Formula formula_at(const FormulaShape& s, std::size_t depth, bool allow_beta) {
    if (depth == 0 || chance(0.2)) {
      if (allow_beta && chance(0.15)) return beta();
      if (chance(0.08)) return top();
      return atom(letter());
    }
    switch (uniform(0, 8)) {
      case 0:
      case 1: return neg(formula_at(s, depth - 1, allow_beta));
      case 2: return conj(formula_at(s, depth - 1, allow_beta), formula_at(s, depth - 1, allow_beta));
      case 3: return disj(formula_at(s, depth - 1, allow_beta), formula_at(s, depth - 1, allow_beta));
      case 4:
      case 5: {
        Formula l = formula_at(s, depth - 1, allow_beta);
        Interval i = interval(s);
        return until(l, i, formula_at(s, depth - 1, allow_beta));
      }
      case 6: {
        Interval i = interval(s);
        return eventually(i, formula_at(s, depth - 1, allow_beta));
      }
      case 7: {
        Interval i = interval(s);
        return globally(i, formula_at(s, depth - 1, allow_beta));
      }
      default: {
        Interval i = interval(s);
        return next(i, formula_at(s, depth - 1, allow_beta), sigma_);
      }
    }
  }

  std::mt19937_64 rng_;
  Alphabet sigma_;
};

inline TimedWord gen_word(std::uint64_t seed, std::size_t max_len, std::int64_t max_den) {
  WordShape s;
  s.max_len = max_len;
  s.max_den = max_den;
  return Generator(seed).word(s);
}

inline Formula gen_formula(std::uint64_t seed, const Alphabet& sigma, std::size_t max_depth, bool bounded_only) {
  FormulaShape s;
  s.max_depth = max_depth;
  s.bounded_only = bounded_only;
  return Generator(seed, sigma).formula(s);
}

inline TimedStateSequence gen_ka(std::uint64_t seed) { return Generator(seed).ka(); }

}  // namespace mtlsem::oracle
