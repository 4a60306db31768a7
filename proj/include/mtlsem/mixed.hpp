#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "mtlsem/encodings.hpp"
#include "mtlsem/error.hpp"
#include "mtlsem/formula.hpp"
#include "mtlsem/interval.hpp"
#include "mtlsem/interval_eval.hpp"
#include "mtlsem/timed.hpp"

namespace mtlsem {

/// Internal "no action" letter seen at every gap time. Not an identifier, so
/// no formula can mention it.
inline const Symbol kNoAction = "⊢";

/// The action sequence at time t: the block stamped t, or the one-letter no-action sequence.
inline std::vector<Symbol> compact_at(const CompactTimedWord& cw, const Rational& t) {
  if (auto k = ind(cw, t)) return cw[*k].actions;
  return {kNoAction};
}

/// Satisfaction set of the mixed semantics: gap times (position 0 of the
/// no-action sequence) plus (block, position) points.
class MixedSet {
 public:
  MixedSet() = default;
  MixedSet(IntervalSet gap, std::vector<std::vector<bool>> points) : gap_(std::move(gap)), points_(std::move(points)) {}

  const IntervalSet& gap() const noexcept { return gap_; }
  const std::vector<std::vector<bool>>& grid() const noexcept { return points_; }

  bool has_point(std::size_t k, std::size_t j) const { return points_.at(k).at(j); }

  std::vector<std::pair<std::size_t, std::size_t>> points() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t k = 0; k < points_.size(); ++k)
      for (std::size_t j = 0; j < points_[k].size(); ++j)
        if (points_[k][j]) out.emplace_back(k, j);
    return out;
  }

  std::string str() const {
    std::string s = "gap=" + gap_.str() + " points={";
    bool first = true;
    for (auto [k, j] : points()) {
      s += (first ? "" : ",") + std::string("(") + std::to_string(k) + "," + std::to_string(j) + ")";
      first = false;
    }
    return s + "}";
  }

  friend bool operator==(const MixedSet&, const MixedSet&) = default;

 private:
  IntervalSet gap_;
  std::vector<std::vector<bool>> points_;
};

namespace detail {

// The (t, j) domain of a compact word: gap times plus the block grid.
struct MixedDomain {
  explicit MixedDomain(const CompactTimedWord& cw) : word(&cw) {
    std::vector<Rational> ts;
    for (const auto& b : cw.blocks()) ts.push_back(b.time);
    span = Interval::closed(0, cw.duration());
    gap = IntervalSet::points(ts).complement(span);
  }

  std::vector<std::vector<bool>> grid(bool value) const {
    std::vector<std::vector<bool>> g;
    for (const auto& b : word->blocks()) g.emplace_back(b.actions.size(), value);
    return g;
  }

  const CompactTimedWord* word;
  Interval span = Interval::punctual(0);
  IntervalSet gap;
};

inline MixedSet mixed_not(const MixedSet& a, const MixedDomain& d) {
  auto g = a.grid();
  for (auto& row : g) row.flip();
  return MixedSet(a.gap().complement(d.span) & d.gap, std::move(g));
}

inline MixedSet mixed_and(const MixedSet& a, const MixedSet& b) {
  auto g = a.grid();
  for (std::size_t k = 0; k < g.size(); ++k)
    for (std::size_t j = 0; j < g[k].size(); ++j) g[k][j] = g[k][j] && b.grid()[k][j];
  return MixedSet(a.gap() & b.gap(), std::move(g));
}

inline MixedSet mixed_or(const MixedSet& a, const MixedSet& b) {
  auto g = a.grid();
  for (std::size_t k = 0; k < g.size(); ++k)
    for (std::size_t j = 0; j < g[k].size(); ++j) g[k][j] = g[k][j] || b.grid()[k][j];
  return MixedSet(a.gap() | b.gap(), std::move(g));
}

// Times all of whose (t, j) points satisfy a.
inline IntervalSet whole_time(const MixedSet& a, const MixedDomain& d) {
  std::vector<Interval> parts(a.gap().parts());
  for (std::size_t k = 0; k < a.grid().size(); ++k) {
    const auto& row = a.grid()[k];
    if (std::all_of(row.begin(), row.end(), [](bool x) { return x; }))
      parts.push_back(Interval::punctual(d.word->time(k)));
  }
  return IntervalSet(std::move(parts));
}

// a holds on positions j+1 .. end of block k
inline bool tail_holds(const MixedSet& a, std::size_t k, std::size_t j) {
  const auto& row = a.grid()[k];
  for (std::size_t x = j + 1; x < row.size(); ++x)
    if (!row[x]) return false;
  return true;
}

// Lexicographic strict Until. For a witness at a later time t', the points
// strictly between are: the rest of t's block, every point at times in (t,t'),
// and the positions of t''s block before the witness. The time-level part is a
// dense Until over "whole time satisfies a" and "some position closes the
// block-internal run". A witness at the same time needs 0 in I.
inline MixedSet mixed_until(const MixedSet& a, const MixedSet& b, const Interval& iv, const MixedDomain& d,
                            IntervalSet* time_level = nullptr) {
  const CompactTimedWord& cw = *d.word;
  IntervalSet whole = whole_time(a, d);
  std::vector<Interval> hits(b.gap().parts());
  for (std::size_t k = 0; k < cw.size(); ++k) {
    const auto& ra = a.grid()[k];
    const auto& rb = b.grid()[k];
    for (std::size_t j = 0; j < rb.size(); ++j) {
      if (rb[j]) {
        hits.push_back(Interval::punctual(cw.time(k)));
        break;
      }
      if (!ra[j]) break;
    }
  }
  IntervalSet u = dense_until(whole, IntervalSet(std::move(hits)), iv);
  if (time_level) *time_level = u;

  const bool same_time = iv.contains(Rational(0));
  auto g = d.grid(false);
  for (std::size_t k = 0; k < cw.size(); ++k) {
    const bool later = u.contains(cw.time(k));
    const auto& ra = a.grid()[k];
    const auto& rb = b.grid()[k];
    for (std::size_t j = 0; j < g[k].size(); ++j) {
      bool v = later && tail_holds(a, k, j);
      if (!v && same_time) {
        for (std::size_t x = j + 1; x < rb.size(); ++x) {
          if (rb[x]) {
            v = true;
            break;
          }
          if (!ra[x]) break;
        }
      }
      g[k][j] = v;
    }
  }
  return MixedSet(u & d.gap, std::move(g));
}

class MixedEvaluator {
 public:
  explicit MixedEvaluator(const CompactTimedWord& cw) : dom_(cw) {}

  const MixedSet& sat(const Formula& f) {
    if (auto it = cache_.find(f.id()); it != cache_.end()) return it->second;
    const CompactTimedWord& cw = *dom_.word;
    MixedSet s;
    switch (f.kind()) {
      case Kind::Atom: {
        auto g = dom_.grid(false);
        for (std::size_t k = 0; k < cw.size(); ++k)
          for (std::size_t j = 0; j < g[k].size(); ++j) g[k][j] = cw[k].actions[j] == f.atom();
        s = MixedSet(IntervalSet(), std::move(g));
        break;
      }
      case Kind::Beta: {
        auto g = dom_.grid(false);
        for (auto& row : g) row[0] = true;
        s = MixedSet(dom_.gap, std::move(g));
        break;
      }
      case Kind::True: s = MixedSet(dom_.gap, dom_.grid(true)); break;
      case Kind::Not: s = mixed_not(sat(f.left()), dom_); break;
      case Kind::And: s = mixed_and(sat(f.left()), sat(f.right())); break;
      case Kind::Until: s = mixed_until(sat(f.left()), sat(f.right()), f.interval(), dom_); break;
    }
    return cache_.emplace(f.id(), std::move(s)).first->second;
  }

  const MixedDomain& domain() const { return dom_; }

 private:
  MixedDomain dom_;
  std::map<const Node*, MixedSet> cache_;
};

inline bool mixed_contains(const MixedSet& s, const CompactTimedWord& cw, const Rational& t, std::size_t j) {
  if (t.is_negative() || cw.duration() < t)
    throw Error(ErrorKind::OutOfDomain, "time " + t.str() + " outside [0," + cw.duration().str() + "]");
  if (auto k = cw.block_at(t)) {
    if (j >= cw[*k].actions.size()) throw Error(ErrorKind::PositionOutOfRange, "position beyond the block", j);
    return s.has_point(*k, j);
  }
  if (j != 0) throw Error(ErrorKind::PositionOutOfRange, "gap times only have position 0", j);
  return s.gap().contains(t);
}

}  // namespace detail

/// {(t, j) : cw, t, j |=mx f}; f may use beta.
inline MixedSet sat_set_mx(const CompactTimedWord& cw, const Formula& f) {
  detail::MixedEvaluator ev(cw);
  return ev.sat(f);
}

inline bool eval_mx(const CompactTimedWord& cw, const Rational& t, std::size_t j, const Formula& f) {
  // validate the point before doing any work
  detail::mixed_contains(MixedSet(IntervalSet(), detail::MixedDomain(cw).grid(false)), cw, t, j);
  return detail::mixed_contains(sat_set_mx(cw, f), cw, t, j);
}

namespace detail {

struct MixedBounds {
  MixedSet lower, upper;
};

class MixedBoundsEvaluator {
 public:
  explicit MixedBoundsEvaluator(const CompactTimedWord& cw) : exact_(cw) {}

  const MixedBounds& sat(const Formula& f) {
    if (auto it = cache_.find(f.id()); it != cache_.end()) return it->second;
    const MixedDomain& d = exact_.domain();
    MixedBounds b;
    switch (f.kind()) {
      case Kind::Atom:
      case Kind::True:
      case Kind::Beta: b.lower = b.upper = exact_.sat(f); break;
      case Kind::Not: {
        const MixedBounds& x = sat(f.left());
        b.lower = mixed_not(x.upper, d);
        b.upper = mixed_not(x.lower, d);
        break;
      }
      case Kind::And: {
        const MixedBounds& x = sat(f.left());
        const MixedBounds& y = sat(f.right());
        b.lower = mixed_and(x.lower, y.lower);
        b.upper = mixed_and(x.upper, y.upper);
        break;
      }
      case Kind::Until: {
        const MixedBounds& x = sat(f.left());
        const MixedBounds& y = sat(f.right());
        b.lower = mixed_until(x.lower, y.lower, f.interval(), d);
        b.upper = mixed_until(x.upper, y.upper, f.interval(), d);
        const CompactTimedWord& cw = *d.word;
        if (auto e = open_tail(whole_time(x.upper, d), cw.duration(), f.interval())) {
          auto g = d.grid(false);
          for (std::size_t k = 0; k < cw.size(); ++k)
            for (std::size_t j = 0; j < g[k].size(); ++j)
              g[k][j] = e->contains(cw.time(k)) && tail_holds(x.upper, k, j);
          b.upper = mixed_or(b.upper, MixedSet(IntervalSet(*e) & d.gap, std::move(g)));
        }
        break;
      }
    }
    return cache_.emplace(f.id(), std::move(b)).first->second;
  }

 private:
  MixedEvaluator exact_;
  std::map<const Node*, MixedBounds> cache_;
};

}  // namespace detail

/// Verdict at (0,0) of the infinite compact word denoted by the lasso; same
/// contract as eval_itw_lasso.
inline Verdict3 eval_mx_lasso(const CompactLasso& l, const Formula& f, const LassoOptions& opts = {}) {
  Rational h = detail::lasso_horizon(l.prefix.duration(), l.period_duration, f, opts);
  CompactTimedWord cw = l.unroll(h);
  if (is_bounded(f) && !opts.horizon) return eval_mx(cw, Rational(0), 0, f) ? Verdict3::True : Verdict3::False;
  detail::MixedBoundsEvaluator ev(cw);
  const auto& b = ev.sat(f);
  if (b.lower.has_point(0, 0)) return Verdict3::True;
  if (!b.upper.has_point(0, 0)) return Verdict3::False;
  return Verdict3::Unknown;
}

inline Verdict3 eval_mx_lasso(const Lasso& l, const Formula& f, const LassoOptions& opts = {}) {
  return eval_mx_lasso(compact(l), f, opts);
}

}  // namespace mtlsem
