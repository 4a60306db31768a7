#pragma once

#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>

#include "mtlsem/encodings.hpp"
#include "mtlsem/error.hpp"
#include "mtlsem/formula.hpp"
#include "mtlsem/interval.hpp"
#include "mtlsem/timed.hpp"

namespace mtlsem {

enum class Verdict3 { False, True, Unknown };

inline const char* to_string(Verdict3 v) {
  switch (v) {
    case Verdict3::False: return "false";
    case Verdict3::True: return "true";
    case Verdict3::Unknown: return "unknown";
  }
  return "?";
}

/// Controls the finite prefix used for lasso verdicts.
struct LassoOptions {
  /// Periods unrolled past the interval-bound slack when the formula is unbounded.
  std::size_t extra_periods = 3;
  /// Absolute unroll horizon; overrides the computed one when set.
  std::optional<Rational> horizon;
};

namespace detail {

/// {t : exists t' > t, t' - t in I, t' in b, and (t,t') inside a}.
///
/// A non-empty open (t,t') inside `a` lies in a single maximal part <l,u>, so
/// t ranges over [l,u) and t' over (l,u]; t' may sit on an open u.
inline IntervalSet dense_until(const IntervalSet& a, const IntervalSet& b, const Interval& iv) {
  std::vector<Interval> out;
  for (const Interval& p : a.parts()) {
    if (p.is_punctual()) continue;
    Bound wend = p.hi().finite() ? Bound::closed_at(*p.hi().value) : Bound::infinity();
    IntervalSet targets = b & IntervalSet(Interval(Bound::open_at(p.lower()), wend));
    const Interval from_l(Bound::closed_at(p.lower()), Bound::infinity());
    for (const Interval& q : targets.parts())
      if (auto s = back_shift(q, iv))
        if (auto r = intersect(*s, from_l)) out.push_back(*r);
  }
  return IntervalSet(std::move(out));
}

// Largest E = {t in [0,mu] : (t,mu] inside f} intersected with the times from
// which some t' > mu can still be within the window. Used by over-approximations.
inline std::optional<Interval> open_tail(const IntervalSet& f, const Rational& mu, const Interval& iv) {
  Rational lo = mu;
  if (const Interval* p = f.part_containing(mu)) lo = p->lower();
  Interval e = Interval::closed(lo, mu);
  if (iv.bounded()) {
    Rational reach = mu - *iv.hi().value;
    if (reach.is_negative()) reach = Rational(0);
    return intersect(e, Interval(Bound::closed_at(reach), Bound::infinity()));
  }
  return e;
}

// Sat sets for a dense-time model given by its atom sets and its domain.
class DenseEvaluator {
 public:
  DenseEvaluator(Interval domain, std::function<IntervalSet(const Symbol&)> atom_set)
      : domain_(std::move(domain)), atom_set_(std::move(atom_set)) {}

  const IntervalSet& sat(const Formula& f) {
    if (auto it = cache_.find(f.id()); it != cache_.end()) return it->second;
    IntervalSet s;
    switch (f.kind()) {
      case Kind::Atom: s = atom_set_(f.atom()); break;
      case Kind::True: s = IntervalSet(domain_); break;
      case Kind::Beta: throw Error(ErrorKind::BetaNotInItw, "beta has no interval-based meaning");
      case Kind::Not: s = sat(f.left()).complement(domain_); break;
      case Kind::And: s = sat(f.left()) & sat(f.right()); break;
      case Kind::Until: s = dense_until(sat(f.left()), sat(f.right()), f.interval()); break;
    }
    return cache_.emplace(f.id(), std::move(s)).first->second;
  }

  const Interval& domain() const { return domain_; }

 private:
  Interval domain_;
  std::function<IntervalSet(const Symbol&)> atom_set_;
  std::map<const Node*, IntervalSet> cache_;
};

inline DenseEvaluator itw_model(const TimedWord& w) {
  return DenseEvaluator(Interval::closed(0, w.duration()), [&w](const Symbol& a) {
    std::vector<Rational> ts;
    for (const auto& e : w.events())
      if (e.action == a) ts.push_back(e.time);
    return IntervalSet::points(ts);
  });
}

inline DenseEvaluator its_model(const TimedStateSequence& k) {
  return DenseEvaluator(k.span(), [&k](const Symbol& a) {
    std::vector<Interval> parts;
    for (const auto& s : k.steps())
      if (s.props.count(a)) parts.push_back(s.interval);
    return IntervalSet(std::move(parts));
  });
}

inline void check_time(const Interval& domain, const Rational& t) {
  if (!domain.contains(t)) throw Error(ErrorKind::OutOfDomain, "time " + t.str() + " outside " + domain.str());
}

// Sum of every finite interval bound: enough lookahead slack for one nesting chain.
inline Rational bound_slack(const Formula& f) {
  Rational s(0);
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (g.kind() == Kind::Until) {
      s += g.interval().bounded() ? *g.interval().hi().value : g.interval().lower();
    }
    if (g.kind() == Kind::Not) walk(g.left());
    if (g.kind() == Kind::And || g.kind() == Kind::Until) {
      walk(g.left());
      walk(g.right());
    }
  };
  walk(f);
  return s;
}

inline Rational lasso_horizon(const Rational& prefix_end, const Rational& period, const Formula& f,
                              const LassoOptions& opts) {
  if (opts.horizon) return std::max(*opts.horizon, prefix_end);
  if (auto h = horizon(f)) return prefix_end + *h + period;
  Rational extra = period * Rational(static_cast<std::int64_t>(opts.extra_periods));
  return prefix_end + bound_slack(f) + extra + period;
}

}  // namespace detail

/// {t in [0, mu] : rho, t |=itw f}.
inline IntervalSet sat_set_itw(const TimedWord& w, const Formula& f) {
  auto ev = detail::itw_model(w);
  return ev.sat(f);
}

inline bool eval_itw(const TimedWord& w, const Rational& t, const Formula& f) {
  detail::check_time(Interval::closed(0, w.duration()), t);
  return sat_set_itw(w, f).contains(t);
}

/// {t in span(k) : k, t |=its f}. Any valid sequence is accepted, not only action-based ones.
inline IntervalSet sat_set_its(const TimedStateSequence& k, const Formula& f) {
  auto ev = detail::its_model(k);
  return ev.sat(f);
}

inline bool eval_its(const TimedStateSequence& k, const Rational& t, const Formula& f) {
  detail::check_time(k.span(), t);
  return sat_set_its(k, f).contains(t);
}

namespace detail {

// Under- and over-approximation of the infinite-word sat set, both restricted to
// the unrolled window [0, mu].
struct DenseBounds {
  IntervalSet lower, upper;
};

class DenseBoundsEvaluator {
 public:
  DenseBoundsEvaluator(const TimedWord& w) : exact_(itw_model(w)), mu_(w.duration()) {}

  const DenseBounds& sat(const Formula& f) {
    if (auto it = cache_.find(f.id()); it != cache_.end()) return it->second;
    DenseBounds b;
    const Interval dom = exact_.domain();
    switch (f.kind()) {
      case Kind::Atom:
      case Kind::True:
      case Kind::Beta: b.lower = b.upper = exact_.sat(f); break;
      case Kind::Not: {
        const DenseBounds& x = sat(f.left());
        b.lower = x.upper.complement(dom);
        b.upper = x.lower.complement(dom);
        break;
      }
      case Kind::And: {
        const DenseBounds& x = sat(f.left());
        const DenseBounds& y = sat(f.right());
        b.lower = x.lower & y.lower;
        b.upper = x.upper & y.upper;
        break;
      }
      case Kind::Until: {
        const DenseBounds& x = sat(f.left());
        const DenseBounds& y = sat(f.right());
        b.lower = dense_until(x.lower, y.lower, f.interval());
        b.upper = dense_until(x.upper, y.upper, f.interval());
        // a witness beyond the window needs the left operand up to mu
        if (auto e = open_tail(x.upper, mu_, f.interval())) b.upper = b.upper | IntervalSet(*e);
        break;
      }
    }
    return cache_.emplace(f.id(), std::move(b)).first->second;
  }

 private:
  DenseEvaluator exact_;
  Rational mu_;
  std::map<const Node*, DenseBounds> cache_;
};

}  // namespace detail

/// Verdict at time 0 of the infinite word denoted by the lasso. Exact for bounded
/// formulas; otherwise True/False only when the finite window already decides it.
inline Verdict3 eval_itw_lasso(const Lasso& l, const Formula& f, const LassoOptions& opts = {}) {
  l.validate();
  if (uses_beta(f)) throw Error(ErrorKind::BetaNotInItw, "beta has no interval-based meaning");
  Rational h = detail::lasso_horizon(l.prefix.duration(), l.period_duration, f, opts);
  TimedWord w = l.unroll(h);
  if (is_bounded(f) && !opts.horizon) return eval_itw(w, Rational(0), f) ? Verdict3::True : Verdict3::False;
  detail::DenseBoundsEvaluator ev(w);
  const auto& b = ev.sat(f);
  if (b.lower.contains(Rational(0))) return Verdict3::True;
  if (!b.upper.contains(Rational(0))) return Verdict3::False;
  return Verdict3::Unknown;
}

}  // namespace mtlsem
