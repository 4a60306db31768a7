#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <vector>

#include "mtlsem/error.hpp"
#include "mtlsem/formula.hpp"
#include "mtlsem/timed.hpp"

namespace mtlsem {

namespace detail {

inline void reject_beta_pw(const Formula& f) {
  if (uses_beta(f)) throw Error(ErrorKind::BetaNotInPw, "beta has no pointwise meaning");
}

// Is d = tau_j - tau_i past every point of I (so no later j can satisfy it)?
inline bool past_window(const Rational& d, const Interval& i) {
  if (!i.bounded()) return false;
  const Bound& hi = i.hi();
  return *hi.value < d || (d == *hi.value && !hi.closed);
}

// Is every later distance (>= d) inside I? Only possible for unbounded I.
inline bool window_settled(const Rational& d, const Interval& i) { return !i.bounded() && i.contains(d); }

}  // namespace detail

/// {i : rho, i |=pw f}, bottom-up over subformulas, Until by a forward scan.
inline std::vector<bool> sat_positions_mask(const TimedWord& w, const Formula& f) {
  detail::reject_beta_pw(f);
  const std::size_t n = w.size();
  std::map<const Node*, std::vector<bool>> sat;
  for (const Formula& g : subformulas(f)) {
    std::vector<bool> v(n, false);
    switch (g.kind()) {
      case Kind::Atom:
        for (std::size_t i = 0; i < n; ++i) v[i] = w.action(i) == g.atom();
        break;
      case Kind::True: v.assign(n, true); break;
      case Kind::Beta: break;
      case Kind::Not: {
        const auto& a = sat.at(g.left().id());
        for (std::size_t i = 0; i < n; ++i) v[i] = !a[i];
        break;
      }
      case Kind::And: {
        const auto& a = sat.at(g.left().id());
        const auto& b = sat.at(g.right().id());
        for (std::size_t i = 0; i < n; ++i) v[i] = a[i] && b[i];
        break;
      }
      case Kind::Until: {
        const auto& a = sat.at(g.left().id());
        const auto& b = sat.at(g.right().id());
        const Interval& iv = g.interval();
        for (std::size_t i = 0; i < n; ++i) {
          for (std::size_t j = i + 1; j < n; ++j) {
            Rational d = w.time(j) - w.time(i);
            if (detail::past_window(d, iv)) break;
            if (b[j] && iv.contains(d)) {
              v[i] = true;
              break;
            }
            if (!a[j]) break;
          }
        }
        break;
      }
    }
    sat.emplace(g.id(), std::move(v));
  }
  return sat.at(f.id());
}

inline std::set<std::size_t> sat_positions(const TimedWord& w, const Formula& f) {
  std::set<std::size_t> out;
  auto m = sat_positions_mask(w, f);
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i]) out.insert(i);
  return out;
}

inline bool eval_pw(const TimedWord& w, std::size_t i, const Formula& f) {
  if (i >= w.size()) throw Error(ErrorKind::PositionOutOfRange, "position beyond the word", i);
  return sat_positions_mask(w, f)[i];
}

/// Exact pointwise verdict at position `pos` of the infinite word denoted by a lasso.
///
/// The suffix starting at the i-th action of period r is the suffix at period 0
/// shifted uniformly by r * duration. Pointwise truth only looks forward and only
/// at timestamp differences, so it is determined per period slot. An Until scan
/// from any source reaches the settled region of an unbounded window after
/// finitely many steps; once it is also past the prefix, one more period decides it.
inline bool eval_pw_lasso(const Lasso& l, const Formula& f, std::size_t pos = 0) {
  detail::reject_beta_pw(f);
  l.validate();
  const std::size_t n = l.prefix.size();
  const std::size_t p = l.period_actions.size();

  auto action = [&](std::size_t idx) -> const Symbol& {
    return idx < n ? l.prefix.action(idx) : l.period_actions[(idx - n) % p];
  };
  auto time = [&](std::size_t idx) {
    return idx < n ? l.prefix.time(idx) : l.event_time((idx - n) / p, (idx - n) % p);
  };

  // Truth vectors: prefix slots then period slots.
  struct Truth {
    std::vector<bool> pre, per;
  };
  std::map<const Node*, Truth> sat;
  auto at = [&](const Truth& t, std::size_t idx) -> bool { return idx < n ? t.pre[idx] : t.per[(idx - n) % p]; };

  for (const Formula& g : subformulas(f)) {
    // Evaluates g at an arbitrary index, children already known.
    auto eval_at = [&](std::size_t i) -> bool {
      switch (g.kind()) {
        case Kind::Atom: return action(i) == g.atom();
        case Kind::True: return true;
        case Kind::Beta: return false;
        case Kind::Not: return !at(sat.at(g.left().id()), i);
        case Kind::And: return at(sat.at(g.left().id()), i) && at(sat.at(g.right().id()), i);
        case Kind::Until: {
          const Truth& a = sat.at(g.left().id());
          const Truth& b = sat.at(g.right().id());
          const Interval& iv = g.interval();
          std::optional<std::size_t> settled;
          for (std::size_t j = i + 1;; ++j) {
            Rational d = time(j) - time(i);
            if (detail::past_window(d, iv)) return false;
            if (at(b, j) && iv.contains(d)) return true;
            if (!at(a, j)) return false;
            if (!settled && detail::window_settled(d, iv)) settled = j;
            // once settled and inside the periodic zone, truth repeats with the period
            if (settled && j >= std::max(*settled, n) + p) return false;
          }
        }
      }
      return false;
    };
    Truth t{std::vector<bool>(n), std::vector<bool>(p)};
    for (std::size_t i = 0; i < n; ++i) t.pre[i] = eval_at(i);
    for (std::size_t i = 0; i < p; ++i) t.per[i] = eval_at(n + i);
    // shift invariance: the second period must agree slot by slot with the first
    for (std::size_t i = 0; i < p; ++i)
      if (eval_at(n + p + i) != t.per[i])
        throw Error(ErrorKind::InvariantViolation, "period slot verdict changed between periods", i);
    sat.emplace(g.id(), std::move(t));
  }
  return at(sat.at(f.id()), pos);
}

}  // namespace mtlsem
