#pragma once

#include <algorithm>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mtlsem/error.hpp"
#include "mtlsem/rational.hpp"

namespace mtlsem {

/// One end of an interval. An absent value means +infinity, which is never closed.
struct Bound {
  std::optional<Rational> value;
  bool closed = true;

  static Bound closed_at(Rational v) { return {v, true}; }
  static Bound open_at(Rational v) { return {v, false}; }
  static Bound infinity() { return {std::nullopt, false}; }

  bool finite() const noexcept { return value.has_value(); }

  friend bool operator==(const Bound&, const Bound&) = default;
};

/// Non-empty convex subset of the reals with rational (or infinite upper) ends.
class Interval {
 public:
  Interval(Bound lo, Bound hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
    if (!lo_.finite()) throw Error(ErrorKind::InvalidInterval, "lower bound must be finite");
    if (!hi_.finite() && hi_.closed) throw Error(ErrorKind::InvalidInterval, "infinity cannot be closed");
    if (!non_empty(lo_, hi_)) throw Error(ErrorKind::InvalidInterval, "empty interval");
  }

  static Interval punctual(Rational t) { return {Bound::closed_at(t), Bound::closed_at(t)}; }
  static Interval closed(Rational l, Rational u) { return {Bound::closed_at(l), Bound::closed_at(u)}; }
  static Interval closed_open(Rational l, Rational u) { return {Bound::closed_at(l), Bound::open_at(u)}; }
  static Interval open_closed(Rational l, Rational u) { return {Bound::open_at(l), Bound::closed_at(u)}; }
  static Interval open(Rational l, Rational u) { return {Bound::open_at(l), Bound::open_at(u)}; }
  /// [0, inf)
  static Interval unbounded() { return {Bound::closed_at(0), Bound::infinity()}; }

  /// Parses "[l,u]", "(l,u]", "[l,u)" or "(l,u)"; "inf" is accepted as an open upper end.
  static Interval parse(std::string_view text);

  const Bound& lo() const noexcept { return lo_; }
  const Bound& hi() const noexcept { return hi_; }
  const Rational& lower() const { return *lo_.value; }

  bool is_punctual() const noexcept { return hi_.finite() && *lo_.value == *hi_.value; }
  bool bounded() const noexcept { return hi_.finite(); }

  bool contains(const Rational& t) const {
    if (t < *lo_.value || (t == *lo_.value && !lo_.closed)) return false;
    if (!hi_.finite()) return true;
    return t < *hi_.value || (t == *hi_.value && hi_.closed);
  }

  /// Whether the bounds would denote a non-empty set.
  static bool non_empty(const Bound& lo, const Bound& hi) {
    if (!lo.finite()) return false;
    if (!hi.finite()) return true;
    if (*lo.value < *hi.value) return true;
    return *lo.value == *hi.value && lo.closed && hi.closed;
  }

  std::string str() const {
    std::string s = lo_.closed ? "[" : "(";
    s += lo_.value->decimal_str();
    s += ",";
    s += hi_.finite() ? hi_.value->decimal_str() : "inf";
    s += hi_.closed ? "]" : ")";
    return s;
  }

  friend bool operator==(const Interval&, const Interval&) = default;
  friend std::ostream& operator<<(std::ostream& os, const Interval& i) { return os << i.str(); }

 private:
  Bound lo_;
  Bound hi_;
};

inline Interval Interval::parse(std::string_view text) {
  auto fail = [&](const std::string& why) -> Interval {
    throw Error(ErrorKind::InvalidInterval, "'" + std::string(text) + "': " + why);
  };
  std::string_view s = text;
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.size() < 5) return fail("too short");
  char open = s.front(), close = s.back();
  if ((open != '[' && open != '(') || (close != ']' && close != ')')) return fail("missing brackets");
  std::string_view body = s.substr(1, s.size() - 2);
  auto comma = body.find(',');
  if (comma == std::string_view::npos) return fail("missing comma");
  Rational lo = Rational::parse(body.substr(0, comma));
  std::string_view up = body.substr(comma + 1);
  while (!up.empty() && up.front() == ' ') up.remove_prefix(1);
  while (!up.empty() && up.back() == ' ') up.remove_suffix(1);
  if (lo.is_negative()) return fail("negative lower bound");
  Bound hi;
  if (up == "inf") {
    if (close == ']') return fail("infinity cannot be closed");
    hi = Bound::infinity();
  } else {
    Rational u = Rational::parse(up);
    hi = Bound{u, close == ']'};
  }
  Bound lb{lo, open == '['};
  if (!non_empty(lb, hi)) return fail("empty interval");
  return Interval(lb, hi);
}

namespace detail {

// Orders lower bounds: smaller value first; at equal values a closed bound starts earlier.
inline bool lower_before(const Bound& a, const Bound& b) {
  if (*a.value != *b.value) return *a.value < *b.value;
  return a.closed && !b.closed;
}

// The more restrictive of two lower bounds.
inline Bound max_lower(const Bound& a, const Bound& b) { return lower_before(a, b) ? b : a; }

// The more restrictive of two upper bounds.
inline Bound min_upper(const Bound& a, const Bound& b) {
  if (!a.finite()) return b;
  if (!b.finite()) return a;
  if (*a.value != *b.value) return *a.value < *b.value ? a : b;
  return a.closed ? b : a;
}

// Upper bound `a` compared against upper bound `b`: true if a reaches further right.
inline bool upper_after(const Bound& a, const Bound& b) {
  if (!a.finite()) return b.finite();
  if (!b.finite()) return false;
  if (*a.value != *b.value) return *a.value > *b.value;
  return a.closed && !b.closed;
}

// Can an interval ending at `hi` be merged with one starting at `lo` (lo not before the first start)?
inline bool touches(const Bound& hi, const Bound& lo) {
  if (!hi.finite()) return true;
  if (*lo.value < *hi.value) return true;
  return *lo.value == *hi.value && (hi.closed || lo.closed);
}

}  // namespace detail

inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
  Bound lo = detail::max_lower(a.lo(), b.lo());
  Bound hi = detail::min_upper(a.hi(), b.hi());
  if (!Interval::non_empty(lo, hi)) return std::nullopt;
  return Interval(lo, hi);
}

/// Normalized finite union of disjoint intervals: sorted, pairwise disjoint,
/// and maximal (touching parts are merged). May be empty.
class IntervalSet {
 public:
  IntervalSet() = default;
  IntervalSet(const Interval& i) : parts_{i} {}  // NOLINT implicit
  explicit IntervalSet(std::vector<Interval> parts) : parts_(std::move(parts)) { normalize(); }

  static IntervalSet points(std::span<const Rational> ts) {
    std::vector<Interval> v;
    v.reserve(ts.size());
    for (const auto& t : ts) v.push_back(Interval::punctual(t));
    return IntervalSet(std::move(v));
  }

  bool empty() const noexcept { return parts_.empty(); }
  std::size_t size() const noexcept { return parts_.size(); }
  /// The maximal convex components, in ascending order.
  const std::vector<Interval>& parts() const noexcept { return parts_; }

  bool contains(const Rational& t) const {
    // parts are sorted; binary search on the lower end
    auto it = std::upper_bound(parts_.begin(), parts_.end(), t, [](const Rational& x, const Interval& p) {
      return x < p.lower();
    });
    if (it == parts_.begin()) return false;
    return std::prev(it)->contains(t);
  }

  /// The part containing t, if any.
  const Interval* part_containing(const Rational& t) const {
    for (const auto& p : parts_)
      if (p.contains(t)) return &p;
    return nullptr;
  }

  friend IntervalSet operator|(const IntervalSet& a, const IntervalSet& b) {
    std::vector<Interval> v = a.parts_;
    v.insert(v.end(), b.parts_.begin(), b.parts_.end());
    return IntervalSet(std::move(v));
  }

  friend IntervalSet operator&(const IntervalSet& a, const IntervalSet& b) {
    IntervalSet out;
    std::size_t i = 0, j = 0;
    while (i < a.parts_.size() && j < b.parts_.size()) {
      const Interval& x = a.parts_[i];
      const Interval& y = b.parts_[j];
      if (auto z = intersect(x, y)) out.parts_.push_back(*z);
      if (detail::upper_after(y.hi(), x.hi()))
        ++i;
      else
        ++j;
    }
    // pieces of disjoint maximal parts can only touch at a point both exclude
    out.normalize();
    return out;
  }

  /// Complement relative to `domain`. Throws NotInDomain unless this set is a subset of it.
  IntervalSet complement(const Interval& domain) const {
    if ((*this & IntervalSet(domain)) != *this)
      throw Error(ErrorKind::NotInDomain, "set is not contained in " + domain.str());
    IntervalSet out;
    Bound cursor = domain.lo();
    bool done = false;
    for (const auto& p : parts_) {
      Bound gap_hi{p.lo().value, !p.lo().closed};
      if (Interval::non_empty(cursor, gap_hi)) out.parts_.emplace_back(cursor, gap_hi);
      if (!p.hi().finite()) {
        done = true;
        break;
      }
      cursor = Bound{p.hi().value, !p.hi().closed};
    }
    if (!done && Interval::non_empty(cursor, domain.hi())) out.parts_.emplace_back(cursor, domain.hi());
    return out;
  }

  std::string str() const {
    if (parts_.empty()) return "{}";
    std::string s = "{";
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ",";
      s += parts_[i].str();
    }
    return s + "}";
  }

  friend bool operator==(const IntervalSet&, const IntervalSet&) = default;
  friend std::ostream& operator<<(std::ostream& os, const IntervalSet& s) { return os << s.str(); }

 private:
  void normalize() {
    std::sort(parts_.begin(), parts_.end(),
              [](const Interval& a, const Interval& b) { return detail::lower_before(a.lo(), b.lo()); });
    std::vector<Interval> merged;
    merged.reserve(parts_.size());
    for (const auto& p : parts_) {
      if (!merged.empty() && detail::touches(merged.back().hi(), p.lo())) {
        if (detail::upper_after(p.hi(), merged.back().hi())) merged.back() = Interval(merged.back().lo(), p.hi());
      } else {
        merged.push_back(p);
      }
    }
    parts_ = std::move(merged);
  }

  std::vector<Interval> parts_;
};

/// Exact set { t >= 0 : exists t' in target, t' > t, t' - t in window }.
///
/// When the window starts at a closed 0 the strict t < t' constraint is the
/// binding one and the result is open at sup(target); otherwise it is the
/// Minkowski difference target - window clipped to the nonnegative reals.
inline std::optional<Interval> back_shift(const Interval& target, const Interval& window) {
  const Bound& qlo = target.lo();
  const Bound& qhi = target.hi();
  const Bound& wlo = window.lo();
  const Bound& whi = window.hi();

  std::optional<Bound> lo;  // nullopt = -infinity
  Bound hi;
  bool zero_start = wlo.value->is_zero() && wlo.closed;
  if (zero_start && window.is_punctual()) return std::nullopt;  // t' - t = 0 contradicts t' > t

  if (whi.finite()) lo = Bound{*qlo.value - *whi.value, qlo.closed && whi.closed};
  if (zero_start) {
    hi = qhi.finite() ? Bound::open_at(*qhi.value) : Bound::infinity();
  } else {
    hi = qhi.finite() ? Bound{*qhi.value - *wlo.value, qhi.closed && wlo.closed} : Bound::infinity();
  }
  if (!lo || lo->value->is_negative()) lo = Bound::closed_at(0);
  if (!Interval::non_empty(*lo, hi)) return std::nullopt;
  return Interval(*lo, hi);
}

}  // namespace mtlsem
