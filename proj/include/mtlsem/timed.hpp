#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "mtlsem/error.hpp"
#include "mtlsem/interval.hpp"
#include "mtlsem/rational.hpp"

namespace mtlsem {

using Symbol = std::string;

struct Event {
  Symbol action;
  Rational time;
  friend bool operator==(const Event&, const Event&) = default;
};

struct WordOptions {
  /// Accept a first timestamp other than 0 (raw words such as those used to
  /// illustrate monotonicity). Engines still expect the default.
  bool allow_nonzero_start = false;
};

/// Finite timed word: non-empty, non-decreasing timestamps, starting at 0.
class TimedWord {
 public:
  TimedWord() = default;

  /// Validates and builds a word. Throws Empty, NonMonotone(position) or FirstTimestampNonZero.
  static TimedWord validate(std::vector<Event> events, WordOptions opts = {}) {
    if (events.empty()) throw Error(ErrorKind::Empty, "a timed word needs at least one event");
    for (std::size_t i = 0; i < events.size(); ++i) {
      if (events[i].time.is_negative()) throw Error(ErrorKind::NonMonotone, "negative timestamp", i);
      if (i > 0 && events[i].time < events[i - 1].time)
        throw Error(ErrorKind::NonMonotone, "timestamp decreases", i);
    }
    if (!opts.allow_nonzero_start && !events.front().time.is_zero())
      throw Error(ErrorKind::FirstTimestampNonZero, "first timestamp is " + events.front().time.str());
    TimedWord w;
    w.events_ = std::move(events);
    return w;
  }

  std::size_t size() const noexcept { return events_.size(); }
  const std::vector<Event>& events() const noexcept { return events_; }
  const Event& operator[](std::size_t i) const { return events_[i]; }
  const Symbol& action(std::size_t i) const { return events_[i].action; }
  const Rational& time(std::size_t i) const { return events_[i].time; }

  /// Timestamp of the last event.
  const Rational& duration() const { return events_.back().time; }

  std::vector<Rational> timestamps() const {
    std::vector<Rational> ts;
    ts.reserve(events_.size());
    for (const auto& e : events_) ts.push_back(e.time);
    return ts;
  }

  std::set<Symbol> symbols() const {
    std::set<Symbol> s;
    for (const auto& e : events_) s.insert(e.action);
    return s;
  }

  /// No letter occurs twice with the same timestamp.
  bool is_stutter_free() const {
    for (std::size_t i = 0; i < events_.size(); ++i)
      for (std::size_t j = i + 1; j < events_.size() && events_[j].time == events_[i].time; ++j)
        if (events_[j].action == events_[i].action) return false;
    return true;
  }

  bool is_strictly_monotone() const {
    for (std::size_t i = 1; i < events_.size(); ++i)
      if (!(events_[i - 1].time < events_[i].time)) return false;
    return true;
  }

  std::string str() const {
    std::string s;
    for (const auto& e : events_) s += "(" + e.action + "," + e.time.decimal_str() + ")";
    return s;
  }

  friend bool operator==(const TimedWord&, const TimedWord&) = default;

 private:
  std::vector<Event> events_;
};

/// Last index of each maximal run of equal timestamps.
struct MfsIndex {
  std::vector<std::size_t> boundaries;

  std::size_t count() const noexcept { return boundaries.size(); }
  /// First index of run k.
  std::size_t start(std::size_t k) const { return k == 0 ? 0 : boundaries[k - 1] + 1; }

  friend bool operator==(const MfsIndex&, const MfsIndex&) = default;
};

inline MfsIndex mfs_decompose(std::span<const Rational> times) {
  MfsIndex idx;
  for (std::size_t i = 0; i < times.size(); ++i)
    if (i + 1 == times.size() || times[i + 1] != times[i]) idx.boundaries.push_back(i);
  return idx;
}

/// Ultimately periodic infinite timed word: `prefix` followed by the period
/// repeated forever. Period r (r >= 0) places action i at
/// duration(prefix) + r * period_duration + period_offsets[i].
struct Lasso {
  TimedWord prefix;
  std::vector<Symbol> period_actions;
  std::vector<Rational> period_offsets;
  Rational period_duration;

  /// Offsets must be non-decreasing within [0, duration] and span strictly
  /// less than one duration, so consecutive periods never overlap.
  void validate() const {
    if (period_actions.empty()) throw Error(ErrorKind::InvalidLasso, "empty period");
    if (period_actions.size() != period_offsets.size())
      throw Error(ErrorKind::InvalidLasso, "period actions and offsets differ in length");
    if (!(Rational(0) < period_duration)) throw Error(ErrorKind::InvalidLasso, "period duration must be > 0");
    for (std::size_t i = 0; i < period_offsets.size(); ++i) {
      if (period_offsets[i].is_negative() || period_duration < period_offsets[i])
        throw Error(ErrorKind::InvalidLasso, "offset outside [0, duration]", i);
      if (i > 0 && period_offsets[i] < period_offsets[i - 1])
        throw Error(ErrorKind::InvalidLasso, "offsets must be non-decreasing", i);
    }
    if (!(period_offsets.back() - period_offsets.front() < period_duration))
      throw Error(ErrorKind::InvalidLasso, "period offsets must span less than the duration");
  }

  Rational event_time(std::size_t period, std::size_t i) const {
    return prefix.duration() + Rational(static_cast<std::int64_t>(period)) * period_duration + period_offsets[i];
  }

  /// All events with timestamp <= horizon. Requires horizon >= duration(prefix).
  TimedWord unroll(const Rational& horizon) const {
    validate();
    if (horizon < prefix.duration()) throw Error(ErrorKind::OutOfDomain, "horizon before end of prefix");
    std::vector<Event> ev = prefix.events();
    for (std::size_t r = 0;; ++r) {
      for (std::size_t i = 0; i < period_actions.size(); ++i) {
        Rational t = event_time(r, i);
        if (horizon < t) return TimedWord::validate(std::move(ev), {true});
        ev.push_back({period_actions[i], t});
      }
    }
  }

  /// Unrolls exactly `periods` full periods.
  TimedWord unroll_periods(std::size_t periods) const {
    validate();
    std::vector<Event> ev = prefix.events();
    for (std::size_t r = 0; r < periods; ++r)
      for (std::size_t i = 0; i < period_actions.size(); ++i) ev.push_back({period_actions[i], event_time(r, i)});
    return TimedWord::validate(std::move(ev), {true});
  }
};

struct Block {
  std::vector<Symbol> actions;
  Rational time;
  friend bool operator==(const Block&, const Block&) = default;
};

/// Word whose maximal runs of simultaneous events are collapsed into ordered blocks.
class CompactTimedWord {
 public:
  CompactTimedWord() = default;

  static CompactTimedWord validate(std::vector<Block> blocks, WordOptions opts = {}) {
    if (blocks.empty()) throw Error(ErrorKind::Empty, "a compact timed word needs at least one block");
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      if (blocks[i].actions.empty()) throw Error(ErrorKind::Empty, "block without actions", i);
      if (blocks[i].time.is_negative()) throw Error(ErrorKind::NonMonotone, "negative timestamp", i);
      if (i > 0 && !(blocks[i - 1].time < blocks[i].time))
        throw Error(ErrorKind::NonMonotone, "block timestamps must strictly increase", i);
    }
    if (!opts.allow_nonzero_start && !blocks.front().time.is_zero())
      throw Error(ErrorKind::FirstTimestampNonZero, "first timestamp is " + blocks.front().time.str());
    CompactTimedWord w;
    w.blocks_ = std::move(blocks);
    return w;
  }

  std::size_t size() const noexcept { return blocks_.size(); }
  const std::vector<Block>& blocks() const noexcept { return blocks_; }
  const Block& operator[](std::size_t k) const { return blocks_[k]; }
  const Rational& time(std::size_t k) const { return blocks_[k].time; }
  const Rational& duration() const { return blocks_.back().time; }

  /// Total number of events over all blocks.
  std::size_t event_count() const {
    std::size_t n = 0;
    for (const auto& b : blocks_) n += b.actions.size();
    return n;
  }

  /// Block index holding timestamp t, if any (binary search).
  std::optional<std::size_t> block_at(const Rational& t) const {
    auto it = std::lower_bound(blocks_.begin(), blocks_.end(), t,
                               [](const Block& b, const Rational& x) { return b.time < x; });
    if (it == blocks_.end() || it->time != t) return std::nullopt;
    return static_cast<std::size_t>(it - blocks_.begin());
  }

  std::string str() const {
    std::string s;
    for (const auto& b : blocks_) {
      s += "((";
      for (std::size_t j = 0; j < b.actions.size(); ++j) s += (j ? "," : "") + b.actions[j];
      s += ")," + b.time.decimal_str() + ")";
    }
    return s;
  }

  friend bool operator==(const CompactTimedWord&, const CompactTimedWord&) = default;

 private:
  std::vector<Block> blocks_;
};

/// Lasso over compact words: period block i sits at duration(prefix) + r * duration + offset_i.
struct CompactLasso {
  CompactTimedWord prefix;
  std::vector<Block> period;  // Block::time holds the offset
  Rational period_duration;

  CompactTimedWord unroll(const Rational& horizon) const {
    if (horizon < prefix.duration()) throw Error(ErrorKind::OutOfDomain, "horizon before end of prefix");
    std::vector<Block> bs = prefix.blocks();
    for (std::size_t r = 0;; ++r) {
      for (const auto& b : period) {
        Rational t = prefix.duration() + Rational(static_cast<std::int64_t>(r)) * period_duration + b.time;
        if (horizon < t) return CompactTimedWord::validate(std::move(bs), {true});
        bs.push_back({b.actions, t});
      }
    }
  }
};

struct Step {
  std::set<Symbol> props;
  Interval interval;
  friend bool operator==(const Step&, const Step&) = default;
};

struct TssOptions {
  /// Require the first interval to be left-closed at 0 (the evaluation default).
  bool require_zero_start = true;
};

/// Finite timed state sequence: adjacent intervals, last one right-closed.
class TimedStateSequence {
 public:
  static TimedStateSequence validate(std::vector<Step> steps, TssOptions opts = {}) {
    if (steps.empty()) throw Error(ErrorKind::Empty, "a timed state sequence needs at least one step");
    const Interval& first = steps.front().interval;
    if (opts.require_zero_start && !(first.lo().closed && first.lower().is_zero()))
      throw Error(ErrorKind::AdjacencyViolation, "first interval must be left-closed at 0", 0);
    if (!first.lo().closed) throw Error(ErrorKind::AdjacencyViolation, "first interval must be left-closed", 0);
    for (std::size_t i = 1; i < steps.size(); ++i) {
      const Interval& a = steps[i - 1].interval;
      const Interval& b = steps[i].interval;
      bool adjacent = a.hi().finite() && *a.hi().value == b.lower() && (a.hi().closed != b.lo().closed);
      if (!adjacent) throw Error(ErrorKind::AdjacencyViolation, "intervals not adjacent", i);
    }
    const Interval& last = steps.back().interval;
    if (!last.hi().finite() || !last.hi().closed)
      throw Error(ErrorKind::AdjacencyViolation, "last interval must be right-closed", steps.size() - 1);
    TimedStateSequence k;
    k.steps_ = std::move(steps);
    return k;
  }

  std::size_t size() const noexcept { return steps_.size(); }
  const std::vector<Step>& steps() const noexcept { return steps_; }
  const Step& operator[](std::size_t i) const { return steps_[i]; }

  const Rational& start() const { return steps_.front().interval.lower(); }
  const Rational& duration() const { return *steps_.back().interval.hi().value; }
  Interval span() const { return Interval::closed(start(), duration()); }

  /// The proposition set holding at time t.
  const std::set<Symbol>& at(const Rational& t) const {
    for (const auto& s : steps_)
      if (s.interval.contains(t)) return s.props;
    throw Error(ErrorKind::OutOfDomain, "time " + t.str() + " outside " + span().str());
  }

  /// Membership in the action-based class: punctual non-empty steps at even
  /// positions, non-punctual empty steps at odd positions, starting with [0,0]
  /// and ending punctual.
  bool is_action_based() const {
    if (steps_.front().interval != Interval::punctual(0)) return false;
    if (!steps_.back().interval.is_punctual()) return false;
    for (std::size_t i = 0; i < steps_.size(); ++i) {
      const Step& s = steps_[i];
      if (i % 2 == 0 && (s.props.empty() || !s.interval.is_punctual())) return false;
      if (i % 2 == 1 && (!s.props.empty() || s.interval.is_punctual())) return false;
    }
    if (steps_.size() % 2 == 0) throw Error(ErrorKind::InvariantViolation, "action-based sequence of even length");
    return true;
  }

  std::string str() const {
    std::string s;
    for (const auto& st : steps_) {
      s += "({";
      bool first = true;
      for (const auto& p : st.props) {
        s += (first ? "" : ",") + p;
        first = false;
      }
      s += "}," + st.interval.str() + ")";
    }
    return s;
  }

  friend bool operator==(const TimedStateSequence&, const TimedStateSequence&) = default;

 private:
  std::vector<Step> steps_;
};

}  // namespace mtlsem
