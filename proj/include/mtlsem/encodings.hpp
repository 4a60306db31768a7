#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "mtlsem/timed.hpp"

namespace mtlsem {

/// Collapses each maximal run of equal timestamps into one block, preserving action order.
inline CompactTimedWord compact(const TimedWord& w) {
  std::vector<Rational> ts = w.timestamps();
  MfsIndex idx = mfs_decompose(ts);
  std::vector<Block> blocks;
  blocks.reserve(idx.count());
  for (std::size_t k = 0; k < idx.count(); ++k) {
    Block b{{}, w.time(idx.boundaries[k])};
    for (std::size_t i = idx.start(k); i <= idx.boundaries[k]; ++i) b.actions.push_back(w.action(i));
    blocks.push_back(std::move(b));
  }
  return CompactTimedWord::validate(std::move(blocks), {true});
}

/// Inverse of `compact`: every block expands to consecutive events sharing its timestamp.
inline TimedWord uncompact(const CompactTimedWord& cw) {
  std::vector<Event> ev;
  ev.reserve(cw.event_count());
  for (const auto& b : cw.blocks())
    for (const auto& a : b.actions) ev.push_back({a, b.time});
  return TimedWord::validate(std::move(ev), {true});
}

/// Lasso compaction. The period is compacted on its own, so an MFS may not
/// straddle the prefix/period seam (a first offset of 0).
inline CompactLasso compact(const Lasso& l) {
  l.validate();
  if (l.period_offsets.front().is_zero())
    throw Error(ErrorKind::SeamStutter, "first period event shares the last prefix timestamp");
  CompactLasso out{compact(l.prefix), {}, l.period_duration};
  for (std::size_t i = 0; i < l.period_actions.size(); ++i) {
    if (!out.period.empty() && out.period.back().time == l.period_offsets[i])
      out.period.back().actions.push_back(l.period_actions[i]);
    else
      out.period.push_back({{l.period_actions[i]}, l.period_offsets[i]});
  }
  return out;
}

/// The alternating punctual/gap encoding into an action-based timed state sequence.
inline TimedStateSequence to_tss(const CompactTimedWord& cw) {
  std::vector<Step> steps;
  steps.reserve(2 * cw.size() - 1);
  for (std::size_t i = 0; i < cw.size(); ++i) {
    if (i > 0) steps.push_back({{}, Interval::open(cw.time(i - 1), cw.time(i))});
    const auto& acts = cw[i].actions;
    steps.push_back({std::set<Symbol>(acts.begin(), acts.end()), Interval::punctual(cw.time(i))});
  }
  return TimedStateSequence::validate(std::move(steps), {false});
}

inline TimedStateSequence to_tss_of_word(const TimedWord& w) { return to_tss(compact(w)); }

/// One preimage of an action-based sequence: each punctual step's set listed
/// in alphabetical order.
inline CompactTimedWord from_action_based(const TimedStateSequence& k) {
  if (!k.is_action_based()) throw Error(ErrorKind::NotInDomain, "not an action-based timed state sequence");
  std::vector<Block> blocks;
  for (std::size_t i = 0; i < k.size(); i += 2)
    blocks.push_back({std::vector<Symbol>(k[i].props.begin(), k[i].props.end()), k[i].interval.lower()});
  return CompactTimedWord::validate(std::move(blocks));
}

/// All stutter-free timed words mapping to k, up to `limit` results.
inline std::vector<TimedWord> stutter_free_preimages(const TimedStateSequence& k, std::size_t limit = 10000) {
  CompactTimedWord base = from_action_based(k);
  std::vector<std::vector<Block>> partial{{}};
  for (const auto& b : base.blocks()) {
    std::vector<Symbol> perm = b.actions;  // sorted already
    std::vector<std::vector<Block>> next;
    do {
      for (const auto& p : partial) {
        if (next.size() >= limit) break;
        auto q = p;
        q.push_back({perm, b.time});
        next.push_back(std::move(q));
      }
    } while (next.size() < limit && std::next_permutation(perm.begin(), perm.end()));
    partial = std::move(next);
  }
  std::vector<TimedWord> out;
  for (auto& p : partial) out.push_back(uncompact(CompactTimedWord::validate(std::move(p))));
  return out;
}

/// Word position of action j inside block k.
inline std::size_t m_index(const CompactTimedWord& cw, std::size_t k, std::size_t j) {
  if (k >= cw.size() || j >= cw[k].actions.size())
    throw Error(ErrorKind::IndexOutOfRange, "block/position pair out of range");
  std::size_t pos = 0;  // = last index of block k-1, plus one
  for (std::size_t b = 0; b < k; ++b) pos += cw[b].actions.size();
  return pos + j;
}

/// (block, intra-block position) of word position i.
inline std::pair<std::size_t, std::size_t> m_inverse(const CompactTimedWord& cw, std::size_t i) {
  std::size_t acc = 0;
  for (std::size_t k = 0; k < cw.size(); ++k) {
    if (i < acc + cw[k].actions.size()) return {k, i - acc};
    acc += cw[k].actions.size();
  }
  throw Error(ErrorKind::IndexOutOfRange, "word position out of range", i);
}

/// Block whose timestamp is t; nullopt in a gap. Throws OutOfDomain past the end.
inline std::optional<std::size_t> ind(const CompactTimedWord& cw, const Rational& t) {
  if (t.is_negative() || cw.duration() < t) throw Error(ErrorKind::OutOfDomain, "time " + t.str() + " beyond duration");
  return cw.block_at(t);
}

}  // namespace mtlsem
