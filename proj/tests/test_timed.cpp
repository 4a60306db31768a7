#include <gtest/gtest.h>

#include "mtlsem/fixtures.hpp"
#include "mtlsem/oracle.hpp"

using namespace mtlsem;
using fixtures::q;
using fixtures::word;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::InvariantViolation;
}

std::optional<std::size_t> position_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.position();
  }
  return std::nullopt;
}

}  // namespace

TEST(TimedWord, RawWordWithNonzeroStart) {
  auto make = [](WordOptions o) { return word({{"a", "1"}, {"b", "1.3"}, {"c", "3.5"}, {"b", "3.5"}}, o); };
  TimedWord w = make({true});
  EXPECT_EQ(w.size(), 4u);
  EXPECT_EQ(w.duration(), Rational(7, 2));
  EXPECT_EQ(kind_of([&] { make({}); }), ErrorKind::FirstTimestampNonZero);
}

TEST(TimedWord, NonMonotoneReportsPosition) {
  auto f = [] { word({{"a", "1"}, {"b", "1.3"}, {"c", "1.2"}, {"b", "3.5"}}, {true}); };
  EXPECT_EQ(kind_of(f), ErrorKind::NonMonotone);
  EXPECT_EQ(position_of(f), 2u);
}

TEST(TimedWord, EmptyIsRejected) {
  EXPECT_EQ(kind_of([] { TimedWord::validate({}); }), ErrorKind::Empty);
}

TEST(TimedWord, Duration) {
  EXPECT_EQ(fixtures::rho1().duration(), Rational(33, 10));
  EXPECT_EQ(word({{"a", "0"}}).duration(), Rational(0));
}

TEST(TimedWord, StutterAndMonotonicity) {
  auto w1 = word({{"a", "0"}, {"c", "3"}});
  EXPECT_TRUE(w1.is_strictly_monotone());
  EXPECT_TRUE(w1.is_stutter_free());
  auto w2 = word({{"a", "0"}, {"b", "1"}, {"a", "1"}, {"c", "3"}});
  EXPECT_TRUE(w2.is_stutter_free());
  EXPECT_FALSE(w2.is_strictly_monotone());
  auto w3 = word({{"a", "0"}, {"b", "1"}, {"a", "1"}, {"b", "1"}, {"c", "3"}});
  EXPECT_FALSE(w3.is_stutter_free());
}

TEST(TimedWord, StrictlyMonotoneImpliesStutterFree) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    TimedWord w = oracle::gen_word(seed, 8, 2);
    if (w.is_strictly_monotone()) {
      EXPECT_TRUE(w.is_stutter_free()) << w.str();
    }
  }
}

TEST(Mfs, Examples) {
  std::vector<Rational> t1{0, 1, 1, Rational(33, 10)};
  EXPECT_EQ(mfs_decompose(t1).boundaries, (std::vector<std::size_t>{0, 2, 3}));
  std::vector<Rational> t2{0, 1, 2};
  EXPECT_EQ(mfs_decompose(t2).boundaries, (std::vector<std::size_t>{0, 1, 2}));
  std::vector<Rational> t3{0, 0};
  EXPECT_EQ(mfs_decompose(t3).boundaries, (std::vector<std::size_t>{1}));
}

TEST(Mfs, RunsAreMaximalAndFlat) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    TimedWord w = oracle::gen_word(seed, 10, 2);
    auto ts = w.timestamps();
    MfsIndex idx = mfs_decompose(ts);
    std::vector<Rational> rebuilt;
    for (std::size_t k = 0; k < idx.count(); ++k) {
      for (std::size_t i = idx.start(k); i <= idx.boundaries[k]; ++i) {
        EXPECT_EQ(ts[i], ts[idx.start(k)]);
        rebuilt.push_back(ts[i]);
      }
      if (k > 0) {
        EXPECT_NE(ts[idx.start(k)], ts[idx.boundaries[k - 1]]);
        EXPECT_LT(idx.boundaries[k - 1], idx.boundaries[k]);
      }
    }
    EXPECT_EQ(rebuilt, ts);
    EXPECT_EQ(idx.boundaries.back(), ts.size() - 1);
  }
}

TEST(Tss, LookupExample) {
  auto k = fixtures::kappa_pq();
  EXPECT_EQ(k.at(q("1.2")), (std::set<Symbol>{"p"}));
  EXPECT_EQ(k.at(q("2.2")), (std::set<Symbol>{"p", "q"}));
  EXPECT_EQ(k.at(q("3")), (std::set<Symbol>{"q"}));
  EXPECT_EQ(k.at(q("3.1")), (std::set<Symbol>{"p"}));
  EXPECT_EQ(kind_of([&] { k.at(q("3.5")); }), ErrorKind::OutOfDomain);
  EXPECT_TRUE(fixtures::kappa1().at(Rational(1, 2)).empty());
}

TEST(Tss, AdjacencyViolation) {
  auto f = [] {
    TimedStateSequence::validate({{{"p"}, Interval::closed_open(1, 2)},
                                  {{"p", "q"}, Interval::closed(2, 3)},
                                  {{"p"}, Interval::closed(3, q("3.4"))}},
                                 {false});
  };
  EXPECT_EQ(kind_of(f), ErrorKind::AdjacencyViolation);
  EXPECT_EQ(position_of(f), 2u);
}

TEST(Tss, ZeroStartAndClosedEnd) {
  EXPECT_EQ(kind_of([] { TimedStateSequence::validate({{{"p"}, Interval::closed(1, 2)}}); }),
            ErrorKind::AdjacencyViolation);
  EXPECT_EQ(kind_of([] { TimedStateSequence::validate({{{"p"}, Interval::closed_open(0, 2)}}); }),
            ErrorKind::AdjacencyViolation);
}

TEST(Tss, ActionBasedExamples) {
  auto member = TimedStateSequence::validate(
      {{{"a"}, Interval::punctual(0)}, {{}, Interval::open(0, 1)}, {{"a", "b"}, Interval::punctual(1)}});
  EXPECT_TRUE(member.is_action_based());
  auto x = TimedStateSequence::validate(
      {{{"a"}, Interval::punctual(0)}, {{"a", "b"}, Interval::open(0, 1)}, {{}, Interval::punctual(1)}});
  EXPECT_FALSE(x.is_action_based());
  auto y = TimedStateSequence::validate(
      {{{}, Interval::punctual(0)}, {{"b"}, Interval::open(0, 1)}, {{"a", "b"}, Interval::punctual(1)}});
  EXPECT_FALSE(y.is_action_based());
}

TEST(Tss, GeneratedActionBasedHaveOddLength) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    auto k = oracle::gen_ka(seed);
    ASSERT_TRUE(k.is_action_based()) << k.str();
    EXPECT_EQ(k.size() % 2, 1u);
  }
}

TEST(Lasso, UnrollExamples) {
  Lasso l = fixtures::repeat_tail(fixtures::rho1());
  TimedWord w = l.unroll(6);
  ASSERT_EQ(w.size(), 6u);
  EXPECT_EQ(w[4], (Event{"c", q("4.3")}));
  EXPECT_EQ(w[5], (Event{"c", q("5.3")}));
  EXPECT_EQ(l.unroll(q("3.3")), fixtures::rho1());

  Lasso ab{word({{"a", "0"}}), {"a", "b"}, {q("1"), q("1.5")}, q("2")};
  EXPECT_EQ(ab.unroll(4).size(), 5u);
  EXPECT_EQ(ab.unroll_periods(2).size(), 5u);
}

TEST(Lasso, RejectsMalformedPeriods) {
  auto bad = [](std::vector<Symbol> a, std::vector<Rational> o, Rational d) {
    return [=] { Lasso{word({{"a", "0"}}), a, o, d}.validate(); };
  };
  EXPECT_EQ(kind_of(bad({"a"}, {0}, 0)), ErrorKind::InvalidLasso);
  EXPECT_EQ(kind_of(bad({}, {}, 1)), ErrorKind::InvalidLasso);
  EXPECT_EQ(kind_of(bad({"a", "b"}, {1, 0}, 2)), ErrorKind::InvalidLasso);
  EXPECT_EQ(kind_of(bad({"a", "b"}, {0, 1}, 1)), ErrorKind::InvalidLasso);
  EXPECT_EQ(kind_of(bad({"a"}, {2}, 1)), ErrorKind::InvalidLasso);
}

TEST(Lasso, UnrollIsPrefixConsistent) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    oracle::Generator g(seed);
    Lasso l = g.lasso();
    Rational h1 = l.prefix.duration() + Rational(static_cast<std::int64_t>(g.uniform(0, 12)), 4);
    Rational h2 = h1 + Rational(static_cast<std::int64_t>(g.uniform(0, 12)), 4);
    TimedWord w1 = l.unroll(h1), w2 = l.unroll(h2);
    std::vector<Event> cut;
    for (const auto& e : w2.events())
      if (!(h1 < e.time)) cut.push_back(e);
    EXPECT_EQ(cut, w1.events());
    for (const auto& e : w1.events()) EXPECT_LE(e.time, h1);
  }
}

TEST(CompactTimedWord, RequiresStrictlyIncreasingTimes) {
  EXPECT_EQ(kind_of([] { CompactTimedWord::validate({{{"a"}, 0}, {{"b"}, 0}}); }), ErrorKind::NonMonotone);
  EXPECT_EQ(kind_of([] { CompactTimedWord::validate({{{}, 0}}); }), ErrorKind::Empty);
}
