#include <gtest/gtest.h>

#include "mtlsem/fixtures.hpp"
#include "mtlsem/oracle.hpp"

using namespace mtlsem;
using fixtures::abc;
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

std::vector<Rational> qs(std::initializer_list<const char*> v) {
  std::vector<Rational> out;
  for (const char* s : v) out.push_back(q(s));
  return out;
}

}  // namespace

TEST(CriticalPoints, Rho1Zeta2) {
  // seeds {0,1,3.3}, shifts by 1 and 3.5, two rounds, clipped to [0,3.3]
  auto cp = oracle::critical_points(fixtures::rho1(), fixtures::zeta2());
  EXPECT_EQ(cp.points, qs({"0", "1", "1.3", "2", "2.3", "3", "3.3"}));
  EXPECT_EQ(cp.midpoints, qs({"0.5", "1.15", "1.65", "2.15", "2.65", "3.15"}));
  EXPECT_EQ(cp.all().size(), 13u);
}

TEST(CriticalPoints, AtomsAndSingletons) {
  auto cp = oracle::critical_points(fixtures::rho1(), atom("a"));
  EXPECT_EQ(cp.points, qs({"0", "1", "3.3"}));
  EXPECT_EQ(cp.all(), qs({"0", "0.5", "1", "2.15", "3.3"}));
  auto single = oracle::critical_points(word({{"a", "0"}}), fixtures::zeta2());
  EXPECT_EQ(single.points, qs({"0"}));
  EXPECT_TRUE(single.midpoints.empty());
}

TEST(CriticalPoints, ClosedUnderBoundsWithinTheDomain) {
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    oracle::Generator g(seed);
    TimedWord w = g.word();
    oracle::FormulaShape shape;
    shape.max_depth = 2;
    Formula f = g.formula(shape);
    auto cp = oracle::critical_points(w, f);
    std::set<Rational> pts(cp.points.begin(), cp.points.end());
    for (const Rational& t : w.timestamps()) EXPECT_TRUE(pts.count(t));
    EXPECT_TRUE(std::is_sorted(cp.points.begin(), cp.points.end()));
    for (const Rational& t : cp.points) EXPECT_FALSE(t.is_negative() || w.duration() < t);
  }
}

TEST(Oracle, FixtureVerdicts) {
  const Alphabet s = abc();
  EXPECT_TRUE(oracle::oracle_eval_pw(fixtures::rho1(), 0, fixtures::zeta1(s)));
  EXPECT_FALSE(oracle::oracle_eval_pw(fixtures::rho2(), 0, fixtures::zeta1(s)));
  EXPECT_FALSE(oracle::oracle_eval_pw(fixtures::rho1(), 0, fixtures::zeta2(s)));
  EXPECT_TRUE(oracle::oracle_eval_itw(fixtures::rho1(), 0, fixtures::zeta2(s)));
  EXPECT_FALSE(oracle::oracle_eval_itw(fixtures::rho1(), 0, fixtures::zeta1(s)));
  EXPECT_FALSE(oracle::oracle_eval_its(fixtures::kappa1(), 0, fixtures::zeta1(s)));
  EXPECT_TRUE(oracle::oracle_eval_mx(fixtures::rho1_compact(), 0, 0, fixtures::zeta1(s)));
  EXPECT_TRUE(oracle::oracle_eval_mx(fixtures::rho1_compact(), 0, 0, fixtures::zeta2(s)));

  auto w1 = word({{"a", "0"}, {"a", "0.5"}, {"c", "0.5"}, {"c", "1.5"}, {"b", "1.5"}});
  Formula f1 = parse("(a | noact) U[1,2] b", s);
  EXPECT_FALSE(oracle::oracle_eval_mx(compact(w1), 0, 0, f1));
  EXPECT_TRUE(oracle::oracle_eval_itw(w1, 0, f1));
}

TEST(Oracle, PointwiseLassoExamples) {
  const Alphabet s = abc();
  Lasso l = fixtures::repeat_tail(fixtures::rho1());
  EXPECT_TRUE(oracle::oracle_eval_pw_lasso(l, fixtures::zeta1(s)));
  EXPECT_FALSE(oracle::oracle_eval_pw_lasso(fixtures::repeat_tail(fixtures::rho2()), fixtures::zeta1(s)));
  EXPECT_TRUE(oracle::oracle_eval_pw_lasso(l, parse("G F c", s)));
  EXPECT_FALSE(oracle::oracle_eval_pw_lasso(l, parse("G(c -> X(1,inf) c)", s)));
}

TEST(Oracle, GridVerdictsHoldAcrossEachCell) {
  // a midpoint stands for its whole open cell
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    oracle::Generator g(seed);
    TimedWord w = g.word();
    Formula f = g.formula();
    auto cp = oracle::critical_points(w, f);
    IntervalSet set = sat_set_itw(w, f);
    for (std::size_t i = 0; i < cp.midpoints.size(); ++i) {
      const Rational& lo = cp.points[i];
      const Rational& hi = cp.points[i + 1];
      Rational x = lo + (hi - lo) * Rational(static_cast<std::int64_t>(g.uniform(1, 9)), 10);
      ASSERT_EQ(set.contains(x), set.contains(cp.midpoints[i])) << print(f, g.alphabet()) << " x=" << x;
      ASSERT_EQ(oracle::oracle_eval_itw(w, x, f), set.contains(x)) << print(f, g.alphabet()) << " x=" << x;
    }
  }
}

TEST(Oracle, Errors) {
  auto cw = fixtures::rho1_compact();
  EXPECT_EQ(kind_of([] { oracle::oracle_eval_itw(fixtures::rho1(), 4, atom("a")); }), ErrorKind::OutOfDomain);
  EXPECT_EQ(kind_of([] { oracle::oracle_eval_its(fixtures::kappa_pq(), q("0.5"), atom("p")); }), ErrorKind::OutOfDomain);
  EXPECT_EQ(kind_of([&] { oracle::oracle_eval_mx(cw, -1, 0, atom("a")); }), ErrorKind::OutOfDomain);
  EXPECT_EQ(kind_of([&] { oracle::oracle_eval_mx(cw, 1, 2, atom("a")); }), ErrorKind::PositionOutOfRange);
  EXPECT_EQ(kind_of([] { oracle::oracle_eval_pw(fixtures::rho1(), 4, atom("a")); }), ErrorKind::PositionOutOfRange);
  EXPECT_EQ(kind_of([] { oracle::oracle_eval_itw(fixtures::rho1(), 0, beta()); }), ErrorKind::BetaNotInItw);
  EXPECT_EQ(kind_of([] { oracle::oracle_eval_pw(fixtures::rho1(), 0, beta()); }), ErrorKind::BetaNotInPw);
}

TEST(Generator, Deterministic) {
  for (std::uint64_t seed : {0u, 1u, 7u, 12345u}) {
    EXPECT_EQ(oracle::gen_word(seed, 8, 2), oracle::gen_word(seed, 8, 2));
    EXPECT_EQ(oracle::gen_formula(seed, abc(), 4, false), oracle::gen_formula(seed, abc(), 4, false));
    EXPECT_EQ(oracle::gen_ka(seed).str(), oracle::gen_ka(seed).str());
    EXPECT_EQ(oracle::Generator(seed).lasso().prefix, oracle::Generator(seed).lasso().prefix);
  }
  // different seeds do not all collapse to one word
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 50; ++seed) seen.insert(oracle::gen_word(seed, 8, 2).str());
  EXPECT_GT(seen.size(), 40u);
}

TEST(Generator, OutputsAreValid) {
  for (std::uint64_t seed = 0; seed < 500; ++seed) {
    TimedWord w = oracle::gen_word(seed, 8, 2);
    EXPECT_GE(w.size(), 1u);
    EXPECT_LE(w.size(), 8u);
    EXPECT_EQ(w.time(0), Rational(0));
    for (const Rational& t : w.timestamps()) EXPECT_EQ((t * Rational(2)).den(), 1);
    EXPECT_TRUE(oracle::gen_ka(seed).is_action_based());
    EXPECT_TRUE(is_bounded(oracle::gen_formula(seed, abc(), 3, true)));
    EXPECT_LE(temporal_depth(oracle::gen_formula(seed, abc(), 3, false)), 3u);
    oracle::Generator g(seed);
    EXPECT_TRUE(g.stutter_free_word().is_stutter_free());
    EXPECT_NO_THROW(g.lasso().validate());
    EXPECT_FALSE(uses_beta(g.formula()));
  }
}
