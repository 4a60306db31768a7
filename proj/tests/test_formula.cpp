#include <gtest/gtest.h>

#include "mtlsem/fixtures.hpp"
#include "mtlsem/oracle.hpp"

using namespace mtlsem;
using fixtures::abc;
using fixtures::q;

namespace {

Error error_of(std::string_view text, ParseOptions opts = {}) {
  try {
    parse(text, abc(), opts);
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "parsed: " << text;
  return Error(ErrorKind::InvariantViolation, "none");
}

}  // namespace

TEST(Alphabet, RejectsReservedAndEmpty) {
  for (std::vector<Symbol> bad : std::vector<std::vector<Symbol>>{{"beta"}, {"a", "U"}, {"1a"}, {"⊢"}, {"sigma"}}) {
    try {
      Alphabet a(bad);
      ADD_FAILURE() << bad.size();
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::Syntax);
    }
  }
  try {
    Alphabet a(std::vector<Symbol>{});
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Empty);
  }
  EXPECT_EQ(Alphabet(std::vector<Symbol>{"a", "b", "a"}).size(), 2u);
}

TEST(Parse, FixtureFormulas) {
  Formula a = atom("a"), b = atom("b"), c = atom("c");
  Formula x00 = until(neg(disj(disj(a, b), c)), Interval::punctual(0), a);
  EXPECT_EQ(parse("F(b & X[0,0] a)", abc()), eventually(conj(b, x00)));
  EXPECT_EQ(parse("F(0,1) F[0,3.5] c", abc()),
            eventually(Interval::open(0, 1), eventually(Interval::closed(0, Rational(7, 2)), c)));
  EXPECT_EQ(parse("sigma", abc()), disj(disj(a, b), c));
  EXPECT_EQ(parse("noact", abc()), neg(disj(disj(a, b), c)));
}

TEST(Parse, DefaultIntervalIsUnbounded) {
  auto f = parse("a U b", abc());
  ASSERT_EQ(f.kind(), Kind::Until);
  EXPECT_EQ(f.interval(), Interval::unbounded());
  EXPECT_EQ(parse("F a", abc()).interval(), Interval::unbounded());
}

TEST(Parse, PrecedenceAndAssociativity) {
  Formula a = atom("a"), b = atom("b"), c = atom("c");
  EXPECT_EQ(parse("!a & b | c", abc()), disj(conj(neg(a), b), c));
  EXPECT_EQ(parse("a -> b -> c", abc()), implies(a, implies(b, c)));
  EXPECT_EQ(parse("a U b U c", abc()), until(a, Interval::unbounded(), until(b, Interval::unbounded(), c)));
  EXPECT_EQ(parse("a & b U(1,2] c", abc()), until(conj(a, b), Interval::open_closed(1, 2), c));
  EXPECT_EQ(parse("(a) U [1,2] (b)", abc()), until(a, Interval::closed(1, 2), b));
  EXPECT_EQ(parse("true & false", abc()), conj(top(), bottom()));
}

TEST(Parse, Errors) {
  Error e = error_of("a & ");
  EXPECT_EQ(e.kind(), ErrorKind::Syntax);
  EXPECT_EQ(e.position(), 4u);

  e = error_of("a & d");
  EXPECT_EQ(e.kind(), ErrorKind::UnknownAtom);
  EXPECT_EQ(e.position(), 4u);

  e = error_of("F beta");
  EXPECT_EQ(e.kind(), ErrorKind::BetaOutsideMtlBeta);
  EXPECT_EQ(e.position(), 2u);
  EXPECT_EQ(parse("F beta", abc(), {true}), eventually(beta()));

  e = error_of("a U[2,1] b");
  EXPECT_EQ(e.kind(), ErrorKind::InvalidInterval);
  EXPECT_EQ(e.position(), 3u);

  EXPECT_EQ(error_of("(a & b").kind(), ErrorKind::Syntax);
  EXPECT_EQ(error_of("a b").kind(), ErrorKind::Syntax);
  EXPECT_EQ(error_of("U b").kind(), ErrorKind::Syntax);
}

TEST(Print, FixtureRoundTrips) {
  for (const Formula& f : {fixtures::zeta1(), fixtures::zeta2(), fixtures::gamma2(), fixtures::gamma5()}) {
    std::string text = print(f, abc());
    EXPECT_EQ(parse(text, abc()), f) << text;
  }
  EXPECT_EQ(print(fixtures::zeta1(), abc()), "F (b & X[0,0] a)");
  EXPECT_EQ(print(fixtures::zeta2(), abc()), "F(0,1) F[0,3.5] c");
}

TEST(Print, FuzzedRoundTrips) {
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    oracle::Generator g(seed);
    oracle::FormulaShape s;
    s.max_depth = 6;
    Formula f = g.formula(s, seed % 2 == 1);
    std::string text = print(f, g.alphabet());
    Formula back = parse(text, g.alphabet(), {true});
    ASSERT_EQ(back, f) << text;
    // without the alphabet the printer must not invent sugar
    EXPECT_EQ(parse(print(f), g.alphabet(), {true}), f);
  }
}

TEST(Metrics, Horizon) {
  EXPECT_EQ(horizon(fixtures::zeta2()), Rational(9, 2));
  EXPECT_EQ(horizon(atom("a")), Rational(0));
  EXPECT_FALSE(horizon(fixtures::zeta1()).has_value());
  EXPECT_TRUE(is_bounded(fixtures::gamma2()));
  EXPECT_FALSE(is_bounded(fixtures::zeta1()));
  EXPECT_EQ(horizon(parse("F[0,1] a & F[0,2] b", abc())), Rational(2));
  EXPECT_EQ(horizon(parse("(F[0,1] a) U[1,3] b", abc())), Rational(4));
}

TEST(Metrics, BetaUsageAndDepth) {
  EXPECT_FALSE(uses_beta(fixtures::zeta1()));
  EXPECT_TRUE(uses_beta(icompile(fixtures::zeta1(), abc())));
  EXPECT_FALSE(uses_beta(icompile(parse("a & !b", abc()), abc())));
  EXPECT_EQ(temporal_depth(fixtures::zeta2()), 2u);
  EXPECT_EQ(temporal_depth(atom("a")), 0u);
  EXPECT_EQ(interval_bounds(fixtures::zeta2()), (std::set<Rational>{0, 1, Rational(7, 2)}));
}

TEST(Metrics, SubformulasArePostOrder) {
  Formula f = parse("a & (a U b)", abc());
  auto subs = subformulas(f);
  ASSERT_FALSE(subs.empty());
  EXPECT_EQ(subs.back(), f);
  for (std::size_t i = 0; i < subs.size(); ++i) {
    const Formula& g = subs[i];
    auto before = [&](const Formula& h) {
      for (std::size_t k = 0; k < i; ++k)
        if (subs[k].id() == h.id()) return true;
      return false;
    };
    if (g.kind() == Kind::Not) {
      EXPECT_TRUE(before(g.left()));
    }
    if (g.kind() == Kind::And || g.kind() == Kind::Until) {
      EXPECT_TRUE(before(g.left()));
      EXPECT_TRUE(before(g.right()));
    }
  }
}

TEST(Desugar, DerivedOperatorsMatchTheirDefinitions) {
  const Alphabet s = abc();
  for (std::uint64_t seed = 0; seed < 300; ++seed) {
    oracle::Generator g(seed);
    oracle::FormulaShape shape;
    shape.max_depth = 2;
    Formula f = g.formula(shape);
    Interval i = g.interval(shape);
    TimedWord w = g.word();
    CompactTimedWord cw = compact(w);
    struct Pair {
      Formula sugar, core;
    };
    Formula nf = neg(f);
    std::vector<Pair> pairs{
        {eventually(i, f), until(top(), i, f)},
        {globally(i, f), neg(until(top(), i, nf))},
        {next(i, f, s), until(neg(disj(disj(atom("a"), atom("b")), atom("c"))), i, f)},
        {disj(f, atom("a")), neg(conj(nf, neg(atom("a"))))},
    };
    for (const auto& p : pairs) {
      EXPECT_EQ(sat_positions(w, p.sugar), sat_positions(w, p.core));
      EXPECT_EQ(sat_set_itw(w, p.sugar), sat_set_itw(w, p.core));
      EXPECT_EQ(sat_set_mx(cw, p.sugar), sat_set_mx(cw, p.core));
    }
    // the concrete syntax builds the same trees
    std::string body = "(" + print(f, s) + ")";
    EXPECT_EQ(parse("F" + i.str() + " " + body, s), eventually(i, f));
    EXPECT_EQ(parse("G" + i.str() + " " + body, s), globally(i, f));
    EXPECT_EQ(parse("X" + i.str() + " " + body, s), next(i, f, s));
  }
}
