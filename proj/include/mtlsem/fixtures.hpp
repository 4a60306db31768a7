#pragma once

// Named reference structures and formulas, plus the replayable fixture checks.

#include <functional>
#include <string>
#include <vector>

#include "mtlsem/compilers.hpp"
#include "mtlsem/encodings.hpp"
#include "mtlsem/formula.hpp"
#include "mtlsem/interval_eval.hpp"
#include "mtlsem/mixed.hpp"
#include "mtlsem/pointwise.hpp"
#include "mtlsem/syntax.hpp"
#include "mtlsem/timed.hpp"

namespace mtlsem::fixtures {

inline Rational q(const char* s) { return Rational::parse(s); }

inline TimedWord word(std::initializer_list<std::pair<const char*, const char*>> ev, WordOptions opts = {}) {
  std::vector<Event> v;
  for (auto [a, t] : ev) v.push_back({a, q(t)});
  return TimedWord::validate(std::move(v), opts);
}

inline Alphabet abc() { return Alphabet(std::vector<Symbol>{"a", "b", "c"}); }
inline Alphabet ab() { return Alphabet(std::vector<Symbol>{"a", "b"}); }

inline TimedWord rho1() { return word({{"a", "0"}, {"b", "1"}, {"a", "1"}, {"c", "3.3"}}); }
inline TimedWord rho2() { return word({{"a", "0"}, {"a", "1"}, {"b", "1"}, {"c", "3.3"}}); }

inline CompactTimedWord rho1_compact() {
  return CompactTimedWord::validate({{{"a"}, q("0")}, {{"b", "a"}, q("1")}, {{"c"}, q("3.3")}});
}
inline CompactTimedWord rho2_compact() {
  return CompactTimedWord::validate({{{"a"}, q("0")}, {{"a", "b"}, q("1")}, {{"c"}, q("3.3")}});
}

inline TimedStateSequence kappa1() {
  return TimedStateSequence::validate({{{"a"}, Interval::punctual(0)},
                                       {{}, Interval::open(0, 1)},
                                       {{"a", "b"}, Interval::punctual(1)},
                                       {{}, Interval::open(1, q("3.3"))},
                                       {{"c"}, Interval::punctual(q("3.3"))}});
}

/// ({p},[1,2))({p,q},[2,3))({q},[3,3])({p},(3,3.4]); starts at 1.
inline TimedStateSequence kappa_pq() {
  return TimedStateSequence::validate({{{"p"}, Interval::closed_open(1, 2)},
                                       {{"p", "q"}, Interval::closed_open(2, 3)},
                                       {{"q"}, Interval::punctual(3)},
                                       {{"p"}, Interval::open_closed(3, q("3.4"))}},
                                      {false});
}

/// A lasso: prefix, then `action` every `step` time units, first one `step` after the prefix.
inline Lasso repeat_tail(TimedWord prefix, const char* action = "c", const char* step = "1") {
  Lasso l{std::move(prefix), {action}, {q(step)}, q(step)};
  l.validate();
  return l;
}

inline Formula zeta1(const Alphabet& s = abc()) { return parse("F(b & X[0,0] a)", s); }
inline Formula zeta2(const Alphabet& s = abc()) { return parse("F(0,1) F[0,3.5] c", s); }
inline Formula gamma2(const Alphabet& s = abc()) { return parse("F[0,1] (F[0,1) b & F[1,1] c)", s); }
inline Formula gamma3(const Alphabet& s = abc()) { return parse("F(0,1] (F[0,1) b & F[1,1] c)", s); }
inline Formula gamma4(const Alphabet& s = abc()) { return parse("G(0,2] !sigma", s); }
inline Formula gamma5(const Alphabet& s = abc()) { return disj(gamma3(s), conj(zeta1(s), gamma4(s))); }

/// No two consecutive a's at t, t' with an action inside [t+1, t'+1]; over {a,b}.
inline Formula phi_dp(const Alphabet& s = ab()) {
  return parse("!F(a & (!sigma U a) & (!a U (!a & F[1,1] (a | b))))", s);
}

/// No two distinct letters share a time point, now or later.
inline Formula phi_s(const Alphabet& s) {
  const auto& l = s.symbols();
  std::optional<Formula> any;
  for (std::size_t i = 0; i < l.size(); ++i)
    for (std::size_t j = i + 1; j < l.size(); ++j) {
      Formula pair = conj(atom(l[i]), atom(l[j]));
      any = any ? disj(*any, pair) : pair;
    }
  Formula none = any ? neg(*any) : top();
  return conj(none, globally(none));
}

struct Check {
  std::string id;
  std::string description;
  /// Part of the core verdict/encoding set.
  bool core;
  std::function<bool()> run;
};

namespace detail {

template <class F>
bool throws_kind(F&& f, ErrorKind k, std::optional<std::size_t> pos = std::nullopt) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind() == k && (!pos || e.position() == pos);
  }
  return false;
}

}  // namespace detail

inline std::vector<Check> all_checks() {
  using detail::throws_kind;
  const Alphabet s = abc();
  std::vector<Check> c;
  auto add = [&](std::string id, std::string d, bool core, std::function<bool()> f) {
    c.push_back({std::move(id), std::move(d), core, std::move(f)});
  };

  // encodings
  add("compact-rho1", "C(rho1) = ((a),0)((b,a),1)((c),3.3)", true, [] { return compact(rho1()) == rho1_compact(); });
  add("compact-rho2", "C(rho2) = ((a),0)((a,b),1)((c),3.3)", true, [] { return compact(rho2()) == rho2_compact(); });
  add("tss-rho1", "R(C(rho1)) = kappa1", true, [] { return to_tss(rho1_compact()) == kappa1(); });
  add("tss-rho2", "R(C(rho2)) = kappa1", true, [] { return to_tss(rho2_compact()) == kappa1(); });

  // pointwise vs interval-based on rho1, rho2
  add("pw-rho1-zeta1", "rho1 |=pw zeta1", true, [s] { return eval_pw(rho1(), 0, zeta1(s)); });
  add("itw-rho1-zeta1", "rho1 does not |=itw zeta1", true, [s] { return !eval_itw(rho1(), 0, zeta1(s)); });
  add("itw-rho1-zeta2", "rho1 |=itw zeta2", true, [s] { return eval_itw(rho1(), 0, zeta2(s)); });
  add("pw-rho1-zeta2", "rho1 does not |=pw zeta2", true, [s] { return !eval_pw(rho1(), 0, zeta2(s)); });
  add("pw-rho2-zeta1", "rho2 does not |=pw zeta1", true, [s] { return !eval_pw(rho2(), 0, zeta1(s)); });
  add("itw-rho1-F(a&b)", "rho1 |=itw F(a & b)", true, [s] { return eval_itw(rho1(), 0, parse("F(a & b)", s)); });
  add("itw-rho2-F(a&b)", "rho2 |=itw F(a & b)", true, [s] { return eval_itw(rho2(), 0, parse("F(a & b)", s)); });

  // mixed semantics
  add("mx-rho1-zeta1", "C(rho1),0,0 |=mx zeta1", true,
      [s] { return eval_mx(rho1_compact(), 0, 0, zeta1(s)); });
  add("mx-rho1-zeta2", "C(rho1),0,0 |=mx zeta2", true,
      [s] { return eval_mx(rho1_compact(), 0, 0, zeta2(s)); });
  add("mx-vs-itw-a-word", "(a,0)(a,.5)(c,.5)(c,1.5)(b,1.5): (a | noact) U[1,2] b holds under itw, not under mx",
      true, [s] {
        TimedWord w = word({{"a", "0"}, {"a", "0.5"}, {"c", "0.5"}, {"c", "1.5"}, {"b", "1.5"}});
        Formula f = parse("(a | noact) U[1,2] b", s);
        return eval_itw(w, 0, f) && !eval_mx(compact(w), 0, 0, f);
      });
  add("mx-vs-itw-c-word", "(c,0)(c,.5)(c,1.5)(b,1.5): (c | noact) U[1,2] (b & !c) holds under mx, not under itw",
      true, [s] {
        TimedWord w = word({{"c", "0"}, {"c", "0.5"}, {"c", "1.5"}, {"b", "1.5"}});
        Formula f = parse("(c | noact) U[1,2] (b & !c)", s);
        return eval_mx(compact(w), 0, 0, f) && !eval_itw(w, 0, f);
      });

  // timed words and state sequences
  add("word-raw-start", "(a,1)(b,1.3)(c,3.5)(b,3.5): length 4, duration 3.5 when a nonzero start is allowed", false, [] {
    TimedWord w = word({{"a", "1"}, {"b", "1.3"}, {"c", "3.5"}, {"b", "3.5"}}, {true});
    return w.size() == 4 && w.duration() == q("3.5") &&
           throws_kind([] { word({{"a", "1"}, {"b", "1.3"}, {"c", "3.5"}, {"b", "3.5"}}); },
                       ErrorKind::FirstTimestampNonZero);
  });
  add("word-non-monotone", "(a,1)(b,1.3)(c,1.2)(b,3.5) is rejected at position 2", false, [] {
    return throws_kind([] { word({{"a", "1"}, {"b", "1.3"}, {"c", "1.2"}, {"b", "3.5"}}, {true}); },
                       ErrorKind::NonMonotone, 2);
  });
  add("word-periodic-prefix", "alternating a/b, three per time unit: first 7 events", false, [] {
    Lasso l{word({{"a", "0"}, {"b", "0"}, {"a", "0"}}), {"b", "a", "b", "a", "b", "a"},
            {q("1"), q("1"), q("1"), q("2"), q("2"), q("2")}, q("2")};
    auto w = l.unroll_periods(1).events();
    w.resize(7);
    return TimedWord::validate(w) ==
           word({{"a", "0"}, {"b", "0"}, {"a", "0"}, {"b", "1"}, {"a", "1"}, {"b", "1"}, {"a", "2"}});
  });
  add("duration-rho1", "duration(rho1) = 33/10", false, [] { return rho1().duration() == Rational(33, 10); });
  add("stutter-1", "(a,0)(c,3) is strictly monotone and stutter free", false, [] {
    auto w = word({{"a", "0"}, {"c", "3"}});
    return w.is_strictly_monotone() && w.is_stutter_free();
  });
  add("stutter-2", "(a,0)(b,1)(a,1)(c,3) is stutter free, not strictly monotone", false, [] {
    auto w = word({{"a", "0"}, {"b", "1"}, {"a", "1"}, {"c", "3"}});
    return !w.is_strictly_monotone() && w.is_stutter_free();
  });
  add("stutter-3", "(a,0)(b,1)(a,1)(b,1)(c,3) is not stutter free", false,
      [] { return !word({{"a", "0"}, {"b", "1"}, {"a", "1"}, {"b", "1"}, {"c", "3"}}).is_stutter_free(); });
  add("tss-lookup", "kappa(1.2) = kappa(3.1) = {p}, kappa(2.2) = {p,q}, kappa(3) = {q}; length 4, duration 3.4",
      false, [] {
        auto k = kappa_pq();
        using S = std::set<Symbol>;
        return k.at(q("1.2")) == S{"p"} && k.at(q("3.1")) == S{"p"} && k.at(q("2.2")) == S{"p", "q"} &&
               k.at(q("3")) == S{"q"} && k.size() == 4 && k.duration() == q("3.4");
      });
  add("tss-adjacency", "({p},[1,2))({p,q},[2,3])({p},[3,3.4]) violates adjacency at step 2", false, [] {
    return throws_kind(
        [] {
          TimedStateSequence::validate({{{"p"}, Interval::closed_open(1, 2)},
                                        {{"p", "q"}, Interval::closed(2, 3)},
                                        {{"p"}, Interval::closed(3, q("3.4"))}},
                                       {false});
        },
        ErrorKind::AdjacencyViolation, 2);
  });
  add("ka-member", "({a},[0,0])(0,(0,1))({a,b},[1,1]) is action based", false, [] {
    return TimedStateSequence::validate({{{"a"}, Interval::punctual(0)},
                                         {{}, Interval::open(0, 1)},
                                         {{"a", "b"}, Interval::punctual(1)}})
        .is_action_based();
  });
  add("ka-non-member", "({a},[0,0])({a,b},(0,1))(0,[1,1]) and (0,[0,0])({b},(0,1))({a,b},[1,1]) are not", false, [] {
    auto k1 = TimedStateSequence::validate(
        {{{"a"}, Interval::punctual(0)}, {{"a", "b"}, Interval::open(0, 1)}, {{}, Interval::punctual(1)}});
    auto k2 = TimedStateSequence::validate(
        {{{}, Interval::punctual(0)}, {{"b"}, Interval::open(0, 1)}, {{"a", "b"}, Interval::punctual(1)}});
    return !k1.is_action_based() && !k2.is_action_based();
  });
  add("its-kappa-p", "kappa, 1.2 |=its p", false, [] {
    Alphabet pq(std::vector<Symbol>{"p", "q"});
    return eval_its(kappa_pq(), q("1.2"), parse("p", pq));
  });
  add("its-kappa1-zeta1", "kappa1 does not |=its zeta1", false, [s] { return !eval_its(kappa1(), 0, zeta1(s)); });
  add("compact-at", "C(rho1)(1) = (b,a)", false,
      [] { return compact_at(rho1_compact(), 1) == std::vector<Symbol>{"b", "a"}; });
  add("parse-zeta", "the concrete syntax of zeta1 and zeta2 denotes the intended trees", false, [s] {
    Formula z1 = eventually(conj(atom("b"), next(Interval::punctual(0), atom("a"), s)));
    Formula z2 = eventually(Interval::open(0, 1), eventually(Interval::closed(0, q("3.5")), atom("c")));
    return zeta1(s) == z1 && zeta2(s) == z2;
  });
  add("pcompile-atom", "pcompile(a) = a", false, [s] { return pcompile(atom("a"), s) == atom("a"); });
  add("icompile-atom", "icompile(a) = a | F[0,0] a", false,
      [s] { return icompile(atom("a"), s) == disj(atom("a"), eventually(Interval::punctual(0), atom("a"))); });

  // infinite words
  add("pw-lasso-rho", "rho1 then c every time unit |=pw zeta1", false,
      [s] { return eval_pw_lasso(repeat_tail(rho1()), zeta1(s)); });
  add("pw-lasso-rho-prime", "rho2 then c every time unit does not |=pw zeta1", false,
      [s] { return !eval_pw_lasso(repeat_tail(rho2()), zeta1(s)); });
  add("mx-lasso-gamma2-gamma3", "(a,0)(c,0)(b,0)(c,1)(c,3)... is in L(gamma2)_mx but not L(gamma3)_mx", false, [s] {
    Lasso l = repeat_tail(word({{"a", "0"}, {"c", "0"}, {"b", "0"}, {"c", "1"}, {"c", "3"}}));
    return eval_mx_lasso(l, gamma2(s)) == Verdict3::True && eval_mx_lasso(l, gamma3(s)) == Verdict3::False;
  });
  add("mx-lasso-gamma5", "C((c,0)(b,0)(a,0)(c,5)...) is in L(gamma5)_mx", false, [s] {
    Lasso l = repeat_tail(word({{"c", "0"}, {"b", "0"}, {"a", "0"}, {"c", "5"}}));
    return eval_mx_lasso(l, gamma5(s)) == Verdict3::True &&
           eval_mx_lasso(l, conj(zeta1(s), gamma4(s))) == Verdict3::True;
  });
  add("itw-lasso-gamma2", "(a,0)(b,1.5)(c,2) then c every time unit |=itw gamma2", false, [s] {
    return eval_itw_lasso(repeat_tail(word({{"a", "0"}, {"b", "1.5"}, {"c", "2"}})), gamma2(s)) == Verdict3::True;
  });
  return c;
}

}  // namespace mtlsem::fixtures
