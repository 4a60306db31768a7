#pragma once

#include "mtlsem/error.hpp"
#include "mtlsem/formula.hpp"

namespace mtlsem {

namespace detail {

// The compilers are defined on the core grammar, where true is itself derived
// (a | !a for the first letter); unfold it first.
inline Formula unfold_true(const Alphabet& sigma) {
  Formula a = atom(sigma.symbols().front());
  return disj(a, neg(a));
}

}  // namespace detail

/// Pointwise-preserving compilation into MTL read under the mixed semantics.
inline Formula pcompile(const Formula& f, const Alphabet& sigma) {
  const Formula s = mtlsem::sigma(sigma);
  switch (f.kind()) {
    case Kind::Beta: throw Error(ErrorKind::BetaNotInPw, "beta cannot be compiled");
    case Kind::True: return pcompile(detail::unfold_true(sigma), sigma);
    case Kind::Atom: return f;
    case Kind::Not: return conj(s, neg(pcompile(f.left(), sigma)));
    case Kind::And: return conj(conj(s, pcompile(f.left(), sigma)), pcompile(f.right(), sigma));
    case Kind::Until:
      return conj(s, until(disj(pcompile(f.left(), sigma), neg(s)), f.interval(),
                           conj(pcompile(f.right(), sigma), s)));
  }
  return f;
}

/// Interval-preserving compilation into MTL-beta read under the mixed semantics.
inline Formula icompile(const Formula& f, const Alphabet& sigma) {
  switch (f.kind()) {
    case Kind::Beta: throw Error(ErrorKind::BetaNotInPw, "beta cannot be compiled");
    case Kind::True: return icompile(detail::unfold_true(sigma), sigma);
    case Kind::Atom: return disj(f, eventually(Interval::punctual(0), f));
    case Kind::Not: return neg(icompile(f.left(), sigma));
    case Kind::And: return conj(icompile(f.left(), sigma), icompile(f.right(), sigma));
    case Kind::Until:
      return until(implies(beta(), icompile(f.left(), sigma)), f.interval(),
                   conj(beta(), icompile(f.right(), sigma)));
  }
  return f;
}

}  // namespace mtlsem
