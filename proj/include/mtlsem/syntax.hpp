#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>

#include "mtlsem/error.hpp"
#include "mtlsem/formula.hpp"

namespace mtlsem {

struct ParseOptions {
  /// Accept the `beta` atom.
  bool allow_beta = false;
};

namespace detail {

// Recursive descent over the concrete grammar
//   impl  := or ('->' impl)?
//   or    := and ('|' and)*
//   and   := unary ('&' unary | 'U' iv? and)*     (U takes the rest of the level)
//   unary := '!' unary | ('F'|'G'|'X') iv? unary | '(' impl ')' | ident
class Parser {
 public:
  Parser(std::string_view text, const Alphabet& sigma, ParseOptions opts)
      : s_(text), sigma_(sigma), opts_(opts) {}

  Formula run() {
    Formula f = parse_impl();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& why) const { throw Error(ErrorKind::Syntax, why, pos_); }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(std::string_view tok) {
    skip_ws();
    if (s_.substr(pos_, tok.size()) != tok) return false;
    pos_ += tok.size();
    return true;
  }

  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

  std::string peek_ident() {
    skip_ws();
    std::size_t e = pos_;
    if (e < s_.size() && (std::isalpha(static_cast<unsigned char>(s_[e])) || s_[e] == '_'))
      while (e < s_.size() && ident_char(s_[e])) ++e;
    return std::string(s_.substr(pos_, e - pos_));
  }

  // An interval suffix starts with '[' or '(' immediately followed by a number.
  Interval maybe_interval() {
    skip_ws();
    if (pos_ >= s_.size() || (s_[pos_] != '[' && s_[pos_] != '(')) return Interval::unbounded();
    std::size_t q = pos_ + 1;
    while (q < s_.size() && s_[q] == ' ') ++q;
    if (q >= s_.size() || !(std::isdigit(static_cast<unsigned char>(s_[q])) || s_[q] == '.'))
      return Interval::unbounded();
    std::size_t close = s_.find_first_of("])", pos_ + 1);
    if (close == std::string_view::npos) fail("unterminated interval");
    std::size_t at = pos_;
    try {
      Interval i = Interval::parse(s_.substr(pos_, close - pos_ + 1));
      pos_ = close + 1;
      return i;
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::InvalidInterval) throw Error(ErrorKind::InvalidInterval, e.what(), at);
      throw Error(ErrorKind::Syntax, e.what(), at);
    }
  }

  Formula parse_impl() {
    Formula lhs = parse_or();
    if (eat("->")) return implies(lhs, parse_impl());
    return lhs;
  }

  Formula parse_or() {
    Formula acc = parse_and();
    for (;;) {
      skip_ws();
      if (pos_ < s_.size() && s_[pos_] == '|') {
        ++pos_;
        acc = disj(acc, parse_and());
      } else {
        return acc;
      }
    }
  }

  Formula parse_and() {
    Formula acc = parse_unary();
    for (;;) {
      if (eat("&")) {
        acc = conj(acc, parse_unary());
        continue;
      }
      if (peek_ident() == "U") {
        pos_ += 1;
        Interval i = maybe_interval();
        return until(acc, i, parse_and());
      }
      return acc;
    }
  }

  Formula parse_unary() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of formula");
    if (s_[pos_] == '!') {
      ++pos_;
      return neg(parse_unary());
    }
    if (s_[pos_] == '(') {
      ++pos_;
      Formula f = parse_impl();
      if (!eat(")")) fail("expected ')'");
      return f;
    }
    std::size_t at = pos_;
    std::string id = peek_ident();
    if (id.empty()) fail("expected a formula");
    pos_ += id.size();
    if (id == "F" || id == "G" || id == "X") {
      Interval i = maybe_interval();
      Formula body = parse_unary();
      if (id == "F") return eventually(i, body);
      if (id == "G") return globally(i, body);
      return next(i, body, sigma_);
    }
    if (id == "true") return top();
    if (id == "false") return bottom();
    if (id == "sigma") return mtlsem::sigma(sigma_);
    if (id == "noact") return noact(sigma_);
    if (id == "beta") {
      if (!opts_.allow_beta) throw Error(ErrorKind::BetaOutsideMtlBeta, "beta needs MTL-beta mode", at);
      return beta();
    }
    if (id == "U") {
      pos_ = at;
      fail("'U' needs a left operand");
    }
    if (!sigma_.contains(id)) throw Error(ErrorKind::UnknownAtom, "'" + id + "' is not in the alphabet", at);
    return atom(id);
  }

  std::string_view s_;
  const Alphabet& sigma_;
  ParseOptions opts_;
  std::size_t pos_ = 0;
};

enum Level { kImpl = 0, kOr = 1, kAnd = 2, kUnary = 3 };

struct Printed {
  std::string text;
  Level level;
  bool is_until = false;
};

class Printer {
 public:
  explicit Printer(const Alphabet* sigma) : sigma_(sigma) {
    if (sigma_ && sigma_->size() > 1) sig_ = mtlsem::sigma(*sigma_);
    else sigma_ = nullptr;  // a one-letter sigma is just that letter
  }

  Printed print(const Formula& f) const {
    if (sigma_ && f == sig_) return {"sigma", kUnary};
    switch (f.kind()) {
      case Kind::Atom: return {f.atom(), kUnary};
      case Kind::Beta: return {"beta", kUnary};
      case Kind::True: return {"true", kUnary};
      case Kind::And: {
        Printed l = print(f.left()), r = print(f.right());
        return {wrap(l, kAnd, true) + " & " + wrap(r, kUnary), kAnd};
      }
      case Kind::Until: {
        Formula l = f.left();
        if (l.kind() == Kind::True) return unary("F", f.interval(), f.right());
        if (sigma_ && l.kind() == Kind::Not && l.left() == sig_) return unary("X", f.interval(), f.right());
        return {wrap(print(l), kUnary) + " U" + suffix(f.interval()) + " " + wrap(print(f.right()), kUnary), kAnd,
                true};
      }
      case Kind::Not: return print_not(f);
    }
    return {"?", kUnary};
  }

 private:
  Printed print_not(const Formula& f) const {
    Formula x = f.left();
    if (x.kind() == Kind::True) return {"false", kUnary};
    // !(true U_I !y) is G_I y
    if (x.kind() == Kind::Until && x.left().kind() == Kind::True && x.right().kind() == Kind::Not)
      return unary("G", x.interval(), x.right().left());
    // !(!a & !b) is a | b, and (!a) | b is a -> b
    if (x.kind() == Kind::And && x.left().kind() == Kind::Not && x.right().kind() == Kind::Not) {
      Formula a = x.left().left(), b = x.right().left();
      if (a.kind() == Kind::Not)
        return {wrap(print(a.left()), kOr) + " -> " + wrap(print(b), kImpl), kImpl};
      return {wrap(print(a), kOr) + " | " + wrap(print(b), kAnd), kOr};
    }
    return {"!" + wrap(print(x), kUnary), kUnary};
  }

  Printed unary(const char* op, const Interval& i, const Formula& body) const {
    return {std::string(op) + suffix(i) + " " + wrap(print(body), kUnary), kUnary};
  }

  static std::string suffix(const Interval& i) { return i == Interval::unbounded() ? "" : i.str(); }

  static std::string wrap(const Printed& p, Level need, bool until_needs_parens = false) {
    if (p.level < need || (until_needs_parens && p.is_until)) return "(" + p.text + ")";
    return p.text;
  }

  const Alphabet* sigma_;
  Formula sig_;
};

}  // namespace detail

inline Formula parse(std::string_view text, const Alphabet& sigma, ParseOptions opts = {}) {
  return detail::Parser(text, sigma, opts).run();
}

/// Canonical concrete syntax. With an alphabet, its letter disjunction prints as `sigma`
/// and `X` is recognized.
inline std::string print(const Formula& f, const Alphabet* sigma = nullptr) {
  return detail::Printer(sigma).print(f).text;
}
inline std::string print(const Formula& f, const Alphabet& sigma) { return print(f, &sigma); }

}  // namespace mtlsem
