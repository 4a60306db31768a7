#pragma once

#include <algorithm>
#include <cctype>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "mtlsem/error.hpp"
#include "mtlsem/interval.hpp"
#include "mtlsem/timed.hpp"

namespace mtlsem {

/// Ordered, finite, non-empty set of action letters.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<Symbol> symbols) {
    for (auto& s : symbols)
      if (std::find(symbols_.begin(), symbols_.end(), s) == symbols_.end()) symbols_.push_back(std::move(s));
    if (symbols_.empty()) throw Error(ErrorKind::Empty, "alphabet must be non-empty");
    for (const auto& s : symbols_)
      if (is_reserved(s) || !is_identifier(s)) throw Error(ErrorKind::Syntax, "'" + s + "' cannot be an action name");
  }
  explicit Alphabet(const std::set<Symbol>& s) : Alphabet(std::vector<Symbol>(s.begin(), s.end())) {}

  const std::vector<Symbol>& symbols() const noexcept { return symbols_; }
  std::size_t size() const noexcept { return symbols_.size(); }
  bool contains(const Symbol& s) const { return std::find(symbols_.begin(), symbols_.end(), s) != symbols_.end(); }

  /// [A-Za-z_][A-Za-z0-9_]*; this also keeps the internal no-action sentinel out.
  static bool is_identifier(const std::string& s) {
    if (s.empty() || std::isdigit(static_cast<unsigned char>(s[0]))) return false;
    return std::all_of(s.begin(), s.end(), [](char c) {
      return c == '_' || (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9');
    });
  }

  static bool is_reserved(const std::string& s) {
    static const std::set<std::string> reserved{"true", "false", "sigma", "beta", "noact", "U", "F", "G", "X", "inf"};
    return reserved.count(s) > 0;
  }

  friend bool operator==(const Alphabet&, const Alphabet&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// Core node kinds. Every derived operator is stored through these.
enum class Kind { Atom, Beta, True, Not, And, Until };

class Formula;

struct Node {
  Kind kind;
  Symbol atom;                      // Atom only
  std::optional<Interval> interval;  // Until only
  std::shared_ptr<const Node> left;   // Not, And, Until
  std::shared_ptr<const Node> right;  // And, Until
};

/// Immutable MTL / MTL-with-beta formula with value semantics (shared subtrees).
class Formula {
 public:
  Formula() : node_(make(Node{Kind::True, {}, {}, nullptr, nullptr})) {}

  Kind kind() const noexcept { return node_->kind; }
  const Symbol& atom() const { return node_->atom; }
  const Interval& interval() const { return *node_->interval; }
  Formula left() const { return Formula(node_->left); }
  Formula right() const { return Formula(node_->right); }
  /// Stable identity for memoization tables.
  const Node* id() const noexcept { return node_.get(); }

  friend bool operator==(const Formula& a, const Formula& b) { return equal(a.node_.get(), b.node_.get()); }

  friend Formula atom(Symbol s);
  friend Formula beta();
  friend Formula top();
  friend Formula neg(const Formula& f);
  friend Formula conj(const Formula& f, const Formula& g);
  friend Formula until(const Formula& f, const Interval& i, const Formula& g);

 private:
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static std::shared_ptr<const Node> make(Node n) { return std::make_shared<const Node>(std::move(n)); }

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (!a || !b || a->kind != b->kind) return false;
    switch (a->kind) {
      case Kind::Atom: return a->atom == b->atom;
      case Kind::Beta:
      case Kind::True: return true;
      case Kind::Not: return equal(a->left.get(), b->left.get());
      case Kind::And: return equal(a->left.get(), b->left.get()) && equal(a->right.get(), b->right.get());
      case Kind::Until:
        return *a->interval == *b->interval && equal(a->left.get(), b->left.get()) &&
               equal(a->right.get(), b->right.get());
    }
    return false;
  }

  std::shared_ptr<const Node> node_;
};

inline Formula atom(Symbol s) { return Formula(Formula::make(Node{Kind::Atom, std::move(s), {}, nullptr, nullptr})); }
inline Formula beta() { return Formula(Formula::make(Node{Kind::Beta, {}, {}, nullptr, nullptr})); }
inline Formula top() { return Formula(Formula::make(Node{Kind::True, {}, {}, nullptr, nullptr})); }
inline Formula neg(const Formula& f) { return Formula(Formula::make(Node{Kind::Not, {}, {}, f.node_, nullptr})); }
inline Formula conj(const Formula& f, const Formula& g) {
  return Formula(Formula::make(Node{Kind::And, {}, {}, f.node_, g.node_}));
}
/// Strict timed until.
inline Formula until(const Formula& f, const Interval& i, const Formula& g) {
  if (i.lower().is_negative()) throw Error(ErrorKind::InvalidInterval, "until interval must be nonnegative");
  return Formula(Formula::make(Node{Kind::Until, {}, i, f.node_, g.node_}));
}

inline Formula bottom() { return neg(top()); }
inline Formula disj(const Formula& f, const Formula& g) { return neg(conj(neg(f), neg(g))); }
inline Formula implies(const Formula& f, const Formula& g) { return disj(neg(f), g); }
inline Formula eventually(const Interval& i, const Formula& f) { return until(top(), i, f); }
inline Formula eventually(const Formula& f) { return eventually(Interval::unbounded(), f); }
inline Formula globally(const Interval& i, const Formula& f) { return neg(eventually(i, neg(f))); }
inline Formula globally(const Formula& f) { return globally(Interval::unbounded(), f); }

/// Disjunction of every letter, folded left: ((a | b) | c).
inline Formula sigma(const Alphabet& s) {
  Formula f = atom(s.symbols().front());
  for (std::size_t i = 1; i < s.size(); ++i) f = disj(f, atom(s.symbols()[i]));
  return f;
}
inline Formula noact(const Alphabet& s) { return neg(sigma(s)); }
/// X_I f, i.e. (no action) U_I f.
inline Formula next(const Interval& i, const Formula& f, const Alphabet& s) { return until(noact(s), i, f); }

// ---- structural metrics ----

/// Sup of the lookahead needed to decide the formula; nullopt means unbounded.
inline std::optional<Rational> horizon(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Beta:
    case Kind::True: return Rational(0);
    case Kind::Not: return horizon(f.left());
    case Kind::And: {
      auto a = horizon(f.left()), b = horizon(f.right());
      if (!a || !b) return std::nullopt;
      return std::max(*a, *b);
    }
    case Kind::Until: {
      if (!f.interval().bounded()) return std::nullopt;
      auto a = horizon(f.left()), b = horizon(f.right());
      if (!a || !b) return std::nullopt;
      return *f.interval().hi().value + std::max(*a, *b);
    }
  }
  return std::nullopt;
}

inline bool is_bounded(const Formula& f) { return horizon(f).has_value(); }

inline bool uses_beta(const Formula& f) {
  switch (f.kind()) {
    case Kind::Beta: return true;
    case Kind::Atom:
    case Kind::True: return false;
    case Kind::Not: return uses_beta(f.left());
    case Kind::And:
    case Kind::Until: return uses_beta(f.left()) || uses_beta(f.right());
  }
  return false;
}

/// Nesting depth of Until nodes.
inline std::size_t temporal_depth(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Beta:
    case Kind::True: return 0;
    case Kind::Not: return temporal_depth(f.left());
    case Kind::And: return std::max(temporal_depth(f.left()), temporal_depth(f.right()));
    case Kind::Until: return 1 + std::max(temporal_depth(f.left()), temporal_depth(f.right()));
  }
  return 0;
}

inline std::size_t node_count(const Formula& f) {
  switch (f.kind()) {
    case Kind::Atom:
    case Kind::Beta:
    case Kind::True: return 1;
    case Kind::Not: return 1 + node_count(f.left());
    case Kind::And:
    case Kind::Until: return 1 + node_count(f.left()) + node_count(f.right());
  }
  return 0;
}

/// Every finite interval bound value occurring in the formula.
inline std::set<Rational> interval_bounds(const Formula& f) {
  std::set<Rational> out;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    switch (g.kind()) {
      case Kind::Atom:
      case Kind::Beta:
      case Kind::True: return;
      case Kind::Not: walk(g.left()); return;
      case Kind::Until:
        out.insert(g.interval().lower());
        if (g.interval().bounded()) out.insert(*g.interval().hi().value);
        [[fallthrough]];
      case Kind::And:
        walk(g.left());
        walk(g.right());
        return;
    }
  };
  walk(f);
  return out;
}

/// Post-order list of distinct subformulas (children before parents).
inline std::vector<Formula> subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::set<const Node*> seen;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (seen.count(g.id())) return;
    if (g.kind() == Kind::Not) walk(g.left());
    if (g.kind() == Kind::And || g.kind() == Kind::Until) {
      walk(g.left());
      walk(g.right());
    }
    seen.insert(g.id());
    out.push_back(g);
  };
  walk(f);
  return out;
}

}  // namespace mtlsem
