// mtlsem: command-line front end.
//
// Exit codes: 0 true/success, 1 false, 2 unknown, 3 input error, 4 internal failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "json_io.hpp"
#include "mtlsem/fixtures.hpp"
#include "mtlsem/mtlsem.hpp"
#include "mtlsem/oracle.hpp"

using namespace mtlsem;
using nlohmann::json;

namespace {

enum Exit { kTrue = 0, kFalse = 1, kUnknown = 2, kInput = 3, kInternal = 4 };

struct Options {
  std::string formula, formula_file;
  std::string alphabet;
  std::string word, tss, compact;
  std::string semantics = "pw";
  std::string time = "0";
  std::optional<std::size_t> pos, position;
  std::optional<std::string> horizon;
  std::size_t max_unroll = 3;
  bool allow_beta = false;
  bool pretty = false;
  std::string target, to, id;
  std::size_t cases = 200;
  std::uint64_t seed = 0;
  bool all = false;
};

Options opt;

class Usage : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string formula_text() {
  if (!opt.formula.empty()) return opt.formula;
  if (!opt.formula_file.empty()) {
    std::ifstream in(opt.formula_file);
    if (!in) throw Usage("cannot open " + opt.formula_file);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }
  throw Usage("a formula is required (--formula or --formula-file)");
}

std::optional<json> structure() {
  int given = !opt.word.empty() + !opt.tss.empty() + !opt.compact.empty();
  if (given > 1) throw Usage("give at most one of --word/--lasso, --tss, --compact");
  if (!opt.word.empty()) return io::read_json(opt.word);
  if (!opt.tss.empty()) return io::read_json(opt.tss);
  if (!opt.compact.empty()) return io::read_json(opt.compact);
  return std::nullopt;
}

// --alphabet wins; otherwise letters of the input plus identifiers in the formula.
Alphabet alphabet(const std::optional<json>& input, const std::string& text) {
  std::vector<Symbol> letters;
  if (!opt.alphabet.empty()) {
    std::stringstream ss(opt.alphabet);
    for (std::string s; std::getline(ss, s, ',');)
      if (!s.empty()) letters.push_back(s);
    return Alphabet(letters);
  }
  std::set<Symbol> found;
  if (input) found = io::letters(*input);
  static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
  for (auto it = std::sregex_iterator(text.begin(), text.end(), ident); it != std::sregex_iterator(); ++it)
    if (!Alphabet::is_reserved(it->str())) found.insert(it->str());
  if (found.empty()) throw Usage("cannot infer an alphabet; pass --alphabet");
  return Alphabet(found);
}

void emit(const json& j, const std::string& human) {
  if (opt.pretty)
    std::cout << human << "\n";
  else
    std::cout << j.dump() << "\n";
}

int emit_verdict(Verdict3 v) {
  json j = {{"verdict", v == Verdict3::Unknown ? json("unknown") : json(v == Verdict3::True)}};
  emit(j, to_string(v));
  return v == Verdict3::True ? kTrue : v == Verdict3::False ? kFalse : kUnknown;
}

int emit_verdict(bool v) { return emit_verdict(v ? Verdict3::True : Verdict3::False); }

LassoOptions lasso_options() {
  LassoOptions o;
  o.extra_periods = opt.max_unroll;
  if (opt.horizon) o.horizon = Rational::parse(*opt.horizon);
  return o;
}

std::size_t word_position() { return opt.position ? *opt.position : opt.pos.value_or(0); }

int cmd_parse() {
  std::string text = formula_text();
  Alphabet s = alphabet(structure(), text);
  Formula f = parse(text, s, {opt.allow_beta});
  auto h = horizon(f);
  json j = {{"formula", print(f, s)},
            {"alphabet", s.symbols()},
            {"horizon", h ? json(h->decimal_str()) : json(nullptr)},
            {"bounded", is_bounded(f)},
            {"temporal_depth", temporal_depth(f)},
            {"nodes", node_count(f)},
            {"uses_beta", uses_beta(f)}};
  emit(j, print(f, s));
  return kTrue;
}

int eval_with(bool use_oracle) {
  std::string text = formula_text();
  auto input = structure();
  if (!input) throw Usage("an input structure is required (--word, --lasso, --tss or --compact)");
  Alphabet s = alphabet(input, text);
  Formula f = parse(text, s, {opt.semantics == "mx"});
  const Rational t = Rational::parse(opt.time);
  const std::string& sem = opt.semantics;

  if (io::is_lasso(*input)) {
    Lasso l = io::lasso_from(*input);
    if (!t.is_zero()) throw Usage("lasso verdicts are given at time 0");
    if (sem == "pw")
      return emit_verdict(use_oracle ? oracle::oracle_eval_pw_lasso(l, f, word_position())
                                     : eval_pw_lasso(l, f, word_position()));
    if (use_oracle) throw Usage("the oracle evaluates lassos only under pw");
    if (sem == "itw") return emit_verdict(eval_itw_lasso(l, f, lasso_options()));
    if (sem == "mx") return emit_verdict(eval_mx_lasso(l, f, lasso_options()));
    throw Usage("semantics " + sem + " does not take a lasso");
  }

  if (!opt.tss.empty()) {
    if (sem != "its") throw Usage("a timed state sequence is evaluated under its");
    TimedStateSequence k = io::tss_from(*input);
    return emit_verdict(use_oracle ? oracle::oracle_eval_its(k, t, f) : eval_its(k, t, f));
  }

  CompactTimedWord cw = opt.compact.empty() ? compact(io::word_from(*input)) : io::compact_from(*input);
  TimedWord w = uncompact(cw);
  if (sem == "pw") {
    std::size_t i = word_position();
    return emit_verdict(use_oracle ? oracle::oracle_eval_pw(w, i, f) : eval_pw(w, i, f));
  }
  if (sem == "itw") return emit_verdict(use_oracle ? oracle::oracle_eval_itw(w, t, f) : eval_itw(w, t, f));
  if (sem == "its") {
    TimedStateSequence k = to_tss(cw);
    return emit_verdict(use_oracle ? oracle::oracle_eval_its(k, t, f) : eval_its(k, t, f));
  }
  if (sem == "mx") {
    std::size_t j = opt.pos.value_or(0);
    return emit_verdict(use_oracle ? oracle::oracle_eval_mx(cw, t, j, f) : eval_mx(cw, t, j, f));
  }
  throw Usage("unknown semantics " + sem);
}

int cmd_satset() {
  std::string text = formula_text();
  auto input = structure();
  if (!input) throw Usage("an input structure is required");
  if (io::is_lasso(*input)) throw Usage("satset takes a finite structure");
  Alphabet s = alphabet(input, text);
  Formula f = parse(text, s, {opt.semantics == "mx"});
  const std::string& sem = opt.semantics;

  json rows = json::array();
  std::string human;
  auto row = [&](const Formula& g, json set, const std::string& shown) {
    rows.push_back({{"formula", print(g, s)}, {"set", std::move(set)}});
    human += print(g, s) + "\n  " + shown + "\n";
  };
  if (!opt.tss.empty() || sem == "its") {
    if (sem != "its") throw Usage("a timed state sequence is evaluated under its");
    TimedStateSequence k = opt.tss.empty() ? to_tss_of_word(io::word_from(*input)) : io::tss_from(*input);
    for (const Formula& g : subformulas(f)) {
      IntervalSet set = sat_set_its(k, g);
      row(g, io::to_json(set), set.str());
    }
  } else {
    CompactTimedWord cw = opt.compact.empty() ? compact(io::word_from(*input)) : io::compact_from(*input);
    TimedWord w = uncompact(cw);
    for (const Formula& g : subformulas(f)) {
      if (sem == "pw") {
        auto p = sat_positions(w, g);
        std::string shown = "{";
        for (std::size_t i : p) shown += (shown.size() > 1 ? "," : "") + std::to_string(i);
        row(g, json(p), shown + "}");
      } else if (sem == "itw") {
        IntervalSet set = sat_set_itw(w, g);
        row(g, io::to_json(set), set.str());
      } else if (sem == "mx") {
        MixedSet set = sat_set_mx(cw, g);
        row(g, io::to_json(set), set.str());
      } else {
        throw Usage("unknown semantics " + sem);
      }
    }
  }
  if (!human.empty()) human.pop_back();
  emit({{"semantics", sem}, {"subformulas", rows}}, human);
  return kTrue;
}

int cmd_compile() {
  std::string text = formula_text();
  Alphabet s = alphabet(structure(), text);
  Formula f = parse(text, s);
  if (opt.target != "pw2mx" && opt.target != "itw2mx") throw Usage("--target must be pw2mx or itw2mx");
  Formula out = opt.target == "pw2mx" ? pcompile(f, s) : icompile(f, s);
  emit({{"target", opt.target}, {"formula", print(out, s)}, {"nodes", node_count(out)}}, print(out, s));
  return kTrue;
}

int cmd_encode() {
  auto input = structure();
  if (!input) throw Usage("an input structure is required");
  json out;
  std::string human;
  if (io::is_lasso(*input)) throw Usage("encode takes a finite structure");
  if (!opt.tss.empty()) {
    CompactTimedWord cw = from_action_based(io::tss_from(*input));
    if (opt.to == "compact") {
      out = io::to_json(cw), human = cw.str();
    } else if (opt.to == "word") {
      TimedWord w = uncompact(cw);
      out = io::to_json(w), human = w.str();
    } else if (opt.to == "tss") {
      TimedStateSequence k = to_tss(cw);
      out = io::to_json(k), human = k.str();
    } else {
      throw Usage("--to must be compact, tss or word");
    }
  } else {
    CompactTimedWord cw = opt.compact.empty() ? compact(io::word_from(*input)) : io::compact_from(*input);
    if (opt.to == "compact") {
      out = io::to_json(cw), human = cw.str();
    } else if (opt.to == "word") {
      TimedWord w = uncompact(cw);
      out = io::to_json(w), human = w.str();
    } else if (opt.to == "tss") {
      TimedStateSequence k = to_tss(cw);
      out = io::to_json(k), human = k.str();
    } else {
      throw Usage("--to must be compact, tss or word");
    }
  }
  emit(out, human);
  return kTrue;
}

// Validates the input and reports its structural predicates.
int cmd_check() {
  auto input = structure();
  if (!input) throw Usage("an input structure is required");
  json out;
  std::string human;
  if (!opt.tss.empty()) {
    TimedStateSequence k = io::tss_from(*input);
    out = {{"kind", "tss"}, {"steps", k.steps().size()}, {"start", k.start().decimal_str()},
           {"end", k.duration().decimal_str()}, {"action_based", k.is_action_based()}};
    human = k.str() + (k.is_action_based() ? "\naction based" : "\nnot action based");
  } else if (io::is_lasso(*input)) {
    Lasso l = io::lasso_from(*input);
    out = {{"kind", "lasso"}, {"prefix_length", l.prefix.size()}, {"period_length", l.period_actions.size()},
           {"period_duration", l.period_duration.decimal_str()}};
    human = l.prefix.str() + " then every " + l.period_duration.decimal_str();
  } else {
    TimedWord w = opt.compact.empty() ? io::word_from(*input) : uncompact(io::compact_from(*input));
    CompactTimedWord cw = compact(w);
    out = {{"kind", "word"},
           {"length", w.size()},
           {"blocks", cw.size()},
           {"duration", w.duration().decimal_str()},
           {"stutter_free", w.is_stutter_free()},
           {"strictly_monotone", w.is_strictly_monotone()}};
    human = w.str() + "\nlength " + std::to_string(w.size()) + ", duration " + w.duration().decimal_str() +
            (w.is_stutter_free() ? ", stutter free" : "") + (w.is_strictly_monotone() ? ", strictly monotone" : "");
  }
  emit(out, human);
  return kTrue;
}

json counterexample(const std::string& engine, const json& input, const Formula& f, const Alphabet& s,
                    const std::string& at, bool engine_v, bool oracle_v) {
  return {{"engine", engine}, {"input", input},       {"formula", print(f, s)},
          {"at", at},         {"engine_verdict", engine_v}, {"oracle_verdict", oracle_v}};
}

// Differential run: every engine against its oracle, plus both compilers.
int cmd_fuzz() {
  std::optional<json> bad;
  std::size_t checks = 0;
  for (std::uint64_t c = 0; c < opt.cases && !bad; ++c) {
    oracle::Generator g(opt.seed + c);
    const Alphabet& s = g.alphabet();
    TimedWord w = g.word();
    Formula f = g.formula();
    CompactTimedWord cw = compact(w);

    auto mask = sat_positions_mask(w, f);
    for (std::size_t i = 0; i < w.size() && !bad; ++i, ++checks)
      if (bool o = oracle::oracle_eval_pw(w, i, f); mask[i] != o)
        bad = counterexample("pw", io::to_json(w), f, s, std::to_string(i), mask[i], o);

    IntervalSet itw = sat_set_itw(w, f);
    for (const Rational& t : oracle::critical_points(w, f).all()) {
      if (bad) break;
      ++checks;
      if (bool o = oracle::oracle_eval_itw(w, t, f); itw.contains(t) != o)
        bad = counterexample("itw", io::to_json(w), f, s, t.decimal_str(), !o, o);
    }

    TimedStateSequence k = g.ka();
    IntervalSet its = sat_set_its(k, f);
    for (const Rational& t : oracle::critical_points(k, f).all()) {
      if (bad) break;
      ++checks;
      if (bool o = oracle::oracle_eval_its(k, t, f); its.contains(t) != o)
        bad = counterexample("its", io::to_json(k), f, s, t.decimal_str(), !o, o);
    }

    Formula fb = g.formula({}, true);
    MixedSet mx = sat_set_mx(cw, fb);
    for (const Rational& t : oracle::critical_points(cw, fb).all()) {
      std::size_t width = 1;
      if (auto b = cw.block_at(t)) width = cw[*b].actions.size();
      for (std::size_t j = 0; j < width && !bad; ++j, ++checks) {
        bool e = detail::mixed_contains(mx, cw, t, j), o = oracle::oracle_eval_mx(cw, t, j, fb);
        if (e != o) bad = counterexample("mx", io::to_json(cw), fb, s, "(" + t.decimal_str() + "," + std::to_string(j) + ")", e, o);
      }
    }

    if (!bad) {
      checks += 2;
      if (bool p = eval_pw(w, 0, f), m = eval_mx(cw, 0, 0, pcompile(f, s)); p != m)
        bad = counterexample("pw2mx", io::to_json(w), f, s, "0", m, p);
      else if (bool i = eval_itw(w, 0, f), m2 = eval_mx(cw, 0, 0, icompile(f, s)); i != m2)
        bad = counterexample("itw2mx", io::to_json(w), f, s, "0", m2, i);
    }
  }
  if (bad) {
    emit({{"status", "divergence"}, {"counterexample", *bad}}, "divergence: " + bad->dump(2));
    return kFalse;
  }
  emit({{"status", "ok"}, {"cases", opt.cases}, {"seed", opt.seed}, {"checks", checks}},
       "ok: " + std::to_string(opt.cases) + " cases, " + std::to_string(checks) + " checks");
  return kTrue;
}

int cmd_paper() {
  json results = json::array();
  std::string human;
  std::size_t failed = 0, ran = 0;
  for (const auto& c : fixtures::all_checks()) {
    if (!opt.id.empty() && c.id != opt.id) continue;
    if (opt.id.empty() && !opt.all && !c.core) continue;
    bool ok = false;
    std::string err;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      err = e.what();
    }
    ++ran;
    failed += !ok;
    json r = {{"id", c.id}, {"description", c.description}, {"pass", ok}};
    if (!err.empty()) r["error"] = err;
    results.push_back(r);
    human += std::string(ok ? "PASS " : "FAIL ") + c.id + "  " + c.description + (err.empty() ? "" : "  (" + err + ")") + "\n";
  }
  if (ran == 0) throw Usage("no fixture named " + opt.id);
  human += std::to_string(ran - failed) + "/" + std::to_string(ran) + " passed";
  emit({{"checks", results}, {"passed", ran - failed}, {"total", ran}}, human);
  return failed == 0 ? kTrue : kFalse;
}

void formula_opts(CLI::App* c) {
  c->add_option("-f,--formula", opt.formula, "formula text");
  c->add_option("--formula-file", opt.formula_file, "file holding the formula");
  c->add_option("--alphabet", opt.alphabet, "comma-separated actions, e.g. a,b,c");
}

void input_opts(CLI::App* c) {
  c->add_option("--word,--lasso", opt.word, "timed word or lasso JSON file ('-' for stdin)");
  c->add_option("--tss", opt.tss, "timed state sequence JSON file");
  c->add_option("--compact", opt.compact, "compact timed word JSON file");
}

void eval_opts(CLI::App* c) {
  formula_opts(c);
  input_opts(c);
  c->add_option("--semantics", opt.semantics, "pw, itw, its or mx")
      ->check(CLI::IsMember({"pw", "itw", "its", "mx"}));
  c->add_option("--time", opt.time, "evaluation time (itw, its, mx)");
  c->add_option("--pos", opt.pos, "position inside the block (mx) or in the word (pw)");
  c->add_option("--position", opt.position, "word position (pw)");
  c->add_option("--horizon", opt.horizon, "absolute unroll horizon for lassos");
  c->add_option("--max-unroll", opt.max_unroll, "extra periods unrolled for unbounded lasso formulas");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Metric temporal logic over timed words: pointwise, interval-based and mixed semantics"};
  app.require_subcommand(1);
  app.add_flag("--pretty", opt.pretty, "human-readable output instead of JSON");

  auto* p = app.add_subcommand("parse", "parse a formula and print its canonical form and metrics");
  formula_opts(p);
  input_opts(p);
  p->add_flag("--allow-beta", opt.allow_beta, "accept the beta atom");

  auto* e = app.add_subcommand("eval", "evaluate a formula");
  eval_opts(e);

  auto* s = app.add_subcommand("satset", "print the satisfaction set of every subformula");
  formula_opts(s);
  input_opts(s);
  s->add_option("--semantics", opt.semantics, "pw, itw, its or mx")->check(CLI::IsMember({"pw", "itw", "its", "mx"}));

  auto* c = app.add_subcommand("compile", "compile into the mixed semantics");
  formula_opts(c);
  c->add_option("--target", opt.target, "pw2mx or itw2mx")->required()->check(CLI::IsMember({"pw2mx", "itw2mx"}));

  auto* en = app.add_subcommand("encode", "convert between words, compact words and state sequences");
  input_opts(en);
  en->add_option("--to", opt.to, "compact, tss or word")->required()->check(CLI::IsMember({"compact", "tss", "word"}));

  auto* ck = app.add_subcommand("check", "validate a structure and report its properties");
  input_opts(ck);

  auto* o = app.add_subcommand("oracle", "brute-force reference evaluation");
  o->require_subcommand(1);
  auto* oe = o->add_subcommand("eval", "evaluate with the reference oracle");
  eval_opts(oe);

  auto* fz = app.add_subcommand("fuzz", "differential run of engines against oracles");
  fz->add_option("--cases", opt.cases, "number of generated cases");
  fz->add_option("--seed", opt.seed, "first seed");

  auto* pp = app.add_subcommand("paper", "replay the built-in fixture checks");
  pp->add_flag("--all", opt.all, "include the supporting checks, not only the core set");
  pp->add_option("--id", opt.id, "run one check by id");

  for (auto* sub : {p, e, s, c, en, ck, oe, fz, pp}) sub->add_flag("--pretty", opt.pretty, "human-readable output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::CallForAllHelp& ex) {
    return app.exit(ex);
  } catch (const CLI::ParseError& ex) {
    app.exit(ex);
    return kInput;
  }

  try {
    if (p->parsed()) return cmd_parse();
    if (e->parsed()) return eval_with(false);
    if (oe->parsed()) return eval_with(true);
    if (s->parsed()) return cmd_satset();
    if (c->parsed()) return cmd_compile();
    if (en->parsed()) return cmd_encode();
    if (ck->parsed()) return cmd_check();
    if (fz->parsed()) return cmd_fuzz();
    if (pp->parsed()) return cmd_paper();
  } catch (const Usage& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return kInput;
  } catch (const Error& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return ex.is_internal() ? kInternal : kInput;
  } catch (const std::exception& ex) {
    std::cerr << "internal error: " << ex.what() << "\n";
    return kInternal;
  }
  return kInput;
}
