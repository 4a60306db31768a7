#pragma once

// JSON forms of the timed structures:
//   word     {"events":[["a","0"],["b","1"]]}
//   lasso    word plus {"period":{"actions":[..],"offsets":[..],"duration":"1"}}
//   compact  {"blocks":[[["a"],"0"],[["b","a"],"1"]]}
//   tss      {"steps":[[["a"],"[0,0]"],[[],"(0,1)"]]}
// Times are strings ("3.3", "33/10") so no value passes through a double.

#include <fstream>
#include <iostream>
#include <iterator>
#include <set>
#include <sstream>
#include <string>

#include <json.hpp>

#include "mtlsem/mtlsem.hpp"

namespace mtlsem::io {

using nlohmann::json;

inline Error input_error(const std::string& what) { return Error(ErrorKind::Syntax, what); }

inline json read_json(const std::string& path) {
  std::string text;
  if (path == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), {});
  } else {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open " + path);
    text.assign(std::istreambuf_iterator<char>(in), {});
  }
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw input_error(path + ": " + e.what());
  }
}

inline Rational time_of(const json& v) {
  if (v.is_string()) return Rational::parse(v.get<std::string>());
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  throw input_error("time must be a string or an integer, got " + v.dump());
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw input_error(std::string("missing \"") + key + "\"");
  return j.at(key);
}

inline std::vector<Event> events_of(const json& j) {
  std::vector<Event> ev;
  for (const auto& e : field(j, "events")) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string()) throw input_error("event must be [action, time]: " + e.dump());
    ev.push_back({e[0].get<std::string>(), time_of(e[1])});
  }
  return ev;
}

inline TimedWord word_from(const json& j, WordOptions opts = {}) { return TimedWord::validate(events_of(j), opts); }

inline bool is_lasso(const json& j) { return j.is_object() && j.contains("period"); }

inline Lasso lasso_from(const json& j) {
  Lasso l;
  l.prefix = word_from(j);
  const json& p = field(j, "period");
  for (const auto& a : field(p, "actions")) l.period_actions.push_back(a.get<std::string>());
  for (const auto& o : field(p, "offsets")) l.period_offsets.push_back(time_of(o));
  l.period_duration = time_of(field(p, "duration"));
  l.validate();
  return l;
}

inline std::vector<Symbol> actions_of(const json& a) {
  if (!a.is_array()) throw input_error("expected an array of actions: " + a.dump());
  std::vector<Symbol> out;
  for (const auto& s : a) out.push_back(s.get<std::string>());
  return out;
}

inline CompactTimedWord compact_from(const json& j) {
  std::vector<Block> blocks;
  for (const auto& b : field(j, "blocks")) {
    if (!b.is_array() || b.size() != 2) throw input_error("block must be [[actions], time]: " + b.dump());
    blocks.push_back({actions_of(b[0]), time_of(b[1])});
  }
  return CompactTimedWord::validate(std::move(blocks));
}

inline TimedStateSequence tss_from(const json& j) {
  std::vector<Step> steps;
  for (const auto& s : field(j, "steps")) {
    if (!s.is_array() || s.size() != 2 || !s[1].is_string()) throw input_error("step must be [[props], \"interval\"]: " + s.dump());
    auto props = actions_of(s[0]);
    steps.push_back({std::set<Symbol>(props.begin(), props.end()), Interval::parse(s[1].get<std::string>())});
  }
  return TimedStateSequence::validate(std::move(steps));
}

inline json to_json(const TimedWord& w) {
  json ev = json::array();
  for (const auto& e : w.events()) ev.push_back({e.action, e.time.decimal_str()});
  return {{"events", ev}};
}

inline json to_json(const Lasso& l) {
  json j = to_json(l.prefix);
  json offsets = json::array();
  for (const auto& o : l.period_offsets) offsets.push_back(o.decimal_str());
  j["period"] = {{"actions", l.period_actions}, {"offsets", offsets}, {"duration", l.period_duration.decimal_str()}};
  return j;
}

inline json to_json(const CompactTimedWord& cw) {
  json blocks = json::array();
  for (const auto& b : cw.blocks()) blocks.push_back({b.actions, b.time.decimal_str()});
  return {{"blocks", blocks}};
}

inline json to_json(const TimedStateSequence& k) {
  json steps = json::array();
  for (const auto& s : k.steps()) steps.push_back({std::vector<Symbol>(s.props.begin(), s.props.end()), s.interval.str()});
  return {{"steps", steps}};
}

inline json to_json(const IntervalSet& s) {
  json parts = json::array();
  for (const auto& p : s.parts()) parts.push_back(p.str());
  return parts;
}

inline json to_json(const MixedSet& s) {
  json points = json::array();
  for (auto [k, j] : s.points()) points.push_back({k, j});
  return {{"gap", to_json(s.gap())}, {"points", points}};
}

/// Letters mentioned by a structure, for when no --alphabet is given.
inline std::set<Symbol> letters(const json& j) {
  std::set<Symbol> out;
  if (j.contains("events"))
    for (const auto& e : j.at("events"))
      if (e.is_array() && !e.empty() && e[0].is_string()) out.insert(e[0].get<std::string>());
  if (j.contains("period") && j.at("period").contains("actions"))
    for (const auto& a : j.at("period").at("actions")) out.insert(a.get<std::string>());
  for (const char* key : {"blocks", "steps"})
    if (j.contains(key))
      for (const auto& b : j.at(key))
        if (b.is_array() && !b.empty() && b[0].is_array())
          for (const auto& a : b[0]) out.insert(a.get<std::string>());
  return out;
}

}  // namespace mtlsem::io
