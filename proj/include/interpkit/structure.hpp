// Finite structures and classical Tarskian evaluation by exhaustive search.

#ifndef INTERPKIT_STRUCTURE_HPP
#define INTERPKIT_STRUCTURE_HPP

#include <functional>
#include <set>

#include "formula.hpp"
#include "json.hpp"

namespace interpkit {

struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Universe elements carry names; evaluation uses their indices.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  FiniteStructure(Language lang, std::vector<std::string> universe,
                  std::map<std::string, std::set<std::vector<int>>> relations,
                  std::map<std::string, int> constants = {})
      : lang_(std::move(lang)),
        universe_(std::move(universe)),
        relations_(std::move(relations)),
        constants_(std::move(constants)) {
    if (universe_.empty()) throw LangError("empty universe");
    for (const auto& [sym, tuples] : relations_) {
      const auto& rs = lang_.relation(sym);
      for (const auto& tup : tuples) {
        if ((int)tup.size() != rs.arity) throw LangError("tuple arity mismatch in " + sym);
        for (int e : tup)
          if (e < 0 || e >= (int)universe_.size()) throw LangError("tuple element out of range");
      }
    }
    for (const auto& f : lang_.functions())
      if (f.arity > 0) throw LangError("finite structures are relational (constants allowed)");
  }

  const Language& lang() const { return lang_; }
  const std::vector<std::string>& universe() const { return universe_; }
  int size() const { return (int)universe_.size(); }

  bool holds(const std::string& rel, const std::vector<int>& tuple) const {
    auto it = relations_.find(rel);
    if (it == relations_.end()) {
      lang_.relation(rel);  // throws on unknown symbol
      return false;         // declared but empty
    }
    return it->second.count(tuple) != 0;
  }
  const std::map<std::string, std::set<std::vector<int>>>& relations() const {
    return relations_;
  }
  int constant(const std::string& c) const {
    auto it = constants_.find(c);
    if (it == constants_.end()) throw EvalError("uninterpreted constant " + c);
    return it->second;
  }
  const std::map<std::string, int>& constants() const { return constants_; }

  int element_index(const std::string& name) const {
    for (size_t i = 0; i < universe_.size(); ++i)
      if (universe_[i] == name) return (int)i;
    throw EvalError("unknown element " + name);
  }

 private:
  Language lang_;
  std::vector<std::string> universe_;
  std::map<std::string, std::set<std::vector<int>>> relations_;
  std::map<std::string, int> constants_;
};

using Assignment = std::map<std::string, int>;

namespace detail {

inline int eval_term_finite(const Term& t, const FiniteStructure& s, const Assignment& a) {
  if (t.kind() == Term::Var) {
    auto it = a.find(t.sym());
    if (it == a.end()) throw EvalError("uncovered free variable " + t.sym());
    return it->second;
  }
  if (!t.args().empty()) throw EvalError("compound term in relational structure");
  return s.constant(t.sym());
}

}  // namespace detail

inline bool eval_finite(const FiniteStructure& s, const Formula& f, Assignment& a) {
  switch (f.kind()) {
    case Formula::Atom: {
      std::vector<int> tup;
      tup.reserve(f.terms().size());
      for (const auto& t : f.terms()) tup.push_back(detail::eval_term_finite(t, s, a));
      return s.holds(f.sym(), tup);
    }
    case Formula::Eq:
      return detail::eval_term_finite(f.terms()[0], s, a) ==
             detail::eval_term_finite(f.terms()[1], s, a);
    case Formula::Not:
      return !eval_finite(s, f.sub(), a);
    case Formula::And:
      return eval_finite(s, f.sub(0), a) && eval_finite(s, f.sub(1), a);
    case Formula::Or:
      return eval_finite(s, f.sub(0), a) || eval_finite(s, f.sub(1), a);
    case Formula::Imp:
      return !eval_finite(s, f.sub(0), a) || eval_finite(s, f.sub(1), a);
    default: {
      bool universal = f.kind() == Formula::Forall || f.kind() == Formula::BForall;
      std::optional<int> bound;
      if (f.kind() == Formula::BForall || f.kind() == Formula::BExists) {
        if (!s.lang().has_relation("<"))
          throw EvalError("bounded quantifier without order relation");
        bound = detail::eval_term_finite(f.bound(), s, a);
      }
      auto saved = a.find(f.sym()) != a.end() ? std::optional<int>(a[f.sym()]) : std::nullopt;
      bool result = universal;
      for (int e = 0; e < s.size(); ++e) {
        if (bound && !s.holds("<", {e, *bound})) continue;
        a[f.sym()] = e;
        bool v = eval_finite(s, f.sub(), a);
        if (universal && !v) {
          result = false;
          break;
        }
        if (!universal && v) {
          result = true;
          break;
        }
      }
      if (saved)
        a[f.sym()] = *saved;
      else
        a.erase(f.sym());
      return result;
    }
  }
}

inline bool eval_finite(const FiniteStructure& s, const Formula& f, const Assignment& a0 = {}) {
  for (const auto& v : f.free_vars())
    if (!a0.count(v)) throw EvalError("uncovered free variable " + v);
  Assignment a = a0;
  return eval_finite(s, f, a);
}

// The set of tuples over `vars` satisfying f.
inline std::set<std::vector<int>> definable_relation(const FiniteStructure& s, const Formula& f,
                                                     const std::vector<std::string>& vars) {
  for (const auto& v : f.free_vars())
    if (std::find(vars.begin(), vars.end(), v) == vars.end())
      throw EvalError("free variable " + v + " not listed");
  std::set<std::vector<int>> out;
  std::vector<int> tup(vars.size(), 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == vars.size()) {
      Assignment a;
      for (size_t j = 0; j < vars.size(); ++j) a[vars[j]] = tup[j];
      if (eval_finite(s, f, a)) out.insert(tup);
      return;
    }
    for (int e = 0; e < s.size(); ++e) {
      tup[i] = e;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

// --- JSON ------------------------------------------------------------------
// {"language": {...}, "universe": ["a","b"], "relations": {"E": [["a","b"]]},
//  "constants": {"c": "a"}}; keys and tuples come out sorted.

inline nlohmann::json language_to_json(const Language& lang) {
  nlohmann::json rels = nlohmann::json::array();
  for (const auto& r : lang.relations()) {
    if (r.cls == FormulaClass::delta0())
      rels.push_back({r.name, r.arity});
    else
      rels.push_back({r.name, r.arity, r.cls.str()});
  }
  nlohmann::json fns = nlohmann::json::array();
  for (const auto& f : lang.functions()) fns.push_back({f.name, f.arity});
  return {{"name", lang.name()}, {"relations", rels}, {"functions", fns}};
}

inline FormulaClass class_from_string(const std::string& s) {
  if (s == "Delta0") return FormulaClass::delta0();
  if (s.rfind("Sigma", 0) == 0) return FormulaClass::sigma(std::stoi(s.substr(5)));
  if (s.rfind("Pi", 0) == 0) return FormulaClass::pi(std::stoi(s.substr(2)));
  throw LangError("bad class tag " + s);
}

inline Language language_from_json(const nlohmann::json& j) {
  std::vector<RelationSym> rels;
  for (const auto& r : j.at("relations")) {
    RelationSym rs{r.at(0).get<std::string>(), r.at(1).get<int>()};
    if (r.size() > 2) rs.cls = class_from_string(r.at(2).get<std::string>());
    rels.push_back(rs);
  }
  std::vector<FunctionSym> fns;
  if (j.contains("functions"))
    for (const auto& f : j.at("functions"))
      fns.push_back({f.at(0).get<std::string>(), f.at(1).get<int>()});
  return Language(j.value("name", "lang"), std::move(rels), std::move(fns));
}

inline nlohmann::json structure_to_json(const FiniteStructure& s) {
  nlohmann::json rels(nlohmann::json::value_t::object);
  for (const auto& [sym, tuples] : s.relations()) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& tup : tuples) {
      nlohmann::json t = nlohmann::json::array();
      for (int e : tup) t.push_back(s.universe()[e]);
      arr.push_back(t);
    }
    rels[sym] = arr;
  }
  nlohmann::json out = {{"language", language_to_json(s.lang())},
                        {"universe", s.universe()},
                        {"relations", rels}};
  if (!s.constants().empty()) {
    nlohmann::json cs(nlohmann::json::value_t::object);
    for (const auto& [c, e] : s.constants()) cs[c] = s.universe()[e];
    out["constants"] = cs;
  }
  return out;
}

inline FiniteStructure structure_from_json(const nlohmann::json& j) {
  Language lang = language_from_json(j.at("language"));
  std::vector<std::string> universe = j.at("universe").get<std::vector<std::string>>();
  auto index = [&](const std::string& name) {
    for (size_t i = 0; i < universe.size(); ++i)
      if (universe[i] == name) return (int)i;
    throw LangError("unknown element " + name);
  };
  std::map<std::string, std::set<std::vector<int>>> rels;
  if (j.contains("relations"))
    for (auto it = j.at("relations").begin(); it != j.at("relations").end(); ++it) {
      std::set<std::vector<int>> tuples;
      for (const auto& tup : it.value()) {
        std::vector<int> t;
        for (const auto& e : tup) t.push_back(index(e.get<std::string>()));
        tuples.insert(t);
      }
      rels[it.key()] = tuples;
    }
  std::map<std::string, int> consts;
  if (j.contains("constants"))
    for (auto it = j.at("constants").begin(); it != j.at("constants").end(); ++it)
      consts[it.key()] = index(it.value().get<std::string>());
  return FiniteStructure(std::move(lang), std::move(universe), std::move(rels),
                         std::move(consts));
}

}  // namespace interpkit

#endif  // INTERPKIT_STRUCTURE_HPP
