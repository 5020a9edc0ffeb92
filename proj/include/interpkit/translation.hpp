// Translations between relational languages: a domain formula plus one target
// formula per source relation symbol (equality included). Relation formulas
// are stored pre-guarded, i.e. conjoined with the domain formula applied to
// each argument variable, so the guard condition holds by construction.

#ifndef INTERPKIT_TRANSLATION_HPP
#define INTERPKIT_TRANSLATION_HPP

#include "formula.hpp"
#include "json.hpp"
#include "parser.hpp"
#include "prenex.hpp"
#include "structure.hpp"
#include "substitute.hpp"

namespace interpkit {

struct RelationEntry {
  std::vector<std::string> vars;  // designated argument variables, in order
  Formula formula;                // target formula, free vars subset of `vars`
};

class Translation {
 public:
  // Raw formulas; the constructor conjoins the domain guard onto every
  // relation entry (including equality) unless `preguarded` is set.
  Translation(Language source, Language target, std::string delta_var, Formula delta,
              std::map<std::string, RelationEntry> relations, RelationEntry equality,
              std::vector<std::string> parameters = {}, bool preguarded = false)
      : source_(std::move(source)),
        target_(std::move(target)),
        delta_var_(std::move(delta_var)),
        delta_(std::move(delta)),
        relations_(std::move(relations)),
        equality_(std::move(equality)),
        parameters_(std::move(parameters)) {
    for (const auto& v : delta_.free_vars())
      if (v != delta_var_) throw LangError("domain formula has stray free variable " + v);
    for (const auto& r : source_.relations()) {
      auto it = relations_.find(r.name);
      if (it == relations_.end()) throw LangError("no entry for relation " + r.name);
      if ((int)it->second.vars.size() != r.arity)
        throw LangError("entry arity mismatch for " + r.name);
    }
    if (equality_.vars.size() != 2) throw LangError("equality entry needs two variables");
    for (const auto& p : parameters_) {
      if (!target_.has_function(p) || target_.function(p).arity != 0)
        throw LangError("parameter " + p + " is not a target constant");
    }
    if (!preguarded) {
      for (auto& [sym, e] : relations_) e.formula = guard(e);
      equality_.formula = guard(equality_);
    }
    for (const auto& [sym, e] : relations_) check_entry(e);
    check_entry(equality_);
  }

  const Language& source() const { return source_; }
  const Language& target() const { return target_; }
  const std::string& delta_var() const { return delta_var_; }
  const Formula& delta() const { return delta_; }
  const std::map<std::string, RelationEntry>& relations() const { return relations_; }
  const RelationEntry& equality() const { return equality_; }
  const std::vector<std::string>& parameters() const { return parameters_; }

  Formula delta_at(const Term& t) const {
    return substitute(delta_, delta_var_, t);
  }
  Formula delta_at(const std::string& v) const { return delta_at(Term::var(v)); }

  Formula relation_at(const std::string& sym, const std::vector<Term>& args) const {
    auto it = relations_.find(sym);
    if (it == relations_.end()) throw LangError("symbol " + sym + " missing from translation");
    return apply(it->second, args);
  }
  Formula equality_at(const Term& a, const Term& b) const { return apply(equality_, {a, b}); }

 private:
  static Formula apply(const RelationEntry& e, const std::vector<Term>& args) {
    if (args.size() != e.vars.size()) throw LangError("translation entry arity mismatch");
    TermSubst s;
    for (size_t i = 0; i < e.vars.size(); ++i) s[e.vars[i]] = args[i];
    return substitute_all(e.formula, s);
  }
  Formula guard(const RelationEntry& e) const {
    Formula g = e.formula;
    for (const auto& v : e.vars) g = Formula::land(g, delta_at(v));
    return g;
  }
  void check_entry(const RelationEntry& e) const {
    for (const auto& v : e.formula.free_vars())
      if (std::find(e.vars.begin(), e.vars.end(), v) == e.vars.end())
        throw LangError("relation entry has stray free variable " + v);
    check_formula(e.formula, target_);
  }

  Language source_, target_;
  std::string delta_var_;
  Formula delta_;
  std::map<std::string, RelationEntry> relations_;
  RelationEntry equality_;
  std::vector<std::string> parameters_;
};

// phi over m.source, structurally pushed through m. Universal quantifiers
// relativize by delta ->, existentials by delta /\; bounded quantifiers
// desugar to their guarded unbounded form first.
inline Formula translate_formula(const Translation& m, const Formula& f) {
  switch (f.kind()) {
    case Formula::Atom:
      return m.relation_at(f.sym(), f.terms());
    case Formula::Eq:
      return m.equality_at(f.terms()[0], f.terms()[1]);
    case Formula::Not:
      return Formula::lnot(translate_formula(m, f.sub()));
    case Formula::And:
      return Formula::land(translate_formula(m, f.sub(0)), translate_formula(m, f.sub(1)));
    case Formula::Or:
      return Formula::lor(translate_formula(m, f.sub(0)), translate_formula(m, f.sub(1)));
    case Formula::Imp:
      return Formula::imp(translate_formula(m, f.sub(0)), translate_formula(m, f.sub(1)));
    case Formula::Forall:
      return Formula::forall(f.sym(),
                             Formula::imp(m.delta_at(f.sym()), translate_formula(m, f.sub())));
    case Formula::Exists:
      return Formula::exists(f.sym(),
                             Formula::land(m.delta_at(f.sym()), translate_formula(m, f.sub())));
    case Formula::BForall:
      return translate_formula(
          m, Formula::forall(f.sym(), Formula::imp(Formula::atom("<", {Term::var(f.sym()),
                                                                       f.bound()}),
                                                   f.sub())));
    case Formula::BExists:
      return translate_formula(
          m, Formula::exists(f.sym(), Formula::land(Formula::atom("<", {Term::var(f.sym()),
                                                                        f.bound()}),
                                                    f.sub())));
  }
  throw LangError("corrupt formula node");
}

inline Translation identity_translation(const Language& lang) {
  if (!lang.relational()) throw LangError("identity translation needs a relational language");
  std::map<std::string, RelationEntry> rels;
  for (const auto& r : lang.relations()) {
    std::vector<std::string> vars;
    std::vector<Term> args;
    for (int i = 0; i < r.arity; ++i) {
      vars.push_back("x" + std::to_string(i + 1));
      args.push_back(Term::var(vars.back()));
    }
    rels[r.name] = {vars, Formula::atom(r.name, args)};
  }
  RelationEntry eq{{"x1", "x2"}, Formula::eq(Term::var("x1"), Term::var("x2"))};
  return Translation(lang, lang, "x", Formula::eq(Term::var("x"), Term::var("x")),
                     std::move(rels), std::move(eq), {}, /*preguarded=*/true);
}

// compose(m: L1 -> L2, n: L2 -> L3): the composite L1 -> L3. Domain formula
// is delta_n /\ (delta_m)^n; each relation formula conjoins delta_n over the
// argument variables onto the n-translated m-formula.
inline Translation compose(const Translation& m, const Translation& n) {
  if (m.target().name() != n.source().name())
    throw LangError("compose: middle languages differ (" + m.target().name() + " vs " +
                    n.source().name() + ")");

  const std::string& w = n.delta_var();
  Formula delta_m_tr = translate_formula(n, m.delta());
  if (m.delta_var() != w) delta_m_tr = rename_free(delta_m_tr, m.delta_var(), w);
  Formula delta = Formula::land(n.delta(), delta_m_tr);

  auto build = [&](const RelationEntry& e) {
    Formula tr = translate_formula(n, e.formula);
    Formula out;
    for (size_t i = 0; i < e.vars.size(); ++i) {
      Formula g = n.delta_at(e.vars[i]);
      out = i == 0 ? g : Formula::land(out, g);
    }
    out = e.vars.empty() ? tr : Formula::land(out, tr);
    return RelationEntry{e.vars, out};
  };

  std::map<std::string, RelationEntry> rels;
  for (const auto& [sym, e] : m.relations()) rels[sym] = build(e);
  RelationEntry eq = build(m.equality());

  std::vector<std::string> params = n.parameters();
  for (const auto& p : m.parameters()) params.push_back(p);

  return Translation(m.source(), n.target(), w, std::move(delta), std::move(rels),
                     std::move(eq), std::move(params), /*preguarded=*/true);
}

// Least Sigma(n) containing the classes of the domain formula and of every
// relation formula (quantifier-free components land in Sigma(1)).
inline FormulaClass restriction_class(const Translation& m) {
  const Language* lang = &m.target();
  int n = classify(m.delta(), lang).sigma_level();
  for (const auto& [sym, e] : m.relations())
    n = std::max(n, classify(e.formula, lang).sigma_level());
  n = std::max(n, classify(m.equality().formula, lang).sigma_level());
  return FormulaClass::sigma(n);
}

// --- JSON ------------------------------------------------------------------
// {"source": ..., "target": ..., "delta": "...", "equality": "...",
//  "relations": {"E": "..."}, "parameters": [...]}.
// Convention: the domain formula uses the variable x; an n-ary relation entry
// uses x1..xn; equality uses x1, x2.

inline Translation translation_from_json(const nlohmann::json& j) {
  Language src = language_from_json(j.at("source"));
  Language tgt = language_from_json(j.at("target"));
  Formula delta = parse_formula(j.at("delta").get<std::string>(), tgt);
  std::map<std::string, RelationEntry> rels;
  for (const auto& r : src.relations()) {
    std::string text = j.at("relations").at(r.name).get<std::string>();
    std::vector<std::string> vars;
    for (int i = 0; i < r.arity; ++i) vars.push_back("x" + std::to_string(i + 1));
    rels[r.name] = {vars, parse_formula(text, tgt)};
  }
  RelationEntry eq{{"x1", "x2"},
                   parse_formula(j.at("equality").get<std::string>(), tgt)};
  std::vector<std::string> params;
  if (j.contains("parameters")) params = j.at("parameters").get<std::vector<std::string>>();
  // files written by translation_to_json carry already-guarded formulas
  bool preguarded = j.value("preguarded", false);
  return Translation(std::move(src), std::move(tgt), "x", std::move(delta), std::move(rels),
                     std::move(eq), std::move(params), preguarded);
}

inline nlohmann::json translation_to_json(const Translation& t) {
  nlohmann::json rels(nlohmann::json::value_t::object);
  for (const auto& [sym, e] : t.relations()) rels[sym] = print_formula(e.formula);
  return {{"source", language_to_json(t.source())},
          {"target", language_to_json(t.target())},
          {"delta", print_formula(t.delta())},
          {"equality", print_formula(t.equality().formula)},
          {"relations", rels},
          {"parameters", t.parameters()},
          {"preguarded", true}};
}

}  // namespace interpkit

#endif  // INTERPKIT_TRANSLATION_HPP
