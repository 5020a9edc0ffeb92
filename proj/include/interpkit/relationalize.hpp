// Replacing function symbols by graph relations. An n-ary function f becomes
// the (n+1)-ary relation f_g holding the graph; nested terms flatten through
// existential witnesses. Over structures interpreting each graph as a total
// function the output is equivalent to the input.

#ifndef INTERPKIT_RELATIONALIZE_HPP
#define INTERPKIT_RELATIONALIZE_HPP

#include "formula.hpp"
#include "substitute.hpp"

namespace interpkit {

inline std::string graph_symbol(const std::string& fn) {
  if (fn == "+") return "Add";
  if (fn == "*") return "Mul";
  if (fn == "0") return "Zero";
  if (fn == "1") return "One";
  return fn + "_g";
}

inline Language relationalize_language(const Language& lang) {
  std::vector<RelationSym> rels = lang.relations();
  for (const auto& f : lang.functions())
    rels.push_back({graph_symbol(f.name), f.arity + 1, FormulaClass::delta0()});
  return Language(lang.name() + "_rel", std::move(rels), {});
}

namespace detail {

// Flatten t to a variable, accumulating graph atoms and witness variables.
inline Term flatten_term(const Term& t, std::vector<Formula>& graph_atoms,
                         std::vector<std::string>& witnesses, std::set<std::string>& used) {
  if (t.kind() == Term::Var) return t;
  std::vector<Term> args;
  args.reserve(t.args().size() + 1);
  for (const auto& a : t.args()) args.push_back(flatten_term(a, graph_atoms, witnesses, used));
  std::string w = fresh_name("w", used);
  used.insert(w);
  witnesses.push_back(w);
  args.push_back(Term::var(w));
  graph_atoms.push_back(Formula::atom(graph_symbol(t.sym()), std::move(args)));
  return Term::var(w);
}

inline Formula wrap_witnesses(Formula core, const std::vector<Formula>& atoms,
                              const std::vector<std::string>& witnesses) {
  for (const auto& a : atoms) core = Formula::land(a, core);
  for (auto it = witnesses.rbegin(); it != witnesses.rend(); ++it)
    core = Formula::exists(*it, core);
  return core;
}

inline Formula rel_rec(const Formula& f, std::set<std::string>& used) {
  switch (f.kind()) {
    case Formula::Atom:
    case Formula::Eq: {
      std::vector<Formula> atoms;
      std::vector<std::string> ws;
      std::vector<Term> flat;
      flat.reserve(f.terms().size());
      for (const auto& t : f.terms()) flat.push_back(flatten_term(t, atoms, ws, used));
      Formula core = f.kind() == Formula::Eq ? Formula::eq(flat[0], flat[1])
                                             : Formula::atom(f.sym(), std::move(flat));
      return wrap_witnesses(core, atoms, ws);
    }
    case Formula::Not:
      return Formula::lnot(rel_rec(f.sub(), used));
    case Formula::And:
      return Formula::land(rel_rec(f.sub(0), used), rel_rec(f.sub(1), used));
    case Formula::Or:
      return Formula::lor(rel_rec(f.sub(0), used), rel_rec(f.sub(1), used));
    case Formula::Imp:
      return Formula::imp(rel_rec(f.sub(0), used), rel_rec(f.sub(1), used));
    case Formula::Forall:
    case Formula::Exists: {
      used.insert(f.sym());
      Formula body = rel_rec(f.sub(), used);
      return f.kind() == Formula::Forall ? Formula::forall(f.sym(), body)
                                         : Formula::exists(f.sym(), body);
    }
    case Formula::BForall:
    case Formula::BExists: {
      // forall v < t (phi)  ~>  forall v (exists w (graph(t,w) and v < w) -> phi)
      used.insert(f.sym());
      Formula body = rel_rec(f.sub(), used);
      if (f.bound().kind() == Term::Var) {
        Formula guard = Formula::atom("<", {Term::var(f.sym()), f.bound()});
        return f.kind() == Formula::BForall
                   ? Formula::forall(f.sym(), Formula::imp(guard, body))
                   : Formula::exists(f.sym(), Formula::land(guard, body));
      }
      std::vector<Formula> atoms;
      std::vector<std::string> ws;
      Term b = flatten_term(f.bound(), atoms, ws, used);
      Formula guard =
          wrap_witnesses(Formula::atom("<", {Term::var(f.sym()), b}), atoms, ws);
      return f.kind() == Formula::BForall
                 ? Formula::forall(f.sym(), Formula::imp(guard, body))
                 : Formula::exists(f.sym(), Formula::land(guard, body));
    }
  }
  throw LangError("corrupt formula node");
}

}  // namespace detail

inline std::pair<Language, Formula> relationalize(const Language& lang, const Formula& f) {
  std::set<std::string> used = f.free_vars();
  Formula g = detail::rel_rec(f, used);
  return {relationalize_language(lang), g};
}

inline Formula relationalize_formula(const Formula& f) {
  std::set<std::string> used = f.free_vars();
  return detail::rel_rec(f, used);
}

}  // namespace interpkit

#endif  // INTERPKIT_RELATIONALIZE_HPP
