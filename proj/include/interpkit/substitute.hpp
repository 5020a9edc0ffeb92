// Capture-avoiding substitution on terms and formulas.

#ifndef INTERPKIT_SUBSTITUTE_HPP
#define INTERPKIT_SUBSTITUTE_HPP

#include <map>

#include "formula.hpp"

namespace interpkit {

using TermSubst = std::map<std::string, Term>;

inline Term substitute_term(const Term& t, const TermSubst& s) {
  if (t.kind() == Term::Var) {
    auto it = s.find(t.sym());
    return it == s.end() ? t : it->second;
  }
  if (t.args().empty()) return t;
  std::vector<Term> args;
  args.reserve(t.args().size());
  bool changed = false;
  for (const auto& a : t.args()) {
    args.push_back(substitute_term(a, s));
    changed = changed || !(args.back() == a);
  }
  return changed ? Term::app(t.sym(), std::move(args)) : t;
}

namespace detail {

inline Formula subst_rec(const Formula& f, TermSubst s) {
  // drop identity entries; an empty map means nothing to do
  for (auto it = s.begin(); it != s.end();) {
    if (it->second.kind() == Term::Var && it->second.sym() == it->first)
      it = s.erase(it);
    else
      ++it;
  }
  if (s.empty()) return f;

  switch (f.kind()) {
    case Formula::Atom: {
      std::vector<Term> ts;
      ts.reserve(f.terms().size());
      for (const auto& t : f.terms()) ts.push_back(substitute_term(t, s));
      return Formula::atom(f.sym(), std::move(ts));
    }
    case Formula::Eq:
      return Formula::eq(substitute_term(f.terms()[0], s), substitute_term(f.terms()[1], s));
    case Formula::Not:
      return Formula::lnot(subst_rec(f.sub(), s));
    case Formula::And:
      return Formula::land(subst_rec(f.sub(0), s), subst_rec(f.sub(1), s));
    case Formula::Or:
      return Formula::lor(subst_rec(f.sub(0), s), subst_rec(f.sub(1), s));
    case Formula::Imp:
      return Formula::imp(subst_rec(f.sub(0), s), subst_rec(f.sub(1), s));
    default: {
      const std::string& v = f.sym();
      Term bound;
      bool is_bounded = f.kind() == Formula::BForall || f.kind() == Formula::BExists;
      if (is_bounded) bound = substitute_term(f.bound(), s);

      TermSubst inner = s;
      inner.erase(v);  // the binder shadows v

      // rename the binder when some replacement term would capture it
      std::string nv = v;
      bool capture = false;
      for (const auto& [from, to] : inner) {
        (void)from;
        if (to.vars().count(v)) capture = true;
      }
      Formula body = f.sub();
      if (capture && !inner.empty()) {
        std::set<std::string> avoid = body.free_vars();
        for (const auto& [from, to] : inner) {
          avoid.insert(from);
          for (const auto& x : to.vars()) avoid.insert(x);
        }
        nv = fresh_name(v, avoid);
        inner[v] = Term::var(nv);
      }
      if (!inner.empty()) body = subst_rec(body, inner);

      switch (f.kind()) {
        case Formula::Forall: return Formula::forall(nv, body);
        case Formula::Exists: return Formula::exists(nv, body);
        case Formula::BForall: return Formula::forall_below(nv, bound, body);
        default: return Formula::exists_below(nv, bound, body);
      }
    }
  }
}

}  // namespace detail

// Replace free occurrences of v by t, renaming bound variables as needed.
inline Formula substitute(const Formula& f, const std::string& v, const Term& t) {
  return detail::subst_rec(f, TermSubst{{v, t}});
}

// Simultaneous substitution.
inline Formula substitute_all(const Formula& f, const TermSubst& s) {
  return detail::subst_rec(f, s);
}

// Rename a bound-variable-free occurrence set; convenience for prenexing.
inline Formula rename_free(const Formula& f, const std::string& from, const std::string& to) {
  return substitute(f, from, Term::var(to));
}

}  // namespace interpkit

#endif  // INTERPKIT_SUBSTITUTE_HPP
