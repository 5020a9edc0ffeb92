// Prenex normal form and arithmetical-hierarchy classification.
//
// Quantifiers are pulled left to right with the classical equivalences;
// adjacent independent quantifiers keep source order. Bounded quantifiers are
// matrix material: they are not pulled and do not raise the class. Oracle
// relation symbols may carry a declared class, which the classifier treats as
// the class of the atom.

#ifndef INTERPKIT_PRENEX_HPP
#define INTERPKIT_PRENEX_HPP

#include "formula.hpp"
#include "substitute.hpp"

namespace interpkit {

// (s, p): least m with membership in Sigma_m resp. Pi_m; (0, 0) is Delta0.
struct ClassPair {
  int s = 0;
  int p = 0;
};

namespace detail {

inline ClassPair atom_pair(const Formula& f, const Language* lang) {
  if (f.kind() == Formula::Atom && lang && lang->has_relation(f.sym())) {
    FormulaClass c = lang->relation(f.sym()).cls;
    if (c.kind == FormulaClass::Sigma) return {c.n, c.n + 1};
    if (c.kind == FormulaClass::Pi) return {c.n + 1, c.n};
  }
  return {0, 0};
}

inline ClassPair exists_pair(ClassPair c) {
  int s = std::max(1, std::min(c.s, c.p + 1));
  return {s, s + 1};
}
inline ClassPair forall_pair(ClassPair c) {
  int p = std::max(1, std::min(c.p, c.s + 1));
  return {p + 1, p};
}

inline ClassPair class_pair(const Formula& f, const Language* lang) {
  switch (f.kind()) {
    case Formula::Atom:
    case Formula::Eq:
      return atom_pair(f, lang);
    case Formula::Not: {
      ClassPair c = class_pair(f.sub(), lang);
      return {c.p, c.s};
    }
    case Formula::And:
    case Formula::Or: {
      ClassPair a = class_pair(f.sub(0), lang);
      ClassPair b = class_pair(f.sub(1), lang);
      return {std::max(a.s, b.s), std::max(a.p, b.p)};
    }
    case Formula::Imp: {
      ClassPair a = class_pair(f.sub(0), lang);
      ClassPair b = class_pair(f.sub(1), lang);
      return {std::max(a.p, b.s), std::max(a.s, b.p)};
    }
    case Formula::Forall:
      return forall_pair(class_pair(f.sub(), lang));
    case Formula::Exists:
      return exists_pair(class_pair(f.sub(), lang));
    case Formula::BForall:
    case Formula::BExists:
      return class_pair(f.sub(), lang);  // bounded quantifiers do not raise the class
  }
  throw LangError("corrupt formula node");
}

struct Prefix {
  std::vector<std::pair<Formula::Kind, std::string>> qs;  // Forall/Exists only
  Formula matrix;
};

inline Prefix pull(const Formula& f, std::set<std::string>& used);

inline Prefix pull_binary(Formula::Kind op, const Formula& l, const Formula& r, bool flip_left,
                          std::set<std::string>& used) {
  Prefix pl = pull(l, used);
  Prefix pr = pull(r, used);
  Prefix out;
  out.qs.reserve(pl.qs.size() + pr.qs.size());
  for (auto [k, v] : pl.qs) {
    if (flip_left) k = (k == Formula::Forall) ? Formula::Exists : Formula::Forall;
    out.qs.emplace_back(k, v);
  }
  for (const auto& q : pr.qs) out.qs.push_back(q);
  switch (op) {
    case Formula::And: out.matrix = Formula::land(pl.matrix, pr.matrix); break;
    case Formula::Or: out.matrix = Formula::lor(pl.matrix, pr.matrix); break;
    default: out.matrix = Formula::imp(pl.matrix, pr.matrix); break;
  }
  return out;
}

inline Prefix pull(const Formula& f, std::set<std::string>& used) {
  switch (f.kind()) {
    case Formula::Atom:
    case Formula::Eq:
      return {{}, f};
    case Formula::BForall:
    case Formula::BExists: {
      // prenex the body in place but keep the bounded quantifier as matrix
      std::set<std::string> inner_used = used;
      inner_used.insert(f.sym());
      Prefix pb = pull(f.sub(), inner_used);
      Formula body = pb.matrix;
      for (auto it = pb.qs.rbegin(); it != pb.qs.rend(); ++it)
        body = it->first == Formula::Forall ? Formula::forall(it->second, body)
                                            : Formula::exists(it->second, body);
      return {{}, f.kind() == Formula::BForall
                      ? Formula::forall_below(f.sym(), f.bound(), body)
                      : Formula::exists_below(f.sym(), f.bound(), body)};
    }
    case Formula::Not: {
      Prefix ps = pull(f.sub(), used);
      for (auto& [k, v] : ps.qs)
        k = (k == Formula::Forall) ? Formula::Exists : Formula::Forall;
      ps.matrix = Formula::lnot(ps.matrix);
      return ps;
    }
    case Formula::And:
      return pull_binary(Formula::And, f.sub(0), f.sub(1), false, used);
    case Formula::Or:
      return pull_binary(Formula::Or, f.sub(0), f.sub(1), false, used);
    case Formula::Imp:
      return pull_binary(Formula::Imp, f.sub(0), f.sub(1), true, used);
    case Formula::Forall:
    case Formula::Exists: {
      std::string v = f.sym();
      Formula body = f.sub();
      if (used.count(v)) {
        std::set<std::string> avoid = used;
        for (const auto& x : body.free_vars()) avoid.insert(x);
        std::string nv = fresh_name(v, avoid);
        body = rename_free(body, v, nv);
        v = nv;
      }
      used.insert(v);
      Prefix pb = pull(body, used);
      Prefix out;
      out.qs.emplace_back(f.kind(), v);
      for (const auto& q : pb.qs) out.qs.push_back(q);
      out.matrix = pb.matrix;
      return out;
    }
  }
  throw LangError("corrupt formula node");
}

}  // namespace detail

inline FormulaClass pair_to_class(ClassPair c) {
  if (c.s == 0 && c.p == 0) return FormulaClass::delta0();
  // ties can only arise from declared oracle classes; Sigma is preferred
  if (c.s <= c.p) return FormulaClass::sigma(c.s);
  return FormulaClass::pi(c.p);
}

// Returns the deterministic prenex form of f and its hierarchy class. The
// optional language supplies declared classes of oracle relation symbols.
inline std::pair<Formula, FormulaClass> prenex_classify(const Formula& f,
                                                        const Language* lang = nullptr) {
  std::set<std::string> used = f.free_vars();
  detail::Prefix p = detail::pull(f, used);
  Formula out = p.matrix;
  ClassPair cp = detail::class_pair(p.matrix, lang);
  for (auto it = p.qs.rbegin(); it != p.qs.rend(); ++it) {
    if (it->first == Formula::Forall) {
      out = Formula::forall(it->second, out);
      cp = detail::forall_pair(cp);
    } else {
      out = Formula::exists(it->second, out);
      cp = detail::exists_pair(cp);
    }
  }
  return {out, pair_to_class(cp)};
}

inline FormulaClass classify(const Formula& f, const Language* lang = nullptr) {
  return prenex_classify(f, lang).second;
}

// Least k such that f is Sigma_k; the type-p construction needs this.
inline int sigma_level(const Formula& f, const Language* lang = nullptr) {
  return classify(f, lang).sigma_level();
}

}  // namespace interpkit

#endif  // INTERPKIT_PRENEX_HPP
