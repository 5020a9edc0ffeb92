// Core syntax: languages, terms, formulas of many-sorted-free first-order logic.

#ifndef INTERPKIT_FORMULA_HPP
#define INTERPKIT_FORMULA_HPP

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace interpkit {

struct LangError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Arithmetical-hierarchy tag. Delta0 covers the bounded/quantifier-free level;
// Sigma/Pi carry n >= 1.
struct FormulaClass {
  enum Kind { Delta0, Sigma, Pi };
  Kind kind = Delta0;
  int n = 0;

  static FormulaClass delta0() { return {Delta0, 0}; }
  static FormulaClass sigma(int n) { return {Sigma, n}; }
  static FormulaClass pi(int n) { return {Pi, n}; }

  bool operator==(const FormulaClass& o) const { return kind == o.kind && n == o.n; }
  bool operator!=(const FormulaClass& o) const { return !(*this == o); }

  // Least m such that the class is contained in Sigma_m (Delta0 counts as Sigma_1).
  int sigma_level() const {
    if (kind == Delta0) return 1;
    return kind == Sigma ? std::max(1, n) : n + 1;
  }
  int pi_level() const {
    if (kind == Delta0) return 1;
    return kind == Pi ? std::max(1, n) : n + 1;
  }

  std::string str() const {
    switch (kind) {
      case Delta0: return "Delta0";
      case Sigma: return "Sigma" + std::to_string(n);
      default: return "Pi" + std::to_string(n);
    }
  }
};

struct RelationSym {
  std::string name;
  int arity = 0;
  // Oracle predicates may carry a declared hierarchy class; plain symbols are Delta0.
  FormulaClass cls = FormulaClass::delta0();
};

struct FunctionSym {
  std::string name;
  int arity = 0;  // 0-ary functions are constants
};

// A finite first-order signature. Symbol names are pairwise distinct across
// relations and functions; equality is built in and not listed.
class Language {
 public:
  Language() = default;
  Language(std::string name, std::vector<RelationSym> rels, std::vector<FunctionSym> fns)
      : name_(std::move(name)), relations_(std::move(rels)), functions_(std::move(fns)) {
    for (const auto& r : relations_) {
      if (r.arity < 0) throw LangError("negative arity for relation " + r.name);
      if (!rel_.emplace(r.name, &r - relations_.data()).second)
        throw LangError("duplicate symbol " + r.name);
    }
    for (const auto& f : functions_) {
      if (f.arity < 0) throw LangError("negative arity for function " + f.name);
      if (rel_.count(f.name) || !fn_.emplace(f.name, &f - functions_.data()).second)
        throw LangError("duplicate symbol " + f.name);
    }
  }

  const std::string& name() const { return name_; }
  const std::vector<RelationSym>& relations() const { return relations_; }
  const std::vector<FunctionSym>& functions() const { return functions_; }

  bool has_relation(const std::string& s) const { return rel_.count(s) != 0; }
  bool has_function(const std::string& s) const { return fn_.count(s) != 0; }
  bool has_symbol(const std::string& s) const { return has_relation(s) || has_function(s); }

  const RelationSym& relation(const std::string& s) const {
    auto it = rel_.find(s);
    if (it == rel_.end()) throw LangError("unknown relation symbol " + s);
    return relations_[it->second];
  }
  const FunctionSym& function(const std::string& s) const {
    auto it = fn_.find(s);
    if (it == fn_.end()) throw LangError("unknown function symbol " + s);
    return functions_[it->second];
  }

  bool relational() const {
    for (const auto& f : functions_)
      if (f.arity > 0) return false;
    return true;
  }

 private:
  std::string name_;
  std::vector<RelationSym> relations_;
  std::vector<FunctionSym> functions_;
  std::map<std::string, size_t> rel_, fn_;
};

// ---------------------------------------------------------------------------
// Terms

class Term {
 public:
  enum Kind { Var, App };

  struct Node {
    Kind kind;
    std::string sym;         // variable name or function symbol
    std::vector<Term> args;  // empty for variables and constants
  };

  Term() = default;

  static Term var(std::string name) {
    return Term(std::make_shared<const Node>(Node{Var, std::move(name), {}}));
  }
  static Term app(std::string fn, std::vector<Term> args = {}) {
    return Term(std::make_shared<const Node>(Node{App, std::move(fn), std::move(args)}));
  }

  bool ok() const { return p_ != nullptr; }
  Kind kind() const { return p_->kind; }
  const std::string& sym() const { return p_->sym; }
  const std::vector<Term>& args() const { return p_->args; }

  bool operator==(const Term& o) const {
    if (p_ == o.p_) return true;
    if (!p_ || !o.p_) return false;
    if (p_->kind != o.p_->kind || p_->sym != o.p_->sym) return false;
    return p_->args == o.p_->args;
  }
  bool operator!=(const Term& o) const { return !(*this == o); }

  void collect_vars(std::set<std::string>& out) const {
    if (p_->kind == Var) {
      out.insert(p_->sym);
      return;
    }
    for (const auto& a : p_->args) a.collect_vars(out);
  }
  std::set<std::string> vars() const {
    std::set<std::string> v;
    collect_vars(v);
    return v;
  }

  size_t size() const {
    size_t s = 1;
    if (p_->kind == App)
      for (const auto& a : p_->args) s += a.size();
    return s;
  }

 private:
  explicit Term(std::shared_ptr<const Node> p) : p_(std::move(p)) {}
  std::shared_ptr<const Node> p_;
};

// ---------------------------------------------------------------------------
// Formulas

class Formula {
 public:
  enum Kind {
    Atom,     // relation symbol applied to terms
    Eq,       // t = s
    Not,
    And,
    Or,
    Imp,
    Forall,
    Exists,
    BForall,  // forall v < t (...)
    BExists,  // exists v < t (...)
  };

  struct Node {
    Kind kind;
    std::string sym;          // relation name (Atom) or bound variable (quantifiers)
    std::vector<Term> terms;  // atom arguments; [lhs,rhs] for Eq; [bound] for B-quantifiers
    std::vector<Formula> subs;
  };

  Formula() = default;

  static Formula atom(std::string rel, std::vector<Term> args = {}) {
    return mk(Node{Atom, std::move(rel), std::move(args), {}});
  }
  static Formula eq(Term a, Term b) { return mk(Node{Eq, "", {std::move(a), std::move(b)}, {}}); }
  static Formula lnot(Formula f) { return mk(Node{Not, "", {}, {std::move(f)}}); }
  static Formula land(Formula a, Formula b) {
    return mk(Node{And, "", {}, {std::move(a), std::move(b)}});
  }
  static Formula lor(Formula a, Formula b) {
    return mk(Node{Or, "", {}, {std::move(a), std::move(b)}});
  }
  static Formula imp(Formula a, Formula b) {
    return mk(Node{Imp, "", {}, {std::move(a), std::move(b)}});
  }
  static Formula iff(const Formula& a, const Formula& b) {
    Formula fwd = imp(a, b);
    Formula bwd = imp(b, a);
    return land(fwd, bwd);
  }
  static Formula forall(std::string v, Formula body) {
    return mk(Node{Forall, std::move(v), {}, {std::move(body)}});
  }
  static Formula exists(std::string v, Formula body) {
    return mk(Node{Exists, std::move(v), {}, {std::move(body)}});
  }
  static Formula forall_below(std::string v, Term bound, Formula body) {
    return mk(Node{BForall, std::move(v), {std::move(bound)}, {std::move(body)}});
  }
  static Formula exists_below(std::string v, Term bound, Formula body) {
    return mk(Node{BExists, std::move(v), {std::move(bound)}, {std::move(body)}});
  }
  static Formula conj(const std::vector<Formula>& fs) {
    if (fs.empty()) throw LangError("empty conjunction");
    Formula acc = fs[0];
    for (size_t i = 1; i < fs.size(); ++i) acc = land(acc, fs[i]);
    return acc;
  }

  bool ok() const { return p_ != nullptr; }
  Kind kind() const { return p_->kind; }
  const std::string& sym() const { return p_->sym; }
  const std::vector<Term>& terms() const { return p_->terms; }
  const std::vector<Formula>& subs() const { return p_->subs; }
  const Formula& sub(size_t i = 0) const { return p_->subs[i]; }
  const Term& bound() const { return p_->terms[0]; }

  bool is_quantifier() const {
    return p_->kind == Forall || p_->kind == Exists || p_->kind == BForall || p_->kind == BExists;
  }
  bool is_binary() const { return p_->kind == And || p_->kind == Or || p_->kind == Imp; }
  bool is_atomic() const { return p_->kind == Atom || p_->kind == Eq; }

  bool operator==(const Formula& o) const {
    if (p_ == o.p_) return true;
    if (!p_ || !o.p_) return false;
    if (p_->kind != o.p_->kind || p_->sym != o.p_->sym) return false;
    return p_->terms == o.p_->terms && p_->subs == o.p_->subs;
  }
  bool operator!=(const Formula& o) const { return !(*this == o); }

  void collect_free(std::set<std::string>& out, std::set<std::string>& bound_stack) const {
    switch (p_->kind) {
      case Atom:
      case Eq: {
        std::set<std::string> vs;
        for (const auto& t : p_->terms) t.collect_vars(vs);
        for (const auto& v : vs)
          if (!bound_stack.count(v)) out.insert(v);
        return;
      }
      case Not:
      case And:
      case Or:
      case Imp:
        for (const auto& s : p_->subs) s.collect_free(out, bound_stack);
        return;
      default: {  // quantifiers
        if (p_->kind == BForall || p_->kind == BExists) {
          std::set<std::string> vs = p_->terms[0].vars();
          for (const auto& v : vs)
            if (!bound_stack.count(v)) out.insert(v);
        }
        bool fresh = bound_stack.insert(p_->sym).second;
        p_->subs[0].collect_free(out, bound_stack);
        if (fresh) bound_stack.erase(p_->sym);
        return;
      }
    }
  }

  std::set<std::string> free_vars() const {
    std::set<std::string> out, stack;
    collect_free(out, stack);
    return out;
  }
  bool closed() const { return free_vars().empty(); }

  size_t size() const {
    size_t s = 1;
    for (const auto& t : p_->terms) s += (p_->kind == Atom || p_->kind == Eq) ? t.size() : 0;
    for (const auto& f : p_->subs) s += f.size();
    return s;
  }
  // Node count ignoring term structure; the enumeration and acceptance
  // harness measure formulas this way.
  size_t shape_size() const {
    size_t s = 1;
    for (const auto& f : p_->subs) s += f.shape_size();
    return s;
  }
  size_t depth() const {
    size_t d = 0;
    for (const auto& f : p_->subs) d = std::max(d, f.depth());
    return d + 1;
  }

 private:
  static Formula mk(Node n) {
    Formula f;
    f.p_ = std::make_shared<const Node>(std::move(n));
    return f;
  }
  std::shared_ptr<const Node> p_;
};

// Deterministic fresh-name generator: append primes until the name avoids `used`.
inline std::string fresh_name(const std::string& base, const std::set<std::string>& used) {
  std::string n = base;
  while (used.count(n)) n += '\'';
  return n;
}

// ---------------------------------------------------------------------------
// Printing. The rendering is canonical: binary connectives are fully
// parenthesized, quantifier bodies always sit in parentheses, terms built from
// binary function symbols print in parenthesized infix. parse_formula of the
// result gives back the identical tree.

inline bool infix_fn(const std::string& s) { return s == "+" || s == "*"; }

inline std::string print_term(const Term& t) {
  if (t.kind() == Term::Var) return t.sym();
  if (t.args().empty()) return t.sym();
  if (infix_fn(t.sym()) && t.args().size() == 2)
    return "(" + print_term(t.args()[0]) + t.sym() + print_term(t.args()[1]) + ")";
  std::string s = t.sym() + "(";
  for (size_t i = 0; i < t.args().size(); ++i) {
    if (i) s += ",";
    s += print_term(t.args()[i]);
  }
  return s + ")";
}

inline std::string print_formula(const Formula& f);

namespace detail {
inline std::string print_quant_body(const Formula& body) {
  if (body.is_binary()) return print_formula(body);  // already wrapped
  return "(" + print_formula(body) + ")";
}
}  // namespace detail

inline std::string print_formula(const Formula& f) {
  switch (f.kind()) {
    case Formula::Atom: {
      if (f.sym() == "<" && f.terms().size() == 2)
        return print_term(f.terms()[0]) + " < " + print_term(f.terms()[1]);
      std::string s = f.sym() + "(";
      for (size_t i = 0; i < f.terms().size(); ++i) {
        if (i) s += ",";
        s += print_term(f.terms()[i]);
      }
      return s + ")";
    }
    case Formula::Eq:
      return print_term(f.terms()[0]) + " = " + print_term(f.terms()[1]);
    case Formula::Not:
      // binary subformulas come out self-parenthesized, everything else binds
      // tighter than `not` in the grammar
      return "not " + print_formula(f.sub());
    case Formula::And:
      return "(" + print_formula(f.sub(0)) + " and " + print_formula(f.sub(1)) + ")";
    case Formula::Or:
      return "(" + print_formula(f.sub(0)) + " or " + print_formula(f.sub(1)) + ")";
    case Formula::Imp:
      return "(" + print_formula(f.sub(0)) + " -> " + print_formula(f.sub(1)) + ")";
    case Formula::Forall:
      return "forall " + f.sym() + " " + detail::print_quant_body(f.sub());
    case Formula::Exists:
      return "exists " + f.sym() + " " + detail::print_quant_body(f.sub());
    case Formula::BForall:
      return "forall " + f.sym() + " < " + print_term(f.bound()) + " " +
             detail::print_quant_body(f.sub());
    case Formula::BExists:
      return "exists " + f.sym() + " < " + print_term(f.bound()) + " " +
             detail::print_quant_body(f.sub());
  }
  throw LangError("corrupt formula node");
}

// Arity/symbol check of a formula against a language. Atoms named "<" are
// accepted when the language declares the order relation.
inline void check_term(const Term& t, const Language& lang) {
  if (t.kind() == Term::Var) return;
  const auto& fs = lang.function(t.sym());
  if ((int)t.args().size() != fs.arity)
    throw LangError("arity mismatch for function " + t.sym());
  for (const auto& a : t.args()) check_term(a, lang);
}

inline void check_formula(const Formula& f, const Language& lang) {
  switch (f.kind()) {
    case Formula::Atom: {
      const auto& rs = lang.relation(f.sym());
      if ((int)f.terms().size() != rs.arity)
        throw LangError("arity mismatch for relation " + f.sym());
      for (const auto& t : f.terms()) check_term(t, lang);
      return;
    }
    case Formula::Eq:
      check_term(f.terms()[0], lang);
      check_term(f.terms()[1], lang);
      return;
    case Formula::BForall:
    case Formula::BExists:
      if (!lang.has_relation("<"))
        throw LangError("bounded quantifier requires the order symbol <");
      check_term(f.bound(), lang);
      check_formula(f.sub(), lang);
      return;
    default:
      for (const auto& s : f.subs()) check_formula(s, lang);
      return;
  }
}

}  // namespace interpkit

#endif  // INTERPKIT_FORMULA_HPP
