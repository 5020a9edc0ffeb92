// Arithmetic signatures, the fuel-bounded standard model with its oracle
// bindings, iterated compositional truth, and bounded provability search.

#ifndef INTERPKIT_ARITHMETIC_HPP
#define INTERPKIT_ARITHMETIC_HPP

#include <memory>
#include <mutex>

#include "coding.hpp"
#include "interpretation.hpp"
#include "oracle.hpp"
#include "relationalize.hpp"
#include "translation.hpp"

namespace interpkit {

// L_PA: 0, 1, +, *, < (equality built in).
inline Language lang_pa() {
  return Language("pa", {{"<", 2}},
                  {{"0", 0}, {"1", 0}, {"+", 2}, {"*", 2}});
}

// Relational arithmetic: Zero/1, One/1, Add/3, Mul/3 plus < carried over.
inline Language lang_pa_rel() { return relationalize_language(lang_pa()); }

// L_PA extended by the exponential graph.
inline Language lang_pa_exp() {
  return Language("pa_exp", {{"<", 2}, {"Exp", 2}},
                  {{"0", 0}, {"1", 0}, {"+", 2}, {"*", 2}});
}

// L_n: arithmetic plus truth predicates P_1..P_n (the coded language of the
// iterated-truth theories).
inline Language lang_l(int n) {
  std::vector<RelationSym> rels{{"<", 2}};
  for (int i = 1; i <= n; ++i) rels.push_back({"P" + std::to_string(i), 1});
  return Language("l" + std::to_string(n), std::move(rels),
                  {{"0", 0}, {"1", 0}, {"+", 2}, {"*", 2}});
}

// --- standard model ----------------------------------------------------------

// Binds the relational arithmetic predicates over N when the language
// declares them; + * 0 1 < = are built into the evaluator.
inline void bind_relational_arithmetic(OracleModel& m) {
  const Language& lang = m.lang();
  auto bind = [&](const std::string& sym, OracleModel::Pred p) {
    if (lang.has_relation(sym)) m.bind_predicate(sym, std::move(p));
  };
  bind("Zero", [](const std::vector<Nat>& a) { return tri(a[0] == 0); });
  bind("One", [](const std::vector<Nat>& a) { return tri(a[0] == 1); });
  bind("Add", [](const std::vector<Nat>& a) { return tri(a[0] + a[1] == a[2]); });
  bind("Mul", [](const std::vector<Nat>& a) { return tri(a[0] * a[1] == a[2]); });
  bind("Less", [](const std::vector<Nat>& a) { return tri(a[0] < a[1]); });
  bind("Exp", [](const std::vector<Nat>& a) {
    if (a[0] > 4096) return TriBool::Unknown;  // 2^a[0] would be unreasonable
    Nat v = Nat(1) << (unsigned)(unsigned long)a[0];
    return tri(v == a[1]);
  });
}

inline OracleModel standard_model(const Language& lang, long fuel) {
  OracleModel m(lang, fuel);
  bind_relational_arithmetic(m);
  return m;
}

// --- iterated compositional truth ---------------------------------------------
//
// CT_j over N: P_j holds of codes of L_{j-1}-sentences true in the j-1st
// iterate. Unbounded quantifiers inside the recursion scan [0, fuel), the
// same closed-world policy the surrounding evaluator uses, so the two sides
// of every compositional axiom instance are computed by the same scans.

class TruthOracle {
 public:
  TruthOracle(int levels, long fuel) : fuel_(fuel) {
    for (int j = 0; j <= levels; ++j)
      schemes_.push_back(std::make_shared<CodingScheme>(lang_l(j)));
  }

  long fuel() const { return fuel_; }
  const CodingScheme& scheme(int j) const { return *schemes_.at(j); }

  // truth of an L_{level} formula under an assignment
  bool truth(int level, const Formula& f, NatAssignment& a) const {
    switch (f.kind()) {
      case Formula::Atom: {
        std::vector<Nat> args;
        for (const auto& t : f.terms()) args.push_back(value(t, a));
        if (f.sym() == "<") return args[0] < args[1];
        if (f.sym().rfind("P", 0) == 0) {
          int j = std::stoi(f.sym().substr(1));
          if (j < 1 || j > level) throw EvalError("truth predicate above level");
          return holds_p(j, args[0]);
        }
        throw EvalError("unknown relation in truth recursion: " + f.sym());
      }
      case Formula::Eq:
        return value(f.terms()[0], a) == value(f.terms()[1], a);
      case Formula::Not:
        return !truth(level, f.sub(), a);
      case Formula::And:
        return truth(level, f.sub(0), a) && truth(level, f.sub(1), a);
      case Formula::Or:
        return truth(level, f.sub(0), a) || truth(level, f.sub(1), a);
      case Formula::Imp:
        return !truth(level, f.sub(0), a) || truth(level, f.sub(1), a);
      default: {
        bool universal = f.kind() == Formula::Forall || f.kind() == Formula::BForall;
        Nat limit = (f.kind() == Formula::BForall || f.kind() == Formula::BExists)
                        ? value(f.bound(), a)
                        : Nat(fuel_);
        auto it = a.find(f.sym());
        std::optional<Nat> saved = it != a.end() ? std::optional<Nat>(it->second) : std::nullopt;
        bool res = universal;
        for (Nat v = 0; v < limit; ++v) {
          a[f.sym()] = v;
          bool b = truth(level, f.sub(), a);
          if (universal != b) {
            res = b;
            break;
          }
        }
        if (saved)
          a[f.sym()] = *saved;
        else
          a.erase(f.sym());
        return res;
      }
    }
  }

  // P_j as a predicate of a code: false off sentence codes of L_{j-1}
  bool holds_p(int j, const Nat& code) const {
    auto key = std::make_pair(j, code);
    {
      std::lock_guard<std::mutex> lock(mu_);
      auto it = memo_.find(key);
      if (it != memo_.end()) return it->second;
    }
    bool res = false;
    try {
      Formula f = scheme(j - 1).decode(code);
      if (f.closed()) {
        NatAssignment a;
        res = truth(j - 1, f, a);
      }
    } catch (const std::exception&) {
      res = false;
    }
    std::lock_guard<std::mutex> lock(mu_);
    memo_[key] = res;
    return res;
  }

 private:
  static Nat value(const Term& t, const NatAssignment& a) {
    if (t.kind() == Term::Var) {
      auto it = a.find(t.sym());
      if (it == a.end()) throw EvalError("open term in truth recursion");
      return it->second;
    }
    if (t.sym() == "0") return 0;
    if (t.sym() == "1") return 1;
    if (t.sym() == "+") return value(t.args()[0], a) + value(t.args()[1], a);
    if (t.sym() == "*") return value(t.args()[0], a) * value(t.args()[1], a);
    throw EvalError("uninterpreted function in truth recursion: " + t.sym());
  }

  long fuel_;
  std::vector<std::shared_ptr<CodingScheme>> schemes_;
  mutable std::map<std::pair<int, Nat>, bool> memo_;
  mutable std::mutex mu_;
};

// Truth of a Sigma_k / Pi_k formula of pure arithmetic at a point: the
// Sat_Gamma oracles share the truth recursion at level 0.
inline bool sat_gamma(const TruthOracle& to, const Nat& phi_code, const Nat& x) {
  Formula f = to.scheme(0).decode(phi_code);
  auto fv = f.free_vars();
  NatAssignment a;
  if (fv.size() == 1) a[*fv.begin()] = x;
  if (fv.size() > 1) return false;
  return to.truth(0, f, a);
}

// --- embedding adapter over the oracle model -----------------------------------

// Interprets the arithmetic shape {Zero, One, Add, Less} of a translation in
// the fuel-bounded standard model; candidate searches scan [0, fuel).
class OracleArithModel {
 public:
  using Value = Nat;
  OracleArithModel(const OracleModel& m, const Translation& n) : m_(m), n_(n) {}

  std::optional<Nat> zero() { return find_unique("Zero", {}); }
  std::optional<Nat> succ(const Nat& x) {
    auto one = find_unique("One", {});
    if (!one) return std::nullopt;
    for (Nat b = 0; b < m_.fuel(); ++b)
      if (in_domain(b) && holds("Add", {x, *one, b})) return b;
    return std::nullopt;
  }
  bool equiv(const Nat& a, const Nat& b) {
    NatAssignment asg{{n_.equality().vars[0], a}, {n_.equality().vars[1], b}};
    return eval_oracle(m_, n_.equality().formula, asg) == TriBool::True;
  }
  bool less(const Nat& a, const Nat& b) { return holds("Less", {a, b}); }
  std::vector<Nat> elements_below(const Nat& v) {
    std::vector<Nat> out;
    for (Nat a = 0; a < m_.fuel(); ++a)
      if (in_domain(a) && less(a, v)) out.push_back(a);
    return out;
  }

 private:
  bool in_domain(const Nat& a) {
    NatAssignment asg{{n_.delta_var(), a}};
    return eval_oracle(m_, n_.delta(), asg) == TriBool::True;
  }
  bool holds(const std::string& sym, const std::vector<Nat>& args) {
    const auto& e = n_.relations().at(sym);
    NatAssignment asg;
    for (size_t i = 0; i < e.vars.size(); ++i) asg[e.vars[i]] = args[i];
    return eval_oracle(m_, e.formula, asg) == TriBool::True;
  }
  std::optional<Nat> find_unique(const std::string& sym, const std::vector<Nat>& prefix) {
    for (Nat a = 0; a < m_.fuel(); ++a) {
      if (!in_domain(a)) continue;
      std::vector<Nat> args = prefix;
      args.push_back(a);
      if (holds(sym, args)) return a;
    }
    return std::nullopt;
  }

  const OracleModel& m_;
  const Translation& n_;
};

inline EmbeddingResult<Nat> build_initial_embedding(const OracleModel& m, const Translation& n,
                                                    int fuel) {
  OracleArithModel model(m, n);
  return build_initial_embedding_core<OracleArithModel, Nat>(model, fuel);
}

// Symbolwise-identity translation of src into a superset language tgt,
// relativized to delta. The constructor conjoins the domain guard onto every
// entry, so the guard condition holds syntactically.
inline Translation inclusion_translation(const Language& src, const Language& tgt,
                                         const std::string& delta_var, const Formula& delta) {
  std::map<std::string, RelationEntry> rels;
  for (const auto& r : src.relations()) {
    std::vector<std::string> vars;
    std::vector<Term> args;
    for (int i = 0; i < r.arity; ++i) {
      vars.push_back("x" + std::to_string(i + 1));
      args.push_back(Term::var(vars.back()));
    }
    rels[r.name] = {vars, Formula::atom(r.name, args)};
  }
  RelationEntry eq{{"x1", "x2"}, Formula::eq(Term::var("x1"), Term::var("x2"))};
  return Translation(src, tgt, delta_var, delta, std::move(rels), std::move(eq));
}

// The cut translation: identity on a relational language except for the
// domain formula. The usual way interpretations with a definable cut arise.
inline Translation cut_translation(const Language& lang, const std::string& delta_var,
                                   const Formula& delta) {
  return inclusion_translation(lang, lang, delta_var, delta);
}

}  // namespace interpkit

#endif  // INTERPKIT_ARITHMETIC_HPP
