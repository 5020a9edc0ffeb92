// Fuel-bounded evaluation in the standard model of arithmetic extended by
// executable oracle predicates and functions.
//
// Quantifier policy: bounded quantifiers enumerate exactly below the term
// value; unbounded quantifiers scan [0, fuel). A universal scan that exhausts
// the fuel without a counterexample counts as confirmation, so true/false
// answers are reliable exactly for sentences whose witnesses or counterexamples
// lie below the fuel; harness corpora are chosen that way. `unknown` enters
// only through oracle abstention (semi-decidable oracles such as provability)
// and propagates by Kleene logic.

#ifndef INTERPKIT_ORACLE_HPP
#define INTERPKIT_ORACLE_HPP

#include <boost/multiprecision/cpp_int.hpp>
#include <functional>

#include "formula.hpp"
#include "structure.hpp"

namespace interpkit {

using Nat = boost::multiprecision::cpp_int;

enum class TriBool { False, True, Unknown };

inline TriBool tri(bool b) { return b ? TriBool::True : TriBool::False; }
inline TriBool tri_not(TriBool a) {
  if (a == TriBool::Unknown) return a;
  return a == TriBool::True ? TriBool::False : TriBool::True;
}
inline TriBool tri_and(TriBool a, TriBool b) {
  if (a == TriBool::False || b == TriBool::False) return TriBool::False;
  if (a == TriBool::Unknown || b == TriBool::Unknown) return TriBool::Unknown;
  return TriBool::True;
}
inline TriBool tri_or(TriBool a, TriBool b) {
  if (a == TriBool::True || b == TriBool::True) return TriBool::True;
  if (a == TriBool::Unknown || b == TriBool::Unknown) return TriBool::Unknown;
  return TriBool::True == a ? TriBool::True : TriBool::False;
}
inline const char* tri_str(TriBool t) {
  switch (t) {
    case TriBool::True: return "true";
    case TriBool::False: return "false";
    default: return "unknown";
  }
}

// Oracle procedures signal malfunction by throwing; that surfaces as an
// evaluation error, distinct from an Unknown verdict.
struct OracleError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using NatAssignment = std::map<std::string, Nat>;

class OracleModel {
 public:
  using Pred = std::function<TriBool(const std::vector<Nat>&)>;
  using Func = std::function<Nat(const std::vector<Nat>&)>;

  OracleModel(Language lang, long fuel) : lang_(std::move(lang)), fuel_(fuel) {
    if (fuel <= 0) throw LangError("fuel must be positive");
  }

  const Language& lang() const { return lang_; }
  long fuel() const { return fuel_; }
  void set_fuel(long f) { fuel_ = f; }

  void bind_predicate(const std::string& sym, Pred p) {
    lang_.relation(sym);
    preds_[sym] = std::move(p);
  }
  void bind_function(const std::string& sym, Func f) {
    lang_.function(sym);
    funcs_[sym] = std::move(f);
  }

  bool has_predicate(const std::string& sym) const { return preds_.count(sym) != 0; }

  TriBool call_predicate(const std::string& sym, const std::vector<Nat>& args) const {
    auto it = preds_.find(sym);
    if (it == preds_.end()) throw EvalError("unbound oracle predicate " + sym);
    return it->second(args);
  }
  Nat call_function(const std::string& sym, const std::vector<Nat>& args) const {
    auto it = funcs_.find(sym);
    if (it == funcs_.end()) throw EvalError("unbound oracle function " + sym);
    return it->second(args);
  }

 private:
  Language lang_;
  long fuel_;
  std::map<std::string, Pred> preds_;
  std::map<std::string, Func> funcs_;
};

namespace detail {

struct OracleMemo {
  // per-evaluation cache of oracle predicate calls; fuel is fixed within a call
  std::map<std::pair<std::string, std::vector<Nat>>, TriBool> pred;
};

inline Nat eval_term_nat(const OracleModel& m, const Term& t, const NatAssignment& a) {
  if (t.kind() == Term::Var) {
    auto it = a.find(t.sym());
    if (it == a.end()) throw EvalError("uncovered free variable " + t.sym());
    return it->second;
  }
  const std::string& s = t.sym();
  if (s == "0" && t.args().empty()) return 0;
  if (s == "1" && t.args().empty()) return 1;
  std::vector<Nat> args;
  args.reserve(t.args().size());
  for (const auto& x : t.args()) args.push_back(eval_term_nat(m, x, a));
  if (s == "+" && args.size() == 2) return args[0] + args[1];
  if (s == "*" && args.size() == 2) return args[0] * args[1];
  return m.call_function(s, args);
}

inline TriBool eval_oracle_rec(const OracleModel& m, const Formula& f, NatAssignment& a,
                               OracleMemo& memo) {
  switch (f.kind()) {
    case Formula::Atom: {
      std::vector<Nat> args;
      args.reserve(f.terms().size());
      for (const auto& t : f.terms()) args.push_back(eval_term_nat(m, t, a));
      if (f.sym() == "<" && args.size() == 2) return tri(args[0] < args[1]);
      if (m.has_predicate(f.sym())) {
        auto key = std::make_pair(f.sym(), args);
        auto it = memo.pred.find(key);
        if (it != memo.pred.end()) return it->second;
        TriBool r = m.call_predicate(f.sym(), args);
        memo.pred.emplace(std::move(key), r);
        return r;
      }
      return m.call_predicate(f.sym(), args);  // reports the unbound symbol
    }
    case Formula::Eq:
      return tri(eval_term_nat(m, f.terms()[0], a) == eval_term_nat(m, f.terms()[1], a));
    case Formula::Not:
      return tri_not(eval_oracle_rec(m, f.sub(), a, memo));
    case Formula::And: {
      TriBool l = eval_oracle_rec(m, f.sub(0), a, memo);
      if (l == TriBool::False) return TriBool::False;
      return tri_and(l, eval_oracle_rec(m, f.sub(1), a, memo));
    }
    case Formula::Or: {
      TriBool l = eval_oracle_rec(m, f.sub(0), a, memo);
      if (l == TriBool::True) return TriBool::True;
      return tri_or(l, eval_oracle_rec(m, f.sub(1), a, memo));
    }
    case Formula::Imp: {
      TriBool l = eval_oracle_rec(m, f.sub(0), a, memo);
      if (l == TriBool::False) return TriBool::True;
      return tri_or(tri_not(l), eval_oracle_rec(m, f.sub(1), a, memo));
    }
    default: {
      bool universal = f.kind() == Formula::Forall || f.kind() == Formula::BForall;
      Nat limit;
      if (f.kind() == Formula::BForall || f.kind() == Formula::BExists)
        limit = eval_term_nat(m, f.bound(), a);
      else
        limit = m.fuel();

      auto it = a.find(f.sym());
      std::optional<Nat> saved =
          it != a.end() ? std::optional<Nat>(it->second) : std::nullopt;
      TriBool acc = universal ? TriBool::True : TriBool::False;
      for (Nat v = 0; v < limit; ++v) {
        a[f.sym()] = v;
        TriBool r = eval_oracle_rec(m, f.sub(), a, memo);
        if (universal) {
          if (r == TriBool::False) {
            acc = TriBool::False;
            break;
          }
          acc = tri_and(acc, r);
        } else {
          if (r == TriBool::True) {
            acc = TriBool::True;
            break;
          }
          acc = tri_or(acc, r);
        }
      }
      if (saved)
        a[f.sym()] = *saved;
      else
        a.erase(f.sym());
      return acc;
    }
  }
}

}  // namespace detail

inline TriBool eval_oracle(const OracleModel& m, const Formula& f,
                           const NatAssignment& a0 = {}) {
  for (const auto& v : f.free_vars())
    if (!a0.count(v)) throw EvalError("uncovered free variable " + v);
  NatAssignment a = a0;
  detail::OracleMemo memo;
  return detail::eval_oracle_rec(m, f, a, memo);
}

inline Nat eval_term_nat(const OracleModel& m, const Term& t, const NatAssignment& a = {}) {
  return detail::eval_term_nat(m, t, a);
}

}  // namespace interpkit

#endif  // INTERPKIT_ORACLE_HPP
