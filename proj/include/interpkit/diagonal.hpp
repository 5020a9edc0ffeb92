// Consistency and reflection sentence builders, the parametric diagonal
// lemma, and the flexible-formula constructions.
//
// Provability, satisfaction and truth enter as oracle symbols with executable
// semantics; their genuine arithmetical definitions are out of scope. Codes
// are named inside formulas by compact binary terms (code_term); the
// arithmetical naming function name(x) keeps its canonical unary meaning.

#ifndef INTERPKIT_DIAGONAL_HPP
#define INTERPKIT_DIAGONAL_HPP

#include "arithmetic.hpp"
#include "proof.hpp"

namespace interpkit {

// An r.e. theory hooked up to a provability oracle symbol.
struct RegisteredTheory {
  AxiomStream stream;
  std::string prov_symbol;   // unary provability predicate
  long search_fuel = 32;     // bound for the shallow provability search
};

inline RegisteredTheory empty_theory() {
  return {finite_stream("empty", lang_pa(), {}), "Prov_empty", 32};
}

// L_PA plus the provability oracle and the syntactic functions sub / name.
inline Language lang_provability(const std::string& prov_sym, bool with_ext = false) {
  std::vector<RelationSym> rels{{"<", 2}, {prov_sym, (with_ext ? 2 : 1)}};
  return Language("pa_" + prov_sym, std::move(rels),
                  {{"0", 0}, {"1", 0}, {"+", 2}, {"*", 2}, {"sub", 2}, {"name", 1}});
}

inline void bind_syntax_functions(OracleModel& m, std::shared_ptr<CodingScheme> scheme) {
  if (m.lang().has_function("sub"))
    m.bind_function("sub", [scheme](const std::vector<Nat>& a) {
      try {
        return subst_code(*scheme, a[0], a[1]);
      } catch (const std::exception&) {
        return Nat(0);
      }
    });
  if (m.lang().has_function("name"))
    m.bind_function("name", [scheme](const std::vector<Nat>& a) {
      try {
        return name_code(*scheme, a[0]);
      } catch (const std::exception&) {
        return Nat(0);
      }
    });
}

// Prov_T as a semi-decision oracle: True by shallow search, otherwise Unknown.
inline void bind_provability(OracleModel& m, const RegisteredTheory& reg,
                             std::shared_ptr<CodingScheme> scheme) {
  AxiomStream stream = reg.stream;
  long fuel = reg.search_fuel;
  m.bind_predicate(reg.prov_symbol, [stream, scheme, fuel](const std::vector<Nat>& a) {
    try {
      Formula goal = scheme->decode(a[0]);
      if (shallow_provable(goal, [&](long i) { return stream.axiom_at(i); }, fuel))
        return TriBool::True;
      return TriBool::Unknown;
    } catch (const std::exception&) {
      return TriBool::Unknown;
    }
  });
}

// Prov from T plus one extra coded sentence (for the Gamma-Con scheme).
inline void bind_provability_ext(OracleModel& m, const RegisteredTheory& reg,
                                 std::shared_ptr<CodingScheme> scheme) {
  AxiomStream stream = reg.stream;
  long fuel = reg.search_fuel;
  m.bind_predicate(reg.prov_symbol, [stream, scheme, fuel](const std::vector<Nat>& a) {
    try {
      Formula extra = scheme->decode(a[0]);
      Formula goal = scheme->decode(a[1]);
      auto at = [&](long i) { return i == 0 ? extra : stream.axiom_at(i - 1); };
      if (shallow_provable(goal, at, fuel + 1)) return TriBool::True;
      return TriBool::Unknown;
    } catch (const std::exception&) {
      return TriBool::Unknown;
    }
  });
}

// A ready-made oracle model for a registered theory's provability language.
inline OracleModel provability_model(const RegisteredTheory& reg, long fuel,
                                     bool with_ext = false) {
  OracleModel m(lang_provability(reg.prov_symbol, with_ext), fuel);
  auto scheme = std::make_shared<CodingScheme>(lang_pa());
  bind_syntax_functions(m, scheme);
  if (with_ext)
    bind_provability_ext(m, reg, scheme);
  else
    bind_provability(m, reg, scheme);
  return m;
}

// Con_T: not Prov_T of the code of 0 <> 0.
inline Formula falsum_pa() {
  return Formula::lnot(Formula::eq(Term::app("0"), Term::app("0")));
}

inline Formula con_sentence(const RegisteredTheory& reg) {
  CodingScheme scheme(lang_pa());
  Nat falsum = scheme.encode(falsum_pa());
  return Formula::lnot(Formula::atom(reg.prov_symbol, {code_term(falsum)}));
}

// forall x (Prov_T(sub(code(phi), name(x))) -> phi(x)), phi with at most one
// free variable (which names the quantified x; closed phi quantifies vacuously).
inline Formula reflection_instance(const RegisteredTheory& reg, const Formula& phi) {
  auto fv = phi.free_vars();
  if (fv.size() > 1) throw LangError("reflection wants at most one free variable");
  std::string x = fv.empty() ? "x" : *fv.begin();
  CodingScheme scheme(lang_pa());
  Term named = Term::app("sub", {code_term(scheme.encode(phi)), Term::app("name", {Term::var(x)})});
  return Formula::forall(x, Formula::imp(Formula::atom(reg.prov_symbol, {named}), phi));
}

// forall x (phi(x) -> Con_{T + code(phi(dot x))}), via the binary Prov oracle.
inline Formula gamma_con_instance(const RegisteredTheory& reg, const Formula& phi) {
  auto fv = phi.free_vars();
  if (fv.size() > 1) throw LangError("gamma-con wants at most one free variable");
  std::string x = fv.empty() ? "x" : *fv.begin();
  CodingScheme scheme(lang_pa());
  Term named = Term::app("sub", {code_term(scheme.encode(phi)), Term::app("name", {Term::var(x)})});
  Formula con = Formula::lnot(
      Formula::atom(reg.prov_symbol, {named, code_term(scheme.encode(falsum_pa()))}));
  return Formula::forall(x, Formula::imp(phi, con));
}

// --- the parametric diagonal lemma -------------------------------------------
//
// The designated diagonal variable is v at the oracle level. With
//   alpha := rho[v := diag(v)]     and     a := code(alpha),
// the fixed point is
//   xi := rho[v := diag(code_term(a))],
// and the oracle function diag satisfies
//   diag(a) = subst(a, code(diag(code_term(a)))) = code(xi),
// so the naming term inside xi evaluates to the code of xi itself.

inline constexpr const char* kDiagVar = "v";

inline Nat diag_value(const CodingScheme& scheme, const Nat& a) {
  Formula alpha = scheme.decode(a);
  Term naming = Term::app("diag", {code_term(a)});
  return scheme.encode(substitute(alpha, kDiagVar, naming));
}

inline void bind_diag(OracleModel& m, std::shared_ptr<CodingScheme> scheme) {
  m.bind_function("diag", [scheme](const std::vector<Nat>& a) {
    try {
      return diag_value(*scheme, a[0]);
    } catch (const std::exception&) {
      return Nat(0);
    }
  });
}

struct DiagonalResult {
  Formula xi;
  Nat alpha_code = 0;   // code of rho[v := diag(v)]
  Term naming_term;     // the diag(...) term embedded in xi
  Nat naming_value = 0; // its value under the diag oracle
  Nat xi_code = 0;      // code of xi
  bool certificate_ok = false;
};

// rho over a language containing diag/1; v is the designated variable.
inline DiagonalResult diagonal_fixpoint(const CodingScheme& scheme, Formula rho,
                                        std::string v = kDiagVar) {
  if (v != kDiagVar) {
    if (rho.free_vars().count(kDiagVar))
      throw LangError("variable v is reserved for the diagonal construction");
    rho = substitute(rho, v, Term::var(kDiagVar));
  }
  DiagonalResult out;
  Formula alpha = substitute(rho, kDiagVar, Term::app("diag", {Term::var(kDiagVar)}));
  out.alpha_code = scheme.encode(alpha);
  out.naming_term = Term::app("diag", {code_term(out.alpha_code)});
  out.xi = substitute(rho, kDiagVar, out.naming_term);
  out.xi_code = scheme.encode(out.xi);
  out.naming_value = diag_value(scheme, out.alpha_code);
  out.certificate_ok = out.naming_value == out.xi_code;
  return out;
}

// --- flexible formulas ---------------------------------------------------------

struct FlexibleVariant {
  bool two_param = false;
  int n = 0;  // only for the two-parameter variant
};

// Language of the construction: arithmetic, diag, pair projections, the
// syntactic class predicates, the classed satisfaction/truth oracles, and the
// proof-of-inequivalence oracle for the registered theory.
inline Language lang_flexible(int k, const FlexibleVariant& var) {
  std::vector<RelationSym> rels{{"<", 2},
                                {"FormLe1", 1},
                                {"FormLe1S" + std::to_string(k), 1},
                                {"SatS" + std::to_string(k), 2, FormulaClass::sigma(k)}};
  std::vector<FunctionSym> fns{{"0", 0}, {"1", 0}, {"+", 2}, {"*", 2}, {"diag", 1}};
  if (var.two_param) {
    rels.push_back({"TrS" + std::to_string(var.n + 1), 1, FormulaClass::sigma(var.n + 1)});
    rels.push_back({"PrfNEG", 4});
    fns.push_back({"t1", 1});
    fns.push_back({"t2", 1});
    fns.push_back({"t3", 1});
  } else {
    rels.push_back({"PrfNE", 3});
    fns.push_back({"fst", 1});
    fns.push_back({"snd", 1});
  }
  return Language("flex", std::move(rels), std::move(fns));
}

struct FlexibleResult {
  Formula xi;
  DiagonalResult diag;
  Language lang;
};

// The construction from the flexible-formula theorem: rho' says "phi is a
// suitable formula and z proves that theta is not equivalent to phi (under a
// true auxiliary sentence, in the two-parameter variant)"; rho picks the
// least such witness tuple; xi is the diagonal fixed point asserting
// Sat_{Sigma_k} of the selected phi.
inline FlexibleResult make_flexible(const RegisteredTheory& reg, int k,
                                    FlexibleVariant var = {}) {
  if (k < 1) throw LangError("k must be at least 1");
  if (var.two_param && var.n < 0) throw LangError("n must be nonnegative");
  Language lang = lang_flexible(k, var);
  CodingScheme scheme(lang);
  std::string sk = std::to_string(k);

  Term v = Term::var(kDiagVar);
  auto rho_prime = [&](const Term& y) {
    if (!var.two_param) {
      Term phi = Term::app("fst", {y});
      Term z = Term::app("snd", {y});
      Formula r = Formula::atom("FormLe1", {v});
      r = Formula::land(r, Formula::atom("FormLe1S" + sk, {phi}));
      r = Formula::land(r, Formula::atom("PrfNE", {z, v, phi}));
      return r;
    }
    Term psi = Term::app("t1", {y});
    Term phi = Term::app("t2", {y});
    Term z = Term::app("t3", {y});
    Formula r = Formula::atom("FormLe1", {v});
    r = Formula::land(r, Formula::atom("TrS" + std::to_string(var.n + 1), {psi}));
    r = Formula::land(r, Formula::atom("FormLe1S" + sk, {phi}));
    r = Formula::land(r, Formula::atom("PrfNEG", {z, v, psi, phi}));
    return r;
  };

  Term y = Term::var("y");
  Term w = Term::var("w");
  Formula rho = Formula::land(rho_prime(y),
                              Formula::forall_below("w", y, Formula::lnot(rho_prime(w))));
  Term sel = var.two_param ? Term::app("t2", {y}) : Term::app("fst", {y});
  Formula body =
      Formula::exists("y", Formula::land(rho, Formula::atom("SatS" + sk, {sel, Term::var("x")})));

  FlexibleResult out;
  out.lang = lang;
  out.diag = diagonal_fixpoint(scheme, body, kDiagVar);
  out.xi = out.diag.xi;
  return out;
}

// Executable semantics for the flexible-formula oracles over a model whose
// language is lang_flexible(k, var).
inline void bind_flexible_oracles(OracleModel& m, const RegisteredTheory& reg, int k,
                                  FlexibleVariant var, long truth_fuel) {
  auto scheme = std::make_shared<CodingScheme>(m.lang());
  auto pa_scheme = std::make_shared<CodingScheme>(lang_pa());
  auto truth = std::make_shared<TruthOracle>(0, truth_fuel);
  bind_diag(m, scheme);

  auto decode_le1 = [pa_scheme](const Nat& c) -> std::optional<Formula> {
    try {
      Formula f = pa_scheme->decode(c);
      if (f.free_vars().size() <= 1) return f;
    } catch (const std::exception&) {
    }
    return std::nullopt;
  };

  m.bind_predicate("FormLe1", [scheme](const std::vector<Nat>& a) {
    // the theta slot holds codes over the full construction language
    try {
      Formula f = scheme->decode(a[0]);
      return tri(f.free_vars().size() <= 1);
    } catch (const std::exception&) {
      return TriBool::False;
    }
  });
  m.bind_predicate("FormLe1S" + std::to_string(k), [decode_le1, k](const std::vector<Nat>& a) {
    auto f = decode_le1(a[0]);
    return tri(f && classify(*f).sigma_level() <= k);
  });
  m.bind_predicate("SatS" + std::to_string(k), [decode_le1, truth, k](const std::vector<Nat>& a) {
    auto f = decode_le1(a[0]);
    if (!f || classify(*f).sigma_level() > k) return TriBool::False;
    auto fv = f->free_vars();
    NatAssignment asg;
    if (!fv.empty()) asg[*fv.begin()] = a[1];
    return tri(truth->truth(0, *f, asg));
  });
  if (var.two_param) {
    m.bind_predicate("TrS" + std::to_string(var.n + 1),
                     [pa_scheme, truth, var](const std::vector<Nat>& a) {
                       try {
                         Formula f = pa_scheme->decode(a[0]);
                         if (!f.closed()) return TriBool::False;
                         if (classify(f).sigma_level() > var.n + 1) return TriBool::False;
                         NatAssignment asg;
                         return tri(truth->truth(0, f, asg));
                       } catch (const std::exception&) {
                         return TriBool::False;
                       }
                     });
  }

  // z proves (psi ->) not forall x (theta(x) <-> phi(x)) in the theory
  AxiomStream stream = reg.stream;
  auto mk_goal = [scheme, pa_scheme](const Nat& theta_c, const Nat& phi_c,
                                     const std::optional<Nat>& psi_c) -> std::optional<Formula> {
    try {
      Formula theta = scheme->decode(theta_c);
      Formula phi = pa_scheme->decode(phi_c);
      auto at_x = [](Formula f) {
        auto fv = f.free_vars();
        if (fv.size() > 1) throw CodecError("too many free variables");
        if (!fv.empty() && *fv.begin() != "x") f = substitute(f, *fv.begin(), Term::var("x"));
        return f;
      };
      Formula goal = Formula::lnot(Formula::forall("x", Formula::iff(at_x(theta), at_x(phi))));
      if (psi_c) {
        Formula psi = pa_scheme->decode(*psi_c);
        if (!psi.closed()) return std::nullopt;
        goal = Formula::imp(psi, goal);
      }
      return goal;
    } catch (const std::exception&) {
      return std::nullopt;
    }
  };
  auto check = [scheme, stream](const Nat& z, const Formula& goal) {
    try {
      ProofObject p = decode_proof(*scheme, z);
      return check_proof(p, stream, goal);
    } catch (const std::exception&) {
      return false;
    }
  };
  if (var.two_param) {
    m.bind_predicate("PrfNEG", [mk_goal, check](const std::vector<Nat>& a) {
      auto goal = mk_goal(a[1], a[3], a[2]);
      return tri(goal && check(a[0], *goal));
    });
  } else {
    m.bind_predicate("PrfNE", [mk_goal, check](const std::vector<Nat>& a) {
      auto goal = mk_goal(a[1], a[2], std::nullopt);
      return tri(goal && check(a[0], *goal));
    });
  }

  // pair projections, total with 0 on non-codes
  auto total = [](std::function<Nat(const Nat&)> f) {
    return [f](const std::vector<Nat>& a) {
      try {
        return f(a[0]);
      } catch (const std::exception&) {
        return Nat(0);
      }
    };
  };
  if (var.two_param) {
    m.bind_function("t1", total([](const Nat& c) { return nat_unpair(c).first; }));
    m.bind_function("t2", total([](const Nat& c) { return nat_unpair(nat_unpair(c).second).first; }));
    m.bind_function("t3",
                    total([](const Nat& c) { return nat_unpair(nat_unpair(c).second).second; }));
  } else {
    m.bind_function("fst", total([](const Nat& c) { return nat_unpair(c).first; }));
    m.bind_function("snd", total([](const Nat& c) { return nat_unpair(c).second; }));
  }
}

}  // namespace interpkit

#endif  // INTERPKIT_DIAGONAL_HPP
