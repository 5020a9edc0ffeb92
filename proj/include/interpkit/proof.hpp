// A fixed Hilbert-style proof calculus with a checkable proof-object format.
//
// Logical axiom schemas (instances recognized by matching):
//   K     phi -> (psi -> phi)
//   S     (phi -> (psi -> chi)) -> ((phi -> psi) -> (phi -> chi))
//   CP    (not phi -> not psi) -> (psi -> phi)
//   AND1  (phi and psi) -> phi          AND2  (phi and psi) -> psi
//   AND3  phi -> (psi -> (phi and psi))
//   OR1   phi -> (phi or psi)           OR2   psi -> (phi or psi)
//   OR3   (phi -> chi) -> ((psi -> chi) -> ((phi or psi) -> chi))
//   UI    (forall x phi) -> phi[t/x]
//   UMOVE forall x (phi -> psi) -> (phi -> forall x psi), x not free in phi
//   EG    phi[t/x] -> exists x phi
//   EMOVE forall x (phi -> psi) -> ((exists x phi) -> psi), x not free in psi
//   REFL  t = t
//   LEIB  t = s -> (A -> A'), A atomic, A' = A with occurrences of t replaced by s
// Rules: modus ponens (from phi and phi -> psi infer psi) and generalization.

#ifndef INTERPKIT_PROOF_HPP
#define INTERPKIT_PROOF_HPP

#include "coding.hpp"
#include "formula.hpp"
#include "json.hpp"
#include "parser.hpp"
#include "stream.hpp"
#include "substitute.hpp"

namespace interpkit {

struct Justification {
  enum Kind { LogicAxiom, TheoryAxiom, ModusPonens, Generalization };
  Kind kind = LogicAxiom;
  std::string schema;  // LogicAxiom
  long index = 0;      // TheoryAxiom: stream index
  size_t from = 0;     // MP: line proving phi; Gen: premise line
  size_t impl = 0;     // MP: line proving phi -> psi
  std::string var;     // Gen
};

struct ProofLine {
  Formula formula;
  Justification just;
};

struct ProofObject {
  std::vector<ProofLine> lines;
};

struct ProofCheckError {
  size_t line;
  std::string reason;
};

namespace schema {

inline bool is_imp(const Formula& f) { return f.kind() == Formula::Imp; }

inline bool match_k(const Formula& f) {
  return is_imp(f) && is_imp(f.sub(1)) && f.sub(0) == f.sub(1).sub(1);
}
inline bool match_s(const Formula& f) {
  if (!is_imp(f) || !is_imp(f.sub(0)) || !is_imp(f.sub(0).sub(1))) return false;
  if (!is_imp(f.sub(1)) || !is_imp(f.sub(1).sub(0)) || !is_imp(f.sub(1).sub(1))) return false;
  const Formula& phi = f.sub(0).sub(0);
  const Formula& psi = f.sub(0).sub(1).sub(0);
  const Formula& chi = f.sub(0).sub(1).sub(1);
  return f.sub(1).sub(0).sub(0) == phi && f.sub(1).sub(0).sub(1) == psi &&
         f.sub(1).sub(1).sub(0) == phi && f.sub(1).sub(1).sub(1) == chi;
}
inline bool match_cp(const Formula& f) {
  if (!is_imp(f) || f.sub(0).kind() != Formula::Imp) return false;
  const Formula& l = f.sub(0);
  if (l.sub(0).kind() != Formula::Not || l.sub(1).kind() != Formula::Not) return false;
  if (!is_imp(f.sub(1))) return false;
  return f.sub(1).sub(0) == l.sub(1).sub() && f.sub(1).sub(1) == l.sub(0).sub();
}
inline bool match_and1(const Formula& f) {
  return is_imp(f) && f.sub(0).kind() == Formula::And && f.sub(0).sub(0) == f.sub(1);
}
inline bool match_and2(const Formula& f) {
  return is_imp(f) && f.sub(0).kind() == Formula::And && f.sub(0).sub(1) == f.sub(1);
}
inline bool match_and3(const Formula& f) {
  if (!is_imp(f) || !is_imp(f.sub(1)) || f.sub(1).sub(1).kind() != Formula::And) return false;
  const Formula& c = f.sub(1).sub(1);
  return c.sub(0) == f.sub(0) && c.sub(1) == f.sub(1).sub(0);
}
inline bool match_or1(const Formula& f) {
  return is_imp(f) && f.sub(1).kind() == Formula::Or && f.sub(1).sub(0) == f.sub(0);
}
inline bool match_or2(const Formula& f) {
  return is_imp(f) && f.sub(1).kind() == Formula::Or && f.sub(1).sub(1) == f.sub(0);
}
inline bool match_or3(const Formula& f) {
  if (!is_imp(f) || !is_imp(f.sub(0))) return false;
  const Formula& phi = f.sub(0).sub(0);
  const Formula& chi = f.sub(0).sub(1);
  if (!is_imp(f.sub(1)) || !is_imp(f.sub(1).sub(0)) || !is_imp(f.sub(1).sub(1))) return false;
  const Formula& psi = f.sub(1).sub(0).sub(0);
  if (f.sub(1).sub(0).sub(1) != chi) return false;
  const Formula& last = f.sub(1).sub(1);
  if (last.sub(0).kind() != Formula::Or || last.sub(1) != chi) return false;
  return last.sub(0).sub(0) == phi && last.sub(0).sub(1) == psi;
}

// Solve phi[t/x] == inst for t by parallel walk, then verify by substitution.
inline bool solve_instance(const Formula& phi, const std::string& x, const Formula& inst) {
  if (!phi.free_vars().count(x)) return phi == inst;
  std::optional<Term> cand;
  std::function<bool(const Term&, const Term&)> walk_t = [&](const Term& p, const Term& i) {
    if (p.kind() == Term::Var && p.sym() == x) {
      if (cand && !(*cand == i)) return false;
      cand = i;
      return true;
    }
    if (p.kind() != i.kind() || p.sym() != i.sym() || p.args().size() != i.args().size())
      return false;
    for (size_t k = 0; k < p.args().size(); ++k)
      if (!walk_t(p.args()[k], i.args()[k])) return false;
    return true;
  };
  std::function<bool(const Formula&, const Formula&)> walk = [&](const Formula& p,
                                                                 const Formula& i) {
    if (p.kind() != i.kind()) return false;
    switch (p.kind()) {
      case Formula::Atom:
        if (p.sym() != i.sym() || p.terms().size() != i.terms().size()) return false;
        [[fallthrough]];
      case Formula::Eq:
        for (size_t k = 0; k < p.terms().size(); ++k)
          if (!walk_t(p.terms()[k], i.terms()[k])) return false;
        return true;
      default:
        if (p.is_quantifier()) {
          // renaming inside the instance is not solved for; require identity
          // below a binder (covers the common t = x and shadowed cases)
          if (p.sym() == x) return p == i;
          if (p.sym() != i.sym()) return false;
          if ((p.kind() == Formula::BForall || p.kind() == Formula::BExists) &&
              !walk_t(p.bound(), i.bound()))
            return false;
          return walk(p.sub(), i.sub());
        }
        if (p.subs().size() != i.subs().size()) return false;
        for (size_t k = 0; k < p.subs().size(); ++k)
          if (!walk(p.subs()[k], i.subs()[k])) return false;
        return true;
    }
  };
  if (!walk(phi, inst) || !cand) return false;
  return substitute(phi, x, *cand) == inst;
}

inline bool match_ui(const Formula& f) {
  if (!is_imp(f) || f.sub(0).kind() != Formula::Forall) return false;
  return solve_instance(f.sub(0).sub(), f.sub(0).sym(), f.sub(1));
}
inline bool match_eg(const Formula& f) {
  if (!is_imp(f) || f.sub(1).kind() != Formula::Exists) return false;
  return solve_instance(f.sub(1).sub(), f.sub(1).sym(), f.sub(0));
}
inline bool match_umove(const Formula& f) {
  if (!is_imp(f) || f.sub(0).kind() != Formula::Forall) return false;
  const Formula& body = f.sub(0).sub();
  if (!is_imp(body) || !is_imp(f.sub(1))) return false;
  const std::string& x = f.sub(0).sym();
  if (f.sub(1).sub(0) != body.sub(0)) return false;
  if (f.sub(1).sub(1).kind() != Formula::Forall || f.sub(1).sub(1).sym() != x) return false;
  if (f.sub(1).sub(1).sub() != body.sub(1)) return false;
  return !body.sub(0).free_vars().count(x);
}
inline bool match_emove(const Formula& f) {
  if (!is_imp(f) || f.sub(0).kind() != Formula::Forall) return false;
  const Formula& body = f.sub(0).sub();
  if (!is_imp(body) || !is_imp(f.sub(1))) return false;
  const std::string& x = f.sub(0).sym();
  if (f.sub(1).sub(0).kind() != Formula::Exists || f.sub(1).sub(0).sym() != x) return false;
  if (f.sub(1).sub(0).sub() != body.sub(0)) return false;
  if (f.sub(1).sub(1) != body.sub(1)) return false;
  return !body.sub(1).free_vars().count(x);
}
inline bool match_refl(const Formula& f) {
  return f.kind() == Formula::Eq && f.terms()[0] == f.terms()[1];
}

inline bool term_leib(const Term& a, const Term& b, const Term& t, const Term& s) {
  if (a == b) return true;
  if (a == t && b == s) return true;
  if (a.kind() != b.kind() || a.sym() != b.sym() || a.args().size() != b.args().size())
    return false;
  if (a.kind() == Term::Var) return false;
  for (size_t i = 0; i < a.args().size(); ++i)
    if (!term_leib(a.args()[i], b.args()[i], t, s)) return false;
  return true;
}
inline bool match_leib(const Formula& f) {
  if (!is_imp(f) || f.sub(0).kind() != Formula::Eq || !is_imp(f.sub(1))) return false;
  const Term& t = f.sub(0).terms()[0];
  const Term& s = f.sub(0).terms()[1];
  const Formula& a = f.sub(1).sub(0);
  const Formula& b = f.sub(1).sub(1);
  if (!a.is_atomic() || b.kind() != a.kind()) return false;
  if (a.kind() == Formula::Atom && (a.sym() != b.sym() || a.terms().size() != b.terms().size()))
    return false;
  for (size_t i = 0; i < a.terms().size(); ++i)
    if (!term_leib(a.terms()[i], b.terms()[i], t, s)) return false;
  return true;
}

inline bool matches(const std::string& id, const Formula& f) {
  if (id == "K") return match_k(f);
  if (id == "S") return match_s(f);
  if (id == "CP") return match_cp(f);
  if (id == "AND1") return match_and1(f);
  if (id == "AND2") return match_and2(f);
  if (id == "AND3") return match_and3(f);
  if (id == "OR1") return match_or1(f);
  if (id == "OR2") return match_or2(f);
  if (id == "OR3") return match_or3(f);
  if (id == "UI") return match_ui(f);
  if (id == "UMOVE") return match_umove(f);
  if (id == "EG") return match_eg(f);
  if (id == "EMOVE") return match_emove(f);
  if (id == "REFL") return match_refl(f);
  if (id == "LEIB") return match_leib(f);
  return false;
}

inline const std::vector<std::string>& all_ids() {
  static const std::vector<std::string> ids = {"K",     "S",  "CP", "AND1", "AND2",
                                               "AND3",  "OR1", "OR2", "OR3",  "UI",
                                               "UMOVE", "EG",  "EMOVE", "REFL", "LEIB"};
  return ids;
}
inline std::optional<std::string> match_any(const Formula& f) {
  for (const auto& id : all_ids())
    if (matches(id, f)) return id;
  return std::nullopt;
}

}  // namespace schema

// Checks every line against the calculus; theory-axiom lines must equal the
// cited stream entry exactly, and the last line must be the goal.
inline bool check_proof(const ProofObject& p, const AxiomStream& t, const Formula& goal,
                        ProofCheckError* err = nullptr) {
  auto bad = [&](size_t line, const std::string& why) {
    if (err) *err = {line, why};
    return false;
  };
  if (p.lines.empty()) return bad(0, "empty proof");
  for (size_t i = 0; i < p.lines.size(); ++i) {
    const ProofLine& ln = p.lines[i];
    switch (ln.just.kind) {
      case Justification::LogicAxiom:
        if (!schema::matches(ln.just.schema, ln.formula))
          return bad(i, "not an instance of schema " + ln.just.schema);
        break;
      case Justification::TheoryAxiom:
        if (ln.just.index < 0) return bad(i, "negative axiom index");
        if (!(t.axiom_at(ln.just.index) == ln.formula))
          return bad(i, "formula differs from theory axiom " + std::to_string(ln.just.index));
        break;
      case Justification::ModusPonens: {
        if (ln.just.from >= i || ln.just.impl >= i) return bad(i, "forward reference");
        const Formula& prem = p.lines[ln.just.from].formula;
        const Formula& impl = p.lines[ln.just.impl].formula;
        if (impl.kind() != Formula::Imp || impl.sub(0) != prem || impl.sub(1) != ln.formula)
          return bad(i, "modus ponens mismatch");
        break;
      }
      case Justification::Generalization: {
        if (ln.just.from >= i) return bad(i, "forward reference");
        if (ln.formula.kind() != Formula::Forall || ln.formula.sym() != ln.just.var)
          return bad(i, "conclusion is not the generalization");
        if (ln.formula.sub() != p.lines[ln.just.from].formula)
          return bad(i, "generalization premise mismatch");
        break;
      }
    }
  }
  if (!(p.lines.back().formula == goal)) return bad(p.lines.size() - 1, "goal mismatch");
  return true;
}

// Bounded provability search behind the Prov oracles. Sound and very
// incomplete: provable when the goal is a schema instance, one of the first
// `fuel` theory axioms, or reachable from those by two modus-ponens rounds.
// Callers map a false result to Unknown.
inline bool shallow_provable(const Formula& goal, const std::function<Formula(long)>& axiom_at,
                             long fuel) {
  if (schema::match_any(goal)) return true;
  std::vector<Formula> known;
  for (long i = 0; i < fuel; ++i) {
    known.push_back(axiom_at(i));
    if (known.back() == goal) return true;
  }
  for (int round = 0; round < 2; ++round) {
    std::vector<Formula> next;
    for (const auto& f : known) {
      if (f.kind() != Formula::Imp) continue;
      const Formula& a = f.sub(0);
      bool have = schema::match_any(a).has_value();
      for (const auto& g : known) have = have || g == a;
      if (have) {
        if (f.sub(1) == goal) return true;
        next.push_back(f.sub(1));
      }
    }
    for (auto& f : next) known.push_back(std::move(f));
  }
  return false;
}

// --- JSON and code forms -----------------------------------------------------

inline nlohmann::json proof_to_json(const ProofObject& p) {
  nlohmann::json lines = nlohmann::json::array();
  for (const auto& ln : p.lines) {
    nlohmann::json j{{"formula", print_formula(ln.formula)}};
    switch (ln.just.kind) {
      case Justification::LogicAxiom: j["rule"] = ln.just.schema; break;
      case Justification::TheoryAxiom:
        j["rule"] = "axiom";
        j["index"] = ln.just.index;
        break;
      case Justification::ModusPonens:
        j["rule"] = "mp";
        j["from"] = ln.just.from;
        j["impl"] = ln.just.impl;
        break;
      case Justification::Generalization:
        j["rule"] = "gen";
        j["from"] = ln.just.from;
        j["var"] = ln.just.var;
        break;
    }
    lines.push_back(j);
  }
  return {{"lines", lines}};
}

inline ProofObject proof_from_json(const nlohmann::json& j, const Language& lang) {
  ProofObject p;
  for (const auto& lj : j.at("lines")) {
    ProofLine ln;
    ln.formula = parse_formula(lj.at("formula").get<std::string>(), lang);
    std::string rule = lj.at("rule").get<std::string>();
    if (rule == "axiom") {
      ln.just.kind = Justification::TheoryAxiom;
      ln.just.index = lj.at("index").get<long>();
    } else if (rule == "mp") {
      ln.just.kind = Justification::ModusPonens;
      ln.just.from = lj.at("from").get<size_t>();
      ln.just.impl = lj.at("impl").get<size_t>();
    } else if (rule == "gen") {
      ln.just.kind = Justification::Generalization;
      ln.just.from = lj.at("from").get<size_t>();
      ln.just.var = lj.at("var").get<std::string>();
    } else {
      ln.just.kind = Justification::LogicAxiom;
      ln.just.schema = rule;
    }
    p.lines.push_back(std::move(ln));
  }
  return p;
}

// Proofs as numbers, for the provability oracles: a sequence of line codes,
// each line a pair (formula code, justification code).
inline Nat encode_proof(const CodingScheme& scheme, const ProofObject& p) {
  std::vector<Nat> lines;
  for (const auto& ln : p.lines) {
    bits::Writer w;
    w.raw(Nat(ln.just.kind), 2);
    switch (ln.just.kind) {
      case Justification::LogicAxiom: {
        size_t id = 0;
        for (; id < schema::all_ids().size(); ++id)
          if (schema::all_ids()[id] == ln.just.schema) break;
        if (id == schema::all_ids().size()) throw CodecError("unknown schema id");
        w.nat(Nat(id));
        break;
      }
      case Justification::TheoryAxiom: w.nat(Nat(ln.just.index)); break;
      case Justification::ModusPonens:
        w.nat(Nat(ln.just.from));
        w.nat(Nat(ln.just.impl));
        break;
      case Justification::Generalization:
        w.nat(Nat(ln.just.from));
        break;
    }
    if (ln.just.kind == Justification::Generalization) {
      Nat v = scheme.encode_term(Term::var(ln.just.var));
      w.nat(v);
    }
    lines.push_back(nat_pair(scheme.encode(ln.formula), w.finish()));
  }
  return seq_encode(lines);
}

inline ProofObject decode_proof(const CodingScheme& scheme, const Nat& code) {
  ProofObject p;
  for (const auto& lc : seq_decode(code)) {
    auto [fc, jc] = nat_unpair(lc);
    ProofLine ln;
    ln.formula = scheme.decode(fc);
    bits::Reader r(jc);
    int kind = (int)(unsigned long)r.raw(2);
    ln.just.kind = (Justification::Kind)kind;
    switch (ln.just.kind) {
      case Justification::LogicAxiom: {
        Nat id = r.nat();
        if (id >= schema::all_ids().size()) throw CodecError("schema id out of range");
        ln.just.schema = schema::all_ids()[(size_t)id];
        break;
      }
      case Justification::TheoryAxiom: ln.just.index = (long)r.nat(); break;
      case Justification::ModusPonens:
        ln.just.from = (size_t)r.nat();
        ln.just.impl = (size_t)r.nat();
        break;
      case Justification::Generalization: {
        ln.just.from = (size_t)r.nat();
        Term v = scheme.decode_term(r.nat());
        if (v.kind() != Term::Var) throw CodecError("generalization variable is not a variable");
        ln.just.var = v.sym();
        break;
      }
    }
    if (!r.done()) throw CodecError("trailing bits in justification");
    p.lines.push_back(std::move(ln));
  }
  return p;
}

}  // namespace interpkit

#endif  // INTERPKIT_PROOF_HPP
