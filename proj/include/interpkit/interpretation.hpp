// Structure-level verification of interpretations: congruence checking,
// quotient construction, isomorphism-of-interpretations and retraction /
// bi-interpretation checks, and the initial-segment embedding obtained by
// iterating the interpreted successor from the interpreted zero.

#ifndef INTERPKIT_INTERPRETATION_HPP
#define INTERPKIT_INTERPRETATION_HPP

#include "structure.hpp"
#include "translation.hpp"

namespace interpkit {

struct CheckFailure {
  std::string condition;
  std::vector<std::vector<std::string>> witnesses;  // element names
};

struct CheckReport {
  bool pass = true;
  std::vector<CheckFailure> failures;

  void fail(std::string condition, std::vector<std::vector<std::string>> witnesses) {
    pass = false;
    failures.push_back({std::move(condition), std::move(witnesses)});
  }
  void absorb(const std::string& prefix, const CheckReport& r) {
    if (r.pass) return;
    pass = false;
    for (const auto& f : r.failures) failures.push_back({prefix + f.condition, f.witnesses});
  }
  std::string str() const {
    if (pass) return "pass";
    std::string s = "fail";
    for (const auto& f : failures) {
      s += "\n  " + f.condition;
      for (const auto& w : f.witnesses) {
        s += " [";
        for (size_t i = 0; i < w.size(); ++i) s += (i ? ", " : "") + w[i];
        s += "]";
      }
    }
    return s;
  }
};

namespace detail {

inline std::vector<std::string> names(const FiniteStructure& s, std::initializer_list<int> es) {
  std::vector<std::string> out;
  for (int e : es) out.push_back(s.universe()[e]);
  return out;
}

// enumerate tuples over a fixed element list
inline bool next_tuple(std::vector<size_t>& idx, size_t limit) {
  for (size_t i = idx.size(); i-- > 0;) {
    if (++idx[i] < limit) return true;
    idx[i] = 0;
  }
  return false;
}

}  // namespace detail

// Materialized view of a translation applied in a structure: the delta set,
// the interpreted equality and the interpreted relations as tables.
struct InterpretedView {
  std::vector<int> domain;                           // elements satisfying delta
  std::vector<std::vector<bool>> eq;                 // indexed by base elements
  std::map<std::string, std::set<std::vector<int>>> tables;  // over base elements

  bool equiv(int a, int b) const { return eq[a][b]; }
};

inline InterpretedView materialize(const Translation& m, const FiniteStructure& s) {
  if (m.target().name() != s.lang().name())
    throw LangError("structure language does not match translation target");
  InterpretedView v;
  for (int e = 0; e < s.size(); ++e) {
    Assignment a{{m.delta_var(), e}};
    if (eval_finite(s, m.delta(), a)) v.domain.push_back(e);
  }
  v.eq.assign(s.size(), std::vector<bool>(s.size(), false));
  for (int a : v.domain)
    for (int b : v.domain) {
      Assignment asg{{m.equality().vars[0], a}, {m.equality().vars[1], b}};
      v.eq[a][b] = eval_finite(s, m.equality().formula, asg);
    }
  for (const auto& [sym, entry] : m.relations()) {
    std::set<std::vector<int>> table;
    if (!v.domain.empty()) {
      std::vector<size_t> idx(entry.vars.size(), 0);
      do {
        std::vector<int> tup;
        Assignment asg;
        for (size_t i = 0; i < idx.size(); ++i) {
          tup.push_back(v.domain[idx[i]]);
          asg[entry.vars[i]] = v.domain[idx[i]];
        }
        if (eval_finite(s, entry.formula, asg)) table.insert(tup);
      } while (entry.vars.empty() ? false : detail::next_tuple(idx, v.domain.size()));
    }
    v.tables[sym] = std::move(table);
  }
  return v;
}

// (a) nonempty delta set, (b) interpreted equality is an equivalence on it,
// (c) the equivalence is a congruence for every relation formula.
inline CheckReport check_interpretation(const Translation& m, const FiniteStructure& s) {
  CheckReport r;
  InterpretedView v = materialize(m, s);
  if (v.domain.empty()) {
    r.fail("domain-nonempty", {});
    return r;
  }
  for (int a : v.domain)
    if (!v.equiv(a, a)) r.fail("equality-reflexive", {detail::names(s, {a})});
  for (int a : v.domain)
    for (int b : v.domain)
      if (v.equiv(a, b) && !v.equiv(b, a)) r.fail("equality-symmetric", {detail::names(s, {a, b})});
  for (int a : v.domain)
    for (int b : v.domain) {
      if (!v.equiv(a, b)) continue;
      for (int c : v.domain)
        if (v.equiv(b, c) && !v.equiv(a, c))
          r.fail("equality-transitive", {detail::names(s, {a, b, c})});
    }
  if (!r.pass) return r;

  for (const auto& [sym, table] : v.tables) {
    int arity = (int)m.relations().at(sym).vars.size();
    if (arity == 0) continue;
    std::vector<size_t> idx(2 * arity, 0);
    do {
      std::vector<int> u(arity), w(arity);
      bool related = true;
      for (int i = 0; i < arity; ++i) {
        u[i] = v.domain[idx[i]];
        w[i] = v.domain[idx[arity + i]];
        related = related && v.equiv(u[i], w[i]);
      }
      if (related && table.count(u) != table.count(w)) {
        std::vector<std::vector<std::string>> wit;
        std::vector<std::string> un, wn;
        for (int e : u) un.push_back(s.universe()[e]);
        for (int e : w) wn.push_back(s.universe()[e]);
        wit.push_back(un);
        wit.push_back(wn);
        r.fail("congruence-" + sym, std::move(wit));
      }
    } while (detail::next_tuple(idx, v.domain.size()));
  }
  return r;
}

// The structure on equivalence classes; class representative is the least
// element in universe order, and quotient elements are named after it.
inline FiniteStructure quotient_structure(const Translation& m, const FiniteStructure& s) {
  CheckReport pre = check_interpretation(m, s);
  if (!pre.pass) throw EvalError("quotient of a non-interpretation: " + pre.str());
  InterpretedView v = materialize(m, s);

  std::vector<int> reps;  // ascending
  std::map<int, int> rep_of;
  for (int a : v.domain) {
    int rep = a;
    for (int b : v.domain) {
      if (v.equiv(a, b)) {
        rep = b;
        break;  // domain is ascending, first equivalent element is least
      }
    }
    rep_of[a] = rep;
    if (rep == a) reps.push_back(a);
  }

  std::vector<std::string> universe;
  std::map<int, int> class_index;
  for (size_t i = 0; i < reps.size(); ++i) {
    universe.push_back(s.universe()[reps[i]]);
    class_index[reps[i]] = (int)i;
  }

  std::map<std::string, std::set<std::vector<int>>> rels;
  for (const auto& [sym, table] : v.tables) {
    std::set<std::vector<int>> q;
    for (const auto& tup : table) {
      std::vector<int> qt;
      for (int e : tup) qt.push_back(class_index.at(rep_of.at(e)));
      q.insert(qt);
    }
    rels[sym] = q;
  }

  std::map<std::string, int> consts;
  for (const auto& p : m.parameters()) {
    // parameters name target constants; their classes become quotient constants
    // when the source language declares the same constant
    if (m.source().has_function(p)) {
      int e = s.constant(p);
      consts[p] = class_index.at(rep_of.at(e));
    }
  }
  return FiniteStructure(m.source(), std::move(universe), std::move(rels), std::move(consts));
}

// iota defines a relation on s; verify it canonically determines an
// isomorphism between the interpreted structures of m1 and m2.
inline CheckReport check_iso_of_interpretations(const FiniteStructure& s, const Translation& m1,
                                                const Translation& m2, const Formula& iota,
                                                const std::string& from_var,
                                                const std::string& to_var) {
  CheckReport r;
  r.absorb("m1: ", check_interpretation(m1, s));
  r.absorb("m2: ", check_interpretation(m2, s));
  if (!r.pass) return r;
  if (m1.source().name() != m2.source().name()) {
    r.fail("source-language-mismatch", {});
    return r;
  }

  InterpretedView v1 = materialize(m1, s);
  InterpretedView v2 = materialize(m2, s);
  std::set<int> d1(v1.domain.begin(), v1.domain.end());
  std::set<int> d2(v2.domain.begin(), v2.domain.end());

  std::vector<std::pair<int, int>> rel;
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b) {
      Assignment asg{{from_var, a}, {to_var, b}};
      if (eval_finite(s, iota, asg)) rel.emplace_back(a, b);
    }

  for (const auto& [a, b] : rel) {
    if (!d1.count(a)) r.fail("domain-inside-delta1", {detail::names(s, {a, b})});
    if (!d2.count(b)) r.fail("range-inside-delta2", {detail::names(s, {a, b})});
  }
  if (!r.pass) return r;

  auto image = [&](int a) {
    std::vector<int> out;
    for (const auto& [x, y] : rel)
      if (v1.equiv(x, a)) out.push_back(y);
    return out;
  };

  for (int a : v1.domain)
    if (image(a).empty()) r.fail("total-on-delta1", {detail::names(s, {a})});
  for (int b : v2.domain) {
    bool hit = false;
    for (const auto& [x, y] : rel) hit = hit || v2.equiv(y, b);
    if (!hit) r.fail("surjective-onto-delta2", {detail::names(s, {b})});
  }
  for (const auto& [a, b] : rel)
    for (const auto& [a2, b2] : rel) {
      if (v1.equiv(a, a2) && !v2.equiv(b, b2))
        r.fail("functional-mod-equality", {detail::names(s, {a, b, a2, b2})});
      if (v2.equiv(b, b2) && !v1.equiv(a, a2))
        r.fail("injective-mod-equality", {detail::names(s, {a, b, a2, b2})});
      if (r.failures.size() > 32) return r;  // enough witnesses
    }
  if (!r.pass) return r;

  // relation preservation, checked on representatives through iota
  for (const auto& [sym, entry] : m1.relations()) {
    int arity = (int)entry.vars.size();
    if (arity == 0) continue;
    std::vector<size_t> idx(arity, 0);
    do {
      std::vector<int> a(arity), b(arity);
      bool mapped = true;
      for (int i = 0; i < arity && mapped; ++i) {
        a[i] = v1.domain[idx[i]];
        auto im = image(a[i]);
        if (im.empty())
          mapped = false;
        else
          b[i] = im.front();
      }
      if (mapped && v1.tables.at(sym).count(a) != v2.tables.at(sym).count(b)) {
        std::vector<std::string> an, bn;
        for (int e : a) an.push_back(s.universe()[e]);
        for (int e : b) bn.push_back(s.universe()[e]);
        r.fail("preserves-" + sym, {an, bn});
      }
    } while (detail::next_tuple(idx, v1.domain.size()));
  }
  return r;
}

inline CheckReport check_iso_of_interpretations(const FiniteStructure& s, const Translation& m1,
                                                const Translation& m2, const Formula& iota) {
  auto fv = iota.free_vars();
  if (fv.size() != 2) throw LangError("iota needs exactly two free variables");
  auto it = fv.begin();
  std::string x = *it++;
  std::string y = *it;
  return check_iso_of_interpretations(s, m1, m2, iota, x, y);
}

// Retraction: n is an interpretation in s, m an interpretation in the
// quotient; the composite compose(m, n) applied in s must be isomorphic to the
// identity via iota. With `bi` set, additionally check the second
// bi-interpretation condition inside the quotient via iota2 (parameters of n
// shifted through iota when the translations carry any).
struct RetractionReport {
  CheckReport base;          // n as an interpretation in s
  CheckReport inner;         // m as an interpretation in the quotient
  CheckReport composite;     // compose(m, n) as an interpretation in s
  CheckReport iso;           // composite ~ identity via iota
  CheckReport bi;            // second condition, when requested
  bool checked_bi = false;
  bool pass = false;
  std::vector<std::string> parameters_used;

  std::string str() const {
    std::string s = pass ? "pass" : "fail";
    s += "\n base: " + base.str();
    s += "\n inner: " + inner.str();
    s += "\n composite: " + composite.str();
    s += "\n iso: " + iso.str();
    if (checked_bi) s += "\n bi: " + bi.str();
    return s;
  }
};

inline RetractionReport check_retraction(const FiniteStructure& s, const Translation& n,
                                         const Translation& m, const Formula& iota,
                                         bool bi = false, const Formula* iota2 = nullptr) {
  RetractionReport rr;
  rr.base = check_interpretation(n, s);
  if (!rr.base.pass) return rr;
  FiniteStructure q = quotient_structure(n, s);
  rr.inner = check_interpretation(m, q);
  if (!rr.inner.pass) return rr;

  Translation nm = compose(m, n);
  rr.composite = check_interpretation(nm, s);
  if (!rr.composite.pass) return rr;
  Translation id = identity_translation(s.lang());
  rr.iso = check_iso_of_interpretations(s, id, nm, iota);
  rr.pass = rr.iso.pass;
  for (const auto& p : n.parameters()) rr.parameters_used.push_back(p);
  for (const auto& p : m.parameters()) rr.parameters_used.push_back(p);

  if (bi && rr.pass) {
    rr.checked_bi = true;
    Translation mn = compose(n, m);  // interpretation of q's language inside q
    CheckReport comp2 = check_interpretation(mn, q);
    if (!comp2.pass) {
      rr.bi = comp2;
      rr.pass = false;
      return rr;
    }
    Translation idq = identity_translation(q.lang());
    rr.bi = check_iso_of_interpretations(q, idq, mn, iota2 ? *iota2 : iota);
    rr.pass = rr.bi.pass;
  }
  return rr;
}

// --- formalized-categoricity embedding -------------------------------------
//
// Iterate the interpreted successor from the interpreted zero. The model
// adapter supplies the interpreted arithmetic shape; the same core serves
// finite structures, the fuel-bounded standard model, and the polynomial
// semiring. Source symbols are fixed as Zero/1, One/1, Add/3, Less/2.

template <typename V>
struct EmbeddingResult {
  std::vector<V> iota;  // iota[k] is the image of k, k < fuel
  CheckReport report;
};

// Adapter requirements:
//   std::optional<V> zero();                 representative of 0^N
//   std::optional<V> succ(const V&);         representative of x +^N 1^N
//   bool equiv(const V&, const V&);          =^N
//   bool less(const V&, const V&);           <^N
//   std::vector<V> elements_below(const V&); all domain elements <^N v
template <typename Model, typename V = typename Model::Value>
EmbeddingResult<V> build_initial_embedding_core(Model& model, int fuel) {
  EmbeddingResult<V> out;
  auto z = model.zero();
  if (!z) {
    out.report.fail("interpreted-zero-missing", {});
    return out;
  }
  out.iota.push_back(*z);
  for (int k = 1; k < fuel; ++k) {
    auto s = model.succ(out.iota.back());
    if (!s) {
      out.report.fail("interpreted-successor-missing", {{std::to_string(k)}});
      return out;
    }
    out.iota.push_back(*s);
  }
  for (size_t i = 0; i < out.iota.size(); ++i)
    for (size_t j = i + 1; j < out.iota.size(); ++j) {
      if (model.equiv(out.iota[i], out.iota[j]))
        out.report.fail("injective", {{std::to_string(i), std::to_string(j)}});
      if (!model.less(out.iota[i], out.iota[j]))
        out.report.fail("order-preserving", {{std::to_string(i), std::to_string(j)}});
      if (out.report.failures.size() > 16) return out;
    }
  // initial segment: everything below iota[k] is some earlier iota[i]
  for (size_t k = 0; k < out.iota.size(); ++k) {
    for (const auto& z2 : model.elements_below(out.iota[k])) {
      bool found = false;
      for (size_t i = 0; i < k && !found; ++i) found = model.equiv(z2, out.iota[i]);
      if (!found) {
        out.report.fail("initial-segment", {{std::to_string(k)}});
        break;
      }
    }
  }
  return out;
}

// Finite-structure adapter: n translates {Zero, One, Add, Less} into s's
// language; values are base elements of s. Ambiguous successors (two
// non-equivalent candidates) are an error.
class FiniteArithModel {
 public:
  using Value = int;
  FiniteArithModel(const FiniteStructure& s, const Translation& n)
      : s_(s), n_(n), view_(materialize(n, s)) {}

  std::optional<int> zero() {
    for (int a : view_.domain)
      if (view_.tables.at("Zero").count({a})) return a;
    return std::nullopt;
  }
  std::optional<int> succ(const int& x) {
    std::optional<int> one;
    for (int a : view_.domain)
      if (view_.tables.at("One").count({a})) {
        one = a;
        break;
      }
    if (!one) return std::nullopt;
    std::optional<int> best;
    for (int b : view_.domain) {
      if (view_.tables.at("Add").count({x, *one, b})) {
        if (best && !view_.equiv(*best, b))
          throw EvalError("ambiguous interpreted successor");
        if (!best) best = b;
      }
    }
    return best;
  }
  bool equiv(const int& a, const int& b) { return view_.equiv(a, b); }
  bool less(const int& a, const int& b) { return view_.tables.at("Less").count({a, b}) != 0; }
  std::vector<int> elements_below(const int& v) {
    std::vector<int> out;
    for (int a : view_.domain)
      if (less(a, v)) out.push_back(a);
    return out;
  }

 private:
  const FiniteStructure& s_;
  const Translation& n_;
  InterpretedView view_;
};

inline EmbeddingResult<int> build_initial_embedding(const FiniteStructure& s,
                                                    const Translation& n, int fuel) {
  FiniteArithModel m(s, n);
  return build_initial_embedding_core(m, fuel);
}

}  // namespace interpkit

#endif  // INTERPKIT_INTERPRETATION_HPP
