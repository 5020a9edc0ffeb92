// Axiom streams: total, deterministic, index-addressable enumerations of
// closed formulas, plus the deterministic formula enumerator feeding the
// axiom schemes and the guarded-union combinator.

#ifndef INTERPKIT_STREAM_HPP
#define INTERPKIT_STREAM_HPP

#include <functional>
#include <memory>
#include <mutex>

#include "coding.hpp"
#include "formula.hpp"
#include "prenex.hpp"

namespace interpkit {

class AxiomStream {
 public:
  AxiomStream() = default;
  AxiomStream(std::string name, Language lang, std::function<Formula(long)> at,
              bool finite = false)
      : name_(std::move(name)),
        lang_(std::make_shared<Language>(std::move(lang))),
        at_(std::move(at)),
        finite_(finite) {}

  const std::string& name() const { return name_; }
  const Language& lang() const { return *lang_; }
  bool finite() const { return finite_; }

  Formula axiom_at(long i) const {
    if (i < 0) throw LangError("negative stream index");
    return at_(i);
  }

 private:
  std::string name_;
  std::shared_ptr<Language> lang_;
  std::function<Formula(long)> at_;
  bool finite_ = false;
};

// The padding sentence used when a finite list runs out.
inline Formula tautology_pad() {
  return Formula::eq(Term::app("0"), Term::app("0"));
}

inline AxiomStream finite_stream(std::string name, Language lang, std::vector<Formula> axioms) {
  auto ax = std::make_shared<std::vector<Formula>>(std::move(axioms));
  return AxiomStream(std::move(name), std::move(lang),
                     [ax](long i) { return i < (long)ax->size() ? (*ax)[i] : tautology_pad(); },
                     /*finite=*/true);
}

// ---------------------------------------------------------------------------
// Deterministic formula enumeration. Formulas are generated size-major over a
// fixed term pool and variable discipline; within one size batch the order is
// ascending Godel code, so the enumeration is pinned by the coding scheme.

struct EnumeratorConfig {
  std::vector<std::string> free_vars = {"x"};   // allowed free variables
  std::vector<std::string> bound_vars = {"y", "z"};
  int max_term_size = 3;
  bool bounded_quantifiers = true;
};

class FormulaEnumerator {
 public:
  FormulaEnumerator(Language lang, EnumeratorConfig cfg = {})
      : lang_(std::move(lang)), cfg_(std::move(cfg)), scheme_(lang_) {
    vars_ = cfg_.free_vars;
    for (const auto& v : cfg_.bound_vars) vars_.push_back(v);
    build_terms();
  }

  const Language& lang() const { return lang_; }

  // i-th formula of the unfiltered enumeration
  Formula at(size_t i) {
    std::lock_guard<std::mutex> lock(mu_);
    while (i >= all_.size()) grow();
    return all_[i];
  }

  // i-th formula satisfying pred
  Formula at_filtered(size_t i, const std::function<bool(const Formula&)>& pred) {
    size_t seen = 0;
    for (size_t j = 0;; ++j) {
      Formula f = at(j);
      if (pred(f)) {
        if (seen == i) return f;
        ++seen;
      }
      if (j > 400000) throw LangError("formula enumeration exhausted");
    }
  }

 private:
  void build_terms() {
    // terms by size over the pool variables and the language's functions
    std::vector<std::vector<Term>> by_size(cfg_.max_term_size + 1);
    for (const auto& v : vars_) by_size[1].push_back(Term::var(v));
    for (const auto& f : lang_.functions())
      if (f.arity == 0) by_size[1].push_back(Term::app(f.name));
    for (int s = 2; s <= cfg_.max_term_size; ++s) {
      for (const auto& f : lang_.functions()) {
        if (f.arity == 1) {
          for (const auto& a : by_size[s - 1]) by_size[s].push_back(Term::app(f.name, {a}));
        } else if (f.arity == 2) {
          for (int ls = 1; ls < s - 1; ++ls)
            for (const auto& a : by_size[ls])
              for (const auto& b : by_size[s - 1 - ls])
                by_size[s].push_back(Term::app(f.name, {a, b}));
        }
      }
    }
    for (const auto& batch : by_size)
      for (const auto& t : batch) terms_.push_back(t);
  }

  void grow() {
    ++size_;
    if (size_ > 12) throw LangError("formula enumeration exhausted");
    std::vector<Formula> batch;
    if (size_ == 1) {
      for (const auto& r : lang_.relations()) {
        std::vector<size_t> idx(r.arity, 0);
        if (r.arity == 0) {
          batch.push_back(Formula::atom(r.name));
          continue;
        }
        bool more = true;
        while (more) {
          std::vector<Term> args;
          for (size_t i : idx) args.push_back(terms_[i]);
          batch.push_back(Formula::atom(r.name, args));
          more = false;
          for (size_t i = idx.size(); i-- > 0;) {
            if (++idx[i] < terms_.size()) {
              more = true;
              break;
            }
            idx[i] = 0;
          }
        }
      }
      for (const auto& a : terms_)
        for (const auto& b : terms_) batch.push_back(Formula::eq(a, b));
    } else {
      const auto& prev = by_size_[size_ - 1];
      for (const auto& f : prev) batch.push_back(Formula::lnot(f));
      for (const auto& v : cfg_.bound_vars) {
        for (const auto& f : prev) {
          batch.push_back(Formula::forall(v, f));
          batch.push_back(Formula::exists(v, f));
          if (cfg_.bounded_quantifiers && lang_.has_relation("<")) {
            for (const auto& b : bound_terms()) {
              if (b.kind() == Term::Var && b.sym() == v) continue;
              batch.push_back(Formula::forall_below(v, b, f));
              batch.push_back(Formula::exists_below(v, b, f));
            }
          }
        }
      }
      for (size_t ls = 1; ls + 1 < size_; ++ls) {
        for (const auto& l : by_size_[ls])
          for (const auto& r : by_size_[size_ - 1 - ls]) {
            batch.push_back(Formula::land(l, r));
            batch.push_back(Formula::lor(l, r));
            batch.push_back(Formula::imp(l, r));
          }
      }
    }
    // keep only formulas whose free variables obey the discipline
    std::vector<Formula> kept;
    for (const auto& f : batch) {
      bool ok = true;
      for (const auto& v : f.free_vars())
        ok = ok && std::find(cfg_.free_vars.begin(), cfg_.free_vars.end(), v) !=
                       cfg_.free_vars.end();
      if (ok) kept.push_back(f);
    }
    std::sort(kept.begin(), kept.end(), [&](const Formula& a, const Formula& b) {
      return scheme_.encode(a) < scheme_.encode(b);
    });
    kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
    by_size_[size_] = kept;
    for (const auto& f : kept) all_.push_back(f);
  }

  std::vector<Term> bound_terms() const {
    // small closed or variable bounds for bounded quantifiers
    std::vector<Term> out;
    for (const auto& t : terms_)
      if (t.size() == 1) out.push_back(t);
    return out;
  }

  Language lang_;
  EnumeratorConfig cfg_;
  CodingScheme scheme_;
  std::vector<std::string> vars_;
  std::vector<Term> terms_;
  std::map<size_t, std::vector<Formula>> by_size_;
  std::vector<Formula> all_;
  size_t size_ = 0;
  std::mutex mu_;
};

// Shared, lazily grown enumerator usable from stream closures.
using EnumeratorPtr = std::shared_ptr<FormulaEnumerator>;

inline EnumeratorPtr make_enumerator(Language lang, EnumeratorConfig cfg = {}) {
  return std::make_shared<FormulaEnumerator>(std::move(lang), std::move(cfg));
}

// ---------------------------------------------------------------------------
// The guarded-union combinator: axioms phi_k -> psi for psi in U_k, dovetailed
// by the Cantor pairing, so the axiom of pair (k, i) sits at index
// cantor_pair(k, i). Positions whose stream index falls outside a finite
// family emit the tautology pad.

struct GuardedStream {
  AxiomStream stream;
  Formula guard;  // closed
};

inline AxiomStream oplus(std::string name, Language lang,
                         std::function<std::optional<GuardedStream>(long)> family) {
  auto fam = std::make_shared<std::function<std::optional<GuardedStream>(long)>>(
      std::move(family));
  return AxiomStream(std::move(name), std::move(lang), [fam](long i) {
    auto [k, j] = cantor_unpair(i);
    auto gs = (*fam)(k);
    if (!gs) return tautology_pad();
    return Formula::imp(gs->guard, gs->stream.axiom_at(j));
  });
}

inline AxiomStream oplus(std::string name, Language lang, std::vector<GuardedStream> members) {
  auto mem = std::make_shared<std::vector<GuardedStream>>(std::move(members));
  return oplus(std::move(name), std::move(lang),
               [mem](long k) -> std::optional<GuardedStream> {
                 if (k < 0 || k >= (long)mem->size()) return std::nullopt;
                 return (*mem)[k];
               });
}

}  // namespace interpkit

#endif  // INTERPKIT_STREAM_HPP
