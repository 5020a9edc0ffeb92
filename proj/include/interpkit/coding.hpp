// Godel coding of terms and formulas as arbitrary-precision naturals.
//
// Codes are self-delimiting bit streams read MSB-first under a leading
// sentinel 1 bit, so 0 is never a code. Numbers embedded in a stream are
// written as an Elias-gamma length header followed by the raw bits; the
// overhead per syntax node is logarithmic, which keeps the codes of the
// self-referential constructions (diagonal fixed points, flexible formulas)
// at a few kilobits instead of exploding with nesting depth.
//
// A second, independent pairing - the classical Cantor pairing - serves for
// dovetailing stream indices, where a bijection NxN -> N is what matters.

#ifndef INTERPKIT_CODING_HPP
#define INTERPKIT_CODING_HPP

#include "formula.hpp"
#include "oracle.hpp"
#include "prenex.hpp"
#include "substitute.hpp"

namespace interpkit {

struct CodecError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace bits {

inline size_t bitlen(const Nat& n) {
  return n == 0 ? 0 : boost::multiprecision::msb(n) + 1;
}

struct Writer {
  std::vector<bool> v;
  void bit(bool b) { v.push_back(b); }
  void raw(const Nat& n, size_t len) {
    for (size_t i = len; i-- > 0;) bit(boost::multiprecision::bit_test(n, (unsigned)i));
  }
  // Elias-gamma of n+1: supports n >= 0
  void gamma(const Nat& n) {
    Nat m = n + 1;
    size_t l = bitlen(m);
    for (size_t i = 1; i < l; ++i) bit(false);
    raw(m, l);
  }
  void nat(const Nat& n) {
    gamma(bitlen(n));
    raw(n, bitlen(n));
  }
  Nat finish() const {
    Nat out = 1;  // sentinel
    for (bool b : v) {
      out <<= 1;
      if (b) out += 1;
    }
    return out;
  }
};

struct Reader {
  std::vector<bool> v;
  size_t pos = 0;

  explicit Reader(const Nat& code) {
    if (code <= 0) throw CodecError("0 is not a code");
    size_t l = bitlen(code);
    v.reserve(l - 1);
    for (size_t i = l - 1; i-- > 0;) v.push_back(boost::multiprecision::bit_test(code, (unsigned)i));
  }
  bool bit() {
    if (pos >= v.size()) throw CodecError("truncated code");
    return v[pos++];
  }
  Nat raw(size_t len) {
    Nat out = 0;
    for (size_t i = 0; i < len; ++i) {
      out <<= 1;
      if (bit()) out += 1;
    }
    return out;
  }
  Nat gamma() {
    size_t zeros = 0;
    while (!bit()) {
      if (++zeros > 1u << 20) throw CodecError("corrupt gamma header");
    }
    Nat m = 1;
    for (size_t i = 0; i < zeros; ++i) {
      m <<= 1;
      if (bit()) m += 1;
    }
    return m - 1;
  }
  Nat nat() {
    Nat l = gamma();
    if (l > 1u << 24) throw CodecError("implausible length");
    return raw((size_t)l);
  }
  bool done() const { return pos == v.size(); }
};

}  // namespace bits

// --- generic pairing and sequence codes on the bit scheme -------------------

inline Nat nat_pair(const Nat& a, const Nat& b) {
  bits::Writer w;
  w.nat(a);
  w.nat(b);
  return w.finish();
}
inline std::pair<Nat, Nat> nat_unpair(const Nat& c) {
  bits::Reader r(c);
  Nat a = r.nat();
  Nat b = r.nat();
  if (!r.done()) throw CodecError("trailing bits in pair");
  return {a, b};
}

inline Nat seq_encode(const std::vector<Nat>& xs) {
  bits::Writer w;
  w.nat(Nat(xs.size()));
  for (const auto& x : xs) w.nat(x);
  return w.finish();
}
inline std::vector<Nat> seq_decode(const Nat& c) {
  bits::Reader r(c);
  Nat n = r.nat();
  if (n > 1u << 20) throw CodecError("implausible sequence length");
  std::vector<Nat> out;
  out.reserve((size_t)n);
  for (Nat i = 0; i < n; ++i) out.push_back(r.nat());
  if (!r.done()) throw CodecError("trailing bits in sequence");
  return out;
}
inline bool is_seq(const Nat& c) {
  if (c <= 0) return false;
  try {
    seq_decode(c);
    return true;
  } catch (const CodecError&) {
    return false;
  }
}
inline Nat seq_len(const Nat& c) { return Nat(seq_decode(c).size()); }
inline Nat seq_at(const Nat& c, size_t i) {
  auto v = seq_decode(c);
  if (i >= v.size()) throw CodecError("sequence index out of range");
  return v[i];
}

// Cantor pairing for stream dovetailing (a bijection, unlike the bit pairing).
inline long cantor_pair(long k, long i) {
  long s = k + i;
  return s * (s + 1) / 2 + i;
}
inline std::pair<long, long> cantor_unpair(long n) {
  long s = 0;
  while ((s + 1) * (s + 2) / 2 <= n) ++s;
  long i = n - s * (s + 1) / 2;
  return {s - i, i};
}

// "the x-th bit in the binary notation for y is 1"
inline bool ackermann_bit(const Nat& x, const Nat& y) {
  if (x >= bits::bitlen(y)) return false;
  return boost::multiprecision::bit_test(y, (unsigned)(unsigned long)x);
}

// --- syntax coding ----------------------------------------------------------

class CodingScheme {
 public:
  explicit CodingScheme(Language lang) : lang_(std::move(lang)) {}

  const Language& lang() const { return lang_; }

  Nat encode_term(const Term& t) const {
    bits::Writer w;
    put_term(w, t);
    return w.finish();
  }
  Nat encode(const Formula& f) const {
    bits::Writer w;
    put_formula(w, f);
    return w.finish();
  }

  Term decode_term(const Nat& c) const {
    bits::Reader r(c);
    Term t = get_term(r);
    if (!r.done()) throw CodecError("trailing bits in term code");
    return t;
  }
  Formula decode(const Nat& c) const {
    bits::Reader r(c);
    Formula f = get_formula(r);
    if (!r.done()) throw CodecError("trailing bits in formula code");
    return f;
  }

  bool is_term(const Nat& c) const {
    try {
      decode_term(c);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }
  bool is_formula(const Nat& c) const {
    try {
      decode(c);
      return true;
    } catch (const std::exception&) {
      return false;
    }
  }

 private:
  static void put_str(bits::Writer& w, const std::string& s) {
    w.nat(Nat(s.size()));
    for (char c : s) w.raw(Nat((unsigned char)c), 8);
  }
  static std::string get_str(bits::Reader& r) {
    Nat n = r.nat();
    if (n > 4096) throw CodecError("implausible name length");
    std::string s;
    for (Nat i = 0; i < n; ++i) s += (char)(unsigned long)r.raw(8);
    return s;
  }

  void put_term(bits::Writer& w, const Term& t) const {
    if (t.kind() == Term::Var) {
      w.bit(false);
      put_str(w, t.sym());
      return;
    }
    w.bit(true);
    size_t idx = 0;
    for (const auto& f : lang_.functions()) {
      if (f.name == t.sym()) break;
      ++idx;
    }
    if (idx == lang_.functions().size())
      throw CodecError("function symbol " + t.sym() + " not in coded language");
    w.nat(Nat(idx));
    for (const auto& a : t.args()) put_term(w, a);
  }
  Term get_term(bits::Reader& r) const {
    if (!r.bit()) return Term::var(get_str(r));
    Nat idx = r.nat();
    if (idx >= lang_.functions().size()) throw CodecError("function index out of range");
    const auto& f = lang_.functions()[(size_t)idx];
    std::vector<Term> args;
    for (int i = 0; i < f.arity; ++i) args.push_back(get_term(r));
    return Term::app(f.name, std::move(args));
  }

  void put_formula(bits::Writer& w, const Formula& f) const {
    w.raw(Nat((int)f.kind()), 4);
    switch (f.kind()) {
      case Formula::Atom: {
        size_t idx = 0;
        for (const auto& r : lang_.relations()) {
          if (r.name == f.sym()) break;
          ++idx;
        }
        if (idx == lang_.relations().size())
          throw CodecError("relation symbol " + f.sym() + " not in coded language");
        w.nat(Nat(idx));
        for (const auto& t : f.terms()) put_term(w, t);
        return;
      }
      case Formula::Eq:
        put_term(w, f.terms()[0]);
        put_term(w, f.terms()[1]);
        return;
      case Formula::Not:
        put_formula(w, f.sub());
        return;
      case Formula::And:
      case Formula::Or:
      case Formula::Imp:
        put_formula(w, f.sub(0));
        put_formula(w, f.sub(1));
        return;
      case Formula::Forall:
      case Formula::Exists:
        put_str(w, f.sym());
        put_formula(w, f.sub());
        return;
      case Formula::BForall:
      case Formula::BExists:
        put_str(w, f.sym());
        put_term(w, f.bound());
        put_formula(w, f.sub());
        return;
    }
    throw CodecError("corrupt formula node");
  }
  Formula get_formula(bits::Reader& r) const {
    int kind = (int)(unsigned long)r.raw(4);
    switch ((Formula::Kind)kind) {
      case Formula::Atom: {
        Nat idx = r.nat();
        if (idx >= lang_.relations().size()) throw CodecError("relation index out of range");
        const auto& rs = lang_.relations()[(size_t)idx];
        std::vector<Term> args;
        for (int i = 0; i < rs.arity; ++i) args.push_back(get_term(r));
        return Formula::atom(rs.name, std::move(args));
      }
      case Formula::Eq: {
        Term a = get_term(r);
        Term b = get_term(r);
        return Formula::eq(a, b);
      }
      case Formula::Not:
        return Formula::lnot(get_formula(r));
      case Formula::And: {
        Formula a = get_formula(r);
        return Formula::land(a, get_formula(r));
      }
      case Formula::Or: {
        Formula a = get_formula(r);
        return Formula::lor(a, get_formula(r));
      }
      case Formula::Imp: {
        Formula a = get_formula(r);
        return Formula::imp(a, get_formula(r));
      }
      case Formula::Forall: {
        std::string v = get_str(r);
        return Formula::forall(v, get_formula(r));
      }
      case Formula::Exists: {
        std::string v = get_str(r);
        return Formula::exists(v, get_formula(r));
      }
      case Formula::BForall: {
        std::string v = get_str(r);
        Term b = get_term(r);
        return Formula::forall_below(v, b, get_formula(r));
      }
      case Formula::BExists: {
        std::string v = get_str(r);
        Term b = get_term(r);
        return Formula::exists_below(v, b, get_formula(r));
      }
      default:
        throw CodecError("bad formula tag");
    }
  }

  Language lang_;
};

// --- numerals and substitution on codes --------------------------------------

// The canonical unary numeral (...((0+1)+1)...+1) with k additions.
inline Term numeral(unsigned long k) {
  Term t = Term::app("0");
  Term one = Term::app("1");
  for (unsigned long i = 0; i < k; ++i) t = Term::app("+", {t, one});
  return t;
}

// Compact closed term denoting n, in binary Horner form ((1+1)*t)+bit.
// Used where a code must be named inside a formula; unary numerals of code
// magnitude would be astronomically large. The node count is linear in the
// bit length (doubling via t+t would share subtrees and re-expand on every
// traversal).
inline Term code_term(const Nat& n) {
  if (n == 0) return Term::app("0");
  size_t l = bits::bitlen(n);
  Term t = Term::app("1");
  for (size_t i = l - 1; i-- > 0;) {
    Term two = Term::app("+", {Term::app("1"), Term::app("1")});
    t = Term::app("*", {two, t});
    if (boost::multiprecision::bit_test(n, (unsigned)i)) t = Term::app("+", {t, Term::app("1")});
  }
  return t;
}

// Value of a closed term over 0, 1, +, *.
inline Nat term_value(const Term& t) {
  if (t.kind() == Term::Var) throw CodecError("val of open term");
  const std::string& s = t.sym();
  if (s == "0") return 0;
  if (s == "1") return 1;
  if (s == "+" && t.args().size() == 2)
    return term_value(t.args()[0]) + term_value(t.args()[1]);
  if (s == "*" && t.args().size() == 2)
    return term_value(t.args()[0]) * term_value(t.args()[1]);
  throw CodecError("val: uninterpreted function " + s);
}

// Classification record for code_predicates.
struct CodeInfo {
  bool is_term = false;
  bool is_var = false;
  bool is_formula = false;
  bool is_sentence = false;
  bool form_le1 = false;  // formula with at most one free variable
  std::optional<FormulaClass> cls;
};

inline CodeInfo code_predicates(const CodingScheme& scheme, const Nat& c) {
  CodeInfo info;
  if (c <= 0) return info;
  try {
    Term t = scheme.decode_term(c);
    info.is_term = true;
    info.is_var = t.kind() == Term::Var;
  } catch (const std::exception&) {
  }
  try {
    Formula f = scheme.decode(c);
    info.is_formula = true;
    auto fv = f.free_vars();
    info.is_sentence = fv.empty();
    info.form_le1 = fv.size() <= 1;
    info.cls = classify(f, &scheme.lang());
  } catch (const std::exception&) {
  }
  return info;
}

// subst(phi, t): substitute the coded closed term for the unique free
// variable of the coded formula; codes of closed formulas pass through.
inline Nat subst_code(const CodingScheme& scheme, const Nat& phi, const Nat& t) {
  Formula f = scheme.decode(phi);
  Term term = scheme.decode_term(t);
  if (!term.vars().empty()) throw CodecError("subst_code: term is not closed");
  auto fv = f.free_vars();
  if (fv.empty()) return phi;
  if (fv.size() > 1) throw CodecError("subst_code: formula has several free variables");
  return scheme.encode(substitute(f, *fv.begin(), term));
}

// name(k): code of the canonical unary numeral of k.
inline Nat name_code(const CodingScheme& scheme, const Nat& k) {
  if (k > 1000000) throw CodecError("name: numeral too large");
  return scheme.encode_term(numeral((unsigned long)k));
}

// Dot convention: subst(phi, name(k)).
inline Nat numeral_subst(const CodingScheme& scheme, const Nat& phi, const Nat& k) {
  return subst_code(scheme, phi, name_code(scheme, k));
}

}  // namespace interpkit

#endif  // INTERPKIT_CODING_HPP
