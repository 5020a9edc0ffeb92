// The computable model (Z[X])>=0: the nonnegative part of the polynomial ring
// over Z, ordered by making X greater than all integers. A model of the base
// arithmetic without induction, carrying the standard-cut interpretation, the
// sequence-coding maps iota_z / h_z, and the initial-segment embedding.

#ifndef INTERPKIT_ZX_HPP
#define INTERPKIT_ZX_HPP

#include "arithmetic.hpp"
#include "coding.hpp"
#include "interpretation.hpp"

namespace interpkit {

using Int = boost::multiprecision::cpp_int;

// Coefficients lowest-degree first, normalized: no trailing zeros, and the
// value is nonnegative iff it is zero or the leading coefficient is positive.
class Poly {
 public:
  Poly() = default;
  explicit Poly(Int c) {
    if (c != 0) coeffs_.push_back(std::move(c));
  }
  explicit Poly(std::vector<Int> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

  static Poly x() { return Poly(std::vector<Int>{0, 1}); }

  const std::vector<Int>& coeffs() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_constant() const { return coeffs_.size() <= 1; }
  int degree() const { return coeffs_.empty() ? 0 : (int)coeffs_.size() - 1; }
  const Int& leading() const {
    static const Int zero = 0;
    return coeffs_.empty() ? zero : coeffs_.back();
  }
  Int constant_value() const { return coeffs_.empty() ? Int(0) : coeffs_[0]; }
  bool nonnegative() const { return coeffs_.empty() || coeffs_.back() > 0; }

  bool operator==(const Poly& o) const { return coeffs_ == o.coeffs_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }
  // ordering determined by X above all integers: sign of the difference's
  // leading coefficient
  bool operator<(const Poly& o) const;

  std::string str() const {
    if (coeffs_.empty()) return "0";
    std::string s;
    for (size_t i = coeffs_.size(); i-- > 0;) {
      const Int& c = coeffs_[i];
      if (c == 0) continue;
      if (!s.empty()) s += c > 0 ? "+" : "-";
      else if (c < 0) s += "-";
      Int a = boost::multiprecision::abs(c);
      bool unit = a == 1 && i > 0;
      if (!unit) s += a.str();
      if (i > 0) {
        if (!unit) s += "*";
        s += "X";
        if (i > 1) s += "^" + std::to_string(i);
      }
    }
    return s.empty() ? "0" : s;
  }

 private:
  void normalize() {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
  }
  std::vector<Int> coeffs_;
};

inline Poly poly_add(const Poly& p, const Poly& q) {
  std::vector<Int> c(std::max(p.coeffs().size(), q.coeffs().size()), 0);
  for (size_t i = 0; i < p.coeffs().size(); ++i) c[i] += p.coeffs()[i];
  for (size_t i = 0; i < q.coeffs().size(); ++i) c[i] += q.coeffs()[i];
  return Poly(std::move(c));
}

inline Poly poly_mul(const Poly& p, const Poly& q) {
  if (p.is_zero() || q.is_zero()) return Poly();
  std::vector<Int> c(p.coeffs().size() + q.coeffs().size() - 1, 0);
  for (size_t i = 0; i < p.coeffs().size(); ++i)
    for (size_t j = 0; j < q.coeffs().size(); ++j) c[i + j] += p.coeffs()[i] * q.coeffs()[j];
  return Poly(std::move(c));
}

// difference as an integer polynomial (may leave the nonnegative part)
inline Poly poly_diff(const Poly& p, const Poly& q) {
  std::vector<Int> c(std::max(p.coeffs().size(), q.coeffs().size()), 0);
  for (size_t i = 0; i < p.coeffs().size(); ++i) c[i] += p.coeffs()[i];
  for (size_t i = 0; i < q.coeffs().size(); ++i) c[i] -= q.coeffs()[i];
  return Poly(std::move(c));
}

// p - q within the nonnegative part; no subtraction otherwise.
inline std::optional<Poly> poly_sub(const Poly& p, const Poly& q) {
  Poly d = poly_diff(p, q);
  if (!d.nonnegative()) return std::nullopt;
  return d;
}

inline bool Poly::operator<(const Poly& o) const {
  Poly d = poly_diff(o, *this);
  return !d.is_zero() && d.nonnegative();
}

inline bool poly_leq(const Poly& p, const Poly& q) { return p == q || p < q; }

// delta(x): "all numbers smaller or equal to x are either even or odd".
// Constants pass: every integer below a constant is even or odd. Nonconstants
// fail: X+k lies below any nonconstant polynomial of positive degree (the
// difference has positive leading coefficient for a suitable integer k), and
// X+k is neither 2q nor 2q+1 in Z[X]. So the formula picks out exactly the
// standard cut, and the decision procedure below is a case split rather than
// a quantifier search over the infinite universe.
inline bool delta_standard_cut(const Poly& p) { return p.is_constant(); }

// --- coding ------------------------------------------------------------------

inline Nat zigzag(const Int& z) { return z >= 0 ? Nat(2 * z) : Nat(-2 * z - 1); }
inline Int unzigzag(const Nat& n) {
  Int m(n);
  if (n % 2 == 0) return Int(m / 2);
  return Int(-((m + 1) / 2));
}

// Polynomials as (codes of) finite sequences of integers, low degree first.
inline Nat codec_zx_encode(const Poly& p) {
  std::vector<Nat> s;
  for (const auto& c : p.coeffs()) s.push_back(zigzag(c));
  return seq_encode(s);
}

inline Poly codec_zx_decode(const Nat& code) {
  std::vector<Int> c;
  for (const auto& n : seq_decode(code)) c.push_back(unzigzag(n));
  return Poly(std::move(c));
}

// iota_z: value of the coded integer sequence at z (Horner).
inline std::optional<Poly> iota_map(const Poly& z, const Nat& seq_code) {
  std::vector<Int> digits;
  try {
    for (const auto& n : seq_decode(seq_code)) digits.push_back(unzigzag(n));
  } catch (const CodecError&) {
    return std::nullopt;
  }
  Poly acc;  // integer-polynomial Horner; negativity only matters at the end
  for (size_t i = digits.size(); i-- > 0;) {
    acc = poly_mul(acc, z);
    acc = poly_add(acc, Poly(digits[i]));
  }
  return acc;
}

// Base-z digits of p with integer digits, or nothing. Division by z bounds
// the length by ceil(deg p / deg z); a nonconstant remainder at any step
// means p is outside Z[z].
inline std::optional<std::vector<Int>> base_z_digits(const Poly& z, const Poly& p) {
  if (z.is_constant()) return std::nullopt;  // no unique digit expansion
  std::vector<Int> digits;
  std::vector<Int> cur = p.coeffs();
  int dz = z.degree();
  const Int& lead = z.leading();
  int guard = p.degree() / dz + 2;
  while (true) {
    if (--guard < 0) return std::nullopt;
    if (cur.empty()) {
      if (digits.empty()) digits.push_back(0);
      return digits;
    }
    if ((int)cur.size() - 1 < dz) {
      // remainder must be a constant digit
      if (cur.size() > 1) return std::nullopt;
      digits.push_back(cur.empty() ? Int(0) : cur[0]);
      return digits;
    }
    // polynomial division cur = q*z + r, deg r < deg z, over Q; digits must
    // come out integral
    std::vector<Int> rem = cur;
    std::vector<Int> quot((int)cur.size() - dz, 0);
    for (int i = (int)rem.size() - 1; i >= dz; --i) {
      if (rem[i] == 0) continue;
      if (rem[i] % lead != 0) return std::nullopt;
      Int q = rem[i] / lead;
      quot[i - dz] = q;
      for (int j = 0; j <= dz; ++j) rem[i - dz + j] -= q * z.coeffs()[j];
    }
    Poly r(rem);
    if (!r.is_constant()) return std::nullopt;
    digits.push_back(r.constant_value());
    cur = quot;
    while (!cur.empty() && cur.back() == 0) cur.pop_back();
  }
}

// h_z: decompose p in base z and reassemble at z+1; undefined when no integer
// decomposition exists or when the image leaves the nonnegative part.
inline std::optional<Poly> h_map(const Poly& z, const Poly& p) {
  auto digits = base_z_digits(z, p);
  if (!digits) return std::nullopt;
  Poly z1 = poly_add(z, Poly(Int(1)));
  Poly acc;
  for (size_t i = digits->size(); i-- > 0;) {
    acc = poly_mul(acc, z1);
    acc = poly_add(acc, Poly((*digits)[i]));
  }
  if (!acc.nonnegative()) return std::nullopt;
  return acc;
}

// the inverse direction z+1 -> z, for the automorphism check
inline std::optional<Poly> h_map_inverse(const Poly& z, const Poly& p) {
  Poly z1 = poly_add(z, Poly(Int(1)));
  auto digits = base_z_digits(z1, p);
  if (!digits) return std::nullopt;
  Poly acc;
  for (size_t i = digits->size(); i-- > 0;) {
    acc = poly_mul(acc, z);
    acc = poly_add(acc, Poly((*digits)[i]));
  }
  if (!acc.nonnegative()) return std::nullopt;
  return acc;
}

// j: the k-th smallest element of the standard cut, i.e. the constant k.
inline Poly j_embed(unsigned long k) { return Poly(Int(k)); }

// --- parsing of the CLI polynomial syntax a_n*X^n + ... + a_0 ------------------

inline Poly parse_poly(const std::string& text) {
  std::vector<Int> coeffs;
  size_t i = 0;
  auto skip = [&] { while (i < text.size() && std::isspace((unsigned char)text[i])) ++i; };
  bool first = true;
  while (skip(), i < text.size()) {
    int sign = 1;
    if (text[i] == '+' || text[i] == '-') {
      sign = text[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw LangError("expected + or - in polynomial");
    }
    first = false;
    Int coeff = 1;
    bool have_coeff = false;
    if (i < text.size() && std::isdigit((unsigned char)text[i])) {
      std::string num;
      while (i < text.size() && std::isdigit((unsigned char)text[i])) num += text[i++];
      coeff = Int(num);
      have_coeff = true;
      skip();
      if (i < text.size() && text[i] == '*') {
        ++i;
        skip();
      }
    }
    int deg = 0;
    if (i < text.size() && (text[i] == 'X' || text[i] == 'x')) {
      ++i;
      deg = 1;
      skip();
      if (i < text.size() && text[i] == '^') {
        ++i;
        skip();
        std::string num;
        while (i < text.size() && std::isdigit((unsigned char)text[i])) num += text[i++];
        if (num.empty()) throw LangError("missing exponent");
        deg = std::stoi(num);
      }
    } else if (!have_coeff) {
      throw LangError("expected coefficient or X in polynomial");
    }
    if ((int)coeffs.size() <= deg) coeffs.resize(deg + 1, 0);
    coeffs[deg] += sign * coeff;
  }
  return Poly(std::move(coeffs));
}

// --- the model as an evaluation ground ------------------------------------------

// Fuel-bounded evaluation over (Z[X])>=0 in the relational arithmetic
// signature; quantifiers scan the first `fuel` polynomials in code order.
class ZxStructure {
 public:
  // The universe is the `fuel` nonnegative polynomials with the smallest codes
  // among degree <= 2, |coefficient| <= 12; deterministic and code-ordered.
  explicit ZxStructure(long fuel) : fuel_(fuel) {
    std::vector<std::pair<Nat, Poly>> pool;
    std::vector<Int> c(3, 0);
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == c.size()) {
        Poly p(c);
        if (p.nonnegative()) pool.emplace_back(codec_zx_encode(p), p);
        return;
      }
      for (Int v = -12; v <= 12; ++v) {
        c[i] = v;
        rec(i + 1);
      }
    };
    rec(0);
    std::sort(pool.begin(), pool.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    pool.erase(std::unique(pool.begin(), pool.end()), pool.end());
    for (const auto& [code, p] : pool) {
      if ((long)elems_.size() >= fuel_) break;
      elems_.push_back(p);
    }
  }

  const std::vector<Poly>& elements() const { return elems_; }

  bool atom(const std::string& sym, const std::vector<Poly>& args) const {
    if (sym == "Zero") return args[0].is_zero();
    if (sym == "One") return args[0] == Poly(Int(1));
    if (sym == "Add") return poly_add(args[0], args[1]) == args[2];
    if (sym == "Mul") return poly_mul(args[0], args[1]) == args[2];
    if (sym == "Less") return args[0] < args[1];
    throw EvalError("unknown relation " + sym + " over Z[X]");
  }

  bool eval(const Formula& f, std::map<std::string, Poly>& a) const {
    switch (f.kind()) {
      case Formula::Atom: {
        std::vector<Poly> args;
        for (const auto& t : f.terms()) {
          if (t.kind() != Term::Var) throw EvalError("relational evaluation expects variables");
          args.push_back(a.at(t.sym()));
        }
        return atom(f.sym(), args);
      }
      case Formula::Eq:
        return a.at(f.terms()[0].sym()) == a.at(f.terms()[1].sym());
      case Formula::Not:
        return !eval(f.sub(), a);
      case Formula::And:
        return eval(f.sub(0), a) && eval(f.sub(1), a);
      case Formula::Or:
        return eval(f.sub(0), a) || eval(f.sub(1), a);
      case Formula::Imp:
        return !eval(f.sub(0), a) || eval(f.sub(1), a);
      case Formula::Forall:
      case Formula::Exists: {
        bool universal = f.kind() == Formula::Forall;
        auto it = a.find(f.sym());
        std::optional<Poly> saved =
            it != a.end() ? std::optional<Poly>(it->second) : std::nullopt;
        bool res = universal;
        for (const auto& p : elems_) {
          a[f.sym()] = p;
          bool b = eval(f.sub(), a);
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
      default: {  // bounded quantifiers scan below the bound
        bool universal = f.kind() == Formula::BForall;
        Poly bound = a.at(f.bound().sym());
        auto it = a.find(f.sym());
        std::optional<Poly> saved =
            it != a.end() ? std::optional<Poly>(it->second) : std::nullopt;
        bool res = universal;
        for (const auto& p : elems_) {
          if (!(p < bound)) continue;
          a[f.sym()] = p;
          bool b = eval(f.sub(), a);
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

  bool eval_sentence(const Formula& f) const {
    std::map<std::string, Poly> a;
    return eval(f, a);
  }

  // evaluation relativized to the standard cut
  bool eval_in_cut(const Formula& f) const {
    std::map<std::string, Poly> a;
    ZxStructure cut(*this);
    cut.elems_.clear();
    for (const auto& p : elems_)
      if (delta_standard_cut(p)) cut.elems_.push_back(p);
    return cut.eval(f, a);
  }

 private:
  long fuel_;
  std::vector<Poly> elems_;
};

// The standard-cut interpretation as an embedding model (zero, successor,
// order in the delta-cut), for build_initial_embedding agreement checks.
class ZxCutModel {
 public:
  using Value = Poly;
  std::optional<Poly> zero() { return Poly(); }
  std::optional<Poly> succ(const Poly& p) {
    if (!delta_standard_cut(p)) return std::nullopt;
    return poly_add(p, Poly(Int(1)));
  }
  bool equiv(const Poly& a, const Poly& b) { return a == b; }
  bool less(const Poly& a, const Poly& b) { return a < b; }
  std::vector<Poly> elements_below(const Poly& v) {
    std::vector<Poly> out;  // within the cut the elements below a constant are finite
    if (!delta_standard_cut(v)) return out;
    for (Int c = 0; c < v.constant_value(); ++c) out.push_back(Poly(c));
    return out;
  }
};

inline EmbeddingResult<Poly> zx_initial_embedding(int fuel) {
  ZxCutModel m;
  return build_initial_embedding_core<ZxCutModel, Poly>(m, fuel);
}

// --- the order-reversal demo -----------------------------------------------------

inline Language lang_order() { return Language("ord", {{"<", 2}}, {}); }

inline FiniteStructure chain_structure(int n) {
  std::vector<std::string> universe;
  for (int i = 0; i < n; ++i) universe.push_back("e" + std::to_string(i));
  std::set<std::vector<int>> less;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) less.insert({i, j});
  return FiniteStructure(lang_order(), std::move(universe), {{"<", std::move(less)}});
}

inline Translation order_reversal() {
  Language ord = lang_order();
  std::map<std::string, RelationEntry> rels;
  rels["<"] = {{"x1", "x2"}, Formula::atom("<", {Term::var("x2"), Term::var("x1")})};
  RelationEntry eq{{"x1", "x2"}, Formula::eq(Term::var("x1"), Term::var("x2"))};
  return Translation(ord, ord, "x", Formula::eq(Term::var("x"), Term::var("x")),
                     std::move(rels), std::move(eq), {}, /*preguarded=*/true);
}

// Applying the reversal twice is isomorphic to the identity via x = y.
inline RetractionReport order_reversal_demo(const FiniteStructure& order) {
  Translation rev = order_reversal();
  Formula iota = Formula::eq(Term::var("x"), Term::var("y"));
  return check_retraction(order, rev, rev, iota, /*bi=*/true);
}

// --- harness report ---------------------------------------------------------------

struct HarnessCheck {
  std::string name;
  long cases = 0;
  long failures = 0;
};

inline nlohmann::json harness_to_json(const std::vector<HarnessCheck>& checks) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& c : checks)
    arr.push_back({{"name", c.name}, {"cases", c.cases}, {"failures", c.failures}});
  return {{"checks", arr}};
}

}  // namespace interpkit

#endif  // INTERPKIT_ZX_HPP
