// Recursive-descent parser for the formula grammar (see README for the EBNF).
// Keywords: forall exists and or not ->. Quantifier bodies are parenthesized,
// infix = and < are atoms, + and * build terms.

#ifndef INTERPKIT_PARSER_HPP
#define INTERPKIT_PARSER_HPP

#include <cctype>
#include <string>
#include <vector>

#include "formula.hpp"

namespace interpkit {

struct ParseError : std::runtime_error {
  size_t pos;
  ParseError(size_t pos, const std::string& msg)
      : std::runtime_error("parse error at " + std::to_string(pos) + ": " + msg), pos(pos) {}
};

namespace detail {

class Parser {
 public:
  Parser(std::string text, const Language& lang) : text_(std::move(text)), lang_(lang) {}

  Formula parse() {
    Formula f = formula();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "trailing input");
    return f;
  }

  Term parse_term_only() {
    Term t = term();
    skip_ws();
    if (pos_ != text_.size()) throw ParseError(pos_, "trailing input");
    return t;
  }

 private:
  static bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
  static bool ident_char(char c) {
    return std::isalnum((unsigned char)c) || c == '_' || c == '\'';
  }
  static bool keyword(const std::string& s) {
    return s == "forall" || s == "exists" || s == "and" || s == "or" || s == "not";
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
  }
  bool eat(const std::string& tok) {
    skip_ws();
    if (text_.compare(pos_, tok.size(), tok) != 0) return false;
    // keywords and identifiers must not run into the next identifier char
    if (ident_start(tok[0]) && pos_ + tok.size() < text_.size() &&
        ident_char(text_[pos_ + tok.size()]))
      return false;
    pos_ += tok.size();
    return true;
  }
  void expect(const std::string& tok) {
    if (!eat(tok)) throw ParseError(pos_, "expected '" + tok + "'");
  }
  bool peek(char c) {
    skip_ws();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  std::string ident() {
    skip_ws();
    if (pos_ >= text_.size() || !ident_start(text_[pos_]))
      throw ParseError(pos_, "expected identifier");
    size_t start = pos_;
    while (pos_ < text_.size() && ident_char(text_[pos_])) ++pos_;
    return text_.substr(start, pos_ - start);
  }

  // --- terms ---------------------------------------------------------------

  Term term() { return sum(); }

  Term sum() {
    Term t = product();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '+') {
        if (!lang_.has_function("+")) throw ParseError(pos_, "unknown symbol +");
        ++pos_;
        t = Term::app("+", {t, product()});
      } else {
        return t;
      }
    }
  }

  Term product() {
    Term t = factor();
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && text_[pos_] == '*') {
        if (!lang_.has_function("*")) throw ParseError(pos_, "unknown symbol *");
        ++pos_;
        t = Term::app("*", {t, factor()});
      } else {
        return t;
      }
    }
  }

  Term factor() {
    skip_ws();
    size_t here = pos_;
    if (peek('(')) {
      ++pos_;
      Term t = term();
      expect(")");
      return t;
    }
    if (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_])) {
      // digit constants: only 0 and 1 exist in the arithmetic signatures
      std::string d(1, text_[pos_]);
      ++pos_;
      if (pos_ < text_.size() && std::isdigit((unsigned char)text_[pos_]))
        throw ParseError(here, "multi-digit literals are not terms; use numeral structure");
      if (!lang_.has_function(d)) throw ParseError(here, "unknown constant " + d);
      return Term::app(d);
    }
    std::string id = ident();
    if (keyword(id)) throw ParseError(here, "keyword '" + id + "' in term position");
    if (peek('(')) {
      if (!lang_.has_function(id)) throw ParseError(here, "unknown function symbol " + id);
      ++pos_;
      std::vector<Term> args;
      if (!peek(')')) {
        args.push_back(term());
        while (eat(",")) args.push_back(term());
      }
      expect(")");
      if ((int)args.size() != lang_.function(id).arity)
        throw ParseError(here, "arity mismatch for function " + id);
      return Term::app(id, std::move(args));
    }
    if (lang_.has_function(id)) {
      if (lang_.function(id).arity != 0)
        throw ParseError(here, "function " + id + " needs arguments");
      return Term::app(id);
    }
    if (lang_.has_relation(id)) throw ParseError(here, "relation " + id + " in term position");
    return Term::var(id);
  }

  // --- formulas ------------------------------------------------------------

  Formula formula() { return implication(); }

  Formula implication() {
    Formula l = disjunction();
    skip_ws();
    if (text_.compare(pos_, 2, "->") == 0) {
      pos_ += 2;
      return Formula::imp(l, implication());  // right associative
    }
    return l;
  }

  Formula disjunction() {
    Formula l = conjunction();
    while (eat("or")) l = Formula::lor(l, conjunction());
    return l;
  }

  Formula conjunction() {
    Formula l = unary();
    while (eat("and")) l = Formula::land(l, unary());
    return l;
  }

  Formula unary() {
    if (eat("not")) return Formula::lnot(unary());
    if (eat("forall")) return quantifier(true);
    if (eat("exists")) return quantifier(false);
    return primary();
  }

  Formula quantifier(bool universal) {
    size_t here = pos_;
    std::string v = ident();
    if (keyword(v) || lang_.has_symbol(v))
      throw ParseError(here, "bad bound variable '" + v + "'");
    if (eat("<")) {
      if (!lang_.has_relation("<"))
        throw ParseError(here, "bounded quantifier requires the order symbol <");
      Term bound = term();
      expect("(");
      Formula body = formula();
      expect(")");
      return universal ? Formula::forall_below(v, bound, body)
                       : Formula::exists_below(v, bound, body);
    }
    expect("(");
    Formula body = formula();
    expect(")");
    return universal ? Formula::forall(v, body) : Formula::exists(v, body);
  }

  Formula primary() {
    skip_ws();
    size_t here = pos_;
    if (peek('(')) {
      // '(' may open a parenthesized formula or a parenthesized term, as in
      // ((x + y) + z = ...); try the formula reading, fall back to the atom
      size_t save = pos_;
      try {
        ++pos_;
        Formula f = formula();
        expect(")");
        skip_ws();
        if (pos_ < text_.size() &&
            (text_[pos_] == '+' || text_[pos_] == '*' || text_[pos_] == '=' ||
             text_[pos_] == '<'))
          throw ParseError(pos_, "term context");
        return f;
      } catch (const ParseError&) {
        pos_ = save;  // reparse as a term comparison
      }
    }
    // relation application?
    size_t save = pos_;
    if (pos_ < text_.size() && ident_start(text_[pos_])) {
      std::string id = ident();
      if (keyword(id)) throw ParseError(here, "unexpected keyword '" + id + "'");
      if (lang_.has_relation(id) && peek('(')) {
        ++pos_;
        std::vector<Term> args;
        if (!peek(')')) {
          args.push_back(term());
          while (eat(",")) args.push_back(term());
        }
        expect(")");
        if ((int)args.size() != lang_.relation(id).arity)
          throw ParseError(here, "arity mismatch for relation " + id);
        return Formula::atom(id, std::move(args));
      }
      pos_ = save;  // fall through to term comparison
    }
    Term l = term();
    skip_ws();
    if (eat("=")) return Formula::eq(l, term());
    if (peek('<')) {
      ++pos_;
      if (!lang_.has_relation("<")) throw ParseError(here, "unknown symbol <");
      return Formula::atom("<", {l, term()});
    }
    throw ParseError(pos_, "expected = or < after term");
  }

  std::string text_;
  const Language& lang_;
  size_t pos_ = 0;
};

}  // namespace detail

inline Formula parse_formula(const std::string& text, const Language& lang) {
  return detail::Parser(text, lang).parse();
}

inline Term parse_term(const std::string& text, const Language& lang) {
  return detail::Parser(text, lang).parse_term_only();
}

}  // namespace interpkit

#endif  // INTERPKIT_PARSER_HPP
