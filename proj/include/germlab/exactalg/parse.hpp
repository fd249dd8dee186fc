#pragma once

#include <cctype>
#include <sstream>
#include <string>
#include <string_view>

#include "germlab/exactalg/polynomial.hpp"

namespace germlab {

/// Parse failure with a 1-based column inside the polynomial text.
class ParseError : public StructuralError {
 public:
  ParseError(const std::string& msg, std::size_t column)
      : StructuralError(msg + " at column " + std::to_string(column)), column_(column), message_(msg) {}
  std::size_t column() const { return column_; }
  const std::string& bare_message() const { return message_; }

 private:
  std::size_t column_;
  std::string message_;
};

namespace detail {

// expr   := ['+'|'-'] term (('+'|'-') term)*
// term   := factor (['*'] factor | '/' integer)*
// factor := atom ['^' integer]
// atom   := integer | identifier | '(' expr ')'
class PolyParser {
 public:
  PolyParser(std::string_view text, const VarsPtr& vars) : s_(text), vars_(vars) {}

  Polynomial run() {
    skip();
    if (pos_ >= s_.size()) fail("empty polynomial");
    Polynomial p = expr();
    skip();
    if (pos_ < s_.size()) fail(std::string("unexpected '") + s_[pos_] + "'");
    return p;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, pos_ + 1); }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool peek(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool at_factor_start() {
    skip();
    if (pos_ >= s_.size()) return false;
    char c = s_[pos_];
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '(';
  }

  Polynomial expr() {
    Polynomial acc(vars_);
    bool neg = false;
    if (peek('+')) ++pos_;
    else if (peek('-')) {
      ++pos_;
      neg = true;
    }
    Polynomial t = term();
    acc += neg ? -t : t;
    while (true) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial term() {
    Polynomial acc = factor();
    while (true) {
      if (peek('*')) {
        ++pos_;
        acc = acc * factor();
      } else if (peek('/')) {
        ++pos_;
        skip();
        Integer d = integer();
        if (d == 0) fail("division by zero");
        acc *= Rational(Rational(1) / Rational(d));
      } else if (at_factor_start()) {
        acc = acc * factor();
      } else {
        break;
      }
    }
    return acc;
  }

  Polynomial factor() {
    Polynomial a = atom();
    if (peek('^')) {
      ++pos_;
      skip();
      Integer e = integer();
      if (e > 10000) fail("exponent too large");
      a = a.pow(static_cast<int>(e.get_si()));
    }
    return a;
  }

  Polynomial atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial p = expr();
      if (!peek(')')) fail("expected ')'");
      ++pos_;
      return p;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return Polynomial::constant(vars_, Rational(integer()));
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      auto idx = vars_->find(name);
      if (!idx) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return Polynomial::variable(vars_, *idx);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Integer integer() {
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected integer");
    return Integer(std::string(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  VarsPtr vars_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Polynomial parse_polynomial(std::string_view text, const VarsPtr& vars) {
  return detail::PolyParser(text, vars).run();
}

inline std::string monomial_to_string(const Monomial& m, const VarList& vars) {
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (m[i] == 0) continue;
    if (!out.empty()) out += '*';
    out += vars.name(i);
    if (m[i] > 1) out += '^' + std::to_string(m[i]);
  }
  return out;
}

/// Canonical text: terms by descending graded order, "c*x^a*y^b" factors,
/// unit coefficients omitted. parse_polynomial inverts it exactly.
inline std::string to_string(const Polynomial& p) {
  if (p.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    const auto& [m, c] = *it;
    Rational a = abs(c);
    if (first) {
      if (sgn(c) < 0) out += '-';
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono = monomial_to_string(m, *p.vars());
    if (mono.empty()) out += a.get_str();
    else if (a == 1) out += mono;
    else out += a.get_str() + "*" + mono;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Polynomial& p) { return os << to_string(p); }

}  // namespace germlab
