#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <string_view>

namespace germlab {

/// Exact rational number. GMP keeps it in lowest terms with a positive denominator.
using Rational = mpq_class;
using Integer = mpz_class;

/// Raised when an operation receives structurally invalid input
/// (ambient mismatch, wrong arity, unsupported shape).
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw StructuralError("rational with zero denominator");
  Rational q{Integer(num), Integer(den)};
  q.canonicalize();
  return q;
}

/// "a/b", or "a" when the denominator is one.
inline std::string to_string(const Rational& q) { return q.get_str(); }

inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) throw StructuralError("rational with zero denominator: " + s);
    Rational q{num, den};
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw StructuralError("malformed rational: " + s);
  }
}

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

}  // namespace germlab
