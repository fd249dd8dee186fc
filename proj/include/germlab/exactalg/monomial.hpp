#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <vector>

#include "germlab/exactalg/rational.hpp"

namespace germlab {

inline constexpr std::size_t kMaxVars = 16;

/// Exponent vector over an ambient variable list. Ordered by total degree,
/// then lexicographically on the exponents.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars) : n_(static_cast<std::uint8_t>(check_size(nvars))) {}
  Monomial(std::initializer_list<int> exps) : n_(static_cast<std::uint8_t>(check_size(exps.size()))) {
    std::size_t i = 0;
    for (int e : exps) set(i++, e);
  }
  explicit Monomial(const std::vector<int>& exps) : n_(static_cast<std::uint8_t>(check_size(exps.size()))) {
    for (std::size_t i = 0; i < exps.size(); ++i) set(i, exps[i]);
  }

  static Monomial unit(std::size_t nvars, std::size_t var, int power = 1) {
    Monomial m(nvars);
    m.set(var, power);
    return m;
  }

  std::size_t size() const { return n_; }
  int operator[](std::size_t i) const { return exps_[i]; }
  int degree() const { return deg_; }
  bool is_one() const { return deg_ == 0; }

  void set(std::size_t i, int e) {
    if (e < 0 || e > 0xFFFF) throw StructuralError("monomial exponent out of range");
    deg_ = static_cast<std::uint16_t>(deg_ - exps_[i] + e);
    exps_[i] = static_cast<std::uint16_t>(e);
  }

  bool divides(const Monomial& o) const {
    for (std::size_t i = 0; i < n_; ++i)
      if (exps_[i] > o.exps_[i]) return false;
    return true;
  }

  /// o / *this; caller guarantees divisibility.
  Monomial cofactor_in(const Monomial& o) const {
    Monomial r(n_);
    for (std::size_t i = 0; i < n_; ++i) r.set(i, o.exps_[i] - exps_[i]);
    return r;
  }

  friend Monomial operator*(const Monomial& a, const Monomial& b) {
    Monomial r(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i) r.set(i, a.exps_[i] + b.exps_[i]);
    return r;
  }

  std::vector<int> exponents() const { return std::vector<int>(exps_.begin(), exps_.begin() + n_); }

  auto operator<=>(const Monomial&) const = default;
  bool operator==(const Monomial&) const = default;

  std::size_t hash() const {
    std::size_t h = n_;
    for (std::size_t i = 0; i < n_; ++i) h = h * 1000003u + exps_[i];
    return h;
  }

 private:
  static std::size_t check_size(std::size_t n) {
    if (n > kMaxVars) throw StructuralError("too many variables (limit 16)");
    return n;
  }

  // Declaration order defines the comparison: degree first, then exponents.
  std::uint16_t deg_ = 0;
  std::array<std::uint16_t, kMaxVars> exps_{};
  std::uint8_t n_ = 0;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const { return m.hash(); }
};

/// Lex order with the first variable largest; used inside a fixed degree.
inline bool lex_greater(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

/// All monomials of exactly degree d, lex-descending (x^d first).
inline std::vector<Monomial> monomials_of_degree(std::size_t nvars, int d) {
  std::vector<Monomial> out;
  if (nvars == 0) {
    if (d == 0) out.emplace_back(0);
    return out;
  }
  std::vector<int> e(nvars, 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == nvars) {
      e[i] = left;
      out.emplace_back(e);
      return;
    }
    for (int k = left; k >= 0; --k) {
      e[i] = k;
      rec(i + 1, left - k);
    }
  };
  rec(0, d);
  return out;
}

/// All monomials of degree <= d, by degree then lex-descending.
inline std::vector<Monomial> monomials_up_to(std::size_t nvars, int d) {
  std::vector<Monomial> out;
  for (int k = 0; k <= d; ++k) {
    auto part = monomials_of_degree(nvars, k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

}  // namespace germlab
