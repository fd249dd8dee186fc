#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "germlab/exactalg/rational.hpp"

namespace germlab {

/// Dense rectangular matrix over Q, row-major.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& r : init) {
      if (r.size() != cols_) throw StructuralError("ragged matrix literal");
      a_.insert(a_.end(), r.begin(), r.end());
    }
  }

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool operator==(const RationalMatrix&) const = default;

  bool is_zero() const {
    for (const auto& x : a_)
      if (sgn(x) != 0) return false;
    return true;
  }
  bool is_diagonal() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if (i != j && sgn((*this)(i, j)) != 0) return false;
    return true;
  }
  bool is_lower_triangular() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (sgn((*this)(i, j)) != 0) return false;
    return true;
  }

  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
    if (a.cols_ != b.rows_) throw StructuralError("matrix product shape mismatch");
    RationalMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (sgn(a(i, k)) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += a(i, k) * b(k, j);
      }
    return r;
  }
  friend RationalMatrix operator+(RationalMatrix a, const RationalMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw StructuralError("matrix sum shape mismatch");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] += b.a_[i];
    return a;
  }
  friend RationalMatrix operator-(RationalMatrix a, const RationalMatrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw StructuralError("matrix difference shape mismatch");
    for (std::size_t i = 0; i < a.a_.size(); ++i) a.a_[i] -= b.a_[i];
    return a;
  }
  friend RationalMatrix operator*(const Rational& c, RationalMatrix a) {
    for (auto& x : a.a_) x *= c;
    return a;
  }

  std::vector<Rational> apply(const std::vector<Rational>& v) const {
    if (v.size() != cols_) throw StructuralError("matrix-vector shape mismatch");
    std::vector<Rational> r(rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

  RationalMatrix transpose() const {
    RationalMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Reduced row echelon form in place; returns pivot columns.
  std::vector<std::size_t> rref_in_place() {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
      std::size_t p = r;
      while (p < rows_ && sgn((*this)(p, c)) == 0) ++p;
      if (p == rows_) continue;
      swap_rows(p, r);
      Rational inv = 1 / (*this)(r, c);
      for (std::size_t j = c; j < cols_; ++j) (*this)(r, j) *= inv;
      for (std::size_t i = 0; i < rows_; ++i) {
        if (i == r || sgn((*this)(i, c)) == 0) continue;
        Rational f = (*this)(i, c);
        for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) -= f * (*this)(r, j);
      }
      pivots.push_back(c);
      ++r;
    }
    return pivots;
  }

  RationalMatrix rref() const {
    RationalMatrix m = *this;
    m.rref_in_place();
    return m;
  }

  std::size_t rank() const {
    RationalMatrix m = *this;
    return m.rref_in_place().size();
  }

  Rational determinant() const {
    if (rows_ != cols_) throw StructuralError("determinant of non-square matrix");
    RationalMatrix m = *this;
    Rational det = 1;
    for (std::size_t c = 0; c < cols_; ++c) {
      std::size_t p = c;
      while (p < rows_ && sgn(m(p, c)) == 0) ++p;
      if (p == rows_) return 0;
      if (p != c) {
        m.swap_rows(p, c);
        det = -det;
      }
      det *= m(c, c);
      for (std::size_t i = c + 1; i < rows_; ++i) {
        if (sgn(m(i, c)) == 0) continue;
        Rational f = m(i, c) / m(c, c);
        for (std::size_t j = c; j < cols_; ++j) m(i, j) -= f * m(c, j);
      }
    }
    return det;
  }

  /// Basis of {x : A x = 0}, one vector per free column.
  std::vector<std::vector<Rational>> nullspace() const {
    RationalMatrix m = *this;
    auto piv = m.rref_in_place();
    std::vector<bool> is_pivot(cols_, false);
    for (auto c : piv) is_pivot[c] = true;
    std::vector<std::vector<Rational>> out;
    for (std::size_t f = 0; f < cols_; ++f) {
      if (is_pivot[f]) continue;
      std::vector<Rational> v(cols_);
      v[f] = 1;
      for (std::size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -m(r, f);
      out.push_back(std::move(v));
    }
    return out;
  }

  std::optional<RationalMatrix> inverse() const {
    if (rows_ != cols_) throw StructuralError("inverse of non-square matrix");
    std::size_t n = rows_;
    RationalMatrix aug(n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) aug(i, j) = (*this)(i, j);
      aug(i, n + i) = 1;
    }
    auto piv = aug.rref_in_place();
    if (piv.size() < n || piv[n - 1] != n - 1) return std::nullopt;
    RationalMatrix inv(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
    return inv;
  }

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t k = 0; k < cols_; ++k) std::swap(a_[i * cols_ + k], a_[j * cols_ + k]);
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

struct LinearSolution {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> nullspace;
};

/// Row vector r with r*A = 0 and r*b != 0, proving A x = b has no solution.
struct InconsistencyCertificate {
  std::vector<Rational> row;
};

inline std::variant<LinearSolution, InconsistencyCertificate> linear_solve_exact(const RationalMatrix& A,
                                                                                 const std::vector<Rational>& b) {
  if (b.size() != A.rows()) throw StructuralError("linear_solve_exact: rhs length mismatch");
  std::size_t m = A.rows(), n = A.cols();
  // [A | b | I] tracks row operations so an inconsistent row yields r.
  RationalMatrix aug(m, n + 1 + m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = A(i, j);
    aug(i, n) = b[i];
    aug(i, n + 1 + i) = 1;
  }
  // Eliminate only over the first n+1 columns.
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c <= n && r < m; ++c) {
    std::size_t p = r;
    while (p < m && sgn(aug(p, c)) == 0) ++p;
    if (p == m) continue;
    aug.swap_rows(p, r);
    Rational inv = 1 / aug(r, c);
    for (std::size_t j = 0; j < aug.cols(); ++j) aug(r, j) *= inv;
    for (std::size_t i = 0; i < m; ++i) {
      if (i == r || sgn(aug(i, c)) == 0) continue;
      Rational f = aug(i, c);
      for (std::size_t j = 0; j < aug.cols(); ++j) aug(i, j) -= f * aug(r, j);
    }
    piv.push_back(c);
    ++r;
  }
  for (std::size_t k = 0; k < piv.size(); ++k) {
    if (piv[k] == n) {
      InconsistencyCertificate cert;
      for (std::size_t i = 0; i < m; ++i) cert.row.push_back(aug(k, n + 1 + i));
      return cert;
    }
  }
  LinearSolution sol;
  sol.particular.assign(n, Rational(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t k = 0; k < piv.size(); ++k) {
    sol.particular[piv[k]] = aug(k, n);
    is_pivot[piv[k]] = true;
  }
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> v(n);
    v[f] = 1;
    for (std::size_t k = 0; k < piv.size(); ++k) v[piv[k]] = -aug(k, f);
    sol.nullspace.push_back(std::move(v));
  }
  return sol;
}

inline std::string to_string(const RationalMatrix& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (i) s += ", ";
    s += "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += m(i, j).get_str();
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace germlab
