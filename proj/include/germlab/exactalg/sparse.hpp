#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <vector>

#include "germlab/exactalg/rational.hpp"

namespace germlab {

/// Sparse vector over Q with strictly increasing column indices.
struct SparseVec {
  std::vector<std::uint32_t> cols;
  std::vector<Rational> vals;

  bool empty() const { return cols.empty(); }
  std::size_t size() const { return cols.size(); }
  void push(std::uint32_t c, const Rational& v) {
    if (sgn(v) == 0) return;
    cols.push_back(c);
    vals.push_back(v);
  }
  Rational at(std::uint32_t c) const {
    auto it = std::lower_bound(cols.begin(), cols.end(), c);
    if (it == cols.end() || *it != c) return 0;
    return vals[it - cols.begin()];
  }
  /// Sort by column and merge duplicates (for vectors built out of order).
  void canonicalize() {
    std::vector<std::size_t> idx(cols.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return cols[a] < cols[b]; });
    SparseVec out;
    for (std::size_t k : idx) {
      if (!out.cols.empty() && out.cols.back() == cols[k]) {
        out.vals.back() += vals[k];
      } else {
        out.cols.push_back(cols[k]);
        out.vals.push_back(vals[k]);
      }
    }
    SparseVec clean;
    for (std::size_t k = 0; k < out.cols.size(); ++k) clean.push(out.cols[k], out.vals[k]);
    *this = std::move(clean);
  }
};

/// Incremental row echelon basis over Q. Rows are stored with leading
/// coefficient one; reduction uses a dense scatter buffer.
class Eliminator {
 public:
  explicit Eliminator(std::size_t ncols) : ncols_(ncols), pivot_row_(ncols, -1), buf_(ncols), occ_(ncols, 0) {}

  std::size_t ncols() const { return ncols_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<SparseVec>& rows() const { return rows_; }
  std::uint32_t pivot_of(std::size_t row) const { return rows_[row].cols.front(); }
  bool is_pivot(std::uint32_t col) const { return pivot_row_[col] >= 0; }
  const SparseVec& row_for(std::uint32_t col) const { return rows_[pivot_row_[col]]; }

  /// Remainder of v modulo the stored rows; zero iff v is in the span.
  SparseVec reduce(const SparseVec& v) {
    std::priority_queue<std::uint32_t, std::vector<std::uint32_t>, std::greater<>> heap;
    for (std::size_t k = 0; k < v.cols.size(); ++k) {
      std::uint32_t c = v.cols[k];
      if (occ_[c]) {
        buf_[c] += v.vals[k];
      } else {
        occ_[c] = 1;
        buf_[c] = v.vals[k];
        heap.push(c);
      }
    }
    SparseVec out;
    mpq_class tmp;
    while (!heap.empty()) {
      std::uint32_t c = heap.top();
      heap.pop();
      occ_[c] = 0;
      if (sgn(buf_[c]) == 0) continue;
      int pr = pivot_row_[c];
      if (pr < 0) {
        out.cols.push_back(c);
        out.vals.push_back(buf_[c]);
        continue;
      }
      const SparseVec& row = rows_[pr];
      mpq_class f = buf_[c];
      for (std::size_t k = 1; k < row.cols.size(); ++k) {
        std::uint32_t c2 = row.cols[k];
        mpq_mul(tmp.get_mpq_t(), f.get_mpq_t(), row.vals[k].get_mpq_t());
        if (occ_[c2]) {
          mpq_sub(buf_[c2].get_mpq_t(), buf_[c2].get_mpq_t(), tmp.get_mpq_t());
        } else {
          occ_[c2] = 1;
          mpq_neg(buf_[c2].get_mpq_t(), tmp.get_mpq_t());
          heap.push(c2);
        }
      }
    }
    return out;
  }

  bool contains(const SparseVec& v) { return reduce(v).empty(); }

  /// Adds v; returns the new pivot column if v was independent.
  std::optional<std::uint32_t> add(const SparseVec& v) {
    SparseVec r = reduce(v);
    if (r.empty()) return std::nullopt;
    return insert_reduced(std::move(r));
  }

  /// Store an already reduced nonzero row.
  std::uint32_t insert_reduced(SparseVec r) {
    Rational inv = 1 / r.vals.front();
    r.vals.front() = 1;
    for (std::size_t k = 1; k < r.vals.size(); ++k) r.vals[k] *= inv;
    std::uint32_t p = r.cols.front();
    pivot_row_[p] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(r));
    return p;
  }

  /// Back-substitute so every row is zero on all other pivot columns.
  void make_reduced() {
    std::vector<std::size_t> order(rows_.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return pivot_of(a) > pivot_of(b); });
    for (std::size_t i : order) {
      SparseVec& row = rows_[i];
      bool needs = false;
      for (std::size_t k = 1; k < row.cols.size(); ++k)
        if (pivot_row_[row.cols[k]] >= 0) {
          needs = true;
          break;
        }
      if (!needs) continue;
      std::uint32_t p = row.cols.front();
      int saved = pivot_row_[p];
      pivot_row_[p] = -1;
      SparseVec r = reduce(row);
      pivot_row_[p] = saved;
      rows_[i] = std::move(r);
    }
  }

 private:
  std::size_t ncols_;
  std::vector<int> pivot_row_;
  std::vector<SparseVec> rows_;
  std::vector<mpq_class> buf_;
  std::vector<char> occ_;
};

/// Result of solving a sparse system A x = b.
struct SparseSolution {
  bool consistent = true;
  /// Smallest level tag among equations that exposed the inconsistency.
  int failing_level = -1;
  std::vector<Rational> particular;
  /// One vector per free unknown; its largest nonzero index is that unknown.
  std::vector<SparseVec> nullspace;
  /// Left-kernel row over the equations (r A = 0, r b = 1), when requested.
  std::optional<SparseVec> certificate;
};

/// Sparse linear system solved exactly, independently per connected
/// component of the unknown/equation incidence graph.
class SparseLinearSystem {
 public:
  explicit SparseLinearSystem(std::size_t num_unknowns) : n_(num_unknowns) {}

  std::size_t num_unknowns() const { return n_; }
  std::size_t num_equations() const { return eqs_.size(); }

  void add_equation(SparseVec coeffs, const Rational& rhs = 0, int level = 0) {
    for (auto c : coeffs.cols)
      if (c >= n_) throw StructuralError("equation references unknown out of range");
    eqs_.push_back({std::move(coeffs), rhs, level});
  }

  SparseSolution solve(bool want_nullspace = true, bool want_certificate = false) const {
    SparseSolution sol;
    sol.particular.assign(n_, Rational(0));
    // union-find over unknowns
    std::vector<std::uint32_t> parent(n_);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::uint32_t x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    for (const auto& e : eqs_)
      for (std::size_t k = 1; k < e.a.cols.size(); ++k) {
        auto r1 = find(e.a.cols[0]), r2 = find(e.a.cols[k]);
        if (r1 != r2) parent[std::max(r1, r2)] = std::min(r1, r2);
      }
    std::vector<std::vector<std::uint32_t>> comp_cols(n_);
    for (std::uint32_t c = 0; c < n_; ++c) comp_cols[find(c)].push_back(c);
    std::vector<std::vector<std::size_t>> comp_eqs(n_);
    std::vector<std::size_t> empty_eqs;
    for (std::size_t i = 0; i < eqs_.size(); ++i) {
      if (eqs_[i].a.empty()) empty_eqs.push_back(i);
      else comp_eqs[find(eqs_[i].a.cols[0])].push_back(i);
    }
    std::vector<std::size_t> bad_eqs;
    for (std::size_t i : empty_eqs)
      if (sgn(eqs_[i].b) != 0) {
        note_failure(sol, eqs_[i].level);
        bad_eqs = {i};
      }
    for (std::uint32_t root = 0; root < n_; ++root) {
      const auto& cols = comp_cols[root];
      if (cols.empty()) continue;
      auto& eq_ids = comp_eqs[root];
      std::stable_sort(eq_ids.begin(), eq_ids.end(),
                       [&](std::size_t a, std::size_t b) { return eqs_[a].level < eqs_[b].level; });
      // local column numbering preserves the global order; rhs is last
      std::uint32_t nloc = static_cast<std::uint32_t>(cols.size());
      auto local = [&](std::uint32_t g) {
        return static_cast<std::uint32_t>(std::lower_bound(cols.begin(), cols.end(), g) - cols.begin());
      };
      Eliminator el(nloc + 1);
      bool failed = false;
      for (std::size_t id : eq_ids) {
        const auto& e = eqs_[id];
        SparseVec v;
        for (std::size_t k = 0; k < e.a.cols.size(); ++k) v.push(local(e.a.cols[k]), e.a.vals[k]);
        v.push(nloc, e.b);
        auto piv = el.add(v);
        if (piv && *piv == nloc) {
          note_failure(sol, e.level);
          if (bad_eqs.empty()) bad_eqs = eq_ids;
          failed = true;
          break;
        }
      }
      if (failed || !sol.consistent) continue;
      el.make_reduced();
      for (std::size_t r = 0; r < el.rank(); ++r) {
        const SparseVec& row = el.rows()[r];
        std::uint32_t p = row.cols.front();
        if (row.cols.back() == nloc) sol.particular[cols[p]] = row.vals.back();
      }
      if (!want_nullspace) continue;
      std::vector<SparseVec> local_null(nloc);
      std::vector<bool> free_col(nloc, true);
      for (std::size_t r = 0; r < el.rank(); ++r) free_col[el.pivot_of(r)] = false;
      for (std::uint32_t f = 0; f < nloc; ++f)
        if (free_col[f]) local_null[f].push(f, Rational(1));
      for (std::size_t r = 0; r < el.rank(); ++r) {
        const SparseVec& row = el.rows()[r];
        std::uint32_t p = row.cols.front();
        for (std::size_t k = 1; k < row.cols.size(); ++k) {
          std::uint32_t c = row.cols[k];
          if (c == nloc) continue;
          local_null[c].push(p, -row.vals[k]);
        }
      }
      for (std::uint32_t f = 0; f < nloc; ++f) {
        if (!free_col[f]) continue;
        SparseVec g;
        for (std::size_t k = 0; k < local_null[f].cols.size(); ++k)
          g.cols.push_back(cols[local_null[f].cols[k]]), g.vals.push_back(local_null[f].vals[k]);
        g.canonicalize();
        sol.nullspace.push_back(std::move(g));
      }
    }
    if (!sol.consistent) {
      sol.particular.clear();
      sol.nullspace.clear();
      if (want_certificate) sol.certificate = certificate_for(bad_eqs);
    } else if (want_nullspace) {
      std::sort(sol.nullspace.begin(), sol.nullspace.end(),
                [](const SparseVec& a, const SparseVec& b) { return a.cols.back() < b.cols.back(); });
    }
    return sol;
  }

 private:
  struct Equation {
    SparseVec a;
    Rational b;
    int level;
  };

  static void note_failure(SparseSolution& sol, int level) {
    if (sol.consistent || level < sol.failing_level) sol.failing_level = level;
    sol.consistent = false;
  }

  // Solve r A = 0, r b = 1 restricted to the given equations.
  SparseVec certificate_for(const std::vector<std::size_t>& ids) const {
    SparseLinearSystem t(ids.size());
    std::vector<SparseVec> by_col(n_);
    SparseVec bnorm;
    for (std::uint32_t k = 0; k < ids.size(); ++k) {
      const auto& e = eqs_[ids[k]];
      for (std::size_t j = 0; j < e.a.cols.size(); ++j) by_col[e.a.cols[j]].push(k, e.a.vals[j]);
      bnorm.push(k, e.b);
    }
    for (auto& col : by_col)
      if (!col.empty()) t.add_equation(std::move(col), 0);
    t.add_equation(bnorm, 1);
    auto s = t.solve(false, false);
    SparseVec r;
    if (!s.consistent) return r;
    for (std::uint32_t k = 0; k < ids.size(); ++k) r.push(static_cast<std::uint32_t>(ids[k]), s.particular[k]);
    return r;
  }

  std::size_t n_;
  std::vector<Equation> eqs_;
};

}  // namespace germlab
