#pragma once

#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "germlab/exactalg.hpp"

namespace germlab {

/// Which coefficients may multiply the generators of a span part.
///  Full:      any element of O_n.
///  ViaMap:    h o f for h in O_p (f is the stored map).
///  Constants: scalars only.
enum class MultiplierKind { Full, ViaMap, Constants };

struct MultiplierRing {
  MultiplierKind kind = MultiplierKind::Full;
  PolyVector map;           // ViaMap: components of f over the source ring
  VarsPtr map_target_vars;  // ViaMap: names for the target coordinates

  static MultiplierRing full() { return {}; }
  static MultiplierRing constants() { return {MultiplierKind::Constants, {}, nullptr}; }
  static MultiplierRing via(PolyVector f, VarsPtr target) {
    return {MultiplierKind::ViaMap, std::move(f), std::move(target)};
  }
};

struct SpanPart {
  std::vector<PolyVector> generators;
  MultiplierRing multipliers;
};

/// Submodule of (O_n)^rank given by generators; a sum of parts with
/// possibly different multiplier rings.
struct ModuleSpan {
  VarsPtr vars;
  std::size_t rank = 0;
  std::vector<SpanPart> parts;
  int trunc_degree = 12;

  ModuleSpan() = default;
  ModuleSpan(VarsPtr v, std::size_t r) : vars(std::move(v)), rank(r) {}

  ModuleSpan& add(std::vector<PolyVector> gens, MultiplierRing ring = MultiplierRing::full()) {
    for (const auto& g : gens) {
      if (g.size() != rank) throw StructuralError("generator of wrong rank");
      for (const auto& c : g)
        if (c.vars() && !same_vars(c.vars(), vars)) throw StructuralError("generator over a different ring");
    }
    parts.push_back({std::move(gens), std::move(ring)});
    return *this;
  }

  std::size_t num_generators() const {
    std::size_t k = 0;
    for (const auto& p : parts) k += p.generators.size();
    return k;
  }

  /// All generators of all Full parts.
  std::vector<PolyVector> full_generators() const {
    std::vector<PolyVector> out;
    for (const auto& p : parts)
      if (p.multipliers.kind == MultiplierKind::Full) out.insert(out.end(), p.generators.begin(), p.generators.end());
    return out;
  }
};

/// Ideal of O_n as a rank-1 span.
inline ModuleSpan ideal_span(const VarsPtr& vars, const PolyVector& gens) {
  ModuleSpan m(vars, 1);
  std::vector<PolyVector> g;
  for (const auto& p : gens) g.push_back({p});
  m.add(std::move(g));
  return m;
}

/// Coordinates (component, monomial) of the N-jet space J^N of (O_n)^r,
/// ordered by degree, then component, then lex with the first variable largest.
class JetIndex {
 public:
  JetIndex(std::size_t nvars, std::size_t rank, int N) : n_(nvars), r_(rank), N_(N) {
    std::uint32_t next = 0;
    for (int d = 0; d <= N; ++d) {
      auto monos = monomials_of_degree(nvars, d);
      start_.push_back(next);
      count_.push_back(static_cast<std::uint32_t>(monos.size()));
      for (std::uint32_t k = 0; k < monos.size(); ++k) rank_in_degree_.emplace(monos[k], k);
      for (std::size_t c = 0; c < rank; ++c)
        for (const auto& m : monos) coords_.push_back({c, m});
      next += static_cast<std::uint32_t>(monos.size() * rank);
    }
  }

  int level() const { return N_; }
  std::size_t size() const { return coords_.size(); }
  std::size_t rank() const { return r_; }
  std::size_t nvars() const { return n_; }
  /// Number of coordinates of degree <= d.
  std::size_t size_up_to(int d) const {
    if (d < 0) return 0;
    if (d >= N_) return size();
    return start_[d + 1];
  }
  std::uint32_t col(std::size_t comp, const Monomial& m) const {
    int d = m.degree();
    return start_[d] + static_cast<std::uint32_t>(comp) * count_[d] + rank_in_degree_.at(m);
  }
  const std::pair<std::size_t, Monomial>& coord(std::uint32_t c) const { return coords_[c]; }

  /// Truncation of a vector to J^N as a sparse row.
  SparseVec row(const PolyVector& v) const {
    SparseVec out;
    for (std::size_t comp = 0; comp < v.size(); ++comp)
      for (const auto& [m, c] : v[comp].terms()) {
        if (m.degree() > N_) break;
        out.cols.push_back(col(comp, m));
        out.vals.push_back(c);
      }
    out.canonicalize();
    return out;
  }

  PolyVector vector_of(const SparseVec& s, const VarsPtr& vars) const {
    PolyVector v(r_, Polynomial(vars));
    for (std::size_t k = 0; k < s.size(); ++k) {
      const auto& [comp, m] = coords_[s.cols[k]];
      v[comp].add_term(m, s.vals[k]);
    }
    return v;
  }

 private:
  std::size_t n_, r_;
  int N_;
  std::vector<std::uint32_t> start_, count_;
  std::unordered_map<Monomial, std::uint32_t, MonomialHash> rank_in_degree_;
  std::vector<std::pair<std::size_t, Monomial>> coords_;
};

namespace detail {

/// Pullbacks h o f of target monomials, truncated at a fixed degree.
class PullbackCache {
 public:
  PullbackCache(const PolyVector& f, int trunc) : f_(f), trunc_(trunc) {}

  /// Target exponent vectors beta with sum_j beta_j * ord(f_j) <= budget.
  std::vector<Monomial> admissible(int budget) const {
    std::vector<Monomial> out;
    std::size_t p = f_.size();
    std::vector<int> ord(p);
    for (std::size_t j = 0; j < p; ++j) ord[j] = f_[j].order();
    Monomial cur(p);
    std::function<void(std::size_t, int)> rec = [&](std::size_t j, int left) {
      if (j == p) {
        out.push_back(cur);
        return;
      }
      if (ord[j] == kInfiniteOrder || ord[j] == 0) {
        cur.set(j, 0);
        rec(j + 1, left);
        return;
      }
      for (int e = 0; e * ord[j] <= left; ++e) {
        cur.set(j, e);
        rec(j + 1, left - e * ord[j]);
      }
      cur.set(j, 0);
    };
    rec(0, budget);
    std::sort(out.begin(), out.end());
    return out;
  }

  const Polynomial& get(const Monomial& beta) {
    auto it = cache_.find(beta);
    if (it != cache_.end()) return it->second;
    Polynomial val;
    std::size_t j = 0;
    while (j < beta.size() && beta[j] == 0) ++j;
    if (j == beta.size()) {
      val = Polynomial::constant(f_.at(0).vars(), Rational(1));
    } else {
      Monomial prev = beta;
      prev.set(j, beta[j] - 1);
      val = Polynomial::multiply(get(prev), f_[j], trunc_);
    }
    return cache_.emplace(beta, std::move(val)).first->second;
  }

 private:
  const PolyVector& f_;
  int trunc_;
  std::unordered_map<Monomial, Polynomial, MonomialHash> cache_;
};

inline PolyVector scale_vector(const PolyVector& g, const Polynomial& h, int trunc) {
  PolyVector r;
  for (const auto& c : g) r.push_back(Polynomial::multiply(h, c, trunc));
  return r;
}

}  // namespace detail

/// Echelon basis of pi_N(M) inside J^N.
struct JetSpan {
  JetIndex index;
  Eliminator basis;

  explicit JetSpan(JetIndex idx) : index(std::move(idx)), basis(index.size()) {}

  std::size_t dimension() const { return basis.rank(); }
  bool contains(const PolyVector& v) { return basis.contains(index.row(v)); }

  void add_vector(const PolyVector& v) {
    SparseVec r = index.row(v);
    if (!r.empty()) basis.add(r);
  }

  /// Add pi_N of every admissible multiple of the part's generators.
  void add_part(const SpanPart& part) {
    int N = index.level();
    std::size_t n = index.nvars();
    switch (part.multipliers.kind) {
      case MultiplierKind::Constants:
        for (const auto& g : part.generators) add_vector(g);
        break;
      case MultiplierKind::Full:
        for (const auto& g : part.generators) {
          int o = order_of(g);
          if (o > N) continue;
          for (const auto& a : monomials_up_to(n, N - o)) {
            SparseVec row;
            for (std::size_t comp = 0; comp < g.size(); ++comp)
              for (const auto& [m, c] : g[comp].terms()) {
                if (m.degree() + a.degree() > N) break;
                row.cols.push_back(index.col(comp, m * a));
                row.vals.push_back(c);
              }
            row.canonicalize();
            if (!row.empty()) basis.add(row);
          }
        }
        break;
      case MultiplierKind::ViaMap: {
        detail::PullbackCache pb(part.multipliers.map, N);
        for (const auto& g : part.generators) {
          int o = order_of(g);
          if (o > N) continue;
          for (const auto& beta : pb.admissible(N - o)) add_vector(detail::scale_vector(g, pb.get(beta), N));
        }
        break;
      }
    }
  }

  void add_span(const ModuleSpan& M) {
    for (const auto& p : M.parts) add_part(p);
  }

  /// Whether every monomial vector of degree in [lo, hi] lies in the span.
  bool contains_all_monomials(int lo, int hi) {
    for (std::uint32_t c = static_cast<std::uint32_t>(index.size_up_to(lo - 1)); c < index.size_up_to(hi); ++c) {
      if (basis.is_pivot(c)) continue;
      SparseVec e;
      e.push(c, Rational(1));
      if (!basis.contains(e)) return false;
    }
    return true;
  }

  /// Non-pivot coordinates of degree <= d: a monomial basis of J^d / pi_d(M)
  /// when d = N. Lower degrees come first.
  std::vector<std::pair<std::size_t, Monomial>> cobasis(int d) const {
    std::vector<std::pair<std::size_t, Monomial>> out;
    for (std::uint32_t c = 0; c < index.size_up_to(d); ++c)
      if (!basis.is_pivot(c)) out.push_back(index.coord(c));
    return out;
  }
};

inline JetSpan jet_span(const ModuleSpan& M, int N) {
  JetSpan s(JetIndex(M.vars->size(), M.rank, N));
  s.add_span(M);
  return s;
}

struct QuotientBasisElement {
  std::size_t component = 0;
  Monomial monomial;
  bool operator==(const QuotientBasisElement&) const = default;
};

struct CodimCertificate {
  /// Nakayama level: m^N theta is contained in M.
  int N = 0;
  int codim = 0;
  std::vector<QuotientBasisElement> cobasis;
  /// Exponent s with m^s in the ideal generated by the map, for via-map spans.
  int finiteness_exponent = 0;
  /// Set when the value comes from stabilization rather than a certificate.
  bool heuristic = false;
};

struct NotFiniteUpTo {
  int D = 0;
};

using CodimResult = std::variant<CodimCertificate, NotFiniteUpTo>;

namespace detail {

inline CodimCertificate read_codim(const JetSpan& s, int level) {
  CodimCertificate cert;
  auto cb = s.cobasis(level);
  for (auto& [c, m] : cb) cert.cobasis.push_back({c, m});
  cert.codim = static_cast<int>(cert.cobasis.size());
  return cert;
}

inline const MultiplierRing* via_ring(const ModuleSpan& M) {
  for (const auto& p : M.parts)
    if (p.multipliers.kind == MultiplierKind::ViaMap) return &p.multipliers;
  return nullptr;
}

}  // namespace detail

/// Certified codimension of M in (O_n)^r, or not_finite_up_to(D).
///
/// Without via-map parts the certificate is the least N with every degree-N
/// monomial vector in pi_N of the O_n-submodule. With a via-map part the map
/// must be finite (m^s inside the pulled-back ideal); then the degree-N..N+s-1
/// monomial vectors in pi_{N+s-1}(M + f*m_p m^N theta) give m^N theta in M by
/// Nakayama over O_p. A non-finite map falls back to a flagged stabilization
/// heuristic.
inline CodimResult finite_codim_certified(const ModuleSpan& M, int D) {
  const MultiplierRing* via = detail::via_ring(M);
  std::size_t n = M.vars->size();
  if (!via) {
    ModuleSpan full(M.vars, M.rank), extra(M.vars, M.rank);
    for (const auto& p : M.parts) (p.multipliers.kind == MultiplierKind::Full ? full : extra).parts.push_back(p);
    for (int N = 0; N <= D; ++N) {
      JetSpan s = jet_span(full, N);
      if (!s.contains_all_monomials(N, N)) continue;
      s.add_span(extra);
      CodimCertificate cert = detail::read_codim(s, N);
      cert.N = N;
      return cert;
    }
    return NotFiniteUpTo{D};
  }
  // finiteness of the map
  auto ideal = finite_codim_certified(ideal_span(M.vars, via->map), D);
  if (auto* ic = std::get_if<CodimCertificate>(&ideal)) {
    int s = ic->N;
    for (int N = 0; N <= D; ++N) {
      int J = N + s - 1;
      JetSpan sp = jet_span(M, J);
      // f*m_p . m^N theta as an O_n-module
      std::vector<PolyVector> fm;
      for (const auto& fj : via->map)
        for (const auto& a : monomials_of_degree(n, N))
          for (std::size_t i = 0; i < M.rank; ++i) {
            PolyVector v(M.rank, Polynomial(M.vars));
            v[i] = fj.multiply_monomial(a);
            fm.push_back(std::move(v));
          }
      sp.add_part({std::move(fm), MultiplierRing::full()});
      if (!sp.contains_all_monomials(N, J)) continue;
      CodimCertificate cert;
      if (N == 0) {
        cert.codim = 0;
      } else {
        JetSpan low = jet_span(M, N - 1);
        cert = detail::read_codim(low, N - 1);
      }
      cert.N = N;
      cert.finiteness_exponent = s;
      return cert;
    }
    return NotFiniteUpTo{D};
  }
  // heuristic: dim J^N / pi_N(M) stabilizes
  int prev = -1, stable = 0;
  for (int N = 0; N <= D; ++N) {
    JetSpan sp = jet_span(M, N);
    int c = static_cast<int>(sp.index.size() - sp.dimension());
    if (c == prev) {
      if (++stable >= 2) {
        CodimCertificate cert = detail::read_codim(sp, N);
        cert.N = N;
        cert.heuristic = true;
        return cert;
      }
    } else {
      stable = 0;
    }
    prev = c;
  }
  return NotFiniteUpTo{D};
}

/// Multipliers expressing v in M: one polynomial per generator, in the source
/// ring (Full, Constants) or the map's target ring (ViaMap).
struct MembershipWitness {
  std::vector<std::vector<Polynomial>> multipliers;  // [part][generator]
  bool exact = false;
  int degree = 0;
};

struct NotInSpanAt {
  int N = 0;
  /// Row of the truncated system proving inconsistency (indices are jet coordinates).
  SparseVec certificate;
};

using MembershipResult = std::variant<MembershipWitness, NotInSpanAt>;

/// sum of multiplier * generator, truncated at trunc.
inline PolyVector combine(const ModuleSpan& M, const std::vector<std::vector<Polynomial>>& mult,
                          int trunc = kInfiniteOrder) {
  PolyVector out(M.rank, Polynomial(M.vars));
  for (std::size_t p = 0; p < M.parts.size(); ++p) {
    const auto& part = M.parts[p];
    for (std::size_t g = 0; g < part.generators.size(); ++g) {
      Polynomial a = mult[p][g];
      if (a.is_zero()) continue;
      if (part.multipliers.kind == MultiplierKind::ViaMap) a = compose(a, part.multipliers.map, trunc);
      for (std::size_t i = 0; i < M.rank; ++i) out[i] += Polynomial::multiply(a, part.generators[g][i], trunc);
    }
  }
  return out;
}

namespace detail {

struct Slot {
  std::size_t part, gen;
  Monomial mult;  // source monomial (Full), target monomial (ViaMap), 1 (Constants)
};

inline MembershipResult membership_system(const PolyVector& v, const ModuleSpan& M, int N, bool exact) {
  std::size_t n = M.vars->size();
  int trunc = exact ? kInfiniteOrder : N;
  std::vector<Slot> slots;
  std::vector<PolyVector> slot_vec;
  for (std::size_t p = 0; p < M.parts.size(); ++p) {
    const auto& part = M.parts[p];
    std::optional<PullbackCache> pb;
    if (part.multipliers.kind == MultiplierKind::ViaMap) pb.emplace(part.multipliers.map, trunc);
    for (std::size_t g = 0; g < part.generators.size(); ++g) {
      const auto& gen = part.generators[g];
      switch (part.multipliers.kind) {
        case MultiplierKind::Constants:
          slots.push_back({p, g, Monomial(0)});
          slot_vec.push_back(truncate_jet(gen, trunc));
          break;
        case MultiplierKind::Full:
          for (const auto& a : monomials_up_to(n, N)) {
            PolyVector w;
            for (const auto& c : gen) w.push_back(c.multiply_monomial(a).truncate(trunc));
            slots.push_back({p, g, a});
            slot_vec.push_back(std::move(w));
          }
          break;
        case MultiplierKind::ViaMap:
          for (const auto& beta : monomials_up_to(part.multipliers.map.size(), N)) {
            slots.push_back({p, g, beta});
            slot_vec.push_back(scale_vector(gen, pb->get(beta), trunc));
          }
          break;
      }
    }
  }
  // rows indexed by (component, monomial)
  std::vector<std::unordered_map<Monomial, std::uint32_t, MonomialHash>> row_of(M.rank);
  std::vector<SparseVec> rows;
  std::vector<Rational> rhs;
  std::vector<int> level;
  auto row_id = [&](std::size_t comp, const Monomial& m) {
    auto [it, ins] = row_of[comp].emplace(m, static_cast<std::uint32_t>(rows.size()));
    if (ins) {
      rows.emplace_back();
      rhs.emplace_back(0);
      level.push_back(m.degree());
    }
    return it->second;
  };
  for (std::uint32_t s = 0; s < slots.size(); ++s)
    for (std::size_t comp = 0; comp < M.rank; ++comp)
      for (const auto& [m, c] : slot_vec[s][comp].terms()) rows[row_id(comp, m)].push(s, c);
  for (std::size_t comp = 0; comp < M.rank; ++comp)
    for (const auto& [m, c] : v[comp].terms()) {
      if (m.degree() > trunc) continue;
      rhs[row_id(comp, m)] += c;
    }
  SparseLinearSystem sys(slots.size());
  for (std::size_t r = 0; r < rows.size(); ++r) sys.add_equation(std::move(rows[r]), rhs[r], level[r]);
  auto sol = sys.solve(false, !exact);
  if (!sol.consistent) {
    NotInSpanAt bad{N, {}};
    if (sol.certificate) bad.certificate = *sol.certificate;
    return bad;
  }
  MembershipWitness w;
  w.exact = exact;
  w.degree = N;
  w.multipliers.resize(M.parts.size());
  for (std::size_t p = 0; p < M.parts.size(); ++p) {
    const auto& part = M.parts[p];
    VarsPtr mv = part.multipliers.kind == MultiplierKind::ViaMap ? part.multipliers.map_target_vars : M.vars;
    w.multipliers[p].assign(part.generators.size(), Polynomial(mv));
  }
  for (std::size_t s = 0; s < slots.size(); ++s) {
    const auto& sl = slots[s];
    const auto& part = M.parts[sl.part];
    if (part.multipliers.kind == MultiplierKind::Constants) {
      w.multipliers[sl.part][sl.gen] = Polynomial::constant(M.vars, sol.particular[s]);
    } else {
      w.multipliers[sl.part][sl.gen].add_term(sl.mult, sol.particular[s]);
    }
  }
  return w;
}

}  // namespace detail

/// Express v in M with multipliers of degree <= N. An exact polynomial
/// identity is tried first; otherwise the identity holds modulo degree > N.
inline MembershipResult membership_witness(const PolyVector& v, const ModuleSpan& M, int N) {
  if (v.size() != M.rank) throw StructuralError("membership_witness: vector of wrong rank");
  for (const auto& p : M.parts)
    if (p.multipliers.kind == MultiplierKind::ViaMap && !p.multipliers.map_target_vars)
      throw StructuralError("membership_witness: via-map part without target variables");
  auto exact = detail::membership_system(v, M, N, true);
  if (std::holds_alternative<MembershipWitness>(exact)) return exact;
  return detail::membership_system(v, M, N, false);
}

}  // namespace germlab
