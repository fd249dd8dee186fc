#pragma once

#include <optional>
#include <string>
#include <vector>

#include "germlab/liftable/lift.hpp"
#include "germlab/verdict.hpp"

namespace germlab {

/// Positive integer weights w_i of the source variables and degrees d_j of
/// the components, normalized so that their joint gcd is 1.
struct WeightSystem {
  std::vector<int> weights;
  std::vector<int> degrees;
  bool operator==(const WeightSystem&) const = default;

  /// Weighted degree of a monomial.
  int degree_of(const Monomial& m) const {
    int d = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) d += m[i] * weights[i];
    return d;
  }
  Json to_json() const { return Json{{"weights", weights}, {"degrees", degrees}}; }
};

namespace detail {

/// Smallest positive integer multiple of v with coprime entries.
inline std::vector<Integer> primitive_integer(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) l = lcm(l, Integer(x.get_den()));
  std::vector<Integer> out;
  Integer g = 0;
  for (const auto& x : v) {
    Integer y = Integer(x.get_num()) * (l / Integer(x.get_den()));
    out.push_back(y);
    g = gcd(g, y);
  }
  if (g != 0)
    for (auto& y : out) y /= g;
  return out;
}

inline int to_int(const Integer& z) {
  if (!z.fits_sint_p()) throw StructuralError("weight exceeds the integer range");
  return static_cast<int>(z.get_si());
}

}  // namespace detail

/// Positive weights making every component weighted homogeneous, if any.
/// The solution space of the homogeneity equations is searched with an exact
/// linear program (v >= 1, vertex enumeration); among the vertices the one
/// with the smallest normalized sum wins, ties broken lexicographically.
inline std::optional<WeightSystem> wh_detect(const MapGerm& f) {
  std::size_t n = f.n(), p = f.p(), N = n + p;
  std::vector<std::vector<Rational>> rows;
  for (std::size_t j = 0; j < p; ++j)
    for (const auto& [m, c] : f[j].terms()) {
      std::vector<Rational> r(N, Rational(0));
      for (std::size_t i = 0; i < n; ++i) r[i] = m[i];
      r[n + j] = -1;
      rows.push_back(std::move(r));
    }
  RationalMatrix A(rows.size(), N);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < N; ++c) A(r, c) = rows[r][c];
  std::vector<std::vector<Rational>> basis;
  if (rows.empty()) {
    for (std::size_t c = 0; c < N; ++c) {
      basis.emplace_back(N, Rational(0));
      basis.back()[c] = 1;
    }
  } else {
    basis = A.nullspace();
  }
  std::size_t k = basis.size();
  if (k == 0) return std::nullopt;
  // B(i, t): coordinate i of basis vector t
  RationalMatrix B(N, k);
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t i = 0; i < N; ++i) B(i, t) = basis[t][i];
  std::optional<std::vector<Integer>> best;
  Integer best_sum = 0;
  std::vector<std::size_t> pick(k);
  for (std::size_t t = 0; t < k; ++t) pick[t] = t;
  for (std::size_t guard = 0; guard < 500000; ++guard) {
    RationalMatrix S(k, k);
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t t = 0; t < k; ++t) S(a, t) = B(pick[a], t);
    if (auto inv = S.inverse()) {
      auto c = inv->apply(std::vector<Rational>(k, Rational(1)));
      auto v = B.apply(c);
      bool feasible = true;
      for (const auto& x : v)
        if (x < 1) feasible = false;
      if (feasible) {
        auto z = detail::primitive_integer(v);
        Integer sum = 0;
        for (const auto& y : z) sum += y;
        if (!best || sum < best_sum || (sum == best_sum && z < *best)) {
          best = z;
          best_sum = sum;
        }
      }
    }
    std::size_t a = k;
    while (a > 0 && pick[a - 1] == N - k + a - 1) --a;
    if (a == 0) break;
    ++pick[a - 1];
    for (std::size_t r = a; r < k; ++r) pick[r] = pick[r - 1] + 1;
  }
  if (!best) return std::nullopt;
  WeightSystem W;
  for (std::size_t i = 0; i < n; ++i) W.weights.push_back(detail::to_int((*best)[i]));
  for (std::size_t j = 0; j < p; ++j) W.degrees.push_back(detail::to_int((*best)[n + j]));
  return W;
}

class InconsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct EulerPair {
  VectorField eta;  // sum d_j X_j d/dX_j
  VectorField xi;   // sum w_i x_i d/dx_i
};

inline EulerPair euler_pair(const MapGerm& f, const WeightSystem& W) {
  if (W.weights.size() != f.n() || W.degrees.size() != f.p()) throw StructuralError("weight system of wrong size");
  EulerPair e;
  PolyVector eta, xi;
  for (std::size_t j = 0; j < f.p(); ++j) eta.push_back(Polynomial::variable(f.target(), j) * Rational(W.degrees[j]));
  for (std::size_t i = 0; i < f.n(); ++i) xi.push_back(Polynomial::variable(f.source(), i) * Rational(W.weights[i]));
  e.eta = VectorField(f.target(), std::move(eta));
  e.xi = VectorField(f.source(), std::move(xi));
  if (!f_related(f, e.eta, e.xi)) throw InconsistencyError("weight system does not satisfy the Euler relation");
  return e;
}

/// d_{p+k}, the weighted degree of the k-th unfolding monomial, must differ
/// from the degree of the component it is added to.
inline Verdict good_weights_check(const MapGerm& f, const WeightSystem& W,
                                  const std::vector<QuotientBasisElement>& basis) {
  Verdict v;
  v.decision = "good_weights";
  Json pairs = Json::array();
  std::optional<std::size_t> bad;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    int dk = W.degree_of(basis[k].monomial);
    int dj = W.degrees.at(basis[k].component);
    pairs.push_back(Json{{"k", k + 1}, {"component", basis[k].component + 1}, {"monomial", monomial_to_string(basis[k].monomial, *f.source())},
                         {"unfolding_degree", dk}, {"component_degree", dj}});
    if (dk == dj && !bad) bad = k;
  }
  v.step("degrees", pairs);
  if (bad) {
    v.status = Status::No;
    v.certificate = pairs[*bad];
  } else {
    v.status = Status::Yes;
    v.witness = pairs;
  }
  return v;
}

}  // namespace germlab
