#pragma once

#include <string>
#include <vector>

#include "holonomy2/crossed.hpp"

namespace holonomy2 {

/// 2-term L-infinity algebra L_{-1} -> L_0 (cohomological degrees).
///   l1     : n0 x n1 matrix
///   l2_00  : flat n0^3, l2(e_i,e_j) = sum_k l2_00[(i*n0+j)*n0+k] e_k
///   l2_0m1 : n0 matrices (n1 x n1), l2(e_i, h)
///   l3     : flat n0^3 * n1, l3(e_i,e_j,e_k) in L_{-1}
struct TwoTermLinf {
  std::size_t n0 = 0, n1 = 0;
  QMatrix l1;
  std::vector<Rational> l2_00;
  std::vector<QMatrix> l2_0m1;
  std::vector<Rational> l3;

  TwoTermLinf() = default;
  TwoTermLinf(std::size_t d0, std::size_t d1)
      : n0(d0), n1(d1), l1(d0, d1), l2_00(d0 * d0 * d0, Rational(0)), l2_0m1(d0, QMatrix(d1, d1)),
        l3(d0 * d0 * d0 * d1, Rational(0)) {}

  Rational& b(std::size_t i, std::size_t j, std::size_t k) { return l2_00[(i * n0 + j) * n0 + k]; }
  const Rational& b(std::size_t i, std::size_t j, std::size_t k) const { return l2_00[(i * n0 + j) * n0 + k]; }
  Rational& t(std::size_t i, std::size_t j, std::size_t k, std::size_t v) {
    return l3[((i * n0 + j) * n0 + k) * n1 + v];
  }
  const Rational& t(std::size_t i, std::size_t j, std::size_t k, std::size_t v) const {
    return l3[((i * n0 + j) * n0 + k) * n1 + v];
  }

  QVector bracket(const QVector& x, const QVector& y) const {
    QVector out = zeros(n0);
    for (std::size_t i = 0; i < n0; ++i)
      for (std::size_t j = 0; j < n0; ++j) {
        if (sgn(x[i]) == 0 || sgn(y[j]) == 0) continue;
        for (std::size_t k = 0; k < n0; ++k) out[k] += x[i] * y[j] * b(i, j, k);
      }
    return out;
  }

  QVector act(const QVector& x, const QVector& h) const {
    QVector out = zeros(n1);
    for (std::size_t i = 0; i < n0; ++i)
      if (sgn(x[i]) != 0) axpy(x[i], l2_0m1[i].apply(h), out);
    return out;
  }

  QVector trilinear(const QVector& x, const QVector& y, const QVector& z) const {
    QVector out = zeros(n1);
    for (std::size_t i = 0; i < n0; ++i)
      for (std::size_t j = 0; j < n0; ++j)
        for (std::size_t k = 0; k < n0; ++k) {
          if (sgn(x[i]) == 0 || sgn(y[j]) == 0 || sgn(z[k]) == 0) continue;
          const Rational s = x[i] * y[j] * z[k];
          for (std::size_t v = 0; v < n1; ++v) out[v] += s * t(i, j, k, v);
        }
    return out;
  }

  /// L_0 with l2_00 as a (possibly non-Lie) bracket, for the formal CE differential.
  LieAlgebra degree_zero() const {
    LieAlgebra L(n0);
    L.c = l2_00;
    return L;
  }

  /// l3 in the reduced lexicographic cochain basis (increasing triples).
  QVector l3_cochain() const {
    const Subsets S(n0, 3);
    QVector out = zeros(S.size() * n1);
    for (std::size_t r = 0; r < S.size(); ++r)
      for (std::size_t v = 0; v < n1; ++v) out[r * n1 + v] = t(S[r][0], S[r][1], S[r][2], v);
    return out;
  }

  /// Sets l3 from a reduced 3-cochain, extended totally antisymmetrically.
  void set_l3_from_cochain(const QVector& gamma) {
    for (std::size_t i = 0; i < n0; ++i)
      for (std::size_t j = 0; j < n0; ++j)
        for (std::size_t k = 0; k < n0; ++k) {
          QVector v = eval_cochain(gamma, n0, n1, {i, j, k});
          for (std::size_t a = 0; a < n1; ++a) t(i, j, k, a) = v[a];
        }
  }
};

inline void check_shape(const TwoTermLinf& T) {
  require(T.l1.rows() == T.n0 && T.l1.cols() == T.n1, ErrorKind::Structural, "l1 must be n0 x n1");
  require(T.l2_00.size() == T.n0 * T.n0 * T.n0, ErrorKind::Structural, "l2 on L0 must have n0^3 entries");
  require(T.l2_0m1.size() == T.n0, ErrorKind::Structural, "need one action matrix per L0 basis vector");
  for (const auto& m : T.l2_0m1)
    require(m.rows() == T.n1 && m.cols() == T.n1, ErrorKind::Structural, "action matrix must be n1 x n1");
  require(T.l3.size() == T.n0 * T.n0 * T.n0 * T.n1, ErrorKind::Structural, "l3 must have n0^3 n1 entries");
}

/// The two-term identity list, with [h,x] := -[x,h] and d := l1:
///   (a) d(x.h) = [x, dh]
///   (b) (dh).k + (dk).h = 0
///   (c) [[x,y],z] + [[y,z],x] + [[z,x],y] = -d l3(x,y,z)
///   (d) x.(y.h) - y.(x.h) - [x,y].h = l3(x,y,dh)
///   (e) d_CE l3 = 0 for the formal action of L0 on L_{-1}
/// plus antisymmetry of l2 on L0 and total antisymmetry of l3.
inline Report validate_linf(const TwoTermLinf& T) {
  check_shape(T);
  Report r;
  const std::size_t n0 = T.n0, n1 = T.n1;
  auto e0 = [&](std::size_t i) { return unit_vector(n0, i); };
  auto e1 = [&](std::size_t i) { return unit_vector(n1, i); };
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = i; j < n0; ++j)
      for (std::size_t k = 0; k < n0; ++k) {
        const Rational s = T.b(i, j, k) + T.b(j, i, k);
        if (sgn(s) != 0) r.add("l2 antisymmetry", {i, j, k}, s);
      }
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n0; ++j)
      for (std::size_t k = 0; k < n0; ++k) {
        std::vector<std::size_t> idx{i, j, k};
        std::vector<std::size_t> sorted = idx;
        const int s = sort_sign(sorted);
        for (std::size_t v = 0; v < n1; ++v) {
          const Rational expect = s == 0 ? Rational(0) : s * T.t(sorted[0], sorted[1], sorted[2], v);
          const Rational diff = T.t(i, j, k, v) - expect;
          if (sgn(diff) != 0) {
            r.add("l3 antisymmetry", {i, j, k}, diff);
            break;
          }
        }
      }
  for (std::size_t x = 0; x < n0; ++x)
    for (std::size_t h = 0; h < n1; ++h)
      r.add_if_nonzero("(a) chain map", {x, h}, T.l1.apply(T.act(e0(x), e1(h))) - T.bracket(e0(x), T.l1.column(h)));
  for (std::size_t h = 0; h < n1; ++h)
    for (std::size_t k = h; k < n1; ++k)
      r.add_if_nonzero("(b) symmetry", {h, k}, T.act(T.l1.column(h), e1(k)) + T.act(T.l1.column(k), e1(h)));
  for (std::size_t x = 0; x < n0; ++x)
    for (std::size_t y = x + 1; y < n0; ++y)
      for (std::size_t z = y + 1; z < n0; ++z) {
        QVector J = T.bracket(T.bracket(e0(x), e0(y)), e0(z)) + T.bracket(T.bracket(e0(y), e0(z)), e0(x)) +
                    T.bracket(T.bracket(e0(z), e0(x)), e0(y));
        r.add_if_nonzero("(c) jacobi", {x, y, z}, J + T.l1.apply(T.trilinear(e0(x), e0(y), e0(z))));
      }
  for (std::size_t x = 0; x < n0; ++x)
    for (std::size_t y = x + 1; y < n0; ++y)
      for (std::size_t h = 0; h < n1; ++h) {
        QVector lhs = T.act(e0(x), T.act(e0(y), e1(h))) - T.act(e0(y), T.act(e0(x), e1(h))) -
                      T.act(T.bracket(e0(x), e0(y)), e1(h));
        r.add_if_nonzero("(d) mixed jacobi", {x, y, h}, lhs - T.trilinear(e0(x), e0(y), T.l1.column(h)));
      }
  if (n0 >= 4) {
    const QVector d = ce_differential(T.degree_zero(), T.l2_0m1, n1, 3).apply(T.l3_cochain());
    const Subsets S(n0, 4);
    for (std::size_t q = 0; q < S.size(); ++q)
      for (std::size_t v = 0; v < n1; ++v)
        if (sgn(d[q * n1 + v]) != 0) {
          r.add("(e) coherence", S[q], d[q * n1 + v]);
          break;
        }
  }
  return r;
}

/// l1 = mu, l2 from the bracket of g and the action, l3 = 0.
inline TwoTermLinf from_crossed(const CrossedModule& X) {
  require(validate_crossed_module(X).ok(), ErrorKind::Validation, "input is not a crossed module");
  TwoTermLinf T(X.g.dim, X.h.dim);
  T.l1 = X.mu;
  T.l2_00 = X.g.c;
  T.l2_0m1 = X.action;
  return T;
}

/// l1 = 0, L0 = gbar, L_{-1} = V, l3 = gamma.
inline TwoTermLinf from_triplet(const Triplet& tr) {
  TwoTermLinf T(tr.gbar.dim, tr.V.dim);
  T.l2_00 = tr.gbar.c;
  T.l2_0m1 = tr.V.action;
  T.set_l3_from_cochain(tr.gamma);
  return T;
}

inline bool is_skeletal(const TwoTermLinf& T) { return T.l1.is_zero(); }

}  // namespace holonomy2
