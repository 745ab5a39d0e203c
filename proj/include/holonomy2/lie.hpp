#pragma once

#include <bit>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holonomy2/qmatrix.hpp"
#include "holonomy2/report.hpp"

namespace holonomy2 {

/// Finite-dimensional Lie algebra by structure constants,
/// [e_i, e_j] = sum_k c(i,j,k) e_k.
struct LieAlgebra {
  std::size_t dim = 0;
  std::vector<std::string> basis;
  std::vector<Rational> c;  // flat, index (i*dim + j)*dim + k

  LieAlgebra() = default;
  explicit LieAlgebra(std::size_t n, std::vector<std::string> names = {})
      : dim(n), basis(std::move(names)), c(n * n * n, Rational(0)) {
    if (basis.empty())
      for (std::size_t i = 0; i < n; ++i) basis.push_back("e" + std::to_string(i));
  }

  Rational& at(std::size_t i, std::size_t j, std::size_t k) { return c[(i * dim + j) * dim + k]; }
  const Rational& at(std::size_t i, std::size_t j, std::size_t k) const { return c[(i * dim + j) * dim + k]; }

  /// Sets [e_i, e_j] = v and [e_j, e_i] = -v.
  void set_bracket(std::size_t i, std::size_t j, const QVector& v) {
    for (std::size_t k = 0; k < dim; ++k) {
      at(i, j, k) = v[k];
      at(j, i, k) = -v[k];
    }
  }

  QVector bracket(const QVector& x, const QVector& y) const {
    QVector out = zeros(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      if (sgn(x[i]) == 0) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (sgn(y[j]) == 0) continue;
        const Rational s = x[i] * y[j];
        for (std::size_t k = 0; k < dim; ++k)
          if (sgn(at(i, j, k)) != 0) out[k] += s * at(i, j, k);
      }
    }
    return out;
  }

  QVector bracket_basis(std::size_t i, std::size_t j) const {
    QVector out(dim);
    for (std::size_t k = 0; k < dim; ++k) out[k] = at(i, j, k);
    return out;
  }

  /// Matrix of ad(e_i); column j is [e_i, e_j].
  QMatrix ad(std::size_t i) const {
    QMatrix m(dim, dim);
    for (std::size_t j = 0; j < dim; ++j)
      for (std::size_t k = 0; k < dim; ++k) m(k, j) = at(i, j, k);
    return m;
  }

  QMatrix ad(const QVector& x) const {
    QMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
      if (sgn(x[i]) != 0) m = m + x[i] * ad(i);
    return m;
  }

  bool is_abelian() const {
    for (const auto& q : c)
      if (sgn(q) != 0) return false;
    return true;
  }

  friend bool operator==(const LieAlgebra& a, const LieAlgebra& b) { return a.dim == b.dim && a.c == b.c; }
};

/// Representation of a Lie algebra: one dim x dim matrix per basis vector.
struct LieModule {
  std::size_t dim = 0;
  std::vector<QMatrix> action;

  QMatrix rho(const QVector& x) const {
    QMatrix m(dim, dim);
    for (std::size_t i = 0; i < action.size(); ++i)
      if (sgn(x[i]) != 0) m = m + x[i] * action[i];
    return m;
  }
};

inline void check_shape(const LieAlgebra& L) {
  require(L.c.size() == L.dim * L.dim * L.dim, ErrorKind::Structural,
          "structure constants must have dim^3 entries");
  require(L.basis.size() == L.dim, ErrorKind::Structural, "basis name count differs from dim");
}

inline void check_shape(const LieAlgebra& L, const LieModule& V) {
  require(V.action.size() == L.dim, ErrorKind::Structural, "module needs one matrix per basis vector");
  for (const auto& m : V.action)
    require(m.rows() == V.dim && m.cols() == V.dim, ErrorKind::Structural, "action matrix has wrong shape");
}

/// Antisymmetry is reported once per unordered pair (i <= j) with residual
/// c(i,j,k) + c(j,i,k); Jacobi at every (i,j,k,l) with a nonzero cyclic sum.
inline Report validate_lie_algebra(const LieAlgebra& L) {
  check_shape(L);
  Report r;
  const std::size_t n = L.dim;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) {
        const Rational s = L.at(i, j, k) + L.at(j, i, k);
        if (sgn(s) != 0) r.add("antisymmetry", {i, j, k}, s);
      }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        for (std::size_t l = 0; l < n; ++l) {
          Rational s = 0;
          for (std::size_t m = 0; m < n; ++m)
            s += L.at(i, j, m) * L.at(m, k, l) + L.at(j, k, m) * L.at(m, i, l) + L.at(k, i, m) * L.at(m, j, l);
          if (sgn(s) != 0) r.add("jacobi", {i, j, k, l}, s);
        }
  return r;
}

/// rho(e_i)rho(e_j) - rho(e_j)rho(e_i) - sum_k c(i,j,k) rho(e_k), per (i<j).
inline Report validate_module(const LieAlgebra& L, const LieModule& V) {
  check_shape(L, V);
  Report r;
  for (std::size_t i = 0; i < L.dim; ++i)
    for (std::size_t j = i + 1; j < L.dim; ++j) {
      const QMatrix m = V.action[i] * V.action[j] - V.action[j] * V.action[i] - V.rho(L.bracket_basis(i, j));
      if (auto at = first_nonzero(m)) r.add("representation", {i, j, at->first, at->second}, m(at->first, at->second));
    }
  return r;
}

/// f[x,y] = [fx,fy] on basis pairs; f is (dim target x dim source).
inline Report check_lie_morphism(const LieAlgebra& src, const LieAlgebra& dst, const QMatrix& f,
                                 const std::string& name = "morphism") {
  require(f.rows() == dst.dim && f.cols() == src.dim, ErrorKind::Structural, name + " has wrong shape");
  Report r;
  for (std::size_t i = 0; i < src.dim; ++i)
    for (std::size_t j = i + 1; j < src.dim; ++j) {
      QVector lhs = f.apply(src.bracket_basis(i, j));
      QVector rhs = dst.bracket(f.column(i), f.column(j));
      r.add_if_nonzero(name, {i, j}, lhs - rhs);
    }
  return r;
}

// ---------------------------------------------------------------------------
// Small library of algebras and modules.

inline LieAlgebra abelian(std::size_t n) { return LieAlgebra(n); }

/// sl2 in the basis (h, e, f).
inline LieAlgebra sl2() {
  LieAlgebra L(3, {"h", "e", "f"});
  L.set_bracket(0, 1, {0, 2, 0});
  L.set_bracket(0, 2, {0, 0, -2});
  L.set_bracket(1, 2, {1, 0, 0});
  return L;
}

/// Heisenberg algebra (x, y, z) with [x,y] = z.
inline LieAlgebra heisenberg() {
  LieAlgebra L(3, {"x", "y", "z"});
  L.set_bracket(0, 1, {0, 0, 1});
  return L;
}

/// aff(1) = (a, b) with [a,b] = b.
inline LieAlgebra aff1() {
  LieAlgebra L(2, {"a", "b"});
  L.set_bracket(0, 1, {0, 1});
  return L;
}

inline LieAlgebra direct_sum(const LieAlgebra& a, const LieAlgebra& b) {
  std::vector<std::string> names = a.basis;
  names.insert(names.end(), b.basis.begin(), b.basis.end());
  LieAlgebra L(a.dim + b.dim, names);
  for (std::size_t i = 0; i < a.dim; ++i)
    for (std::size_t j = 0; j < a.dim; ++j)
      for (std::size_t k = 0; k < a.dim; ++k) L.at(i, j, k) = a.at(i, j, k);
  for (std::size_t i = 0; i < b.dim; ++i)
    for (std::size_t j = 0; j < b.dim; ++j)
      for (std::size_t k = 0; k < b.dim; ++k) L.at(a.dim + i, a.dim + j, a.dim + k) = b.at(i, j, k);
  return L;
}

/// Structure constants in the basis given by the columns of the invertible P.
inline LieAlgebra change_basis(const LieAlgebra& L, const QMatrix& P) {
  auto Pinv = inverse(P);
  require(Pinv.has_value(), ErrorKind::Basis, "basis change is not invertible");
  LieAlgebra out(L.dim);
  for (std::size_t i = 0; i < L.dim; ++i)
    for (std::size_t j = 0; j < L.dim; ++j) {
      QVector v = Pinv->apply(L.bracket(P.column(i), P.column(j)));
      for (std::size_t k = 0; k < L.dim; ++k) out.at(i, j, k) = v[k];
    }
  return out;
}

inline LieModule trivial_module(const LieAlgebra& L, std::size_t d) {
  return LieModule{d, std::vector<QMatrix>(L.dim, QMatrix(d, d))};
}

inline LieModule adjoint_module(const LieAlgebra& L) {
  LieModule V{L.dim, {}};
  for (std::size_t i = 0; i < L.dim; ++i) V.action.push_back(L.ad(i));
  return V;
}

// ---------------------------------------------------------------------------
// Chevalley-Eilenberg cochains in the lexicographic basis of
// Lambda^p g* (x) V; coordinate index = subset_rank * dimV + v.

/// Increasing p-subsets of {0..n-1} in lexicographic order.
class Subsets {
 public:
  Subsets(std::size_t n, std::size_t p) : n_(n), p_(p) {
    std::vector<std::size_t> cur;
    build(0, cur);
    for (std::size_t r = 0; r < sets_.size(); ++r) rank_[sets_[r]] = r;
  }

  std::size_t size() const { return sets_.size(); }
  const std::vector<std::size_t>& operator[](std::size_t r) const { return sets_[r]; }
  std::size_t rank(const std::vector<std::size_t>& s) const { return rank_.at(s); }

 private:
  void build(std::size_t start, std::vector<std::size_t>& cur) {
    if (cur.size() == p_) {
      sets_.push_back(cur);
      return;
    }
    for (std::size_t i = start; i < n_; ++i) {
      cur.push_back(i);
      build(i + 1, cur);
      cur.pop_back();
    }
  }

  std::size_t n_, p_;
  std::vector<std::vector<std::size_t>> sets_;
  std::map<std::vector<std::size_t>, std::size_t> rank_;
};

inline std::size_t cochain_dim(std::size_t n, std::size_t p, std::size_t vdim) {
  return Subsets(n, p).size() * vdim;
}

/// Sorts idx in place and returns the sign of the sorting permutation, or 0
/// when an index repeats.
inline int sort_sign(std::vector<std::size_t>& idx) {
  int sign = 1;
  for (std::size_t i = 1; i < idx.size(); ++i)
    for (std::size_t j = i; j > 0 && idx[j - 1] >= idx[j]; --j) {
      if (idx[j - 1] == idx[j]) return 0;
      std::swap(idx[j - 1], idx[j]);
      sign = -sign;
    }
  return sign;
}

/// Sign of the wedge of two increasing index sets given as bit masks; 0 on overlap.
inline int wedge_sign(unsigned a, unsigned b) {
  if (a & b) return 0;
  int inversions = 0;
  for (unsigned i = 0; i < 32; ++i)
    if (a & (1u << i)) inversions += std::popcount(b & ((1u << i) - 1));
  return (inversions % 2) ? -1 : 1;
}

/// Evaluates a p-cochain on basis vectors (any order); returns a V-vector.
inline QVector eval_cochain(const QVector& omega, std::size_t n, std::size_t vdim, std::vector<std::size_t> args) {
  const int s = sort_sign(args);
  if (s == 0) return zeros(vdim);
  const Subsets S(n, args.size());
  const std::size_t base = S.rank(args) * vdim;
  QVector out(omega.begin() + static_cast<std::ptrdiff_t>(base),
              omega.begin() + static_cast<std::ptrdiff_t>(base + vdim));
  if (s < 0)
    for (auto& x : out) x = -x;
  return out;
}

/// Formal CE differential Lambda^p (x) V -> Lambda^{p+1} (x) V for arbitrary
/// action matrices (the representation property is not assumed):
///   (d w)(x_0..x_p) = sum_i (-1)^i x_i . w(..^x_i..)
///                   + sum_{i<j} (-1)^{i+j} w([x_i,x_j], ..^x_i..^x_j..)
inline QMatrix ce_differential(const LieAlgebra& L, const std::vector<QMatrix>& action, std::size_t vdim,
                               std::size_t p) {
  require(action.size() == L.dim, ErrorKind::Structural, "need one action matrix per basis vector");
  const std::size_t n = L.dim;
  const Subsets src(n, p), dst(n, p + 1);
  QMatrix D(dst.size() * vdim, src.size() * vdim);
  for (std::size_t r = 0; r < dst.size(); ++r) {
    const auto& S = dst[r];
    for (std::size_t i = 0; i <= p; ++i) {
      std::vector<std::size_t> T;
      for (std::size_t t = 0; t <= p; ++t)
        if (t != i) T.push_back(S[t]);
      const std::size_t col = src.rank(T) * vdim;
      const Rational sgn_i = (i % 2) ? -1 : 1;
      const QMatrix& A = action[S[i]];
      for (std::size_t w = 0; w < vdim; ++w)
        for (std::size_t v = 0; v < vdim; ++v)
          if (sgn(A(w, v)) != 0) D(r * vdim + w, col + v) += sgn_i * A(w, v);
    }
    for (std::size_t i = 0; i <= p; ++i)
      for (std::size_t j = i + 1; j <= p; ++j) {
        std::vector<std::size_t> rest;
        for (std::size_t t = 0; t <= p; ++t)
          if (t != i && t != j) rest.push_back(S[t]);
        const Rational sgn_ij = ((i + j) % 2) ? -1 : 1;
        for (std::size_t k = 0; k < n; ++k) {
          const Rational& ck = L.at(S[i], S[j], k);
          if (sgn(ck) == 0) continue;
          std::vector<std::size_t> args{k};
          args.insert(args.end(), rest.begin(), rest.end());
          const int s = sort_sign(args);
          if (s == 0) continue;
          const std::size_t col = src.rank(args) * vdim;
          for (std::size_t v = 0; v < vdim; ++v) D(r * vdim + v, col + v) += sgn_ij * s * ck;
        }
      }
  }
  return D;
}

inline QMatrix ce_differential(const LieAlgebra& L, const LieModule& V, std::size_t p) {
  check_shape(L, V);
  return ce_differential(L, V.action, V.dim, p);
}

struct Cohomology {
  std::vector<QVector> basis;  // cocycles whose classes form a basis
  std::size_t betti = 0;
};

/// H^p(L, V) = ker d_p / im d_{p-1} by exact rank computations.
inline Cohomology ce_cohomology(const LieAlgebra& L, const LieModule& V, std::size_t p) {
  check_shape(L);
  const Report rep = validate_module(L, V);
  require(rep.ok(), ErrorKind::Representation, "module action violates the representation property");
  const QMatrix dp = ce_differential(L, V, p);
  const QMatrix ker = nullspace(dp);
  QMatrix im = p == 0 ? QMatrix(dp.cols(), 0) : ce_differential(L, V, p - 1);
  Cohomology h;
  QMatrix acc = im;
  std::size_t r = rank(acc);
  for (std::size_t j = 0; j < ker.cols(); ++j) {
    QMatrix col(ker.rows(), 1);
    col.set_column(0, ker.column(j));
    QMatrix next = hconcat(acc, col);
    const std::size_t r2 = rank(next);
    if (r2 > r) {
      h.basis.push_back(ker.column(j));
      acc = std::move(next);
      r = r2;
    }
  }
  h.betti = h.basis.size();
  return h;
}

/// True iff the p-cochain is d_CE of some (p-1)-cochain.
inline bool is_coboundary(const LieAlgebra& L, const LieModule& V, std::size_t p, const QVector& c) {
  if (is_zero(c)) return true;
  if (p == 0) return false;
  return in_column_span(ce_differential(L, V, p - 1), c);
}

inline bool is_cocycle(const LieAlgebra& L, const LieModule& V, std::size_t p, const QVector& c) {
  return is_zero(ce_differential(L, V, p).apply(c));
}

inline bool same_class(const LieAlgebra& L, const LieModule& V, std::size_t p, const QVector& a, const QVector& b) {
  return is_coboundary(L, V, p, a - b);
}

// ---------------------------------------------------------------------------
// Short exact sequences of modules 0 -> V -> I -> Q -> 0 over one algebra.

struct ModuleSES {
  LieModule V, I, Q;
  QMatrix incl;  // dim I x dim V
  QMatrix proj;  // dim Q x dim I
};

inline void check_ses(const LieAlgebra& L, const ModuleSES& s) {
  check_shape(L, s.V);
  check_shape(L, s.I);
  check_shape(L, s.Q);
  for (const LieModule* m : {&s.V, &s.I, &s.Q})
    require(validate_module(L, *m).ok(), ErrorKind::Representation, "sequence term is not a module");
  require(s.incl.rows() == s.I.dim && s.incl.cols() == s.V.dim, ErrorKind::Structural, "inclusion has wrong shape");
  require(s.proj.rows() == s.Q.dim && s.proj.cols() == s.I.dim, ErrorKind::Structural, "projection has wrong shape");
  require((s.proj * s.incl).is_zero(), ErrorKind::Exactness, "projection after inclusion is not zero");
  require(rank(s.incl) == s.V.dim, ErrorKind::Exactness, "inclusion is not injective");
  require(rank(s.proj) == s.Q.dim, ErrorKind::Exactness, "projection is not surjective");
  require(s.I.dim == s.V.dim + s.Q.dim, ErrorKind::Exactness, "sequence is not exact in the middle");
  for (std::size_t i = 0; i < L.dim; ++i) {
    require(s.incl * s.V.action[i] == s.I.action[i] * s.incl, ErrorKind::Exactness, "inclusion is not equivariant");
    require(s.proj * s.I.action[i] == s.Q.action[i] * s.proj, ErrorKind::Exactness, "projection is not equivariant");
  }
}

/// Right inverse of a surjection chosen on its pivot columns.
inline QMatrix pivot_section(const QMatrix& proj) {
  const Echelon e = rref(proj);
  require(e.pivots.size() == proj.rows(), ErrorKind::Basis, "map is not surjective");
  QMatrix B(proj.rows(), proj.rows());
  for (std::size_t i = 0; i < proj.rows(); ++i)
    for (std::size_t r = 0; r < e.pivots.size(); ++r) B(i, r) = proj(i, e.pivots[r]);
  const QMatrix Binv = *inverse(B);
  QMatrix s(proj.cols(), proj.rows());
  for (std::size_t r = 0; r < e.pivots.size(); ++r)
    for (std::size_t j = 0; j < proj.rows(); ++j) s(e.pivots[r], j) = Binv(r, j);
  return s;
}

/// Applies a linear map to the values of a cochain with the given number of
/// subset blocks.
inline QVector map_values(const QVector& omega, const QMatrix& f, std::size_t blocks) {
  const std::size_t in = f.cols(), out = f.rows();
  require(omega.size() == blocks * in, ErrorKind::Structural, "cochain/value map mismatch");
  QVector res = zeros(blocks * out);
  for (std::size_t b = 0; b < blocks; ++b) {
    QVector v(omega.begin() + static_cast<std::ptrdiff_t>(b * in), omega.begin() + static_cast<std::ptrdiff_t>((b + 1) * in));
    QVector w = f.apply(v);
    for (std::size_t k = 0; k < out; ++k) res[b * out + k] = w[k];
  }
  return res;
}

/// Connecting homomorphism H^2(L,Q) -> H^3(L,V): lift alpha through a section
/// of I -> Q, apply d_CE in I, read the result back in V coordinates.
inline QVector connecting_map(const LieAlgebra& L, const ModuleSES& s, const QVector& alpha,
                              const std::optional<QMatrix>& section = std::nullopt) {
  check_ses(L, s);
  require(alpha.size() == cochain_dim(L.dim, 2, s.Q.dim), ErrorKind::Structural, "alpha has wrong length");
  require(is_cocycle(L, s.Q, 2, alpha), ErrorKind::Cocycle, "alpha is not a 2-cocycle");
  QMatrix sec;
  if (section) {
    require(section->rows() == s.I.dim && section->cols() == s.Q.dim, ErrorKind::Structural,
            "section has wrong shape");
    require(s.proj * *section == QMatrix::identity(s.Q.dim), ErrorKind::Section, "supplied map is not a section");
    sec = *section;
  } else {
    sec = pivot_section(s.proj);
  }
  const QVector lifted = map_values(alpha, sec, Subsets(L.dim, 2).size());
  const QVector dI = ce_differential(L, s.I, 2).apply(lifted);
  const std::size_t blocks = Subsets(L.dim, 3).size();
  QVector out = zeros(blocks * s.V.dim);
  for (std::size_t b = 0; b < blocks; ++b) {
    QVector v(dI.begin() + static_cast<std::ptrdiff_t>(b * s.I.dim),
              dI.begin() + static_cast<std::ptrdiff_t>((b + 1) * s.I.dim));
    auto x = solve_particular(s.incl, v);
    require(x.has_value(), ErrorKind::Consistency, "lifted coboundary does not land in V");
    for (std::size_t k = 0; k < s.V.dim; ++k) out[b * s.V.dim + k] = (*x)[k];
  }
  return out;
}

}  // namespace holonomy2
