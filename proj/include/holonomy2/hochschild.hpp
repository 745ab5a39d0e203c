#pragma once

#include <algorithm>
#include <bit>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "holonomy2/lie.hpp"

namespace holonomy2 {

/// Finite-dimensional DGA over Q on a homogeneous basis.
///   mult[i*n+j] : sparse product e_i e_j = sum (k, c) c e_k
///   d           : n x n matrix, degree +1
struct FinDGA {
  std::vector<std::string> names;
  std::vector<int> degrees;
  std::vector<std::vector<std::pair<std::size_t, Rational>>> mult;
  QMatrix d;
  std::size_t unit = 0;
  bool commutative = false;

  FinDGA() = default;
  explicit FinDGA(std::vector<int> degs) : degrees(std::move(degs)), mult(degrees.size() * degrees.size()), d(degrees.size(), degrees.size()) {
    for (std::size_t i = 0; i < degrees.size(); ++i) names.push_back("e" + std::to_string(i));
  }

  std::size_t dim() const { return degrees.size(); }

  void set_product(std::size_t i, std::size_t j, const QVector& v) {
    auto& slot = mult[i * dim() + j];
    slot.clear();
    for (std::size_t k = 0; k < v.size(); ++k)
      if (sgn(v[k]) != 0) slot.emplace_back(k, v[k]);
  }

  QVector product_basis(std::size_t i, std::size_t j) const {
    QVector out = zeros(dim());
    for (const auto& [k, c] : mult[i * dim() + j]) out[k] += c;
    return out;
  }

  QVector multiply(const QVector& a, const QVector& b) const {
    QVector out = zeros(dim());
    for (std::size_t i = 0; i < dim(); ++i) {
      if (sgn(a[i]) == 0) continue;
      for (std::size_t j = 0; j < dim(); ++j) {
        if (sgn(b[j]) == 0) continue;
        for (const auto& [k, c] : mult[i * dim() + j]) out[k] += a[i] * b[j] * c;
      }
    }
    return out;
  }

  QVector differential(const QVector& a) const { return d.apply(a); }

  /// Degree of a homogeneous nonzero element; nullopt for 0 or mixed.
  std::optional<int> degree_of(const QVector& a) const {
    std::optional<int> deg;
    for (std::size_t i = 0; i < dim(); ++i) {
      if (sgn(a[i]) == 0) continue;
      if (deg && *deg != degrees[i]) return std::nullopt;
      deg = degrees[i];
    }
    return deg;
  }
};

inline Report validate_dga(const FinDGA& A) {
  const std::size_t n = A.dim();
  require(A.mult.size() == n * n && A.d.rows() == n && A.d.cols() == n && A.unit < n && A.names.size() == n,
          ErrorKind::Structural, "DGA tables do not match the basis size");
  Report r;
  auto e = [&](std::size_t i) { return unit_vector(n, i); };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k)
      if (sgn(A.d(k, i)) != 0 && A.degrees[k] != A.degrees[i] + 1) r.add("d degree", {i, k}, A.d(k, i));
    for (std::size_t j = 0; j < n; ++j)
      for (const auto& [k, c] : A.mult[i * n + j]) {
        require(k < n, ErrorKind::Structural, "product index out of range");
        if (A.degrees[k] != A.degrees[i] + A.degrees[j]) r.add("product degree", {i, j, k}, c);
      }
  }
  r.add_if_nonzero("unit", {}, A.differential(e(A.unit)));
  for (std::size_t i = 0; i < n; ++i) {
    r.add_if_nonzero("unit", {i}, A.product_basis(A.unit, i) - e(i));
    r.add_if_nonzero("unit", {i}, A.product_basis(i, A.unit) - e(i));
    r.add_if_nonzero("d squared", {i}, A.differential(A.differential(e(i))));
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rational s = A.degrees[i] % 2 ? -1 : 1;
      const QVector lhs = A.differential(A.product_basis(i, j));
      const QVector rhs = A.multiply(A.differential(e(i)), e(j)) + s * A.multiply(e(i), A.differential(e(j)));
      r.add_if_nonzero("leibniz", {i, j}, lhs - rhs);
      if (A.commutative) {
        const Rational t = (A.degrees[i] * A.degrees[j]) % 2 ? -1 : 1;
        r.add_if_nonzero("commutativity", {i, j}, A.product_basis(i, j) - t * A.product_basis(j, i));
      }
      for (std::size_t k = 0; k < n; ++k)
        r.add_if_nonzero("associativity", {i, j, k},
                         A.multiply(A.product_basis(i, j), e(k)) - A.multiply(e(i), A.product_basis(j, k)));
    }
  return r;
}

inline void require_valid(const FinDGA& A) {
  const Report r = validate_dga(A);
  require(r.ok(), ErrorKind::Validation, "not a DGA (" + (r.violations.empty() ? "" : r.violations.front().kind) + ")");
}

/// Linear combination of tensor words a0[a1|...|an] over a FinDGA; a0 is the
/// module slot. Total degree |a0| + sum (|ai| - 1).
struct HochChain {
  using Word = std::vector<std::size_t>;
  std::map<Word, Rational> terms;

  void add(const Word& w, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms.emplace(w, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms.erase(it);
    }
  }
  bool is_zero() const { return terms.empty(); }

  HochChain& operator+=(const HochChain& o) {
    for (const auto& [w, c] : o.terms) add(w, c);
    return *this;
  }
  friend HochChain operator+(HochChain a, const HochChain& b) { return a += b; }
  friend HochChain operator-(HochChain a, const HochChain& b) {
    for (const auto& [w, c] : b.terms) a.add(w, -c);
    return a;
  }
  friend HochChain operator*(const Rational& s, const HochChain& a) {
    HochChain out;
    for (const auto& [w, c] : a.terms) out.add(w, s * c);
    return out;
  }
  friend bool operator==(const HochChain& a, const HochChain& b) { return a.terms == b.terms; }

  /// Part with bar length ell (word size ell + 1).
  HochChain length_component(std::size_t ell) const {
    HochChain out;
    for (const auto& [w, c] : terms)
      if (w.size() == ell + 1) out.terms.emplace(w, c);
    return out;
  }
};

inline int word_degree(const FinDGA& A, const HochChain::Word& w) {
  int deg = A.degrees[w[0]];
  for (std::size_t i = 1; i < w.size(); ++i) deg += A.degrees[w[i]] - 1;
  return deg;
}

/// Total degree of a homogeneous chain (nullopt for the zero chain).
inline std::optional<int> chain_degree(const FinDGA& A, const HochChain& c) {
  std::optional<int> deg;
  for (const auto& [w, coef] : c.terms) {
    require(!w.empty(), ErrorKind::Structural, "empty tensor word");
    for (auto i : w) require(i < A.dim(), ErrorKind::Structural, "word index out of range");
    const int d = word_degree(A, w);
    require(!deg || *deg == d, ErrorKind::Degree, "inhomogeneous chain");
    deg = d;
  }
  return deg;
}

namespace detail {

inline int koszul(int a) { return a % 2 ? -1 : 1; }

// Replaces w[pos] by each basis term of v, scaled.
inline void add_replaced(HochChain& out, HochChain::Word w, std::size_t pos, const QVector& v, const Rational& c) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (sgn(v[k]) != 0) {
      w[pos] = k;
      out.add(w, c * v[k]);
    }
}

}  // namespace detail

/// Internal differential, standard shifted signs:
///   d a0[..] - sum_i (-1)^{e_{i-1}} a0[..|d a_i|..],  e_i = |a0| + sum_{j<=i} (|a_j| - 1).
inline HochChain hochschild_d_internal(const HochChain& c, const FinDGA& A) {
  chain_degree(A, c);
  HochChain out;
  for (const auto& [w, coef] : c.terms) {
    int eps = A.degrees[w[0]];
    detail::add_replaced(out, w, 0, A.d.column(w[0]), coef);
    for (std::size_t i = 1; i < w.size(); ++i) {
      detail::add_replaced(out, w, i, A.d.column(w[i]), -detail::koszul(eps) * coef);
      eps += A.degrees[w[i]] - 1;
    }
  }
  return out;
}

/// Multiplication of neighbours including the cyclic term:
///   (-1)^{|a0|} a0a1[a2..] + sum_i (-1)^{e_i} a0[..|a_i a_{i+1}|..]
///   - (-1)^{(|an|-1) e_{n-1}} an a0[a1..a_{n-1}].
inline HochChain hochschild_b(const HochChain& c, const FinDGA& A) {
  chain_degree(A, c);
  HochChain out;
  for (const auto& [w, coef] : c.terms) {
    const std::size_t n = w.size() - 1;
    if (n == 0) continue;
    std::vector<int> eps(n + 1);
    eps[0] = A.degrees[w[0]];
    for (std::size_t i = 1; i <= n; ++i) eps[i] = eps[i - 1] + A.degrees[w[i]] - 1;
    auto merged = [&](std::size_t i) {  // word with slots i, i+1 merged into slot i
      HochChain::Word v(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i + 1));
      v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 2), w.end());
      return v;
    };
    for (std::size_t i = 0; i < n; ++i) {
      const int s = i == 0 ? detail::koszul(A.degrees[w[0]]) : detail::koszul(eps[i]);
      detail::add_replaced(out, merged(i), i, A.product_basis(w[i], w[i + 1]), s * coef);
    }
    HochChain::Word v(w.begin(), w.end() - 1);
    const int s = -detail::koszul((A.degrees[w[n]] - 1) * eps[n - 1]);
    detail::add_replaced(out, v, 0, A.product_basis(w[n], w[0]), s * coef);
  }
  return out;
}

/// D = b - d_int. Both pieces square to zero and anticommute; the relative
/// sign makes D(1[A|...|A]) the sum of insertions of dA + A.A.
inline HochChain hochschild_d(const HochChain& c, const FinDGA& A) {
  return hochschild_b(c, A) - hochschild_d_internal(c, A);
}

/// Shuffle product for commutative A:
///   a0[a] * b0[b] = (-1)^{|b0| e(a)} a0 b0 [sh(a, b)] with Koszul signs on shifted degrees.
inline HochChain shuffle(const HochChain& x, const HochChain& y, const FinDGA& A) {
  require(A.commutative, ErrorKind::Unsupported, "shuffle product needs a commutative DGA");
  chain_degree(A, x);
  chain_degree(A, y);
  HochChain out;
  for (const auto& [u, cu] : x.terms)
    for (const auto& [v, cv] : y.terms) {
      const std::size_t p = u.size() - 1, q = v.size() - 1;
      int ea = 0;
      for (std::size_t i = 1; i <= p; ++i) ea += A.degrees[u[i]] - 1;
      const Rational base = detail::koszul(A.degrees[v[0]] * ea) * cu * cv;
      const QVector prod0 = A.product_basis(u[0], v[0]);
      // choose the positions of u's letters among p + q slots
      std::vector<bool> pick(p + q, false);
      std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(p), true);
      std::sort(pick.begin(), pick.end());
      do {
        HochChain::Word w(1 + p + q);
        std::size_t iu = 1, iv = 1;
        int sign_exp = 0;
        for (std::size_t s = 0; s < p + q; ++s) {
          if (pick[s]) {
            // u letter passes the v letters already placed
            int passed = 0;
            for (std::size_t j = 1; j < iv; ++j) passed += A.degrees[v[j]] - 1;
            sign_exp += (A.degrees[u[iu]] - 1) * passed;
            w[1 + s] = u[iu++];
          } else {
            w[1 + s] = v[iv++];
          }
        }
        detail::add_replaced(out, w, 0, prod0, detail::koszul(sign_exp) * base);
      } while (std::next_permutation(pick.begin(), pick.end()));
    }
  return out;
}

/// The unit chain 1 (module slot only).
inline HochChain unit_chain(const FinDGA& A) {
  HochChain c;
  c.add({A.unit}, 1);
  return c;
}

/// 1 + 1[A] + 1[A|A] + ... up to bar length N.
inline HochChain P_chain(const QVector& elt, const FinDGA& A, std::size_t N) {
  require(elt.size() == A.dim(), ErrorKind::Structural, "element has the wrong dimension");
  if (!is_zero(elt)) {
    const auto deg = A.degree_of(elt);
    require(deg.has_value(), ErrorKind::Degree, "element is not homogeneous");
    require(*deg % 2 != 0, ErrorKind::Degree, "P(A) needs an element of odd degree");
  }
  HochChain out = unit_chain(A);
  std::vector<std::pair<HochChain::Word, Rational>> layer{{{A.unit}, Rational(1)}};
  for (std::size_t ell = 1; ell <= N; ++ell) {
    std::vector<std::pair<HochChain::Word, Rational>> next;
    for (const auto& [w, c] : layer)
      for (std::size_t k = 0; k < A.dim(); ++k)
        if (sgn(elt[k]) != 0) {
          HochChain::Word v = w;
          v.push_back(k);
          next.emplace_back(std::move(v), c * elt[k]);
        }
    for (const auto& [w, c] : next) out.add(w, c);
    layer = std::move(next);
  }
  return out;
}

/// dA + A.A
inline QVector mc_curvature(const QVector& elt, const FinDGA& A) {
  return A.differential(elt) + A.multiply(elt, elt);
}

inline bool is_mc_element(const QVector& elt, const FinDGA& A) {
  require(elt.size() == A.dim(), ErrorKind::Structural, "element has the wrong dimension");
  if (!is_zero(elt)) {
    const auto deg = A.degree_of(elt);
    require(deg.has_value() && *deg % 2 != 0, ErrorKind::Degree, "MC elements are odd and homogeneous");
  }
  return is_zero(mc_curvature(elt, A));
}

/// Bar-length components 0..N of D P(A). A truncation at length N cannot
/// cancel its own top d-insertions, so they are read off P_chain(A, N + 1).
inline std::vector<HochChain> cycle_defect(const QVector& elt, const FinDGA& A, std::size_t N) {
  const HochChain D = hochschild_d(P_chain(elt, A, N + 1), A);
  std::vector<HochChain> out;
  for (std::size_t ell = 0; ell <= N; ++ell) out.push_back(D.length_component(ell));
  return out;
}

/// Words present in a chain with their degrees, for reports.
inline std::string to_string(const HochChain& c, const FinDGA& A) {
  if (c.is_zero()) return "0";
  std::string s;
  for (const auto& [w, coef] : c.terms) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(coef) + ")" + A.names[w[0]] + "[";
    for (std::size_t i = 1; i < w.size(); ++i) s += (i > 1 ? "|" : "") + A.names[w[i]];
    s += "]";
  }
  return s;
}

// ---------------------------------------------------------------------------
// Example DGAs

/// Exterior algebra on k odd generators, d = 0 (graded commutative).
inline FinDGA exterior_dga(std::size_t k) {
  const std::size_t n = std::size_t(1) << k;
  std::vector<int> degs(n);
  for (std::size_t m = 0; m < n; ++m) degs[m] = std::popcount(m);
  FinDGA A(degs);
  for (std::size_t a = 0; a < n; ++a) {
    std::string nm;
    for (std::size_t i = 0; i < k; ++i)
      if (a & (std::size_t(1) << i)) nm += "x" + std::to_string(i);
    A.names[a] = nm.empty() ? "1" : nm;
    for (std::size_t b = 0; b < n; ++b) {
      const int s = wedge_sign(static_cast<unsigned>(a), static_cast<unsigned>(b));
      if (s != 0) A.mult[a * n + b].emplace_back(a | b, Rational(s));
    }
  }
  A.commutative = true;
  return A;
}

/// {1, x, y} with |x| = 1, y = x.x, dx = lambda y and x^3 = 0. MC elements
/// a x satisfy a (lambda + a) = 0.
inline FinDGA truncated_dga(const Rational& lambda) {
  FinDGA A({0, 1, 2});
  A.names = {"1", "x", "y"};
  for (std::size_t i = 0; i < 3; ++i) {
    A.mult[0 * 3 + i].emplace_back(i, Rational(1));
    if (i != 0) A.mult[i * 3 + 0].emplace_back(i, Rational(1));
  }
  A.mult[1 * 3 + 1].emplace_back(2, Rational(1));
  A.d(2, 1) = lambda;
  return A;
}

/// Chevalley-Eilenberg algebra Lambda g^* with d theta^k = -sum_{i<j} c_ij^k theta^i theta^j.
inline FinDGA ce_dga(const LieAlgebra& L) {
  const std::size_t g = L.dim;
  require(g <= 16, ErrorKind::Structural, "CE algebra limited to dimension 16");
  FinDGA A = exterior_dga(g);
  for (std::size_t m = 0; m < A.dim(); ++m) {
    std::string nm;
    for (std::size_t i = 0; i < g; ++i)
      if (m & (std::size_t(1) << i)) nm += (nm.empty() ? "t" : "^t") + std::to_string(i);
    A.names[m] = nm.empty() ? "1" : nm;
  }
  // d on generators, extended as a derivation
  auto dgen = [&](std::size_t k) {
    QVector v = zeros(A.dim());
    for (std::size_t i = 0; i < g; ++i)
      for (std::size_t j = i + 1; j < g; ++j)
        if (sgn(L.at(i, j, k)) != 0) v[(std::size_t(1) << i) | (std::size_t(1) << j)] -= L.at(i, j, k);
    return v;
  };
  for (std::size_t m = 0; m < A.dim(); ++m) {
    QVector out = zeros(A.dim());
    std::size_t prefix = 0;  // generators before position
    for (std::size_t k = 0; k < g; ++k) {
      if (!(m & (std::size_t(1) << k))) continue;
      const std::size_t rest = m & ~(prefix | (std::size_t(1) << k));
      const Rational s = std::popcount(prefix) % 2 ? -1 : 1;
      const QVector t = A.multiply(A.multiply(unit_vector(A.dim(), prefix), dgen(k)), unit_vector(A.dim(), rest));
      axpy(s, t, out);
      prefix |= std::size_t(1) << k;
    }
    for (std::size_t r = 0; r < A.dim(); ++r) A.d(r, m) = out[r];
  }
  return A;
}

/// Graded tensor product (a (x) b)(a' (x) b') = (-1)^{|b||a'|} aa' (x) bb',
/// d(a (x) b) = da (x) b + (-1)^{|a|} a (x) db. Basis index i * dim B + j.
inline FinDGA tensor_dga(const FinDGA& A, const FinDGA& B) {
  const std::size_t na = A.dim(), nb = B.dim(), n = na * nb;
  std::vector<int> degs(n);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) degs[i * nb + j] = A.degrees[i] + B.degrees[j];
  FinDGA T(degs);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j) {
      const std::size_t p = i * nb + j;
      T.names[p] = A.names[i] + "*" + B.names[j];
      for (std::size_t k = 0; k < na; ++k)
        if (sgn(A.d(k, i)) != 0) T.d(k * nb + j, p) += A.d(k, i);
      for (std::size_t k = 0; k < nb; ++k)
        if (sgn(B.d(k, j)) != 0) T.d(i * nb + k, p) += (A.degrees[i] % 2 ? -1 : 1) * B.d(k, j);
      for (std::size_t i2 = 0; i2 < na; ++i2)
        for (std::size_t j2 = 0; j2 < nb; ++j2) {
          const Rational s = (B.degrees[j] * A.degrees[i2]) % 2 ? -1 : 1;
          for (const auto& [ka, ca] : A.mult[i * na + i2])
            for (const auto& [kb, cb] : B.mult[j * nb + j2])
              T.mult[p * n + (i2 * nb + j2)].emplace_back(ka * nb + kb, s * ca * cb);
        }
    }
  T.unit = A.unit * nb + B.unit;
  T.commutative = A.commutative && B.commutative;
  return T;
}

/// Mat_k(Q) in degree 0 on the basis {I, E_ab (a != b), E_aa - E_00 (a > 0)},
/// so that the unit is a basis vector.
inline FinDGA matrix_units(std::size_t k) {
  require(k >= 1, ErrorKind::Structural, "matrix size must be positive");
  // new basis as matrices
  std::vector<QMatrix> basis;
  std::vector<std::string> names;
  basis.push_back(QMatrix::identity(k));
  names.push_back("I");
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (a != b) {
        QMatrix E(k, k);
        E(a, b) = 1;
        basis.push_back(E);
        names.push_back("E" + std::to_string(a) + std::to_string(b));
      }
  for (std::size_t a = 1; a < k; ++a) {
    QMatrix E(k, k);
    E(a, a) = 1;
    E(0, 0) = -1;
    basis.push_back(E);
    names.push_back("H" + std::to_string(a));
  }
  const std::size_t n = basis.size();
  // coordinates of a matrix in the new basis
  QMatrix coords(k * k, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t b = 0; b < k; ++b) coords(a * k + b, c) = basis[c](a, b);
  const QMatrix inv = *inverse(coords);
  FinDGA A(std::vector<int>(n, 0));
  A.names = names;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const QMatrix P = basis[i] * basis[j];
      QVector flat(k * k);
      for (std::size_t a = 0; a < k; ++a)
        for (std::size_t b = 0; b < k; ++b) flat[a * k + b] = P(a, b);
      A.set_product(i, j, inv.apply(flat));
    }
  A.unit = 0;
  A.commutative = k == 1;
  return A;
}

/// Coordinates of a k x k matrix in the matrix_units basis.
inline QVector matrix_coordinates(const QMatrix& M) {
  const std::size_t k = M.rows();
  QVector v;
  Rational c0 = 0;
  for (std::size_t a = 0; a < k; ++a) c0 += M(a, a);
  c0 /= Rational(static_cast<long>(k));
  v.push_back(c0);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b)
      if (a != b) v.push_back(M(a, b));
  for (std::size_t a = 1; a < k; ++a) v.push_back(M(a, a) - c0);
  return v;
}

/// A = sum_i theta^i (x) rho(e_i) in CE(g) (x) Mat_k; MC iff rho is a representation.
inline QVector flat_connection_element(const LieAlgebra& L, const std::vector<QMatrix>& rho, const FinDGA& T) {
  require(rho.size() == L.dim, ErrorKind::Structural, "one matrix per Lie algebra basis vector");
  const std::size_t k = rho.empty() ? 1 : rho.front().rows();
  const std::size_t nb = k * k;  // matrix_units has k^2 elements
  require(T.dim() == (std::size_t(1) << L.dim) * nb, ErrorKind::Structural, "DGA is not CE(g) (x) Mat_k");
  QVector out = zeros(T.dim());
  for (std::size_t i = 0; i < L.dim; ++i) {
    const QVector m = matrix_coordinates(rho[i]);
    for (std::size_t j = 0; j < nb; ++j) out[(std::size_t(1) << i) * nb + j] += m[j];
  }
  return out;
}

}  // namespace holonomy2
