#pragma once

#include <map>
#include <string>
#include <vector>

#include "holonomy2/hochschild.hpp"

namespace holonomy2 {

/// Finite pointed simplicial set truncated at level L.
///   face[k][i]  : Y_k -> Y_{k-1}, k = 1..L, i = 0..k   (face[0] empty)
///   degen[k][j] : Y_k -> Y_{k+1}, k = 0..L-1, j = 0..k (degen[L] empty)
struct FinSimpSet {
  std::size_t cutoff = 0;
  std::vector<std::size_t> sizes;
  std::vector<std::size_t> basepoint;
  std::vector<std::vector<std::vector<std::size_t>>> face, degen;
  std::vector<std::vector<std::string>> labels;

  std::size_t size(std::size_t k) const { return sizes.at(k); }

  /// Tensor slot of element e at level k: basepoint first, the rest in order.
  std::size_t slot(std::size_t k, std::size_t e) const {
    const std::size_t b = basepoint[k];
    if (e == b) return 0;
    return e < b ? e + 1 : e;
  }
  std::size_t element(std::size_t k, std::size_t s) const {
    const std::size_t b = basepoint[k];
    if (s == 0) return b;
    return s - 1 < b ? s - 1 : s;
  }
};

namespace detail {

using Table = std::vector<std::size_t>;

inline Table compose(const Table& outer, const Table& inner) {  // outer after inner
  Table r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[inner[i]];
  return r;
}

inline void check_shape(const FinSimpSet& Y) {
  const std::size_t L = Y.cutoff;
  require(Y.sizes.size() == L + 1 && Y.basepoint.size() == L + 1 && Y.face.size() == L + 1 &&
              Y.degen.size() == L + 1,
          ErrorKind::Structural, "simplicial set tables do not match the cutoff");
  for (std::size_t k = 0; k <= L; ++k) {
    require(Y.sizes[k] >= 1 && Y.basepoint[k] < Y.sizes[k], ErrorKind::Structural, "bad level or basepoint");
    require(Y.face[k].size() == (k == 0 ? 0 : k + 1), ErrorKind::Structural, "wrong number of faces");
    require(Y.degen[k].size() == (k == L ? 0 : k + 1), ErrorKind::Structural, "wrong number of degeneracies");
    for (const auto& t : Y.face[k]) {
      require(t.size() == Y.sizes[k], ErrorKind::Structural, "face table has the wrong length");
      for (auto x : t) require(x < Y.sizes[k - 1], ErrorKind::Structural, "face value out of range");
    }
    for (const auto& t : Y.degen[k]) {
      require(t.size() == Y.sizes[k], ErrorKind::Structural, "degeneracy table has the wrong length");
      for (auto x : t) require(x < Y.sizes[k + 1], ErrorKind::Structural, "degeneracy value out of range");
    }
  }
}

}  // namespace detail

/// Violations are named "dd", "ds", "ss" (indices k, i, j) and "basepoint".
inline Report validate_simplicial(const FinSimpSet& Y) {
  detail::check_shape(Y);
  Report r;
  const std::size_t L = Y.cutoff;
  auto mismatch = [&](const std::string& kind, std::vector<std::size_t> idx, const detail::Table& a,
                      const detail::Table& b) {
    if (a != b) r.add(kind, std::move(idx), Rational(1));
  };
  for (std::size_t k = 0; k <= L; ++k) {
    for (std::size_t i = 0; i < Y.face[k].size(); ++i)
      if (Y.face[k][i][Y.basepoint[k]] != Y.basepoint[k - 1]) r.add("basepoint", {k, i}, Rational(1));
    for (std::size_t j = 0; j < Y.degen[k].size(); ++j)
      if (Y.degen[k][j][Y.basepoint[k]] != Y.basepoint[k + 1]) r.add("basepoint", {k, j}, Rational(1));
  }
  // d_i d_j = d_{j-1} d_i, i < j
  for (std::size_t k = 2; k <= L; ++k)
    for (std::size_t j = 1; j <= k; ++j)
      for (std::size_t i = 0; i < j; ++i)
        mismatch("dd", {k, i, j}, detail::compose(Y.face[k - 1][i], Y.face[k][j]),
                 detail::compose(Y.face[k - 1][j - 1], Y.face[k][i]));
  // faces of degeneracies, s_j : Y_k -> Y_{k+1}, d_i : Y_{k+1} -> Y_k
  for (std::size_t k = 0; k < L; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t i = 0; i <= k + 1; ++i) {
        const detail::Table lhs = detail::compose(Y.face[k + 1][i], Y.degen[k][j]);
        detail::Table rhs;
        if (i == j || i == j + 1) {
          rhs.resize(Y.sizes[k]);
          for (std::size_t x = 0; x < rhs.size(); ++x) rhs[x] = x;
        } else if (i < j) {
          rhs = detail::compose(Y.degen[k - 1][j - 1], Y.face[k][i]);
        } else {
          rhs = detail::compose(Y.degen[k - 1][j], Y.face[k][i - 1]);
        }
        mismatch("ds", {k, i, j}, lhs, rhs);
      }
  // s_i s_j = s_{j+1} s_i, i <= j
  for (std::size_t k = 0; k + 1 < L; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t i = 0; i <= j; ++i)
        mismatch("ss", {k, i, j}, detail::compose(Y.degen[k + 1][i], Y.degen[k][j]),
                 detail::compose(Y.degen[k + 1][j + 1], Y.degen[k][i]));
  return r;
}

/// Delta[1] / boundary: a k-simplex is the number z of zeros in a monotone
/// sequence of length k+1; z = 0 and z = k+1 are the basepoint (element 0).
inline FinSimpSet circle_model(std::size_t L) {
  require(L >= 1, ErrorKind::Structural, "cutoff must be at least 1");
  FinSimpSet Y;
  Y.cutoff = L;
  Y.face.resize(L + 1);
  Y.degen.resize(L + 1);
  for (std::size_t k = 0; k <= L; ++k) {
    Y.sizes.push_back(k + 1);
    Y.basepoint.push_back(0);
    std::vector<std::string> lab{"*"};
    for (std::size_t z = 1; z <= k; ++z) lab.push_back(std::to_string(z));
    Y.labels.push_back(lab);
  }
  auto norm = [](std::size_t z, std::size_t level) { return z > level ? 0 : z; };
  for (std::size_t k = 1; k <= L; ++k)
    for (std::size_t i = 0; i <= k; ++i) {
      detail::Table t(k + 1);
      for (std::size_t z = 0; z <= k; ++z) t[z] = z == 0 ? 0 : norm(i < z ? z - 1 : z, k - 1);
      Y.face[k].push_back(t);
    }
  for (std::size_t k = 0; k < L; ++k)
    for (std::size_t j = 0; j <= k; ++j) {
      detail::Table t(k + 1);
      for (std::size_t z = 0; z <= k; ++z) t[z] = z == 0 ? 0 : (j < z ? z + 1 : z);
      Y.degen[k].push_back(t);
    }
  return Y;
}

/// Levelwise product; (y, z) is stored at y * |Z_k| + z.
inline FinSimpSet product_model(const FinSimpSet& Y, const FinSimpSet& Z) {
  require(Y.cutoff == Z.cutoff, ErrorKind::Structural, "cutoff mismatch");
  detail::check_shape(Y);
  detail::check_shape(Z);
  const std::size_t L = Y.cutoff;
  FinSimpSet P;
  P.cutoff = L;
  P.face.resize(L + 1);
  P.degen.resize(L + 1);
  auto label = [](const FinSimpSet& S, std::size_t k, std::size_t e) {
    return k < S.labels.size() && e < S.labels[k].size() ? S.labels[k][e] : std::to_string(e);
  };
  for (std::size_t k = 0; k <= L; ++k) {
    const std::size_t nz = Z.sizes[k];
    P.sizes.push_back(Y.sizes[k] * nz);
    P.basepoint.push_back(Y.basepoint[k] * nz + Z.basepoint[k]);
    std::vector<std::string> lab;
    for (std::size_t y = 0; y < Y.sizes[k]; ++y)
      for (std::size_t z = 0; z < nz; ++z) lab.push_back("(" + label(Y, k, y) + "," + label(Z, k, z) + ")");
    P.labels.push_back(lab);
  }
  auto pair_table = [&](const detail::Table& a, const detail::Table& b, std::size_t nz_src, std::size_t nz_dst) {
    detail::Table t(a.size() * nz_src);
    for (std::size_t y = 0; y < a.size(); ++y)
      for (std::size_t z = 0; z < nz_src; ++z) t[y * nz_src + z] = a[y] * nz_dst + b[z];
    return t;
  };
  for (std::size_t k = 1; k <= L; ++k)
    for (std::size_t i = 0; i <= k; ++i)
      P.face[k].push_back(pair_table(Y.face[k][i], Z.face[k][i], Z.sizes[k], Z.sizes[k - 1]));
  for (std::size_t k = 0; k < L; ++k)
    for (std::size_t j = 0; j <= k; ++j)
      P.degen[k].push_back(pair_table(Y.degen[k][j], Z.degen[k][j], Z.sizes[k], Z.sizes[k + 1]));
  return P;
}

/// The constant simplicial point.
inline FinSimpSet point_model(std::size_t L) {
  FinSimpSet Y;
  Y.cutoff = L;
  Y.face.resize(L + 1);
  Y.degen.resize(L + 1);
  for (std::size_t k = 0; k <= L; ++k) {
    Y.sizes.push_back(1);
    Y.basepoint.push_back(0);
    Y.labels.push_back({"*"});
    if (k > 0) Y.face[k].assign(k + 1, {0});
    if (k < L) Y.degen[k].assign(k + 1, {0});
  }
  return Y;
}

/// Chain in CH^{Y}(A, A): words of length |Y_k| (slot 0 = basepoint) at
/// simplicial degree k. Total degree sum |a_i| - k.
struct HHYChain {
  using Key = std::pair<std::size_t, HochChain::Word>;
  std::map<Key, Rational> terms;

  void add(std::size_t k, const HochChain::Word& w, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms.emplace(Key{k, w}, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms.erase(it);
    }
  }
  bool is_zero() const { return terms.empty(); }
  HHYChain& operator+=(const HHYChain& o) {
    for (const auto& [key, c] : o.terms) add(key.first, key.second, c);
    return *this;
  }
  friend HHYChain operator+(HHYChain a, const HHYChain& b) { return a += b; }
  friend HHYChain operator-(HHYChain a, const HHYChain& b) {
    for (const auto& [key, c] : b.terms) a.add(key.first, key.second, -c);
    return a;
  }
  friend HHYChain operator*(const Rational& s, const HHYChain& a) {
    HHYChain out;
    for (const auto& [key, c] : a.terms) out.add(key.first, key.second, s * c);
    return out;
  }
  friend bool operator==(const HHYChain& a, const HHYChain& b) { return a.terms == b.terms; }
};

inline int hhy_degree(const FinDGA& A, std::size_t k, const HochChain::Word& w) {
  int deg = -static_cast<int>(k);
  for (auto x : w) deg += A.degrees[x];
  return deg;
}

/// f_* on a single word. f maps source slots to target slots (slot 0 to 0);
/// b_j is the product of the a_i with f(i) = j in increasing i, the sign is
/// the Koszul sign of sorting the letters by target slot. Empty preimage gives 1.
inline HochChain induced_map(const std::vector<std::size_t>& f, std::size_t target_size, const HochChain::Word& w,
                             const FinDGA& A) {
  require(f.size() == w.size(), ErrorKind::Structural, "map and word have different lengths");
  require(!f.empty() && f[0] == 0, ErrorKind::Structural, "map does not preserve the basepoint");
  for (auto x : f) require(x < target_size, ErrorKind::Structural, "map value out of range");
  for (auto x : w) require(x < A.dim(), ErrorKind::Structural, "word index out of range");
  int sign_exp = 0;
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      if (f[i] > f[j]) sign_exp += A.degrees[w[i]] * A.degrees[w[j]];
  std::vector<QVector> b(target_size, unit_vector(A.dim(), A.unit));
  for (std::size_t i = 0; i < w.size(); ++i) b[f[i]] = A.multiply(b[f[i]], unit_vector(A.dim(), w[i]));
  // expand the tensor product of the b_j
  std::vector<std::pair<HochChain::Word, Rational>> layer{{{}, Rational(detail::koszul(sign_exp))}};
  for (const QVector& v : b) {
    std::vector<std::pair<HochChain::Word, Rational>> next;
    for (const auto& [u, c] : layer)
      for (std::size_t k = 0; k < v.size(); ++k)
        if (sgn(v[k]) != 0) {
          HochChain::Word x = u;
          x.push_back(k);
          next.emplace_back(std::move(x), c * v[k]);
        }
    layer = std::move(next);
  }
  HochChain out;
  for (const auto& [u, c] : layer) out.add(u, c);
  return out;
}

/// Face map d_i : Y_k -> Y_{k-1} in slot coordinates.
inline std::vector<std::size_t> face_slots(const FinSimpSet& Y, std::size_t k, std::size_t i) {
  std::vector<std::size_t> f(Y.sizes[k]);
  for (std::size_t s = 0; s < f.size(); ++s) f[s] = Y.slot(k - 1, Y.face[k][i][Y.element(k, s)]);
  return f;
}

/// D = sum_i (-1)^i (d_i)_* - (-1)^k delta on simplicial degree k, with delta the
/// tensor-product differential (unshifted Koszul signs). Each (d_i)_* is an
/// algebra map commuting with delta, so the alternating twist makes D^2 = 0.
inline HHYChain higher_D(const HHYChain& c, const FinSimpSet& Y, const FinDGA& A) {
  require(A.commutative, ErrorKind::Unsupported, "higher Hochschild complex needs a commutative DGA");
  detail::check_shape(Y);
  HHYChain out;
  for (const auto& [key, coef] : c.terms) {
    const auto& [k, w] = key;
    require(k <= Y.cutoff, ErrorKind::Structural, "chain above the cutoff");
    require(w.size() == Y.sizes[k], ErrorKind::Structural, "word length does not match the level");
    for (auto x : w) require(x < A.dim(), ErrorKind::Structural, "word index out of range");
    const Rational tw = -detail::koszul(static_cast<int>(k)) * coef;
    int eps = 0;
    for (std::size_t p = 0; p < w.size(); ++p) {
      const QVector da = A.d.column(w[p]);
      HochChain::Word v = w;
      for (std::size_t q = 0; q < da.size(); ++q)
        if (sgn(da[q]) != 0) {
          v[p] = q;
          out.add(k, v, detail::koszul(eps) * tw * da[q]);
        }
      eps += A.degrees[w[p]];
    }
    if (k == 0) continue;
    for (std::size_t i = 0; i <= k; ++i) {
      const HochChain img = induced_map(face_slots(Y, k, i), Y.sizes[k - 1], w, A);
      const Rational s = detail::koszul(static_cast<int>(i)) * coef;
      for (const auto& [u, cu] : img.terms) out.add(k - 1, u, s * cu);
    }
  }
  return out;
}

/// Identification of a0[a1|..|ak] with a0 (x) a1 (x) .. (x) ak on the circle:
/// sign (-1)^{sum_i (k - i) |a_i|}. This is the diagonal sign that turns
/// higher_D on circle_model into hochschild_d exactly.
inline Rational circle_sign(const FinDGA& A, const HochChain::Word& w) {
  const std::size_t k = w.size() - 1;
  long e = 0;
  for (std::size_t i = 0; i <= k; ++i) e += static_cast<long>(k - i) * A.degrees[w[i]];
  return e % 2 ? -1 : 1;
}

inline HHYChain to_circle(const HochChain& c, const FinDGA& A) {
  HHYChain out;
  for (const auto& [w, coef] : c.terms) out.add(w.size() - 1, w, circle_sign(A, w) * coef);
  return out;
}

inline HochChain from_circle(const HHYChain& c, const FinDGA& A) {
  HochChain out;
  for (const auto& [key, coef] : c.terms) {
    require(key.second.size() == key.first + 1, ErrorKind::Structural, "not a circle-model chain");
    out.add(key.second, circle_sign(A, key.second) * coef);
  }
  return out;
}

/// Chains of CH(CH(A, A), CH(A, A)): outer words whose letters are inner words.
struct BiChain {
  using Word = std::vector<HochChain::Word>;
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
  friend BiChain operator+(BiChain a, const BiChain& b) {
    for (const auto& [w, c] : b.terms) a.add(w, c);
    return a;
  }
  friend bool operator==(const BiChain& a, const BiChain& b) { return a.terms == b.terms; }
};

/// |c0| + sum (|c_i| - 1) with inner shifted degrees; equals sum |a| - (n + k)
/// for outer length n and total inner length k.
inline int bi_degree(const FinDGA& A, const BiChain::Word& w) {
  int deg = word_degree(A, w[0]);
  for (std::size_t i = 1; i < w.size(); ++i) deg += word_degree(A, w[i]) - 1;
  return deg;
}

/// Outer Hochschild differential over the CDGA (CH(A, A), hochschild_d, shuffle),
/// same sign conventions as hochschild_d.
inline BiChain hochschild_of_hochschild_D(const BiChain& c, const FinDGA& A) {
  require(A.commutative, ErrorKind::Unsupported, "CH of CH needs a commutative DGA");
  for (const auto& [w, coef] : c.terms) {
    require(!w.empty(), ErrorKind::Structural, "empty outer word");
    for (const auto& u : w) {
      require(!u.empty(), ErrorKind::Structural, "empty inner word");
      for (auto x : u) require(x < A.dim(), ErrorKind::Structural, "word index out of range");
    }
  }
  auto single = [](const HochChain::Word& u) {
    HochChain h;
    h.add(u, 1);
    return h;
  };
  auto put = [](BiChain& out, BiChain::Word w, std::size_t pos, const HochChain& h, const Rational& c) {
    for (const auto& [u, cu] : h.terms) {
      w[pos] = u;
      out.add(w, c * cu);
    }
  };
  BiChain out;
  for (const auto& [w, coef] : c.terms) {
    const std::size_t n = w.size() - 1;
    std::vector<int> deg(n + 1), eps(n + 1);
    for (std::size_t i = 0; i <= n; ++i) deg[i] = word_degree(A, w[i]);
    eps[0] = deg[0];
    for (std::size_t i = 1; i <= n; ++i) eps[i] = eps[i - 1] + deg[i] - 1;
    // - d_int
    put(out, w, 0, hochschild_d(single(w[0]), A), -coef);
    for (std::size_t i = 1; i <= n; ++i)
      put(out, w, i, hochschild_d(single(w[i]), A), detail::koszul(eps[i - 1]) * coef);
    if (n == 0) continue;
    // b
    for (std::size_t i = 0; i < n; ++i) {
      BiChain::Word v(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i + 1));
      v.insert(v.end(), w.begin() + static_cast<std::ptrdiff_t>(i + 2), w.end());
      const int s = i == 0 ? detail::koszul(deg[0]) : detail::koszul(eps[i]);
      put(out, v, i, shuffle(single(w[i]), single(w[i + 1]), A), s * coef);
    }
    BiChain::Word v(w.begin(), w.end() - 1);
    put(out, v, 0, shuffle(single(w[n]), single(w[0]), A), -detail::koszul((deg[n] - 1) * eps[n - 1]) * coef);
  }
  return out;
}

/// {1, x, y}, |x| = 1, |y| = 2, dx = lambda y, all products of x, y zero.
inline FinDGA small_cdga(const Rational& lambda) {
  FinDGA A(std::vector<int>{0, 1, 2});
  A.names = {"1", "x", "y"};
  for (std::size_t i = 0; i < 3; ++i) {
    A.set_product(0, i, unit_vector(3, i));
    A.set_product(i, 0, unit_vector(3, i));
  }
  A.d(2, 1) = lambda;
  A.commutative = true;
  return A;
}

}  // namespace holonomy2
