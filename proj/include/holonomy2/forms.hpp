#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <ostream>
#include <string>
#include <tuple>
#include <vector>

#include "holonomy2/linf.hpp"

namespace holonomy2 {

/// Which graded piece of a 2-term L-infinity algebra a form takes values in.
enum class Component { L0, Lm1 };

inline int value_degree(Component c) { return c == Component::L0 ? 0 : -1; }

/// sum c * x^exps dx_{mask} (x) e_value with rational c.
/// mask bit i set means dx_i is present; factors are in increasing order.
class PolyForm {
 public:
  struct Key {
    std::vector<int> exps;
    unsigned mask = 0;
    std::size_t value = 0;
    friend bool operator<(const Key& a, const Key& b) {
      return std::tie(a.mask, a.value, a.exps) < std::tie(b.mask, b.value, b.exps);
    }
    friend bool operator==(const Key& a, const Key& b) {
      return a.mask == b.mask && a.value == b.value && a.exps == b.exps;
    }
  };

  PolyForm() = default;
  PolyForm(std::size_t chart_dim, Component comp, std::size_t value_dim)
      : n_(chart_dim), comp_(comp), vdim_(value_dim) {
    require(chart_dim <= 16, ErrorKind::Structural, "chart dimension above 16 is not supported");
  }

  std::size_t chart_dim() const { return n_; }
  Component component() const { return comp_; }
  std::size_t value_dim() const { return vdim_; }
  const std::map<Key, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  /// Adds c * x^exps dx_{idx...} (x) e_value; idx may be in any order.
  void add(Rational c, std::vector<int> exps, std::vector<std::size_t> idx, std::size_t value) {
    require(exps.size() == n_, ErrorKind::Structural, "monomial exponent count differs from chart dimension");
    require(value < vdim_, ErrorKind::Structural, "value index out of range");
    for (int e : exps) require(e >= 0, ErrorKind::Structural, "negative exponent");
    for (auto i : idx) require(i < n_, ErrorKind::Structural, "form index out of range");
    const int s = sort_sign(idx);
    if (s == 0) return;
    unsigned mask = 0;
    for (auto i : idx) mask |= 1u << i;
    add_key({std::move(exps), mask, value}, s * c);
  }

  void add_key(const Key& k, const Rational& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  /// Form degrees present (empty form: none).
  std::vector<int> degrees() const {
    std::vector<int> out;
    for (const auto& [k, c] : terms_) {
      const int d = std::popcount(k.mask);
      if (std::find(out.begin(), out.end(), d) == out.end()) out.push_back(d);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  PolyForm& operator+=(const PolyForm& o) {
    check_compatible(o);
    for (const auto& [k, c] : o.terms_) add_key(k, c);
    return *this;
  }
  PolyForm& operator*=(const Rational& s) {
    if (sgn(s) == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [k, c] : terms_) c *= s;
    return *this;
  }
  friend PolyForm operator+(PolyForm a, const PolyForm& b) { return a += b; }
  friend PolyForm operator-(PolyForm a, PolyForm b) { return a += (b *= Rational(-1)); }
  friend PolyForm operator*(const Rational& s, PolyForm a) { return a *= s; }
  friend bool operator==(const PolyForm& a, const PolyForm& b) {
    return a.n_ == b.n_ && a.comp_ == b.comp_ && a.vdim_ == b.vdim_ && a.terms_ == b.terms_;
  }

  void check_compatible(const PolyForm& o) const {
    require(n_ == o.n_ && comp_ == o.comp_ && vdim_ == o.vdim_, ErrorKind::Structural,
            "forms live on different charts or value spaces");
  }

  /// Point evaluation on tangent vectors (as many as the form degree of each
  /// term; terms of other degrees are skipped). Returns the value vector.
  std::vector<double> evaluate(const std::vector<double>& x, const std::vector<std::vector<double>>& tangents) const {
    std::vector<double> out(vdim_, 0.0);
    const int p = static_cast<int>(tangents.size());
    for (const auto& [k, c] : terms_) {
      if (std::popcount(k.mask) != p) continue;
      double mono = c.get_d();
      for (std::size_t i = 0; i < n_; ++i)
        if (k.exps[i]) mono *= std::pow(x[i], k.exps[i]);
      std::vector<std::size_t> idx;
      for (std::size_t i = 0; i < n_; ++i)
        if (k.mask & (1u << i)) idx.push_back(i);
      out[k.value] += mono * alt_det(idx, tangents);
    }
    return out;
  }

 private:
  // determinant of the p x p matrix (tangents[r][idx[c]])
  static double alt_det(const std::vector<std::size_t>& idx, const std::vector<std::vector<double>>& t) {
    const std::size_t p = idx.size();
    if (p == 0) return 1.0;
    if (p == 1) return t[0][idx[0]];
    if (p == 2) return t[0][idx[0]] * t[1][idx[1]] - t[0][idx[1]] * t[1][idx[0]];
    double det = 0.0;
    for (std::size_t c = 0; c < p; ++c) {
      std::vector<std::size_t> rest;
      for (std::size_t j = 0; j < p; ++j)
        if (j != c) rest.push_back(idx[j]);
      std::vector<std::vector<double>> sub(t.begin() + 1, t.end());
      det += ((c % 2) ? -1.0 : 1.0) * t[0][idx[c]] * alt_det(rest, sub);
    }
    return det;
  }

  std::size_t n_ = 0;
  Component comp_ = Component::L0;
  std::size_t vdim_ = 0;
  std::map<Key, Rational> terms_;
};

/// Exterior derivative, coefficient-wise.
inline PolyForm d(const PolyForm& w) {
  PolyForm out(w.chart_dim(), w.component(), w.value_dim());
  for (const auto& [k, c] : w.terms())
    for (std::size_t j = 0; j < w.chart_dim(); ++j) {
      if (k.exps[j] == 0 || (k.mask & (1u << j))) continue;
      PolyForm::Key nk = k;
      nk.exps[j] -= 1;
      nk.mask |= 1u << j;
      out.add_key(nk, wedge_sign(1u << j, k.mask) * c * k.exps[j]);
    }
  return out;
}

/// Pointwise l2 combined with the wedge product:
///   (a (x) x) . (b (x) y) = (-1)^{|x||b|} a^b (x) l2(x,y).
/// L0 x L0 -> L0, L0 x L_{-1} and L_{-1} x L0 -> L_{-1}; L_{-1} x L_{-1} has
/// no target in a 2-term algebra and is rejected.
inline PolyForm wedge_l2(const PolyForm& a, const PolyForm& b, const TwoTermLinf& T) {
  require(a.chart_dim() == b.chart_dim(), ErrorKind::Structural, "forms live on different charts");
  const bool a0 = a.component() == Component::L0, b0 = b.component() == Component::L0;
  require(a.value_dim() == (a0 ? T.n0 : T.n1) && b.value_dim() == (b0 ? T.n0 : T.n1), ErrorKind::Structural,
          "form values do not match the L-infinity algebra");
  require(a0 || b0, ErrorKind::Unsupported, "bracket of two degree -1 values has no target");
  const Component tc = (a0 && b0) ? Component::L0 : Component::Lm1;
  PolyForm out(a.chart_dim(), tc, tc == Component::L0 ? T.n0 : T.n1);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      const int s = wedge_sign(ka.mask, kb.mask);
      if (s == 0) continue;
      const int koszul = (!a0 && (std::popcount(kb.mask) % 2)) ? -1 : 1;
      PolyForm::Key nk;
      nk.exps.resize(a.chart_dim());
      for (std::size_t i = 0; i < a.chart_dim(); ++i) nk.exps[i] = ka.exps[i] + kb.exps[i];
      nk.mask = ka.mask | kb.mask;
      const Rational c = s * koszul * ca * cb;
      QVector val;
      if (a0 && b0) {
        val = T.bracket(unit_vector(T.n0, ka.value), unit_vector(T.n0, kb.value));
      } else if (a0) {
        val = T.act(unit_vector(T.n0, ka.value), unit_vector(T.n1, kb.value));
      } else {
        val = T.act(unit_vector(T.n0, kb.value), unit_vector(T.n1, ka.value));
        for (auto& q : val) q = -q;
      }
      for (std::size_t v = 0; v < val.size(); ++v)
        if (sgn(val[v]) != 0) {
          nk.value = v;
          out.add_key(nk, c * val[v]);
        }
    }
  return out;
}

/// Applies l1 to an L_{-1}-valued form.
inline PolyForm apply_l1(const PolyForm& b, const TwoTermLinf& T) {
  require(b.component() == Component::Lm1 && b.value_dim() == T.n1, ErrorKind::Structural,
          "l1 needs an L_{-1}-valued form");
  PolyForm out(b.chart_dim(), Component::L0, T.n0);
  for (const auto& [k, c] : b.terms())
    for (std::size_t v = 0; v < T.n0; ++v)
      if (sgn(T.l1(v, k.value)) != 0) {
        PolyForm::Key nk = k;
        nk.value = v;
        out.add_key(nk, c * T.l1(v, k.value));
      }
  return out;
}

/// l3(a, b, c) for L0-valued forms (values of degree 0, so no Koszul sign).
inline PolyForm apply_l3(const PolyForm& a, const PolyForm& b, const PolyForm& c, const TwoTermLinf& T) {
  for (const PolyForm* f : {&a, &b, &c})
    require(f->component() == Component::L0 && f->value_dim() == T.n0, ErrorKind::Structural,
            "l3 needs L0-valued forms");
  PolyForm out(a.chart_dim(), Component::Lm1, T.n1);
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms()) {
      const int s1 = wedge_sign(ka.mask, kb.mask);
      if (s1 == 0) continue;
      for (const auto& [kc, cc] : c.terms()) {
        const int s2 = wedge_sign(ka.mask | kb.mask, kc.mask);
        if (s2 == 0) continue;
        PolyForm::Key nk;
        nk.exps.resize(a.chart_dim());
        for (std::size_t i = 0; i < a.chart_dim(); ++i) nk.exps[i] = ka.exps[i] + kb.exps[i] + kc.exps[i];
        nk.mask = ka.mask | kb.mask | kc.mask;
        for (std::size_t v = 0; v < T.n1; ++v) {
          const Rational& t = T.t(ka.value, kb.value, kc.value, v);
          if (sgn(t) == 0) continue;
          nk.value = v;
          out.add_key(nk, s1 * s2 * ca * cb * cc * t);
        }
      }
    }
  return out;
}

/// How the l3 term of the 3-curvature is weighted.
enum class L3Normalization {
  Literal,    // l3(A,A,A) exactly as displayed in the MC equation
  Factorial,  // (1/3!) l3(A,A,A), the series normalization
};

/// A degree-one element: A an L0-valued 1-form, B an L_{-1}-valued 2-form.
struct MCPair {
  TwoTermLinf T;
  PolyForm A, B;
  L3Normalization l3_norm = L3Normalization::Literal;
};

inline void check_pair(const MCPair& p) {
  check_shape(p.T);
  require(p.A.component() == Component::L0 && p.A.value_dim() == p.T.n0, ErrorKind::Structural,
          "A must be L0-valued");
  require(p.B.component() == Component::Lm1 && p.B.value_dim() == p.T.n1, ErrorKind::Structural,
          "B must be L_{-1}-valued");
  require(p.A.chart_dim() == p.B.chart_dim(), ErrorKind::Structural, "A and B live on different charts");
  for (int deg : p.A.degrees()) require(deg == 1, ErrorKind::Degree, "A must be a 1-form");
  for (int deg : p.B.degrees()) require(deg == 2, ErrorKind::Degree, "B must be a 2-form");
}

/// dA + 1/2 [A,A] + l1 B.
inline PolyForm fake_curvature(const MCPair& p) {
  check_pair(p);
  return d(p.A) + Rational(1, 2) * wedge_l2(p.A, p.A, p.T) + apply_l1(p.B, p.T);
}

/// dB + [A,B] + l3(A,A,A) (or with 1/3! under Factorial).
inline PolyForm three_curvature(const MCPair& p) {
  check_pair(p);
  const Rational w = p.l3_norm == L3Normalization::Literal ? Rational(1) : Rational(1, 6);
  return d(p.B) + wedge_l2(p.A, p.B, p.T) + w * apply_l3(p.A, p.A, p.A, p.T);
}

struct MCResult {
  bool ok = false;
  PolyForm fake, three;
};

inline MCResult is_maurer_cartan(const MCPair& p) {
  MCResult r{false, fake_curvature(p), three_curvature(p)};
  r.ok = r.fake.is_zero() && r.three.is_zero();
  return r;
}

/// Relabels chart coordinates: new coordinate perm[i] is old coordinate i.
inline PolyForm permute_coordinates(const PolyForm& w, const std::vector<std::size_t>& perm) {
  require(perm.size() == w.chart_dim(), ErrorKind::Structural, "permutation size differs from chart dimension");
  PolyForm out(w.chart_dim(), w.component(), w.value_dim());
  for (const auto& [k, c] : w.terms()) {
    std::vector<int> e(w.chart_dim(), 0);
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < w.chart_dim(); ++i) {
      e[perm[i]] = k.exps[i];
      if (k.mask & (1u << i)) idx.push_back(perm[i]);
    }
    out.add(c, e, idx, k.value);
  }
  return out;
}

/// TwoTermLinf with L_{-1} = 0 carrying a Lie algebra, for Lie-valued forms.
inline TwoTermLinf linf_from_lie(const LieAlgebra& L) {
  TwoTermLinf T(L.dim, 0);
  T.l2_00 = L.c;
  return T;
}

inline std::string to_string(const PolyForm& w) {
  if (w.is_zero()) return "0";
  std::string s;
  for (const auto& [k, c] : w.terms()) {
    if (!s.empty()) s += " + ";
    s += "(" + to_string(c) + ")";
    for (std::size_t i = 0; i < k.exps.size(); ++i)
      if (k.exps[i]) s += "*x" + std::to_string(i) + (k.exps[i] > 1 ? "^" + std::to_string(k.exps[i]) : "");
    std::string dx;
    for (std::size_t i = 0; i < k.exps.size(); ++i)
      if (k.mask & (1u << i)) dx += (dx.empty() ? "dx" : "^dx") + std::to_string(i);
    if (!dx.empty()) s += " " + dx;
    s += " e" + std::to_string(k.value);
  }
  return s;
}

inline std::ostream& operator<<(std::ostream& os, const PolyForm& w) { return os << to_string(w); }

}  // namespace holonomy2
