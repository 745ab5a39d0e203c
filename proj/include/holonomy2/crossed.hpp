#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "holonomy2/lie.hpp"

namespace holonomy2 {

/// mu : h -> g with g acting on h by derivations.
struct CrossedModule {
  LieAlgebra h, g;
  QMatrix mu;                   // dim g x dim h
  std::vector<QMatrix> action;  // one dim h x dim h matrix per basis vector of g

  QMatrix rho(const QVector& x) const {
    QMatrix m(h.dim, h.dim);
    for (std::size_t i = 0; i < g.dim; ++i)
      if (sgn(x[i]) != 0) m = m + x[i] * action[i];
    return m;
  }
  LieModule as_module() const { return LieModule{h.dim, action}; }
};

inline void check_shape(const CrossedModule& X) {
  check_shape(X.h);
  check_shape(X.g);
  require(X.mu.rows() == X.g.dim && X.mu.cols() == X.h.dim, ErrorKind::Structural, "mu must be dim g x dim h");
  check_shape(X.g, X.as_module());
}

/// Lie axioms of h and g, the representation property, derivation property,
/// equivariance (a) and Peiffer (b). Empty iff X is a crossed module.
inline Report validate_crossed_module(const CrossedModule& X) {
  check_shape(X);
  Report r;
  r.merge(validate_lie_algebra(X.h), "h ");
  r.merge(validate_lie_algebra(X.g), "g ");
  r.merge(validate_module(X.g, X.as_module()));
  const std::size_t nh = X.h.dim, ng = X.g.dim;
  for (std::size_t x = 0; x < ng; ++x) {
    const QMatrix& A = X.action[x];
    for (std::size_t i = 0; i < nh; ++i)
      for (std::size_t j = i + 1; j < nh; ++j) {
        QVector lhs = A.apply(X.h.bracket_basis(i, j));
        QVector rhs = X.h.bracket(A.column(i), unit_vector(nh, j)) + X.h.bracket(unit_vector(nh, i), A.column(j));
        r.add_if_nonzero("derivation", {x, i, j}, lhs - rhs);
      }
    for (std::size_t i = 0; i < nh; ++i) {
      QVector lhs = X.mu.apply(A.column(i));
      QVector rhs = X.g.bracket(unit_vector(ng, x), X.mu.column(i));
      r.add_if_nonzero("equivariance (a)", {x, i}, lhs - rhs);
    }
  }
  for (std::size_t i = 0; i < nh; ++i) {
    const QMatrix R = X.rho(X.mu.column(i));
    for (std::size_t j = 0; j < nh; ++j)
      r.add_if_nonzero("peiffer (b)", {i, j}, R.column(j) - X.h.bracket_basis(i, j));
  }
  return r;
}

/// Re-expresses X in new bases: columns of P for h, columns of Pg for g.
inline CrossedModule change_basis(const CrossedModule& X, const QMatrix& P, const QMatrix& Pg) {
  const auto Pinv = inverse(P);
  const auto Pginv = inverse(Pg);
  require(Pinv && Pginv, ErrorKind::Basis, "basis change is not invertible");
  CrossedModule Y;
  Y.h = change_basis(X.h, P);
  Y.g = change_basis(X.g, Pg);
  Y.h.basis = X.h.basis;
  Y.g.basis = X.g.basis;
  Y.mu = *Pginv * X.mu * P;
  for (std::size_t i = 0; i < X.g.dim; ++i) Y.action.push_back(*Pinv * X.rho(Pg.column(i)) * P);
  return Y;
}

// ---------------------------------------------------------------------------
// Strict Lie 2-algebras.

struct StrictLie2 {
  LieAlgebra arrows;   // g_{-1}
  LieAlgebra objects;  // g_0
  QMatrix s, t;        // dim objects x dim arrows
  QMatrix i;           // dim arrows x dim objects
};

/// Arrows h x| g (h coordinates first) with
///   [(h,x),(h',x')] = (mu(h).h' + x.h' - x'.h, [x,x']),
/// which uses only mu and the action; s(h,x) = x, t(h,x) = mu(h) + x, i(x) = (0,x).
inline StrictLie2 to_strict_lie2(const CrossedModule& X) {
  const Report rep = validate_crossed_module(X);
  require(rep.ok(), ErrorKind::Validation, "input is not a crossed module");
  const std::size_t nh = X.h.dim, ng = X.g.dim, n = nh + ng;
  StrictLie2 S;
  std::vector<std::string> names;
  for (const auto& b : X.h.basis) names.push_back(b);
  for (const auto& b : X.g.basis) names.push_back(b);
  S.arrows = LieAlgebra(n, names);
  S.objects = X.g;
  auto split = [&](const QVector& v, QVector& hv, QVector& gv) {
    hv.assign(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(nh));
    gv.assign(v.begin() + static_cast<std::ptrdiff_t>(nh), v.end());
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      QVector h1, g1, h2, g2;
      split(unit_vector(n, a), h1, g1);
      split(unit_vector(n, b), h2, g2);
      QVector hv = X.rho(X.mu.apply(h1)).apply(h2) + X.rho(g1).apply(h2) - X.rho(g2).apply(h1);
      QVector gv = X.g.bracket(g1, g2);
      for (std::size_t k = 0; k < nh; ++k) S.arrows.at(a, b, k) = hv[k];
      for (std::size_t k = 0; k < ng; ++k) S.arrows.at(a, b, nh + k) = gv[k];
    }
  S.s = QMatrix(ng, n);
  S.t = QMatrix(ng, n);
  S.i = QMatrix(n, ng);
  for (std::size_t k = 0; k < ng; ++k) {
    S.s(k, nh + k) = 1;
    S.t(k, nh + k) = 1;
    S.i(nh + k, k) = 1;
    for (std::size_t j = 0; j < nh; ++j) S.t(k, j) = X.mu(k, j);
  }
  return S;
}

inline Report validate_strict_lie2(const StrictLie2& S) {
  check_shape(S.arrows);
  check_shape(S.objects);
  const std::size_t n = S.arrows.dim, m = S.objects.dim;
  require(S.s.rows() == m && S.s.cols() == n && S.t.rows() == m && S.t.cols() == n && S.i.rows() == n &&
              S.i.cols() == m,
          ErrorKind::Structural, "structure maps have wrong shape");
  Report r;
  r.merge(validate_lie_algebra(S.arrows), "arrows ");
  r.merge(validate_lie_algebra(S.objects), "objects ");
  r.merge(check_lie_morphism(S.arrows, S.objects, S.s, "s morphism"));
  r.merge(check_lie_morphism(S.arrows, S.objects, S.t, "t morphism"));
  r.merge(check_lie_morphism(S.objects, S.arrows, S.i, "i morphism"));
  const QMatrix id = QMatrix::identity(m);
  for (const auto& [name, M] : {std::pair<std::string, QMatrix>{"s after i", S.s * S.i}, {"t after i", S.t * S.i}}) {
    const QMatrix D = M - id;
    if (auto at = first_nonzero(D)) r.add(name, {at->first, at->second}, D(at->first, at->second));
  }
  const QMatrix ks = nullspace(S.s), kt = nullspace(S.t);
  for (std::size_t a = 0; a < ks.cols(); ++a)
    for (std::size_t b = 0; b < kt.cols(); ++b)
      r.add_if_nonzero("kernels commute", {a, b}, S.arrows.bracket(ks.column(a), kt.column(b)));
  return r;
}

/// h := ker s in the canonical null-space basis, mu := t restricted,
/// g.h := [i(g), h].
inline CrossedModule from_strict_lie2(const StrictLie2& S) {
  const Report rep = validate_strict_lie2(S);
  require(rep.ok(), ErrorKind::Validation, "input is not a strict Lie 2-algebra");
  require(rank(S.s) == S.objects.dim, ErrorKind::Basis, "s is not surjective");
  const QMatrix K = nullspace(S.s);
  const std::size_t nh = K.cols(), ng = S.objects.dim;
  auto coords = [&](const QVector& v) {
    auto x = solve_particular(K, v);
    require(x.has_value(), ErrorKind::Consistency, "vector does not lie in ker s");
    return *x;
  };
  CrossedModule X;
  X.g = S.objects;
  X.h = LieAlgebra(nh);
  for (std::size_t a = 0; a < nh; ++a)
    for (std::size_t b = 0; b < nh; ++b) {
      QVector v = coords(S.arrows.bracket(K.column(a), K.column(b)));
      for (std::size_t k = 0; k < nh; ++k) X.h.at(a, b, k) = v[k];
    }
  X.mu = S.t * K;
  for (std::size_t x = 0; x < ng; ++x) {
    QMatrix A(nh, nh);
    for (std::size_t b = 0; b < nh; ++b) A.set_column(b, coords(S.arrows.bracket(S.i.column(x), K.column(b))));
    X.action.push_back(A);
  }
  return X;
}

inline StrictLie2 change_basis(const StrictLie2& S, const QMatrix& P) {
  const auto Pinv = inverse(P);
  require(Pinv.has_value(), ErrorKind::Basis, "basis change is not invertible");
  StrictLie2 T = S;
  T.arrows = change_basis(S.arrows, P);
  T.s = S.s * P;
  T.t = S.t * P;
  T.i = *Pinv * S.i;
  return T;
}

// ---------------------------------------------------------------------------
// Kernel, cokernel, outer action.

/// Canonical basis of ker mu (columns).
inline QMatrix kernel_basis(const CrossedModule& X) { return nullspace(X.mu); }

/// Cokernel g/im(mu) with coset representatives the basis vectors e_k that
/// are pivots of [mu | I]; `section` has those e_k as columns and `proj`
/// sends g onto coordinates in that basis.
struct Cokernel {
  LieAlgebra gbar;
  QMatrix section;  // dim g x dim gbar
  QMatrix proj;     // dim gbar x dim g
};

inline Cokernel cokernel(const CrossedModule& X) {
  const std::size_t nh = X.h.dim, ng = X.g.dim;
  const Echelon e = rref(hconcat(X.mu, QMatrix::identity(ng)));
  std::vector<std::size_t> reps;
  for (auto p : e.pivots)
    if (p >= nh) reps.push_back(p - nh);
  Cokernel c;
  const std::size_t nb = reps.size();
  c.section = QMatrix(ng, nb);
  std::vector<std::string> names;
  for (std::size_t r = 0; r < nb; ++r) {
    c.section(reps[r], r) = 1;
    names.push_back(X.g.basis.size() == ng ? X.g.basis[reps[r]] + "~" : "e" + std::to_string(r));
  }
  const QMatrix M = hconcat(X.mu, c.section);
  c.proj = QMatrix(nb, ng);
  for (std::size_t j = 0; j < ng; ++j) {
    auto x = solve_particular(M, unit_vector(ng, j));
    require(x.has_value(), ErrorKind::Consistency, "cokernel representatives do not span");
    for (std::size_t r = 0; r < nb; ++r) c.proj(r, j) = (*x)[nh + r];
  }
  c.gbar = LieAlgebra(nb, names);
  for (std::size_t a = 0; a < nb; ++a)
    for (std::size_t b = 0; b < nb; ++b) {
      QVector v = c.proj.apply(X.g.bracket(c.section.column(a), c.section.column(b)));
      for (std::size_t k = 0; k < nb; ++k) c.gbar.at(a, b, k) = v[k];
    }
  return c;
}

struct OuterAction {
  LieAlgebra gbar;
  QMatrix section;
  std::vector<QMatrix> s;  // s(x) = sigma(x) . (-), one per basis vector of gbar
  bool genuine = false;    // representation property holds exactly
};

inline QMatrix checked_section(const Cokernel& c, const std::optional<QMatrix>& section) {
  if (!section) return c.section;
  require(section->rows() == c.section.rows() && section->cols() == c.section.cols(), ErrorKind::Structural,
          "section has wrong shape");
  require(c.proj * *section == QMatrix::identity(c.gbar.dim), ErrorKind::Section, "supplied map is not a section");
  return *section;
}

inline OuterAction outer_action(const CrossedModule& X, const std::optional<QMatrix>& section = std::nullopt) {
  require(validate_crossed_module(X).ok(), ErrorKind::Validation, "input is not a crossed module");
  const Cokernel c = cokernel(X);
  OuterAction o;
  o.gbar = c.gbar;
  o.section = checked_section(c, section);
  for (std::size_t x = 0; x < c.gbar.dim; ++x) o.s.push_back(X.rho(o.section.column(x)));
  o.genuine = validate_module(o.gbar, LieModule{X.h.dim, o.s}).ok();
  return o;
}

// ---------------------------------------------------------------------------
// Skeletal model and classifying triplet.

struct Triplet {
  LieAlgebra gbar;
  LieModule V;
  QVector gamma;  // 3-cochain of gbar with values in V
};

struct SkeletalModel {
  Triplet triplet;
  QVector phi2;          // 2-cochain of gbar with values in h
  QVector gamma_h;       // gamma with values written in h coordinates
  QMatrix section;       // gbar -> g
  QMatrix kernel_basis;  // V -> h
};

/// mu phi2(x,y) = [sigma x, sigma y] - sigma[x,y] (the default of sigma),
/// gamma = d_CE phi2 with the formal action x -> sigma(x).(-) on h.
inline SkeletalModel skeletal_model(const CrossedModule& X, const std::optional<QMatrix>& section = std::nullopt) {
  const OuterAction o = outer_action(X, section);
  const LieAlgebra& gb = o.gbar;
  const std::size_t nb = gb.dim, nh = X.h.dim;
  SkeletalModel sk;
  sk.section = o.section;
  sk.kernel_basis = kernel_basis(X);
  const Subsets pairs(nb, 2);
  sk.phi2 = zeros(pairs.size() * nh);
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const std::size_t a = pairs[r][0], b = pairs[r][1];
    QVector def = X.g.bracket(o.section.column(a), o.section.column(b)) - o.section.apply(gb.bracket_basis(a, b));
    auto pre = solve_particular(X.mu, def);
    require(pre.has_value(), ErrorKind::Consistency, "default of the section is not in the image of mu");
    for (std::size_t k = 0; k < nh; ++k) sk.phi2[r * nh + k] = (*pre)[k];
  }
  sk.gamma_h = ce_differential(gb, o.s, nh, 2).apply(sk.phi2);
  const QMatrix& K = sk.kernel_basis;
  const std::size_t nv = K.cols();
  const std::size_t blocks = Subsets(nb, 3).size();
  auto vcoords = [&](const QVector& v) {
    auto x = solve_particular(K, v);
    require(x.has_value(), ErrorKind::Consistency, "value does not lie in ker mu");
    return *x;
  };
  sk.triplet.gbar = gb;
  sk.triplet.gamma = zeros(blocks * nv);
  for (std::size_t b = 0; b < blocks; ++b) {
    QVector v(sk.gamma_h.begin() + static_cast<std::ptrdiff_t>(b * nh),
              sk.gamma_h.begin() + static_cast<std::ptrdiff_t>((b + 1) * nh));
    QVector c = vcoords(v);
    for (std::size_t k = 0; k < nv; ++k) sk.triplet.gamma[b * nv + k] = c[k];
  }
  sk.triplet.V.dim = nv;
  for (std::size_t x = 0; x < nb; ++x) {
    QMatrix A(nv, nv);
    for (std::size_t j = 0; j < nv; ++j) A.set_column(j, vcoords(o.s[x].apply(K.column(j))));
    sk.triplet.V.action.push_back(A);
  }
  require(is_cocycle(gb, sk.triplet.V, 3, sk.triplet.gamma), ErrorKind::Consistency, "gamma is not closed");
  return sk;
}

inline Triplet extract_triplet(const CrossedModule& X) { return skeletal_model(X).triplet; }

// ---------------------------------------------------------------------------
// Splice of a coefficient sequence with an abelian extension.

/// mu : I -> Q x_alpha gbar, mu(v) = (pi v, 0), I abelian, action through gbar.
/// Basis of g: Q coordinates first, then gbar.
inline CrossedModule splice_crossed_module(const LieAlgebra& gbar, const ModuleSES& ses, const QVector& alpha) {
  check_ses(gbar, ses);
  require(alpha.size() == cochain_dim(gbar.dim, 2, ses.Q.dim), ErrorKind::Structural, "alpha has wrong length");
  require(is_cocycle(gbar, ses.Q, 2, alpha), ErrorKind::Cocycle, "alpha is not a 2-cocycle");
  const std::size_t nq = ses.Q.dim, nb = gbar.dim, n = nq + nb;
  CrossedModule X;
  X.h = LieAlgebra(ses.I.dim);
  std::vector<std::string> names;
  for (std::size_t a = 0; a < nq; ++a) names.push_back("q" + std::to_string(a));
  for (const auto& b : gbar.basis) names.push_back(b);
  X.g = LieAlgebra(n, names);
  for (std::size_t i = 0; i < nb; ++i) {
    for (std::size_t a = 0; a < nq; ++a) {
      QVector v = zeros(n);
      for (std::size_t k = 0; k < nq; ++k) v[k] = ses.Q.action[i](k, a);
      X.g.set_bracket(nq + i, a, v);
    }
    for (std::size_t j = i + 1; j < nb; ++j) {
      QVector v = zeros(n);
      QVector al = eval_cochain(alpha, nb, nq, {i, j});
      for (std::size_t k = 0; k < nq; ++k) v[k] = al[k];
      for (std::size_t k = 0; k < nb; ++k) v[nq + k] = gbar.at(i, j, k);
      X.g.set_bracket(i + nq, j + nq, v);
    }
  }
  X.mu = QMatrix(n, ses.I.dim);
  for (std::size_t k = 0; k < nq; ++k)
    for (std::size_t j = 0; j < ses.I.dim; ++j) X.mu(k, j) = ses.proj(k, j);
  for (std::size_t a = 0; a < nq; ++a) X.action.push_back(QMatrix(ses.I.dim, ses.I.dim));
  for (std::size_t i = 0; i < nb; ++i) X.action.push_back(ses.I.action[i]);
  return X;
}

/// Rewrites h-valued cochain blocks in the coordinates of incl : V -> h.
inline QVector values_in(const QVector& omega_h, const QMatrix& incl) {
  const std::size_t nh = incl.rows(), nv = incl.cols();
  require(nh == 0 || omega_h.size() % nh == 0, ErrorKind::Structural, "cochain/value map mismatch");
  const std::size_t blocks = nh == 0 ? 0 : omega_h.size() / nh;
  QVector out = zeros(blocks * nv);
  for (std::size_t b = 0; b < blocks; ++b) {
    QVector v(omega_h.begin() + static_cast<std::ptrdiff_t>(b * nh),
              omega_h.begin() + static_cast<std::ptrdiff_t>((b + 1) * nh));
    auto x = solve_particular(incl, v);
    require(x.has_value(), ErrorKind::Consistency, "values do not lie in the given subspace");
    for (std::size_t k = 0; k < nv; ++k) out[b * nv + k] = (*x)[k];
  }
  return out;
}

/// For h abelian: the sequence 0 -> ker mu -> h -> h/ker mu -> 0 of
/// gbar-modules (outer action) and alpha = pi(phi2), the data whose splice
/// is compared with X.
struct SpliceData {
  LieAlgebra gbar;
  ModuleSES ses;
  QVector alpha;
};

inline SpliceData abelian_splice_data(const CrossedModule& X, const std::optional<QMatrix>& section = std::nullopt) {
  require(X.h.is_abelian(), ErrorKind::Unsupported, "splice data needs an abelian h");
  const SkeletalModel sk = skeletal_model(X, section);
  const OuterAction o = outer_action(X, sk.section);
  const std::size_t nh = X.h.dim;
  const QMatrix& K = sk.kernel_basis;
  const std::size_t nv = K.cols();
  SpliceData d;
  d.gbar = o.gbar;
  d.ses.I = LieModule{nh, o.s};
  d.ses.V = sk.triplet.V;
  d.ses.incl = K;
  // complement representatives: pivots of [K | I] beyond K
  const Echelon e = rref(hconcat(K, QMatrix::identity(nh)));
  std::vector<std::size_t> reps;
  for (auto p : e.pivots)
    if (p >= nv) reps.push_back(p - nv);
  const std::size_t nq = reps.size();
  QMatrix E(nh, nq);
  for (std::size_t r = 0; r < nq; ++r) E(reps[r], r) = 1;
  const QMatrix M = hconcat(K, E);
  d.ses.proj = QMatrix(nq, nh);
  for (std::size_t j = 0; j < nh; ++j) {
    auto x = solve_particular(M, unit_vector(nh, j));
    for (std::size_t r = 0; r < nq; ++r) d.ses.proj(r, j) = (*x)[nv + r];
  }
  d.ses.Q.dim = nq;
  for (const auto& A : o.s) d.ses.Q.action.push_back(d.ses.proj * A * E);
  d.alpha = map_values(sk.phi2, d.ses.proj, Subsets(o.gbar.dim, 2).size());
  return d;
}

// ---------------------------------------------------------------------------
// Morphisms and elementary equivalences.

struct ElementaryEquivalence {
  QMatrix phi;  // h -> h'
  QMatrix psi;  // g -> g'
};

/// phi, psi Lie morphisms, mu' phi = psi mu, phi(x.h) = psi(x).phi(h).
inline Report check_crossed_morphism(const CrossedModule& X, const CrossedModule& Y, const ElementaryEquivalence& E) {
  check_shape(X);
  check_shape(Y);
  require(E.phi.rows() == Y.h.dim && E.phi.cols() == X.h.dim && E.psi.rows() == Y.g.dim && E.psi.cols() == X.g.dim,
          ErrorKind::Structural, "comparison maps have wrong shape");
  Report r;
  r.merge(check_lie_morphism(X.h, Y.h, E.phi, "phi morphism"));
  r.merge(check_lie_morphism(X.g, Y.g, E.psi, "psi morphism"));
  const QMatrix D = Y.mu * E.phi - E.psi * X.mu;
  if (auto at = first_nonzero(D)) r.add("mu compatibility", {at->first, at->second}, D(at->first, at->second));
  for (std::size_t x = 0; x < X.g.dim; ++x) {
    const QMatrix A = E.phi * X.action[x] - Y.rho(E.psi.column(x)) * E.phi;
    if (auto at = first_nonzero(A)) r.add("action compatibility", {x, at->first, at->second}, A(at->first, at->second));
  }
  return r;
}

/// Adds: phi is the identity on the canonical bases of ker mu, ker mu', and
/// psi induces the identity on the canonical cokernel bases.
inline Report check_elementary_equivalence(const CrossedModule& X, const CrossedModule& Y,
                                           const ElementaryEquivalence& E) {
  Report r = check_crossed_morphism(X, Y, E);
  const QMatrix K = kernel_basis(X), K2 = kernel_basis(Y);
  if (K.cols() != K2.cols()) {
    r.add("kernel dimension", {K.cols(), K2.cols()}, Rational(0));
  } else {
    for (std::size_t j = 0; j < K.cols(); ++j) {
      auto c = solve_particular(K2, E.phi.apply(K.column(j)));
      if (!c) {
        r.add("kernel identity", {j}, Rational(0));
        continue;
      }
      r.add_if_nonzero("kernel identity", {j}, *c - unit_vector(K.cols(), j));
    }
  }
  const Cokernel C = cokernel(X), C2 = cokernel(Y);
  if (C.gbar.dim != C2.gbar.dim) {
    r.add("cokernel dimension", {C.gbar.dim, C2.gbar.dim}, Rational(0));
  } else {
    const QMatrix induced = C2.proj * E.psi * C.section;
    const QMatrix D = induced - QMatrix::identity(C.gbar.dim);
    if (auto at = first_nonzero(D)) r.add("cokernel identity", {at->first, at->second}, D(at->first, at->second));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Named examples and a seeded random generator.

/// id : g -> g with the adjoint action.
inline CrossedModule identity_crossed(const LieAlgebra& g) {
  CrossedModule X{g, g, QMatrix::identity(g.dim), {}};
  for (std::size_t i = 0; i < g.dim; ++i) X.action.push_back(g.ad(i));
  return X;
}

/// mu = 0 with h abelian and the given g-module.
inline CrossedModule zero_crossed(const LieAlgebra& g, const LieModule& V) {
  return CrossedModule{LieAlgebra(V.dim), g, QMatrix(g.dim, V.dim), V.action};
}

/// Inclusion of the ideal spanned by the columns of B, acting by brackets.
inline CrossedModule ideal_crossed(const LieAlgebra& g, const QMatrix& B) {
  const std::size_t k = B.cols();
  auto coords = [&](const QVector& v) {
    auto x = solve_particular(B, v);
    require(x.has_value(), ErrorKind::Validation, "columns do not span an ideal");
    return *x;
  };
  CrossedModule X;
  X.g = g;
  X.h = LieAlgebra(k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = 0; b < k; ++b) {
      QVector v = coords(g.bracket(B.column(a), B.column(b)));
      for (std::size_t c = 0; c < k; ++c) X.h.at(a, b, c) = v[c];
    }
  X.mu = B;
  for (std::size_t i = 0; i < g.dim; ++i) {
    QMatrix A(k, k);
    for (std::size_t b = 0; b < k; ++b) A.set_column(b, coords(g.bracket(unit_vector(g.dim, i), B.column(b))));
    X.action.push_back(A);
  }
  return X;
}

/// Heisenberg h onto the abelian quotient by its centre, acting by ad.
inline CrossedModule heisenberg_over_centre() {
  const LieAlgebra H = heisenberg();
  CrossedModule X;
  X.h = H;
  X.g = LieAlgebra(2, {"a", "b"});
  X.mu = QMatrix::from_rows({{1, 0, 0}, {0, 1, 0}}, 3);
  X.action = {H.ad(0), H.ad(1)};
  return X;
}

/// h = Q{v,w} abelian, g = Heisenberg{x,y,z}, mu(w) = z, x.w = v.
inline CrossedModule heisenberg_extension_crossed() {
  CrossedModule X;
  X.h = LieAlgebra(2, {"v", "w"});
  X.g = heisenberg();
  X.mu = QMatrix(3, 2);
  X.mu(2, 1) = 1;
  QMatrix ax(2, 2);
  ax(0, 1) = 1;
  X.action = {ax, QMatrix(2, 2), QMatrix(2, 2)};
  return X;
}

/// The sequence 0 -> V -> I -> Q -> 0 over abelian Q^3 where e2 sends the
/// Q-generator to the V-generator; with alpha = e0*^e1* the class is nonzero.
inline ModuleSES nilpotent_ses() {
  const LieAlgebra L = abelian(3);
  ModuleSES s;
  s.V = trivial_module(L, 1);
  s.Q = trivial_module(L, 1);
  s.I = trivial_module(L, 2);
  s.I.action[2](0, 1) = 1;
  s.incl = QMatrix::from_rows({{1}, {0}}, 1);
  s.proj = QMatrix::from_rows({{0, 1}}, 2);
  return s;
}

inline CrossedModule direct_sum(const CrossedModule& A, const CrossedModule& B) {
  CrossedModule X;
  X.h = direct_sum(A.h, B.h);
  X.g = direct_sum(A.g, B.g);
  X.mu = QMatrix(X.g.dim, X.h.dim);
  for (std::size_t i = 0; i < A.g.dim; ++i)
    for (std::size_t j = 0; j < A.h.dim; ++j) X.mu(i, j) = A.mu(i, j);
  for (std::size_t i = 0; i < B.g.dim; ++i)
    for (std::size_t j = 0; j < B.h.dim; ++j) X.mu(A.g.dim + i, A.h.dim + j) = B.mu(i, j);
  auto embed = [&](const QMatrix& M, std::size_t off) {
    QMatrix R(X.h.dim, X.h.dim);
    for (std::size_t i = 0; i < M.rows(); ++i)
      for (std::size_t j = 0; j < M.cols(); ++j) R(off + i, off + j) = M(i, j);
    return R;
  };
  for (const auto& m : A.action) X.action.push_back(embed(m, 0));
  for (const auto& m : B.action) X.action.push_back(embed(m, A.h.dim));
  return X;
}

/// Seeded random valid crossed modules with dim h, dim g <= 4, built from a
/// fixed library and scrambled by integer unitriangular basis changes.
inline CrossedModule random_crossed_module(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 11), coef(-2, 2);
  LieModule std2;
  std2.dim = 2;
  std2.action = {QMatrix::from_rows({{1, 0}, {0, -1}}, 2), QMatrix::from_rows({{0, 1}, {0, 0}}, 2),
                 QMatrix::from_rows({{0, 0}, {1, 0}}, 2)};
  CrossedModule X;
  switch (pick(rng)) {
    case 0: X = identity_crossed(sl2()); break;
    case 1: X = identity_crossed(heisenberg()); break;
    case 2: X = identity_crossed(direct_sum(aff1(), abelian(1))); break;
    case 3: X = zero_crossed(sl2(), std2); break;
    case 4: X = zero_crossed(aff1(), adjoint_module(aff1())); break;
    case 5: X = ideal_crossed(heisenberg(), QMatrix::from_rows({{0, 0}, {1, 0}, {0, 1}}, 2)); break;
    case 6: X = ideal_crossed(direct_sum(sl2(), abelian(1)), QMatrix::from_rows({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {0, 0, 0}}, 3)); break;
    case 7: X = heisenberg_over_centre(); break;
    case 8: X = heisenberg_extension_crossed(); break;
    case 9: {
      QVector alpha = zeros(3);
      alpha[0] = 1;  // e0*^e1*
      X = splice_crossed_module(abelian(3), nilpotent_ses(), alpha);
      break;
    }
    case 10: X = direct_sum(identity_crossed(aff1()), zero_crossed(abelian(1), trivial_module(abelian(1), 2))); break;
    default: X = direct_sum(ideal_crossed(aff1(), QMatrix::from_rows({{0}, {1}}, 1)), identity_crossed(abelian(1)));
  }
  auto scramble = [&](std::size_t n) {
    QMatrix P = QMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) P(i, j) = coef(rng);
    return P;
  };
  const QMatrix P = scramble(X.h.dim);
  const QMatrix Pg = scramble(X.g.dim);
  return change_basis(X, P, Pg);
}

}  // namespace holonomy2
