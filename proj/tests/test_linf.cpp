#include <gtest/gtest.h>

#include <random>

#include "holonomy2/linf.hpp"
#include "linf_oracle.hpp"

using namespace holonomy2;

namespace {

// Gauge transform of a DGLA by an antisymmetric phi : L0 x L0 -> L_{-1}:
//   [x,y]' = [x,y] + d phi(x,y),  x.'h = x.h + phi(x, dh),
//   l3'    = cyclic sum of phi(x,[y,z]) + x.'phi(y,z)   (times s3).
TwoTermLinf gauge(const TwoTermLinf& T, const std::vector<QVector>& phi_cols, int s3) {
  const std::size_t n0 = T.n0, n1 = T.n1;
  const QVector phi_cochain = [&] {
    QVector c = zeros(Subsets(n0, 2).size() * n1);
    for (std::size_t r = 0; r < phi_cols.size(); ++r)
      for (std::size_t v = 0; v < n1; ++v) c[r * n1 + v] = phi_cols[r][v];
    return c;
  }();
  auto phi = [&](const QVector& x, const QVector& y) {
    QVector out = zeros(n1);
    for (std::size_t i = 0; i < n0; ++i)
      for (std::size_t j = 0; j < n0; ++j)
        if (sgn(x[i]) != 0 && sgn(y[j]) != 0) axpy(x[i] * y[j], eval_cochain(phi_cochain, n0, n1, {i, j}), out);
    return out;
  };
  auto e = [&](std::size_t i) { return unit_vector(n0, i); };
  TwoTermLinf U = T;
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n0; ++j) {
      QVector v = T.bracket(e(i), e(j)) + T.l1.apply(phi(e(i), e(j)));
      for (std::size_t k = 0; k < n0; ++k) U.b(i, j, k) = v[k];
    }
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t h = 0; h < n1; ++h) U.l2_0m1[i].set_column(h, T.act(e(i), unit_vector(n1, h)) + phi(e(i), T.l1.column(h)));
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t j = 0; j < n0; ++j)
      for (std::size_t k = 0; k < n0; ++k) {
        const QVector x = e(i), y = e(j), z = e(k);
        QVector v = phi(x, T.bracket(y, z)) + phi(y, T.bracket(z, x)) + phi(z, T.bracket(x, y)) + U.act(x, phi(y, z)) +
                    U.act(y, phi(z, x)) + U.act(z, phi(x, y));
        for (std::size_t a = 0; a < n1; ++a) U.t(i, j, k, a) = s3 * v[a];
      }
  return U;
}

std::vector<QVector> random_phi(std::mt19937_64& rng, std::size_t n0, std::size_t n1) {
  std::uniform_int_distribution<int> c(-1, 1);
  std::vector<QVector> cols(Subsets(n0, 2).size(), zeros(n1));
  for (auto& col : cols)
    for (auto& q : col) q = c(rng);
  return cols;
}

// abelian Q^4 acting on Q by e0 -> 1
Triplet four_dim_triplet() {
  Triplet tr;
  tr.gbar = abelian(4);
  tr.V = trivial_module(tr.gbar, 1);
  tr.V.action[0](0, 0) = 1;
  tr.gamma = zeros(Subsets(4, 3).size());
  return tr;
}

}  // namespace

TEST(ValidateLinf, CrossedModuleGivesDgla) {
  std::mt19937_64 rng(1);
  for (int k = 0; k < 20; ++k) {
    const CrossedModule X = random_crossed_module(rng);
    const TwoTermLinf T = from_crossed(X);
    EXPECT_TRUE(is_zero(T.l3));
    EXPECT_TRUE(validate_linf(T).ok());
  }
}

TEST(ValidateLinf, SkeletalFromSkeletalModel) {
  QVector alpha = zeros(3);
  alpha[0] = 1;
  const CrossedModule X = splice_crossed_module(abelian(3), nilpotent_ses(), alpha);
  const TwoTermLinf T = from_triplet(skeletal_model(X).triplet);
  EXPECT_TRUE(is_skeletal(T));
  EXPECT_FALSE(is_zero(T.l3));
  EXPECT_TRUE(validate_linf(T).ok());
  EXPECT_TRUE(oracle::generic_valid(T));
}

TEST(ValidateLinf, PerturbedL3FailsCoherence) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> c(-3, 3);
  const Triplet tr = four_dim_triplet();
  TwoTermLinf T = from_triplet(tr);
  ASSERT_TRUE(validate_linf(T).ok());
  QVector delta = zeros(4);
  for (auto& q : delta) q = c(rng);
  delta[Subsets(4, 3).rank({1, 2, 3})] = 1 + (c(rng) + 3);  // d(delta)(0,1,2,3) = delta(1,2,3) != 0
  T.set_l3_from_cochain(delta);
  const Report r = validate_linf(T);
  EXPECT_TRUE(r.has("(e) coherence", {0, 1, 2, 3}));
  EXPECT_FALSE(oracle::generic_valid(T));
}

TEST(ValidateLinf, AgreesWithGenericOracle) {
  std::mt19937_64 rng(17);
  int valid_with_both = 0;
  for (int k = 0; k < 12; ++k) {
    const CrossedModule X = random_crossed_module(rng);
    if (X.g.dim + X.h.dim > 7) continue;
    const TwoTermLinf T = from_crossed(X);
    const auto phi = random_phi(rng, T.n0, T.n1);
    for (int s3 : {1, -1}) {
      const TwoTermLinf U = gauge(T, phi, s3);
      const bool ours = validate_linf(U).ok();
      EXPECT_EQ(ours, oracle::generic_valid(U));
      if (ours && !U.l1.is_zero() && !is_zero(U.l3)) ++valid_with_both;
    }
  }
  EXPECT_GT(valid_with_both, 0);
}

TEST(ValidateLinf, BrokenBracketAndActionReported) {
  TwoTermLinf T = from_crossed(identity_crossed(heisenberg()));
  T.b(0, 1, 2) = 2;  // one-sided
  EXPECT_TRUE(validate_linf(T).has("l2 antisymmetry"));
  TwoTermLinf U = from_crossed(identity_crossed(heisenberg()));
  U.l2_0m1[0](2, 1) = 0;
  const Report r = validate_linf(U);
  EXPECT_TRUE(r.has("(a) chain map"));
  EXPECT_FALSE(oracle::generic_valid(U));
}

TEST(ValidateLinf, ShapeMismatch) {
  TwoTermLinf T(2, 1);
  T.l3.pop_back();
  try {
    validate_linf(T);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Structural);
  }
}

TEST(Skeletal, Flags) {
  const LieAlgebra g = aff1();
  EXPECT_FALSE(is_skeletal(from_crossed(identity_crossed(g))));
  EXPECT_TRUE(is_skeletal(from_crossed(zero_crossed(g, adjoint_module(g)))));
  const TwoTermLinf T = from_triplet(skeletal_model(heisenberg_extension_crossed()).triplet);
  EXPECT_TRUE(is_skeletal(T));
  EXPECT_EQ(T.n0, 2u);
  EXPECT_EQ(T.n1, 1u);
}

TEST(FromCrossed, IdentityHasInvertibleDifferential) {
  const TwoTermLinf T = from_crossed(identity_crossed(sl2()));
  EXPECT_TRUE(inverse(T.l1).has_value());
  const TwoTermLinf Z = from_crossed(zero_crossed(abelian(2), trivial_module(abelian(2), 2)));
  EXPECT_TRUE(Z.l1.is_zero());
  EXPECT_TRUE(is_zero(Z.l2_00));
}
