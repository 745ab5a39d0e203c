#include <gtest/gtest.h>

#include <random>

#include "holonomy2/hochschild.hpp"

using namespace holonomy2;

namespace {

HochChain word(std::initializer_list<std::size_t> w, const Rational& c = 1) {
  HochChain h;
  h.add(HochChain::Word(w), c);
  return h;
}

// Random homogeneous chain of the given total degree with bar length <= maxlen.
HochChain random_chain(std::mt19937& rng, const FinDGA& A, int degree, std::size_t maxlen, int terms = 6) {
  std::uniform_int_distribution<std::size_t> pick(0, A.dim() - 1), len(0, maxlen);
  std::uniform_int_distribution<int> coef(-3, 3);
  HochChain c;
  int added = 0;
  for (int tries = 0; added < terms && tries < 20000; ++tries) {
    HochChain::Word w(1 + len(rng));
    for (auto& x : w) x = pick(rng);
    if (word_degree(A, w) != degree) continue;
    c.add(w, coef(rng));
    ++added;
  }
  return c;
}

// sum over slots of 1[A|..|F|..|A] with ell letters
HochChain insertion_oracle(const QVector& a, const QVector& F, const FinDGA& A, std::size_t ell) {
  HochChain out;
  for (std::size_t slot = 0; slot < ell; ++slot) {
    std::vector<std::pair<HochChain::Word, Rational>> layer{{{A.unit}, Rational(1)}};
    for (std::size_t pos = 0; pos < ell; ++pos) {
      const QVector& v = pos == slot ? F : a;
      std::vector<std::pair<HochChain::Word, Rational>> next;
      for (const auto& [w, c] : layer)
        for (std::size_t k = 0; k < A.dim(); ++k)
          if (sgn(v[k]) != 0) {
            auto u = w;
            u.push_back(k);
            next.emplace_back(u, c * v[k]);
          }
      layer = std::move(next);
    }
    for (const auto& [w, c] : layer) out.add(w, c);
  }
  return out;
}

std::vector<QMatrix> sl2_defining() {
  QMatrix h(2, 2), e(2, 2), f(2, 2);
  h(0, 0) = 1;
  h(1, 1) = -1;
  e(0, 1) = 1;
  f(1, 0) = 1;
  return {h, e, f};
}

QVector odd_part(std::mt19937& rng, const FinDGA& A, int degree = 1) {
  std::uniform_int_distribution<int> coef(-2, 2);
  QVector v = zeros(A.dim());
  for (std::size_t i = 0; i < A.dim(); ++i)
    if (A.degrees[i] == degree) v[i] = coef(rng);
  return v;
}

}  // namespace

TEST(FinDGA, BuildersAreValid) {
  EXPECT_TRUE(validate_dga(exterior_dga(2)).ok());
  EXPECT_TRUE(validate_dga(truncated_dga(Rational(-1))).ok());
  EXPECT_TRUE(validate_dga(ce_dga(sl2())).ok());
  EXPECT_TRUE(validate_dga(ce_dga(aff1())).ok());
  EXPECT_TRUE(validate_dga(ce_dga(heisenberg())).ok());
  EXPECT_TRUE(validate_dga(matrix_units(2)).ok());
  EXPECT_TRUE(validate_dga(tensor_dga(ce_dga(aff1()), matrix_units(2))).ok());
  EXPECT_TRUE(validate_dga(tensor_dga(exterior_dga(1), truncated_dga(Rational(2)))).ok());
}

TEST(FinDGA, CeDifferentialMatchesCochainDifferential) {
  // on 1-cochains the CE algebra differential is the cochain differential
  const LieAlgebra L = sl2();
  const FinDGA A = ce_dga(L);
  const QMatrix d1 = ce_differential(L, trivial_module(L, 1), 1);
  for (std::size_t k = 0; k < 3; ++k) {
    const QVector dk = A.d.column(std::size_t(1) << k);
    const Subsets S(3, 2);
    for (std::size_t r = 0; r < S.size(); ++r) {
      const std::size_t mask = (std::size_t(1) << S[r][0]) | (std::size_t(1) << S[r][1]);
      EXPECT_EQ(dk[mask], d1(r, k));
    }
  }
}

TEST(FinDGA, BrokenTablesReported) {
  FinDGA A = truncated_dga(Rational(1));
  A.d(1, 0) = 1;  // d1 = x
  const Report r = validate_dga(A);
  EXPECT_TRUE(r.has("unit"));
  FinDGA B(std::vector<int>{0, 0, 1});  // 1, u idempotent, du = v, v u = u v = 0
  for (std::size_t i = 0; i < 3; ++i) {
    B.set_product(0, i, unit_vector(3, i));
    B.set_product(i, 0, unit_vector(3, i));
  }
  B.set_product(1, 1, unit_vector(3, 1));
  B.d(2, 1) = 1;
  const Report rb = validate_dga(B);
  EXPECT_TRUE(rb.has("leibniz"));
  EXPECT_FALSE(rb.has("d squared"));
  FinDGA C = exterior_dga(1);
  C.commutative = true;
  C.mult[1 * 2 + 1].emplace_back(0, Rational(1));  // x x = 1 breaks degree and commutativity
  const Report rc = validate_dga(C);
  EXPECT_TRUE(rc.has("product degree"));
  EXPECT_TRUE(rc.has("commutativity"));
}

TEST(HochschildD, UnitWords) {
  const FinDGA A = truncated_dga(Rational(-1));
  EXPECT_TRUE(hochschild_d(unit_chain(A), A).is_zero());
  EXPECT_TRUE(hochschild_d(word({0, 0}), A).is_zero());
}

TEST(HochschildD, HandExpandedWords) {
  const FinDGA E = exterior_dga(2);  // basis 1, x0, x1, x0x1
  // 1[x0|x1] -> x0[x1] + 1[x0x1] - x1[x0]
  const HochChain expect = word({1, 2}) + word({0, 3}) - word({2, 1});
  EXPECT_EQ(hochschild_d(word({0, 1, 2}), E), expect);
  // x0[x1]: both multiplications give x0x1 with opposite signs
  EXPECT_TRUE(hochschild_d(word({1, 2}), E).is_zero());

  const Rational lambda(3);
  const FinDGA T = truncated_dga(lambda);  // 1, x, y
  // 1[x|x] -> 1[y] + lambda (1[y|x] + 1[x|y])
  const HochChain e2 = word({0, 2}) + word({0, 2, 1}, lambda) + word({0, 1, 2}, lambda);
  EXPECT_EQ(hochschild_d(word({0, 1, 1}), T), e2);
}

TEST(HochschildD, SquaresToZero) {
  std::mt19937 rng(17);
  const std::vector<FinDGA> algebras{truncated_dga(Rational(-2)), tensor_dga(ce_dga(aff1()), matrix_units(2)),
                                     ce_dga(sl2()), tensor_dga(exterior_dga(1), truncated_dga(Rational(1)))};
  int nontrivial = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const FinDGA& A = algebras[trial % algebras.size()];
    const HochChain c = random_chain(rng, A, trial % 3 - 1, 3);
    const HochChain dc = hochschild_d(c, A);
    if (!dc.is_zero()) ++nontrivial;
    EXPECT_TRUE(hochschild_d(dc, A).is_zero()) << to_string(c, A);
  }
  EXPECT_GT(nontrivial, 50);
}

TEST(HochschildD, InternalAndMultiplicativePartsAnticommute) {
  std::mt19937 rng(3);
  const FinDGA A = tensor_dga(ce_dga(aff1()), matrix_units(2));
  for (int trial = 0; trial < 20; ++trial) {
    const HochChain c = random_chain(rng, A, 0, 3);
    EXPECT_TRUE(hochschild_b(hochschild_b(c, A), A).is_zero());
    EXPECT_TRUE(hochschild_d_internal(hochschild_d_internal(c, A), A).is_zero());
    EXPECT_TRUE((hochschild_b(hochschild_d_internal(c, A), A) + hochschild_d_internal(hochschild_b(c, A), A)).is_zero());
  }
}

TEST(HochschildD, InhomogeneousChainRejected) {
  const FinDGA A = truncated_dga(Rational(1));
  try {
    hochschild_d(word({0, 1}) + word({1}), A);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Degree);
  }
  EXPECT_THROW(hochschild_d(word({0, 7}), A), Error);
}

TEST(Shuffle, UnitAndTwoLetters) {
  const FinDGA A = ce_dga(aff1());  // 1, t0, t1, t0^t1
  std::mt19937 rng(8);
  const HochChain c = random_chain(rng, A, 0, 2);
  EXPECT_EQ(shuffle(unit_chain(A), c, A), c);
  EXPECT_EQ(shuffle(c, unit_chain(A), A), c);
  // |t0| - 1 = 0: 1[t0] * 1[t1] = 1[t0|t1] + 1[t1|t0]
  EXPECT_EQ(shuffle(word({0, 1}), word({0, 2}), A), word({0, 1, 2}) + word({0, 2, 1}));
  // letters of shifted degree 1 anticommute: 1[t0t1] * 1[t0t1] = 0
  EXPECT_TRUE(shuffle(word({0, 3}), word({0, 3}), A).is_zero());
}

TEST(Shuffle, CommutativeAssociativeDerivation) {
  std::mt19937 rng(23);
  const std::vector<FinDGA> algebras{ce_dga(aff1()), ce_dga(heisenberg()), exterior_dga(2)};
  for (int trial = 0; trial < 30; ++trial) {
    const FinDGA& A = algebras[trial % algebras.size()];
    const int p = trial % 2, q = (trial / 2) % 3 - 1, r = 0;
    const HochChain x = random_chain(rng, A, p, 2, 3), y = random_chain(rng, A, q, 2, 3),
                    z = random_chain(rng, A, r, 1, 3);
    const Rational s = (p * q) % 2 ? -1 : 1;
    EXPECT_EQ(shuffle(x, y, A), s * shuffle(y, x, A));
    EXPECT_EQ(shuffle(shuffle(x, y, A), z, A), shuffle(x, shuffle(y, z, A), A));
    const Rational t = p % 2 ? -1 : 1;
    EXPECT_EQ(hochschild_d(shuffle(x, y, A), A),
              shuffle(hochschild_d(x, A), y, A) + t * shuffle(x, hochschild_d(y, A), A));
  }
}

TEST(Shuffle, RejectsNonCommutative) {
  const FinDGA A = truncated_dga(Rational(1));
  try {
    shuffle(unit_chain(A), unit_chain(A), A);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}

TEST(PChain, Examples) {
  const FinDGA E = exterior_dga(1);
  EXPECT_EQ(P_chain(zeros(2), E, 4), unit_chain(E));
  const HochChain p = P_chain(unit_vector(2, 1), E, 2);
  EXPECT_EQ(p, word({0}) + word({0, 1}) + word({0, 1, 1}));
  EXPECT_EQ(chain_degree(E, p), 0);
  try {
    P_chain(unit_vector(2, 0), E, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Degree);
  }
}

TEST(PChain, DefectIsSumOfCurvatureInsertions) {
  std::mt19937 rng(5);
  const std::vector<FinDGA> algebras{truncated_dga(Rational(-1)), tensor_dga(ce_dga(aff1()), matrix_units(2)),
                                     tensor_dga(exterior_dga(1), truncated_dga(Rational(2)))};
  for (const FinDGA& A : algebras)
    for (int trial = 0; trial < 3; ++trial) {
      const QVector a = odd_part(rng, A);
      const QVector F = mc_curvature(a, A);
      const auto comps = cycle_defect(a, A, 4);
      EXPECT_TRUE(comps[0].is_zero());
      for (std::size_t ell = 1; ell <= 4; ++ell) EXPECT_EQ(comps[ell], insertion_oracle(a, F, A, ell)) << ell;
    }
}

TEST(McElement, Examples) {
  const FinDGA T = truncated_dga(Rational(-1));
  EXPECT_TRUE(is_mc_element(zeros(3), T));
  EXPECT_TRUE(is_mc_element(unit_vector(3, 1), T));
  EXPECT_FALSE(is_mc_element(unit_vector(3, 1), truncated_dga(Rational(0))));
  EXPECT_THROW(is_mc_element(unit_vector(3, 2), T), Error);
}

TEST(McElement, CycleIffMaurerCartan) {
  const LieAlgebra L = sl2();
  const FinDGA A = tensor_dga(ce_dga(L), matrix_units(2));
  ASSERT_TRUE(validate_dga(A).ok());
  const QVector flat = flat_connection_element(L, sl2_defining(), A);
  EXPECT_TRUE(is_mc_element(flat, A));
  for (const auto& c : cycle_defect(flat, A, 4)) EXPECT_TRUE(c.is_zero());

  std::vector<QMatrix> bent = sl2_defining();
  bent[1] = Rational(2) * bent[1];
  const QVector curved = flat_connection_element(L, bent, A);
  EXPECT_FALSE(is_mc_element(curved, A));
  const auto comps = cycle_defect(curved, A, 4);
  for (std::size_t ell = 1; ell <= 4; ++ell) EXPECT_FALSE(comps[ell].is_zero()) << ell;

  const FinDGA T = truncated_dga(Rational(3));
  for (int a = -4; a <= 4; ++a) {
    const QVector x = Rational(a) * unit_vector(3, 1);
    const bool mc = is_mc_element(x, T);
    EXPECT_EQ(mc, a == 0 || a == -3);
    bool all_zero = true;
    for (const auto& c : cycle_defect(x, T, 6)) all_zero = all_zero && c.is_zero();
    EXPECT_EQ(all_zero, mc) << a;
  }
}
