#include <gtest/gtest.h>

#include <random>

#include "holonomy2/simplicial.hpp"

using namespace holonomy2;

namespace {

HochChain::Word random_word(std::mt19937& rng, const FinDGA& A, std::size_t len) {
  std::uniform_int_distribution<std::size_t> pick(0, A.dim() - 1);
  HochChain::Word w(len);
  for (auto& x : w) x = pick(rng);
  return w;
}

HHYChain random_hhy(std::mt19937& rng, const FinSimpSet& Y, const FinDGA& A, std::size_t k, int terms = 4) {
  std::uniform_int_distribution<int> coef(-3, 3);
  HHYChain c;
  for (int t = 0; t < terms; ++t) c.add(k, random_word(rng, A, Y.size(k)), coef(rng));
  return c;
}

std::vector<std::size_t> random_pointed(std::mt19937& rng, std::size_t n, std::size_t m) {
  std::uniform_int_distribution<std::size_t> pick(0, m - 1);
  std::vector<std::size_t> f(n);
  for (std::size_t i = 1; i < n; ++i) f[i] = pick(rng);
  return f;
}

HochChain apply_map(const std::vector<std::size_t>& f, std::size_t m, const HochChain& c, const FinDGA& A) {
  HochChain out;
  for (const auto& [w, coef] : c.terms) out += coef * induced_map(f, m, w, A);
  return out;
}

}  // namespace

TEST(Simplicial, ModelsSatisfyIdentities) {
  const FinSimpSet S = circle_model(6);
  EXPECT_TRUE(validate_simplicial(S).ok());
  EXPECT_EQ(S.size(0), 1u);
  EXPECT_EQ(S.size(1), 2u);
  EXPECT_EQ(S.size(2), 3u);
  const FinSimpSet T = product_model(S, S);
  EXPECT_TRUE(validate_simplicial(T).ok());
  for (std::size_t k = 0; k <= 6; ++k) EXPECT_EQ(T.size(k), (k + 1) * (k + 1));
  EXPECT_TRUE(validate_simplicial(point_model(4)).ok());
}

TEST(Simplicial, ProductWithPointIsIdentity) {
  const FinSimpSet S = circle_model(4);
  const FinSimpSet P = product_model(S, point_model(4));
  EXPECT_EQ(P.sizes, S.sizes);
  EXPECT_EQ(P.face, S.face);
  EXPECT_EQ(P.degen, S.degen);
  EXPECT_EQ(P.basepoint, S.basepoint);
}

TEST(Simplicial, CorruptedTablesReported) {
  FinSimpSet S = circle_model(4);
  S.face[3][1][3] = 1;  // should be 2
  const Report r = validate_simplicial(S);
  EXPECT_FALSE(r.ok());
  bool named = false;
  for (const auto& v : r.violations) named = named || (v.kind == "dd" && v.indices.front() == 3);
  EXPECT_TRUE(named);

  FinSimpSet B = circle_model(3);
  B.degen[1][0][0] = 1;
  EXPECT_TRUE(validate_simplicial(B).has("basepoint"));

  FinSimpSet C = circle_model(3);
  C.face[2].pop_back();
  EXPECT_THROW(validate_simplicial(C), Error);
  EXPECT_THROW(product_model(circle_model(2), circle_model(3)), Error);
}

TEST(InducedMap, IdentityAndCollapse) {
  const FinDGA A = ce_dga(heisenberg());  // generators t0, t1, t2 at masks 1, 2, 4
  const HochChain::Word w{0, 1, 2, 4};
  const HochChain id = induced_map({0, 1, 2, 3}, 4, w, A);
  ASSERT_EQ(id.terms.size(), 1u);
  EXPECT_EQ(id.terms.begin()->first, w);
  EXPECT_EQ(id.terms.begin()->second, 1);
  // everything into the module slot: 1 t0 t1 t2 = t0^t1^t2
  const HochChain c = induced_map({0, 0, 0, 0}, 2, w, A);
  ASSERT_EQ(c.terms.size(), 1u);
  EXPECT_EQ(c.terms.begin()->first, (HochChain::Word{7, 0}));
  EXPECT_EQ(c.terms.begin()->second, 1);
  // swapping two odd letters costs a sign
  const HochChain s = induced_map({0, 2, 1}, 3, {0, 1, 2}, A);
  EXPECT_EQ(s.terms.begin()->first, (HochChain::Word{0, 2, 1}));
  EXPECT_EQ(s.terms.begin()->second, -1);
  // t1 t0 placed together: t0 ends in slot 1 behind t1 -> t1^t0 = -t0^t1
  const HochChain m = induced_map({0, 1, 1}, 2, {0, 2, 1}, A);
  EXPECT_EQ(m.terms.begin()->first, (HochChain::Word{0, 3}));
  EXPECT_EQ(m.terms.begin()->second, -1);
  EXPECT_THROW(induced_map({1, 0}, 2, {0, 1}, A), Error);
}

TEST(InducedMap, Functorial) {
  std::mt19937 rng(31);
  const std::vector<FinDGA> algebras{ce_dga(heisenberg()), ce_dga(aff1()), small_cdga(Rational(2)), exterior_dga(3)};
  for (int trial = 0; trial < 60; ++trial) {
    const FinDGA& A = algebras[trial % algebras.size()];
    const std::size_t n = 2 + trial % 4, m = 1 + trial % 3, p = 1 + (trial / 3) % 3;
    const auto f = random_pointed(rng, n, m), g = random_pointed(rng, m, p);
    std::vector<std::size_t> gf(n);
    for (std::size_t i = 0; i < n; ++i) gf[i] = g[f[i]];
    HochChain c;
    c.add(random_word(rng, A, n), 1);
    c.add(random_word(rng, A, n), -2);
    EXPECT_EQ(apply_map(gf, p, c, A), apply_map(g, p, apply_map(f, m, c, A), A));
  }
}

TEST(HigherD, Units) {
  const FinDGA A = small_cdga(Rational(1));
  const FinSimpSet T = product_model(circle_model(3), circle_model(3));
  for (std::size_t k : {0u, 1u, 3u}) {
    HHYChain c;
    c.add(k, HochChain::Word(T.size(k), 0), 1);
    EXPECT_TRUE(higher_D(c, T, A).is_zero()) << k;
  }
  // at even k the faces leave the degenerate unit word one level down
  HHYChain c2;
  c2.add(2, HochChain::Word(9, 0), 1);
  HHYChain e;
  e.add(1, HochChain::Word(4, 0), 1);
  EXPECT_EQ(higher_D(c2, T, A), e);
}

TEST(HigherD, SquaresToZero) {
  std::mt19937 rng(9);
  const FinSimpSet S = circle_model(5), T = product_model(S, S);
  const std::vector<FinDGA> algebras{small_cdga(Rational(3)), ce_dga(aff1()), ce_dga(heisenberg())};
  int nontrivial = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const FinDGA& A = algebras[trial % algebras.size()];
    const std::size_t k = 1 + trial % 5;
    const HHYChain c = random_hhy(rng, T, A, k);
    const HHYChain dc = higher_D(c, T, A);
    if (!dc.is_zero()) ++nontrivial;
    EXPECT_TRUE(higher_D(dc, T, A).is_zero()) << trial;
    const HHYChain cs = random_hhy(rng, S, A, k);
    EXPECT_TRUE(higher_D(higher_D(cs, S, A), S, A).is_zero()) << trial;
  }
  EXPECT_GT(nontrivial, 80);
}

TEST(HigherD, RaisesTotalDegree) {
  std::mt19937 rng(4);
  const FinSimpSet T = product_model(circle_model(3), circle_model(3));
  const FinDGA A = ce_dga(aff1());
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t k = 1 + trial % 3;
    const auto w = random_word(rng, A, T.size(k));
    HHYChain c;
    c.add(k, w, 1);
    for (const auto& [key, coef] : higher_D(c, T, A).terms)
      EXPECT_EQ(hhy_degree(A, key.first, key.second), hhy_degree(A, k, w) + 1);
  }
}

TEST(HigherD, CircleMatchesHochschild) {
  const FinSimpSet S = circle_model(4);
  for (const FinDGA& A : {small_cdga(Rational(2)), ce_dga(aff1())}) {
    std::vector<HochChain::Word> words{{}};
    for (std::size_t len = 1; len <= 4; ++len) {
      std::vector<HochChain::Word> next;
      for (const auto& w : words)
        for (std::size_t x = 0; x < A.dim(); ++x) {
          auto v = w;
          v.push_back(x);
          next.push_back(v);
        }
      words = std::move(next);
      for (const auto& w : words) {
        HochChain c;
        c.add(w, 1);
        EXPECT_EQ(higher_D(to_circle(c, A), S, A), to_circle(hochschild_d(c, A), A));
        EXPECT_EQ(from_circle(higher_D(to_circle(c, A), S, A), A), hochschild_d(c, A));
      }
    }
  }
}

TEST(HigherD, RejectsNonCommutative) {
  HHYChain c;
  c.add(0, {0}, 1);
  try {
    higher_D(c, circle_model(2), truncated_dga(Rational(1)));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}

TEST(HochschildOfHochschild, UnitsAndSquare) {
  const FinDGA A = ce_dga(aff1());
  BiChain u;
  u.add({{0}, {0}}, 1);
  EXPECT_TRUE(hochschild_of_hochschild_D(u, A).is_zero());
  BiChain u0;
  u0.add({{0}}, 1);
  EXPECT_TRUE(hochschild_of_hochschild_D(u0, A).is_zero());

  std::mt19937 rng(12);
  std::uniform_int_distribution<std::size_t> len(0, 2), outer(0, 2);
  int nontrivial = 0;
  for (int trial = 0; trial < 40; ++trial) {
    const FinDGA& B = trial % 2 ? A : small_cdga(Rational(-1));
    BiChain c;
    const std::size_t n = outer(rng);
    BiChain::Word w(n + 1);
    for (auto& inner : w) inner = random_word(rng, B, 1 + len(rng));
    c.add(w, 1);
    const BiChain dc = hochschild_of_hochschild_D(c, B);
    if (!dc.is_zero()) ++nontrivial;
    EXPECT_TRUE(hochschild_of_hochschild_D(dc, B).is_zero()) << trial;
  }
  EXPECT_GT(nontrivial, 20);
  EXPECT_THROW(hochschild_of_hochschild_D(u, truncated_dga(Rational(1))), Error);
}

TEST(HochschildOfHochschild, DegreeAudit) {
  // outer length n, total inner bar length k: degree sum|a| - (n + k), the
  // total degree of a torus-model word at simplicial level n + k.
  std::mt19937 rng(6);
  const FinDGA A = ce_dga(heisenberg());
  std::uniform_int_distribution<std::size_t> len(1, 3), outer(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = outer(rng);
    BiChain::Word w(n + 1);
    int letters = 0;
    std::size_t k = 0;
    for (auto& inner : w) {
      inner = random_word(rng, A, len(rng));
      k += inner.size() - 1;
      for (auto x : inner) letters += A.degrees[x];
    }
    EXPECT_EQ(bi_degree(A, w), letters - static_cast<int>(n + k));
    EXPECT_EQ(bi_degree(A, w), hhy_degree(A, n + k, [&] {
      HochChain::Word flat;
      for (const auto& inner : w) flat.insert(flat.end(), inner.begin(), inner.end());
      return flat;
    }()));
    BiChain c;
    c.add(w, 1);
    for (const auto& [v, coef] : hochschild_of_hochschild_D(c, A).terms) EXPECT_EQ(bi_degree(A, v), bi_degree(A, w) + 1);
  }
}
