#include <gtest/gtest.h>

#include "holonomy2/qmatrix.hpp"

using namespace holonomy2;

namespace {

QMatrix M(std::initializer_list<std::initializer_list<int>> rows) {
  std::vector<QVector> r;
  std::size_t cols = 0;
  for (auto row : rows) {
    QVector v;
    for (int x : row) v.emplace_back(x);
    cols = v.size();
    r.push_back(v);
  }
  return QMatrix::from_rows(r, cols);
}

}  // namespace

TEST(Rational, ParsesAndCanonicalizes) {
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("-7"), Rational(-7));
  EXPECT_EQ(to_string(parse_rational("-2/4")), "-1/2");
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("abc"), Error);
  EXPECT_THROW(parse_rational("1.5"), Error);
  try {
    parse_rational("");
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Schema);
  }
}

TEST(QMatrix, RankAndNullspace) {
  QMatrix a = M({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  EXPECT_EQ(rank(a), 2u);
  QMatrix n = nullspace(a);
  ASSERT_EQ(n.cols(), 1u);
  EXPECT_TRUE((a * n).is_zero());
  // free variable is the last column, set to 1
  EXPECT_EQ(n(2, 0), Rational(1));
  EXPECT_EQ(n(0, 0), Rational(-1));
  EXPECT_EQ(n(1, 0), Rational(-1));
}

TEST(QMatrix, SolveAndSpan) {
  QMatrix a = M({{1, 1}, {0, 1}, {1, 2}});
  auto x = solve_particular(a, QVector{3, 1, 4});
  ASSERT_TRUE(x.has_value());
  EXPECT_EQ((*x)[0], Rational(2));
  EXPECT_EQ((*x)[1], Rational(1));
  EXPECT_FALSE(solve_particular(a, QVector{1, 1, 1}).has_value());
  EXPECT_TRUE(in_column_span(a, QVector{3, 1, 4}));
  EXPECT_FALSE(in_column_span(a, QVector{1, 1, 1}));
  EXPECT_TRUE(in_column_span(QMatrix(3, 0), zeros(3)));
}

TEST(QMatrix, Inverse) {
  QMatrix a = M({{2, 1}, {1, 1}});
  auto inv = inverse(a);
  ASSERT_TRUE(inv.has_value());
  EXPECT_EQ(a * *inv, QMatrix::identity(2));
  EXPECT_FALSE(inverse(M({{1, 2}, {2, 4}})).has_value());
}

TEST(QMatrix, ShapeErrors) {
  try {
    (void)(M({{1, 2}}) * M({{1, 2}}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Structural);
  }
}
