#include <gtest/gtest.h>

#include <random>

#include "holonomy2/loopspace.hpp"
#include "surfaces.hpp"

using namespace holonomy2;
using surfaces::kTau;

namespace {

TransportProblem zero_connection(std::size_t d) {
  return {[d](const Eigen::VectorXd&, const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(d, d).eval(); }, d,
          true};
}

// rho(A(v)) = c v_x on h = R
TransportProblem c_dx(double c) {
  return {[c](const Eigen::VectorXd&, const Eigen::VectorXd& v) { return Eigen::MatrixXd::Constant(1, 1, c * v[0]); },
          1, true};
}

CurvingFn dxdy(double beta = 1.0) {
  return [beta](const Eigen::VectorXd&, const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
    return Eigen::VectorXd::Constant(1, beta * (u[0] * w[1] - u[1] * w[0])).eval();
  };
}

CurvingFn zero_curving(std::size_t d) {
  return [d](const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&) {
    return Eigen::VectorXd::Zero(d).eval();
  };
}

Eigen::MatrixXd series_exp(const Eigen::MatrixXd& M) {
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(M.rows(), M.cols()), sum = term;
  for (int k = 1; k < 20; ++k) {
    term = term * M / double(k);
    sum += term;
  }
  return sum;
}

SampledLoop smooth_loop(Eigen::Index m, double phase = 0.0) {
  return sample_loop(
      [phase](double t) {
        return Eigen::RowVector2d(std::cos(kTau * t) + 0.3 * std::sin(2 * kTau * t + phase),
                                  0.8 * std::sin(kTau * t) - 0.2 * std::cos(3 * kTau * t));
      },
      m, Eigen::RowVector2d::Zero());
}

// A non-abelian point-dependent connection on R^2 with values in gl(2).
TransportProblem nonabelian() {
  return {[](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
            Eigen::Matrix2d a, b;
            a << 0.2, 1.0 + x[1], -0.5, 0.1 * x[0];
            b << x[0] * x[1], -0.3, 0.7, 0.4;
            return Eigen::MatrixXd(v[0] * a + v[1] * b);
          },
          2, false};
}

}  // namespace

TEST(Transport, ZeroConnectionIsIdentity) {
  const SampledLoop g = smooth_loop(64);
  EXPECT_TRUE(transport(zero_connection(3), g, 0.1, 0.9).isApprox(Eigen::MatrixXd::Identity(3, 3), 0));
}

TEST(Transport, ConstantGeneratorMatchesSeries) {
  Eigen::MatrixXd M(3, 3);
  M << 0.3, -1.2, 0.5, 0.8, -0.1, 0.2, -0.4, 0.9, 0.6;
  TransportProblem P{[M](const Eigen::VectorXd&, const Eigen::VectorXd& v) { return Eigen::MatrixXd(v[0] * M); }, 3,
                     false};
  const SampledLoop line = sample_loop([](double t) { return Eigen::RowVector2d(t, 0.0); }, 512,
                                       Eigen::RowVector2d(1.0, 0.0));
  EXPECT_LT((transport(P, line, 0, 1) - series_exp(M)).norm(), 1e-9);
  EXPECT_LT((transport(P, line, 0.3, 0.8) - series_exp(0.5 * M)).norm(), 1e-9);
}

TEST(Transport, AbelianClosedForm) {
  const double c = 0.7;
  const SampledLoop g = smooth_loop(256);
  auto x = [](double t) { return std::cos(kTau * t) + 0.3 * std::sin(2 * kTau * t); };
  for (auto [a, b] : {std::pair{0.0, 1.0}, {0.125, 0.5}, {0.137, 0.911}, {0.4, 0.4}}) {
    const double T = transport(c_dx(c), g, a, b)(0, 0);
    EXPECT_NEAR(T, std::exp(c * (x(b) - x(a))), 1e-8) << a << " " << b;
  }
}

TEST(Transport, CompositionLaw) {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> u(0, 1);
  const TransportProblem P = nonabelian();
  for (int trial = 0; trial < 5; ++trial) {
    const SampledLoop g = smooth_loop(512, u(rng) * kTau);
    double s[3] = {u(rng), u(rng), u(rng)};
    std::sort(s, s + 3);
    const Eigen::MatrixXd lhs = transport(P, g, s[0], s[2]);
    const Eigen::MatrixXd rhs = transport(P, g, s[1], s[2]) * transport(P, g, s[0], s[1]);
    EXPECT_LT((lhs - rhs).norm(), 1e-7);
  }
}

TEST(Transport, Errors) {
  SampledLoop g = smooth_loop(16);
  EXPECT_THROW(transport(c_dx(1), g, 0.6, 0.2), Error);
  g.samples(3, 1) = std::nan("");
  try {
    transport(c_dx(1), g, 0, 1);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Numeric);
  }
  TransportProblem bad{[](const Eigen::VectorXd&, const Eigen::VectorXd& v) {
                         return Eigen::MatrixXd::Constant(1, 1, v[0] * v[0]);
                       },
                       1, true};
  EXPECT_THROW(transport(bad, smooth_loop(16), 0, 1), Error);
}

TEST(Transport, ZeroSpeedSegmentsAreIdentity) {
  const SampledLoop still = sample_loop([](double) { return Eigen::RowVector2d(0.5, -0.5); }, 32,
                                        Eigen::RowVector2d::Zero());
  EXPECT_TRUE(transport(nonabelian(), still, 0, 1).isApprox(Eigen::MatrixXd::Identity(2, 2), 0));
}

TEST(VForm, Examples) {
  const SampledLoop g = smooth_loop(128);
  EXPECT_TRUE(v_form(c_dx(1), g, {}).empty());
  Eigen::VectorXd v(2);
  v << 1.5, -2;
  const auto out = v_form(zero_connection(2), g, {{0.3, v}});
  ASSERT_EQ(out.size(), 1u);
  EXPECT_TRUE(out[0].isApprox(v));

  auto x = [](double t) { return std::cos(kTau * t) + 0.3 * std::sin(2 * kTau * t); };
  const Eigen::VectorXd one = Eigen::VectorXd::Constant(1, 2.0);
  const auto w = v_form(c_dx(0.5), g, {{0.25, one}, {0.6, one}});
  EXPECT_NEAR(w[0][0], std::exp(0.5 * (x(1) - x(0.25))) * 2.0, 1e-8);
  EXPECT_NEAR(w[1][0], std::exp(0.5 * (x(1) - x(0.6))) * 2.0, 1e-8);
  EXPECT_THROW(v_form(c_dx(0.5), g, {{0.6, one}, {0.25, one}}), Error);
}

TEST(ConnectionA0, Examples) {
  const SampledLoop g = smooth_loop(128);
  const Eigen::MatrixXd vel = velocities(g);
  EXPECT_TRUE(connection_A0(c_dx(1), zero_curving(1), g, vel).isZero(0));
  EXPECT_LT(connection_A0(c_dx(1), dxdy(), g, vel).norm(), 1e-12);

  const Eigen::Index m = 512;
  const SampledLoop circle =
      sample_loop([](double t) { return Eigen::RowVector2d(std::cos(kTau * t), std::sin(kTau * t)); }, m,
                  Eigen::RowVector2d::Zero());
  Eigen::MatrixXd radial = circle.samples;
  // oracle: direct midpoint quadrature with the analytic velocity
  double oracle = 0;
  const int n = 4096;
  for (int i = 0; i < n; ++i) {
    const double t = (i + 0.5) / n;
    const double vx = -kTau * std::sin(kTau * t), vy = kTau * std::cos(kTau * t);
    oracle += (vx * std::sin(kTau * t) - vy * std::cos(kTau * t)) / n;
  }
  EXPECT_NEAR(connection_A0(zero_connection(1), dxdy(), circle, radial)[0], oracle, 1e-6);
}

TEST(ConnectionA0, LinearInTangent) {
  const SampledLoop g = smooth_loop(256);
  TransportProblem P = c_dx(0.8);
  CurvingFn B = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
    return Eigen::VectorXd::Constant(1, (1 + x[0] * x[1]) * (u[0] * w[1] - u[1] * w[0])).eval();
  };
  Eigen::MatrixXd d1 = g.samples.array().sin(), d2 = g.samples.array().square();
  const Eigen::VectorXd lhs = connection_A0(P, B, g, 2.5 * d1 - 0.75 * d2);
  const Eigen::VectorXd rhs = 2.5 * connection_A0(P, B, g, d1) - 0.75 * connection_A0(P, B, g, d2);
  EXPECT_LT((lhs - rhs).norm(), 1e-10);
}

TEST(ConnectionA0, SittingLoopHasZeroSeamVelocity) {
  SampledLoop g = smooth_loop(32);
  g.sitting = true;
  EXPECT_TRUE(velocities(g).row(0).isZero(0));
  EXPECT_THROW(connection_A0(c_dx(1), dxdy(), g, Eigen::MatrixXd::Zero(16, 2)), Error);
}

TEST(SurfaceHolonomy, TrivialCases) {
  const surfaces::Map M = surfaces::wobbly_torus();
  EXPECT_TRUE(surface_holonomy(c_dx(1), zero_curving(1), M.sample(32, 32)).isZero(0));
  SampledSurface flat;
  const SampledLoop g = smooth_loop(32);
  flat.deck_sigma = flat.deck_tau = Eigen::RowVector2d::Zero();
  for (int j = 0; j < 16; ++j) flat.rows.push_back(g.samples);
  EXPECT_LT(surface_holonomy(c_dx(1), dxdy(), flat).norm(), 1e-14);
}

TEST(SurfaceHolonomy, AbelianReductionMatchesFluxOracle) {
  const surfaces::Map W = surfaces::winding_patch();
  const double oracle = surfaces::flux_oracle(W, [](double, double) { return 1.0; });
  EXPECT_NEAR(oracle, 1.0, 1e-12);
  const double H = surface_holonomy(zero_connection(1), dxdy(), W.sample(128, 128))[0];
  EXPECT_NEAR(H, oracle, 1e-4 * std::abs(oracle));

  // lattice-periodic coefficient on the winding patch
  auto beta = [](double x, double y) { return 1 + 0.5 * std::sin(kTau * x) * std::cos(kTau * y) + 0.3 * std::cos(kTau * y); };
  CurvingFn B = [beta](const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
    return Eigen::VectorXd::Constant(1, beta(x[0], x[1]) * (u[0] * w[1] - u[1] * w[0])).eval();
  };
  const double o2 = surfaces::flux_oracle(W, beta);
  // a degree-one map integrates the mean of a periodic coefficient
  EXPECT_NEAR(o2, 1.0, 1e-10);
  EXPECT_NEAR(surface_holonomy(zero_connection(1), B, W.sample(128, 128))[0], o2, 1e-4 * std::abs(o2));
}

TEST(SurfaceHolonomy, WeightedOracle) {
  const surfaces::Map T = surfaces::wobbly_torus();
  const double c = 0.9;
  auto beta = [](double x, double y) { return 2.0 + std::sin(x) * y; };
  CurvingFn B = [beta](const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
    return Eigen::VectorXd::Constant(1, beta(x[0], x[1]) * (u[0] * w[1] - u[1] * w[0])).eval();
  };
  const double oracle = surfaces::weighted_oracle(T, c, beta);
  ASSERT_GT(std::abs(oracle), 1e-2);
  EXPECT_NEAR(surface_holonomy(c_dx(c), B, T.sample(128, 128))[0], oracle, 1e-4 * std::abs(oracle));
}

TEST(SurfaceHolonomy, ReparametrizationInvariance) {
  const surfaces::Map T = surfaces::wobbly_torus();
  auto phi = [](double s) { return s + 0.08 * std::sin(kTau * s); };
  auto psi = [](double t) { return t + 0.05 * std::sin(2 * kTau * t); };
  auto warped = [&](Eigen::Index n) {
    return sample_surface([&](double t, double s) { return T.f(psi(t), phi(s)); }, n, n, Eigen::RowVector2d::Zero(),
                          Eigen::RowVector2d::Zero());
  };
  CurvingFn B = [](const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
    return Eigen::VectorXd::Constant(1, (1.5 + x[0] * x[1]) * (u[0] * w[1] - u[1] * w[0])).eval();
  };
  // closed A: trivial loop holonomy, periodic integrand
  TransportProblem closed{[](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
                            return Eigen::MatrixXd::Constant(1, 1, 0.6 * v[0] + 0.3 * (x[1] * v[0] + x[0] * v[1]));
                          },
                          1, true};
  EXPECT_LT((surface_holonomy(closed, B, T.sample(128, 128)) - surface_holonomy(closed, B, warped(128))).norm(), 1e-5);

  // A with nontrivial loop holonomy: the discrepancy is the O(h^2) trapezoid error
  TransportProblem curved{[](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
                            return Eigen::MatrixXd::Constant(1, 1, 0.6 * v[0] + 0.3 * x[0] * v[1]);
                          },
                          1, true};
  double prev = 0;
  for (Eigen::Index n : {128, 256, 512}) {
    const double gap = (surface_holonomy(curved, B, T.sample(n, n)) - surface_holonomy(curved, B, warped(n))).norm();
    if (prev > 0) {
      EXPECT_GT(prev / gap, 3.0) << n;
    }
    prev = gap;
  }
  EXPECT_LT(prev, 1e-4);
}

TEST(SurfaceHolonomy, RichardsonSecondOrder) {
  // A = x dy on the wobbly torus: transport is a genuine midpoint rule.
  TransportProblem P{[](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
                       return Eigen::MatrixXd::Constant(1, 1, x[0] * v[1]);
                     },
                     1, true};
  const surfaces::Map T = surfaces::wobbly_torus();
  const double ref = surface_holonomy(P, dxdy(), T.sample(512, 512))[0];
  double prev = 0;
  for (int m : {32, 64, 128}) {
    const double err = std::abs(surface_holonomy(P, dxdy(), T.sample(m, m))[0] - ref);
    if (prev > 0) {
      const double ratio = prev / err;
      EXPECT_GT(ratio, 3.0) << m;
      EXPECT_LT(ratio, 5.5) << m;
    }
    prev = err;
  }
}

TEST(SurfaceHolonomy, RejectsNonAbelianTarget) {
  try {
    surface_holonomy(nonabelian(), zero_curving(2), surfaces::wobbly_torus().sample(16, 16));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unsupported);
  }
}

TEST(Flatness, McPairVanishesAndControlMatchesFlux) {
  const TwoTermLinf G = surfaces::gl1();
  MCPair mc{G, PolyForm(2, Component::L0, 1), PolyForm(2, Component::Lm1, 1)};
  mc.A.add(Rational(3, 4), {0, 0}, {0}, 0);
  mc.B.add(2, {0, 0}, {0, 1}, 0);
  MCPair bad{G, PolyForm(2, Component::L0, 1), PolyForm(2, Component::Lm1, 1)};
  bad.A.add(1, {1, 0}, {1}, 0);
  bad.B.add(2, {0, 0}, {0, 1}, 0);

  std::vector<SampledSurface> fam;
  std::vector<double> eps{0.4, 0.2, 0.1, 0.05};
  for (double e : eps) fam.push_back(surfaces::based_family(e).sample(128, 128));
  const FlatnessResult a = flatness_residual(mc, fam);
  EXPECT_TRUE(a.maurer_cartan);
  for (std::size_t i = 1; i < eps.size(); ++i)
    EXPECT_TRUE(a.residual[i] <= a.residual[i - 1] / 4 || a.residual[i] < 1e-13) << i;

  const FlatnessResult b = flatness_residual(bad, fam);
  EXPECT_FALSE(b.maurer_cartan);
  const double flux = surfaces::based_flux_oracle(2.0, 1000);
  double prev = 1e300;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    const double gap = std::abs(b.holonomy[i][0] / std::pow(eps[i], 4) - flux);
    EXPECT_LT(gap, prev);
    prev = gap;
  }
  EXPECT_LT(prev, 1e-2 * std::abs(flux));

  MCPair zero{G, PolyForm(2, Component::L0, 1), PolyForm(2, Component::Lm1, 1)};
  zero.A.add(1, {0, 0}, {1}, 0);
  for (double r : flatness_residual(zero, fam).residual) EXPECT_EQ(r, 0.0);
}
