// Surface holonomy of the gl(1) pair A = c dx, B = (2 + xy) dx^dy over a
// family of tori, with grid refinement.

#include <cmath>
#include <cstdio>
#include <numbers>

#include "holonomy2/loopspace.hpp"

using namespace holonomy2;

int main() {
  TwoTermLinf G(1, 1);
  G.l2_0m1[0](0, 0) = 1;
  MCPair p{G, PolyForm(2, Component::L0, 1), PolyForm(2, Component::Lm1, 1)};
  p.A.add(Rational(9, 10), {0, 0}, {0}, 0);
  p.B.add(2, {0, 0}, {0, 1}, 0);
  p.B.add(1, {1, 1}, {0, 1}, 0);
  std::printf("pair is %sMaurer-Cartan\n", is_maurer_cartan(p).ok ? "" : "not ");

  const NumericPair np = numeric_pair(p);
  constexpr double tau = 2 * std::numbers::pi;
  auto torus = [&](Eigen::Index n) {
    return sample_surface(
        [&](double t, double s) {
          const double R = 1 + 0.4 * std::cos(tau * t), S = 1 + 0.3 * std::sin(tau * t);
          return Eigen::RowVector2d(R * std::cos(tau * s) + 0.3, S * std::sin(tau * s) + 0.2 * std::sin(tau * t));
        },
        n, n, Eigen::RowVector2d::Zero(), Eigen::RowVector2d::Zero());
  };
  for (Eigen::Index n : {16, 32, 64, 128})
    std::printf("%4ldx%-4ld  H = %.12f\n", long(n), long(n), surface_holonomy(np.P, np.B, torus(n))[0]);

  // shrinking based tori: the holonomy of an MC pair dies off
  const std::vector<double> sizes{0.4, 0.2, 0.1};
  std::vector<SampledSurface> fam;
  for (double eps : sizes) {
    fam.push_back(sample_surface(
        [&](double t, double s) {
          const double th = tau * s;
          return Eigen::RowVector2d(eps * (1 + 0.5 * std::cos(tau * t)) * (1 - std::cos(th)),
                                    eps * (1 + 0.5 * std::sin(tau * t)) * std::sin(th));
        },
        64, 64, Eigen::RowVector2d::Zero(), Eigen::RowVector2d::Zero()));
  }
  const FlatnessResult f = flatness_residual(p, fam);
  for (std::size_t i = 0; i < f.residual.size(); ++i) std::printf("eps %.2f  |H| = %.3e\n", sizes[i], f.residual[i]);
}
