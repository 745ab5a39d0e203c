// Splice an abelian extension with a 2-cocycle, then read the class back off
// the skeletal model of the resulting crossed module.

#include <iostream>

#include "holonomy2/crossed.hpp"

using namespace holonomy2;

int main() {
  const LieAlgebra L = abelian(3);
  const ModuleSES ses = nilpotent_ses();
  QVector alpha = zeros(3);
  alpha[Subsets(3, 2).rank({0, 1})] = 1;

  const CrossedModule X = splice_crossed_module(L, ses, alpha);
  std::cout << "h dim " << X.h.dim << ", g dim " << X.g.dim << ", axioms "
            << (validate_crossed_module(X).ok() ? "ok" : "violated") << "\n";

  const SkeletalModel sk = skeletal_model(X);
  const QVector gamma = values_in(sk.gamma_h, ses.incl);
  const QVector delta = connecting_map(L, ses, alpha);
  std::cout << "gamma    =";
  for (const auto& q : gamma) std::cout << " " << q;
  std::cout << "\nd[alpha] =";
  for (const auto& q : delta) std::cout << " " << q;
  std::cout << "\nsame class: " << (same_class(L, ses.V, 3, gamma, delta) ? "yes" : "no")
            << "\nclass is zero: " << (is_coboundary(L, ses.V, 3, delta) ? "yes" : "no")
            << "\ndim H^3 = " << ce_cohomology(L, ses.V, 3).betti << "\n";

  // the identity crossed module has nothing left after truncation
  const SkeletalModel id = skeletal_model(identity_crossed(sl2()));
  std::cout << "identity on sl2: gbar dim " << id.triplet.gbar.dim << ", V dim " << id.triplet.V.dim << "\n";
}
