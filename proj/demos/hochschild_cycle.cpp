// The chain P(a) = 1[] + 1[a] + 1[a|a] + ... in CE(sl2) (x) Mat2 for the
// defining representation, and for a rescaled element that is not flat.

#include <iostream>

#include "holonomy2/hochschild.hpp"

using namespace holonomy2;

namespace {

void report(const char* name, const QVector& a, const FinDGA& A) {
  std::cout << name << ": " << (is_mc_element(a, A) ? "MC" : "not MC") << "\n";
  const auto parts = cycle_defect(a, A, 5);
  for (std::size_t l = 0; l < parts.size(); ++l)
    std::cout << "  length " << l << ": " << parts[l].terms.size() << " terms\n";
}

}  // namespace

int main() {
  const LieAlgebra L = sl2();
  const std::vector<QMatrix> rho{QMatrix::from_rows({{1, 0}, {0, -1}}, 2), QMatrix::from_rows({{0, 1}, {0, 0}}, 2),
                                 QMatrix::from_rows({{0, 0}, {1, 0}}, 2)};
  const FinDGA A = tensor_dga(ce_dga(L), matrix_units(2));
  std::cout << "dim A = " << A.dim() << ", valid: " << (validate_dga(A).ok() ? "yes" : "no") << "\n";

  const QVector a = flat_connection_element(L, rho, A);
  report("flat connection", a, A);
  QVector b = a;
  for (auto& q : b) q *= 2;
  report("twice the flat connection", b, A);

  const FinDGA E = exterior_dga(1);
  std::cout << "P(x) in the exterior algebra, N = 3:\n  " << to_string(P_chain(unit_vector(2, 1), E, 3), E) << "\n";
}
