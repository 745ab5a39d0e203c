#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "holonomy2/rational.hpp"

namespace holonomy2 {

/// One failed identity instance: which identity, at which basis indices, and
/// the offending residual (first nonzero coordinate when vector valued).
struct Violation {
  std::string kind;
  std::vector<std::size_t> indices;
  Rational residual;
};

struct Report {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  void add(std::string kind, std::vector<std::size_t> idx, Rational residual) {
    violations.push_back({std::move(kind), std::move(idx), std::move(residual)});
  }

  /// Adds one violation if v is nonzero.
  void add_if_nonzero(const std::string& kind, std::vector<std::size_t> idx, const QVector& v) {
    for (const auto& x : v)
      if (sgn(x) != 0) {
        add(kind, std::move(idx), x);
        return;
      }
  }

  bool has(const std::string& kind) const {
    return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
  }

  bool has(const std::string& kind, const std::vector<std::size_t>& idx) const {
    return std::any_of(violations.begin(), violations.end(),
                       [&](const Violation& v) { return v.kind == kind && v.indices == idx; });
  }

  void merge(const Report& other, const std::string& prefix = {}) {
    for (const auto& v : other.violations) violations.push_back({prefix + v.kind, v.indices, v.residual});
  }
};

}  // namespace holonomy2
