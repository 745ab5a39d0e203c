#pragma once
#include <algorithm>
#include <functional>
#include "holonomy2/linf.hpp"

namespace oracle {
using namespace holonomy2;

// Graded space L0 (even, indices < n0) + L_{-1} (odd). Generic l1,l2,l3 on
// total-space basis vectors, checked against the generalized Jacobi identity
//   sum_{i+j=n+1} sum_{unshuffles} chi(s) (-1)^{i(j-1)} l_j(l_i(..),..) = 0.
struct Graded {
  const TwoTermLinf& T;
  std::size_t N() const { return T.n0 + T.n1; }
  bool odd(std::size_t a) const { return a >= T.n0; }

  QVector l1(std::size_t a) const {
    QVector out = zeros(N());
    if (odd(a)) {
      QVector c = T.l1.column(a - T.n0);
      for (std::size_t k = 0; k < T.n0; ++k) out[k] = c[k];
    }
    return out;
  }
  QVector l2(std::size_t a, std::size_t b) const {
    QVector out = zeros(N());
    if (!odd(a) && !odd(b)) {
      for (std::size_t k = 0; k < T.n0; ++k) out[k] = T.b(a, b, k);
    } else if (!odd(a) && odd(b)) {
      for (std::size_t k = 0; k < T.n1; ++k) out[T.n0 + k] = T.l2_0m1[a](k, b - T.n0);
    } else if (odd(a) && !odd(b)) {
      for (std::size_t k = 0; k < T.n1; ++k) out[T.n0 + k] = -T.l2_0m1[b](k, a - T.n0);
    }
    return out;
  }
  QVector l3(std::size_t a, std::size_t b, std::size_t c) const {
    QVector out = zeros(N());
    if (!odd(a) && !odd(b) && !odd(c))
      for (std::size_t k = 0; k < T.n1; ++k) out[T.n0 + k] = T.t(a, b, c, k);
    return out;
  }
  QVector l(std::size_t k, const std::vector<std::size_t>& args) const {
    if (k == 1) return l1(args[0]);
    if (k == 2) return l2(args[0], args[1]);
    if (k == 3) return l3(args[0], args[1], args[2]);
    return zeros(N());
  }
  // l_j(v, rest) with v a vector in the first slot
  QVector l_first(std::size_t j, const QVector& v, const std::vector<std::size_t>& rest) const {
    QVector out = zeros(N());
    for (std::size_t a = 0; a < N(); ++a) {
      if (sgn(v[a]) == 0) continue;
      std::vector<std::size_t> args{a};
      args.insert(args.end(), rest.begin(), rest.end());
      axpy(v[a], l(j, args), out);
    }
    return out;
  }
  QVector jacobi(const std::vector<std::size_t>& x) const {
    const std::size_t n = x.size();
    QVector total = zeros(N());
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t j = n + 1 - i;
      if (j < 1 || j > 3 || i > 3) continue;
      // unshuffles: choose i positions (increasing) for the first block
      std::vector<int> mask(n, 0);
      std::fill(mask.begin(), mask.begin() + static_cast<long>(i), 1);
      std::sort(mask.begin(), mask.end(), std::greater<int>());
      do {
        std::vector<std::size_t> first, second, order;
        for (std::size_t p = 0; p < n; ++p) (mask[p] ? first : second).push_back(p);
        order = first;
        order.insert(order.end(), second.begin(), second.end());
        int chi = 1;
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = p + 1; q < n; ++q)
            if (order[p] > order[q]) {
              const bool both_odd = odd(x[order[p]]) && odd(x[order[q]]);
              if (!both_odd) chi = -chi;
            }
        const int s = chi * (((i * (j - 1)) % 2) ? -1 : 1);
        std::vector<std::size_t> a1, rest;
        for (auto p : first) a1.push_back(x[p]);
        for (auto p : second) rest.push_back(x[p]);
        axpy(Rational(s), l_first(j, l(i, a1), rest), total);
      } while (std::prev_permutation(mask.begin(), mask.end()));
    }
    return total;
  }
  bool valid() const {
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<std::size_t> x(n, 0);
      std::function<bool(std::size_t)> rec = [&](std::size_t p) {
        if (p == n) return is_zero(jacobi(x));
        for (std::size_t a = 0; a < N(); ++a) {
          x[p] = a;
          if (!rec(p + 1)) return false;
        }
        return true;
      };
      if (!rec(0)) return false;
    }
    return true;
  }
};

inline bool generic_valid(const TwoTermLinf& T) { return Graded{T}.valid(); }
}  // namespace oracle
