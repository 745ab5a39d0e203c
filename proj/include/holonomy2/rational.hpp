#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "holonomy2/error.hpp"

namespace holonomy2 {

/// Exact scalars for the algebraic layer.
using Rational = mpq_class;
using QVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q". The result is canonicalized.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) fail(ErrorKind::Schema, "empty rational literal");
  if (s.front() == '+') s.erase(s.begin());
  const auto slash = s.find('/');
  auto digits_ok = [](std::string_view t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && t[0] == '-') i = 1;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (slash == std::string::npos) {
    if (!digits_ok(s, true)) fail(ErrorKind::Schema, "bad rational literal '" + s + "'");
  } else {
    if (!digits_ok(std::string_view(s).substr(0, slash), true) ||
        !digits_ok(std::string_view(s).substr(slash + 1), false))
      fail(ErrorKind::Schema, "bad rational literal '" + s + "'");
  }
  Rational q;
  if (q.set_str(s, 10) != 0) fail(ErrorKind::Schema, "bad rational literal '" + s + "'");
  if (q.get_den() == 0) fail(ErrorKind::Schema, "zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(10); }

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }

inline bool is_zero(const QVector& v) {
  for (const auto& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

inline QVector zeros(std::size_t n) { return QVector(n, Rational(0)); }

inline QVector unit_vector(std::size_t n, std::size_t i) {
  QVector v = zeros(n);
  v[i] = 1;
  return v;
}

inline QVector operator+(QVector a, const QVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

inline QVector operator-(QVector a, const QVector& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b[i];
  return a;
}

inline QVector operator*(const Rational& s, QVector a) {
  for (auto& x : a) x *= s;
  return a;
}

inline void axpy(const Rational& s, const QVector& x, QVector& y) {
  if (sgn(s) == 0) return;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (sgn(x[i]) != 0) y[i] += s * x[i];
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace holonomy2
