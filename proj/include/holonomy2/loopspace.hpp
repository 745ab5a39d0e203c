#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>
#include <unsupported/Eigen/MatrixFunctions>

#include "holonomy2/forms.hpp"

namespace holonomy2 {

/// gamma(t_k), t_k = k/m, k = 0..m-1. The loop closes up to a deck
/// translation: gamma(t + 1) = gamma(t) + deck (deck = 0 for an honest loop).
/// With `sitting` the velocity at the seam is taken to be zero.
struct SampledLoop {
  Eigen::MatrixXd samples;
  Eigen::RowVectorXd deck;
  bool sitting = false;

  SampledLoop() = default;
  explicit SampledLoop(Eigen::MatrixXd s, bool sit = false)
      : samples(std::move(s)), deck(Eigen::RowVectorXd::Zero(samples.cols())), sitting(sit) {}
  SampledLoop(Eigen::MatrixXd s, Eigen::RowVectorXd d, bool sit = false)
      : samples(std::move(s)), deck(std::move(d)), sitting(sit) {}

  Eigen::Index m() const { return samples.rows(); }
  Eigen::Index n() const { return samples.cols(); }
};

/// delta gamma(t_k), one row per sample.
using LoopTangent = Eigen::MatrixXd;

/// f(tau_j, sigma_i): rows[j] is the loop at tau_j (m x n). Periodic in both
/// directions up to the deck translations.
struct SampledSurface {
  std::vector<Eigen::MatrixXd> rows;
  Eigen::RowVectorXd deck_sigma, deck_tau;
  bool sitting = false;

  Eigen::Index p() const { return static_cast<Eigen::Index>(rows.size()); }
  Eigen::Index m() const { return rows.empty() ? 0 : rows.front().rows(); }
  Eigen::Index n() const { return rows.empty() ? 0 : rows.front().cols(); }
  SampledLoop loop(Eigen::Index j) const { return SampledLoop(rows[j], deck_sigma, sitting); }
};

/// (point, tangent) -> rho(A(tangent)) acting on h.
using ConnectionFn = std::function<Eigen::MatrixXd(const Eigen::VectorXd&, const Eigen::VectorXd&)>;
/// (point; u, w) -> B(u, w) in h.
using CurvingFn =
    std::function<Eigen::VectorXd(const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&)>;

struct TransportProblem {
  ConnectionFn A;
  std::size_t h_dim = 1;
  bool h_abelian = true;
};

namespace detail {

inline void check_finite(const Eigen::MatrixXd& x, const char* what) {
  require(x.allFinite(), ErrorKind::Numeric, std::string("non-finite values in ") + what);
}

inline double freq(Eigen::Index j, Eigen::Index m) {
  return static_cast<double>(j <= m / 2 ? j : j - m);
}

/// Spectral data of the periodic part q(t) = x(t) - deck * t of each column.
struct Spectrum {
  Eigen::Index m = 0;
  std::vector<std::vector<std::complex<double>>> coeffs;
  Eigen::RowVectorXd deck;

  Spectrum(const Eigen::MatrixXd& x, const Eigen::RowVectorXd& dk) : m(x.rows()), deck(dk) {
    Eigen::FFT<double> fft;
    for (Eigen::Index c = 0; c < x.cols(); ++c) {
      std::vector<double> col(m);
      for (Eigen::Index k = 0; k < m; ++k) col[k] = x(k, c) - deck[c] * double(k) / double(m);
      std::vector<std::complex<double>> out;
      fft.fwd(out, col);
      coeffs.push_back(std::move(out));
    }
  }

  // Multiplies coefficient j by mult(j) and transforms back (real part).
  template <class F>
  Eigen::MatrixXd transform(F mult) const {
    Eigen::FFT<double> fft;
    Eigen::MatrixXd out(m, static_cast<Eigen::Index>(coeffs.size()));
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
      std::vector<std::complex<double>> w(m);
      for (Eigen::Index j = 0; j < m; ++j) w[j] = coeffs[c][j] * mult(j);
      std::vector<std::complex<double>> back;
      fft.inv(back, w);
      for (Eigen::Index k = 0; k < m; ++k) out(k, static_cast<Eigen::Index>(c)) = back[k].real();
    }
    return out;
  }

  bool nyquist(Eigen::Index j) const { return m % 2 == 0 && j == m / 2; }

  Eigen::MatrixXd derivative() const { return shifted(0.0, 1); }

  /// Values (order 0) or velocities (order 1) at (k + delta)/m.
  Eigen::MatrixXd shifted(double delta, int order) const {
    const double tau = 2 * std::numbers::pi;
    const double pi = std::numbers::pi;
    Eigen::MatrixXd v = transform([&](Eigen::Index j) {
      if (nyquist(j)) {
        // the real cosine mode (-1)^k cos(pi m delta)
        return std::complex<double>(order == 0 ? std::cos(pi * delta) : -pi * double(m) * std::sin(pi * delta));
      }
      const std::complex<double> ph = std::polar(1.0, tau * freq(j, m) * delta / double(m));
      return order == 0 ? ph : ph * std::complex<double>(0, tau * freq(j, m));
    });
    for (Eigen::Index k = 0; k < m; ++k) v.row(k) += order == 0 ? Eigen::RowVectorXd(deck * ((k + delta) / double(m))) : deck;
    return v;
  }

  /// Trigonometric interpolant (order 0) or its derivative (order 1) at t.
  Eigen::VectorXd eval(double t, int order = 0) const {
    const double tau = 2 * std::numbers::pi;
    Eigen::VectorXd out(static_cast<Eigen::Index>(coeffs.size()));
    for (std::size_t c = 0; c < coeffs.size(); ++c) {
      double s = order == 0 ? coeffs[c][0].real() : 0.0;
      for (Eigen::Index j = 1; j < m; ++j) {
        const double f = freq(j, m);
        if (f < 0) continue;
        if (nyquist(j)) {
          s += coeffs[c][j].real() * (order == 0 ? std::cos(tau * f * t) : -tau * f * std::sin(tau * f * t));
        } else {
          std::complex<double> e = std::polar(1.0, tau * f * t);
          if (order == 1) e *= std::complex<double>(0, tau * f);
          s += 2 * (coeffs[c][j] * e).real();
        }
      }
      const auto ci = static_cast<Eigen::Index>(c);
      out[ci] = s / double(m) + (order == 0 ? deck[ci] * t : deck[ci]);
    }
    return out;
  }
};

}  // namespace detail

inline void validate_loop(const SampledLoop& g) {
  require(g.m() >= 8, ErrorKind::Structural, "a sampled loop needs at least 8 samples");
  require(g.deck.size() == g.n(), ErrorKind::Structural, "deck translation has the wrong dimension");
  detail::check_finite(g.samples, "loop samples");
  detail::check_finite(g.deck, "deck translation");
}

/// Spectral velocity at the samples; zero at the seam for sitting loops.
inline Eigen::MatrixXd velocities(const SampledLoop& g) {
  validate_loop(g);
  Eigen::MatrixXd v = detail::Spectrum(g.samples, g.deck).derivative();
  if (g.sitting) v.row(0).setZero();
  return v;
}

/// Spot check of linearity of the connection in the tangent argument.
inline void check_transport_problem(const TransportProblem& P, const Eigen::VectorXd& point) {
  require(static_cast<bool>(P.A), ErrorKind::Structural, "transport problem without a connection");
  const Eigen::Index n = point.size();
  Eigen::VectorXd u = Eigen::VectorXd::LinSpaced(n, 0.3, 1.1), w = Eigen::VectorXd::LinSpaced(n, -0.7, 0.4);
  const Eigen::MatrixXd a = P.A(point, u), b = P.A(point, w), c = P.A(point, 2.0 * u - 3.0 * w);
  require(a.rows() == static_cast<Eigen::Index>(P.h_dim) && a.cols() == a.rows(), ErrorKind::Structural,
          "connection returned a matrix of the wrong size");
  const double scale = 1.0 + a.norm() + b.norm();
  require((c - (2.0 * a - 3.0 * b)).norm() <= 1e-9 * scale, ErrorKind::Validation,
          "connection is not linear in the tangent");
}

/// Per-cell factors of the product integral on a loop: one exponential per
/// subinterval, from the two-point Gauss (fourth-order Magnus) generator
///   Omega = h/2 (A1 + A2) + sqrt(3)/12 h^2 [A2, A1],  A_i = rho(A(gamma'(c_i))).
class PreparedLoop {
 public:
  PreparedLoop(const TransportProblem& P, const SampledLoop& g)
      : P_(P), g_(g), spec_((validate_loop(g), detail::Spectrum(g.samples, g.deck))) {
    const Eigen::Index m = g.m();
    check_transport_problem(P, g.samples.row(0).transpose());
    const Eigen::MatrixXd p1 = spec_.shifted(kGauss1, 0), v1 = spec_.shifted(kGauss1, 1);
    const Eigen::MatrixXd p2 = spec_.shifted(kGauss2, 0), v2 = spec_.shifted(kGauss2, 1);
    steps_.reserve(m);
    for (Eigen::Index k = 0; k < m; ++k)
      steps_.push_back(step(p1.row(k).transpose(), v1.row(k).transpose(), p2.row(k).transpose(),
                            v2.row(k).transpose(), 1.0 / double(m)));
  }

  Eigen::Index m() const { return g_.m(); }

  /// Transport from s0 to s1 (s0 <= s1 in [0,1]).
  Eigen::MatrixXd transport(double s0, double s1) const {
    require(s0 <= s1, ErrorKind::Order, "transport needs sigma0 <= sigma1");
    require(s0 >= 0 && s1 <= 1, ErrorKind::Structural, "transport parameters must lie in [0,1]");
    const Eigen::Index m = g_.m();
    const auto d = static_cast<Eigen::Index>(P_.h_dim);
    Eigen::MatrixXd T = Eigen::MatrixXd::Identity(d, d);
    const double h = 1.0 / double(m);
    Eigen::Index k = std::min<Eigen::Index>(static_cast<Eigen::Index>(std::floor(s0 * m)), m - 1);
    for (; k < m && k * h < s1; ++k) {
      const double a = std::max(s0, k * h), b = std::min(s1, (k + 1) * h);
      if (b <= a) continue;
      if (a == k * h && b == (k + 1) * h) {
        T = steps_[k] * T;
      } else {
        const double t1 = a + kGauss1 * (b - a), t2 = a + kGauss2 * (b - a);
        T = step(spec_.eval(t1), spec_.eval(t1, 1), spec_.eval(t2), spec_.eval(t2, 1), b - a) * T;
      }
    }
    detail::check_finite(T, "transport");
    return T;
  }

  /// T(sigma_k, 1) for k = 0..m (the last one is the identity).
  std::vector<Eigen::MatrixXd> to_end() const {
    const Eigen::Index m = g_.m();
    const auto d = static_cast<Eigen::Index>(P_.h_dim);
    std::vector<Eigen::MatrixXd> out(m + 1);
    out[m] = Eigen::MatrixXd::Identity(d, d);
    for (Eigen::Index k = m - 1; k >= 0; --k) out[k] = out[k + 1] * steps_[k];
    return out;
  }

 private:
  static constexpr double kGauss1 = 0.5 - 0.28867513459481288225;  // 1/2 - sqrt(3)/6
  static constexpr double kGauss2 = 0.5 + 0.28867513459481288225;

  Eigen::MatrixXd step(const Eigen::VectorXd& x1, const Eigen::VectorXd& v1, const Eigen::VectorXd& x2,
                       const Eigen::VectorXd& v2, double h) const {
    const auto d = static_cast<Eigen::Index>(P_.h_dim);
    if (v1.isZero(0.0) && v2.isZero(0.0)) return Eigen::MatrixXd::Identity(d, d);
    const Eigen::MatrixXd A1 = P_.A(x1, v1), A2 = P_.A(x2, v2);
    detail::check_finite(A1, "connection values");
    detail::check_finite(A2, "connection values");
    const Eigen::MatrixXd omega = 0.5 * h * (A1 + A2) + (std::sqrt(3.0) / 12.0) * h * h * (A2 * A1 - A1 * A2);
    return omega.exp();
  }

  const TransportProblem& P_;
  const SampledLoop& g_;
  detail::Spectrum spec_;
  std::vector<Eigen::MatrixXd> steps_;
};

/// Path-ordered exponential of rho(A) along gamma from s0 to s1.
inline Eigen::MatrixXd transport(const TransportProblem& P, const SampledLoop& g, double s0, double s1) {
  return PreparedLoop(P, g).transport(s0, s1);
}

/// Insertions transported to the basepoint: the returned list is the tensor
/// word T(s_1,1)v_1 (x) ... (x) T(s_k,1)v_k in U h; empty means the unit.
inline std::vector<Eigen::VectorXd> v_form(const TransportProblem& P, const SampledLoop& g,
                                           const std::vector<std::pair<double, Eigen::VectorXd>>& insertions) {
  for (std::size_t i = 1; i < insertions.size(); ++i)
    require(insertions[i - 1].first <= insertions[i].first, ErrorKind::Order, "insertion positions must be sorted");
  std::vector<Eigen::VectorXd> out;
  if (insertions.empty()) return out;
  const PreparedLoop L(P, g);
  for (const auto& [s, v] : insertions) {
    require(v.size() == static_cast<Eigen::Index>(P.h_dim), ErrorKind::Structural, "insertion has the wrong dimension");
    out.push_back(L.transport(s, 1.0) * v);
  }
  return out;
}

/// Integral over sigma of T(sigma,1) B(gamma(sigma))(gamma'(sigma), dgamma(sigma)),
/// composite trapezoid on the sample grid.
inline Eigen::VectorXd connection_A0(const TransportProblem& P, const CurvingFn& B, const SampledLoop& g,
                                     const LoopTangent& dg) {
  validate_loop(g);
  require(dg.rows() == g.m() && dg.cols() == g.n(), ErrorKind::Structural, "tangent samples do not match the loop");
  detail::check_finite(dg, "loop tangent");
  const Eigen::Index m = g.m();
  const Eigen::MatrixXd vel = velocities(g);
  const PreparedLoop L(P, g);
  const std::vector<Eigen::MatrixXd> T = L.to_end();
  const auto d = static_cast<Eigen::Index>(P.h_dim);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(d);
  auto integrand = [&](Eigen::Index k) -> Eigen::VectorXd {
    const Eigen::Index r = k % m;
    Eigen::VectorXd pt = g.samples.row(r).transpose();
    if (k == m) pt += g.deck.transpose();
    const Eigen::VectorXd b = B(pt, vel.row(r).transpose(), dg.row(r).transpose());
    require(b.size() == d, ErrorKind::Structural, "curving returned a vector of the wrong size");
    return T[k] * b;
  };
  for (Eigen::Index k = 1; k < m; ++k) sum += integrand(k);
  sum += 0.5 * (integrand(0) + integrand(m));
  sum /= double(m);
  detail::check_finite(sum, "connection value");
  return sum;
}

/// Spectral tau-derivative of a sampled surface, one m x n block per tau_j.
inline std::vector<Eigen::MatrixXd> tau_derivative(const SampledSurface& f) {
  const Eigen::Index p = f.p(), m = f.m(), n = f.n();
  std::vector<Eigen::MatrixXd> out(p, Eigen::MatrixXd(m, n));
  for (Eigen::Index i = 0; i < m; ++i) {
    Eigen::MatrixXd col(p, n);
    for (Eigen::Index j = 0; j < p; ++j) col.row(j) = f.rows[j].row(i);
    const Eigen::MatrixXd d = detail::Spectrum(col, f.deck_tau).derivative();
    for (Eigen::Index j = 0; j < p; ++j) out[j].row(i) = d.row(j);
  }
  return out;
}

inline void validate_surface(const SampledSurface& f) {
  require(f.p() >= 8 && f.m() >= 8, ErrorKind::Structural, "a sampled surface needs at least 8 x 8 samples");
  require(f.deck_sigma.size() == f.n() && f.deck_tau.size() == f.n(), ErrorKind::Structural,
          "deck translations have the wrong dimension");
  for (const auto& r : f.rows) {
    require(r.rows() == f.m() && r.cols() == f.n(), ErrorKind::Structural, "ragged surface samples");
    detail::check_finite(r, "surface samples");
  }
}

/// f as a loop of loops; integral over tau of connection_A0(gamma_tau, d_tau gamma_tau).
inline Eigen::VectorXd surface_holonomy(const TransportProblem& P, const CurvingFn& B, const SampledSurface& f) {
  require(P.h_abelian, ErrorKind::Unsupported, "surface holonomy needs an abelian h");
  validate_surface(f);
  const Eigen::Index p = f.p();
  const std::vector<Eigen::MatrixXd> dtau = tau_derivative(f);
  std::vector<Eigen::VectorXd> vals(p);
  for (Eigen::Index j = 0; j < p; ++j) vals[j] = connection_A0(P, B, f.loop(j), dtau[j]);
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(P.h_dim));
  for (Eigen::Index j = 1; j < p; ++j) sum += vals[j];
  // tau = 1 is the tau = 0 loop moved by the deck translation
  Eigen::VectorXd last = vals[0];
  if (!f.deck_tau.isZero(0.0)) {
    SampledLoop shifted = f.loop(0);
    shifted.samples.rowwise() += f.deck_tau;
    last = connection_A0(P, B, shifted, dtau[0]);
  }
  sum += 0.5 * (vals[0] + last);
  return sum / double(p);
}

/// Numeric connection and curving of an MC pair: rho(A) through the L0
/// action on L_{-1}, B by pointwise evaluation.
struct NumericPair {
  TransportProblem P;
  CurvingFn B;
};

/// [h,k] = l2(l1 h, k) vanishes for all h, k.
inline bool h_is_abelian(const TwoTermLinf& T) {
  for (std::size_t h = 0; h < T.n1; ++h)
    for (std::size_t k = 0; k < T.n1; ++k)
      if (!is_zero(T.act(T.l1.column(h), unit_vector(T.n1, k)))) return false;
  return true;
}

inline NumericPair numeric_pair(const MCPair& pair) {
  check_pair(pair);
  const auto n0 = pair.T.n0, n1 = pair.T.n1;
  std::vector<Eigen::MatrixXd> rho(n0, Eigen::MatrixXd(n1, n1));
  for (std::size_t i = 0; i < n0; ++i)
    for (std::size_t a = 0; a < n1; ++a)
      for (std::size_t b = 0; b < n1; ++b) rho[i](a, b) = pair.T.l2_0m1[i](a, b).get_d();
  const PolyForm A = pair.A, Bf = pair.B;
  auto to_std = [](const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); };
  NumericPair out;
  out.P.h_dim = n1;
  out.P.h_abelian = h_is_abelian(pair.T);
  out.P.A = [A, rho, n1, to_std](const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
    const std::vector<double> a = A.evaluate(to_std(x), {to_std(v)});
    Eigen::MatrixXd M = Eigen::MatrixXd::Zero(n1, n1);
    for (std::size_t i = 0; i < a.size(); ++i)
      if (a[i] != 0.0) M += a[i] * rho[i];
    return M;
  };
  out.B = [Bf, to_std](const Eigen::VectorXd& x, const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
    const std::vector<double> b = Bf.evaluate(to_std(x), {to_std(u), to_std(w)});
    return Eigen::VectorXd(Eigen::Map<const Eigen::VectorXd>(b.data(), b.size()));
  };
  return out;
}

struct FlatnessResult {
  bool maurer_cartan = false;
  std::vector<Eigen::VectorXd> holonomy;
  std::vector<double> residual;  // Euclidean norms
};

/// surface_holonomy over a family of (shrinking) torus maps, together with
/// the symbolic MC verdict of the pair.
inline FlatnessResult flatness_residual(const MCPair& pair, const std::vector<SampledSurface>& family) {
  FlatnessResult r;
  r.maurer_cartan = is_maurer_cartan(pair).ok;
  const NumericPair np = numeric_pair(pair);
  for (const auto& f : family) {
    r.holonomy.push_back(surface_holonomy(np.P, np.B, f));
    r.residual.push_back(r.holonomy.back().norm());
  }
  return r;
}

/// Samples f(tau_j, sigma_i) = fn(j/p, i/m).
template <class F>
SampledSurface sample_surface(F fn, Eigen::Index p, Eigen::Index m, Eigen::RowVectorXd deck_sigma,
                              Eigen::RowVectorXd deck_tau) {
  SampledSurface s;
  s.deck_sigma = std::move(deck_sigma);
  s.deck_tau = std::move(deck_tau);
  for (Eigen::Index j = 0; j < p; ++j) {
    Eigen::MatrixXd r(m, s.deck_sigma.size());
    for (Eigen::Index i = 0; i < m; ++i) r.row(i) = fn(double(j) / double(p), double(i) / double(m));
    s.rows.push_back(std::move(r));
  }
  return s;
}

template <class F>
SampledLoop sample_loop(F fn, Eigen::Index m, Eigen::RowVectorXd deck, bool sitting = false) {
  Eigen::MatrixXd s(m, deck.size());
  for (Eigen::Index i = 0; i < m; ++i) s.row(i) = fn(double(i) / double(m));
  return SampledLoop(std::move(s), std::move(deck), sitting);
}

}  // namespace holonomy2
