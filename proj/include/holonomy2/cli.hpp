#pragma once

// Command-line front end. run() is the whole program; tools/holonomy2.cpp
// only forwards argv. Exit codes: 0 all checks pass, 1 a check failed,
// 2 usage error, 3 malformed input.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "holonomy2/io.hpp"

#ifndef HOLONOMY2_FIXTURE_DIR
#define HOLONOMY2_FIXTURE_DIR "fixtures"
#endif

namespace holonomy2::cli {

using io::json;

inline constexpr const char* kSchema = "holonomy2/report-v1";

class Run {
 public:
  explicit Run(std::vector<std::string> args) {
    report_["schema"] = kSchema;
    report_["command"] = std::move(args);
    report_["inputs"] = json::array();
    report_["checks"] = json::array();
  }

  std::string input(const std::string& path) {
    const std::string bytes = io::read_bytes(path);
    report_["inputs"].push_back({{"path", path}, {"digest", "fnv1a64:" + io::digest(bytes)}});
    return bytes;
  }
  json input_json(const std::string& path) {
    const std::string bytes = input(path);
    try {
      return json::parse(bytes);
    } catch (const json::exception& e) {
      fail(ErrorKind::Schema, path + ": " + e.what());
    }
  }

  void check(const std::string& name, bool pass, json detail = json::object()) {
    json c;
    c["name"] = name;
    c["status"] = pass ? "pass" : "fail";
    for (auto& [k, v] : detail.items()) c[k] = v;
    report_["checks"].push_back(std::move(c));
    ok_ = ok_ && pass;
  }

  json& result() { return report_["result"]; }

  void time(const std::string& what, double seconds) { timings_[what] = seconds; }

  int finish(std::ostream& out, bool with_timings) {
    report_["status"] = ok_ ? "pass" : "fail";
    if (with_timings) report_["timings"] = timings_;
    out << report_.dump(2) << "\n";
    return ok_ ? 0 : 1;
  }

  int error(std::ostream& out, const std::string& kind, const std::string& message, int code) {
    report_["status"] = "error";
    report_["error"] = {{"kind", kind}, {"message", message}};
    out << report_.dump(2) << "\n";
    return code;
  }

 private:
  json report_;
  json timings_ = json::object();
  bool ok_ = true;
};

inline json violations_json(const Report& r) {
  json a = json::array();
  for (const auto& v : r.violations)
    a.push_back({{"kind", v.kind}, {"indices", v.indices}, {"residual", to_string(v.residual)}});
  return a;
}

inline std::string form_string(const PolyForm& w) { return w.is_zero() ? "0" : to_string(w); }

// ---------------------------------------------------------------------------
// Commands.

inline void crossed_validate(Run& run, const std::string& path) {
  const CrossedModule X = io::crossed_module(run.input_json(path));
  const Report r = validate_crossed_module(X);
  run.check("crossed module axioms", r.ok(), {{"violations", violations_json(r)}});
}

inline void crossed_skeletal(Run& run, const std::string& path) {
  const CrossedModule X = io::crossed_module(run.input_json(path));
  const Report r = validate_crossed_module(X);
  run.check("crossed module axioms", r.ok(), {{"violations", violations_json(r)}});
  if (!r.ok()) return;
  const SkeletalModel sk = skeletal_model(X);
  const Triplet& t = sk.triplet;
  run.check("gamma closed", is_cocycle(t.gbar, t.V, 3, t.gamma));
  json& res = run.result();
  res["gbar"] = io::to_json(t.gbar);
  res["V_dim"] = t.V.dim;
  json act = json::array();
  for (const auto& m : t.V.action) act.push_back(io::to_json(m));
  res["V_action"] = act;
  res["gamma"] = io::to_json(t.gamma);
  res["phi2"] = io::to_json(sk.phi2);
  res["class_zero"] = is_coboundary(t.gbar, t.V, 3, t.gamma);
  res["h3_dim"] = ce_cohomology(t.gbar, t.V, 3).betti;
}

inline void crossed_splice(Run& run, const std::string& path) {
  const io::SpliceInput s = io::splice_input(run.input_json(path));
  const CrossedModule X = splice_crossed_module(s.gbar, s.ses, s.alpha);
  const Report r = validate_crossed_module(X);
  run.check("splice is a crossed module", r.ok(), {{"violations", violations_json(r)}});
  const QVector via_ses = connecting_map(s.gbar, s.ses, s.alpha);
  const SkeletalModel sk = skeletal_model(X);
  const bool same_gbar = sk.triplet.gbar == s.gbar;
  run.check("cokernel is the base algebra", same_gbar);
  if (same_gbar) {
    const QVector via_skeletal = values_in(sk.gamma_h, s.ses.incl);
    run.check("class equals connecting map", same_class(s.gbar, s.ses.V, 3, via_skeletal, via_ses),
              {{"skeletal", io::to_json(via_skeletal)}, {"connecting", io::to_json(via_ses)}});
  }
  run.result()["crossed_module"] = io::to_json(X);
  run.result()["class_zero"] = is_coboundary(s.gbar, s.ses.V, 3, via_ses);
}

inline void crossed_compare(Run& run, const std::string& path) {
  const json j = run.input_json(path);
  const CrossedModule X = io::crossed_module(io::field(j, "X"));
  const CrossedModule Y = io::crossed_module(io::field(j, "Y"));
  ElementaryEquivalence E{io::matrix(io::field(j, "phi"), Y.h.dim, X.h.dim),
                          io::matrix(io::field(j, "psi"), Y.g.dim, X.g.dim)};
  const Report r = check_elementary_equivalence(X, Y, E);
  run.check("elementary equivalence", r.ok(), {{"violations", violations_json(r)}});
}

inline void forms_check_mc(Run& run, const std::string& path, const std::string& expect) {
  const MCPair p = io::mc_pair(run.input_json(path));
  const MCResult r = is_maurer_cartan(p);
  const bool want = expect == "mc";
  run.check(want ? "maurer-cartan" : "not maurer-cartan", r.ok == want,
            {{"fake_curvature", form_string(r.fake)}, {"three_curvature", form_string(r.three)}});
}

inline void holonomy(Run& run, const std::string& pair_path, const std::string& surface_path,
                     const std::string& grid, const std::vector<double>& expect, double rtol) {
  const MCPair p = io::mc_pair(run.input_json(pair_path));
  const std::string bytes = run.input(surface_path);
  const SampledSurface f = surface_path.size() >= 5 && surface_path.substr(surface_path.size() - 5) == ".json"
                               ? io::surface_json(json::parse(bytes))
                               : io::read_surface_binary(bytes);
  if (!grid.empty()) {
    const auto x = grid.find('x');
    require(x != std::string::npos, ErrorKind::Schema, "grid must look like PxM");
    long gp = 0, gm = 0;
    try {
      gp = std::stol(grid.substr(0, x));
      gm = std::stol(grid.substr(x + 1));
    } catch (const std::exception&) {
      fail(ErrorKind::Schema, "grid must look like PxM");
    }
    require(gp == f.p() && gm == f.m(), ErrorKind::Schema, "surface grid is " + std::to_string(f.p()) + "x" +
                                                               std::to_string(f.m()) + ", not " + grid);
  }
  require(f.n() == static_cast<Eigen::Index>(p.A.chart_dim()), ErrorKind::Schema,
          "surface lives in a different dimension than the pair");
  const NumericPair np = numeric_pair(p);
  const auto t0 = std::chrono::steady_clock::now();
  const Eigen::VectorXd H = surface_holonomy(np.P, np.B, f);
  run.time("surface_holonomy", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  std::vector<double> h(H.data(), H.data() + H.size());
  run.result()["holonomy"] = h;
  run.result()["grid"] = {f.p(), f.m()};
  if (!expect.empty()) {
    require(expect.size() == h.size(), ErrorKind::Schema, "expected value has the wrong dimension");
    double num = 0, den = 0;
    for (std::size_t i = 0; i < h.size(); ++i) {
      num += (h[i] - expect[i]) * (h[i] - expect[i]);
      den += expect[i] * expect[i];
    }
    const double rel = std::sqrt(num) / std::max(std::sqrt(den), 1e-300);
    run.check("holonomy matches expected", rel <= rtol, {{"relative_error", rel}, {"rtol", rtol}});
  }
}

inline void hochschild_check_cycle(Run& run, const std::string& dga_path, const std::string& elt,
                                   std::size_t trunc, const std::string& expect) {
  const FinDGA A = io::dga(run.input_json(dga_path));
  const Report v = validate_dga(A);
  run.check("dga axioms", v.ok(), {{"violations", violations_json(v)}});
  if (!v.ok()) return;
  const QVector a = io::element(elt, A);
  const bool mc = is_mc_element(a, A);
  const auto comps = cycle_defect(a, A, trunc);
  bool cycle = true;
  json lengths = json::array();
  for (std::size_t ell = 0; ell < comps.size(); ++ell) {
    lengths.push_back({{"length", ell}, {"terms", comps[ell].terms.size()}});
    cycle = cycle && comps[ell].is_zero();
  }
  run.result()["maurer_cartan"] = mc;
  run.result()["curvature"] = io::to_json(mc_curvature(a, A));
  run.result()["defect"] = lengths;
  run.check("cycle iff maurer-cartan", cycle == mc);
  const bool want = expect == "cycle";
  run.check(want ? "cycle" : "not a cycle", cycle == want);
}

inline FinSimpSet model(const std::string& name, std::size_t cutoff, Run& run) {
  if (name == "circle") return circle_model(cutoff);
  if (name == "torus") return product_model(circle_model(cutoff), circle_model(cutoff));
  const FinSimpSet Y = io::simpset(run.input_json(name));
  require(Y.cutoff >= cutoff, ErrorKind::Schema, "simplicial set file has a lower cutoff than requested");
  return Y;
}

inline void hh_d2_check(Run& run, const std::string& model_name, std::size_t cutoff, const std::string& dga_path,
                        std::size_t samples, std::uint64_t seed) {
  const FinDGA A = io::dga(run.input_json(dga_path));
  require(validate_dga(A).ok(), ErrorKind::Validation, "input is not a DGA");
  const FinSimpSet Y = model(model_name, cutoff, run);
  const Report sv = validate_simplicial(Y);
  run.check("simplicial identities", sv.ok(), {{"violations", violations_json(sv)}});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, A.dim() - 1), level(1, cutoff);
  std::uniform_int_distribution<int> coef(-3, 3);
  std::size_t failures = 0, nontrivial = 0;
  const auto t0 = std::chrono::steady_clock::now();
  for (std::size_t s = 0; s < samples; ++s) {
    const std::size_t k = level(rng);
    HHYChain c;
    for (int t = 0; t < 3; ++t) {
      HochChain::Word w(Y.size(k));
      for (auto& x : w) x = pick(rng);
      c.add(k, w, coef(rng));
    }
    const HHYChain dc = higher_D(c, Y, A);
    if (!dc.is_zero()) ++nontrivial;
    if (!higher_D(dc, Y, A).is_zero()) ++failures;
  }
  run.time("d2", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
  run.check("D squared is zero", failures == 0,
            {{"samples", samples}, {"failures", failures}, {"nontrivial", nontrivial}, {"seed", seed}});
}

inline void hh_compare_circle(Run& run, const std::string& dga_path, std::size_t max_length) {
  const FinDGA A = io::dga(run.input_json(dga_path));
  require(validate_dga(A).ok(), ErrorKind::Validation, "input is not a DGA");
  const FinSimpSet S = circle_model(std::max<std::size_t>(max_length, 1));
  std::vector<HochChain::Word> words{{}};
  std::size_t compared = 0, mismatches = 0;
  for (std::size_t len = 1; len <= max_length + 1; ++len) {
    std::vector<HochChain::Word> next;
    for (const auto& w : words)
      for (std::size_t x = 0; x < A.dim(); ++x) {
        auto v = w;
        v.push_back(x);
        next.push_back(std::move(v));
      }
    words = std::move(next);
    for (const auto& w : words) {
      HochChain c;
      c.add(w, 1);
      ++compared;
      if (!(higher_D(to_circle(c, A), S, A) == to_circle(hochschild_d(c, A), A))) ++mismatches;
    }
  }
  run.check("circle model equals hochschild_d", mismatches == 0,
            {{"words", compared}, {"mismatches", mismatches}, {"max_length", max_length}});
}

// ---------------------------------------------------------------------------
// selftest: built-in invariant checks plus the fixture manifest.

struct NamedCheck {
  std::string name;
  std::function<bool(std::mt19937_64&)> run;
};

inline std::vector<NamedCheck> builtin_checks() {
  std::vector<NamedCheck> c;
  auto add = [&](std::string n, std::function<bool(std::mt19937_64&)> f) { c.push_back({std::move(n), std::move(f)}); };
  add("lie: abelian and sl2 are valid", [](auto&) {
    return validate_lie_algebra(abelian(2)).ok() && validate_lie_algebra(sl2()).ok();
  });
  add("lie: one-sided sign flip is reported", [](auto&) {
    LieAlgebra L = sl2();
    L.at(0, 1, 1) = -L.at(0, 1, 1);
    return validate_lie_algebra(L).has("antisymmetry", {0, 1, 1});
  });
  add("ce: betti numbers of abelian(1) and sl2", [](auto&) {
    const LieAlgebra s = sl2();
    return ce_cohomology(abelian(1), trivial_module(abelian(1), 1), 1).betti == 1 &&
           ce_cohomology(s, trivial_module(s, 1), 3).betti == 1 && ce_cohomology(s, trivial_module(s, 1), 1).betti == 0;
  });
  add("connecting map: nonzero class on the nilpotent sequence", [](auto&) {
    QVector alpha = zeros(3);
    alpha[0] = 1;
    const LieAlgebra L = abelian(3);
    return !is_coboundary(L, nilpotent_ses().V, 3, connecting_map(L, nilpotent_ses(), alpha));
  });
  add("crossed: identity and mu = 0 examples are valid", [](auto&) {
    return validate_crossed_module(identity_crossed(sl2())).ok() &&
           validate_crossed_module(zero_crossed(aff1(), adjoint_module(aff1()))).ok();
  });
  add("crossed: random strict Lie 2-algebra round trips", [](std::mt19937_64& rng) {
    for (int i = 0; i < 10; ++i) {
      const CrossedModule X = random_crossed_module(rng);
      const StrictLie2 S = to_strict_lie2(X);
      if (!validate_strict_lie2(S).ok()) return false;
      const CrossedModule Y = from_strict_lie2(S);
      if (!validate_crossed_module(Y).ok() || Y.h.dim != X.h.dim || !(Y.g == X.g)) return false;
    }
    return true;
  });
  add("crossed: outer action of abelian h is genuine", [](std::mt19937_64&) {
    return outer_action(heisenberg_extension_crossed()).genuine && outer_action(identity_crossed(sl2())).s.empty();
  });
  add("skeletal: identity module has zero gamma", [](auto&) {
    const SkeletalModel sk = skeletal_model(identity_crossed(heisenberg()));
    return sk.triplet.gbar.dim == 0 && is_zero(sk.triplet.gamma);
  });
  add("skeletal: heisenberg extension matches its splice data", [](auto&) {
    const CrossedModule X = heisenberg_extension_crossed();
    const SkeletalModel sk = skeletal_model(X);
    const SpliceData d = abelian_splice_data(X);
    return same_class(d.gbar, d.ses.V, 3, connecting_map(d.gbar, d.ses, d.alpha), sk.triplet.gamma);
  });
  add("linf: crossed modules and triplets give valid 2-term algebras", [](std::mt19937_64& rng) {
    for (int i = 0; i < 5; ++i) {
      const CrossedModule X = random_crossed_module(rng);
      if (!validate_linf(from_crossed(X)).ok()) return false;
      const TwoTermLinf T = from_triplet(extract_triplet(X));
      if (!validate_linf(T).ok() || !is_skeletal(T)) return false;
    }
    return true;
  });
  add("forms: d squared vanishes", [](std::mt19937_64& rng) {
    std::uniform_int_distribution<int> e(0, 3), c(-3, 3);
    for (int t = 0; t < 20; ++t) {
      PolyForm w(3, Component::L0, 2);
      for (int k = 0; k < 4; ++k) w.add(c(rng), {e(rng), e(rng), e(rng)}, {std::size_t(t % 3)}, std::size_t(k % 2));
      if (!d(d(w)).is_zero()) return false;
    }
    return true;
  });
  add("forms: three-curvature vanishes in chart dimension 2", [](auto&) {
    TwoTermLinf T(1, 1);
    T.l2_0m1[0](0, 0) = 1;
    PolyForm A(2, Component::L0, 1), B(2, Component::Lm1, 1);
    A.add(1, {1, 0}, {1}, 0);
    B.add(1, {0, 2}, {0, 1}, 0);
    return three_curvature(MCPair{T, A, B}).is_zero();
  });
  add("loop space: constant transport matches the exponential series", [](auto&) {
    Eigen::MatrixXd M(2, 2);
    M << 0.3, -0.7, 0.5, 0.1;
    TransportProblem P;
    P.h_dim = 2;
    P.A = [M](const Eigen::VectorXd&, const Eigen::VectorXd& v) { return Eigen::MatrixXd(v[0] * M); };
    const SampledLoop g = sample_loop([](double t) { return Eigen::RowVectorXd::Constant(1, t); }, 512,
                                      Eigen::RowVectorXd::Constant(1, 1.0));
    Eigen::MatrixXd series = Eigen::MatrixXd::Identity(2, 2), term = series;
    for (int k = 1; k <= 20; ++k) {
      term = term * M / double(k);
      series += term;
    }
    return (transport(P, g, 0, 1) - series).norm() < 1e-9;
  });
  add("loop space: abelian winding patch", [](auto&) {
    constexpr double tau = 6.283185307179586;
    const SampledSurface f = sample_surface(
        [&](double t, double s) {
          return Eigen::RowVector2d(s + 0.1 * std::sin(tau * (s + t)), t + 0.1 * std::cos(tau * s));
        },
        128, 128, Eigen::RowVector2d(1, 0), Eigen::RowVector2d(0, 1));
    TransportProblem P;
    P.A = [](const Eigen::VectorXd&, const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(1, 1); };
    const CurvingFn B = [](const Eigen::VectorXd&, const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
      return Eigen::VectorXd::Constant(1, u[0] * w[1] - u[1] * w[0]);
    };
    return std::abs(surface_holonomy(P, B, f)[0] - 1.0) < 1e-4;
  });
  add("hochschild: D squared and the cycle criterion", [](std::mt19937_64& rng) {
    const FinDGA A = tensor_dga(ce_dga(aff1()), matrix_units(2));
    std::uniform_int_distribution<std::size_t> pick(0, A.dim() - 1);
    for (int t = 0; t < 20; ++t) {
      HochChain c;
      HochChain::Word w{pick(rng), pick(rng), pick(rng)};
      c.add(w, 1);
      if (!hochschild_d(hochschild_d(c, A), A).is_zero()) return false;
    }
    const FinDGA T = truncated_dga(Rational(-1));
    for (const auto& comp : cycle_defect(unit_vector(3, 1), T, 6))
      if (!comp.is_zero()) return false;
    return !is_mc_element(unit_vector(3, 1), truncated_dga(Rational(0)));
  });
  add("simplicial: circle and torus models", [](auto&) {
    const FinSimpSet S = circle_model(6), T = product_model(S, S);
    return validate_simplicial(S).ok() && validate_simplicial(T).ok() && T.size(2) == 9;
  });
  add("simplicial: circle model reproduces hochschild_d", [](auto&) {
    const FinDGA A = small_cdga(Rational(2));
    const FinSimpSet S = circle_model(3);
    std::vector<HochChain::Word> words{{}};
    for (int len = 1; len <= 3; ++len) {
      std::vector<HochChain::Word> next;
      for (const auto& w : words)
        for (std::size_t x = 0; x < 3; ++x) {
          auto v = w;
          v.push_back(x);
          next.push_back(v);
        }
      words = std::move(next);
      for (const auto& w : words) {
        HochChain c;
        c.add(w, 1);
        if (!(higher_D(to_circle(c, A), S, A) == to_circle(hochschild_d(c, A), A))) return false;
      }
    }
    return true;
  });
  add("connecting map: zero quotient gives zero", [](auto&) {
    const LieAlgebra L = aff1();
    const ModuleSES s{adjoint_module(L), adjoint_module(L), trivial_module(L, 0), QMatrix::identity(2), QMatrix(0, 2)};
    return is_zero(connecting_map(L, s, QVector{}));
  });
  add("connecting map: split sequence gives a coboundary", [](auto&) {
    const LieAlgebra L = heisenberg();
    const ModuleSES s{trivial_module(L, 1), trivial_module(L, 2), trivial_module(L, 1),
                      QMatrix::from_rows({{1}, {0}}, 1), QMatrix::from_rows({{0, 1}}, 2)};
    QVector alpha = zeros(3);
    alpha[Subsets(3, 2).rank({0, 2})] = 1;
    return is_coboundary(L, s.V, 3, connecting_map(L, s, alpha));
  });
  add("crossed: mu = 0 on sl2 with trivial action fails peiffer (b)", [](auto&) {
    const CrossedModule X{sl2(), abelian(1), QMatrix(1, 3), {QMatrix(3, 3)}};
    return validate_crossed_module(X).has("peiffer (b)");
  });
  add("strict: identity module has t(h, g) = h + g", [](auto&) {
    const StrictLie2 S = to_strict_lie2(identity_crossed(sl2()));
    QMatrix t(3, 6);
    for (std::size_t k = 0; k < 3; ++k) t(k, k) = t(k, 3 + k) = 1;
    return S.t == t && validate_strict_lie2(S).ok();
  });
  add("strict: mu = 0 gives s = t on an abelian arrow algebra", [](auto&) {
    const LieAlgebra g = abelian(1);
    const StrictLie2 S = to_strict_lie2(zero_crossed(g, trivial_module(g, 1)));
    return S.arrows.dim == 2 && S.arrows.is_abelian() && S.s == S.t;
  });
  add("strict: t = s gives mu = 0", [](auto&) {
    const LieAlgebra g = aff1();
    return from_strict_lie2(to_strict_lie2(zero_crossed(g, adjoint_module(g)))).mu.is_zero();
  });
  add("outer action: mu = 0 returns the given action", [](auto&) {
    const LieAlgebra g = aff1();
    const LieModule V = adjoint_module(g);
    const OuterAction o = outer_action(zero_crossed(g, V));
    return o.genuine && o.s == V.action;
  });
  add("skeletal: split quotient gives phi2 = 0 and gamma = 0", [](auto&) {
    const LieModule std2{2, {QMatrix::from_rows({{1, 0}, {0, -1}}, 2), QMatrix::from_rows({{0, 1}, {0, 0}}, 2),
                             QMatrix::from_rows({{0, 0}, {1, 0}}, 2)}};
    const SkeletalModel sk = skeletal_model(zero_crossed(sl2(), std2));
    return is_zero(sk.phi2) && is_zero(sk.triplet.gamma);
  });
  add("splice: alpha = 0 on a split sequence has class 0", [](auto&) {
    const LieAlgebra L = heisenberg();
    const ModuleSES s{trivial_module(L, 1), trivial_module(L, 2), trivial_module(L, 1),
                      QMatrix::from_rows({{1}, {0}}, 1), QMatrix::from_rows({{0, 1}}, 2)};
    const SkeletalModel sk = skeletal_model(splice_crossed_module(L, s, zeros(3)));
    return is_coboundary(sk.triplet.gbar, sk.triplet.V, 3, sk.triplet.gamma);
  });
  add("splice: Q = 0 gives mu = 0 and class 0", [](auto&) {
    const LieAlgebra L = aff1();
    const ModuleSES s{adjoint_module(L), adjoint_module(L), trivial_module(L, 0), QMatrix::identity(2), QMatrix(0, 2)};
    const CrossedModule X = splice_crossed_module(L, s, QVector{});
    const SkeletalModel sk = skeletal_model(X);
    return X.mu.is_zero() && is_coboundary(sk.triplet.gbar, sk.triplet.V, 3, sk.triplet.gamma);
  });
  add("splice: nonzero class survives the round trip", [](auto&) {
    QVector alpha = zeros(3);
    alpha[0] = 1;
    const LieAlgebra L = abelian(3);
    const ModuleSES s = nilpotent_ses();
    const SkeletalModel sk = skeletal_model(splice_crossed_module(L, s, alpha));
    const QVector g = connecting_map(L, s, alpha);
    return same_class(L, s.V, 3, values_in(sk.gamma_h, s.incl), g) && !is_coboundary(L, s.V, 3, g);
  });
  add("equivalence: identity maps and natural maps to the splice", [](auto&) {
    const CrossedModule X = heisenberg_extension_crossed();
    const SpliceData d = abelian_splice_data(X);
    const CrossedModule Y = splice_crossed_module(d.gbar, d.ses, d.alpha);
    const QMatrix psi = QMatrix::from_rows({{0, 0, 1}, {1, 0, 0}, {0, 1, 0}}, 3);
    return check_elementary_equivalence(X, X, {QMatrix::identity(2), QMatrix::identity(3)}).ok() &&
           check_elementary_equivalence(X, Y, {QMatrix::identity(2), psi}).ok();
  });
  add("equivalence: sign-flipped phi fails action compatibility", [](auto&) {
    const CrossedModule X = heisenberg_extension_crossed();
    QMatrix phi = QMatrix::identity(2);
    phi(0, 0) = -1;
    return check_elementary_equivalence(X, X, {phi, QMatrix::identity(3)}).has("action compatibility");
  });
  add("linf: skeletal flags", [](auto&) {
    const LieAlgebra g = aff1();
    return !is_skeletal(from_crossed(identity_crossed(g))) && is_skeletal(from_crossed(zero_crossed(g, adjoint_module(g)))) &&
           is_skeletal(from_triplet(skeletal_model(heisenberg_extension_crossed()).triplet));
  });
  add("linf: perturbed l3 fails coherence", [](auto&) {
    QVector alpha = zeros(3);
    alpha[0] = 1;
    TwoTermLinf T = from_triplet(skeletal_model(splice_crossed_module(abelian(3), nilpotent_ses(), alpha)).triplet);
    if (!validate_linf(T).ok()) return false;
    const LieAlgebra L = direct_sum(aff1(), aff1());
    const LieModule V = trivial_module(L, 1);
    for (std::size_t r = 0; r < 4; ++r) {
      const QVector delta = unit_vector(4, r);
      if (is_cocycle(L, V, 3, delta)) continue;
      T = from_triplet(Triplet{L, V, zeros(4)});
      T.set_l3_from_cochain(delta);
      return validate_linf(T).has("(e) coherence");
    }
    return false;
  });
  add("forms: exterior derivative examples", [](auto&) {
    PolyForm w(2, Component::L0, 1), e(2, Component::L0, 1);
    w.add(1, {1, 0}, {1}, 0);
    e.add(1, {0, 0}, {0, 1}, 0);
    PolyForm c(3, Component::L0, 1);
    c.add(Rational(5, 7), {0, 0, 0}, {}, 0);
    PolyForm z(3, Component::L0, 1), dz(3, Component::L0, 1);
    z.add(1, {2, 1, 0}, {2}, 0);
    dz.add(2, {1, 1, 0}, {0, 2}, 0);
    dz.add(1, {2, 0, 0}, {1, 2}, 0);
    return d(w) == e && d(c).is_zero() && d(z) == dz;
  });
  add("forms: bracket examples", [](auto&) {
    const TwoTermLinf ab = linf_from_lie(abelian(2));
    PolyForm A(2, Component::L0, 2);
    A.add(1, {0, 0}, {0}, 1);
    const LieAlgebra L = sl2();
    PolyForm a(2, Component::L0, 3), b(2, Component::L0, 3), e(2, Component::L0, 3);
    a.add(1, {1, 0}, {0}, 1);
    b.add(1, {0, 1}, {1}, 2);
    const QVector br = L.bracket_basis(1, 2);
    for (std::size_t k = 0; k < 3; ++k)
      if (sgn(br[k]) != 0) e.add(br[k], {1, 1}, {0, 1}, k);
    return wedge_l2(A, A, ab).is_zero() && wedge_l2(a, b, linf_from_lie(L)) == e;
  });
  add("forms: fake curvature of A = x dy with mu = 0 is dx^dy", [](auto&) {
    const TwoTermLinf T = from_crossed(zero_crossed(abelian(1), trivial_module(abelian(1), 1)));
    MCPair p{T, PolyForm(2, Component::L0, 1), PolyForm(2, Component::Lm1, 1)};
    if (!is_maurer_cartan(p).ok) return false;
    p.A.add(1, {1, 0}, {1}, 0);
    PolyForm e(2, Component::L0, 1);
    e.add(1, {0, 0}, {0, 1}, 0);
    const MCResult r = is_maurer_cartan(p);
    return !r.ok && r.fake == e;
  });
  add("forms: closed B with A = 0 has no three-curvature", [](auto&) {
    const TwoTermLinf T = from_crossed(zero_crossed(abelian(1), trivial_module(abelian(1), 1)));
    MCPair p{T, PolyForm(3, Component::L0, 1), PolyForm(3, Component::Lm1, 1)};
    PolyForm a(3, Component::Lm1, 1);
    a.add(1, {1, 2, 0}, {2}, 0);
    p.B = d(a);
    return three_curvature(p).is_zero();
  });
  add("forms: gl(1) pair A = c dx, B = beta dx^dy is maurer-cartan", [](auto&) {
    TwoTermLinf G(1, 1);
    G.l2_0m1[0](0, 0) = 1;
    MCPair p{G, PolyForm(2, Component::L0, 1), PolyForm(2, Component::Lm1, 1)};
    p.A.add(Rational(3, 2), {0, 0}, {0}, 0);
    p.B.add(1, {2, 1}, {0, 1}, 0);
    p.B.add(-4, {0, 3}, {0, 1}, 0);
    return is_maurer_cartan(p).ok;
  });
  add("loop space: transport examples", [](auto&) {
    const SampledLoop g = sample_loop(
        [](double t) {
          return Eigen::RowVector2d(std::cos(6.283185307179586 * t), 0.8 * std::sin(6.283185307179586 * t));
        },
        256, Eigen::RowVector2d::Zero());
    TransportProblem zero{[](const Eigen::VectorXd&, const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(2, 2).eval(); },
                          2, true};
    TransportProblem cdx{[](const Eigen::VectorXd&, const Eigen::VectorXd& v) { return Eigen::MatrixXd::Constant(1, 1, 0.7 * v[0]); },
                         1, true};
    const double x0 = std::cos(6.283185307179586 * 0.137), x1 = std::cos(6.283185307179586 * 0.911);
    Eigen::VectorXd v(2);
    v << 1.5, -2;
    const auto ins = v_form(zero, g, {{0.3, v}});
    return transport(zero, g, 0.1, 0.9).isApprox(Eigen::MatrixXd::Identity(2, 2), 0) &&
           std::abs(transport(cdx, g, 0.137, 0.911)(0, 0) - std::exp(0.7 * (x1 - x0))) < 1e-8 &&
           v_form(cdx, g, {}).empty() && ins.size() == 1 && ins[0].isApprox(v);
  });
  add("loop space: connection and surface holonomy trivial cases", [](auto&) {
    constexpr double tau = 6.283185307179586;
    const SampledLoop circle =
        sample_loop([&](double t) { return Eigen::RowVector2d(std::cos(tau * t), std::sin(tau * t)); }, 512,
                    Eigen::RowVector2d::Zero());
    TransportProblem zero{[](const Eigen::VectorXd&, const Eigen::VectorXd&) { return Eigen::MatrixXd::Zero(1, 1).eval(); },
                          1, true};
    const CurvingFn none = [](const Eigen::VectorXd&, const Eigen::VectorXd&, const Eigen::VectorXd&) {
      return Eigen::VectorXd::Zero(1).eval();
    };
    const CurvingFn area = [](const Eigen::VectorXd&, const Eigen::VectorXd& u, const Eigen::VectorXd& w) {
      return Eigen::VectorXd::Constant(1, u[0] * w[1] - u[1] * w[0]).eval();
    };
    const Eigen::MatrixXd vel = velocities(circle);
    // radial field on the unit circle: integrand -2 pi, constant
    const double radial = connection_A0(zero, area, circle, circle.samples)[0];
    SampledSurface flat;
    flat.deck_sigma = flat.deck_tau = Eigen::RowVector2d::Zero();
    for (int j = 0; j < 16; ++j) flat.rows.push_back(circle.samples);
    return connection_A0(zero, none, circle, vel).isZero(0) && connection_A0(zero, area, circle, vel).norm() < 1e-12 &&
           std::abs(radial + tau) < 1e-6 && surface_holonomy(zero, area, flat).norm() < 1e-14;
  });
  add("hochschild: unit words and a hand-expanded word", [](auto&) {
    auto word = [](HochChain::Word w) {
      HochChain c;
      c.add(std::move(w), 1);
      return c;
    };
    const FinDGA A = truncated_dga(Rational(-1));
    const FinDGA E = exterior_dga(2);
    return hochschild_d(unit_chain(A), A).is_zero() && hochschild_d(word({0, 0}), A).is_zero() &&
           hochschild_d(word({0, 1, 2}), E) == word({1, 2}) + word({0, 3}) - word({2, 1});
  });
  add("hochschild: shuffle with the unit and two letters", [](auto&) {
    auto word = [](HochChain::Word w) {
      HochChain c;
      c.add(std::move(w), 1);
      return c;
    };
    const FinDGA A = ce_dga(aff1());
    const HochChain c = word({1, 2, 3}) - word({3, 1, 1});
    return shuffle(unit_chain(A), c, A) == c && shuffle(c, unit_chain(A), A) == c &&
           shuffle(word({0, 1}), word({0, 2}), A) == word({0, 1, 2}) + word({0, 2, 1});
  });
  add("hochschild: P chain of 0 and of a nilpotent element", [](auto&) {
    auto word = [](HochChain::Word w) {
      HochChain c;
      c.add(std::move(w), 1);
      return c;
    };
    const FinDGA E = exterior_dga(1);
    return P_chain(zeros(2), E, 4) == unit_chain(E) &&
           P_chain(unit_vector(2, 1), E, 2) == word({0}) + word({0, 1}) + word({0, 1, 1}) &&
           is_mc_element(zeros(3), truncated_dga(Rational(0))) && is_mc_element(unit_vector(3, 1), truncated_dga(Rational(-1)));
  });
  add("simplicial: level sizes and the point", [](auto&) {
    const FinSimpSet S = circle_model(4), T = product_model(S, S), P = product_model(S, point_model(4));
    return S.size(0) == 1 && S.size(1) == 2 && S.size(2) == 3 && T.size(0) == 1 && T.size(1) == 4 && T.size(2) == 9 &&
           P.face == S.face && P.degen == S.degen;
  });
  add("simplicial: induced maps of the identity and the collapse", [](auto&) {
    const FinDGA A = ce_dga(heisenberg());
    const HochChain id = induced_map({0, 1, 2, 3}, 4, {0, 1, 2, 4}, A);
    const HochChain c = induced_map({0, 0, 0, 0}, 2, {0, 1, 2, 4}, A);
    return id.terms.size() == 1 && id.terms.begin()->first == HochChain::Word{0, 1, 2, 4} && c.terms.size() == 1 &&
           c.terms.begin()->first == HochChain::Word{7, 0} && c.terms.begin()->second == 1;
  });
  add("simplicial: unit chains and CH of CH units", [](auto&) {
    const FinDGA A = small_cdga(Rational(1));
    const FinSimpSet T = product_model(circle_model(3), circle_model(3));
    for (std::size_t k : {0u, 1u, 3u}) {
      HHYChain c;
      c.add(k, HochChain::Word(T.size(k), 0), 1);
      if (!higher_D(c, T, A).is_zero()) return false;
    }
    BiChain u;
    u.add({{0}, {0}}, 1);
    return hochschild_of_hochschild_D(u, ce_dga(aff1())).is_zero();
  });
  add("simplicial: D squared on random torus chains", [](std::mt19937_64& rng) {
    const FinDGA A = ce_dga(aff1());
    const FinSimpSet T = product_model(circle_model(4), circle_model(4));
    std::uniform_int_distribution<std::size_t> pick(0, A.dim() - 1);
    for (int t = 0; t < 20; ++t) {
      const std::size_t k = 1 + t % 4;
      HochChain::Word w(T.size(k));
      for (auto& x : w) x = pick(rng);
      HHYChain c;
      c.add(k, w, 1);
      if (!higher_D(higher_D(c, T, A), T, A).is_zero()) return false;
    }
    return true;
  });
  return c;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

inline void selftest(Run& run, const std::string& fixtures, std::uint64_t seed) {
  for (const auto& c : builtin_checks()) {
    std::mt19937_64 rng(seed);
    bool pass = false;
    std::string what;
    try {
      pass = c.run(rng);
    } catch (const std::exception& e) {
      what = e.what();
    }
    run.check(c.name, pass, what.empty() ? json::object() : json{{"error", what}});
  }
  const json manifest = run.input_json(fixtures + "/selftest.json");
  for (const auto& entry : io::field(manifest, "cases")) {
    std::vector<std::string> args{"holonomy2"};
    for (const auto& a : io::field(entry, "args")) {
      std::string s = a.get<std::string>();
      const auto at = s.find("{fixtures}");
      if (at != std::string::npos) s.replace(at, 10, fixtures);
      args.push_back(s);
    }
    const int want = io::field(entry, "exit").get<int>();
    std::ostringstream sink, errs;
    const int got = cli::run(args, sink, errs);
    run.check(io::field(entry, "name").get<std::string>(), got == want, {{"exit", got}, {"expected_exit", want}});
  }
}

// ---------------------------------------------------------------------------

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and numeric checks for crossed modules, L-infinity pairs, loop-space holonomy and "
               "Hochschild complexes.",
               "holonomy2"};
  app.require_subcommand(1);
  bool timings = false;
  app.add_flag("--timings", timings, "include wall-clock timings in the report");

  std::function<void(Run&)> action;
  std::string file, expect = "mc", pair, surface, grid, dga_path, element = "x", model_name = "torus",
                    fixtures = HOLONOMY2_FIXTURE_DIR, expect_cycle = "cycle";
  std::vector<double> expected;
  double rtol = 1e-4;
  std::size_t trunc = 6, cutoff = 5, samples = 100, max_length = 4;
  std::uint64_t seed = 0;

  auto* crossed = app.add_subcommand("crossed", "crossed modules of Lie algebras");
  crossed->require_subcommand(1);
  auto* cv = crossed->add_subcommand("validate", "check the crossed module axioms");
  cv->add_option("file", file, "crossed_module.json")->required();
  cv->callback([&] { action = [&](Run& r) { crossed_validate(r, file); }; });
  auto* cs = crossed->add_subcommand("skeletal", "skeletal model and 3-cocycle class");
  cs->add_option("file", file, "crossed_module.json")->required();
  cs->callback([&] { action = [&](Run& r) { crossed_skeletal(r, file); }; });
  auto* cp = crossed->add_subcommand("splice", "splice a sequence with a 2-cocycle and compare classes");
  cp->add_option("file", file, "splice input json")->required();
  cp->callback([&] { action = [&](Run& r) { crossed_splice(r, file); }; });
  auto* cc = crossed->add_subcommand("compare", "check an elementary equivalence");
  cc->add_option("file", file, "json with X, Y, phi, psi")->required();
  cc->callback([&] { action = [&](Run& r) { crossed_compare(r, file); }; });

  auto* forms = app.add_subcommand("forms", "polynomial differential forms");
  forms->require_subcommand(1);
  auto* fm = forms->add_subcommand("check-mc", "Maurer-Cartan equations of a pair");
  fm->add_option("file", file, "mc_pair.json")->required();
  fm->add_option("--expect", expect, "mc or not-mc")->check(CLI::IsMember({"mc", "not-mc"}));
  fm->callback([&] { action = [&](Run& r) { forms_check_mc(r, file, expect); }; });

  auto* hol = app.add_subcommand("holonomy", "surface holonomy of a pair over a sampled torus");
  hol->add_option("--pair", pair, "mc_pair.json")->required();
  hol->add_option("--surface", surface, "surface (.json or binary)")->required();
  hol->add_option("--grid", grid, "expected grid, PxM");
  hol->add_option("--expect", expected, "expected holonomy vector")->delimiter(',');
  hol->add_option("--rtol", rtol, "relative tolerance for --expect")->capture_default_str();
  hol->callback([&] { action = [&](Run& r) { holonomy(r, pair, surface, grid, expected, rtol); }; });

  auto* hoch = app.add_subcommand("hochschild", "Hochschild chains of a finite DGA");
  hoch->require_subcommand(1);
  auto* hc = hoch->add_subcommand("check-cycle", "is 1 + 1[x] + 1[x|x] + ... a cycle");
  hc->add_option("--dga", dga_path, "dga.json")->required();
  hc->add_option("--element", element, "odd element, e.g. x or 2*t0-t1")->capture_default_str();
  hc->add_option("--trunc", trunc, "bar length cutoff")->capture_default_str();
  hc->add_option("--expect", expect_cycle, "cycle or not-cycle")->check(CLI::IsMember({"cycle", "not-cycle"}));
  hc->callback([&] { action = [&](Run& r) { hochschild_check_cycle(r, dga_path, element, trunc, expect_cycle); }; });

  auto* hh = app.add_subcommand("hh", "higher Hochschild complexes");
  hh->require_subcommand(1);
  auto* hd = hh->add_subcommand("d2-check", "D^2 = 0 on random chains");
  hd->add_option("--model", model_name, "circle, torus or simpset.json")->capture_default_str();
  hd->add_option("--cutoff", cutoff, "simplicial cutoff")->capture_default_str();
  hd->add_option("--dga", dga_path, "commutative dga.json")->required();
  hd->add_option("--samples", samples, "random chains")->capture_default_str();
  hd->add_option("--seed", seed, "random seed")->capture_default_str();
  hd->callback([&] { action = [&](Run& r) { hh_d2_check(r, model_name, cutoff, dga_path, samples, seed); }; });
  auto* hcc = hh->add_subcommand("compare-circle", "circle model against hochschild_d on all short words");
  hcc->add_option("--dga", dga_path, "commutative dga.json")->required();
  hcc->add_option("--max-length", max_length, "longest bar length compared")->capture_default_str();
  hcc->callback([&] { action = [&](Run& r) { hh_compare_circle(r, dga_path, max_length); }; });

  auto* st = app.add_subcommand("selftest", "built-in invariant suite and shipped fixtures");
  st->add_option("--fixtures", fixtures, "fixture directory")->capture_default_str();
  st->add_option("--seed", seed, "random seed")->capture_default_str();
  st->callback([&] { action = [&](Run& r) { selftest(r, fixtures, seed); }; });

  std::vector<std::string> rev(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return 0;
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  Run run(std::vector<std::string>(args.begin() + (args.empty() ? 0 : 1), args.end()));
  try {
    action(run);
  } catch (const Error& e) {
    const bool malformed = e.kind() == ErrorKind::Schema || e.kind() == ErrorKind::Structural;
    return run.error(out, std::string(to_string(e.kind())), e.what(), malformed ? 3 : 1);
  } catch (const json::exception& e) {
    return run.error(out, "schema", e.what(), 3);
  }
  return run.finish(out, timings);
}

}  // namespace holonomy2::cli
