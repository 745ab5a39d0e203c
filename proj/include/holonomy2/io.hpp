#pragma once

// JSON and binary readers for the CLI. Rationals are strings "p/q" or JSON
// integers; matrices are lists of rows.

#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "holonomy2/crossed.hpp"
#include "holonomy2/forms.hpp"
#include "holonomy2/hochschild.hpp"
#include "holonomy2/linf.hpp"
#include "holonomy2/loopspace.hpp"
#include "holonomy2/simplicial.hpp"

namespace holonomy2::io {

using json = nlohmann::ordered_json;

inline json read_json(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), ErrorKind::Schema, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorKind::Schema, path + ": " + e.what());
  }
}

inline std::string read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(in.good(), ErrorKind::Schema, "cannot open " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// FNV-1a 64 of the file contents, as 16 hex digits.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream s;
  s << std::hex << std::setw(16) << std::setfill('0') << h;
  return s.str();
}

inline const json& field(const json& j, const char* key) {
  require(j.is_object() && j.contains(key), ErrorKind::Schema, std::string("missing field '") + key + "'");
  return j.at(key);
}

inline std::size_t as_size(const json& j, const char* what) {
  require(j.is_number_integer() && j.get<long long>() >= 0, ErrorKind::Schema,
          std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

inline Rational rational(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  require(j.is_string(), ErrorKind::Schema, "rational must be a string or an integer");
  return parse_rational(j.get<std::string>());
}

inline json to_json(const Rational& q) { return to_string(q); }

inline QVector vector(const json& j, std::size_t n) {
  require(j.is_array() && j.size() == n, ErrorKind::Schema, "expected a vector of length " + std::to_string(n));
  QVector v;
  for (const auto& x : j) v.push_back(rational(x));
  return v;
}

inline json to_json(const QVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(to_json(x));
  return a;
}

inline QMatrix matrix(const json& j, std::size_t rows, std::size_t cols) {
  require(j.is_array() && j.size() == rows, ErrorKind::Schema,
          "expected a " + std::to_string(rows) + " x " + std::to_string(cols) + " matrix");
  QMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const QVector r = vector(j[i], cols);
    for (std::size_t k = 0; k < cols; ++k) m(i, k) = r[k];
  }
  return m;
}

inline json to_json(const QMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

/// {"dim": n, "basis": [...], "c": [[[..n..] x n] x n]} or sparse
/// "brackets": [[i, j, [..n..]], ...] with i < j.
inline LieAlgebra lie_algebra(const json& j) {
  const std::size_t n = as_size(field(j, "dim"), "dim");
  std::vector<std::string> names;
  if (j.contains("basis")) {
    require(j["basis"].is_array() && j["basis"].size() == n, ErrorKind::Schema, "basis must list dim names");
    for (const auto& b : j["basis"]) names.push_back(b.get<std::string>());
  }
  LieAlgebra L(n, names);
  if (j.contains("c")) {
    const json& c = j["c"];
    require(c.is_array() && c.size() == n, ErrorKind::Schema, "c must be dim x dim x dim");
    for (std::size_t a = 0; a < n; ++a) {
      require(c[a].is_array() && c[a].size() == n, ErrorKind::Schema, "c must be dim x dim x dim");
      for (std::size_t b = 0; b < n; ++b) {
        const QVector v = vector(c[a][b], n);
        for (std::size_t k = 0; k < n; ++k) L.at(a, b, k) = v[k];
      }
    }
  } else if (j.contains("brackets")) {
    for (const auto& e : j["brackets"]) {
      require(e.is_array() && e.size() == 3, ErrorKind::Schema, "bracket entries are [i, j, vector]");
      const std::size_t a = as_size(e[0], "bracket index"), b = as_size(e[1], "bracket index");
      require(a < n && b < n, ErrorKind::Schema, "bracket index out of range");
      L.set_bracket(a, b, vector(e[2], n));
    }
  }
  return L;
}

inline json to_json(const LieAlgebra& L) {
  json j;
  j["dim"] = L.dim;
  j["basis"] = L.basis;
  json br = json::array();
  for (std::size_t a = 0; a < L.dim; ++a)
    for (std::size_t b = a + 1; b < L.dim; ++b) {
      const QVector v = L.bracket_basis(a, b);
      if (!is_zero(v)) br.push_back(json::array({a, b, to_json(v)}));
    }
  j["brackets"] = br;
  return j;
}

inline std::vector<QMatrix> matrices(const json& j, std::size_t count, std::size_t dim) {
  require(j.is_array() && j.size() == count, ErrorKind::Schema, "expected " + std::to_string(count) + " matrices");
  std::vector<QMatrix> out;
  for (const auto& m : j) out.push_back(matrix(m, dim, dim));
  return out;
}

/// {"dim": d, "action": [one d x d matrix per basis vector]}
inline LieModule lie_module(const json& j, const LieAlgebra& L) {
  LieModule V;
  V.dim = as_size(field(j, "dim"), "module dim");
  V.action = matrices(field(j, "action"), L.dim, V.dim);
  return V;
}

/// {"h": lie, "g": lie, "mu": dim g x dim h, "action": [dim h x dim h per g basis vector]}
inline CrossedModule crossed_module(const json& j) {
  CrossedModule X;
  X.h = lie_algebra(field(j, "h"));
  X.g = lie_algebra(field(j, "g"));
  X.mu = matrix(field(j, "mu"), X.g.dim, X.h.dim);
  X.action = matrices(field(j, "action"), X.g.dim, X.h.dim);
  return X;
}

inline json to_json(const CrossedModule& X) {
  json j;
  j["h"] = to_json(X.h);
  j["g"] = to_json(X.g);
  j["mu"] = to_json(X.mu);
  json a = json::array();
  for (const auto& m : X.action) a.push_back(to_json(m));
  j["action"] = a;
  return j;
}

struct SpliceInput {
  LieAlgebra gbar;
  ModuleSES ses;
  QVector alpha;
};

/// {"algebra": lie, "V", "I", "Q": modules, "incl": I x V, "proj": Q x I, "alpha": 2-cochain}
inline SpliceInput splice_input(const json& j) {
  SpliceInput s;
  s.gbar = lie_algebra(field(j, "algebra"));
  s.ses.V = lie_module(field(j, "V"), s.gbar);
  s.ses.I = lie_module(field(j, "I"), s.gbar);
  s.ses.Q = lie_module(field(j, "Q"), s.gbar);
  s.ses.incl = matrix(field(j, "incl"), s.ses.I.dim, s.ses.V.dim);
  s.ses.proj = matrix(field(j, "proj"), s.ses.Q.dim, s.ses.I.dim);
  s.alpha = vector(field(j, "alpha"), cochain_dim(s.gbar.dim, 2, s.ses.Q.dim));
  return s;
}

/// {"n0", "n1", "l1": n0 x n1, "l2": {"brackets": [[i,j,vec]], "action": [n1 x n1 per L0 vector]},
///  "l3": [[i, j, k, vec], ...] (extended antisymmetrically)}
inline TwoTermLinf linf(const json& j) {
  const std::size_t n0 = as_size(field(j, "n0"), "n0"), n1 = as_size(field(j, "n1"), "n1");
  TwoTermLinf T(n0, n1);
  if (j.contains("l1")) T.l1 = matrix(j["l1"], n0, n1);
  if (j.contains("l2")) {
    const json& l2 = j["l2"];
    if (l2.contains("brackets")) {
      json lj;
      lj["dim"] = n0;
      lj["brackets"] = l2["brackets"];
      T.l2_00 = lie_algebra(lj).c;
    }
    if (l2.contains("action")) T.l2_0m1 = matrices(l2["action"], n0, n1);
  }
  if (j.contains("l3")) {
    const Subsets S(n0, 3);
    QVector gamma = zeros(S.size() * n1);
    for (const auto& e : j["l3"]) {
      require(e.is_array() && e.size() == 4, ErrorKind::Schema, "l3 entries are [i, j, k, vector]");
      std::vector<std::size_t> idx{as_size(e[0], "l3 index"), as_size(e[1], "l3 index"), as_size(e[2], "l3 index")};
      for (auto i : idx) require(i < n0, ErrorKind::Schema, "l3 index out of range");
      QVector v = vector(e[3], n1);
      const int s = sort_sign(idx);
      require(s != 0, ErrorKind::Schema, "l3 entry with a repeated index");
      const std::size_t r = S.rank(idx);
      for (std::size_t a = 0; a < n1; ++a) gamma[r * n1 + a] += s * v[a];
    }
    T.set_l3_from_cochain(gamma);
  }
  return T;
}

/// terms [[exps], [form indices], value index, coefficient]
inline PolyForm poly_form(const json& j, std::size_t n, Component comp, std::size_t vdim) {
  PolyForm w(n, comp, vdim);
  require(j.is_array(), ErrorKind::Schema, "form must be a list of terms");
  for (const auto& t : j) {
    require(t.is_array() && t.size() == 4, ErrorKind::Schema, "form terms are [exps, indices, value, coefficient]");
    require(t[0].is_array() && t[1].is_array(), ErrorKind::Schema, "exponents and indices are lists");
    std::vector<int> exps;
    for (const auto& e : t[0]) exps.push_back(static_cast<int>(as_size(e, "exponent")));
    std::vector<std::size_t> idx;
    for (const auto& e : t[1]) idx.push_back(as_size(e, "form index"));
    w.add(rational(t[3]), exps, idx, as_size(t[2], "value index"));
  }
  return w;
}

/// {"chart_dim", "linf", "A": terms, "B": terms, "l3_normalization": "literal" | "factorial"}
inline MCPair mc_pair(const json& j) {
  const std::size_t n = as_size(field(j, "chart_dim"), "chart_dim");
  TwoTermLinf T = linf(field(j, "linf"));
  PolyForm A = poly_form(field(j, "A"), n, Component::L0, T.n0);
  PolyForm B = poly_form(field(j, "B"), n, Component::Lm1, T.n1);
  MCPair p{std::move(T), std::move(A), std::move(B)};
  if (j.contains("l3_normalization")) {
    const std::string s = j["l3_normalization"].get<std::string>();
    require(s == "literal" || s == "factorial", ErrorKind::Schema, "l3_normalization is literal or factorial");
    p.l3_norm = s == "literal" ? L3Normalization::Literal : L3Normalization::Factorial;
  }
  return p;
}

/// Explicit: {"basis", "degrees", "unit", "commutative", "table": [[i, j, k, c]], "d": [[from, to, c]]}
/// or a builder: {"builder": "truncated", "lambda"} | {"builder": "exterior", "k"} | {"builder": "small", "lambda"}
/// | {"builder": "ce", "lie"} | {"builder": "matrix", "k"} | {"builder": "tensor", "left", "right"}.
inline FinDGA dga(const json& j) {
  if (j.contains("builder")) {
    const std::string b = j["builder"].get<std::string>();
    if (b == "truncated") return truncated_dga(rational(field(j, "lambda")));
    if (b == "small") return small_cdga(rational(field(j, "lambda")));
    if (b == "exterior") return exterior_dga(as_size(field(j, "k"), "k"));
    if (b == "ce") return ce_dga(lie_algebra(field(j, "lie")));
    if (b == "matrix") return matrix_units(as_size(field(j, "k"), "k"));
    if (b == "tensor") return tensor_dga(dga(field(j, "left")), dga(field(j, "right")));
    fail(ErrorKind::Schema, "unknown DGA builder '" + b + "'");
  }
  const json& degs = field(j, "degrees");
  require(degs.is_array(), ErrorKind::Schema, "degrees must be a list");
  std::vector<int> d;
  for (const auto& x : degs) {
    require(x.is_number_integer(), ErrorKind::Schema, "degrees are integers");
    d.push_back(x.get<int>());
  }
  FinDGA A(d);
  const std::size_t n = A.dim();
  if (j.contains("basis")) {
    require(j["basis"].size() == n, ErrorKind::Schema, "basis must name every element");
    for (std::size_t i = 0; i < n; ++i) A.names[i] = j["basis"][i].get<std::string>();
  }
  A.unit = as_size(field(j, "unit"), "unit");
  require(A.unit < n, ErrorKind::Schema, "unit index out of range");
  A.commutative = j.value("commutative", false);
  std::vector<QVector> prod(n * n, zeros(n));
  for (std::size_t i = 0; i < n; ++i) {
    prod[A.unit * n + i][i] = 1;
    prod[i * n + A.unit][i] = 1;
  }
  for (const auto& e : field(j, "table")) {
    require(e.is_array() && e.size() == 4, ErrorKind::Schema, "table entries are [i, j, k, c]");
    const std::size_t a = as_size(e[0], "index"), b = as_size(e[1], "index"), k = as_size(e[2], "index");
    require(a < n && b < n && k < n, ErrorKind::Schema, "table index out of range");
    require(a != A.unit && b != A.unit, ErrorKind::Schema, "products with the unit are implied");
    prod[a * n + b][k] += rational(e[3]);
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) A.set_product(a, b, prod[a * n + b]);
  for (const auto& e : field(j, "d")) {
    require(e.is_array() && e.size() == 3, ErrorKind::Schema, "d entries are [from, to, c]");
    const std::size_t a = as_size(e[0], "index"), b = as_size(e[1], "index");
    require(a < n && b < n, ErrorKind::Schema, "d index out of range");
    A.d(b, a) += rational(e[2]);
  }
  return A;
}

/// "x", "-x", "2*x + 1/3*y" over basis names.
inline QVector element(const std::string& text, const FinDGA& A) {
  QVector v = zeros(A.dim());
  std::string s;
  for (char c : text)
    if (c != ' ') s += c;
  require(!s.empty(), ErrorKind::Schema, "empty element");
  std::size_t pos = 0;
  while (pos < s.size()) {
    std::size_t end = s.find_first_of("+-", pos + 1);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? s.size() : end;
    Rational c = 1;
    if (term[0] == '+') term.erase(0, 1);
    if (!term.empty() && term[0] == '-') {
      c = -1;
      term.erase(0, 1);
    }
    const auto star = term.find('*');
    if (star != std::string::npos) {
      c *= parse_rational(term.substr(0, star));
      term = term.substr(star + 1);
    }
    std::size_t k = 0;
    while (k < A.dim() && A.names[k] != term) ++k;
    require(k < A.dim(), ErrorKind::Schema, "unknown basis element '" + term + "'");
    v[k] += c;
  }
  return v;
}

/// {"cutoff", "sizes", "basepoints", "faces": [level][i][table], "degeneracies": [level][j][table]}
inline FinSimpSet simpset(const json& j) {
  FinSimpSet Y;
  Y.cutoff = as_size(field(j, "cutoff"), "cutoff");
  for (const auto& x : field(j, "sizes")) Y.sizes.push_back(as_size(x, "size"));
  for (const auto& x : field(j, "basepoints")) Y.basepoint.push_back(as_size(x, "basepoint"));
  auto tables = [](const json& t) {
    std::vector<std::vector<std::vector<std::size_t>>> out;
    require(t.is_array(), ErrorKind::Schema, "tables must be nested lists");
    for (const auto& level : t) {
      std::vector<std::vector<std::size_t>> maps;
      for (const auto& m : level) {
        std::vector<std::size_t> row;
        for (const auto& x : m) row.push_back(as_size(x, "table value"));
        maps.push_back(row);
      }
      out.push_back(maps);
    }
    return out;
  };
  Y.face = tables(field(j, "faces"));
  Y.degen = tables(field(j, "degeneracies"));
  try {
    detail::check_shape(Y);
  } catch (const Error& e) {
    fail(ErrorKind::Schema, e.what());
  }
  return Y;
}

inline json to_json(const FinSimpSet& Y) {
  json j;
  j["cutoff"] = Y.cutoff;
  j["sizes"] = Y.sizes;
  j["basepoints"] = Y.basepoint;
  j["faces"] = Y.face;
  j["degeneracies"] = Y.degen;
  return j;
}

// ---------------------------------------------------------------------------
// Surfaces. Binary layout (little endian): u64 rank = 3, u64 p, u64 m, u64 n,
// p*m*n float64 row-major (tau, sigma, coordinate), then optionally 2n float64
// for deck_sigma and deck_tau.

inline void write_surface_binary(const std::string& path, const SampledSurface& f) {
  std::ofstream out(path, std::ios::binary);
  require(out.good(), ErrorKind::Schema, "cannot write " + path);
  const std::uint64_t hdr[4] = {3, static_cast<std::uint64_t>(f.p()), static_cast<std::uint64_t>(f.m()),
                                static_cast<std::uint64_t>(f.n())};
  out.write(reinterpret_cast<const char*>(hdr), sizeof hdr);
  for (const auto& r : f.rows)
    for (Eigen::Index i = 0; i < r.rows(); ++i)
      for (Eigen::Index k = 0; k < r.cols(); ++k) {
        const double x = r(i, k);
        out.write(reinterpret_cast<const char*>(&x), sizeof x);
      }
  for (const auto* d : {&f.deck_sigma, &f.deck_tau})
    for (Eigen::Index k = 0; k < d->size(); ++k) {
      const double x = (*d)[k];
      out.write(reinterpret_cast<const char*>(&x), sizeof x);
    }
}

inline SampledSurface surface_from_values(std::size_t p, std::size_t m, std::size_t n, const std::vector<double>& v,
                                          const std::vector<double>& decks) {
  require(v.size() == p * m * n, ErrorKind::Schema, "surface data does not match its dimensions");
  require(decks.empty() || decks.size() == 2 * n, ErrorKind::Schema, "deck translations need 2n values");
  SampledSurface f;
  f.deck_sigma = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(n));
  f.deck_tau = Eigen::RowVectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < decks.size() / 2; ++k) {
    f.deck_sigma[static_cast<Eigen::Index>(k)] = decks[k];
    f.deck_tau[static_cast<Eigen::Index>(k)] = decks[n + k];
  }
  for (std::size_t j = 0; j < p; ++j) {
    Eigen::MatrixXd r(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t k = 0; k < n; ++k)
        r(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = v[(j * m + i) * n + k];
    f.rows.push_back(std::move(r));
  }
  return f;
}

inline SampledSurface read_surface_binary(const std::string& bytes) {
  require(bytes.size() >= 32, ErrorKind::Schema, "surface file too short for its header");
  std::uint64_t hdr[4];
  std::memcpy(hdr, bytes.data(), sizeof hdr);
  require(hdr[0] == 3, ErrorKind::Schema, "surface header must have rank 3");
  const std::uint64_t p = hdr[1], m = hdr[2], n = hdr[3];
  require(p > 0 && m > 0 && n > 0 && p < (1u << 20) && m < (1u << 20) && n < 64, ErrorKind::Schema,
          "implausible surface dimensions");
  const std::size_t count = p * m * n, body = bytes.size() - 32;
  require(body == count * 8 || body == (count + 2 * n) * 8, ErrorKind::Schema, "surface data length mismatch");
  std::vector<double> v(count), decks(body / 8 - count);
  std::memcpy(v.data(), bytes.data() + 32, count * 8);
  if (!decks.empty()) std::memcpy(decks.data(), bytes.data() + 32 + count * 8, decks.size() * 8);
  return surface_from_values(p, m, n, v, decks);
}

/// {"p", "m", "n", "samples": flat row-major, "deck_sigma", "deck_tau", "sitting"}
inline SampledSurface surface_json(const json& j) {
  const std::size_t p = as_size(field(j, "p"), "p"), m = as_size(field(j, "m"), "m"), n = as_size(field(j, "n"), "n");
  std::vector<double> v, decks;
  for (const auto& x : field(j, "samples")) {
    require(x.is_number(), ErrorKind::Schema, "samples are numbers");
    v.push_back(x.get<double>());
  }
  if (j.contains("deck_sigma") || j.contains("deck_tau")) {
    for (const char* key : {"deck_sigma", "deck_tau"}) {
      const json& d = field(j, key);
      require(d.is_array() && d.size() == n, ErrorKind::Schema, "deck translation must have n entries");
      for (const auto& x : d) decks.push_back(x.get<double>());
    }
  }
  SampledSurface f = surface_from_values(p, m, n, v, decks);
  f.sitting = j.value("sitting", false);
  return f;
}

inline SampledSurface read_surface(const std::string& path) {
  if (path.size() >= 5 && path.substr(path.size() - 5) == ".json") return surface_json(read_json(path));
  return read_surface_binary(read_bytes(path));
}

}  // namespace holonomy2::io
