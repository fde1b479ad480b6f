#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <gmpxx.h>

#include "hodgejac/errors.hpp"
#include "hodgejac/linalg.hpp"
#include "hodgejac/poly.hpp"
#include "hodgejac/rootsystem.hpp"

// Ambient geometries for the Jacobian-ring computations.  Each model knows its
// section spaces H^0(L^k), the module slices H^0(K (x) L^{k+1}) and the
// infinitesimal symmetries acting on sections.

namespace hodgejac {

// P^n with L = O(d); coordinates x_0..x_n.
struct ProjectiveModel {
  int n = 0;
  int d = 1;

  ProjectiveModel() = default;
  ProjectiveModel(int n_, int d_) : n(n_), d(d_) {
    if (n < 1 || d < 1) throw precondition_error("projective model requires n >= 1, d >= 1");
  }
};

// G(a,b) with L = O(d) in Plueckers; coordinates p_I, I an a-subset of [1..b],
// ordered lexicographically.  K_X = O(-b).
struct GrassmannianModel {
  int a = 1, b = 2, d = 1;

  GrassmannianModel() = default;
  GrassmannianModel(int a_, int b_, int d_) : a(a_), b(b_), d(d_) {
    if (a < 1 || a >= b) throw precondition_error("Grassmannian model requires 1 <= a < b");
    if (d < 1) throw precondition_error("Grassmannian model requires d >= 1");
  }
};

// Hypersurface in the torus (C^*)^n with Newton polytope Delta (vertex list).
struct TorusModel {
  std::vector<ExpVec> vertices;

  TorusModel() = default;
  explicit TorusModel(std::vector<ExpVec> v) : vertices(std::move(v)) {
    if (vertices.empty()) throw precondition_error("torus model requires a nonempty polytope");
    size_t dim = vertices.front().size();
    if (dim == 0) throw precondition_error("torus polytope must live in positive dimension");
    for (const auto& p : vertices)
      if (p.size() != dim) throw precondition_error("torus polytope vertices have mixed arity");
  }
};

using AmbientModel = std::variant<ProjectiveModel, GrassmannianModel, TorusModel>;

// ---------------------------------------------------------------------------
// Grassmannian combinatorics
// ---------------------------------------------------------------------------

namespace grass {

inline std::vector<std::vector<int>> subsets(int b, int a) {
  std::vector<std::vector<int>> out;
  std::vector<int> idx(a);
  for (int i = 0; i < a; ++i) idx[i] = i + 1;
  for (;;) {
    out.push_back(idx);
    int i = a - 1;
    while (i >= 0 && idx[i] == b - a + i + 1) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < a; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

struct PlueckerVars {
  std::vector<std::vector<int>> sets;  // lexicographic
  int index(const std::vector<int>& s) const {
    auto it = std::lower_bound(sets.begin(), sets.end(), s);
    if (it == sets.end() || *it != s) return -1;
    return static_cast<int>(it - sets.begin());
  }
};

inline const PlueckerVars& pluecker_vars(int a, int b) {
  static std::map<std::pair<int, int>, PlueckerVars> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_pair(a, b);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, PlueckerVars{subsets(b, a)}).first;
  return it->second;
}

// Sorted index set with sign; empty optional when an index repeats.
inline std::optional<std::pair<std::vector<int>, int>> normalize_indices(std::vector<int> v) {
  int sign = 1;
  for (size_t i = 1; i < v.size(); ++i)
    for (size_t j = i; j > 0 && v[j] < v[j - 1]; --j) {
      std::swap(v[j], v[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < v.size(); ++i)
    if (v[i] == v[i - 1]) return std::nullopt;
  return std::make_pair(std::move(v), sign);
}

// Derivation by the elementary matrix E_{uv} (sends the index v to u) on a
// Pluecker polynomial.
inline MultiPoly elementary_action(const GrassmannianModel& m, int u, int v,
                                   const MultiPoly& f) {
  const PlueckerVars& pv = pluecker_vars(m.a, m.b);
  int nv = static_cast<int>(pv.sets.size());
  MultiPoly out(nv);
  for (const auto& [e, c] : f.terms()) {
    for (int var = 0; var < nv; ++var) {
      if (e[var] == 0) continue;
      const auto& I = pv.sets[var];
      for (size_t t = 0; t < I.size(); ++t) {
        if (I[t] != v) continue;
        std::vector<int> J = I;
        J[t] = u;
        auto norm = normalize_indices(J);
        if (!norm) continue;
        int var2 = pv.index(norm->first);
        ExpVec e2 = e;
        e2[var] -= 1;
        e2[var2] += 1;
        out.add_term(e2, c * e[var] * norm->second);
      }
    }
  }
  return out;
}

// The quadratic Pluecker relations sum_{j in J} sign p_{I+j} p_{J-j} over
// (a-1)-subsets I and (a+1)-subsets J.  Spans the degree-2 part of the ideal.
inline std::vector<MultiPoly> pluecker_relations(const GrassmannianModel& m) {
  const PlueckerVars& pv = pluecker_vars(m.a, m.b);
  int nv = static_cast<int>(pv.sets.size());
  std::vector<MultiPoly> rels;
  std::set<std::string> seen;
  for (const auto& I : subsets(m.b, m.a - 1))
    for (const auto& J : subsets(m.b, m.a + 1)) {
      MultiPoly rel(nv);
      for (size_t t = 0; t < J.size(); ++t) {
        std::vector<int> left = I;
        left.push_back(J[t]);
        auto nl = normalize_indices(left);
        if (!nl) continue;
        std::vector<int> right;
        for (size_t s = 0; s < J.size(); ++s)
          if (s != t) right.push_back(J[s]);
        int sign = (t % 2 == 0) ? 1 : -1;
        ExpVec e(nv, 0);
        e[pv.index(nl->first)] += 1;
        e[pv.index(right)] += 1;
        rel.add_term(e, sign * nl->second);
      }
      if (rel.empty()) continue;
      // normalize sign by leading term and deduplicate
      std::string key = rel.str();
      std::string keyneg = rel.scaled(-1).str();
      if (seen.count(key) || seen.count(keyneg)) continue;
      seen.insert(key);
      rels.push_back(std::move(rel));
    }
  return rels;
}

// Exact echelon of the degree-m slice of the Pluecker ideal inside the
// monomial slice S_m.  Quotient bases are the non-pivot monomials.
inline ExactEchelon ideal_slice_echelon(const GrassmannianModel& m, int64_t deg,
                                        const MonomialTable& table) {
  ExactEchelon ech(table.size());
  if (deg < 2) return ech;
  int nv = static_cast<int>(pluecker_vars(m.a, m.b).sets.size());
  auto rels = pluecker_relations(m);
  auto mults = degree_monomials(nv, deg - 2);
  for (const auto& mu : mults)
    for (const auto& r : rels) ech.insert(table.row_exact(r.shifted(mu)));
  return ech;
}

}  // namespace grass

// ---------------------------------------------------------------------------
// Torus polytope machinery
// ---------------------------------------------------------------------------

namespace torus {

struct Facet {
  std::vector<mpz_class> normal;  // primitive integer inward normal
  mpz_class offset;               // normal . x >= offset on Delta
};

// Affine dimension check and facet enumeration by brute force over
// (dim)-subsets of vertices.  Exact rational arithmetic throughout.
struct Polytope {
  int dim = 0;
  std::vector<ExpVec> vertices;
  std::vector<Facet> facets;
};

inline Polytope build_polytope(const TorusModel& m) {
  Polytope P;
  P.vertices = m.vertices;
  P.dim = static_cast<int>(m.vertices.front().size());
  int n = P.dim;
  // full-dimensionality: rank of differences must be n
  {
    std::vector<std::vector<std::pair<int32_t, mpq_class>>> rows;
    for (size_t i = 1; i < P.vertices.size(); ++i) {
      std::vector<std::pair<int32_t, mpq_class>> r;
      for (int j = 0; j < n; ++j) {
        mpq_class v(P.vertices[i][j] - P.vertices[0][j]);
        if (v != 0) r.push_back({j, v});
      }
      rows.push_back(std::move(r));
    }
    if (exact_rank(rows, n).rank != n)
      throw precondition_error("torus polytope is not full-dimensional");
  }
  // candidate hyperplanes through n affinely independent vertices
  size_t nv = P.vertices.size();
  std::vector<int> idx(n);
  std::function<void(int, int)> choose = [&](int pos, int start) {
    if (pos == n) {
      // normal = nullspace of the (n-1) x n difference matrix
      std::vector<std::vector<mpq_class>> M;
      for (int i = 1; i < n; ++i) {
        std::vector<mpq_class> row(n);
        for (int j = 0; j < n; ++j)
          row[j] = P.vertices[idx[i]][j] - P.vertices[idx[0]][j];
        M.push_back(std::move(row));
      }
      // Gauss: find a nonzero kernel vector
      std::vector<int> pivot_col;
      int r = 0;
      for (int c = 0; c < n && r < static_cast<int>(M.size()); ++c) {
        int pr = -1;
        for (int i = r; i < static_cast<int>(M.size()); ++i)
          if (M[i][c] != 0) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(M[r], M[pr]);
        for (int i = 0; i < static_cast<int>(M.size()); ++i) {
          if (i == r || M[i][c] == 0) continue;
          mpq_class f = M[i][c] / M[r][c];
          for (int j = c; j < n; ++j) M[i][j] -= f * M[r][j];
        }
        pivot_col.push_back(c);
        ++r;
      }
      if (r != n - 1) return;  // not affinely independent
      std::vector<mpq_class> normal(n, 0);
      // set free column to 1, back-substitute
      std::vector<bool> is_pivot(n, false);
      for (int c : pivot_col) is_pivot[c] = true;
      int freec = -1;
      for (int c = 0; c < n; ++c)
        if (!is_pivot[c]) { freec = c; break; }
      normal[freec] = 1;
      for (int i = r - 1; i >= 0; --i) {
        int c = pivot_col[i];
        mpq_class s = 0;
        for (int j = c + 1; j < n; ++j) s += M[i][j] * normal[j];
        normal[c] = -s / M[i][c];
      }
      // scale to primitive integers
      mpz_class den = 1;
      for (auto& q : normal) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den().get_mpz_t());
      std::vector<mpz_class> zn(n);
      mpz_class g = 0;
      for (int j = 0; j < n; ++j) {
        zn[j] = normal[j].get_num() * (den / normal[j].get_den());
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), zn[j].get_mpz_t());
      }
      if (g == 0) return;
      for (auto& z : zn) z /= g;
      mpz_class c0 = 0;
      for (int j = 0; j < n; ++j) c0 += zn[j] * P.vertices[idx[0]][j];
      // side test
      bool above = false, below = false;
      for (const auto& v : P.vertices) {
        mpz_class s = -c0;
        for (int j = 0; j < n; ++j) s += zn[j] * v[j];
        if (s > 0) above = true;
        if (s < 0) below = true;
      }
      if (above && below) return;  // not a face
      if (below) {
        for (auto& z : zn) z = -z;
        c0 = -c0;
      }
      for (const auto& f : P.facets)
        if (f.normal == zn && f.offset == c0) return;
      P.facets.push_back({std::move(zn), std::move(c0)});
      return;
    }
    for (int i = start; i + (n - pos) <= static_cast<int>(nv); ++i) {
      idx[pos] = i;
      choose(pos + 1, i + 1);
    }
  };
  choose(0, 0);
  if (P.facets.empty()) throw precondition_error("torus polytope facet enumeration failed");
  return P;
}

// Lattice points of k * Delta, graded-lex descending.
inline std::vector<ExpVec> dilation_points(const Polytope& P, int64_t k) {
  std::vector<ExpVec> out;
  if (k < 0) return out;
  int n = P.dim;
  if (k == 0) {
    out.push_back(ExpVec(n, 0));
    return out;
  }
  std::vector<int64_t> lo(n, INT64_MAX), hi(n, INT64_MIN);
  for (const auto& v : P.vertices)
    for (int j = 0; j < n; ++j) {
      lo[j] = std::min<int64_t>(lo[j], static_cast<int64_t>(v[j]) * k);
      hi[j] = std::max<int64_t>(hi[j], static_cast<int64_t>(v[j]) * k);
    }
  ExpVec cur(n, 0);
  std::function<void(int)> rec = [&](int pos) {
    if (pos == n) {
      for (const auto& f : P.facets) {
        mpz_class s = -f.offset * k;
        for (int j = 0; j < n; ++j) s += f.normal[j] * cur[j];
        if (s < 0) return;
      }
      out.push_back(cur);
      return;
    }
    for (int64_t x = lo[pos]; x <= hi[pos]; ++x) {
      cur[pos] = static_cast<int32_t>(x);
      rec(pos + 1);
    }
  };
  rec(0);
  std::sort(out.begin(), out.end(), [](const ExpVec& a, const ExpVec& b) {
    return GrlexLess{}(b, a);
  });
  return out;
}

}  // namespace torus

// ---------------------------------------------------------------------------
// Model-level queries
// ---------------------------------------------------------------------------

inline int model_arity(const AmbientModel& m) {
  if (auto* p = std::get_if<ProjectiveModel>(&m)) return p->n + 1;
  if (auto* g = std::get_if<GrassmannianModel>(&m))
    return static_cast<int>(grass::pluecker_vars(g->a, g->b).sets.size());
  return static_cast<int>(std::get<TorusModel>(m).vertices.front().size());
}

inline int model_dimension(const AmbientModel& m) {
  if (auto* p = std::get_if<ProjectiveModel>(&m)) return p->n;
  if (auto* g = std::get_if<GrassmannianModel>(&m)) return g->a * (g->b - g->a);
  return static_cast<int>(std::get<TorusModel>(m).vertices.front().size());
}

inline std::string model_name(const AmbientModel& m) {
  if (auto* p = std::get_if<ProjectiveModel>(&m))
    return "P^" + std::to_string(p->n) + " with O(" + std::to_string(p->d) + ")";
  if (auto* g = std::get_if<GrassmannianModel>(&m))
    return "G(" + std::to_string(g->a) + "," + std::to_string(g->b) + ") with O(" +
           std::to_string(g->d) + ")";
  return "torus hypersurface, polytope with " +
         std::to_string(std::get<TorusModel>(m).vertices.size()) + " vertices";
}

namespace detail {

inline const torus::Polytope& polytope_of(const TorusModel& m) {
  static std::map<std::vector<ExpVec>, torus::Polytope> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(m.vertices);
  if (it == cache.end()) it = cache.emplace(m.vertices, torus::build_polytope(m)).first;
  return it->second;
}

// Monomials of the degree-`deg` Pluecker slice that span the quotient by the
// ideal slice: the non-pivot columns of the exact ideal echelon.  For the
// principal-ideal case G(2,4) the echelon is skipped: the single relation is a
// Groebner basis and the basis is the set of monomials not divisible by its
// leading term p12*p34.
inline std::vector<ExpVec> grass_quotient_monos(const GrassmannianModel& g, int64_t deg) {
  int nv = static_cast<int>(grass::pluecker_vars(g.a, g.b).sets.size());
  std::vector<ExpVec> all = degree_monomials(nv, deg);
  if (deg < 2) return all;
  if (g.a == 2 && g.b == 4) {
    std::vector<ExpVec> out;
    for (const auto& e : all)
      if (!(e[0] >= 1 && e[5] >= 1)) out.push_back(e);  // not divisible by p12*p34
    return out;
  }
  MonomialTable table(all);
  ExactEchelon ech = grass::ideal_slice_echelon(g, deg, table);
  std::vector<ExpVec> out;
  for (int c = 0; c < table.size(); ++c)
    if (ech.pivot_of_col(c) < 0) out.push_back(table.mono(c));
  return out;
}

}  // namespace detail

// Monomial basis of H^0(X, L^k) (for the Grassmannian: a quotient basis of
// standard-monomial type; for the torus: lattice points of k Delta).
inline std::vector<ExpVec> sections_monomials(const AmbientModel& m, int k) {
  if (k < 0) throw precondition_error("sections_basis requires k >= 0");
  if (auto* p = std::get_if<ProjectiveModel>(&m))
    return degree_monomials(p->n + 1, static_cast<int64_t>(k) * p->d);
  if (auto* g = std::get_if<GrassmannianModel>(&m)) {
    auto out = detail::grass_quotient_monos(*g, static_cast<int64_t>(k) * g->d);
    // cross-check against the Weyl dimension formula
    RootSystem rs('A', g->b - 1);
    Weight w = rs.zero_weight();
    w.coords[g->a - 1] = static_cast<int64_t>(k) * g->d;
    mpz_class expect = rs.weyl_dim(w);
    if (expect != static_cast<long>(out.size()))
      throw std::runtime_error("Grassmannian basis size " + std::to_string(out.size()) +
                               " disagrees with the Weyl dimension " + expect.get_str());
    return out;
  }
  const auto& t = std::get<TorusModel>(m);
  return torus::dilation_points(detail::polytope_of(t), k);
}

// Monomial basis of the degree-k module slice M^k = H^0(X, K_X (x) L^{k+1}).
// P^n: degree (k+1)d - (n+1); G(a,b): Pluecker degree (k+1)d - b; torus:
// H^0(L^{k+1}) (M is the maximal homogeneous ideal shifted by one).
inline std::vector<ExpVec> m_monomials(const AmbientModel& m, int k) {
  if (k < 0) throw precondition_error("m_basis requires k >= 0");
  if (auto* p = std::get_if<ProjectiveModel>(&m)) {
    int64_t deg = static_cast<int64_t>(k + 1) * p->d - (p->n + 1);
    return degree_monomials(p->n + 1, deg);
  }
  if (auto* g = std::get_if<GrassmannianModel>(&m)) {
    int64_t deg = static_cast<int64_t>(k + 1) * g->d - g->b;
    if (deg < 0) return {};
    return detail::grass_quotient_monos(*g, deg);
  }
  return sections_monomials(m, k + 1);
}

inline std::vector<MultiPoly> sections_basis(const AmbientModel& m, int k) {
  std::vector<MultiPoly> out;
  for (const auto& e : sections_monomials(m, k)) out.push_back(MultiPoly::monomial(e));
  return out;
}

inline std::vector<MultiPoly> m_basis(const AmbientModel& m, int k) {
  std::vector<MultiPoly> out;
  for (const auto& e : m_monomials(m, k)) out.push_back(MultiPoly::monomial(e));
  return out;
}

// Validates that f lies in the span of sections_basis(model, 1).
inline void validate_degree_one_section(const AmbientModel& m, const MultiPoly& f) {
  if (f.arity() != model_arity(m))
    throw precondition_error("section arity " + std::to_string(f.arity()) +
                             " does not match the model (" + std::to_string(model_arity(m)) +
                             " variables)");
  if (f.empty()) throw precondition_error("zero section");
  if (auto* p = std::get_if<ProjectiveModel>(&m)) {
    int64_t deg;
    if (!f.is_homogeneous(&deg) || deg != p->d)
      throw precondition_error("section must be homogeneous of degree " + std::to_string(p->d));
    return;
  }
  if (auto* g = std::get_if<GrassmannianModel>(&m)) {
    int64_t deg;
    if (!f.is_homogeneous(&deg) || deg != g->d)
      throw precondition_error("section must have Pluecker degree " + std::to_string(g->d));
    return;
  }
  const auto& t = std::get<TorusModel>(m);
  auto pts = torus::dilation_points(detail::polytope_of(t), 1);
  std::set<ExpVec> allowed(pts.begin(), pts.end());
  for (const auto& [e, c] : f.terms())
    if (!allowed.count(e))
      throw precondition_error("section support leaves the Newton polytope at monomial " +
                               MultiPoly::monomial(e).str());
}

// Grassmannian: canonical representative modulo the Pluecker ideal slice.
inline MultiPoly grass_reduce(const GrassmannianModel& g, const MultiPoly& f) {
  int64_t deg;
  if (!f.is_homogeneous(&deg))
    throw precondition_error("grass_reduce expects a homogeneous polynomial");
  if (f.empty() || deg < 2) return f;
  int nv = static_cast<int>(grass::pluecker_vars(g.a, g.b).sets.size());
  MonomialTable table(degree_monomials(nv, deg));
  ExactEchelon ech = grass::ideal_slice_echelon(g, deg, table);
  auto red = ech.reduce(table.row_exact(f));
  // the reduction scales the input; undo it and restore the row denominator
  mpz_class den = 1;
  for (const auto& [e, c] : f.terms())
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
  MultiPoly out(nv);
  for (const auto& [col, v] : red.residual) {
    mpq_class q(v);
    q /= mpq_class(red.scale * den);
    out.add_term(table.mono(col), q);
  }
  return out;
}

// Generators of the Jacobian ideal in degree 1: f together with its Lie
// derivatives along the model's infinitesimal symmetries.
inline std::vector<MultiPoly> lie_derivative_generators(const AmbientModel& m,
                                                        const MultiPoly& f) {
  validate_degree_one_section(m, f);
  std::vector<MultiPoly> gens;
  gens.push_back(f);
  if (auto* p = std::get_if<ProjectiveModel>(&m)) {
    for (int i = 0; i <= p->n; ++i) {
      MultiPoly df = f.partial(i);
      for (int j = 0; j <= p->n; ++j) {
        ExpVec xj(p->n + 1, 0);
        xj[j] = 1;
        MultiPoly g = df.shifted(xj);
        if (!g.empty()) gens.push_back(std::move(g));
      }
    }
    return gens;
  }
  if (auto* g = std::get_if<GrassmannianModel>(&m)) {
    for (int u = 1; u <= g->b; ++u)
      for (int v = 1; v <= g->b; ++v) {
        MultiPoly h = grass::elementary_action(*g, u, v, f);
        if (!h.empty()) gens.push_back(grass_reduce(*g, h));
      }
    return gens;
  }
  const auto& t = std::get<TorusModel>(m);
  int n = static_cast<int>(t.vertices.front().size());
  for (int i = 0; i < n; ++i) {
    MultiPoly h = f.theta(i);
    if (!h.empty()) gens.push_back(std::move(h));
  }
  return gens;
}

// Deterministic pseudo-random degree-1 section with integer coefficients in
// [-coeff_bound, coeff_bound].
inline MultiPoly random_section(const AmbientModel& m, uint64_t seed, int64_t coeff_bound) {
  if (coeff_bound < 1) throw precondition_error("random_section requires coeff_bound >= 1");
  std::mt19937_64 rng(seed);
  MultiPoly f(model_arity(m));
  for (const auto& e : sections_monomials(m, 1)) {
    int64_t c = static_cast<int64_t>(rng() % (2 * coeff_bound + 1)) - coeff_bound;
    if (c) f.add_term(e, c);
  }
  return f;
}

}  // namespace hodgejac
