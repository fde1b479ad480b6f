#pragma once

#include <random>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hodgejac/ci_hodge.hpp"
#include "hodgejac/jacring.hpp"
#include "hodgejac/linalg.hpp"
#include "hodgejac/poly.hpp"
#include "hodgejac/vanishing.hpp"

// Variable Hodge numbers of zero loci of split ample bundles E = + O(d_i) on
// P^n through the Cayley encoding f = sum y_i f_i: the quotient
// M^{k+r-1} / (N^{k+r-1} f + J M^{k+r-2}) computes h^{n-r-k, k}_var(Y).
// Variables are x_0..x_n followed by y_1..y_r.

namespace hodgejac {

struct CayleyModel {
  int n = 0;
  std::vector<int> degrees;

  CayleyModel() = default;
  CayleyModel(int n_, std::vector<int> degs) : n(n_), degrees(std::move(degs)) {
    if (n < 1) throw precondition_error("Cayley model requires n >= 1");
    if (degrees.size() < 2)
      throw precondition_error("Cayley model requires codimension r >= 2");
    for (int d : degrees)
      if (d < 1) throw precondition_error("Cayley model requires ample E: all d_i >= 1");
  }

  int r() const { return static_cast<int>(degrees.size()); }
  int arity() const { return n + 1 + r(); }
  int64_t det_degree() const {
    int64_t s = 0;
    for (int d : degrees) s += d;
    return s;
  }
};

struct VarHodgeEntry {
  int k = 0;
  int64_t dim = 0;
  RankCert cert = RankCert::ExactElimination;
  int64_t generic_dim = -1;
  bool below_generic = false;
};

struct VarHodgeReport {
  std::string model;
  std::vector<std::string> sections;
  std::vector<VarHodgeEntry> per_k;
  std::vector<std::string> hypothesis_verdicts;
  bool hypotheses_all_vanish = false;
  std::string smoothness_note;
  bool degenerate_detected = false;
};

// ---------------------------------------------------------------------------
// Bases
// ---------------------------------------------------------------------------

namespace detail {

// y-exponent vectors beta with |beta| = s
inline std::vector<ExpVec> y_multisets(int r, int s) { return degree_monomials(r, s); }

inline ExpVec combine(const CayleyModel& m, const ExpVec& xpart, const ExpVec& ypart) {
  ExpVec e(m.arity(), 0);
  for (int i = 0; i <= m.n; ++i) e[i] = xpart[i];
  for (int j = 0; j < m.r(); ++j) e[m.n + 1 + j] = ypart[j];
  return e;
}

}  // namespace detail

// Monomial basis of M^k = H^0(S^{k+1-r}E (x) det E (x) K): monomials
// x^alpha y^beta with |beta| = k+1-r and |alpha| = sum beta_i d_i
// + sum d_i - (n+1).
inline std::vector<ExpVec> cayley_m_monomials(const CayleyModel& m, int k) {
  if (k < m.r() - 1)
    throw precondition_error("cayley m-basis requires k >= r-1");
  std::vector<ExpVec> out;
  for (const ExpVec& beta : detail::y_multisets(m.r(), k + 1 - m.r())) {
    int64_t xdeg = m.det_degree() - (m.n + 1);
    for (int j = 0; j < m.r(); ++j) xdeg += static_cast<int64_t>(beta[j]) * m.degrees[j];
    if (xdeg < 0) continue;
    for (const ExpVec& alpha : degree_monomials(m.n + 1, xdeg))
      out.push_back(detail::combine(m, alpha, beta));
  }
  return out;
}

inline std::vector<MultiPoly> cayley_m_basis(const CayleyModel& m, int k) {
  std::vector<MultiPoly> out;
  for (const auto& e : cayley_m_monomials(m, k)) out.push_back(MultiPoly::monomial(e));
  return out;
}

inline void validate_cayley_sections(const CayleyModel& m, const std::vector<MultiPoly>& f_list) {
  if (static_cast<int>(f_list.size()) != m.r())
    throw precondition_error("expected " + std::to_string(m.r()) + " sections");
  for (int i = 0; i < m.r(); ++i) {
    if (f_list[i].arity() != m.n + 1)
      throw precondition_error("section " + std::to_string(i + 1) + " must be in the " +
                               std::to_string(m.n + 1) + " ambient variables");
    int64_t deg;
    if (f_list[i].empty() || !f_list[i].is_homogeneous(&deg) || deg != m.degrees[i])
      throw precondition_error("section " + std::to_string(i + 1) +
                               " must be homogeneous of degree " +
                               std::to_string(m.degrees[i]));
  }
}

// f = sum y_i f_i as a polynomial in the Cayley variables.
inline MultiPoly cayley_section(const CayleyModel& m, const std::vector<MultiPoly>& f_list) {
  validate_cayley_sections(m, f_list);
  MultiPoly f(m.arity());
  for (int i = 0; i < m.r(); ++i) {
    ExpVec xzero(m.n + 1, 0);
    for (const auto& [e, c] : f_list[i].terms()) {
      ExpVec ypart(m.r(), 0);
      ypart[i] = 1;
      f.add_term(detail::combine(m, e, ypart), c);
    }
  }
  return f;
}

// The image N^k f inside span(M^k): each basis element of
// N_k = H^0(E^v (x) S^{k+1-r}E (x) det E (x) K) is an e_j^v-tagged monomial
// x^alpha y^beta; pairing the E^v slot with f sends it to f_j x^alpha y^beta.
inline std::vector<MultiPoly> cayley_n_pairing(const CayleyModel& m,
                                               const std::vector<MultiPoly>& f_list, int k) {
  validate_cayley_sections(m, f_list);
  if (k < m.r() - 1) throw precondition_error("cayley N-basis requires k >= r-1");
  std::vector<MultiPoly> images;
  for (int j = 0; j < m.r(); ++j) {
    for (const ExpVec& beta : detail::y_multisets(m.r(), k + 1 - m.r())) {
      int64_t xdeg = m.det_degree() - m.degrees[j] - (m.n + 1);
      for (int t = 0; t < m.r(); ++t) xdeg += static_cast<int64_t>(beta[t]) * m.degrees[t];
      if (xdeg < 0) continue;
      for (const ExpVec& alpha : degree_monomials(m.n + 1, xdeg)) {
        MultiPoly img(m.arity());
        for (const auto& [e, c] : f_list[j].terms()) {
          ExpVec xe = e;
          for (int i = 0; i <= m.n; ++i) xe[i] += alpha[i];
          img.add_term(detail::combine(m, xe, beta), c);
        }
        if (!img.empty()) images.push_back(std::move(img));
      }
    }
  }
  return images;
}

// Jacobian generators: f together with L_Z f = sum_i y_i x_j df_i/dx_l for
// the elementary matrices Z of gl_{n+1} acting on the x variables.
inline std::vector<MultiPoly> cayley_jac_generators(const CayleyModel& m,
                                                    const std::vector<MultiPoly>& f_list) {
  MultiPoly f = cayley_section(m, f_list);
  std::vector<MultiPoly> gens{f};
  for (int l = 0; l <= m.n; ++l)
    for (int j = 0; j <= m.n; ++j) {
      MultiPoly g(m.arity());
      for (int i = 0; i < m.r(); ++i) {
        MultiPoly d = f_list[i].partial(l);
        for (const auto& [e, c] : d.terms()) {
          ExpVec xe = e;
          xe[j] += 1;
          ExpVec ypart(m.r(), 0);
          ypart[i] = 1;
          g.add_term(detail::combine(m, xe, ypart), c);
        }
      }
      if (!g.empty()) gens.push_back(std::move(g));
    }
  return gens;
}

// ---------------------------------------------------------------------------
// Smoothness probe
// ---------------------------------------------------------------------------

// Evaluates the r x (n+1) Jacobian of (f_1..f_r) at deterministic
// pseudo-random rational points.  Full rank everywhere sampled is only
// evidence, so the verdict is AssumedGeneric; a rank drop at every sampled
// point flags the input as degenerate.
inline Smoothness cayley_smoothness(const CayleyModel& m, const std::vector<MultiPoly>& f_list,
                                    std::string* note = nullptr) {
  validate_cayley_sections(m, f_list);
  std::mt19937_64 rng(2718281828ull);
  int full = 0, dropped = 0;
  const int trials = 24;
  for (int t = 0; t < trials; ++t) {
    std::vector<mpq_class> pt(m.n + 1);
    for (auto& v : pt) v = mpq_class(1 + static_cast<long>(rng() % 1000));
    std::vector<std::vector<std::pair<int32_t, mpq_class>>> rows;
    for (int i = 0; i < m.r(); ++i) {
      std::vector<std::pair<int32_t, mpq_class>> row;
      for (int j = 0; j <= m.n; ++j) {
        MultiPoly d = f_list[i].partial(j);
        mpq_class val = 0;
        for (const auto& [e, c] : d.terms()) {
          mpq_class mon = c;
          for (int v = 0; v <= m.n; ++v)
            for (int rep = 0; rep < e[v]; ++rep) mon *= pt[v];
          val += mon;
        }
        if (val != 0) row.push_back({j, val});
      }
      rows.push_back(std::move(row));
    }
    if (exact_rank(rows, m.n + 1).rank == m.r())
      ++full;
    else
      ++dropped;
  }
  if (full == 0) {
    if (note) *note = "Jacobian rank drops at every sampled point";
    return Smoothness::Failed;
  }
  if (note)
    *note = "Jacobian has full rank at " + std::to_string(full) + "/" + std::to_string(trials) +
            " sample points; smoothness assumed generic";
  return Smoothness::AssumedGeneric;
}

// ---------------------------------------------------------------------------
// Variable Hodge dimensions
// ---------------------------------------------------------------------------

inline VarHodgeEntry variable_hodge_dims(const CayleyModel& m,
                                         const std::vector<MultiPoly>& f_list, int k,
                                         const JacOptions& opts = {}) {
  validate_cayley_sections(m, f_list);
  if (k < 0 || k > m.n - m.r())
    throw precondition_error("variable Hodge index k out of range [0, n-r]");
  VarHodgeEntry entry;
  entry.k = k;
  int kk = k + m.r() - 1;
  MonomialTable target(cayley_m_monomials(m, kk));
  std::vector<ProductFamily> families;
  ExpVec unit(m.arity(), 0);
  std::vector<MultiPoly> nimg = cayley_n_pairing(m, f_list, kk);
  if (!nimg.empty()) families.push_back({nimg, {unit}});
  if (kk - 1 >= m.r() - 1) {
    auto mults = cayley_m_monomials(m, kk - 1);
    if (!mults.empty()) families.push_back({cayley_jac_generators(m, f_list), mults});
  }
  mpz_class generic = ci_variable_hodge(m.n, m.degrees, k);
  entry.generic_dim = generic.get_si();
  int64_t reference_rank = target.size() - entry.generic_dim;
  SliceRank sr = compute_slice_rank(families, target, reference_rank, opts);
  entry.dim = target.size() - sr.rank;
  entry.cert = sr.cert;
  entry.below_generic = entry.dim > entry.generic_dim;
  return entry;
}

inline VarHodgeReport variable_hodge_report(const CayleyModel& m,
                                            const std::vector<MultiPoly>& f_list,
                                            const JacOptions& opts = {}) {
  validate_cayley_sections(m, f_list);
  VarHodgeReport rep;
  rep.model = "P^" + std::to_string(m.n) + " with split bundle of degrees (";
  for (size_t i = 0; i < m.degrees.size(); ++i)
    rep.model += (i ? "," : "") + std::to_string(m.degrees[i]);
  rep.model += ")";
  for (const auto& f : f_list) rep.sections.push_back(f.str());
  cayley_smoothness(m, f_list, &rep.smoothness_note);

  rep.hypotheses_all_vanish = true;
  for (int k = 0; k <= m.n - m.r(); ++k) {
    VarHodgeEntry e = variable_hodge_dims(m, f_list, k, opts);
    if (e.below_generic) rep.degenerate_detected = true;
    rep.per_k.push_back(e);
    VJMRanges ranges = vjm_ranges(k, m.n, m.r());
    for (const CRange& c : ranges.cv2)
      for (int a = 0; a <= c.l - 1; ++a) {
        VanishingVerdict v = check_CV2(m.n, m.degrees, c.p, c.q, a, c.l);
        rep.hypothesis_verdicts.push_back(
            "k=" + std::to_string(k) + " CV2(p=" + std::to_string(c.p) + ",q=" +
            std::to_string(c.q) + ",a=" + std::to_string(a) + ",l=" + std::to_string(c.l) +
            "): " + to_string(v.status) + " [" + v.method + "]");
        if (v.status != VanishStatus::Vanishes) rep.hypotheses_all_vanish = false;
      }
    if (ranges.extra_cv2) {
      VanishingVerdict v = check_CV2(m.n, m.degrees, ranges.extra_cv2->p, ranges.extra_cv2->q,
                                     ranges.extra_a, ranges.extra_cv2->l);
      rep.hypothesis_verdicts.push_back("k=" + std::to_string(k) + " CV2(extra, p=1): " +
                                        to_string(v.status) + " [" + v.method + "]");
      if (v.status != VanishStatus::Vanishes) rep.hypotheses_all_vanish = false;
    }
    if (ranges.c1v_needed && ranges.c1v_k >= m.r()) {
      VanishingVerdict v = check_C1V(m.n, m.degrees, ranges.c1v_k);
      rep.hypothesis_verdicts.push_back("k=" + std::to_string(k) + " C1V(k=" +
                                        std::to_string(ranges.c1v_k) + "): " +
                                        to_string(v.status) + " [" + v.method + "]");
      if (v.status != VanishStatus::Vanishes) rep.hypotheses_all_vanish = false;
    }
  }
  return rep;
}

// Deterministic random sections of the split bundle.
inline std::vector<MultiPoly> cayley_random_sections(const CayleyModel& m, uint64_t seed,
                                                     int64_t coeff_bound) {
  if (coeff_bound < 1) throw precondition_error("coeff_bound must be >= 1");
  std::mt19937_64 rng(seed);
  std::vector<MultiPoly> out;
  for (int i = 0; i < m.r(); ++i) {
    MultiPoly f(m.n + 1);
    for (const ExpVec& e : degree_monomials(m.n + 1, m.degrees[i])) {
      int64_t c = static_cast<int64_t>(rng() % (2 * coeff_bound + 1)) - coeff_bound;
      if (c) f.add_term(e, c);
    }
    out.push_back(std::move(f));
  }
  return out;
}

}  // namespace hodgejac
