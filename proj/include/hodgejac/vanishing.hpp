#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hodgejac/bwb.hpp"
#include "hodgejac/rootsystem.hpp"

// Checkers for the cohomological vanishing conditions gating the Jacobian-ring
// description: (C)  H^p(X, Omega^q (x) L^l) = 0   for p > 0, q >= 0, l >= 1,
// and (C1) H^1(X, (G x_P p) (x) L^k (x) K_X) = 0  for k >= 1, together with
// their vector-bundle analogues (CV2)/(C1V) for split bundles on projective
// space.  Verdicts are three-valued; a filtration bound that cannot decide is
// reported Inconclusive rather than guessed.

namespace hodgejac {

enum class VanishStatus { Vanishes, NonVanishing, Inconclusive };

inline const char* to_string(VanishStatus s) {
  switch (s) {
    case VanishStatus::Vanishes: return "Vanishes";
    case VanishStatus::NonVanishing: return "NonVanishing";
    default: return "Inconclusive";
  }
}

struct VanishingVerdict {
  VanishStatus status = VanishStatus::Inconclusive;
  std::string method;  // BWB-exact | filtration-bound | theorem-citation | closed-formula
  std::string detail;
  std::optional<CohomologyBound> witness;
};

struct VanishOptions {
  bool allow_citations = true;
  bool allow_closed_formula = true;
};

// ---------------------------------------------------------------------------
// Projective-space closed forms
// ---------------------------------------------------------------------------

inline mpz_class binom(int64_t n, int64_t k) {
  if (k < 0 || n < 0 || k > n) return 0;
  mpz_class r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

// h^p(P^n, Omega^q(m)), Bott's formula.
inline mpz_class bott_dim(int n, int p, int q, int64_t m) {
  if (q < 0 || q > n || p < 0 || p > n) return 0;
  if (p == q && m == 0) return 1;
  if (p == 0 && m > q) return binom(m + n - q, m) * binom(m - 1, q);
  if (p == n && m < q - n) return binom(q - m, -m) * binom(-m - 1, n - q);
  return 0;
}

// dim coker(g (x) H^0(O(t)) -> H^0(T_{P^n}(t))) = h^1(P^n, p-bundle (x) O(t)).
// Nonzero exactly at t = -1, where the target is spanned by the n+1
// coordinate vector fields and the source vanishes.
inline mpz_class c1_obstruction_dim_projective(int n, int64_t t) {
  return t == -1 ? mpz_class(n + 1) : mpz_class(0);
}

// ---------------------------------------------------------------------------
// Shape detection on (root system, parabolic)
// ---------------------------------------------------------------------------

struct ProjectiveShape {
  int n;     // dimension
  int node;  // the removed simple root (1 or rank)
};

struct GrassmannianShape {
  int a, b;  // G(a, b), a-planes in C^b; b = rank + 1
  int node;
};

inline std::optional<ProjectiveShape> as_projective_space(const RootSystem& rs,
                                                          const Parabolic& p) {
  if (rs.type_letter() != 'A' || p.removed.size() != 1) return std::nullopt;
  int j = *p.removed.begin();
  if (j != 1 && j != rs.rank()) return std::nullopt;
  return ProjectiveShape{rs.rank(), j};
}

inline std::optional<GrassmannianShape> as_grassmannian(const RootSystem& rs,
                                                        const Parabolic& p) {
  if (rs.type_letter() != 'A' || p.removed.size() != 1) return std::nullopt;
  int j = *p.removed.begin();
  return GrassmannianShape{j, rs.rank() + 1, j};
}

// Irreducible Hermitian symmetric G/P (classical table of cominuscule nodes).
inline bool is_hermitian_symmetric(const RootSystem& rs, const Parabolic& p) {
  if (p.removed.size() != 1) return false;
  int j = *p.removed.begin();
  int n = rs.rank();
  switch (rs.type_letter()) {
    case 'A': return true;
    case 'B': return j == 1;
    case 'C': return j == n;
    case 'D': return j == 1 || j == n - 1 || j == n;
    case 'E': return (n == 6 && (j == 1 || j == 6)) || (n == 7 && j == 7);
    default: return false;
  }
}

// A line bundle on G/P is a character of P: its weight must vanish on the
// kept simple roots.
inline void require_gp_line_bundle(const RootSystem& rs, const Parabolic& p, const Weight& L) {
  rs.check_weight(L);
  for (int i = 1; i <= rs.rank(); ++i)
    if (!p.is_removed(i) && L.coords[i - 1] != 0)
      throw precondition_error("weight " + L.str() +
                               " is not a line bundle on G/P: nonzero on kept node " +
                               std::to_string(i));
}

inline int64_t line_bundle_level(const RootSystem& rs, const Parabolic& p, const Weight& L,
                                 int node) {
  require_gp_line_bundle(rs, p, L);
  return L.coords[node - 1];
}

// ---------------------------------------------------------------------------
// Condition (C)
// ---------------------------------------------------------------------------

inline VanishingVerdict check_C(const RootSystem& rs, const Parabolic& p, const Weight& L_weight,
                                int pp, int q, int l, const VanishOptions& opts = {}) {
  if (pp <= 0 || q < 0 || l < 1)
    throw precondition_error("check_C requires p > 0, q >= 0, l >= 1");
  rs.check_parabolic(p);
  require_gp_line_bundle(rs, p, L_weight);

  VanishingVerdict v;
  std::string tag = "C(p=" + std::to_string(pp) + ",q=" + std::to_string(q) +
                    ",l=" + std::to_string(l) + ")";

  if (auto ps = as_projective_space(rs, p); ps && opts.allow_closed_formula) {
    int64_t t = line_bundle_level(rs, p, L_weight, ps->node);
    mpz_class d = bott_dim(ps->n, pp, q, t * l);
    v.status = d == 0 ? VanishStatus::Vanishes : VanishStatus::NonVanishing;
    v.method = "closed-formula";
    v.detail = tag + " on P^" + std::to_string(ps->n) + ": h^p(Omega^q(" +
               std::to_string(t * l) + ")) = " + d.get_str();
    return v;
  }

  if (auto gr = as_grassmannian(rs, p); gr && opts.allow_citations) {
    int64_t t = line_bundle_level(rs, p, L_weight, gr->node);
    if (t * l >= rs.rank()) {
      v.status = VanishStatus::Vanishes;
      v.method = "theorem-citation";
      v.detail = tag + " on G(" + std::to_string(gr->a) + "," + std::to_string(gr->b) +
                 "): Snow's criterion, twist " + std::to_string(t * l) +
                 " >= " + std::to_string(rs.rank());
      return v;
    }
  }

  FilteredBundle fb = wedge_cotangent_weights(rs, p, q);
  CohomologyBound bound = filtered_cohomology_bound(rs, fb, l * L_weight);
  mpz_class at_p = bound.degree_total(pp);
  if (at_p == 0) {
    v.status = VanishStatus::Vanishes;
    v.method = "filtration-bound";
    v.detail = tag + ": degree-" + std::to_string(pp) + " bound empty";
  } else if (bound.exact) {
    v.status = VanishStatus::NonVanishing;
    v.method = "BWB-exact";
    v.detail = tag + ": concentrated bound, h^" + std::to_string(pp) + " = " + at_p.get_str();
  } else {
    v.status = VanishStatus::Inconclusive;
    v.method = "filtration-bound";
    v.detail = tag + ": degree-" + std::to_string(pp) + " bound " + at_p.get_str() +
               ", cancellation undecidable from the filtration";
  }
  v.witness = std::move(bound);
  return v;
}

// ---------------------------------------------------------------------------
// Condition (C1)
// ---------------------------------------------------------------------------

inline VanishingVerdict check_C1(const RootSystem& rs, const Parabolic& p, const Weight& L_weight,
                                 int k, const VanishOptions& opts = {}) {
  if (k < 1) throw precondition_error("check_C1 requires k >= 1");
  rs.check_parabolic(p);
  require_gp_line_bundle(rs, p, L_weight);

  VanishingVerdict v;
  std::string tag = "C1(k=" + std::to_string(k) + ")";
  Weight two_rp = rs.two_rho_P(p);

  if (auto ps = as_projective_space(rs, p); ps && opts.allow_closed_formula) {
    int64_t d = line_bundle_level(rs, p, L_weight, ps->node);
    mpz_class c = c1_obstruction_dim_projective(ps->n, k * d - ps->n - 1);
    v.status = c == 0 ? VanishStatus::Vanishes : VanishStatus::NonVanishing;
    v.method = "closed-formula";
    v.detail = tag + " on P^" + std::to_string(ps->n) + " with L=O(" + std::to_string(d) +
               "): h^1 = " + c.get_str() + (c != 0 ? " (kd = n)" : "");
    return v;
  }

  // Filtration bound on the adjoint bundle of P, twisted by k L + K_X.
  FilteredBundle fb = weights_of_p(rs, p);
  Weight twist = k * L_weight - two_rp;
  CohomologyBound bound = filtered_cohomology_bound(rs, fb, twist);
  mpz_class at_1 = bound.degree_total(1);
  if (at_1 == 0) {
    v.status = VanishStatus::Vanishes;
    v.method = "filtration-bound";
    v.detail = tag + ": degree-1 bound empty";
    v.witness = std::move(bound);
    return v;
  }
  if (bound.exact) {
    v.status = VanishStatus::NonVanishing;
    v.method = "BWB-exact";
    v.detail = tag + ": concentrated bound, h^1 = " + at_1.get_str();
    v.witness = std::move(bound);
    return v;
  }

  bool anticanonical = (L_weight == two_rp);
  if (anticanonical && k == 1) {
    // H^1(p-bundle) = coker(g -> H^0(T_X)).  The action map g -> H^0(T_X) is
    // injective, and the BWB bound on the tangent filtration caps h^0(T_X);
    // when the cap equals dim g the cokernel vanishes exactly.
    std::vector<Weight> tw;
    for (const Root& a : rs.positive_roots())
      if (!rs.root_in_levi(a, p)) tw.push_back(a.fw);
    CohomologyBound tb = filtered_cohomology_bound(rs, {tw, "T_X"}, rs.zero_weight());
    mpz_class h0_cap = tb.degree_total(0);
    mpz_class dim_g = rs.rank() + 2 * static_cast<long>(rs.num_positive_roots());
    if (h0_cap == dim_g) {
      v.status = VanishStatus::Vanishes;
      v.method = "BWB-exact";
      v.detail = tag + ": h^0(T_X) = dim g = " + dim_g.get_str() + ", cokernel vanishes";
      v.witness = std::move(tb);
      return v;
    }
  }
  if (opts.allow_citations && anticanonical && k >= 2) {
    v.status = VanishStatus::Vanishes;
    v.method = "theorem-citation";
    v.detail = tag + ": anticanonical L, higher cohomology of the adjoint bundle of P "
               "twisted by positive anticanonical powers vanishes";
    v.witness = std::move(bound);
    return v;
  }
  if (opts.allow_citations && is_hermitian_symmetric(rs, p) && !as_projective_space(rs, p)) {
    int node = *p.removed.begin();
    int64_t t = line_bundle_level(rs, p, L_weight, node);
    if (t >= 1) {
      v.status = VanishStatus::Vanishes;
      v.method = "theorem-citation";
      v.detail = tag + ": ample line bundle on an irreducible Hermitian symmetric space";
      v.witness = std::move(bound);
      return v;
    }
  }
  v.status = VanishStatus::Inconclusive;
  v.method = "filtration-bound";
  v.detail = tag + ": degree-1 bound " + at_1.get_str() + ", cancellation undecidable";
  v.witness = std::move(bound);
  return v;
}

// ---------------------------------------------------------------------------
// Split-bundle conditions (CV2), (C1V) on projective space
// ---------------------------------------------------------------------------

namespace detail {

// Total degrees of the line-bundle summands of wedge^a E, E = + O(d_i).
inline std::vector<int64_t> wedge_degrees(const std::vector<int>& d, int a) {
  std::vector<int64_t> out;
  int r = static_cast<int>(d.size());
  if (a < 0 || a > r) return out;
  std::vector<int> idx(a);
  for (int i = 0; i < a; ++i) idx[i] = i;
  for (;;) {
    int64_t s = 0;
    for (int i : idx) s += d[i];
    out.push_back(s);
    if (a == 0) break;
    int i = a - 1;
    while (i >= 0 && idx[i] == r - a + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < a; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

// Total degrees of the summands of S^s E (multisets), E = + O(d_i).
inline std::vector<int64_t> sym_degrees(const std::vector<int>& d, int s) {
  std::vector<int64_t> out;
  if (s < 0) return out;
  int r = static_cast<int>(d.size());
  // multiset exponents beta_1 + ... + beta_r = s
  std::vector<int> beta(r, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == r - 1) {
      int64_t deg = 0;
      beta[pos] = left;
      for (int i = 0; i < r; ++i) deg += int64_t{beta[i]} * d[i];
      out.push_back(deg);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      beta[pos] = e;
      rec(pos + 1, left - e);
    }
  };
  if (r == 0) {
    if (s == 0) out.push_back(0);
    return out;
  }
  rec(0, s);
  return out;
}

inline void require_ample_split(const std::vector<int>& degrees) {
  if (degrees.empty()) throw precondition_error("split bundle must have rank >= 1");
  for (int d : degrees)
    if (d <= 0)
      throw precondition_error("split bundle is not ample: summand degree " + std::to_string(d));
}

}  // namespace detail

// (CV2) at (p, q, a, l): vanishes when either expansion branch
//   Omega^{q-a} (x) wedge^a E (x) S^{l-a} E   or
//   Omega^{q-a} (x) wedge^{a+1} E (x) S^{l-a-1} E
// has all Bott summands zero.
inline VanishingVerdict check_CV2(int n, const std::vector<int>& degrees, int p, int q, int a,
                                  int l) {
  detail::require_ample_split(degrees);
  if (p <= 0 || q < 0) throw precondition_error("check_CV2 requires p > 0, q >= 0");
  VanishingVerdict v;
  std::string tag = "CV2(p=" + std::to_string(p) + ",q=" + std::to_string(q) +
                    ",a=" + std::to_string(a) + ",l=" + std::to_string(l) + ")";

  auto branch_nonzero = [&](int wedge, int sym) -> std::optional<std::string> {
    if (q - a < 0 || q - a > n) return std::nullopt;  // zero bundle
    for (int64_t dw : detail::wedge_degrees(degrees, wedge))
      for (int64_t ds : detail::sym_degrees(degrees, sym)) {
        mpz_class h = bott_dim(n, p, q - a, dw + ds);
        if (h != 0)
          return "h^" + std::to_string(p) + "(Omega^" + std::to_string(q - a) + "(" +
                 std::to_string(dw + ds) + ")) = " + h.get_str();
      }
    return std::nullopt;
  };
  auto b1 = branch_nonzero(a, l - a);
  if (!b1) {
    v.status = VanishStatus::Vanishes;
    v.method = "closed-formula";
    v.detail = tag + ": first expansion branch vanishes termwise";
    return v;
  }
  auto b2 = branch_nonzero(a + 1, l - a - 1);
  if (!b2) {
    v.status = VanishStatus::Vanishes;
    v.method = "closed-formula";
    v.detail = tag + ": second expansion branch vanishes termwise";
    return v;
  }
  v.status = VanishStatus::NonVanishing;
  v.method = "closed-formula";
  v.detail = tag + ": both branches have nonzero summands (" + *b1 + "; " + *b2 + ")";
  return v;
}

// (C1V) at k (k >= r): H^1(P^n, p-bundle (x) S^{k-r} E (x) det E (x) K).
// A summand O(m) contributes iff m + deg(det E) = n.
inline VanishingVerdict check_C1V(int n, const std::vector<int>& degrees, int k) {
  detail::require_ample_split(degrees);
  int r = static_cast<int>(degrees.size());
  if (k < r) throw precondition_error("check_C1V requires k >= r");
  int64_t det_deg = 0;
  for (int d : degrees) det_deg += d;
  VanishingVerdict v;
  std::string tag = "C1V(k=" + std::to_string(k) + ")";
  mpz_class bad = 0;
  for (int64_t ds : detail::sym_degrees(degrees, k - r)) {
    int64_t t = ds + det_deg - n - 1;
    bad += c1_obstruction_dim_projective(n, t);
  }
  v.status = bad == 0 ? VanishStatus::Vanishes : VanishStatus::NonVanishing;
  v.method = "closed-formula";
  v.detail = tag + (bad == 0 ? ": all symmetric-power summands clear the kd = n wall"
                             : ": obstruction dimension " + bad.get_str());
  return v;
}

// ---------------------------------------------------------------------------
// Hypothesis ranges
// ---------------------------------------------------------------------------

struct CRange {
  int p, q, l;
};

// The (p,q,l) triples of condition (C) required at filtration level k on an
// n-dimensional ambient: {1<=p<=k, q=n-p, l=k-p+1} u {1<=p<=k-1, q=n-p-1,
// l=k-p} u {1<=p<=k-1, q=n-p, l=k-p}, transcribed verbatim.
inline std::vector<CRange> thm_main_c_ranges(int k, int n) {
  std::vector<CRange> out;
  auto push = [&](int p, int q, int l) {
    if (q < 0 || l < 1) return;
    for (const auto& c : out)
      if (c.p == p && c.q == q && c.l == l) return;
    out.push_back({p, q, l});
  };
  for (int p = 1; p <= k; ++p) push(p, n - p, k - p + 1);
  for (int p = 1; p <= k - 1; ++p) push(p, n - p - 1, k - p);
  for (int p = 1; p <= k - 1; ++p) push(p, n - p, k - p);
  return out;
}

// (CV2) triples for the rank-r split-bundle quotient at level k (the variable
// (n-r-k, k) Hodge piece), plus the pinned extra case; transcribed verbatim.
struct VJMRanges {
  std::vector<CRange> cv2;           // quantified over 0 <= a <= l-1 at check time
  std::optional<CRange> extra_cv2;   // p=1, q=n+r-2, l=k+... with a pinned to r-2
  int extra_a = 0;
  bool c1v_needed = false;
  int c1v_k = 0;
};

inline VJMRanges vjm_ranges(int k, int n, int r) {
  VJMRanges out;
  auto push = [&](int p, int q, int l) {
    if (q < 0 || l < 1) return;
    for (const auto& c : out.cv2)
      if (c.p == p && c.q == q && c.l == l) return;
    out.cv2.push_back({p, q, l});
  };
  for (int p = 1; p <= k + r - 1; ++p) push(p, n + r - 1 - p, k + r - p);
  for (int p = 1; p <= k + r - 2; ++p) push(p, n + r - p - 2, k + r - 1 - p);
  for (int p = 1; p <= k + r - 2; ++p) push(p, n + r - 1 - p, k + r - 1 - p);
  if (r >= 2 && k >= 0) {
    out.extra_cv2 = CRange{1, n + r - 2, k};
    out.extra_a = r - 2;
  }
  if (k + r - 1 >= r) {
    out.c1v_needed = true;
    out.c1v_k = k + r - 1;
  }
  return out;
}

}  // namespace hodgejac
