#pragma once

#include <map>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hodgejac/rootsystem.hpp"

// Borel-Weil-Bott cohomology of equivariant bundles, via the rho-shifted dot
// action.  Conventions: the Borel is the *negative* one, so the tangent bundle
// of G/B has the positive roots as fiber weights, Omega^1 the negative ones,
// and H^0(G/B, L_lambda) = V_lambda for dominant lambda.

namespace hodgejac {

struct CohomologyEntry {
  int degree = 0;
  Weight highest_weight;
  mpz_class dim;
};

struct CohomologyResult {
  std::vector<CohomologyEntry> entries;  // at most one for a line bundle
  bool zero() const { return entries.empty(); }
};

// A bundle described by the multiset of its B-weights after pullback to G/B,
// i.e. the Jordan-Hoelder line-bundle factors of a filtration.
struct FilteredBundle {
  std::vector<Weight> weights;
  std::string label;
};

struct BoundEntry {
  Weight highest_weight;
  mpz_class dim;
};

// Degreewise upper bound from a line-bundle filtration, with the exact Euler
// characteristic.  When a single cohomological degree receives contributions
// the bound collapses to the exact answer.
struct CohomologyBound {
  std::map<int, std::vector<BoundEntry>> per_degree_upper;
  mpz_class euler_char = 0;
  bool exact = true;

  mpz_class degree_total(int d) const {
    auto it = per_degree_upper.find(d);
    mpz_class s = 0;
    if (it != per_degree_upper.end())
      for (const auto& e : it->second) s += e.dim;
    return s;
  }
};

inline CohomologyResult line_bundle_cohomology(const RootSystem& rs, const Weight& lambda) {
  CohomologyResult res;
  RegularizeResult reg = rs.regularize(lambda);
  if (reg.singular) return res;
  CohomologyEntry e;
  e.degree = reg.length;
  e.highest_weight = reg.dominant;
  e.dim = rs.weyl_dim(reg.dominant);
  res.entries.push_back(std::move(e));
  return res;
}

inline bool is_levi_dominant(const RootSystem& rs, const Parabolic& p, const Weight& lambda) {
  rs.check_weight(lambda);
  for (int i = 1; i <= rs.rank(); ++i)
    if (!p.is_removed(i) && lambda.coords[i - 1] < 0) return false;
  return true;
}

// Cohomology of the irreducible homogeneous bundle on G/P with Levi-highest
// weight lambda; computed by pullback to G/B, where it has the same
// cohomology as L_lambda.
inline CohomologyResult gp_bundle_cohomology(const RootSystem& rs, const Parabolic& p,
                                             const Weight& lambda) {
  rs.check_parabolic(p);
  if (!is_levi_dominant(rs, p, lambda))
    throw precondition_error("gp_bundle_cohomology: weight " + lambda.str() +
                             " is not dominant for the Levi of the parabolic");
  return line_bundle_cohomology(rs, lambda);
}

// B-weights of p = t + sum of g_alpha over alpha in Phi_- u Phi_P.
inline FilteredBundle weights_of_p(const RootSystem& rs, const Parabolic& p) {
  rs.check_parabolic(p);
  FilteredBundle fb;
  fb.label = "adjoint bundle of the parabolic";
  for (int i = 0; i < rs.rank(); ++i) fb.weights.push_back(rs.zero_weight());
  for (const Root& a : rs.positive_roots()) {
    fb.weights.push_back(-a.fw);
    if (rs.root_in_levi(a, p)) fb.weights.push_back(a.fw);
  }
  return fb;
}

// Weights of Omega^q on G/P pulled back to G/B: sums of q distinct elements
// of -(Phi_+ \ Phi_P).
inline FilteredBundle wedge_cotangent_weights(const RootSystem& rs, const Parabolic& p, int q) {
  rs.check_parabolic(p);
  std::vector<Weight> neg;
  for (const Root& a : rs.positive_roots())
    if (!rs.root_in_levi(a, p)) neg.push_back(-a.fw);
  int n = static_cast<int>(neg.size());
  if (q < 0 || q > n)
    throw precondition_error("wedge_cotangent_weights: q = " + std::to_string(q) +
                             " out of range [0," + std::to_string(n) + "]");
  FilteredBundle fb;
  fb.label = "Omega^" + std::to_string(q);
  std::vector<int> idx(q);
  // enumerate q-subsets in lexicographic order
  for (int i = 0; i < q; ++i) idx[i] = i;
  for (;;) {
    Weight s = rs.zero_weight();
    for (int i : idx) s += neg[i];
    fb.weights.push_back(s);
    if (q == 0) break;
    int i = q - 1;
    while (i >= 0 && idx[i] == n - q + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < q; ++j) idx[j] = idx[j - 1] + 1;
  }
  return fb;
}

inline CohomologyBound filtered_cohomology_bound(const RootSystem& rs, const FilteredBundle& fb,
                                                 const Weight& twist) {
  rs.check_weight(twist);
  CohomologyBound bound;
  for (const Weight& mu : fb.weights) {
    CohomologyResult c = line_bundle_cohomology(rs, mu + twist);
    for (const auto& e : c.entries) {
      bound.per_degree_upper[e.degree].push_back({e.highest_weight, e.dim});
      mpz_class signed_dim = e.dim;
      if (e.degree % 2) signed_dim = -signed_dim;
      bound.euler_char += signed_dim;
    }
  }
  bound.exact = bound.per_degree_upper.size() <= 1;
  // keep each degree's multiset in a canonical order
  for (auto& [d, v] : bound.per_degree_upper)
    std::sort(v.begin(), v.end(), [](const BoundEntry& a, const BoundEntry& b) {
      return a.highest_weight < b.highest_weight;
    });
  return bound;
}

}  // namespace hodgejac
