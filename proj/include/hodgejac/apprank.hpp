#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hodgejac/ci_hodge.hpp"
#include "hodgejac/jacring.hpp"
#include "hodgejac/linalg.hpp"
#include "hodgejac/models.hpp"

// Applications of the Jacobian ring in the Calabi-Yau grading: the rank
// identity dim R/J = h^n(X - Y) against an independent cohomological count,
// constructive degree-bounded membership certificates, and the multiplication
// surjectivity test used for the very-generic Hodge class argument.

namespace hodgejac {

// ---------------------------------------------------------------------------
// Rank identity
// ---------------------------------------------------------------------------

struct RankCheckResult {
  mpz_class computed_total = 0;
  mpz_class expected = 0;
  bool agree = false;
  GradedReport report;
};

inline bool is_cy_graded(const AmbientModel& m) {
  if (auto* p = std::get_if<ProjectiveModel>(&m)) return p->d == p->n + 1;
  if (auto* g = std::get_if<GrassmannianModel>(&m)) return g->d == g->b;
  return false;
}

// Independent oracle for h^n(X - Y) in the CY case.
//  P^n:    h^n(U) = h^{n-1}_var(Y) for the degree-(n+1) hypersurface,
//          summed from the complete-intersection Hodge combinatorics.
//  G(2,4): the Pluecker embedding realizes G(2,4) as the quadric fourfold in
//          P^5, so the anticanonical hypersurface is the (2,4) complete
//          intersection; h^4(U) adds the one primitive ambient (2,2)-class
//          to its middle cohomology.
inline mpz_class cy_expected_total(const AmbientModel& m) {
  if (auto* p = std::get_if<ProjectiveModel>(&m)) {
    mpz_class total = 0;
    for (int k = 0; k <= p->n - 1; ++k)
      total += ci_variable_hodge(p->n, std::vector<int>{p->n + 1}, k);
    return total;
  }
  if (auto* g = std::get_if<GrassmannianModel>(&m)) {
    if (g->a == 2 && g->b == 4) {
      mpz_class total = 1;  // primitive (2,2)-class of the ambient quadric
      for (int k = 0; k <= 3; ++k) total += ci_middle_hodge(5, std::vector<int>{2, 4}, 3 - k);
      return total;
    }
    throw precondition_error("no independent oracle for this Grassmannian model");
  }
  throw precondition_error("rank check requires a projective or Grassmannian CY model");
}

inline RankCheckResult rank_check_cy(const AmbientModel& m, const MultiPoly& f,
                                     const JacOptions& opts = {},
                                     const GradedReport* precomputed = nullptr) {
  if (!is_cy_graded(m))
    throw precondition_error("rank check requires the Calabi-Yau grading (L = -K)");
  RankCheckResult res;
  int n = model_dimension(m);
  res.report = precomputed ? *precomputed : jacobian_graded_dims(m, f, n - 1, opts);
  if (static_cast<int>(res.report.per_degree.size()) < n)
    throw precondition_error("precomputed report does not cover k = 0..n-1");
  for (int k = 0; k < n; ++k) res.computed_total += res.report.per_degree[k].dim;
  res.expected = cy_expected_total(m);
  res.agree = (res.computed_total == res.expected);
  return res;
}

// ---------------------------------------------------------------------------
// Degree-bounded membership certificates
// ---------------------------------------------------------------------------

struct MembershipCertificate {
  MultiPoly input;
  bool member = false;
  // cofactors against lie_derivative_generators(model, f), by generator index
  std::vector<std::pair<int, MultiPoly>> representation;
  // surviving coordinates in the degreewise quotient basis
  std::vector<std::pair<ExpVec, mpq_class>> residual_coordinates;
  int64_t max_cofactor_fdegree = -1;  // in the grading where deg f = 1
};

// Degree-by-degree reduction against row-reduced generator multiples for the
// CY-graded projective models.  Builds one exact transform-tracked echelon
// per occupied degree and reuses it across queries.
class MembershipChecker {
 public:
  MembershipChecker(const ProjectiveModel& model, MultiPoly f, int max_fdegree = 2)
      : model_(model), f_(std::move(f)), max_fdegree_(max_fdegree) {
    if (model_.d != model_.n + 1)
      throw precondition_error("membership certificates require the CY grading d = n+1");
    AmbientModel m = model_;
    gens_ = lie_derivative_generators(m, f_);
    // positions of x_j df/dx_i inside the generator list (index 0 is f)
    int idx = 1;
    gen_pos_.assign(static_cast<size_t>(model_.n + 1) * (model_.n + 1), -1);
    for (int i = 0; i <= model_.n; ++i) {
      MultiPoly df = f_.partial(i);
      if (df.empty()) continue;
      partials_.push_back(df);
      partial_var_.push_back(i);
      for (int j = 0; j <= model_.n; ++j) {
        ExpVec xj(model_.n + 1, 0);
        xj[j] = 1;
        if (!df.shifted(xj).empty()) {
          gen_pos_[i * (model_.n + 1) + j] = idx;
          ++idx;
        }
      }
    }
  }

  const std::vector<MultiPoly>& generators() const { return gens_; }

  MembershipCertificate certify(const MultiPoly& h) {
    if (h.arity() != model_.n + 1)
      throw precondition_error("membership query arity mismatch");
    MembershipCertificate cert;
    cert.input = h;
    // split into f-graded components
    std::map<int64_t, MultiPoly> comps;
    for (const auto& [e, c] : h.terms()) {
      int64_t deg = total_degree(e);
      if (deg % model_.d != 0)
        throw precondition_error("membership input must live in the section ring: monomial "
                                 "degree not a multiple of " + std::to_string(model_.d));
      auto [it, fresh] = comps.try_emplace(deg / model_.d, MultiPoly(model_.n + 1));
      it->second.add_term(e, c);
    }
    std::map<int, MultiPoly> cofactors;
    cert.member = true;
    for (auto it = comps.rbegin(); it != comps.rend(); ++it) {
      int64_t t = it->first;
      if (t > max_fdegree_)
        throw precondition_error("membership degree " + std::to_string(t) +
                                 " exceeds the configured bound " +
                                 std::to_string(max_fdegree_));
      if (t == 0) {
        // J has no degree-0 part: constants survive into the basis
        for (const auto& [e, c] : it->second.terms()) {
          cert.residual_coordinates.push_back({e, c});
          cert.member = false;
        }
        continue;
      }
      reduce_component(t, it->second, cert, cofactors);
    }
    for (auto& [idx, cof] : cofactors)
      if (!cof.empty()) {
        for (const auto& [e, c] : cof.terms())
          cert.max_cofactor_fdegree =
              std::max(cert.max_cofactor_fdegree, total_degree(e) / model_.d);
        cert.representation.push_back({idx, cof});
      }
    verify(cert);
    return cert;
  }

 private:
  struct DegreeData {
    MonomialTable table;
    ExactEchelon echelon{0};
    std::vector<std::pair<int, ExpVec>> row_tags;  // (partial index, multiplier)
  };

  DegreeData& degree_data(int64_t t) {
    auto it = cache_.find(t);
    if (it != cache_.end()) return it->second;
    DegreeData data;
    int64_t m = t * model_.d;
    data.table = MonomialTable(degree_monomials(model_.n + 1, m));
    data.echelon = ExactEchelon(data.table.size(), /*track_transform=*/true);
    auto mults = degree_monomials(model_.n + 1, m - (model_.d - 1));
    for (const auto& mu : mults)
      for (size_t pi = 0; pi < partials_.size(); ++pi) {
        int32_t id = static_cast<int32_t>(data.row_tags.size());
        data.row_tags.push_back({static_cast<int>(pi), mu});
        data.echelon.insert(data.table.row_exact(partials_[pi].shifted(mu)), id);
      }
    return cache_.emplace(t, std::move(data)).first->second;
  }

  void reduce_component(int64_t t, const MultiPoly& comp, MembershipCertificate& cert,
                        std::map<int, MultiPoly>& cofactors) {
    DegreeData& data = degree_data(t);
    mpz_class den = 1;
    for (const auto& [e, c] : comp.terms())
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    auto red = data.echelon.reduce(data.table.row_exact(comp));
    mpq_class scale(red.scale * den);
    for (const auto& [col, v] : red.residual) {
      mpq_class coord(v);
      coord /= scale;
      cert.residual_coordinates.push_back({data.table.mono(col), coord});
      cert.member = false;
    }
    // expand the combination over echelon rows into generator cofactors
    for (const auto& [rowj, coef] : red.combo) {
      mpq_class base(coef);
      base /= scale;
      for (const auto& [orig_id, tcoef] : data.echelon.transforms()[rowj]) {
        const auto& [pi, mu] = data.row_tags[orig_id];
        // mu has positive degree; factor mu = x_j mu' and charge x_j d f/dx_i
        int j = 0;
        while (mu[j] == 0) ++j;
        ExpVec mu2 = mu;
        mu2[j] -= 1;
        int gen_idx = gen_pos_[partial_var_[pi] * (model_.n + 1) + j];
        if (gen_idx < 0) throw std::runtime_error("missing generator for a nonzero product");
        auto [it, fresh] = cofactors.try_emplace(gen_idx, MultiPoly(model_.n + 1));
        it->second.add_term(mu2, base * mpq_class(tcoef));
      }
    }
  }

  void verify(const MembershipCertificate& cert) const {
    MultiPoly acc = cert.input;
    for (const auto& [idx, cof] : cert.representation) acc -= gens_[idx] * cof;
    MultiPoly residual(model_.n + 1);
    for (const auto& [e, c] : cert.residual_coordinates) residual.add_term(e, c);
    if (!(acc == residual))
      throw std::runtime_error("membership certificate failed exact verification");
  }

  ProjectiveModel model_;
  MultiPoly f_;
  int max_fdegree_;
  std::vector<MultiPoly> gens_;
  std::vector<MultiPoly> partials_;
  std::vector<int> partial_var_;
  std::vector<int> gen_pos_;
  std::map<int64_t, DegreeData> cache_;
};

inline MembershipCertificate degree_bound_certificate(const ProjectiveModel& model,
                                                      const MultiPoly& f, const MultiPoly& h,
                                                      int max_fdegree = 2) {
  MembershipChecker checker(model, f, max_fdegree);
  return checker.certify(h);
}

// ---------------------------------------------------------------------------
// Multiplication surjectivity
// ---------------------------------------------------------------------------

struct SurjectivityResult {
  enum class Kind { Surjective, NotSurjective, EmptySource } kind = Kind::EmptySource;
  int64_t rank = 0;
  int64_t corank = 0;
  bool odd_dimension_context = false;  // n = 2k+1 as in the very-generic setup
};

// Exact rank of H^0(L) (x) H^0(K (x) L^k) -> H^0(K (x) L^{k+1}).
inline SurjectivityResult multiplication_surjectivity(const AmbientModel& m, int k,
                                                      const JacOptions& opts = {}) {
  if (k < 0) throw precondition_error("multiplication_surjectivity requires k >= 0");
  SurjectivityResult res;
  res.odd_dimension_context = (model_dimension(m) == 2 * k + 1);
  std::vector<ExpVec> target_quotient = m_monomials(m, k);
  if (target_quotient.empty()) {
    res.kind = SurjectivityResult::Kind::Surjective;  // zero target
    return res;
  }
  std::vector<ExpVec> src_sections = sections_monomials(m, 1);
  std::vector<ExpVec> src_module = (k >= 1) ? m_monomials(m, k - 1) : std::vector<ExpVec>{};
  if (src_sections.empty() || src_module.empty()) {
    res.kind = SurjectivityResult::Kind::EmptySource;
    return res;
  }
  std::vector<MultiPoly> gens;
  for (const auto& e : src_sections) gens.push_back(MultiPoly::monomial(e));

  std::vector<ProductFamily> families;
  MonomialTable target;
  if (auto* g = std::get_if<GrassmannianModel>(&m)) {
    int64_t mdeg = static_cast<int64_t>(k + 1) * g->d - g->b;
    int nv = model_arity(m);
    target = MonomialTable(degree_monomials(nv, mdeg));
    families.push_back({gens, src_module});
    if (mdeg >= 2)
      families.push_back({grass::pluecker_relations(*g), degree_monomials(nv, mdeg - 2)});
  } else {
    std::vector<ExpVec> all = m_monomials(m, k);
    target = MonomialTable(all);
    families.push_back({gens, src_module});
  }
  int64_t full = target.size();
  SliceRank sr = compute_slice_rank(families, target, full, opts);
  res.rank = sr.rank;
  res.corank = full - sr.rank;
  res.kind = res.corank == 0 ? SurjectivityResult::Kind::Surjective
                             : SurjectivityResult::Kind::NotSurjective;
  return res;
}

}  // namespace hodgejac
