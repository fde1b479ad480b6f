#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "hodgejac/errors.hpp"

namespace hodgejac {

// Integral weight in the fundamental-weight basis: coords[i] = <lambda, alpha_i^vee>.
struct Weight {
  std::vector<int64_t> coords;

  Weight() = default;
  explicit Weight(std::vector<int64_t> c) : coords(std::move(c)) {}

  int rank() const { return static_cast<int>(coords.size()); }

  bool operator==(const Weight& o) const { return coords == o.coords; }
  bool operator!=(const Weight& o) const { return coords != o.coords; }
  bool operator<(const Weight& o) const { return coords < o.coords; }

  Weight& operator+=(const Weight& o) {
    for (size_t i = 0; i < coords.size(); ++i) coords[i] += o.coords[i];
    return *this;
  }
  Weight& operator-=(const Weight& o) {
    for (size_t i = 0; i < coords.size(); ++i) coords[i] -= o.coords[i];
    return *this;
  }
  friend Weight operator+(Weight a, const Weight& b) { return a += b; }
  friend Weight operator-(Weight a, const Weight& b) { return a -= b; }
  friend Weight operator*(int64_t s, Weight w) {
    for (auto& c : w.coords) c *= s;
    return w;
  }
  friend Weight operator-(Weight w) {
    for (auto& c : w.coords) c = -c;
    return w;
  }

  std::string str() const {
    std::string s = "(";
    for (size_t i = 0; i < coords.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(coords[i]);
    }
    return s + ")";
  }
};

// A root, carried in both coordinate systems.  `simple` is the expansion over
// simple roots; `fw` the fundamental-weight coordinates (= simple * Cartan).
struct Root {
  std::vector<int64_t> simple;
  Weight fw;
  int64_t norm2 = 0;  // (alpha, alpha) in the scaled invariant form
  int height = 0;
};

// Parabolic subgroup given by the set of *removed* simple roots (1-based).
// Empty set = G itself; the full set {1..rank} = the Borel.
struct Parabolic {
  std::set<int> removed;

  Parabolic() = default;
  explicit Parabolic(std::set<int> r) : removed(std::move(r)) {}
  static Parabolic borel(int rank) {
    std::set<int> r;
    for (int i = 1; i <= rank; ++i) r.insert(i);
    return Parabolic(r);
  }
  bool is_removed(int i) const { return removed.count(i) != 0; }
};

struct RegularizeResult {
  bool singular = false;
  Weight dominant;            // w . lambda (dot action), valid when !singular
  int length = 0;             // l(w)
  std::vector<int> word;      // simple reflections applied, leftmost acts last
};

class RootSystem {
 public:
  RootSystem(char type_letter, int rank) : type_(type_letter), rank_(rank) {
    build_cartan();
    generate_roots();
  }

  char type_letter() const { return type_; }
  int rank() const { return rank_; }
  const std::vector<std::vector<int64_t>>& cartan_matrix() const { return cartan_; }
  const std::vector<Root>& positive_roots() const { return positive_; }
  size_t num_positive_roots() const { return positive_.size(); }

  std::string name() const { return std::string(1, type_) + std::to_string(rank_); }

  // Simple root alpha_i (1-based) in the fundamental-weight basis: row i of the Cartan matrix.
  Weight simple_root(int i) const {
    check_index(i);
    return Weight(cartan_[i - 1]);
  }

  // <lambda, alpha^vee> for a root alpha given by its simple-root expansion.
  // With (omega_i, alpha_j) = slen_j delta_ij / 2 this is
  //   sum_j m_j a_j slen_j / (alpha, alpha).
  int64_t pairing(const Weight& lam, const Root& alpha) const {
    check_weight(lam);
    int64_t num = 0;
    for (int j = 0; j < rank_; ++j) num += lam.coords[j] * alpha.simple[j] * slen_[j];
    if (num % alpha.norm2 != 0)
      throw precondition_error("pairing: non-integral result, invalid root data");
    return num / alpha.norm2;
  }

  int64_t pairing_simple(const Weight& lam, int i) const {
    check_index(i);
    check_weight(lam);
    return lam.coords[i - 1];
  }

  Weight zero_weight() const { return Weight(std::vector<int64_t>(rank_, 0)); }

  Weight rho() const { return Weight(std::vector<int64_t>(rank_, 1)); }

  // 2 rho_P = sum of the positive roots *not* in Phi_P, returned doubled so it
  // stays integral.  Phi_P = positive roots supported on the kept simple roots.
  Weight two_rho_P(const Parabolic& p) const {
    check_parabolic(p);
    Weight s = zero_weight();
    for (const Root& a : positive_)
      if (!root_in_levi(a, p)) s += a.fw;
    return s;
  }

  bool root_in_levi(const Root& a, const Parabolic& p) const {
    for (int j = 0; j < rank_; ++j)
      if (a.simple[j] != 0 && p.is_removed(j + 1)) return false;
    return true;
  }

  // s_i(mu) = mu - <mu, alpha_i^vee> alpha_i, in fundamental-weight coordinates.
  Weight reflect(const Weight& mu, int i) const {
    check_index(i);
    check_weight(mu);
    Weight out = mu;
    int64_t c = mu.coords[i - 1];
    if (c == 0) return out;
    for (int j = 0; j < rank_; ++j) out.coords[j] -= c * cartan_[i - 1][j];
    return out;
  }

  // Dot action w . lambda = w(lambda + rho) - rho.  The word lists simple
  // reflections with the rightmost applied first.
  Weight dot_action(const std::vector<int>& word, const Weight& lam) const {
    check_weight(lam);
    Weight mu = lam + rho();
    for (auto it = word.rbegin(); it != word.rend(); ++it) mu = reflect(mu, *it);
    return mu - rho();
  }

  bool is_dominant(const Weight& lam) const {
    check_weight(lam);
    return std::all_of(lam.coords.begin(), lam.coords.end(), [](int64_t c) { return c >= 0; });
  }

  // Makes lambda + rho dominant by simple reflections at negative coordinates.
  // Singular when the dominant representative has a zero coordinate.  The
  // number of reflections performed is l(w) (each step fixes a genuine
  // inversion, so the word is reduced).
  RegularizeResult regularize(const Weight& lam) const {
    check_weight(lam);
    RegularizeResult res;
    Weight mu = lam + rho();
    size_t guard = 0, max_steps = 4 * positive_.size() + 16;
    for (;;) {
      int neg = -1;
      for (int i = 0; i < rank_; ++i)
        if (mu.coords[i] < 0) { neg = i; break; }
      if (neg < 0) break;
      mu = reflect(mu, neg + 1);
      res.word.push_back(neg + 1);
      ++res.length;
      if (++guard > max_steps)
        throw precondition_error("regularize: reflection loop exceeded bound");
    }
    for (int i = 0; i < rank_; ++i)
      if (mu.coords[i] == 0) { res.singular = true; return res; }
    res.dominant = mu - rho();
    return res;
  }

  // Weyl dimension formula, prod over positive roots of
  // <lambda + rho, alpha^vee'> / <rho, alpha^vee'>.  Evaluated with the
  // pairing against alpha in the Killing-normalized form; the length factors
  // cancel between numerator and denominator, so the plain coroot pairing is
  // used for both.  Exact in rationals, result asserted integral.
  mpz_class weyl_dim(const Weight& lam) const {
    if (!is_dominant(lam))
      throw precondition_error("weyl_dim: weight is not dominant: " + lam.str());
    Weight lr = lam + rho();
    Weight r = rho();
    mpz_class num = 1, den = 1;
    for (const Root& a : positive_) {
      num *= pairing(lr, a);
      den *= pairing(r, a);
    }
    mpz_class q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (rem != 0) throw precondition_error("weyl_dim: non-integral product");
    return q;
  }

  // -w0(lambda): w0 the longest element.  Computed by regularizing -lambda.
  Weight dual_weight(const Weight& lam) const {
    if (!is_dominant(lam)) throw precondition_error("dual_weight: weight not dominant");
    Weight neg = -lam;
    // -w0 lambda is the dominant representative of the plain Weyl orbit of -lambda.
    Weight mu = neg;
    size_t guard = 0, max_steps = 8 * positive_.size() + 16;
    for (;;) {
      int negi = -1;
      for (int i = 0; i < rank_; ++i)
        if (mu.coords[i] < 0) { negi = i; break; }
      if (negi < 0) break;
      mu = reflect(mu, negi + 1);
      if (++guard > max_steps) throw precondition_error("dual_weight: loop exceeded bound");
    }
    return mu;
  }

  void check_weight(const Weight& w) const {
    if (w.rank() != rank_)
      throw precondition_error("weight rank " + std::to_string(w.rank()) +
                               " does not match root system rank " + std::to_string(rank_));
  }

  void check_parabolic(const Parabolic& p) const {
    for (int i : p.removed)
      if (i < 1 || i > rank_)
        throw precondition_error("parabolic index " + std::to_string(i) + " out of range");
  }

 private:
  void check_index(int i) const {
    if (i < 1 || i > rank_)
      throw precondition_error("simple root index " + std::to_string(i) + " out of range");
  }

  void build_cartan() {
    auto bad = [&](const std::string& why) {
      throw precondition_error("invalid simple type " + std::string(1, type_) +
                               std::to_string(rank_) + ": " + why);
    };
    int n = rank_;
    if (n < 1) bad("rank must be positive");
    cartan_.assign(n, std::vector<int64_t>(n, 0));
    for (int i = 0; i < n; ++i) cartan_[i][i] = 2;
    auto link = [&](int i, int j, int64_t cij, int64_t cji) {
      cartan_[i][j] = cij;
      cartan_[j][i] = cji;
    };
    auto chain = [&](int upto) {
      for (int i = 0; i + 1 < upto; ++i) link(i, i + 1, -1, -1);
    };
    slen_.assign(n, 2);
    switch (type_) {
      case 'A':
        chain(n);
        break;
      case 'B':
        if (n < 2) bad("B requires rank >= 2");
        chain(n);
        link(n - 2, n - 1, -2, -1);  // alpha_n short
        slen_[n - 1] = 1;
        break;
      case 'C':
        if (n < 2) bad("C requires rank >= 2");
        chain(n);
        link(n - 2, n - 1, -1, -2);  // alpha_n long
        for (int i = 0; i < n - 1; ++i) slen_[i] = 1;
        break;
      case 'D':
        if (n < 3) bad("D requires rank >= 3");
        chain(n - 1);
        link(n - 3, n - 1, -1, -1);
        break;
      case 'E': {
        if (n < 6 || n > 8) bad("E requires rank 6, 7 or 8");
        // Bourbaki numbering: chain 1-3-4-5-...-n, node 2 attached to 4.
        link(0, 2, -1, -1);
        for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1, -1);
        link(1, 3, -1, -1);
        break;
      }
      case 'F':
        if (n != 4) bad("F requires rank 4");
        chain(4);
        link(1, 2, -2, -1);  // alpha_3, alpha_4 short
        slen_[2] = slen_[3] = 1;
        break;
      case 'G':
        if (n != 2) bad("G requires rank 2");
        link(0, 1, -1, -3);  // alpha_1 short
        slen_[0] = 2;
        slen_[1] = 6;
        break;
      default:
        bad("unknown type letter");
    }
    // Symmetry of the invariant form: slen_j * C[i][j] == slen_i * C[j][i].
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (slen_[j] * cartan_[i][j] != slen_[i] * cartan_[j][i])
          bad("inconsistent length data");
  }

  int64_t form_norm2(const std::vector<int64_t>& a) const {
    // (alpha, alpha) with (alpha_i, alpha_j) = slen_j C[i][j] / 2.
    int64_t twice = 0;
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) twice += a[i] * a[j] * slen_[j] * cartan_[i][j];
    if (twice <= 0 || twice % 2 != 0)
      throw precondition_error("root norm computation failed");
    return twice / 2;
  }

  void generate_roots() {
    // Orbit of the simple roots under simple reflections; keep the positives.
    std::set<std::vector<int64_t>> seen;
    std::vector<std::vector<int64_t>> work;
    for (int i = 0; i < rank_; ++i) {
      std::vector<int64_t> e(rank_, 0);
      e[i] = 1;
      seen.insert(e);
      work.push_back(e);
    }
    auto fw_of = [&](const std::vector<int64_t>& a) {
      Weight w(std::vector<int64_t>(rank_, 0));
      for (int i = 0; i < rank_; ++i)
        for (int j = 0; j < rank_; ++j) w.coords[j] += a[i] * cartan_[i][j];
      return w;
    };
    while (!work.empty()) {
      auto a = work.back();
      work.pop_back();
      Weight fw = fw_of(a);
      for (int i = 0; i < rank_; ++i) {
        int64_t c = fw.coords[i];
        if (c == 0) continue;
        auto b = a;
        b[i] -= c;
        if (seen.insert(b).second) work.push_back(b);
      }
    }
    for (const auto& a : seen) {
      bool nonneg = std::all_of(a.begin(), a.end(), [](int64_t x) { return x >= 0; });
      if (!nonneg) continue;
      Root r;
      r.simple = a;
      r.fw = fw_of(a);
      r.norm2 = form_norm2(a);
      r.height = static_cast<int>(std::accumulate(a.begin(), a.end(), int64_t{0}));
      positive_.push_back(std::move(r));
    }
    std::sort(positive_.begin(), positive_.end(), [](const Root& x, const Root& y) {
      if (x.height != y.height) return x.height < y.height;
      return x.simple < y.simple;
    });
  }

  char type_;
  int rank_;
  std::vector<std::vector<int64_t>> cartan_;
  std::vector<int64_t> slen_;  // scaled (alpha_i, alpha_i)
  std::vector<Root> positive_;
};

// Classical positive-root counts, used as a construction invariant.
inline size_t classical_positive_root_count(char type, int n) {
  switch (type) {
    case 'A': return static_cast<size_t>(n) * (n + 1) / 2;
    case 'B':
    case 'C': return static_cast<size_t>(n) * n;
    case 'D': return static_cast<size_t>(n) * (n - 1);
    case 'E': return n == 6 ? 36 : n == 7 ? 63 : 120;
    case 'F': return 24;
    case 'G': return 6;
    default: throw precondition_error("unknown type letter");
  }
}

}  // namespace hodgejac
