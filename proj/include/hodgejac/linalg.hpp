#pragma once

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include <gmpxx.h>

#include "hodgejac/errors.hpp"
#include "hodgejac/poly.hpp"

// Exact linear algebra over the integers (fraction-free row reduction with
// content normalization) and modular echelon forms used to certify large
// ranks.  Certification logic: a rank computed mod p is always a lower bound
// for the rank over Q (a nonzero minor mod p is a nonzero integer); when an
// independent upper bound meets it, the rank is exact.

namespace hodgejac {

using SparseRowZ = std::vector<std::pair<int32_t, mpz_class>>;  // sorted by column

// ---------------------------------------------------------------------------
// Exact fraction-free echelon
// ---------------------------------------------------------------------------

class ExactEchelon {
 public:
  explicit ExactEchelon(int ncols, bool track_transform = false)
      : ncols_(ncols), track_(track_transform), pivot_of_col_(ncols, -1) {}

  int rank() const { return static_cast<int>(rows_.size()); }
  int ncols() const { return ncols_; }
  const std::vector<SparseRowZ>& rows() const { return rows_; }
  const std::vector<SparseRowZ>& transforms() const { return transforms_; }
  int pivot_of_col(int c) const { return pivot_of_col_[c]; }

  // Inserts a row; returns true when the rank grew.  `orig_id` tags the row in
  // the transform bookkeeping.
  bool insert(SparseRowZ row, int32_t orig_id = -1) {
    SparseRowZ combo;
    if (track_ && orig_id >= 0) combo.push_back({orig_id, 1});
    reduce_inplace(row, combo, nullptr);
    if (row.empty()) return false;
    normalize(row, combo);
    pivot_of_col_[row.front().first] = static_cast<int32_t>(rows_.size());
    rows_.push_back(std::move(row));
    if (track_) transforms_.push_back(std::move(combo));
    return true;
  }

  struct Reduction {
    SparseRowZ residual;      // scale * input - sum combo_j * row_j
    mpz_class scale = 1;      // positive
    SparseRowZ combo;         // coefficients against stored rows (by row index)
  };

  // Reduces without inserting.
  Reduction reduce(SparseRowZ row) const {
    Reduction red;
    SparseRowZ combo_unused;
    reduce_inplace(row, combo_unused, &red);
    red.residual = std::move(row);
    return red;
  }

 private:
  static void add_scaled(SparseRowZ& a, const mpz_class& ca, const SparseRowZ& b,
                         const mpz_class& cb) {
    // a = ca*a + cb*b, merge by column
    SparseRowZ out;
    out.reserve(a.size() + b.size());
    size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
        mpz_class v = a[i].second * ca;
        if (v != 0) out.push_back({a[i].first, std::move(v)});
        ++i;
      } else if (i == a.size() || b[j].first < a[i].first) {
        mpz_class v = b[j].second * cb;
        if (v != 0) out.push_back({b[j].first, std::move(v)});
        ++j;
      } else {
        mpz_class v = a[i].second * ca + b[j].second * cb;
        if (v != 0) out.push_back({a[i].first, std::move(v)});
        ++i;
        ++j;
      }
    }
    a = std::move(out);
  }

  void reduce_inplace(SparseRowZ& row, SparseRowZ& combo, Reduction* red) const {
    while (!row.empty()) {
      int32_t c = row.front().first;
      int32_t pr = pivot_of_col_[c];
      if (pr < 0) return;
      const SparseRowZ& piv = rows_[pr];
      mpz_class a = row.front().second;        // lead of row
      const mpz_class& b = piv.front().second;  // lead of pivot (positive)
      mpz_class g;
      mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
      mpz_class mult_row = b / g;   // scale applied to row
      mpz_class mult_piv = -(a / g);
      if (mult_row < 0) { mult_row = -mult_row; mult_piv = -mult_piv; }
      add_scaled(row, mult_row, piv, mult_piv);
      if (red) {
        red->scale *= mult_row;
        for (auto& [idx, v] : red->combo) v *= mult_row;
        upsert(red->combo, pr, -mult_piv);
      } else if (track_) {
        for (auto& [idx, v] : combo) v *= mult_row;
        add_scaled(combo, 1, transforms_[pr], mult_piv);
      }
    }
  }

  static void upsert(SparseRowZ& v, int32_t key, const mpz_class& add) {
    for (auto& [k, val] : v)
      if (k == key) {
        val += add;
        return;
      }
    v.push_back({key, add});
  }

  void normalize(SparseRowZ& row, SparseRowZ& combo) {
    mpz_class g = 0;
    for (const auto& [c, v] : row) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (track_)
      for (const auto& [c, v] : combo) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
    if (row.front().second < 0) g = -g;
    if (g != 1 && g != 0) {
      for (auto& [c, v] : row) v /= g;
      if (track_)
        for (auto& [c, v] : combo) v /= g;
    }
  }

  int ncols_;
  bool track_;
  std::vector<int32_t> pivot_of_col_;
  std::vector<SparseRowZ> rows_;
  std::vector<SparseRowZ> transforms_;
};

// ---------------------------------------------------------------------------
// Primes and modular arithmetic
// ---------------------------------------------------------------------------

namespace detail {

inline uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t m) {
  uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod_u64(r, a, m);
    a = mulmod_u64(a, a, m);
    e >>= 1;
  }
  return r;
}

inline bool is_prime_u64(uint64_t n) {
  if (n < 2) return false;
  for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull}) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) { d >>= 1; ++s; }
  for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull,
                     37ull}) {
    uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) { witness = false; break; }
    }
    if (witness) return false;
  }
  return true;
}

}  // namespace detail

// Fixed descending list of word-size primes below 2^26 (products fit in 52
// bits, which lets row operations accumulate lazily in 64-bit buffers).
inline const std::vector<uint64_t>& modp_primes() {
  static const std::vector<uint64_t> primes = [] {
    std::vector<uint64_t> out;
    for (uint64_t n = (1ull << 26) - 1; out.size() < 8; --n)
      if (detail::is_prime_u64(n)) out.push_back(n);
    return out;
  }();
  return primes;
}

inline uint64_t inv_mod(uint64_t a, uint64_t p) { return detail::powmod_u64(a % p, p - 2, p); }

using SparseRowP = std::vector<std::pair<int32_t, uint32_t>>;  // sorted by column, values in [1,p)

// Non-reduced row echelon form mod p.  Pivot rows keep their lead (smallest
// column) normalized to 1; incoming rows are reduced column-ascending.
// Rows whose lead column is still free may be inserted without reduction.
class ModEchelon {
 public:
  ModEchelon(int ncols, uint64_t p)
      : ncols_(ncols), p_(p), pivot_of_col_(ncols, -1), buf_(ncols, 0) {
    if (p_ >= (1ull << 26)) throw precondition_error("modulus too large for lazy accumulation");
  }

  int rank() const { return static_cast<int>(rows_.size()); }
  uint64_t modulus() const { return p_; }
  bool has_pivot(int32_t col) const { return pivot_of_col_[col] >= 0; }
  const SparseRowP& row(int i) const { return rows_[i]; }

  // Insert a row whose lead column has no pivot yet, skipping reduction.
  void insert_fresh(const SparseRowP& row) {
    if (row.empty() || pivot_of_col_[row.front().first] >= 0)
      throw precondition_error("insert_fresh: lead column already has a pivot");
    store(row);
  }

  bool insert(const SparseRowP& row) {
    if (row.empty()) return false;
    int32_t first = row.front().first;
    if (pivot_of_col_[first] < 0) {
      store(row);
      return true;
    }
    // dense lazy-accumulating reduction
    int32_t lo = first, hi = row.back().first;
    for (const auto& [c, v] : row) buf_[c] = v;
    touched_lo_ = lo;
    touched_hi_ = hi;
    int saxpy_budget = kSaxpyBudget;
    for (int32_t c = lo; c <= touched_hi_; ++c) {
      uint64_t val = buf_[c] % p_;
      buf_[c] = val;
      if (val == 0) continue;
      int32_t pr = pivot_of_col_[c];
      if (pr < 0) {
        // new pivot found; extract the remainder of the buffer
        SparseRowP out;
        uint64_t inv = inv_mod(val, p_);
        for (int32_t j = c; j <= touched_hi_; ++j) {
          uint64_t w = buf_[j] % p_;
          if (w) out.push_back({j, static_cast<uint32_t>(detail::mulmod_u64(w, inv, p_))});
          buf_[j] = 0;
        }
        store(out);
        return true;
      }
      uint64_t factor = p_ - val;  // add factor * pivot row
      const SparseRowP& piv = rows_[pr];
      for (const auto& [j, w] : piv) buf_[j] += factor * w;
      if (piv.back().first > touched_hi_) touched_hi_ = piv.back().first;
      buf_[c] = 0;
      if (--saxpy_budget == 0) {
        for (int32_t j = c + 1; j <= touched_hi_; ++j) buf_[j] %= p_;
        saxpy_budget = kSaxpyBudget;
      }
    }
    for (int32_t j = touched_lo_; j <= touched_hi_; ++j) buf_[j] = 0;
    return false;
  }

 private:
  void store(const SparseRowP& row) {
    SparseRowP r = row;
    if (r.front().second != 1) {
      uint64_t inv = inv_mod(r.front().second, p_);
      for (auto& [c, v] : r) v = static_cast<uint32_t>(detail::mulmod_u64(v, inv, p_));
    }
    pivot_of_col_[r.front().first] = static_cast<int32_t>(rows_.size());
    rows_.push_back(std::move(r));
  }

  // With p < 2^26 each product is < 2^52; 2^11 accumulations stay below 2^63.
  static constexpr int kSaxpyBudget = 2000;

  int ncols_;
  uint64_t p_;
  std::vector<int32_t> pivot_of_col_;
  std::vector<SparseRowP> rows_;
  std::vector<uint64_t> buf_;
  int32_t touched_lo_ = 0, touched_hi_ = -1;
};

// ---------------------------------------------------------------------------
// Rank results and certification
// ---------------------------------------------------------------------------

enum class RankCert {
  ExactElimination,      // fraction-free elimination over Z
  ModularWithReference,  // mod-p rank met a proven generic upper bound
  ModularConsensus,      // several primes agree; certified lower bound only
};

inline const char* to_string(RankCert c) {
  switch (c) {
    case RankCert::ExactElimination: return "exact-elimination";
    case RankCert::ModularWithReference: return "modular-certified-by-reference";
    default: return "modular-consensus";
  }
}

struct RankResult {
  int64_t rank = 0;
  RankCert cert = RankCert::ExactElimination;
  std::vector<uint64_t> primes;
  bool below_reference = false;  // reference given but not met: rank collapse
};

// Exact rank of a list of rational rows (scaled to integers per row).
inline RankResult exact_rank(const std::vector<std::vector<std::pair<int32_t, mpq_class>>>& rows,
                             int ncols) {
  ExactEchelon ech(ncols);
  for (const auto& qr : rows) {
    mpz_class den = 1;
    for (const auto& [c, v] : qr) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
    SparseRowZ zr;
    zr.reserve(qr.size());
    for (const auto& [c, v] : qr) {
      mpz_class t = v.get_num() * (den / v.get_den());
      if (t != 0) zr.push_back({c, std::move(t)});
    }
    ech.insert(std::move(zr));
  }
  RankResult res;
  res.rank = ech.rank();
  res.cert = RankCert::ExactElimination;
  return res;
}

// ---------------------------------------------------------------------------
// Monomial tables
// ---------------------------------------------------------------------------

struct ExpVecHash {
  size_t operator()(const ExpVec& e) const {
    size_t h = 1469598103934665603ull;
    for (int32_t x : e) {
      h ^= static_cast<size_t>(static_cast<uint32_t>(x));
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Monomials of a fixed degree slice, sorted graded-lex *descending* so that
// column 0 is the largest monomial and sparse-row leads are leading terms.
class MonomialTable {
 public:
  MonomialTable() = default;
  explicit MonomialTable(std::vector<ExpVec> monos) : monos_(std::move(monos)) {
    std::sort(monos_.begin(), monos_.end(), [](const ExpVec& a, const ExpVec& b) {
      return GrlexLess{}(b, a);
    });
    index_.reserve(monos_.size() * 2);
    for (size_t i = 0; i < monos_.size(); ++i) index_[monos_[i]] = static_cast<int32_t>(i);
  }

  int size() const { return static_cast<int>(monos_.size()); }
  const ExpVec& mono(int32_t col) const { return monos_[col]; }
  const std::vector<ExpVec>& monomials() const { return monos_; }

  int32_t index_of(const ExpVec& e) const {
    auto it = index_.find(e);
    if (it == index_.end())
      throw precondition_error("monomial outside the table for this degree slice");
    return it->second;
  }

  // Row of a polynomial in this table, mod p.
  SparseRowP row_modp(const MultiPoly& f, uint64_t p) const {
    SparseRowP out;
    for (const auto& [e, c] : f.terms()) {
      mpz_class num = c.get_num() % static_cast<long>(p);
      mpz_class den = c.get_den() % static_cast<long>(p);
      uint64_t dn = mpz_class(den < 0 ? den + static_cast<long>(p) : den).get_ui();
      if (dn == 0) throw precondition_error("prime divides a coefficient denominator");
      mpz_class nm = num < 0 ? num + static_cast<long>(p) : num;
      uint64_t v = detail::mulmod_u64(nm.get_ui(), inv_mod(dn, p), p);
      if (v) out.push_back({index_of(e), static_cast<uint32_t>(v)});
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  SparseRowZ row_exact(const MultiPoly& f) const {
    mpz_class den = 1;
    for (const auto& [e, c] : f.terms())
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    SparseRowZ out;
    for (const auto& [e, c] : f.terms()) {
      mpz_class t = c.get_num() * (den / c.get_den());
      if (t != 0) out.push_back({index_of(e), std::move(t)});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    return out;
  }

 private:
  std::vector<ExpVec> monos_;
  std::unordered_map<ExpVec, int32_t, ExpVecHash> index_;
};

// ---------------------------------------------------------------------------
// Spanning-rank driver for product families
// ---------------------------------------------------------------------------

// A family of rows of the form {g * mu : g in generators, mu in multipliers},
// all landing in a common target degree slice.
struct ProductFamily {
  std::vector<MultiPoly> generators;
  std::vector<ExpVec> multipliers;
};

// Rank mod p of the span of the product families inside `target`.
// Strategy: triangulate each family's generators, then insert products whose
// lead monomial is still free without reduction, then reduce the rest.  Stops
// early once `target_rank` is reached (rank is monotone in the row set, so a
// met target certifies the full span's mod-p rank).
inline int64_t product_span_rank_modp(const std::vector<ProductFamily>& families,
                                      const MonomialTable& target, uint64_t p,
                                      int64_t target_rank = -1) {
  struct TriGen {
    SparseRowP poly;   // over the family's own degree table
    int family;
    const MonomialTable* table;
  };
  std::vector<TriGen> gens;
  std::vector<MonomialTable> gen_tables(families.size());
  for (size_t fi = 0; fi < families.size(); ++fi) {
    const auto& fam = families[fi];
    if (fam.generators.empty() || fam.multipliers.empty()) continue;
    std::vector<ExpVec> monos;
    std::unordered_map<ExpVec, bool, ExpVecHash> seen;
    for (const auto& g : fam.generators)
      for (const auto& [e, c] : g.terms())
        if (seen.emplace(e, true).second) monos.push_back(e);
    gen_tables[fi] = MonomialTable(std::move(monos));
    ModEchelon tri(gen_tables[fi].size(), p);
    for (const auto& g : fam.generators) tri.insert(gen_tables[fi].row_modp(g, p));
    for (int i = 0; i < tri.rank(); ++i)
      gens.push_back({tri.row(i), static_cast<int>(fi), &gen_tables[fi]});
  }

  ModEchelon ech(target.size(), p);
  auto product_row = [&](const TriGen& g, const ExpVec& mu) {
    SparseRowP out;
    out.reserve(g.poly.size());
    for (const auto& [col, v] : g.poly) {
      ExpVec e = g.table->mono(col);
      for (size_t i = 0; i < e.size(); ++i) e[i] += mu[i];
      out.push_back({target.index_of(e), v});
    }
    std::sort(out.begin(), out.end());
    return out;
  };

  // Pass 1: fresh leads.  lead(g * mu) = lead(g) + mu since grlex is a
  // monomial order.
  std::vector<std::pair<size_t, size_t>> deferred;
  for (size_t gi = 0; gi < gens.size(); ++gi) {
    const auto& fam = families[gens[gi].family];
    const ExpVec& glead = gens[gi].table->mono(gens[gi].poly.front().first);
    for (size_t mi = 0; mi < fam.multipliers.size(); ++mi) {
      ExpVec lead = glead;
      for (size_t i = 0; i < lead.size(); ++i) lead[i] += fam.multipliers[mi][i];
      if (!ech.has_pivot(target.index_of(lead)))
        ech.insert_fresh(product_row(gens[gi], fam.multipliers[mi]));
      else
        deferred.push_back({gi, mi});
      if (target_rank >= 0 && ech.rank() >= target_rank) return ech.rank();
    }
  }
  // Pass 2: full reductions.
  for (const auto& [gi, mi] : deferred) {
    ech.insert(product_row(gens[gi], families[gens[gi].family].multipliers[mi]));
    if (target_rank >= 0 && ech.rank() >= target_rank) return ech.rank();
  }
  return ech.rank();
}

// Exact rank of the same span via fraction-free elimination (small slices).
inline int64_t product_span_rank_exact(const std::vector<ProductFamily>& families,
                                       const MonomialTable& target) {
  ExactEchelon ech(target.size());
  for (const auto& fam : families)
    for (const auto& mu : fam.multipliers)
      for (const auto& g : fam.generators) ech.insert(target.row_exact(g.shifted(mu)));
  return ech.rank();
}

}  // namespace hodgejac
