#pragma once

#include <vector>

#include <gmpxx.h>

#include "hodgejac/errors.hpp"
#include "hodgejac/vanishing.hpp"

// Middle Hodge numbers of smooth complete intersections in projective space
// by pure K-theory combinatorics: Euler characteristics of the wedge powers
// of the cotangent sheaf, expanded through the Koszul resolution of the
// structure sheaf and the conormal sequence.  Used as the generic reference
// for the Cayley quotients and as a cross-check oracle in the tests.

namespace hodgejac {

// chi(P^n, O(s)) = C(s+n, n) as a polynomial in s (valid for all integers).
inline mpz_class chi_O(int n, int64_t s) {
  mpz_class num = 1;
  for (int i = 1; i <= n; ++i) num *= mpz_class(s + i);
  mpz_class fact;
  mpz_fac_ui(fact.get_mpz_t(), static_cast<unsigned long>(n));
  mpz_class q, rem;
  mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), num.get_mpz_t(), fact.get_mpz_t());
  if (rem != 0) throw std::runtime_error("chi_O: non-integral value");
  return q;
}

// chi(P^n, Omega^q(t)) via the Euler sequence in K-theory:
// [Omega^q] = sum_j (-1)^j C(n+1, q-j) [O(j-q)].
inline mpz_class chi_omega(int n, int q, int64_t t) {
  if (q < 0 || q > n) return 0;
  mpz_class sum = 0;
  for (int j = 0; j <= q; ++j) {
    mpz_class term = binom(n + 1, q - j) * chi_O(n, t - q + j);
    sum += (j % 2 == 0) ? term : -term;
  }
  return sum;
}

// chi(Y, Omega^q_{P^n}(t)|_Y) for Y = V(d_1,...,d_r), via the Koszul
// resolution of O_Y.
inline mpz_class chi_omega_restricted(int n, const std::vector<int>& degrees, int q, int64_t t) {
  int r = static_cast<int>(degrees.size());
  mpz_class sum = 0;
  for (int mask = 0; mask < (1 << r); ++mask) {
    int64_t shift = 0;
    int bits = 0;
    for (int i = 0; i < r; ++i)
      if (mask & (1 << i)) { shift += degrees[i]; ++bits; }
    mpz_class term = chi_omega(n, q, t - shift);
    sum += (bits % 2 == 0) ? term : -term;
  }
  return sum;
}

// chi(Y, Lambda^p Omega_Y) via [Omega_Y] = [Omega_P|_Y] - sum [O(-d_i)|_Y]:
// Lambda^p of the difference expands against symmetric powers of the split
// conormal part.
inline mpz_class ci_chi_p(int n, const std::vector<int>& degrees, int p) {
  int r = static_cast<int>(degrees.size());
  mpz_class sum = 0;
  for (int j = 0; p - j >= 0; ++j) {
    // multisets beta of size j over the r degrees
    std::vector<int> beta(r, 0);
    mpz_class inner = 0;
    auto rec = [&](auto&& self, int pos, int left) -> void {
      if (pos == r - 1) {
        beta[pos] = left;
        int64_t shift = 0;
        for (int i = 0; i < r; ++i) shift += static_cast<int64_t>(beta[i]) * degrees[i];
        inner += chi_omega_restricted(n, degrees, p - j, -shift);
        return;
      }
      for (int e = 0; e <= left; ++e) {
        beta[pos] = e;
        self(self, pos + 1, left - e);
      }
    };
    if (r == 0) {
      if (j == 0) inner = chi_omega_restricted(n, degrees, p, 0);
    } else {
      rec(rec, 0, j);
    }
    sum += (j % 2 == 0) ? inner : -inner;
    if (j > p) break;
  }
  return sum;
}

// Middle Hodge number h^{p, m-p}(Y), m = n - r, from chi_p and the Lefschetz
// off-middle values h^{a,b} = delta_{ab}.
inline mpz_class ci_middle_hodge(int n, const std::vector<int>& degrees, int p) {
  int m = n - static_cast<int>(degrees.size());
  if (m < 0 || p < 0 || p > m) return 0;
  mpz_class chi = ci_chi_p(n, degrees, p);
  mpz_class off = 0;
  if (2 * p != m) off = (p % 2 == 0) ? 1 : -1;  // the (p,p) class away from the middle
  mpz_class h = chi - off;
  if ((m - p) % 2 != 0) h = -h;
  if (h < 0) throw std::runtime_error("ci_middle_hodge: negative value, inconsistent input");
  return h;
}

// Variable part: the cokernel of the ambient restriction drops one (p,p)
// class when the middle degree is even.
inline mpz_class ci_variable_hodge(int n, const std::vector<int>& degrees, int k) {
  int m = n - static_cast<int>(degrees.size());
  mpz_class h = ci_middle_hodge(n, degrees, m - k);
  if (m % 2 == 0 && 2 * k == m) h -= 1;
  if (h < 0) throw std::runtime_error("ci_variable_hodge: negative value");
  return h;
}

}  // namespace hodgejac
