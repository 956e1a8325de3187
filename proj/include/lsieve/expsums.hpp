#pragma once

// Gauss sums tau(chi) and Ramanujan sums c_r(n), each by definition and
// (for c_r) by the divisor-sum closed form.

#include <complex>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <vector>

#include "lsieve/arith.hpp"
#include "lsieve/characters.hpp"

namespace lsieve {

/// A sum of `term_count` unimodular terms.
struct UnitCircleSum {
  std::complex<double> value;
  u64 term_count = 0;
};

/// e(num / den) with the fraction reduced mod 1 before scaling.
inline std::complex<double> e_fraction(i64 num, u64 den) {
  const i64 d = static_cast<i64>(den);
  return unit_root(static_cast<u64>(((num % d) + d) % d), den);
}

/// tau(chi) = sum_{u mod q} chi(u) e(u/q), by definition for every chi.
inline UnitCircleSum gauss_sum_terms(const DirichletCharacter& chi) {
  const u64 q = chi.modulus();
  std::complex<double> s{0.0, 0.0};
  u64 terms = 0;
  for (u64 u = 0; u < q; ++u) {
    const auto v = chi.exact(static_cast<i64>(u));
    if (!v) continue;
    s += v->to_complex() * e_fraction(static_cast<i64>(u), q);
    ++terms;
  }
  return {s, terms};
}

inline std::complex<double> gauss_sum(const DirichletCharacter& chi) { return gauss_sum_terms(chi).value; }

/// c_r(n) = sum_{u mod r, (u,r)=1} e(un/r).
inline std::complex<double> ramanujan_sum_exp(u64 r, i64 n) {
  if (r == 0) throw DomainError("ramanujan_sum_exp: r must be positive");
  const i64 nr = static_cast<i64>(r);
  const i64 n_red = ((n % nr) + nr) % nr;
  std::complex<double> s{0.0, 0.0};
  for (u64 u = 1; u <= r; ++u) {
    if (std::gcd(u, r) != 1) continue;
    s += e_fraction(static_cast<i64>((static_cast<unsigned __int128>(u) * static_cast<u64>(n_red)) % r), r);
  }
  return s;
}

/// c_r(n) = sum_{d | (n, r)} d mu(r/d), exact.
inline i64 ramanujan_sum_divisor(const FactoredInt& r, i64 n) {
  const u64 g = std::gcd(r.n, static_cast<u64>(std::llabs(n)));  // gcd(r, 0) = r
  i64 s = 0;
  for (u64 d : divisors(r)) {
    if (g % d != 0) continue;
    s += static_cast<i64>(d) * mobius(r.n / d);
  }
  return s;
}
inline i64 ramanujan_sum_divisor(u64 r, i64 n) { return ramanujan_sum_divisor(factorize(r), n); }

/// c_r(u) for u = 0, ..., r - 1 (c_r is r-periodic in n).
inline std::vector<i64> ramanujan_table(u64 r) {
  const FactoredInt fr = factorize(r);
  std::vector<i64> by_gcd(r + 1, 0);
  for (u64 d : divisors(fr)) by_gcd[d] = ramanujan_sum_divisor(fr, static_cast<i64>(d));
  std::vector<i64> out(r);
  for (u64 u = 0; u < r; ++u) out[u] = by_gcd[std::gcd(u, r)];
  return out;
}

}  // namespace lsieve
