#pragma once

// Sums of nu(n) tau(n) / n over integers built from distinct primes = 3 (mod 4),
// their Euler-product constant, and checks of the generating Dirichlet series.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <vector>

#include "lsieve/arith.hpp"
#include "lsieve/errors.hpp"
#include "lsieve/lsi.hpp"

namespace lsieve {

/// A truncated Euler product. tail_bound bounds the log-scale truncation error.
struct EulerProductValue {
  double value = 0.0;
  u64 cutoff = 0;
  double tail_bound = 0.0;
};

namespace detail {

inline u64 floor_x(double x, const char* who) {
  if (!(x >= 1.0)) throw DomainError(std::string(who) + ": x must be >= 1");
  return static_cast<u64>(std::floor(x));
}

/// prod_{p = 3 mod 4, p <= cutoff} (1 - 2/(p(p+1))), as a log.
inline long double log_three_mod_four_product(u64 cutoff) {
  long double s = 0.0L;
  for (u64 p : sieve_primes(cutoff)) {
    if (p % 4 != 3) continue;
    const long double lp = static_cast<long double>(p);
    s += std::log1p(-2.0L / (lp * (lp + 1.0L)));
  }
  return s;
}

}  // namespace detail

/// (3/pi) prod_{p = 3 mod 4} (1 - 2/(p(p+1))), truncated at `cutoff`.
/// The 3/pi prefactor is the residue of the product that keeps a factor
/// (1 + 2^-s) at p = 2; see nu_tau_density for the density without it.
inline EulerProductValue constant_c(u64 cutoff) {
  if (cutoff < 3) throw DomainError("constant_c: cutoff must be >= 3");
  const long double v = 3.0L / std::numbers::pi_v<long double> * std::exp(detail::log_three_mod_four_product(cutoff));
  return {static_cast<double>(v), cutoff, 2.0 / static_cast<double>(cutoff)};
}

/// (2/pi) prod_{p = 3 mod 4} (1 - 2/(p(p+1))): the limit of count_nu_tau(x)/x.
inline EulerProductValue nu_tau_density(u64 cutoff) {
  if (cutoff < 3) throw DomainError("nu_tau_density: cutoff must be >= 3");
  const long double v = 2.0L / std::numbers::pi_v<long double> * std::exp(detail::log_three_mod_four_product(cutoff));
  return {static_cast<double>(v), cutoff, 2.0 / static_cast<double>(cutoff)};
}

inline constexpr u64 kDefaultEulerCutoff = 10'000'000ULL;

/// constant_c at kDefaultEulerCutoff, computed once.
inline double default_c() {
  static const double c = constant_c(kDefaultEulerCutoff).value;
  return c;
}

/// Calls fn(n, omega(n)) for nu-supported n <= x coprime to q.
template <class Fn>
void for_each_nu_term(const FactoredInt& q, double x, Fn&& fn, u64 budget = kDefaultSieveBudget) {
  const u64 top = detail::floor_x(x, "nu enumeration");
  if (top > budget) throw ResourceError("nu enumeration: x = " + std::to_string(top) + " exceeds the sieve budget");
  for_each_nu_supported(top, fn, q, budget);
}

/// sum_{n <= x, (n,q) = 1} nu(n) tau(n) / n.
inline double S_q(const FactoredInt& q, double x, u64 budget = kDefaultSieveBudget) {
  long double s = 0.0L;
  for_each_nu_term(q, x, [&](u64 n, unsigned omega) { s += std::ldexp(1.0L, static_cast<int>(omega)) / n; }, budget);
  return static_cast<double>(s);
}
inline double S_q(u64 q, double x) { return S_q(factorize(q), x); }

/// sum_{n <= x, (n,q) = 1} nu(n) / n.
inline double T_q(const FactoredInt& q, double x, u64 budget = kDefaultSieveBudget) {
  long double s = 0.0L;
  for_each_nu_term(q, x, [&](u64 n, unsigned) { s += 1.0L / n; }, budget);
  return static_cast<double>(s);
}
inline double T_q(u64 q, double x) { return T_q(factorize(q), x); }

/// sum_{n <= x} nu(n) tau(n), exact.
inline u64 count_nu_tau(double x, u64 budget = kDefaultSieveBudget) {
  u64 s = 0;
  for_each_nu_term(FactoredInt{}, x, [&](u64, unsigned omega) { s += u64{1} << omega; }, budget);
  return s;
}

/// prod_{p | q3} (1 + 2/p)^{-1}.
inline double F_q_at_one(const FactoredInt& q) {
  double f = 1.0;
  for (const auto& pp : q3_radical(q).factors) f /= 1.0 + 2.0 / static_cast<double>(pp.prime);
  return f;
}

/// c prod_{p | q3} (1 + 2/p)^{-1} log x.
inline double lemma21_main_term(const FactoredInt& q, double x, double c = default_c()) {
  if (!(x >= 1.0)) throw DomainError("lemma21_main_term: x must be >= 1");
  return c * F_q_at_one(q) * std::log(x);
}
inline double lemma21_main_term(u64 q, double x) { return lemma21_main_term(factorize(q), x); }

struct ErrorShape {
  double structured = 0.0;  // (1 + sum_{p|q3} log p / p) prod_{p|q3} (1 + 2/p)
  double simplified = 0.0;  // (log log 3q)^3
};

/// Error-term shapes without implied constants.
inline ErrorShape lemma21_error(const FactoredInt& q, double x) {
  if (!(x >= 1.0)) throw DomainError("lemma21_error: x must be >= 1");
  double sum = 1.0, prod = 1.0;
  for (const auto& pp : q3_radical(q).factors) {
    const double p = static_cast<double>(pp.prime);
    sum += std::log(p) / p;
    prod *= 1.0 + 2.0 / p;
  }
  const double ll = std::log(std::log(3.0 * static_cast<double>(q.n)));
  return {sum * prod, ll * ll * ll};
}
inline ErrorShape lemma21_error(u64 q, double x) { return lemma21_error(factorize(q), x); }

/// One (q, x) evaluation of the main-term comparison.
struct Lemma21Point {
  u64 q = 1;
  double x = 1.0;
  double S = 0.0;
  double T = 0.0;
  double main_term = 0.0;
  double structured_error = 0.0;
  double simplified_error = 0.0;
  double fitted_C = 0.0;  // |S - main| / structured
  bool t_squared_dominates = true;
  double kappa = 0.0;     // T / (prod_{p|q3}(1+1/p)^{-1} sqrt(log x)), 0 at x = 1
};

inline Lemma21Point lemma21_point(u64 q, double x, double c = default_c()) {
  const FactoredInt fq = factorize(q);
  Lemma21Point pt;
  pt.q = q;
  pt.x = x;
  pt.S = S_q(fq, x);
  pt.T = T_q(fq, x);
  pt.main_term = lemma21_main_term(fq, x, c);
  const ErrorShape e = lemma21_error(fq, x);
  pt.structured_error = e.structured;
  pt.simplified_error = e.simplified;
  pt.fitted_C = std::abs(pt.S - pt.main_term) / e.structured;
  pt.t_squared_dominates = pt.T * pt.T >= pt.S;
  double damp = 1.0;
  for (const auto& pp : q3_radical(fq).factors) damp /= 1.0 + 1.0 / static_cast<double>(pp.prime);
  pt.kappa = x > 1.0 ? pt.T / (damp * std::sqrt(std::log(x))) : 0.0;
  return pt;
}

struct Lemma21Fit {
  std::vector<Lemma21Point> points;  // q-major, x-minor
  double C = 0.0;                    // max fitted_C
  double kappa_min = 0.0;
  double kappa_max = 0.0;
  bool t_squared_dominates = true;
};

inline Lemma21Fit lemma21_fit(const std::vector<u64>& qs, const std::vector<double>& xs, double c = default_c()) {
  Lemma21Fit fit;
  fit.kappa_min = std::numeric_limits<double>::infinity();
  for (u64 q : qs) {
    for (double x : xs) {
      auto pt = lemma21_point(q, x, c);
      fit.C = std::max(fit.C, pt.fitted_C);
      if (pt.x > 1.0) {
        fit.kappa_min = std::min(fit.kappa_min, pt.kappa);
        fit.kappa_max = std::max(fit.kappa_max, pt.kappa);
      }
      fit.t_squared_dominates = fit.t_squared_dominates && pt.t_squared_dominates;
      fit.points.push_back(pt);
    }
  }
  if (!std::isfinite(fit.kappa_min)) fit.kappa_min = 0.0;
  return fit;
}

/// script_L(Q, R) / sqrt(log R) with the moduli set of nu-supported r <= R.
struct ScriptLGrowth {
  u64 Q = 0;
  u64 R = 0;
  double L = 0.0;
  double kappa_prime = 0.0;
};

inline ScriptLGrowth script_L_growth(u64 Q, u64 R) {
  if (R < 2) throw DomainError("script_L_growth: R must be >= 2");
  const auto moduli = nu_supported_upto(R);
  const double L = script_L(Q, moduli).value;
  return {Q, R, L, L / std::sqrt(std::log(static_cast<double>(R)))};
}

/// Three evaluations of Z(s) = sum nu(n) tau(n) n^-s.
struct ZSeriesReport {
  double s = 0.0;
  u64 cutoff = 0;
  double direct = 0.0;         // truncated Dirichlet series
  double euler = 0.0;          // prod_p (1 + (1 - chi4(p)) p^-s), p = 2 included
  double factored = 0.0;       // zeta/L(chi4) (1 - 4^-s) prod_{p=3(4)} (...)
  double two_factor = 0.0;     // 1 + 2^-s, the p = 2 factor of the product form
  double euler_without_two = 0.0;
  double tail_estimate = 0.0;
  double tolerance = 0.0;      // 10 * tail_estimate
  double product_forms_discrepancy = 0.0;   // |euler - factored|
  double literal_discrepancy = 0.0;         // |direct - euler|
  double corrected_discrepancy = 0.0;       // |direct - euler_without_two|
  bool product_forms_agree = false;
  bool literal_agrees = false;
  bool corrected_agrees = false;
  bool pass = false;  // product forms agree with each other and with the series once p = 2 is removed
};

inline ZSeriesReport z_series_check(double s, u64 cutoff) {
  if (!(s > 1.0)) throw DomainError("z_series_check: s must exceed 1 (the series diverges)");
  if (s < 1.5) throw DomainError("z_series_check: s must be >= 1.5");
  if (cutoff < 1000) throw DomainError("z_series_check: cutoff must be >= 1000");
  ZSeriesReport r;
  r.s = s;
  r.cutoff = cutoff;

  long double direct = 0.0L;
  for_each_nu_supported(cutoff, [&](u64 n, unsigned omega) {
    direct += std::ldexp(1.0L, static_cast<int>(omega)) * std::pow(static_cast<long double>(n), -s);
  });
  r.direct = static_cast<double>(direct);

  long double zeta = 0.0L, lchi4 = 0.0L;
  for (u64 n = cutoff; n >= 1; --n) {
    const long double t = std::pow(static_cast<long double>(n), -s);
    zeta += t;
    if (n % 4 == 1) lchi4 += t;
    if (n % 4 == 3) lchi4 -= t;
  }
  // Alternating tail of L(s, chi4) lies between 0 and the first omitted term; take the midpoint.
  const long double t0 = std::pow(static_cast<long double>(cutoff + 1), -s);
  const long double l_tail = ((cutoff + 1) % 4 == 1) ? t0 / 2 : ((cutoff + 1) % 4 == 3 ? -t0 / 2 : 0.0L);
  lchi4 += l_tail;
  zeta += std::pow(static_cast<long double>(cutoff) + 0.5L, 1.0L - s) / (s - 1.0L);

  long double log_euler = 0.0L, log_three = 0.0L;
  for (u64 p : sieve_primes(cutoff)) {
    const long double ps = std::pow(static_cast<long double>(p), -s);
    if (p == 2) {
      log_euler += std::log1p(ps);
    } else if (p % 4 == 3) {
      log_euler += std::log1p(2.0L * ps);
      log_three += std::log1p(ps - 2.0L * ps * ps) - std::log1p(ps);
    }
  }
  r.euler = static_cast<double>(std::exp(log_euler));
  r.two_factor = 1.0 + std::pow(2.0, -s);
  r.euler_without_two = r.euler / r.two_factor;
  r.factored = static_cast<double>(zeta / lchi4 * (1.0L - std::pow(4.0L, -s)) * std::exp(log_three));

  const double T = static_cast<double>(cutoff);
  r.tail_estimate = std::pow(T, 1.0 - s) * (1.0 + std::log(T)) / (s - 1.0);
  r.tolerance = 10.0 * r.tail_estimate;
  r.product_forms_discrepancy = std::abs(r.euler - r.factored);
  r.literal_discrepancy = std::abs(r.direct - r.euler);
  r.corrected_discrepancy = std::abs(r.direct - r.euler_without_two);
  r.product_forms_agree = r.product_forms_discrepancy <= r.tolerance;
  r.literal_agrees = r.literal_discrepancy <= r.tolerance;
  r.corrected_agrees = r.corrected_discrepancy <= r.tolerance;
  r.pass = r.product_forms_agree && r.corrected_agrees;
  return r;
}

/// Both sides of S_q(x) = sum_{a <= x} f(a)/a S(x/a), f(a) = (-2)^Omega(a) on q3-smooth a.
struct ConvolutionReport {
  double direct = 0.0;
  double convolved = 0.0;
  u64 smooth_terms = 0;
  double relative_error = 0.0;
  bool pass = false;
};

inline ConvolutionReport convolution_identity_check(const FactoredInt& q, double x) {
  const u64 top = detail::floor_x(x, "convolution_identity_check");
  // Sorted nu-supported n <= x with prefix sums of tau(n)/n, so S(y) is a lookup.
  std::vector<std::pair<u64, long double>> terms;
  for_each_nu_supported(top, [&](u64 n, unsigned omega) {
    terms.emplace_back(n, std::ldexp(1.0L, static_cast<int>(omega)) / n);
  });
  std::sort(terms.begin(), terms.end());
  std::vector<long double> prefix(terms.size() + 1, 0.0L);
  for (std::size_t i = 0; i < terms.size(); ++i) prefix[i + 1] = prefix[i] + terms[i].second;
  auto S_upto = [&](u64 y) {
    const auto it = std::upper_bound(terms.begin(), terms.end(), std::pair<u64, long double>{y, std::numeric_limits<long double>::infinity()});
    return prefix[static_cast<std::size_t>(it - terms.begin())];
  };

  ConvolutionReport r;
  r.direct = S_q(q, x);
  const auto primes = q3_radical(q).factors;
  long double conv = 0.0L;
  // Depth-first over q3-smooth a <= x; f(a)/a = prod (-2/p)^alpha.
  auto walk = [&](auto&& self, std::size_t start, u64 a, long double weight) -> void {
    conv += weight * S_upto(top / a);
    ++r.smooth_terms;
    for (std::size_t i = start; i < primes.size(); ++i) {
      const u64 p = primes[i].prime;
      if (p > top / a) continue;
      self(self, i, a * p, weight * (-2.0L / p));
    }
  };
  walk(walk, 0, 1, 1.0L);
  r.convolved = static_cast<double>(conv);
  r.relative_error = std::abs(r.direct - r.convolved) / std::max(std::abs(r.direct), 1.0);
  r.pass = r.relative_error <= 1e-12;
  return r;
}
inline ConvolutionReport convolution_identity_check(u64 q, double x) {
  return convolution_identity_check(factorize(q), x);
}

}  // namespace lsieve
