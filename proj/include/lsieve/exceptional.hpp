#pragma once

// Large sieve sums with the contribution of a real character chi_D pulled out:
// coefficients Lambda(n) f(n/N), lambda = 1 * chi_D, L(1, chi_D), and the
// inequalities built from them.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lsieve/arith.hpp"
#include "lsieve/characters.hpp"
#include "lsieve/errors.hpp"
#include "lsieve/lsi.hpp"
#include "lsieve/report.hpp"

namespace lsieve {

/// A weight f on [0, 1] with 0 <= f <= 1, zero outside [0, 1].
class TestFunction {
 public:
  enum class Kind { indicator, smooth_bump, user_table };

  static TestFunction indicator() {
    TestFunction f;
    f.kind_ = Kind::indicator;
    f.A1_ = 1.0;
    f.A2_ = 1.0;
    return f;
  }

  /// exp(4 - 1/(u(1-u))): exp(1 - 1/(u(1-u))) rescaled to peak 1 at u = 1/2.
  static TestFunction smooth_bump() {
    TestFunction f;
    f.kind_ = Kind::smooth_bump;
    f.integrate();
    return f;
  }

  /// Piecewise linear through values[i] at u = i / (size - 1).
  static TestFunction user_table(std::vector<double> values) {
    if (values.size() < 2) throw DomainError("test function: table needs at least two values");
    for (double v : values) {
      if (!(v >= 0.0 && v <= 1.0)) throw DomainError("test function: table values must lie in [0, 1]");
    }
    TestFunction f;
    f.kind_ = Kind::user_table;
    f.table_ = std::move(values);
    f.integrate();
    return f;
  }

  Kind kind() const noexcept { return kind_; }
  double A1() const noexcept { return A1_; }
  double A2() const noexcept { return A2_; }

  std::string name() const {
    switch (kind_) {
      case Kind::indicator: return "indicator";
      case Kind::smooth_bump: return "smooth_bump";
      case Kind::user_table: return "user_table";
    }
    return "";
  }

  double operator()(double u) const {
    if (u < 0.0 || u > 1.0) return 0.0;
    switch (kind_) {
      case Kind::indicator: return 1.0;
      case Kind::smooth_bump: {
        if (u <= 0.0 || u >= 1.0) return 0.0;
        return std::exp(4.0 - 1.0 / (u * (1.0 - u)));
      }
      case Kind::user_table: {
        const double pos = u * static_cast<double>(table_.size() - 1);
        const std::size_t i = std::min(static_cast<std::size_t>(pos), table_.size() - 2);
        const double t = pos - static_cast<double>(i);
        return table_[i] * (1.0 - t) + table_[i + 1] * t;
      }
    }
    return 0.0;
  }

 private:
  void integrate() {
    using boost::math::quadrature::gauss_kronrod;
    auto f = [this](double u) { return (*this)(u); };
    auto f2 = [this](double u) { const double v = (*this)(u); return v * v; };
    A1_ = gauss_kronrod<double, 61>::integrate(f, 0.0, 1.0, 15, 1e-10);
    A2_ = gauss_kronrod<double, 61>::integrate(f2, 0.0, 1.0, 15, 1e-10);
  }

  Kind kind_ = Kind::indicator;
  std::vector<double> table_;
  double A1_ = 1.0;
  double A2_ = 1.0;
};

/// The real primitive character mod D; for D = 8 the even one (chi(-1) = 1) is taken first.
inline DirichletCharacter exceptional_character(u64 D) {
  auto chars = real_primitive_characters(D);
  if (chars.empty()) throw DomainError("no real primitive character of conductor " + std::to_string(D));
  std::stable_sort(chars.begin(), chars.end(), [D](const DirichletCharacter& a, const DirichletCharacter& b) {
    return a(static_cast<i64>(D - 1)).real() > b(static_cast<i64>(D - 1)).real();
  });
  return chars.front();
}

inline double chi_real(const DirichletCharacter& chi, u64 n) { return chi(static_cast<i64>(n % chi.modulus())).real(); }

struct ExceptionalSetup {
  u64 D = 0;
  DirichletCharacter chi_D;
  u64 N = 0;
  double Q = 0.0;  // sqrt(N) / log N
  TestFunction f;

  static ExceptionalSetup make(u64 D, u64 N, TestFunction f = TestFunction::indicator()) {
    if (N < 3) throw DomainError("exceptional setup: N must be >= 3");
    const double n = static_cast<double>(N);
    const double Q = std::sqrt(n) / std::log(n);
    if (D < 3 || static_cast<double>(D) > Q) {
      throw DomainError("exceptional setup: requires 3 <= D <= Q = sqrt(N)/log N, got D = " + std::to_string(D) +
                        ", Q = " + std::to_string(Q));
    }
    return {D, exceptional_character(D), N, Q, std::move(f)};
  }
};

/// a_n = Lambda(n) f(n/N) on (0, N].
inline CoefficientSequence coeffs_lambda_f(u64 N, const TestFunction& f) {
  if (N < 3) throw DomainError("coeffs_lambda_f: N must be >= 3");
  const auto lam = von_mangoldt_table(N);
  const double n = static_cast<double>(N);
  return CoefficientSequence::generate(0, N, [&](u64 k) {
    return cplx{lam[k] == 0.0 ? 0.0 : lam[k] * f(static_cast<double>(k) / n), 0.0};
  });
}

/// 1 + chi_D(n).
inline double one_plus_chi(u64 n, const DirichletCharacter& chi) { return 1.0 + chi_real(chi, n); }

/// sum_{d | n} chi_D(d).
inline double lambda_conv(const FactoredInt& n, const DirichletCharacter& chi) {
  double s = 0.0;
  for (u64 d : divisors(n)) s += chi_real(chi, d);
  return s;
}

/// lambda(n) for n <= limit by a divisor sieve.
inline std::vector<double> lambda_table(u64 limit, const DirichletCharacter& chi) {
  std::vector<double> out(limit + 1, 0.0);
  for (u64 d = 1; d <= limit; ++d) {
    const double c = chi_real(chi, d);
    if (c == 0.0) continue;
    for (u64 m = d; m <= limit; m += d) out[m] += c;
  }
  return out;
}

struct LValue {
  double value = 0.0;
  double tail_bound = 0.0;
  u64 truncation = 0;
};

inline u64 default_L1_truncation(u64 D) { return std::max({u64{1'000'000}, 1000 * D, D * D}); }

/// sum_{n <= T} chi(n)/n with tail bound D/T from partial summation.
inline LValue L1_chiD(const DirichletCharacter& chi, u64 T) {
  const u64 D = chi.modulus();
  if (chi.is_principal()) throw DomainError("L1_chiD: principal character");
  if (T < D * D) throw DomainError("L1_chiD: truncation must be >= D^2 = " + std::to_string(D * D));
  const auto vals = chi.values();
  // Sum per residue class in reverse so small terms accumulate first.
  long double s = 0.0L;
  for (u64 n = T; n >= 1; --n) {
    const double c = vals[n % D].real();
    if (c != 0.0) s += c / static_cast<long double>(n);
  }
  return {static_cast<double>(s), static_cast<double>(D) / static_cast<double>(T), T};
}
inline LValue L1_chiD(const DirichletCharacter& chi) { return L1_chiD(chi, default_L1_truncation(chi.modulus())); }

/// sum_{n <= N} lambda(n) two ways, against L(1, chi) N.
struct LambdaSummatory {
  u64 N = 0;
  double by_table = 0.0;    // sum of lambda(n)
  double by_floor = 0.0;    // sum_{d <= N} chi(d) floor(N/d)
  double main_term = 0.0;   // L(1, chi) N
  double error = 0.0;       // by_floor - main_term
  double kappa = 0.0;       // |error| / (sqrt N D^{1/4} log N)
};

inline LambdaSummatory lambda_summatory(const DirichletCharacter& chi, u64 N, std::optional<LValue> L1 = {}) {
  if (N < 2) throw DomainError("lambda_summatory: N must be >= 2");
  LambdaSummatory r;
  r.N = N;
  const auto table = lambda_table(N, chi);
  long double t = 0.0L, f = 0.0L;
  for (u64 n = 1; n <= N; ++n) t += table[n];
  for (u64 d = 1; d <= N; ++d) f += chi_real(chi, d) * static_cast<long double>(N / d);
  r.by_table = static_cast<double>(t);
  r.by_floor = static_cast<double>(f);
  const LValue L = L1 ? *L1 : L1_chiD(chi);
  const double n = static_cast<double>(N);
  r.main_term = L.value * n;
  r.error = r.by_floor - r.main_term;
  r.kappa = std::abs(r.error) / (std::sqrt(n) * std::pow(static_cast<double>(chi.modulus()), 0.25) * std::log(n));
  return r;
}

/// sum a_n / N and sum a_n^2 / (N log N) for a_n = Lambda(n) f(n/N), compared with A1, A2.
struct LambdaMoments {
  u64 N = 0;
  double first = 0.0;
  double second = 0.0;
  double first_deviation = 0.0;   // |first - A1|
  double second_deviation = 0.0;  // |second - A2|
};

inline LambdaMoments lambda_moments(u64 N, const TestFunction& f) {
  const auto a = coeffs_lambda_f(N, f);
  long double s1 = 0.0L, s2 = 0.0L;
  for (const auto& v : a.values()) {
    s1 += v.real();
    s2 += v.real() * v.real();
  }
  const double n = static_cast<double>(N);
  LambdaMoments m;
  m.N = N;
  m.first = static_cast<double>(s1) / n;
  m.second = static_cast<double>(s2) / (n * std::log(n));
  m.first_deviation = std::abs(m.first - f.A1());
  m.second_deviation = std::abs(m.second - f.A2());
  return m;
}

/// (sum chi_D a)^2 >= (sum a)^2 - 2 (sum a)(sum (1 + chi_D) a) for real a >= 0.
inline InequalityReport eq37_check(const CoefficientSequence& a, const DirichletCharacter& chi) {
  long double s = 0.0L, sc = 0.0L, sr = 0.0L;
  for (u64 i = 0; i < a.N(); ++i) {
    const cplx v = a.values()[i];
    if (v.imag() != 0.0 || v.real() < 0.0) {
      throw DomainError("eq37_check: coefficients must be real and nonnegative (a_" + std::to_string(a.M() + 1 + i) +
                        ")");
    }
    if (v.real() == 0.0) continue;
    const u64 n = a.M() + 1 + i;
    s += v.real();
    sc += chi_real(chi, n) * v.real();
    sr += one_plus_chi(n, chi) * v.real();
  }
  const double lhs = static_cast<double>(sc * sc);
  const double rhs = static_cast<double>(s * s - 2.0L * s * sr);
  auto r = InequalityReport::make(Inequality::eq37, lhs, rhs, Bound::lower);
  r.parameters = {{"M", double(a.M())},
                  {"N", double(a.N())},
                  {"D", double(chi.modulus())},
                  {"sum_a", static_cast<double>(s)},
                  {"sum_chi_a", static_cast<double>(sc)},
                  {"sum_rho_a", static_cast<double>(sr)}};
  return r;
}

/// Log-weighted primitive energy over 1 < q <= Q, split by whether the
/// character is the excluded one.
struct WeightedEnergy {
  double kept = 0.0;
  double excluded = 0.0;
};

inline WeightedEnergy log_weighted_energy(const CoefficientSequence& a, double Q,
                                          const std::optional<DirichletCharacter>& exclude) {
  WeightedEnergy e;
  const u64 top = static_cast<u64>(std::floor(Q));
  for (u64 q = 2; q <= top; ++q) {
    if (q % 4 == 2) continue;
    const double w = std::log(Q / static_cast<double>(q));
    if (w == 0.0) continue;
    const auto b = detail::fold(a, q);
    const auto& table = detail::primitive_table(q);
    for (std::size_t i = 0; i < table.values.size(); ++i) {
      const double v = w * std::norm(detail::dot(b, table.values[i]));
      if (exclude && q == exclude->modulus() && table.characters[i] == *exclude) {
        e.excluded += v;
      } else {
        e.kept += v;
      }
    }
  }
  return e;
}

/// Prime indicator on (M, M+N]: log-weighted sum over chi != chi_D against
/// (Q^2 + N) P - log(Q^2/D) P^2 + 2 log(Q/D) P Lambda_sum, P the prime count.
inline InequalityReport eq31_check(u64 M, u64 N, double Q, const DirichletCharacter& chi) {
  const u64 D = chi.modulus();
  if (!(Q >= 1.0)) throw DomainError("eq31_check: Q must be >= 1");
  if (static_cast<double>(D) > Q) throw DomainError("eq31_check: requires D <= Q");
  if (static_cast<double>(M) < Q) throw DomainError("eq31_check: primes must exceed Q (need M >= Q)");
  auto a = CoefficientSequence::zeros(M, N);
  const PrimeTable primes = sieve_primes(std::max<u64>(M + N, 2));
  double count = 0.0, lambda_sum = 0.0;
  for (auto it = std::upper_bound(primes.begin(), primes.end(), M); it != primes.end(); ++it) {
    a.set(*it, 1.0);
    count += 1.0;
    lambda_sum += one_plus_chi(*it, chi);
  }
  const double lhs = log_weighted_energy(a, Q, chi).kept;
  const double d = static_cast<double>(D);
  const double rhs = (Q * Q + static_cast<double>(N)) * count - std::log(Q * Q / d) * count * count +
                     2.0 * std::log(Q / d) * count * lambda_sum;
  auto r = InequalityReport::make(Inequality::eq31, lhs, rhs);
  r.parameters = {{"M", double(M)}, {"N", double(N)}, {"Q", Q}, {"D", d}, {"primes", count}, {"lambda_sum", lambda_sum}};
  return r;
}

inline double default_exceptional_Q(u64 N) {
  const double n = static_cast<double>(N);
  return std::sqrt(n) / std::log(n);
}

inline constexpr double kLemma31SlackLimit = 50.0;

/// Log-weighted sum over chi != chi_D for a_n = Lambda(n) f(n/N) against
/// (A2 log N - A1^2 log(N/D)) N^2 + 2 A1 log(Q/D) N^2 L(1, chi_D) log N + kappa N^2.
/// kappa is fitted and the report passes when it is at most kLemma31SlackLimit.
inline InequalityReport lemma31_report(const ExceptionalSetup& s, std::optional<LValue> L1 = {}) {
  const auto a = coeffs_lambda_f(s.N, s.f);
  const auto energy = log_weighted_energy(a, s.Q, s.chi_D);
  const LValue L = L1 ? *L1 : L1_chiD(s.chi_D);
  const double n = static_cast<double>(s.N), d = static_cast<double>(s.D);
  const double n2 = n * n, log_n = std::log(n);
  const double main = (s.f.A2() * log_n - s.f.A1() * s.f.A1() * std::log(n / d)) * n2 +
                      2.0 * s.f.A1() * std::log(s.Q / d) * n2 * L.value * log_n;
  const double kappa = (energy.kept - main) / n2;
  auto r = InequalityReport::make(Inequality::lemma31, energy.kept, main + kLemma31SlackLimit * n2);
  // Exact lambda-weighted sum and its majorant sum_{n<=N} lambda(n) log N.
  const auto lam = lambda_table(s.N, s.chi_D);
  long double exact = 0.0L, majorant = 0.0L;
  for (u64 k = 1; k <= s.N; ++k) {
    exact += lam[k] * a.at(k).real();
    majorant += lam[k];
  }
  r.parameters = {{"N", n},
                  {"Q", s.Q},
                  {"D", d},
                  {"A1", s.f.A1()},
                  {"A2", s.f.A2()},
                  {"L1", L.value},
                  {"main_term", main},
                  {"kappa", kappa},
                  {"excluded_energy", energy.excluded},
                  {"lambda_weighted_sum", static_cast<double>(exact)},
                  {"lambda_majorant", static_cast<double>(majorant) * log_n}};
  r.notes["f"] = s.f.name();
  return r;
}

/// The same left side with f = 1 against N^2 (log D + L(1, chi_D) log^2 N + C0).
/// C0 = log c is fitted; the right side uses max(C0, 0) since c >= 1.
inline InequalityReport prop31_report(const ExceptionalSetup& s, std::optional<LValue> L1 = {}) {
  if (s.f.kind() != TestFunction::Kind::indicator) throw DomainError("prop31_report: requires f = indicator");
  const auto a = coeffs_lambda_f(s.N, s.f);
  const auto energy = log_weighted_energy(a, s.Q, s.chi_D);
  const LValue L = L1 ? *L1 : L1_chiD(s.chi_D);
  const double n = static_cast<double>(s.N), d = static_cast<double>(s.D);
  const double n2 = n * n, log_n = std::log(n);
  const double base = std::log(d) + L.value * log_n * log_n;
  const double c0 = energy.kept / n2 - base;
  const double c0_used = std::max(c0, 0.0);
  auto r = InequalityReport::make(Inequality::prop31, energy.kept, n2 * (base + c0_used));
  r.parameters = {{"N", n},
                  {"Q", s.Q},
                  {"D", d},
                  {"L1", L.value},
                  {"C0_fit", c0},
                  {"C0_used", c0_used},
                  {"excluded_energy", energy.excluded}};
  return r;
}

/// Open window D^{1/eps^2} < N < D^{1/eps^3}.
struct Prop32Window {
  double lower = 0.0;
  double upper = 0.0;
  bool contains(double n) const { return n > lower && n < upper; }
};

inline Prop32Window prop32_window(u64 D, double eps) {
  const double ld = std::log(static_cast<double>(D));
  return {std::exp(ld / (eps * eps)), std::exp(ld / (eps * eps * eps))};
}

/// Smallest integer inside the window, if any.
inline std::optional<u64> prop32_default_N(u64 D, double eps) {
  const auto w = prop32_window(D, eps);
  const double first = std::floor(w.lower) + 1.0;
  if (!(first < w.upper) || first > 1e12) return std::nullopt;
  return static_cast<u64>(first);
}

/// Evaluates L(1, chi_D) log D <= eps^5; if it holds, checks
/// |sum_{n<=N} chi(n) Lambda(n)| <= 3 eps N for primitive chi mod q, q^4 <= N,
/// q <= q_max, chi != chi_D. The maximum is reported either way.
inline InequalityReport prop32_check(u64 D, double eps, u64 N, u64 q_max, std::optional<LValue> L1 = {}) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("prop32_check: eps must lie in (0, 1)");
  if (D < 3) throw DomainError("prop32_check: D must be >= 3");
  const auto w = prop32_window(D, eps);
  if (!w.contains(static_cast<double>(N))) {
    throw DomainError("prop32_check: N = " + std::to_string(N) + " outside the window D^(1/eps^2) = " +
                      std::to_string(w.lower) + " < N < D^(1/eps^3) = " + std::to_string(w.upper));
  }
  const DirichletCharacter chi_D = exceptional_character(D);
  const LValue L = L1 ? *L1 : L1_chiD(chi_D);
  const double ld = std::log(static_cast<double>(D));
  const bool hypothesis = L.value * ld <= std::pow(eps, 5);
  u64 q_top = 1;
  while ((q_top + 1) * (q_top + 1) * (q_top + 1) * (q_top + 1) <= N) ++q_top;
  q_top = std::min(q_top, q_max);
  const auto lam = von_mangoldt_table(N);
  double worst = 0.0;
  u64 worst_q = 0, scanned = 0;
  for (u64 q = 2; q <= q_top; ++q) {
    const auto& table = detail::primitive_table(q);
    for (std::size_t i = 0; i < table.values.size(); ++i) {
      if (q == D && table.characters[i] == chi_D) continue;
      cplx s{};
      for (u64 n = 2; n <= N; ++n) {
        if (lam[n] != 0.0) s += lam[n] * table.values[i][n % q];
      }
      ++scanned;
      if (std::abs(s) > worst) {
        worst = std::abs(s);
        worst_q = q;
      }
    }
  }
  const double n = static_cast<double>(N);
  auto r = InequalityReport::make(Inequality::prop32, worst, 3.0 * eps * n);
  r.parameters = {{"D", double(D)},
                  {"eps", eps},
                  {"N", n},
                  {"q_max", double(q_max)},
                  {"q_scanned_max", double(q_top)},
                  {"characters_scanned", double(scanned)},
                  {"worst_q", double(worst_q)},
                  {"L1", L.value},
                  {"hypothesis_lhs", L.value * ld},
                  {"hypothesis_rhs", std::pow(eps, 5)},
                  {"window_lower", w.lower},
                  {"window_upper", w.upper}};
  r.notes["hypothesis"] = hypothesis ? "satisfied" : "not satisfied";
  if (!hypothesis) {
    r.notes["conclusion"] = "untested";
    r.pass = true;
  } else {
    r.notes["conclusion"] = r.pass ? "holds" : "fails";
  }
  return r;
}

}  // namespace lsieve
