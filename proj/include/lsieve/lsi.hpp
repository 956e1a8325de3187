#pragma once

// Left and right sides of the large sieve inequalities for arbitrary complex
// coefficients a_n on (M, M+N].
//
// Every evaluator folds a into residue classes mod m before touching
// characters, so a character sum costs O(m) after an O(N) pass. Partial sums
// are accumulated in ascending q, then ascending character index, which
// makes every reported LHS reproducible.

#include <algorithm>
#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "lsieve/arith.hpp"
#include "lsieve/characters.hpp"
#include "lsieve/errors.hpp"
#include "lsieve/expsums.hpp"
#include "lsieve/random.hpp"
#include "lsieve/report.hpp"

namespace lsieve {

using cplx = std::complex<double>;

/// Complex coefficients a_n supported on (M, M + N], N >= 1.
class CoefficientSequence {
 public:
  CoefficientSequence(u64 M, std::vector<cplx> values) : M_(M), values_(std::move(values)) {
    if (values_.empty()) throw DomainError("coefficient sequence: N must be >= 1");
  }

  static CoefficientSequence zeros(u64 M, u64 N) { return {M, std::vector<cplx>(N)}; }

  /// a_n = f(n) for M < n <= M + N.
  template <class F>
  static CoefficientSequence generate(u64 M, u64 N, F&& f) {
    std::vector<cplx> v(N);
    for (u64 i = 0; i < N; ++i) v[i] = f(M + 1 + i);
    return {M, std::move(v)};
  }

  u64 M() const noexcept { return M_; }
  u64 N() const noexcept { return values_.size(); }
  u64 first() const noexcept { return M_ + 1; }
  u64 last() const noexcept { return M_ + values_.size(); }

  cplx at(u64 n) const { return (n > M_ && n <= last()) ? values_[n - M_ - 1] : cplx{}; }
  void set(u64 n, cplx v) {
    if (n <= M_ || n > last()) throw DomainError("coefficient sequence: index outside (M, M+N]");
    values_[n - M_ - 1] = v;
  }
  const std::vector<cplx>& values() const noexcept { return values_; }

  double norm2() const {
    double s = 0.0;
    for (const auto& v : values_) s += std::norm(v);
    return s;
  }

  bool is_zero() const {
    return std::all_of(values_.begin(), values_.end(), [](const cplx& v) { return v == cplx{}; });
  }

  CoefficientSequence scaled(cplx c) const {
    CoefficientSequence out = *this;
    for (auto& v : out.values_) v *= c;
    return out;
  }

  /// Calls fn(n, a_n) for every n with a_n != 0.
  template <class Fn>
  void for_each_nonzero(Fn&& fn) const {
    for (u64 i = 0; i < values_.size(); ++i) {
      if (values_[i] != cplx{}) fn(M_ + 1 + i, values_[i]);
    }
  }

 private:
  u64 M_;
  std::vector<cplx> values_;
};

/// Which integers may carry nonzero coefficients.
class SupportRestriction {
 public:
  enum class Kind { none, prime_free, coprime_to };

  static SupportRestriction none() { return {}; }

  /// n has no prime divisor in `primes`.
  static SupportRestriction prime_free(std::vector<u64> primes) {
    SupportRestriction s;
    s.kind_ = Kind::prime_free;
    for (u64 p : primes) {
      if (p < 2 || factorize(p).omega() != 1 || factorize(p).factors[0].exponent != 1) {
        throw DomainError("support restriction: " + std::to_string(p) + " is not prime");
      }
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    s.set_ = primes;
    s.primes_ = std::move(primes);
    return s;
  }

  /// n has no prime divisor <= z.
  static SupportRestriction rough(u64 z) {
    std::vector<u64> primes;
    if (z >= 2) primes = sieve_primes(z).primes();
    return prime_free(std::move(primes));
  }

  /// gcd(n, r) = 1 for every r in `moduli`.
  static SupportRestriction coprime_to(std::vector<u64> moduli) {
    SupportRestriction s;
    s.kind_ = Kind::coprime_to;
    std::sort(moduli.begin(), moduli.end());
    moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
    for (u64 r : moduli) {
      if (r == 0) throw DomainError("support restriction: modulus 0");
      for (const auto& f : factorize(r).factors) s.primes_.push_back(f.prime);
    }
    std::sort(s.primes_.begin(), s.primes_.end());
    s.primes_.erase(std::unique(s.primes_.begin(), s.primes_.end()), s.primes_.end());
    s.set_ = std::move(moduli);
    return s;
  }

  Kind kind() const noexcept { return kind_; }
  const std::vector<u64>& set() const noexcept { return set_; }
  /// Primes whose multiples are excluded.
  const std::vector<u64>& excluded_primes() const noexcept { return primes_; }

  bool admits(u64 n) const {
    return std::none_of(primes_.begin(), primes_.end(), [n](u64 p) { return n % p == 0; });
  }

  std::string describe() const {
    switch (kind_) {
      case Kind::none: return "none";
      case Kind::prime_free: return "prime_free(" + std::to_string(set_.size()) + " primes)";
      case Kind::coprime_to: return "coprime_to(" + std::to_string(set_.size()) + " moduli)";
    }
    return "";
  }

 private:
  Kind kind_ = Kind::none;
  std::vector<u64> set_;
  std::vector<u64> primes_;
};

/// Throws PreconditionError naming the first n with a_n != 0 that `s` rejects.
inline void require_support(const CoefficientSequence& a, const SupportRestriction& s, std::string_view who) {
  if (s.kind() == SupportRestriction::Kind::none) return;
  for (u64 i = 0; i < a.N(); ++i) {
    const u64 n = a.M() + 1 + i;
    if (a.values()[i] != cplx{} && !s.admits(n)) {
      throw PreconditionError(std::string(who) + ": support violation, a_" + std::to_string(n) +
                              " != 0 but n is not admitted by " + s.describe());
    }
  }
}

/// Copy of a with every coefficient outside the restriction set to zero.
inline CoefficientSequence restrict_support(const CoefficientSequence& a, const SupportRestriction& s) {
  return CoefficientSequence::generate(a.M(), a.N(), [&](u64 n) { return s.admits(n) ? a.at(n) : cplx{}; });
}

/// Complex Gaussian coefficients keyed by (seed, trial), zeroed outside `s`.
/// All N draws happen regardless of `s`.
inline CoefficientSequence random_sequence(u64 M, u64 N, u64 seed, u64 trial,
                                           const SupportRestriction& s = SupportRestriction::none()) {
  ComplexGaussian gauss(seed, trial);
  return CoefficientSequence::generate(M, N, [&](u64 n) {
    const cplx z = gauss();
    return s.admits(n) ? z : cplx{};
  });
}

namespace detail {

struct CharacterTable {
  std::vector<DirichletCharacter> characters;
  std::vector<std::vector<cplx>> values;
  std::vector<double> gauss_sq;  // |tau(chi)|^2, filled for full tables only
};

template <class Build>
const CharacterTable& memo_table(std::map<u64, std::unique_ptr<CharacterTable>>& cache, std::mutex& mutex, u64 q,
                                 Build build) {
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(q); it != cache.end()) return *it->second;
  }
  auto table = std::make_unique<CharacterTable>(build(q));
  std::lock_guard lock(mutex);
  return *cache.try_emplace(q, std::move(table)).first->second;
}

inline const CharacterTable& primitive_table(u64 q) {
  static std::mutex mutex;
  static std::map<u64, std::unique_ptr<CharacterTable>> cache;
  return memo_table(cache, mutex, q, [](u64 m) {
    CharacterTable t;
    t.characters = primitive_characters(m);
    for (const auto& chi : t.characters) t.values.push_back(chi.values());
    return t;
  });
}

inline const CharacterTable& full_table(u64 q) {
  static std::mutex mutex;
  static std::map<u64, std::unique_ptr<CharacterTable>> cache;
  return memo_table(cache, mutex, q, [](u64 m) {
    CharacterTable t;
    t.characters = character_group(m);
    for (const auto& chi : t.characters) {
      t.values.push_back(chi.values());
      t.gauss_sq.push_back(std::norm(gauss_sum(chi)));
    }
    return t;
  });
}

/// b[u] = sum_{n = u mod m} a_n.
inline std::vector<cplx> fold(const CoefficientSequence& a, u64 m) {
  std::vector<cplx> b(m);
  u64 u = a.first() % m;
  for (const auto& v : a.values()) {
    b[u] += v;
    if (++u == m) u = 0;
  }
  return b;
}

/// b folded further from modulus m down to a divisor d of m.
inline std::vector<cplx> refold(const std::vector<cplx>& b, u64 d) {
  std::vector<cplx> out(d);
  for (u64 u = 0; u < b.size(); ++u) out[u % d] += b[u];
  return out;
}

inline cplx dot(const std::vector<cplx>& b, const std::vector<cplx>& chi) {
  cplx s{};
  for (std::size_t u = 0; u < b.size(); ++u) s += b[u] * chi[u];
  return s;
}

/// sum over primitive chi mod q of |sum a_n chi(n)|^2, given b = fold(a, q).
inline double primitive_energy(const std::vector<cplx>& b, u64 q) {
  double e = 0.0;
  for (const auto& vals : primitive_table(q).values) e += std::norm(dot(b, vals));
  return e;
}

inline std::map<std::string, double> base_params(const CoefficientSequence& a, u64 Q) {
  return {{"M", static_cast<double>(a.M())},
          {"N", static_cast<double>(a.N())},
          {"Q", static_cast<double>(Q)},
          {"norm", a.norm2()}};
}

inline void require_Q(u64 Q, std::string_view who) {
  if (Q == 0) throw DomainError(std::string(who) + ": Q must be >= 1");
}

/// Right side scaled by the coefficient norm; a zero norm gives 0 even when
/// the factor is infinite.
inline double times_norm(double factor, double norm) { return norm == 0.0 ? 0.0 : factor * norm; }

}  // namespace detail

/// sum_{M<n<=M+N} a_n chi(n).
inline cplx char_sum(const DirichletCharacter& chi, const CoefficientSequence& a) {
  return detail::dot(detail::fold(a, chi.modulus()), chi.values());
}

/// Character sums against every primitive character mod q, in enumeration order.
inline std::vector<cplx> primitive_char_sums(const CoefficientSequence& a, u64 q) {
  const auto b = detail::fold(a, q);
  std::vector<cplx> out;
  for (const auto& vals : detail::primitive_table(q).values) out.push_back(detail::dot(b, vals));
  return out;
}

/// sum_{q<=Q} weight(q) sum*_chi |sum a_n chi(n)|^2; q with weight 0 are skipped.
template <class Weight>
double weighted_primitive_lhs(const CoefficientSequence& a, u64 Q, Weight&& weight) {
  double lhs = 0.0;
  for (u64 q = 1; q <= Q; ++q) {
    if (q % 4 == 2) continue;  // no primitive characters
    const double w = weight(q);
    if (w == 0.0) continue;
    lhs += w * detail::primitive_energy(detail::fold(a, q), q);
  }
  return lhs;
}

/// (N + Q^2) form with weights q / phi(q).
inline InequalityReport lsi_mvs(const CoefficientSequence& a, u64 Q) {
  detail::require_Q(Q, "lsi_mvs");
  const double lhs = weighted_primitive_lhs(a, Q, [](u64 q) { return double(q) / double(euler_phi(q)); });
  const double n = static_cast<double>(a.N()), qq = static_cast<double>(Q);
  auto r = InequalityReport::make(Inequality::mvs, lhs, (n + qq * qq) * a.norm2());
  r.parameters = detail::base_params(a, Q);
  return r;
}

/// (sqrt N + Q)^2 form, same left side as lsi_mvs.
inline InequalityReport lsi_bd(const CoefficientSequence& a, u64 Q) {
  detail::require_Q(Q, "lsi_bd");
  const double lhs = weighted_primitive_lhs(a, Q, [](u64 q) { return double(q) / double(euler_phi(q)); });
  const double s = std::sqrt(static_cast<double>(a.N())) + static_cast<double>(Q);
  auto r = InequalityReport::make(Inequality::bd, lhs, s * s * a.norm2());
  r.parameters = detail::base_params(a, Q);
  return r;
}

/// All characters mod q in `moduli`, weighted by |tau(chi)|^2 / phi(q).
/// Every q must be free of the primes in `primes`, and so must the support of a.
inline InequalityReport lsi_thm12(const CoefficientSequence& a, std::vector<u64> moduli, std::vector<u64> primes) {
  if (moduli.empty()) throw DomainError("lsi_thm12: modulus set is empty");
  const SupportRestriction free_of = SupportRestriction::prime_free(std::move(primes));
  std::sort(moduli.begin(), moduli.end());
  moduli.erase(std::unique(moduli.begin(), moduli.end()), moduli.end());
  for (u64 q : moduli) {
    if (q == 0 || !free_of.admits(q)) {
      throw DomainError("lsi_thm12: modulus " + std::to_string(q) + " has a prime divisor in the excluded set");
    }
  }
  require_support(a, free_of, "lsi_thm12");
  double lhs = 0.0;
  for (u64 q : moduli) {
    const auto b = detail::fold(a, q);
    const auto& table = detail::full_table(q);
    const double phi = static_cast<double>(euler_phi(q));
    for (std::size_t i = 0; i < table.values.size(); ++i) {
      lhs += table.gauss_sq[i] / phi * std::norm(detail::dot(b, table.values[i]));
    }
  }
  const u64 Q = moduli.back();
  const double s = std::sqrt(static_cast<double>(a.N())) + static_cast<double>(Q);
  auto r = InequalityReport::make(Inequality::thm12, lhs, s * s * a.norm2());
  r.parameters = detail::base_params(a, Q);
  r.parameters["moduli"] = static_cast<double>(moduli.size());
  r.parameters["excluded_primes"] = static_cast<double>(free_of.set().size());
  return r;
}

/// Weight of a primitive q in the induced-character double sum:
/// sum_{r <= Q/q, (r,q)=1} q mu^2(r) / phi(qr).
inline double eq14_weight(u64 q, u64 Q) {
  const double q_over_phi = double(q) / double(euler_phi(q));
  double s = 0.0;
  for (u64 r = 1; r <= Q / q; ++r) {
    if (std::gcd(r, q) != 1) continue;
    const FactoredInt fr = factorize(r);
    if (!fr.squarefree()) continue;
    s += 1.0 / double(euler_phi(fr));
  }
  return q_over_phi * s;
}

inline InequalityReport lsi_eq14(const CoefficientSequence& a, u64 Q) {
  detail::require_Q(Q, "lsi_eq14");
  require_support(a, SupportRestriction::rough(Q), "lsi_eq14");
  const double lhs = weighted_primitive_lhs(a, Q, [Q](u64 q) { return eq14_weight(q, Q); });
  const double s = std::sqrt(static_cast<double>(a.N())) + static_cast<double>(Q);
  auto r = InequalityReport::make(Inequality::eq14, lhs, s * s * a.norm2());
  r.parameters = detail::base_params(a, Q);
  return r;
}

/// sum_{r<=X, (r,q)=1} mu^2(r)/phi(r) >= (phi(q)/q) log X. A lower-bound report.
inline InequalityReport check_eq15(u64 q, double X) {
  if (q == 0) throw DomainError("check_eq15: q must be >= 1");
  if (!(X >= 1.0)) throw DomainError("check_eq15: X must be >= 1");
  const u64 top = static_cast<u64>(std::floor(X));
  double lhs = 0.0;
  for (u64 r = 1; r <= top; ++r) {
    if (std::gcd(r, q) != 1) continue;
    const FactoredInt fr = factorize(r);
    if (fr.squarefree()) lhs += 1.0 / double(euler_phi(fr));
  }
  const double rhs = double(euler_phi(q)) / double(q) * std::log(X);
  auto r = InequalityReport::make(Inequality::eq15, lhs, rhs, Bound::lower);
  r.parameters = {{"q", double(q)}, {"X", X}};
  return r;
}

/// Weights log(Q/q); needs a supported on Q-rough n.
inline InequalityReport lsi_eq16(const CoefficientSequence& a, u64 Q) {
  detail::require_Q(Q, "lsi_eq16");
  require_support(a, SupportRestriction::rough(Q), "lsi_eq16");
  const double lhs = weighted_primitive_lhs(a, Q, [Q](u64 q) { return std::log(double(Q) / double(q)); });
  const double s = std::sqrt(static_cast<double>(a.N())) + static_cast<double>(Q);
  auto r = InequalityReport::make(Inequality::eq16, lhs, s * s * a.norm2());
  r.parameters = detail::base_params(a, Q);
  return r;
}

/// Ramanujan-twisted sum over qr <= Q, (q,r) = 1, weights q / phi(qr).
inline InequalityReport lsi_thm13(const CoefficientSequence& a, u64 Q) {
  detail::require_Q(Q, "lsi_thm13");
  double lhs = 0.0;
  for (u64 m = 1; m <= Q; ++m) {
    const auto b = detail::fold(a, m);
    const double phi_m = static_cast<double>(euler_phi(m));
    for (u64 q : divisors(factorize(m))) {
      const u64 r = m / q;
      if (std::gcd(q, r) != 1 || q % 4 == 2) continue;
      const auto& prim = detail::primitive_table(q);
      if (prim.values.empty()) continue;
      const auto cr = ramanujan_table(r);
      std::vector<cplx> twisted(q);
      for (u64 u = 0; u < m; ++u) twisted[u % q] += b[u] * static_cast<double>(cr[u % r]);
      double e = 0.0;
      for (const auto& vals : prim.values) e += std::norm(detail::dot(twisted, vals));
      lhs += static_cast<double>(q) / phi_m * e;
    }
  }
  const double n = static_cast<double>(a.N()), qq = static_cast<double>(Q);
  auto r = InequalityReport::make(Inequality::thm13, lhs, (n + qq * qq) * a.norm2());
  r.parameters = detail::base_params(a, Q);
  return r;
}

/// (q / phi(q)) sum_{r in R, (r,q)=1} mu^2(r) / phi(r).
inline double script_L_q(u64 q, std::span<const u64> moduli) {
  if (q == 0) throw DomainError("script_L_q: q must be >= 1");
  std::vector<u64> rs(moduli.begin(), moduli.end());
  std::sort(rs.begin(), rs.end());
  rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
  double s = 0.0;
  for (u64 r : rs) {
    if (r == 0 || std::gcd(r, q) != 1) continue;
    const FactoredInt fr = factorize(r);
    if (fr.squarefree()) s += 1.0 / double(euler_phi(fr));
  }
  return double(q) / double(euler_phi(q)) * s;
}

struct ScriptL {
  double value = 0.0;
  u64 argmin = 1;
};

/// min over q <= Q of script_L_q; the smallest minimizing q is reported.
inline ScriptL script_L(u64 Q, std::span<const u64> moduli) {
  detail::require_Q(Q, "script_L");
  ScriptL best{script_L_q(1, moduli), 1};
  for (u64 q = 2; q <= Q; ++q) {
    const double v = script_L_q(q, moduli);
    if (v < best.value) best = {v, q};
  }
  return best;
}

/// Unit-weight primitive sum against (Q^2 R^2 + N) / L(Q, R).
inline InequalityReport lsi_prop21(const CoefficientSequence& a, u64 Q, std::vector<u64> moduli, u64 R) {
  detail::require_Q(Q, "lsi_prop21");
  if (moduli.empty()) throw DomainError("lsi_prop21: modulus set is empty");
  for (u64 r : moduli) {
    if (r == 0 || r > R) throw DomainError("lsi_prop21: modulus " + std::to_string(r) + " is not in [1, R]");
  }
  require_support(a, SupportRestriction::coprime_to(moduli), "lsi_prop21");
  const ScriptL L = script_L(Q, moduli);
  const double lhs = weighted_primitive_lhs(a, Q, [](u64) { return 1.0; });
  const double qr = double(Q) * double(R);
  const double factor = L.value > 0.0 ? (qr * qr + double(a.N())) / L.value : std::numeric_limits<double>::infinity();
  auto r = InequalityReport::make(Inequality::prop21, lhs, detail::times_norm(factor, a.norm2()));
  r.parameters = detail::base_params(a, Q);
  r.parameters["R"] = double(R);
  r.parameters["L"] = L.value;
  r.parameters["L_argmin"] = double(L.argmin);
  return r;
}

/// All n <= R that are products of distinct primes = 3 (mod 4), 1 included, ascending.
inline std::vector<u64> nu_supported_upto(u64 R) {
  std::vector<u64> out;
  for_each_nu_supported(R, [&](u64 n, unsigned) { out.push_back(n); });
  std::sort(out.begin(), out.end());
  return out;
}

/// Minimum N for the sums-of-two-squares bound: Q^2 exp((alpha log log Q)^3).
inline double prop22_threshold(u64 Q, double alpha) {
  const double q = static_cast<double>(Q);
  const double t = alpha * std::log(std::log(q));
  return q * q * std::exp(t * t * t);
}

/// Coefficients r(n) a_n, with r(n) the coprime two-squares count, against
/// 2N / sqrt(log(N/Q^2)) * sum r(n)^2 |a_n|^2.
inline InequalityReport lsi_prop22(const CoefficientSequence& a, u64 Q, double alpha = 1.0) {
  detail::require_Q(Q, "lsi_prop22");
  const double n = static_cast<double>(a.N()), q = static_cast<double>(Q);
  const double threshold = prop22_threshold(Q, alpha);
  if (n < threshold || n <= q * q) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "lsi_prop22: N = " << a.N() << " is below the threshold max(Q^2, Q^2 exp((alpha log log Q)^3)) = "
        << std::max(threshold, q * q) << " (Q = " << Q << ", alpha = " << alpha << ")";
    throw DomainError(msg.str());
  }
  FactorSieve sieve(a.last());
  const auto weighted = CoefficientSequence::generate(a.M(), a.N(), [&](u64 m) {
    const cplx v = a.at(m);
    return v == cplx{} ? v : v * static_cast<double>(r2_coprime(sieve.factor(m)));
  });
  const double lhs = weighted_primitive_lhs(weighted, Q, [](u64) { return 1.0; });
  const double norm = weighted.norm2();
  const double rhs = detail::times_norm(2.0 * n / std::sqrt(std::log(n / (q * q))), norm);
  auto r = InequalityReport::make(Inequality::prop22, lhs, rhs);
  r.parameters = detail::base_params(a, Q);
  r.parameters["norm"] = norm;
  r.parameters["alpha"] = alpha;
  r.parameters["threshold"] = threshold;
  const u64 R = static_cast<u64>(std::floor(std::sqrt(n) / q));
  r.parameters["R"] = static_cast<double>(R);
  if (R >= 1) {
    const auto moduli = nu_supported_upto(R);
    const ScriptL L = script_L(Q, moduli);
    r.parameters["R_size"] = static_cast<double>(moduli.size());
    r.parameters["L"] = L.value;
    r.parameters["prop21_rhs"] = detail::times_norm((q * q * double(R) * double(R) + n) / L.value, norm);
  }
  return r;
}

/// Outcome of checking sum |a_n|^2 <= 1 and, for every prime p,
/// sum_{p | n} |a_n|^2 <= (1/p) (log p / log N)^2.
struct Thm21Conditions {
  bool ok = true;
  bool norm_ok = true;
  double norm = 0.0;
  std::optional<u64> witness;     // smallest prime whose condition fails
  double witness_ratio = 0.0;     // lhs / bound at the witness
  double max_prime_ratio = 0.0;   // max over p of lhs / bound
  u64 max_prime = 0;              // where max_prime_ratio is attained
  /// Smallest C with both conditions holding after dividing |a_n|^2 by C.
  double fitted_constant() const { return std::max(norm, max_prime_ratio); }
};

inline Thm21Conditions thm21_conditions(const CoefficientSequence& a) {
  if (a.N() < 2) throw DomainError("thm21_conditions: N must be >= 2");
  const double log_n = std::log(static_cast<double>(a.N()));
  Thm21Conditions out;
  out.norm = a.norm2();
  out.norm_ok = out.norm <= 1.0 + kRelTol;
  std::map<u64, double> by_prime;
  if (!a.is_zero()) {
    FactorSieve sieve(a.last());
    a.for_each_nonzero([&](u64 n, cplx v) {
      if (n < 2) return;
      for (const auto& f : sieve.factor(n).factors) by_prime[f.prime] += std::norm(v);
    });
  }
  for (const auto& [p, mass] : by_prime) {
    const double lp = std::log(static_cast<double>(p)) / log_n;
    const double bound = lp * lp / static_cast<double>(p);
    const double ratio = mass / bound;
    if (ratio > out.max_prime_ratio) {
      out.max_prime_ratio = ratio;
      out.max_prime = p;
    }
    if (!out.witness && ratio > 1.0 + kRelTol) {
      out.witness = p;
      out.witness_ratio = ratio;
    }
  }
  out.ok = out.norm_ok && !out.witness;
  return out;
}

/// a divided by sqrt(C), C = fitted_constant(), when C > 1; otherwise a.
inline CoefficientSequence scale_to_thm21_conditions(const CoefficientSequence& a) {
  const double c = thm21_conditions(a).fitted_constant();
  return c > 1.0 ? a.scaled(1.0 / std::sqrt(c)) : a;
}

/// sum_{q<=Q} sum* |.|^2 <= 24 N / log(N / Q^2), for 8 Q^2 <= N and coefficients
/// meeting thm21_conditions.
inline InequalityReport lsi_thm21(const CoefficientSequence& a, u64 Q) {
  detail::require_Q(Q, "lsi_thm21");
  const double n = static_cast<double>(a.N()), q = static_cast<double>(Q);
  if (8.0 * q * q > n) {
    throw DomainError("lsi_thm21: requires 8Q^2 <= N, got Q = " + std::to_string(Q) + ", N = " +
                      std::to_string(a.N()));
  }
  const Thm21Conditions cond = thm21_conditions(a);
  if (!cond.norm_ok) throw DomainError("lsi_thm21: coefficient condition sum |a_n|^2 <= 1 fails");
  if (cond.witness) {
    throw DomainError("lsi_thm21: coefficient condition on multiples of p fails at p = " +
                      std::to_string(*cond.witness));
  }
  const double lhs = weighted_primitive_lhs(a, Q, [](u64) { return 1.0; });
  const double log_ratio = std::log(n / (q * q));
  auto r = InequalityReport::make(Inequality::thm21, lhs, 24.0 * n / log_ratio);
  r.parameters = detail::base_params(a, Q);
  r.parameters["R_split"] = std::cbrt(n / (q * q));
  r.parameters["empirical_constant"] = lhs * log_ratio / n;
  r.parameters["condition_constant"] = cond.fitted_constant();
  return r;
}

/// Exact pi(M+N) - pi(M) against the bound (sqrt N + Q)^2 / log Q obtained
/// from the log-weighted inequality with only the principal character kept,
/// Q = floor(sqrt N / log N).
inline InequalityReport brun_titchmarsh(u64 M, u64 N, bool with_full_lhs = true) {
  const double n = static_cast<double>(N);
  if (N < 100) throw DomainError("brun_titchmarsh: requires N >= 100");
  if (!(static_cast<double>(M) > std::sqrt(n))) {
    throw DomainError("brun_titchmarsh: requires M > sqrt(N), got M = " + std::to_string(M));
  }
  const double q_target = std::sqrt(n) / std::log(n);
  const u64 Q = static_cast<u64>(std::floor(q_target));
  const PrimeTable table = sieve_primes(M + N);
  const double count = static_cast<double>(table.count_upto(M + N) - table.count_upto(M));
  const double s = std::sqrt(n) + static_cast<double>(Q);
  const double bound = s * s / std::log(static_cast<double>(Q));
  auto r = InequalityReport::make(Inequality::brun_titchmarsh, count, bound);
  const double linear_sieve = 2.0 * n / std::log(n);
  r.parameters = {{"M", double(M)},
                  {"N", n},
                  {"Q", double(Q)},
                  {"Q_target", q_target},
                  {"two_N_over_log_N", linear_sieve},
                  {"bound_ratio", bound / linear_sieve}};
  if (with_full_lhs) {
    auto a = CoefficientSequence::zeros(M, N);
    for (auto it = std::upper_bound(table.begin(), table.end(), M); it != table.end(); ++it) a.set(*it, 1.0);
    const auto eq16 = lsi_eq16(a, Q);
    r.parameters["eq16_lhs"] = eq16.lhs;
    r.parameters["eq16_rhs"] = eq16.rhs;
    r.parameters["eq16_pass"] = eq16.pass ? 1.0 : 0.0;
    r.parameters["principal_term"] = std::log(static_cast<double>(Q)) * count * count;
    r.pass = r.pass && eq16.pass;
  }
  return r;
}

}  // namespace lsieve
