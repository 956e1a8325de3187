#pragma once

// Prime sieving, factorization and the multiplicative functions used by the
// large sieve evaluators: phi, mu, tau, Lambda, Lambda_k, nu, r(n), rho.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "lsieve/errors.hpp"

namespace lsieve {

using u64 = std::uint64_t;
using i64 = std::int64_t;

/// Largest limit accepted by PrimeTable unless a caller passes its own budget.
inline constexpr u64 kDefaultSieveBudget = 1'000'000'000ULL;
/// FactorSieve stores 4 bytes per integer, so its default budget is smaller.
inline constexpr u64 kDefaultFactorSieveBudget = 200'000'000ULL;

struct PrimePower {
  u64 prime = 0;
  unsigned exponent = 0;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// An integer n >= 1 with its canonical factorization (primes increasing).
struct FactoredInt {
  u64 n = 1;
  std::vector<PrimePower> factors;

  unsigned omega() const noexcept { return static_cast<unsigned>(factors.size()); }
  bool squarefree() const noexcept {
    return std::all_of(factors.begin(), factors.end(),
                       [](const PrimePower& f) { return f.exponent == 1; });
  }
  bool divisible_by_prime(u64 p) const noexcept {
    return std::any_of(factors.begin(), factors.end(),
                       [p](const PrimePower& f) { return f.prime == p; });
  }
  friend bool operator==(const FactoredInt&, const FactoredInt&) = default;
};

/// All primes up to `limit`, produced by an odd-only sieve of Eratosthenes.
class PrimeTable {
 public:
  PrimeTable() = default;

  explicit PrimeTable(u64 limit, u64 budget = kDefaultSieveBudget) : limit_(limit) {
    if (limit < 2) throw DomainError("sieve_primes: limit must be >= 2, got " + std::to_string(limit));
    if (limit > budget) {
      throw ResourceError("sieve_primes: limit " + std::to_string(limit) +
                          " exceeds sieve budget " + std::to_string(budget));
    }
    // composite[i] describes 2i+1
    std::vector<bool> composite(limit / 2 + 1, false);
    for (u64 i = 1; (2 * i + 1) * (2 * i + 1) <= limit; ++i) {
      if (composite[i]) continue;
      const u64 p = 2 * i + 1;
      for (u64 j = p * p; j <= limit; j += 2 * p) composite[j / 2] = true;
    }
    primes_.reserve(static_cast<std::size_t>(limit / std::max(1.0, std::log(double(limit)) - 1.1)) + 8);
    primes_.push_back(2);
    for (u64 i = 1; 2 * i + 1 <= limit; ++i) {
      if (!composite[i]) primes_.push_back(2 * i + 1);
    }
  }

  u64 limit() const noexcept { return limit_; }
  const std::vector<u64>& primes() const noexcept { return primes_; }
  std::size_t size() const noexcept { return primes_.size(); }
  auto begin() const noexcept { return primes_.begin(); }
  auto end() const noexcept { return primes_.end(); }

  /// n must not exceed limit().
  bool contains(u64 n) const { return std::binary_search(primes_.begin(), primes_.end(), n); }

  /// pi(min(x, limit)).
  std::size_t count_upto(u64 x) const {
    return static_cast<std::size_t>(std::upper_bound(primes_.begin(), primes_.end(), x) - primes_.begin());
  }

 private:
  u64 limit_ = 0;
  std::vector<u64> primes_;
};

inline PrimeTable sieve_primes(u64 limit, u64 budget = kDefaultSieveBudget) {
  return PrimeTable(limit, budget);
}

namespace detail {

// Covers trial division for every n < 2^32.
inline const PrimeTable& small_primes() {
  static const PrimeTable table(1u << 16);
  return table;
}

}  // namespace detail

/// Canonical factorization by trial division.
inline FactoredInt factorize(u64 n) {
  if (n == 0) throw DomainError("factorize: n must be positive");
  FactoredInt out{n, {}};
  u64 m = n;
  auto take = [&](u64 p) {
    unsigned e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    if (e != 0) out.factors.push_back({p, e});
  };
  const auto& table = detail::small_primes();
  u64 last = 1;
  for (u64 p : table) {
    if (p * p > m) break;
    take(p);
    last = p;
  }
  if (last == table.primes().back()) {
    for (u64 d = table.limit() + 1 + (table.limit() % 2); d <= m / d; d += 2) take(d);
  }
  if (m > 1) out.factors.push_back({m, 1});
  return out;
}

/// Smallest-prime-factor table for fast bulk factorization up to a limit.
class FactorSieve {
 public:
  explicit FactorSieve(u64 limit, u64 budget = kDefaultFactorSieveBudget) : spf_(limit + 1, 0) {
    if (limit > budget) {
      throw ResourceError("factor sieve: limit " + std::to_string(limit) + " exceeds budget " +
                          std::to_string(budget));
    }
    std::vector<std::uint32_t> primes;
    for (u64 i = 2; i <= limit; ++i) {
      if (spf_[i] == 0) {
        spf_[i] = static_cast<std::uint32_t>(i);
        primes.push_back(static_cast<std::uint32_t>(i));
      }
      for (std::uint32_t p : primes) {
        if (p > spf_[i] || i * p > limit) break;
        spf_[i * p] = p;
      }
    }
  }

  u64 limit() const noexcept { return spf_.size() - 1; }
  bool is_prime(u64 n) const { return n >= 2 && spf_.at(n) == n; }
  u64 smallest_factor(u64 n) const { return spf_.at(n); }

  FactoredInt factor(u64 n) const {
    if (n == 0) throw DomainError("factor sieve: n must be positive");
    if (n > limit()) return factorize(n);
    FactoredInt out{n, {}};
    while (n > 1) {
      const u64 p = spf_[n];
      unsigned e = 0;
      while (n % p == 0) {
        n /= p;
        ++e;
      }
      out.factors.push_back({p, e});
    }
    return out;
  }

 private:
  std::vector<std::uint32_t> spf_;
};

/// Squarefree divisors d of n paired with mu(d).
inline std::vector<std::pair<u64, int>> squarefree_divisors(const FactoredInt& n) {
  std::vector<std::pair<u64, int>> out{{1, 1}};
  for (const auto& f : n.factors) {
    const std::size_t sz = out.size();
    for (std::size_t i = 0; i < sz; ++i) out.emplace_back(out[i].first * f.prime, -out[i].second);
  }
  return out;
}

/// All divisors, ascending.
inline std::vector<u64> divisors(const FactoredInt& n) {
  std::vector<u64> out{1};
  for (const auto& f : n.factors) {
    const std::size_t sz = out.size();
    u64 pk = 1;
    for (unsigned e = 1; e <= f.exponent; ++e) {
      pk *= f.prime;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline u64 euler_phi(const FactoredInt& n) {
  u64 phi = 1;
  for (const auto& f : n.factors) {
    phi *= f.prime - 1;
    for (unsigned e = 1; e < f.exponent; ++e) phi *= f.prime;
  }
  return phi;
}
inline u64 euler_phi(u64 n) { return euler_phi(factorize(n)); }

inline int mobius(const FactoredInt& n) {
  if (!n.squarefree()) return 0;
  return (n.omega() % 2 == 0) ? 1 : -1;
}
inline int mobius(u64 n) { return mobius(factorize(n)); }

inline u64 divisor_count(const FactoredInt& n) {
  u64 tau = 1;
  for (const auto& f : n.factors) tau *= f.exponent + 1;
  return tau;
}
inline u64 divisor_count(u64 n) { return divisor_count(factorize(n)); }

/// Lambda(n): log p at prime powers, exactly 0 elsewhere.
inline double von_mangoldt(u64 n) {
  if (n <= 1) return 0.0;
  const FactoredInt f = factorize(n);
  return f.omega() == 1 ? std::log(static_cast<double>(f.factors[0].prime)) : 0.0;
}

/// Generalized von Mangoldt function mu * log^k, by the divisor sum.
/// Lambda_k vanishes exactly when omega(n) > k.
inline double von_mangoldt_k(u64 n, unsigned k) {
  if (k == 0) throw DomainError("von_mangoldt_k: k must be >= 1");
  if (n == 0) throw DomainError("von_mangoldt_k: n must be positive");
  if (k == 1) return von_mangoldt(n);
  const FactoredInt f = factorize(n);
  if (n == 1 || f.omega() > k) return 0.0;
  double sum = 0.0;
  for (const auto& [d, mu] : squarefree_divisors(f)) {
    sum += mu * std::pow(std::log(static_cast<double>(n / d)), static_cast<double>(k));
  }
  return sum;
}

/// Lambda(n) for 0 <= n <= limit (index 0 unused).
inline std::vector<double> von_mangoldt_table(u64 limit) {
  std::vector<double> out(limit + 1, 0.0);
  if (limit < 2) return out;
  for (u64 p : sieve_primes(limit)) {
    const double lp = std::log(static_cast<double>(p));
    for (u64 pk = p; pk <= limit; pk *= p) {
      out[pk] = lp;
      if (pk > limit / p) break;
    }
  }
  return out;
}

/// Lambda_k(n) for n <= limit built from Lambda_1 = Lambda by the recurrence
/// Lambda_{k+1} = Lambda_k * log + Lambda_k (*) Lambda.
inline std::vector<double> von_mangoldt_k_table(u64 limit, unsigned k) {
  if (k == 0) throw DomainError("von_mangoldt_k_table: k must be >= 1");
  const std::vector<double> lambda = von_mangoldt_table(limit);
  std::vector<double> cur = lambda;
  for (unsigned j = 1; j < k; ++j) {
    std::vector<double> next(limit + 1, 0.0);
    for (u64 n = 2; n <= limit; ++n) next[n] = cur[n] * std::log(static_cast<double>(n));
    for (u64 m = 2; m <= limit; ++m) {
      if (lambda[m] == 0.0) continue;
      for (u64 d = 1, n = m; n <= limit; ++d, n += m) next[n] += cur[d] * lambda[m];
    }
    cur = std::move(next);
  }
  return cur;
}

/// 1 iff n is a product of distinct primes = 3 (mod 4); nu(1) = 1.
inline int nu(const FactoredInt& n) {
  if (!n.squarefree()) return 0;
  for (const auto& f : n.factors) {
    if (f.prime % 4 != 3) return 0;
  }
  return 1;
}

/// Product of the distinct primes p | q with p = 3 (mod 4).
inline FactoredInt q3_radical(const FactoredInt& q) {
  FactoredInt out;
  for (const auto& f : q.factors) {
    if (f.prime % 4 == 3) {
      out.n *= f.prime;
      out.factors.push_back({f.prime, 1});
    }
  }
  return out;
}

/// Ordered pairs (x, y) in Z^2 with x^2 + y^2 = n and gcd(x, y) = 1.
/// Zero when 4 | n or some p = 3 (mod 4) divides n, else 4 * 2^(odd prime count).
inline u64 r2_coprime(const FactoredInt& n) {
  u64 r = 4;
  for (const auto& f : n.factors) {
    if (f.prime == 2) {
      if (f.exponent >= 2) return 0;
    } else if (f.prime % 4 == 3) {
      return 0;
    } else {
      r *= 2;
    }
  }
  return r;
}
inline u64 r2_coprime(u64 n) { return r2_coprime(factorize(n)); }

/// prod_{p | n} log p / log N.
inline double rho_weight(const FactoredInt& n, u64 big_n) {
  if (big_n < 2) throw DomainError("rho_weight: N must be >= 2");
  const double log_n = std::log(static_cast<double>(big_n));
  double w = 1.0;
  for (const auto& f : n.factors) w *= std::log(static_cast<double>(f.prime)) / log_n;
  return w;
}

namespace detail {

template <class Fn>
void nu_dfs(const std::vector<u64>& primes, std::size_t start, u64 n, unsigned omega, u64 x, Fn& fn) {
  fn(n, omega);
  for (std::size_t i = start; i < primes.size(); ++i) {
    if (primes[i] > x / n) break;
    nu_dfs(primes, i + 1, n * primes[i], omega + 1, x, fn);
  }
}

}  // namespace detail

/// Calls fn(n, omega(n)) for every n <= x with nu(n) = 1 and gcd(n, coprime_to) = 1,
/// starting with n = 1, in depth-first order over increasing primes.
template <class Fn>
void for_each_nu_supported(u64 x, Fn&& fn, const FactoredInt& coprime_to = {},
                           u64 budget = kDefaultSieveBudget) {
  if (x == 0) return;
  std::vector<u64> primes;
  if (x >= 3) {
    for (u64 p : sieve_primes(x, budget)) {
      if (p % 4 == 3 && !coprime_to.divisible_by_prime(p)) primes.push_back(p);
    }
  }
  detail::nu_dfs(primes, 0, 1, 0, x, fn);
}

/// True when n has no prime divisor <= z.
inline bool is_rough(const FactoredInt& n, u64 z) {
  return n.factors.empty() || n.factors.front().prime > z;
}

}  // namespace lsieve
