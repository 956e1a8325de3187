#pragma once

// Dirichlet characters mod q, represented by exponents on the generators of
// the CRT decomposition of (Z/qZ)^x:
//   odd p^e        one primitive root
//   2              trivial (no component)
//   4              generator -1
//   2^e, e >= 3    generators -1 (order 2) and 5 (order 2^(e-2))
// chi(g_j) = exp(2 pi i x_j / ord_j), so chi(u) is read off the discrete
// logs of u. Values are exact roots of unity until converted to complex.

#include <algorithm>
#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lsieve/arith.hpp"
#include "lsieve/errors.hpp"

namespace lsieve {

namespace detail {

inline u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

inline u64 powmod(u64 base, u64 e, u64 m) {
  u64 r = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1) r = mulmod(r, base, m);
    base = mulmod(base, base, m);
    e >>= 1;
  }
  return r;
}

inline u64 modinv(u64 a, u64 m) {
  i64 t = 0, new_t = 1;
  i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
  while (new_r != 0) {
    const i64 quot = r / new_r;
    t = std::exchange(new_t, t - quot * new_t);
    r = std::exchange(new_r, r - quot * new_r);
  }
  if (r != 1) throw DomainError("modinv: " + std::to_string(a) + " is not invertible mod " + std::to_string(m));
  return static_cast<u64>(t < 0 ? t + static_cast<i64>(m) : t);
}

inline u64 primitive_root_mod_prime(u64 p) {
  if (p == 2) return 1;
  const FactoredInt pm1 = factorize(p - 1);
  for (u64 g = 2;; ++g) {
    bool ok = true;
    for (const auto& f : pm1.factors) {
      if (powmod(g, (p - 1) / f.prime, p) == 1) {
        ok = false;
        break;
      }
    }
    if (ok) return g;
  }
}

}  // namespace detail

/// exp(2 pi i num / den), exact at quarter turns.
inline std::complex<double> unit_root(u64 num, u64 den) {
  num %= den;
  if ((4 * num) % den == 0) {
    switch (4 * num / den) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  const double t = 2.0 * std::numbers::pi * (static_cast<double>(num) / static_cast<double>(den));
  return {std::cos(t), std::sin(t)};
}

/// exp(2 pi i numerator / order).
struct RootOfUnity {
  u64 numerator = 0;
  u64 order = 1;
  std::complex<double> to_complex() const { return unit_root(numerator, order); }
  friend bool operator==(const RootOfUnity&, const RootOfUnity&) = default;
};

enum class ComponentKind { odd_cyclic, two_minus_one, two_five };

struct GroupComponent {
  ComponentKind kind = ComponentKind::odd_cyclic;
  u64 prime = 0;
  unsigned exponent = 0;
  u64 prime_power = 0;
  u64 generator = 0;         // residue mod prime_power
  u64 order = 1;             // multiplicative order of generator
  u64 lifted_generator = 0;  // = generator mod prime_power, = 1 mod q / prime_power
};

/// (Z/qZ)^x with discrete-log tables for every residue.
class CharacterGroup {
 public:
  explicit CharacterGroup(u64 q) : modulus_(q) {
    if (q == 0) throw DomainError("character group: modulus must be positive");
    const FactoredInt fq = factorize(q);
    std::vector<std::vector<std::int32_t>> dlogs;
    for (const auto& f : fq.factors) {
      u64 pe = 1;
      for (unsigned e = 0; e < f.exponent; ++e) pe *= f.prime;
      if (f.prime != 2) {
        u64 g = detail::primitive_root_mod_prime(f.prime);
        if (f.exponent >= 2 && detail::powmod(g, f.prime - 1, f.prime * f.prime) == 1) g += f.prime;
        const u64 ord = pe / f.prime * (f.prime - 1);
        std::vector<std::int32_t> table(pe, -1);
        u64 x = 1;
        for (u64 k = 0; k < ord; ++k) {
          table[x] = static_cast<std::int32_t>(k);
          x = detail::mulmod(x, g, pe);
        }
        add_component({ComponentKind::odd_cyclic, f.prime, f.exponent, pe, g % pe, ord, 0});
        dlogs.push_back(std::move(table));
      } else if (f.exponent == 2) {
        add_component({ComponentKind::two_minus_one, 2, 2, 4, 3, 2, 0});
        dlogs.push_back({-1, 0, -1, 1});
      } else if (f.exponent >= 3) {
        const u64 ord5 = pe / 4;
        std::vector<std::int32_t> t_minus(pe, -1), t_five(pe, -1);
        for (u64 a = 0; a < 2; ++a) {
          u64 x = (a == 0) ? 1 : pe - 1;
          for (u64 b = 0; b < ord5; ++b) {
            t_minus[x] = static_cast<std::int32_t>(a);
            t_five[x] = static_cast<std::int32_t>(b);
            x = detail::mulmod(x, 5, pe);
          }
        }
        add_component({ComponentKind::two_minus_one, 2, f.exponent, pe, pe - 1, 2, 0});
        add_component({ComponentKind::two_five, 2, f.exponent, pe, 5 % pe, ord5, 0});
        dlogs.push_back(std::move(t_minus));
        dlogs.push_back(std::move(t_five));
      }
    }
    order_ = euler_phi(fq);
    for (auto& c : components_) {
      const u64 rest = q / c.prime_power;
      const u64 t = detail::mulmod((c.generator + c.prime_power - 1) % c.prime_power,
                                   detail::modinv(rest % c.prime_power, c.prime_power), c.prime_power);
      c.lifted_generator = (1 + rest * t) % q;
    }
    const std::size_t nc = components_.size();
    logs_.assign(q * nc, -1);
    unit_.assign(q, 0);
    for (u64 u = 0; u < q; ++u) {
      if (std::gcd(u, q) != 1) continue;
      unit_[u] = 1;
      for (std::size_t j = 0; j < nc; ++j) logs_[u * nc + j] = dlogs[j][u % components_[j].prime_power];
    }
  }

  /// Shared, memoized group for modulus q. Safe for concurrent callers.
  static std::shared_ptr<const CharacterGroup> of(u64 q) {
    static std::mutex mutex;
    static std::map<u64, std::shared_ptr<const CharacterGroup>> cache;
    {
      std::lock_guard lock(mutex);
      if (auto it = cache.find(q); it != cache.end()) return it->second;
    }
    auto group = std::make_shared<const CharacterGroup>(q);
    std::lock_guard lock(mutex);
    return cache.try_emplace(q, std::move(group)).first->second;
  }

  u64 modulus() const noexcept { return modulus_; }
  /// phi(q)
  u64 order() const noexcept { return order_; }
  /// lcm of component orders
  u64 exponent() const noexcept { return exponent_; }
  const std::vector<GroupComponent>& components() const noexcept { return components_; }
  std::size_t rank() const noexcept { return components_.size(); }

  bool is_unit(u64 residue) const { return unit_[residue] != 0; }
  /// Discrete log of `residue` on component j; residue must be a unit.
  u64 log(u64 residue, std::size_t j) const {
    return static_cast<u64>(logs_[residue * components_.size() + j]);
  }

 private:
  void add_component(GroupComponent c) {
    exponent_ = std::lcm(exponent_, c.order);
    components_.push_back(c);
  }

  u64 modulus_;
  u64 order_ = 1;
  u64 exponent_ = 1;
  std::vector<GroupComponent> components_;
  std::vector<std::int32_t> logs_;
  std::vector<std::uint8_t> unit_;
};

class DirichletCharacter {
 public:
  DirichletCharacter(std::shared_ptr<const CharacterGroup> group, std::vector<u64> exponents)
      : group_(std::move(group)), exponents_(std::move(exponents)) {
    if (exponents_.size() != group_->rank()) throw DomainError("character: exponent count does not match group rank");
    const u64 L = group_->exponent();
    weights_.reserve(exponents_.size());
    for (std::size_t j = 0; j < exponents_.size(); ++j) {
      const u64 ord = group_->components()[j].order;
      if (exponents_[j] >= ord) throw DomainError("character: exponent out of range");
      weights_.push_back(exponents_[j] * (L / ord) % L);
    }
  }

  u64 modulus() const noexcept { return group_->modulus(); }
  const CharacterGroup& group() const noexcept { return *group_; }
  const std::shared_ptr<const CharacterGroup>& group_ptr() const noexcept { return group_; }
  const std::vector<u64>& exponents() const noexcept { return exponents_; }

  /// chi(n) as an exact root of unity; nullopt when gcd(n, q) > 1.
  std::optional<RootOfUnity> exact(i64 n) const {
    const u64 u = residue(n);
    if (!group_->is_unit(u)) return std::nullopt;
    const u64 L = group_->exponent();
    u64 k = 0;
    for (std::size_t j = 0; j < weights_.size(); ++j) k = (k + detail::mulmod(weights_[j], group_->log(u, j), L)) % L;
    return RootOfUnity{k, L};
  }

  std::complex<double> operator()(i64 n) const {
    const auto v = exact(n);
    return v ? v->to_complex() : std::complex<double>{0.0, 0.0};
  }

  /// chi(u) for u = 0, ..., q - 1.
  std::vector<std::complex<double>> values() const {
    const u64 q = modulus();
    std::vector<std::complex<double>> out(q);
    for (u64 u = 0; u < q; ++u) out[u] = (*this)(static_cast<i64>(u));
    return out;
  }

  bool is_principal() const noexcept {
    return std::all_of(exponents_.begin(), exponents_.end(), [](u64 x) { return x == 0; });
  }

  /// chi^2 is principal.
  bool is_real() const noexcept {
    for (std::size_t j = 0; j < exponents_.size(); ++j) {
      if ((2 * exponents_[j]) % group_->components()[j].order != 0) return false;
    }
    return true;
  }

  /// Order of chi in the character group.
  u64 order() const noexcept {
    u64 o = 1;
    for (std::size_t j = 0; j < exponents_.size(); ++j) {
      const u64 ord = group_->components()[j].order;
      o = std::lcm(o, ord / std::gcd(exponents_[j], ord));
    }
    return o;
  }

  friend bool operator==(const DirichletCharacter& a, const DirichletCharacter& b) {
    return a.modulus() == b.modulus() && a.exponents_ == b.exponents_;
  }

 private:
  u64 residue(i64 n) const {
    const i64 q = static_cast<i64>(modulus());
    return static_cast<u64>(((n % q) + q) % q);
  }

  std::shared_ptr<const CharacterGroup> group_;
  std::vector<u64> exponents_;
  std::vector<u64> weights_;  // exponent_j * (L / ord_j) mod L
};

inline std::complex<double> value(const DirichletCharacter& chi, i64 n) { return chi(n); }

inline DirichletCharacter principal_character(u64 q) {
  auto g = CharacterGroup::of(q);
  return DirichletCharacter(g, std::vector<u64>(g->rank(), 0));
}

/// All phi(q) characters mod q, principal first, ordered by mixed-radix
/// index over the exponent vector (last component fastest).
inline std::vector<DirichletCharacter> character_group(u64 q) {
  auto g = CharacterGroup::of(q);
  std::vector<DirichletCharacter> out;
  out.reserve(g->order());
  std::vector<u64> exps(g->rank(), 0);
  for (u64 idx = 0; idx < g->order(); ++idx) {
    out.emplace_back(g, exps);
    for (std::size_t j = exps.size(); j-- > 0;) {
      if (++exps[j] < g->components()[j].order) break;
      exps[j] = 0;
    }
  }
  return out;
}

/// Smallest f | q such that chi factors through (Z/fZ)^x, computed per component.
inline u64 conductor(const DirichletCharacter& chi) {
  const auto& comps = chi.group().components();
  const auto& x = chi.exponents();
  u64 f = 1;
  std::optional<u64> minus_one_exp;
  std::optional<std::size_t> five_idx;
  for (std::size_t j = 0; j < comps.size(); ++j) {
    const auto& c = comps[j];
    switch (c.kind) {
      case ComponentKind::odd_cyclic: {
        const u64 o = c.order / std::gcd(x[j], c.order);
        if (o == 1) break;
        u64 phi_pf = c.prime - 1;  // phi(p^k), k = 1
        u64 pk = c.prime;
        while (phi_pf % o != 0) {
          phi_pf *= c.prime;
          pk *= c.prime;
        }
        f *= pk;
        break;
      }
      case ComponentKind::two_minus_one: minus_one_exp = x[j]; break;
      case ComponentKind::two_five: five_idx = j; break;
    }
  }
  u64 f2 = 1;
  if (five_idx) {
    const auto& c = comps[*five_idx];
    const u64 o = c.order / std::gcd(x[*five_idx], c.order);
    if (o > 1) {
      f2 = 4 * o;
    } else if (minus_one_exp && *minus_one_exp != 0) {
      f2 = 4;
    }
  } else if (minus_one_exp && *minus_one_exp != 0) {
    f2 = 4;
  }
  return f * f2;
}

inline bool is_primitive(const DirichletCharacter& chi) { return conductor(chi) == chi.modulus(); }

inline std::vector<DirichletCharacter> primitive_characters(u64 q) {
  std::vector<DirichletCharacter> out;
  if (q % 4 == 2) return out;
  for (auto& chi : character_group(q)) {
    if (is_primitive(chi)) out.push_back(std::move(chi));
  }
  return out;
}

namespace detail {

// Exponent x with chi(g) = exp(2 pi i x / ord), given chi(g) as an exact root.
inline u64 exponent_from_root(const RootOfUnity& v, u64 ord) {
  const u64 num = v.numerator * ord;
  if (num % v.order != 0) throw DomainError("character value order does not divide component order");
  return (num / v.order) % ord;
}

}  // namespace detail

/// The character mod `modulus` induced by chi (mod q1), q1 | modulus.
inline DirichletCharacter induce(const DirichletCharacter& chi, u64 modulus) {
  if (modulus == 0 || modulus % chi.modulus() != 0) {
    throw DomainError("induce: modulus " + std::to_string(chi.modulus()) + " does not divide " +
                      std::to_string(modulus));
  }
  auto g = CharacterGroup::of(modulus);
  std::vector<u64> exps;
  for (const auto& c : g->components()) {
    exps.push_back(detail::exponent_from_root(*chi.exact(static_cast<i64>(c.lifted_generator)), c.order));
  }
  return DirichletCharacter(g, std::move(exps));
}

/// The primitive character mod conductor(chi) that induces chi.
inline DirichletCharacter primitive_core(const DirichletCharacter& chi) {
  const u64 f = conductor(chi);
  const u64 q = chi.modulus();
  auto g = CharacterGroup::of(f);
  std::vector<u64> exps;
  for (const auto& c : g->components()) {
    u64 n = c.lifted_generator;
    while (std::gcd(n, q) != 1) n += f;
    exps.push_back(detail::exponent_from_root(*chi.exact(static_cast<i64>(n)), c.order));
  }
  return DirichletCharacter(g, std::move(exps));
}

/// Primitive characters of conductor D with chi^2 principal.
inline std::vector<DirichletCharacter> real_primitive_characters(u64 D) {
  std::vector<DirichletCharacter> out;
  for (auto& chi : primitive_characters(D)) {
    if (chi.is_real()) out.push_back(std::move(chi));
  }
  return out;
}

}  // namespace lsieve
