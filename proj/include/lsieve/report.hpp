#pragma once

#include <cmath>
#include <limits>
#include <map>
#include <string>
#include <string_view>

namespace lsieve {

/// Relative slack granted to floating-point comparisons of lhs against rhs.
inline constexpr double kRelTol = 1e-9;

enum class Inequality {
  mvs,      // (N + Q^2) primitive large sieve
  bd,       // (sqrt N + Q)^2 primitive large sieve
  thm12,    // all characters weighted by |tau|^2 / phi(q)
  eq14,     // induced-character double sum
  eq15,     // mu^2 / phi lower bound
  eq16,     // log(Q/q) weighted
  thm13,    // Ramanujan-twisted
  prop21,   // coprime-to-R support
  prop22,   // sums of two coprime squares
  thm21,    // almost-prime coefficients
  brun_titchmarsh,
  lemma21,
  eq31,
  eq37,
  lemma31,
  prop31,
  prop32,
};

inline std::string_view name(Inequality id) {
  switch (id) {
    case Inequality::mvs: return "mvs";
    case Inequality::bd: return "bd";
    case Inequality::thm12: return "thm12";
    case Inequality::eq14: return "eq14";
    case Inequality::eq15: return "eq15";
    case Inequality::eq16: return "eq16";
    case Inequality::thm13: return "thm13";
    case Inequality::prop21: return "prop21";
    case Inequality::prop22: return "prop22";
    case Inequality::thm21: return "thm21";
    case Inequality::brun_titchmarsh: return "bt";
    case Inequality::lemma21: return "lemma21";
    case Inequality::eq31: return "eq31";
    case Inequality::eq37: return "eq37";
    case Inequality::lemma31: return "lemma31";
    case Inequality::prop31: return "prop31";
    case Inequality::prop32: return "prop32";
  }
  return "unknown";
}

/// Whether the report asserts lhs <= rhs (upper) or lhs >= rhs (lower).
enum class Bound { upper, lower };

/// One verification record.
struct InequalityReport {
  Inequality id = Inequality::mvs;
  Bound bound = Bound::upper;
  std::map<std::string, double> parameters;
  std::map<std::string, std::string> notes;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
  bool pass = true;

  static InequalityReport make(Inequality id, double lhs, double rhs, Bound bound = Bound::upper) {
    InequalityReport r;
    r.id = id;
    r.bound = bound;
    r.set_sides(lhs, rhs);
    return r;
  }

  /// ratio = lhs / rhs, with 0/0 -> 0 and x/0 -> +inf for x > 0.
  void set_sides(double l, double r) {
    lhs = l;
    rhs = r;
    if (r == 0.0) {
      ratio = (l == 0.0) ? 0.0 : std::numeric_limits<double>::infinity();
    } else {
      ratio = l / r;
    }
    pass = (bound == Bound::upper) ? (l <= r + kRelTol * std::abs(r)) : (l >= r - kRelTol * std::abs(r));
  }

  /// Copy with rhs multiplied by `factor`; used to prove a suite can fail.
  InequalityReport with_rhs_scaled(double factor) const {
    InequalityReport r = *this;
    r.set_sides(lhs, rhs * factor);
    return r;
  }
};

}  // namespace lsieve
