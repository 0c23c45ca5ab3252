#pragma once

// Generators and independent oracles shared by the test suites. Nothing here
// calls into the code paths it is used to check.

#include <array>
#include <cstdint>
#include <random>
#include <vector>

#include "simtwist/exactnum.hpp"
#include "simtwist/factor.hpp"
#include "simtwist/planecubic.hpp"
#include "simtwist/weierstrass.hpp"

namespace simtwist::testing {

class RatGen {
 public:
  explicit RatGen(std::uint64_t seed) : rng_(seed) {}

  long integer(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng_); }

  /// num/den with |num| <= bound, 1 <= den <= bound.
  Rat rational(long bound = 20) { return Rat(Int(integer(-bound, bound)), Int(integer(1, bound))); }

  Rat nonzero(long bound = 20) {
    for (;;) {
      Rat r = rational(bound);
      if (!r.is_zero()) return r;
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

/// Primes by plain trial division, ascending with multiplicity.
inline std::vector<long> trial_division(long n) {
  std::vector<long> out;
  if (n < 0) n = -n;
  for (long p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      out.push_back(p);
      n /= p;
    }
  if (n > 1) out.push_back(n);
  return out;
}

inline bool is_prime_naive(long n) {
  if (n < 2) return false;
  for (long p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

/// k P by k - 1 successive chord additions.
inline WPoint repeated_addition(const Curve& c, long k, const WPoint& p) {
  WPoint acc = WPoint::infinity();
  for (long i = 0; i < k; ++i) acc = add(c, acc, p);
  return acc;
}

/// Smallest n in {1..12} with nP = O by repeated addition, or 0.
inline int brute_force_order(const Curve& c, const WPoint& p) {
  WPoint acc = WPoint::infinity();
  for (int n = 1; n <= 12; ++n) {
    acc = add(c, acc, p);
    if (acc.is_infinity()) return n;
  }
  return 0;
}

/// F(P + s v) at s = 0, 1, 2, 3 and Newton interpolation: for distinct affine
/// P, Q on C the restriction of F to the line has roots 0, 1 and a third s3
/// with s3 = -c2/c3 - 1 (sum of the roots). Returns nothing when the line
/// direction is a root of x^3 - y^3 (c3 = 0, the third point is at infinity).
inline std::optional<ProjPoint> third_point_by_interpolation(const PlaneCubic& C, const ProjPoint& p,
                                                             const ProjPoint& q) {
  const Rat vx = q.x() - p.x(), vy = q.y() - p.y();
  auto g = [&](long s) { return C.evaluate({p.x() + Rat(s) * vx, p.y() + Rat(s) * vy, Rat(1)}); };
  const Rat g0 = g(0), g1 = g(1), g2 = g(2), g3 = g(3);
  // third forward difference = 6 c3; second = 2 c2 + 6 c3 at s = 0
  const Rat d1_0 = g1 - g0, d1_1 = g2 - g1, d1_2 = g3 - g2;
  const Rat d2_0 = d1_1 - d1_0, d2_1 = d1_2 - d1_1;
  const Rat d3 = d2_1 - d2_0;
  const Rat c3 = d3 / 6;
  if (c3.is_zero()) return std::nullopt;
  const Rat c2 = (d2_0 - 6 * c3) / 2;
  const Rat s3 = -c2 / c3 - 1;
  return ProjPoint::affine(p.x() + s3 * vx, p.y() + s3 * vy);
}

}  // namespace simtwist::testing
