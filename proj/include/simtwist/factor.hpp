#pragma once

// Integer number theory: Miller-Rabin, trial division + Brent's variant of
// Pollard rho under an explicit iteration budget, valuations, squarefree
// parts, and prime streams avoiding a set of integers.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "simtwist/exactnum.hpp"

namespace simtwist {

/// Work budget for factorization. `rho_iterations` bounds the total number of
/// polynomial evaluations across every Pollard rho attempt of one call.
struct Effort {
  std::uint64_t trial_bound = 10000;
  std::uint64_t rho_iterations = 100000;
  std::uint64_t seed = 2;
};

struct PrimePower {
  Int prime;
  unsigned long exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// |n| = prod(prime^exponent) * cofactor; complete iff cofactor == 1.
struct PartialFactorization {
  std::vector<PrimePower> factors;
  Int cofactor{1};
  bool complete = true;
};

struct SquarefreePart {
  Int value;
  bool complete = false;
};

namespace detail {

// The first 40 primes. Forty strong-pseudoprime rounds bound the error of a
// composite passing by 4^-40 = 2^-80; the first 13 already make the test
// deterministic below 3.3e24.
inline constexpr std::array<unsigned long, 40> kWitnesses = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,
    47,  53,  59,  61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107,
    109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173};

inline bool strong_probable_prime(const Int& n, const Int& n_minus_1, const Int& odd_part,
                                  unsigned long twos, unsigned long base) {
  Int x;
  Int b(base);
  mpz_powm(x.get_mpz_t(), b.get_mpz_t(), odd_part.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned long i = 1; i < twos; ++i) {
    x = x * x % n;
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

}  // namespace detail

inline bool is_probable_prime(const Int& n) {
  if (n < 2) throw std::domain_error("primality test requires n >= 2");
  for (unsigned long p : detail::kWitnesses) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p) != 0) return false;
  }
  Int n_minus_1 = n - 1;
  Int odd_part = n_minus_1;
  unsigned long twos = mpz_scan1(odd_part.get_mpz_t(), 0);
  mpz_tdiv_q_2exp(odd_part.get_mpz_t(), odd_part.get_mpz_t(), twos);
  return std::all_of(detail::kWitnesses.begin(), detail::kWitnesses.end(), [&](unsigned long base) {
    return detail::strong_probable_prime(n, n_minus_1, odd_part, twos, base);
  });
}

/// Largest e with p^e | n.
inline unsigned long valuation(const Int& n, const Int& p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  if (p < 2 || !is_probable_prime(p)) throw std::domain_error("valuation base must be prime");
  Int rest;
  return mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
}

namespace detail {

// Brent's cycle detection on x -> x^2 + c mod n with batched gcds. Returns a
// nontrivial factor, or 0 when the budget runs out or this c degenerates.
inline Int brent_rho(const Int& n, const Int& start, const Int& c, std::uint64_t& budget) {
  constexpr std::uint64_t kBatch = 64;
  auto step = [&](const Int& v) { return Int((v * v + c) % n); };
  Int y = start, x, ys, q = 1, g = 1;
  std::uint64_t r = 1;
  while (g == 1) {
    x = y;
    for (std::uint64_t i = 0; i < r; ++i) {
      if (budget == 0) return 0;
      y = step(y);
      --budget;
    }
    for (std::uint64_t k = 0; k < r && g == 1; k += kBatch) {
      ys = y;
      const std::uint64_t len = std::min(kBatch, r - k);
      for (std::uint64_t i = 0; i < len; ++i) {
        if (budget == 0) return 0;
        y = step(y);
        --budget;
        q = q * ::abs(x - y) % n;
      }
      mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
    }
    r *= 2;
  }
  if (g == n) {
    // the batch overshot; replay it one step at a time
    do {
      if (budget == 0) return 0;
      ys = step(ys);
      --budget;
      Int diff = ::abs(x - ys);
      mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
    } while (g == 1);
  }
  return g == n ? Int(0) : g;
}

inline void push_factor(std::vector<PrimePower>& out, const Int& p, unsigned long e) {
  for (auto& pp : out) {
    if (pp.prime == p) {
      pp.exponent += e;
      return;
    }
  }
  out.push_back({p, e});
}

}  // namespace detail

/// Trial division to `effort.trial_bound`, then Brent-Pollard rho on the
/// remaining composites until the iteration budget is spent. Deterministic for
/// fixed effort. Factors are sorted ascending.
inline PartialFactorization factorize(const Int& n, const Effort& effort = {}) {
  if (n == 0) throw std::domain_error("cannot factor zero");
  PartialFactorization out;
  Int m = ::abs(n);
  Int rest;

  for (std::uint64_t d = 2; d <= effort.trial_bound && m > 1; d = (d == 2 ? 3 : d + 2)) {
    if (Int(d) * d > m) break;
    Int dd(static_cast<unsigned long>(d));
    if (mpz_divisible_ui_p(m.get_mpz_t(), static_cast<unsigned long>(d)) == 0) continue;
    unsigned long e = mpz_remove(m.get_mpz_t(), m.get_mpz_t(), dd.get_mpz_t());
    out.factors.push_back({dd, e});
  }

  std::vector<std::pair<Int, unsigned long>> pending;
  if (m > 1) pending.emplace_back(m, 1);
  Int leftover = 1;
  std::uint64_t budget = effort.rho_iterations;

  while (!pending.empty()) {
    auto [value, mult] = pending.back();
    pending.pop_back();
    if (value == 1) continue;
    if (is_probable_prime(value)) {
      detail::push_factor(out.factors, value, mult);
      continue;
    }
    // prime powers defeat rho, so peel perfect powers first
    if (mpz_perfect_power_p(value.get_mpz_t()) != 0) {
      for (unsigned long k = mpz_sizeinbase(value.get_mpz_t(), 2); k >= 2; --k) {
        if (auto root = exact_root(value, k)) {
          pending.emplace_back(*root, mult * k);
          break;
        }
      }
      continue;
    }
    Int factor = 0;
    for (unsigned long c = 1; factor == 0 && budget > 0; ++c) {
      factor = detail::brent_rho(value, Int(static_cast<unsigned long>(effort.seed)), Int(c), budget);
    }
    if (factor == 0) {
      Int power;
      mpz_pow_ui(power.get_mpz_t(), value.get_mpz_t(), mult);
      leftover *= power;
      continue;
    }
    Int other = value / factor;
    pending.emplace_back(factor, mult);
    pending.emplace_back(other, mult);
  }

  std::sort(out.factors.begin(), out.factors.end(),
            [](const PrimePower& l, const PrimePower& r) { return l.prime < r.prime; });
  out.cofactor = leftover;
  out.complete = leftover == 1;
  return out;
}

/// Signed representative s of n's square class with n/s a perfect square.
/// `complete` certifies that s is squarefree.
inline SquarefreePart squarefree_part(const Int& n, const Effort& effort = {}) {
  if (n == 0) throw std::domain_error("squarefree part of zero");
  auto fac = factorize(n, effort);
  Int s = 1;
  for (const auto& pp : fac.factors)
    if (pp.exponent % 2 == 1) s *= pp.prime;
  bool complete = fac.complete;
  if (!fac.complete) {
    if (is_perfect_square(fac.cofactor)) {
      complete = true;
    } else {
      s *= fac.cofactor;
    }
  }
  if (n < 0) s = -s;
  return {s, complete};
}

/// Increasing primes >= start that divide none of the exclusions. Zero
/// exclusions are ignored.
class PrimesAvoiding {
 public:
  PrimesAvoiding(std::vector<Int> exclusions, const Int& start)
      : exclusions_(std::move(exclusions)), next_(start < 2 ? Int(2) : start) {}

  Int next() {
    for (;; ++next_) {
      if (next_ == 2 || (next_ % 2 != 0 && is_probable_prime(next_))) {
        if (!excluded(next_)) return next_++;
      }
    }
  }

 private:
  bool excluded(const Int& p) const {
    return std::any_of(exclusions_.begin(), exclusions_.end(), [&](const Int& e) {
      return e != 0 && mpz_divisible_p(e.get_mpz_t(), p.get_mpz_t()) != 0;
    });
  }

  std::vector<Int> exclusions_;
  Int next_;
};

inline PrimesAvoiding primes_avoiding(std::vector<Int> exclusions, const Int& start) {
  return PrimesAvoiding(std::move(exclusions), start);
}

}  // namespace simtwist
