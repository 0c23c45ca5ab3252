#pragma once

// Exact integers and canonical rationals.
//
// Int is GMP's mpz_class. Rat wraps mpq_class and keeps it canonical at all
// times: positive denominator, gcd(|num|, den) = 1, zero stored as 0/1.

#include <gmpxx.h>

#include <concepts>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace simtwist {

using Int = mpz_class;

class Rat {
 public:
  Rat() = default;

  template <std::integral T>
  Rat(T v) : q_(static_cast<long>(v)) {}  // NOLINT(google-explicit-constructor)

  Rat(const Int& n) : q_(n) {}  // NOLINT(google-explicit-constructor)

  Rat(const Int& n, const Int& d) {
    if (d == 0) throw std::domain_error("rational with zero denominator");
    q_ = mpq_class(n, d);
    q_.canonicalize();
  }

  static Rat from_mpq(mpq_class q) {
    q.canonicalize();
    Rat r;
    r.q_ = std::move(q);
    return r;
  }

  /// Parses `n` or `n/m` with an optional leading '-'; decimal digits only,
  /// no whitespace, no '+'. Non-reduced input is accepted and canonicalized.
  static Rat parse(std::string_view text);

  const Int& num() const { return q_.get_num(); }
  const Int& den() const { return q_.get_den(); }
  const mpq_class& mpq() const { return q_; }

  int sign() const { return sgn(q_); }
  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }

  std::string str() const {
    if (q_.get_den() == 1) return q_.get_num().get_str();
    return q_.get_num().get_str() + "/" + q_.get_den().get_str();
  }

  Rat operator-() const { return from_mpq(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw std::domain_error("division by zero rational");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat l, const Rat& r) { return l += r; }
  friend Rat operator-(Rat l, const Rat& r) { return l -= r; }
  friend Rat operator*(Rat l, const Rat& r) { return l *= r; }
  friend Rat operator/(Rat l, const Rat& r) { return l /= r; }

  friend bool operator==(const Rat& l, const Rat& r) { return l.q_ == r.q_; }
  friend bool operator<(const Rat& l, const Rat& r) { return l.q_ < r.q_; }
  friend bool operator>(const Rat& l, const Rat& r) { return l.q_ > r.q_; }
  friend bool operator<=(const Rat& l, const Rat& r) { return l.q_ <= r.q_; }
  friend bool operator>=(const Rat& l, const Rat& r) { return l.q_ >= r.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.str(); }

 private:
  mpq_class q_;
};

inline Rat make_rational(const Int& n, const Int& d) { return Rat(n, d); }

inline Rat pow(const Rat& base, unsigned long e) {
  Int n, d;
  mpz_pow_ui(n.get_mpz_t(), base.num().get_mpz_t(), e);
  mpz_pow_ui(d.get_mpz_t(), base.den().get_mpz_t(), e);
  return Rat(n, d);
}

inline Rat abs(const Rat& q) { return q.sign() < 0 ? -q : q; }

inline Rat Rat::parse(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char ch : s)
      if (ch < '0' || ch > '9') return false;
    return true;
  };
  const bool negative = !text.empty() && text.front() == '-';
  std::string_view body = negative ? text.substr(1) : text;
  std::string_view num_part = body;
  std::string_view den_part = "1";
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    num_part = body.substr(0, slash);
    den_part = body.substr(slash + 1);
  }
  if (!digits(num_part) || !digits(den_part))
    throw std::invalid_argument("malformed rational: '" + std::string(text) + "'");
  Int n(std::string(num_part), 10);
  Int d(std::string(den_part), 10);
  if (d == 0) throw std::invalid_argument("malformed rational (zero denominator): '" + std::string(text) + "'");
  if (negative) n = -n;
  return Rat(n, d);
}

inline Rat parse_rational(std::string_view text) { return Rat::parse(text); }

/// Nonnegative integer k-th root of n when n is a perfect k-th power. Odd k
/// admits negative n.
inline std::optional<Int> exact_root(const Int& n, unsigned long k) {
  if (k == 0) throw std::domain_error("zeroth root");
  if (n < 0 && k % 2 == 0) return std::nullopt;
  Int mag = ::abs(n);
  Int r;
  if (mpz_root(r.get_mpz_t(), mag.get_mpz_t(), k) == 0) return std::nullopt;
  if (n < 0) r = -r;
  return r;
}

inline std::optional<Rat> exact_root(const Rat& q, unsigned long k) {
  auto n = exact_root(q.num(), k);
  if (!n) return std::nullopt;
  auto d = exact_root(q.den(), k);
  if (!d) return std::nullopt;
  return Rat(*n, *d);
}

inline std::optional<Int> is_perfect_square(const Int& n) {
  if (n < 0 || mpz_perfect_square_p(n.get_mpz_t()) == 0) return std::nullopt;
  Int r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

/// The nonnegative square root of q when q is the square of a rational.
inline std::optional<Rat> is_perfect_square(const Rat& q) {
  if (q.sign() < 0) return std::nullopt;
  auto n = is_perfect_square(q.num());
  if (!n) return std::nullopt;
  auto d = is_perfect_square(q.den());
  if (!d) return std::nullopt;
  return Rat(*n, *d);
}

/// True iff q1 and q2 have the same image in Q^x / (Q^x)^2, i.e. q1*q2 is a
/// rational square.
inline bool same_square_class(const Rat& q1, const Rat& q2) {
  if (q1.is_zero() || q2.is_zero()) throw std::domain_error("square class of zero is undefined");
  return is_perfect_square(q1 * q2).has_value();
}

}  // namespace simtwist
