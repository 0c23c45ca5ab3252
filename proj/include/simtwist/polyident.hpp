#pragma once

// Sparse polynomials in a, b, c, d, x, y with exact rational coefficients, and
// exact checks of the algebraic identities behind the plane cubic's
// Weierstrass model: the transform's image satisfies the model modulo
// f_{a,b}(x) = f_{c,d}(y), the transform sends P' to the closed-form P'', and
// the closed-form discriminant matches the model's cubic.

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "simtwist/exactnum.hpp"

namespace simtwist {

enum class Var : std::size_t { a = 0, b, c, d, x, y };
inline constexpr std::size_t kNumVars = 6;

class MPoly {
 public:
  using Exponents = std::array<std::uint32_t, kNumVars>;
  using Terms = std::map<Exponents, Rat>;

  MPoly() = default;
  MPoly(const Rat& constant) {  // NOLINT(google-explicit-constructor)
    if (!constant.is_zero()) terms_.emplace(Exponents{}, constant);
  }
  template <std::integral T>
  MPoly(T constant) : MPoly(Rat(constant)) {}  // NOLINT(google-explicit-constructor)

  static MPoly var(Var v) {
    Exponents e{};
    e[static_cast<std::size_t>(v)] = 1;
    MPoly p;
    p.terms_.emplace(e, Rat(1));
    return p;
  }

  static MPoly monomial(const Rat& coeff, const Exponents& e) {
    MPoly p;
    if (!coeff.is_zero()) p.terms_.emplace(e, coeff);
    return p;
  }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  std::uint32_t degree_in(Var v) const {
    std::uint32_t deg = 0;
    for (const auto& [e, coeff] : terms_) deg = std::max(deg, e[static_cast<std::size_t>(v)]);
    return deg;
  }

  MPoly& operator+=(const MPoly& o) {
    for (const auto& [e, coeff] : o.terms_) accumulate(e, coeff);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    for (const auto& [e, coeff] : o.terms_) accumulate(e, -coeff);
    return *this;
  }
  MPoly operator-() const {
    MPoly r;
    for (const auto& [e, coeff] : terms_) r.terms_.emplace(e, -coeff);
    return r;
  }

  friend MPoly operator+(MPoly l, const MPoly& r) { return l += r; }
  friend MPoly operator-(MPoly l, const MPoly& r) { return l -= r; }
  friend MPoly operator*(const MPoly& l, const MPoly& r) {
    MPoly out;
    for (const auto& [el, cl] : l.terms_)
      for (const auto& [er, cr] : r.terms_) {
        Exponents e;
        for (std::size_t i = 0; i < kNumVars; ++i) e[i] = el[i] + er[i];
        out.accumulate(e, cl * cr);
      }
    return out;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scale(const Rat& k) const {
    MPoly r;
    if (k.is_zero()) return r;
    for (const auto& [e, coeff] : terms_) r.terms_.emplace(e, coeff * k);
    return r;
  }

  friend bool operator==(const MPoly&, const MPoly&) = default;

  /// Evaluates at values indexed by Var.
  Rat evaluate(const std::array<Rat, kNumVars>& values) const {
    Rat total;
    for (const auto& [e, coeff] : terms_) {
      Rat term = coeff;
      for (std::size_t i = 0; i < kNumVars; ++i)
        if (e[i] != 0) term *= simtwist::pow(values[i], e[i]);
      total += term;
    }
    return total;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    static constexpr std::array<const char*, kNumVars> names = {"a", "b", "c", "d", "x", "y"};
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, coeff] = *it;
      if (!out.empty()) out += " + ";
      out += "(" + coeff.str() + ")";
      for (std::size_t i = 0; i < kNumVars; ++i) {
        if (e[i] == 0) continue;
        out += std::string("*") + names[i];
        if (e[i] > 1) out += "^" + std::to_string(e[i]);
      }
    }
    return out;
  }

 private:
  void accumulate(const Exponents& e, const Rat& coeff) {
    if (coeff.is_zero()) return;
    auto [it, inserted] = terms_.try_emplace(e, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Terms terms_;
};

inline MPoly pow(const MPoly& p, unsigned e) {
  MPoly result(1);
  MPoly base = p;
  while (e != 0) {
    if (e & 1U) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

/// Ring homomorphism sending `v` to `value` and fixing the other variables.
inline MPoly substitute(const MPoly& p, Var v, const MPoly& value) {
  const auto idx = static_cast<std::size_t>(v);
  std::map<std::uint32_t, MPoly> powers;
  powers.emplace(0, MPoly(1));
  auto power = [&](std::uint32_t k) -> const MPoly& {
    auto it = powers.find(k);
    if (it != powers.end()) return it->second;
    return powers.emplace(k, pow(value, k)).first->second;
  };
  MPoly out;
  for (const auto& [e, coeff] : p.terms()) {
    MPoly::Exponents rest = e;
    rest[idx] = 0;
    out += MPoly::monomial(coeff, rest) * power(e[idx]);
  }
  return out;
}

namespace poly {

inline MPoly a() { return MPoly::var(Var::a); }
inline MPoly b() { return MPoly::var(Var::b); }
inline MPoly c() { return MPoly::var(Var::c); }
inline MPoly d() { return MPoly::var(Var::d); }
inline MPoly x() { return MPoly::var(Var::x); }
inline MPoly y() { return MPoly::var(Var::y); }

/// g = x^3 + a x + b - y^3 - c y - d.
inline MPoly relation() {
  return pow(x(), 3) + a() * x() + b() - pow(y(), 3) - c() * y() - d();
}

inline MPoly transform_X() {
  return 3 * pow(x(), 2) + a() + 3 * y() * x() + 3 * pow(y(), 2) + c();
}

inline MPoly transform_Y() {
  const Rat half9(9, 2);
  return -3 * y() * a() - 6 * a() * x() - 3 * c() * x() - b().scale(half9) + 3 * c() * y() + d().scale(half9) -
         9 * y() * pow(x(), 2) - 9 * pow(y(), 2) * x() - 9 * pow(x(), 3);
}

/// The Weierstrass model's right side X^3 - 3ac X - a^3 - c^3 - 27(b-d)^2/4
/// as a polynomial in the given X.
inline MPoly weierstrass_rhs(const MPoly& X) {
  return pow(X, 3) - 3 * a() * c() * X - pow(a(), 3) - pow(c(), 3) - pow(b() - d(), 2).scale(Rat(27, 4));
}

}  // namespace poly

/// Quotient and remainder of p by g as polynomials in x over Q[a,b,c,d,y]; g
/// is monic of degree 3 in x, so the remainder has x-degree <= 2.
struct RelationDivision {
  MPoly quotient;
  MPoly remainder;
};

inline RelationDivision divide_by_relation(const MPoly& p) {
  constexpr auto kx = static_cast<std::size_t>(Var::x);
  // x^3 == tail (mod g)
  const MPoly tail = pow(poly::y(), 3) + poly::c() * poly::y() + poly::d() - poly::a() * poly::x() - poly::b();
  RelationDivision out{MPoly(), p};
  for (;;) {
    // the term with the largest x-degree
    const MPoly::Exponents* lead = nullptr;
    for (const auto& [e, coeff] : out.remainder.terms())
      if (e[kx] >= 3 && (lead == nullptr || e[kx] > (*lead)[kx])) lead = &e;
    if (lead == nullptr) break;
    MPoly::Exponents shift = *lead;
    shift[kx] -= 3;
    const MPoly q_term = MPoly::monomial(out.remainder.terms().at(*lead), shift);
    out.quotient += q_term;
    out.remainder -= q_term * poly::relation();
  }
  return out;
}

/// Canonical remainder modulo x^3 -> y^3 + cy + d - ax - b.
inline MPoly reduce_mod_relation(const MPoly& p) { return divide_by_relation(p).remainder; }

/// Y^2 - rhs(X), reduced modulo the relation. Zero iff the transform carries
/// the plane cubic onto the Weierstrass model.
inline MPoly weierstrass_identity_remainder(const MPoly& X, const MPoly& Y) {
  return reduce_mod_relation(pow(Y, 2) - poly::weierstrass_rhs(X));
}

inline bool verify_weierstrass_identity(const MPoly& X = poly::transform_X(), const MPoly& Y = poly::transform_Y()) {
  return weierstrass_identity_remainder(X, Y).is_zero();
}

/// (a - c)^n * p(s/(c-a), s/(c-a)) with s = b - d, for p of total (x,y)-degree
/// at most n. The result is a polynomial in a, b, c, d.
inline MPoly clear_at_p_prime(const MPoly& p, std::uint32_t n) {
  constexpr auto kx = static_cast<std::size_t>(Var::x);
  constexpr auto ky = static_cast<std::size_t>(Var::y);
  const MPoly s = poly::b() - poly::d();
  const MPoly w = poly::c() - poly::a();
  MPoly out;
  for (const auto& [e, coeff] : p.terms()) {
    const std::uint32_t deg = e[kx] + e[ky];
    if (deg > n) throw std::domain_error("clear_at_p_prime: degree exceeds clearing exponent");
    MPoly::Exponents rest = e;
    rest[kx] = rest[ky] = 0;
    out += MPoly::monomial(coeff, rest) * pow(s, deg) * pow(w, n - deg);
  }
  // w^n = (-1)^n (a - c)^n
  return n % 2 == 0 ? out : -out;
}

struct PointIdentityRemainders {
  MPoly x_remainder;
  MPoly y_remainder;
};

/// Differences between the cleared transform at P' and the cleared
/// closed forms
///   (a-c)^2 X  = 9(b-d)^2 + (a-c)^2 (a+c)
///   2(a-c)^3 Y = 9(b-d)(6(b-d)^2 + (a-c)^2 (a+c)).
inline PointIdentityRemainders point_identity_remainders(const MPoly& X = poly::transform_X(),
                                                         const MPoly& Y = poly::transform_Y()) {
  using namespace poly;
  const MPoly s = b() - d();
  const MPoly w2 = pow(a() - c(), 2);
  const MPoly x_closed = 9 * pow(s, 2) + w2 * (a() + c());
  const MPoly y_closed = 9 * s * (6 * pow(s, 2) + w2 * (a() + c()));
  return {clear_at_p_prime(X, 2) - x_closed, clear_at_p_prime(Y, 3).scale(2) - y_closed};
}

inline bool verify_point_identity(const MPoly& X = poly::transform_X(), const MPoly& Y = poly::transform_Y()) {
  auto r = point_identity_remainders(X, Y);
  return r.x_remainder.is_zero() && r.y_remainder.is_zero();
}

/// -4p^3 - 27q^2 with p = -3ac, q = -(a^3 + c^3 + 27(b-d)^2/4), minus the
/// closed form 108a^3c^3 - 27(4a^3 + 4c^3 + 27(b-d)^2)^2/16.
inline MPoly disc_identity_remainder() {
  using namespace poly;
  const MPoly p = -3 * a() * c();
  const MPoly q = -(pow(a(), 3) + pow(c(), 3) + pow(b() - d(), 2).scale(Rat(27, 4)));
  const MPoly generic = -4 * pow(p, 3) - 27 * pow(q, 2);
  const MPoly inner = 4 * pow(a(), 3) + 4 * pow(c(), 3) + 27 * pow(b() - d(), 2);
  const MPoly closed = 108 * pow(a(), 3) * pow(c(), 3) - pow(inner, 2).scale(Rat(27, 16));
  return generic - closed;
}

inline bool verify_disc_identity() { return disc_identity_remainder().is_zero(); }

}  // namespace simtwist
