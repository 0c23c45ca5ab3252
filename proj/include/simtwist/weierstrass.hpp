#pragma once

// Short Weierstrass curves y^2 = x^3 + a x + b over Q.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simtwist/exactnum.hpp"

namespace simtwist {

/// 4a^3 + 27b^2; a curve exists iff this is nonzero.
inline Rat disc_quantity(const Rat& a, const Rat& b) { return 4 * pow(a, 3) + 27 * pow(b, 2); }

class Curve {
 public:
  Curve(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {
    if (disc_quantity(a_, b_).is_zero())
      throw std::domain_error("singular curve: 4a^3 + 27b^2 = 0 for (a,b) = (" + a_.str() + "," + b_.str() + ")");
  }

  /// Parses `a,b` with each coordinate in the rational text format.
  static Curve parse(std::string_view text) {
    auto comma = text.find(',');
    if (comma == std::string_view::npos || text.find(',', comma + 1) != std::string_view::npos)
      throw std::invalid_argument("malformed curve '" + std::string(text) + "', expected a,b");
    return Curve(Rat::parse(text.substr(0, comma)), Rat::parse(text.substr(comma + 1)));
  }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }

  Rat rhs(const Rat& x) const { return x * x * x + a_ * x + b_; }

  std::string str() const { return a_.str() + "," + b_.str(); }

  friend bool operator==(const Curve&, const Curve&) = default;

 private:
  Rat a_;
  Rat b_;
};

inline bool has_j_zero(const Curve& c) { return c.a().is_zero(); }

class WPoint {
 public:
  static WPoint infinity() { return WPoint(); }
  WPoint(Rat x, Rat y) : x_(std::move(x)), y_(std::move(y)), at_infinity_(false) {}

  bool is_infinity() const { return at_infinity_; }
  const Rat& x() const { return x_; }
  const Rat& y() const { return y_; }

  std::string str() const { return at_infinity_ ? "O" : "(" + x_.str() + "," + y_.str() + ")"; }

  friend bool operator==(const WPoint&, const WPoint&) = default;

 private:
  WPoint() = default;
  Rat x_;
  Rat y_;
  bool at_infinity_ = true;
};

inline bool contains(const Curve& c, const WPoint& p) {
  return p.is_infinity() || p.y() * p.y() == c.rhs(p.x());
}

inline WPoint negate(const WPoint& p) { return p.is_infinity() ? p : WPoint(p.x(), -p.y()); }

namespace detail {

inline void require_on_curve(const Curve& c, const WPoint& p) {
  if (!contains(c, p))
    throw std::invalid_argument("point " + p.str() + " is not on y^2 = x^3 + (" + c.a().str() + ")x + (" +
                                c.b().str() + ")");
}

inline WPoint add_unchecked(const Curve& c, const WPoint& p, const WPoint& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  Rat slope;
  if (p.x() == q.x()) {
    if (p.y() != q.y() || p.y().is_zero()) return WPoint::infinity();
    slope = (3 * p.x() * p.x() + c.a()) / (2 * p.y());
  } else {
    slope = (q.y() - p.y()) / (q.x() - p.x());
  }
  Rat x3 = slope * slope - p.x() - q.x();
  Rat y3 = slope * (p.x() - x3) - p.y();
  return WPoint(std::move(x3), std::move(y3));
}

inline WPoint mul_unchecked(const Curve& c, long k, const WPoint& p) {
  WPoint base = k < 0 ? negate(p) : p;
  unsigned long n = k < 0 ? -static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
  WPoint acc = WPoint::infinity();
  while (n != 0) {
    if (n & 1UL) acc = add_unchecked(c, acc, base);
    n >>= 1;
    if (n != 0) base = add_unchecked(c, base, base);
  }
  return acc;
}

}  // namespace detail

inline WPoint add(const Curve& c, const WPoint& p, const WPoint& q) {
  detail::require_on_curve(c, p);
  detail::require_on_curve(c, q);
  return detail::add_unchecked(c, p, q);
}

/// k-fold multiple by double-and-add; negative k multiplies the negation.
inline WPoint scalar_mul(const Curve& c, long k, const WPoint& p) {
  detail::require_on_curve(c, p);
  return detail::mul_unchecked(c, k, p);
}

/// E_{a,b} -> E_{l^4 a, l^6 b}, (x,y) -> (l^2 x, l^3 y).
struct ModelScaling {
  Curve curve;
  Rat lambda;

  WPoint map(const WPoint& p) const {
    if (p.is_infinity()) return p;
    return WPoint(lambda * lambda * p.x(), pow(lambda, 3) * p.y());
  }
};

inline ModelScaling scale_model(const Curve& c, const Rat& lambda) {
  if (lambda.is_zero()) throw std::domain_error("model scaling by zero");
  return {Curve(pow(lambda, 4) * c.a(), pow(lambda, 6) * c.b()), lambda};
}

/// The twist D t^2 = x^3 + a x + b in its standard model y^2 = x^3 + aD^2 x + bD^3.
struct QuadraticTwist {
  Curve curve;
  Rat D;

  /// Sends a solution (x, t) of D t^2 = f(x) to (Dx, D^2 t).
  WPoint map(const Rat& x, const Rat& t) const { return WPoint(D * x, D * D * t); }
};

inline QuadraticTwist quadratic_twist(const Curve& c, const Rat& D) {
  if (D.is_zero()) throw std::domain_error("quadratic twist by zero");
  return {Curve(c.a() * D * D, c.b() * pow(D, 3)), D};
}

/// Every point order occurring in a torsion subgroup over Q (Mazur), minus the
/// trivial order 1.
inline constexpr std::array<int, 10> kTorsionOrders = {2, 3, 4, 5, 6, 7, 8, 9, 10, 12};

struct NonTorsionWitness {
  std::vector<int> checked_orders;
  std::vector<std::pair<int, WPoint>> multiples;
};

/// A witness that nP != O for every n in kTorsionOrders, or nothing when P is
/// torsion.
inline std::optional<NonTorsionWitness> certify_nontorsion(const Curve& c, const WPoint& p) {
  if (p.is_infinity()) throw std::invalid_argument("cannot certify the point at infinity");
  detail::require_on_curve(c, p);
  NonTorsionWitness w;
  w.checked_orders.assign(kTorsionOrders.begin(), kTorsionOrders.end());
  WPoint acc = p;
  for (int n = 2; n <= kTorsionOrders.back(); ++n) {
    acc = detail::add_unchecked(c, acc, p);
    if (acc.is_infinity()) return std::nullopt;
    if (n != 11) w.multiples.emplace_back(n, acc);
  }
  return w;
}

/// u > 0 with (c, d) = (u^4 a, u^6 b) when E1 and E2 are Q-isomorphic.
inline std::optional<Rat> are_isomorphic_over_Q(const Curve& e1, const Curve& e2) {
  const Rat &a = e1.a(), &b = e1.b(), &c = e2.a(), &d = e2.b();
  if (a.is_zero() != c.is_zero() || b.is_zero() != d.is_zero()) return std::nullopt;
  std::optional<Rat> u;
  if (a.is_zero()) {
    u = exact_root(d / b, 6);
  } else if (b.is_zero()) {
    u = exact_root(c / a, 4);
  } else {
    // u^6 / u^4 = u^2 = (d/b) / (c/a)
    u = is_perfect_square((d * a) / (b * c));
  }
  if (!u || u->is_zero()) return std::nullopt;
  if (pow(*u, 4) * a != c || pow(*u, 6) * b != d) return std::nullopt;
  return u;
}

}  // namespace simtwist
