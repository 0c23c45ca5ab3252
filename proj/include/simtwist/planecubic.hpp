#pragma once

// The projective cubic  x^3 + a x z^2 + b z^3 = y^3 + c y z^2 + d z^3, i.e.
//   F = x^3 - y^3 + a x z^2 - c y z^2 + (b - d) z^3 = 0,
// whose affine points are the solutions of f_{a,b}(x) = f_{c,d}(y). The group
// law is chord-tangent with base point O = [1:1:0].

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "simtwist/exactnum.hpp"
#include "simtwist/weierstrass.hpp"

namespace simtwist {

/// A point of P^2(Q), scaled so that its last nonzero coordinate is 1.
/// Affine points therefore read (x, y, 1).
class ProjPoint {
 public:
  ProjPoint(Rat x, Rat y, Rat z) : c_{std::move(x), std::move(y), std::move(z)} { normalize(); }

  static ProjPoint affine(Rat x, Rat y) { return ProjPoint(std::move(x), std::move(y), Rat(1)); }

  /// `[x:y:z]` or the affine shorthand `(x,y)`.
  static ProjPoint parse(std::string_view text);

  const Rat& x() const { return c_[0]; }
  const Rat& y() const { return c_[1]; }
  const Rat& z() const { return c_[2]; }
  const std::array<Rat, 3>& coords() const { return c_; }
  bool is_affine() const { return !c_[2].is_zero(); }

  std::string str() const {
    if (is_affine()) return "(" + c_[0].str() + "," + c_[1].str() + ")";
    return "[" + c_[0].str() + ":" + c_[1].str() + ":" + c_[2].str() + "]";
  }

  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;

 private:
  void normalize() {
    for (int i = 2; i >= 0; --i) {
      if (!c_[i].is_zero()) {
        const Rat scale = c_[i];
        for (auto& v : c_) v /= scale;
        return;
      }
    }
    throw std::invalid_argument("projective point with all coordinates zero");
  }

  std::array<Rat, 3> c_;
};

inline ProjPoint ProjPoint::parse(std::string_view text) {
  auto fail = [&] { return std::invalid_argument("malformed projective point '" + std::string(text) + "'"); };
  if (text.size() < 2) throw fail();
  const char open = text.front(), close = text.back();
  const char sep = open == '[' ? ':' : ',';
  if (!((open == '[' && close == ']') || (open == '(' && close == ')'))) throw fail();
  std::string_view body = text.substr(1, text.size() - 2);
  std::vector<Rat> parts;
  for (;;) {
    auto pos = body.find(sep);
    parts.push_back(Rat::parse(body.substr(0, pos)));
    if (pos == std::string_view::npos) break;
    body = body.substr(pos + 1);
  }
  if (open == '[' && parts.size() == 3) return ProjPoint(parts[0], parts[1], parts[2]);
  if (open == '(' && parts.size() == 2) return ProjPoint::affine(parts[0], parts[1]);
  throw fail();
}

/// Discriminant of the cubic X^3 - 3ac X - (a^3 + c^3 + 27(b-d)^2/4):
///   108 a^3 c^3 - 27 (4a^3 + 4c^3 + 27(b-d)^2)^2 / 16.
inline Rat disc_epp(const Rat& a, const Rat& b, const Rat& c, const Rat& d) {
  const Rat inner = 4 * pow(a, 3) + 4 * pow(c, 3) + 27 * pow(b - d, 2);
  return 108 * pow(a, 3) * pow(c, 3) - Rat(27) * inner * inner / 16;
}

class PlaneCubic {
 public:
  static PlaneCubic build(Rat a, Rat b, Rat c, Rat d) {
    if (disc_epp(a, b, c, d).is_zero())
      throw std::domain_error("singular plane cubic: 108a^3c^3 - 27(4a^3 + 4c^3 + 27(b-d)^2)^2/16 = 0 for (a,b,c,d) = (" +
                              a.str() + "," + b.str() + "," + c.str() + "," + d.str() + ")");
    return PlaneCubic(std::move(a), std::move(b), std::move(c), std::move(d));
  }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  const Rat& c() const { return c_; }
  const Rat& d() const { return d_; }

  Rat evaluate(const std::array<Rat, 3>& p) const {
    const auto& [x, y, z] = p;
    const Rat z2 = z * z;
    return x * x * x - y * y * y + a_ * x * z2 - c_ * y * z2 + (b_ - d_) * z2 * z;
  }

  std::array<Rat, 3> gradient(const std::array<Rat, 3>& p) const {
    const auto& [x, y, z] = p;
    return {3 * x * x + a_ * z * z, -3 * y * y - c_ * z * z,
            2 * a_ * x * z - 2 * c_ * y * z + 3 * (b_ - d_) * z * z};
  }

  bool contains(const ProjPoint& p) const { return evaluate(p.coords()).is_zero(); }

 private:
  PlaneCubic(Rat a, Rat b, Rat c, Rat d) : a_(std::move(a)), b_(std::move(b)), c_(std::move(c)), d_(std::move(d)) {}

  Rat a_, b_, c_, d_;
};

/// O = [1:1:0]; the same point for every cubic of this shape.
inline ProjPoint base_point(const PlaneCubic& /*C*/) { return ProjPoint(1, 1, 0); }

/// P' = [b-d : b-d : c-a], the third point on the tangent x = y at O.
inline ProjPoint p_prime(const PlaneCubic& C) {
  if (C.a() == C.c()) throw std::domain_error("P' degenerates to [1:1:0] when a = c");
  const Rat s = C.b() - C.d();
  return ProjPoint(s, s, C.c() - C.a());
}

namespace detail {

inline Rat dot(const std::array<Rat, 3>& u, const std::array<Rat, 3>& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

inline std::array<Rat, 3> cross(const std::array<Rat, 3>& u, const std::array<Rat, 3>& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

inline void require_on_cubic(const PlaneCubic& C, const ProjPoint& p) {
  if (!C.contains(p)) throw std::invalid_argument("point " + p.str() + " is not on the plane cubic");
}

// On the line s P + t Q the cubic restricts to the binary form
//   F(P) s^3 + (grad F(P).Q) s^2 t + (grad F(Q).P) s t^2 + F(Q) t^3.
// With both P and Q on the curve the outer terms vanish and the remaining
// factor s*t*(A s + B t) leaves the third root (s:t) = (B : -A). For P = Q
// the line is the tangent, and any second point T on it gives the form
// t^2 (B s + C t) with B = grad F(T).P, C = F(T), whose root is (C : -B).
// B = 0 there means P is a flex and the third point is P itself.
inline ProjPoint third_unchecked(const PlaneCubic& C, const ProjPoint& p, const ProjPoint& q) {
  const auto& P = p.coords();
  if (p == q) {
    const auto g = C.gradient(P);
    const auto T = cross(g, P);
    const Rat B = dot(C.gradient(T), P);
    const Rat Ct = C.evaluate(T);
    return ProjPoint(Ct * P[0] - B * T[0], Ct * P[1] - B * T[1], Ct * P[2] - B * T[2]);
  }
  const auto& Q = q.coords();
  const Rat A = dot(C.gradient(P), Q);
  const Rat B = dot(C.gradient(Q), P);
  return ProjPoint(B * P[0] - A * Q[0], B * P[1] - A * Q[1], B * P[2] - A * Q[2]);
}

inline ProjPoint add_unchecked(const PlaneCubic& C, const ProjPoint& p, const ProjPoint& q) {
  return third_unchecked(C, base_point(C), third_unchecked(C, p, q));
}

inline ProjPoint negate_unchecked(const PlaneCubic& C, const ProjPoint& p) {
  const ProjPoint o = base_point(C);
  return third_unchecked(C, third_unchecked(C, o, o), p);
}

}  // namespace detail

/// Third intersection of line PQ (tangent at P when P = Q) with C, counted
/// with multiplicity.
inline ProjPoint third_intersection(const PlaneCubic& C, const ProjPoint& p, const ProjPoint& q) {
  detail::require_on_cubic(C, p);
  detail::require_on_cubic(C, q);
  return detail::third_unchecked(C, p, q);
}

/// P + Q = O * (P * Q).
inline ProjPoint add(const PlaneCubic& C, const ProjPoint& p, const ProjPoint& q) {
  detail::require_on_cubic(C, p);
  detail::require_on_cubic(C, q);
  return detail::add_unchecked(C, p, q);
}

/// -P = (O * O) * P.
inline ProjPoint negate(const PlaneCubic& C, const ProjPoint& p) {
  detail::require_on_cubic(C, p);
  return detail::negate_unchecked(C, p);
}

inline ProjPoint scalar_mul(const PlaneCubic& C, long k, const ProjPoint& p) {
  detail::require_on_cubic(C, p);
  ProjPoint base = k < 0 ? detail::negate_unchecked(C, p) : p;
  unsigned long n = k < 0 ? -static_cast<unsigned long>(k) : static_cast<unsigned long>(k);
  ProjPoint acc = base_point(C);
  while (n != 0) {
    if (n & 1UL) acc = detail::add_unchecked(C, acc, base);
    n >>= 1;
    if (n != 0) base = detail::add_unchecked(C, base, base);
  }
  return acc;
}

/// Y^2 = X^3 - 3ac X - a^3 - c^3 - 27(b-d)^2/4.
inline Curve to_weierstrass(const PlaneCubic& C) {
  const Rat &a = C.a(), &b = C.b(), &c = C.c(), &d = C.d();
  return Curve(-3 * a * c, -(pow(a, 3) + pow(c, 3) + Rat(27) * pow(b - d, 2) / 4));
}

/// Applies
///   X = 3x^2 + a + 3yx + 3y^2 + c
///   Y = -3ya - 6ax - 3cx - 9b/2 + 3cy + 9d/2 - 9yx^2 - 9y^2x - 9x^3
/// to an affine point of C, landing on to_weierstrass(C).
inline WPoint transform_point(const PlaneCubic& C, const ProjPoint& p) {
  if (!p.is_affine()) throw std::domain_error("transform_point needs an affine point, got " + p.str());
  detail::require_on_cubic(C, p);
  const Rat &a = C.a(), &b = C.b(), &c = C.c(), &d = C.d();
  const Rat &x = p.x(), &y = p.y();
  Rat X = 3 * x * x + a + 3 * y * x + 3 * y * y + c;
  Rat Y = -3 * y * a - 6 * a * x - 3 * c * x - Rat(9) * b / 2 + 3 * c * y + Rat(9) * d / 2 - 9 * y * x * x -
          9 * y * y * x - 9 * x * x * x;
  return WPoint(std::move(X), std::move(Y));
}

/// Image of P' on to_weierstrass(C), in closed form.
inline WPoint p_double_prime(const PlaneCubic& C) {
  const Rat &a = C.a(), &b = C.b(), &c = C.c(), &d = C.d();
  if (a == c) throw std::domain_error("P'' is undefined when a = c");
  const Rat s = b - d, w = a - c;
  const Rat w2 = w * w;
  return WPoint((9 * s * s + w2 * (a + c)) / w2, 9 * s * (6 * s * s + w2 * (a + c)) / (2 * w2 * w));
}

/// z = f_{a,b}(x0) = f_{c,d}(y0) at an affine point of C.
inline Rat common_value(const PlaneCubic& C, const ProjPoint& p) {
  if (!p.is_affine()) throw std::domain_error("common_value needs an affine point, got " + p.str());
  const Rat left = p.x() * p.x() * p.x() + C.a() * p.x() + C.b();
  const Rat right = p.y() * p.y() * p.y() + C.c() * p.y() + C.d();
  if (left != right) throw std::logic_error("corrupted plane cubic point: f_{a,b}(x) != f_{c,d}(y) at " + p.str());
  return left;
}

struct PlaneNonTorsionWitness {
  std::vector<int> checked_orders;
  std::vector<std::pair<int, ProjPoint>> multiples;
};

/// nQ != O on C for every possible torsion order over Q. C(Q) with base O is
/// isomorphic to the Mordell-Weil group of to_weierstrass(C).
inline std::optional<PlaneNonTorsionWitness> certify_nontorsion(const PlaneCubic& C, const ProjPoint& q) {
  detail::require_on_cubic(C, q);
  const ProjPoint o = base_point(C);
  if (q == o) throw std::invalid_argument("cannot certify the base point");
  PlaneNonTorsionWitness w;
  w.checked_orders.assign(kTorsionOrders.begin(), kTorsionOrders.end());
  ProjPoint acc = q;
  for (int n = 2; n <= kTorsionOrders.back(); ++n) {
    acc = detail::add_unchecked(C, acc, q);
    if (acc == o) return std::nullopt;
    if (n != 11) w.multiples.emplace_back(n, acc);
  }
  return w;
}

}  // namespace simtwist
