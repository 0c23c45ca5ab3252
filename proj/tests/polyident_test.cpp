#include <gtest/gtest.h>

#include "simtwist/polyident.hpp"
#include "test_support.hpp"

using namespace simtwist;
using simtwist::testing::RatGen;

namespace {

using Values = std::array<Rat, kNumVars>;

MPoly random_poly(RatGen& gen, int terms = 5) {
  MPoly p;
  for (int i = 0; i < terms; ++i) {
    MPoly::Exponents e{};
    for (auto& v : e) v = static_cast<std::uint32_t>(gen.integer(0, 2));
    p += MPoly::monomial(gen.rational(6), e);
  }
  return p;
}

Values random_point(RatGen& gen) {
  Values v;
  for (auto& r : v) r = gen.rational(12);
  return v;
}

// (a, b, c, d, x, y) with x^3 + ax + b = y^3 + cy + d, d solved for
Values random_on_relation(RatGen& gen) {
  Values v = random_point(gen);
  const Rat &a = v[0], &b = v[1], &c = v[2], &x = v[4], &y = v[5];
  v[3] = x * x * x + a * x + b - y * y * y - c * y;
  return v;
}

// the transform written out directly
std::pair<Rat, Rat> transform_direct(const Values& v) {
  const auto& [a, b, c, d, x, y] = v;
  const Rat X = 3 * x * x + a + 3 * y * x + 3 * y * y + c;
  const Rat Y = -3 * y * a - 6 * a * x - 3 * c * x - Rat(9, 2) * b + 3 * c * y + Rat(9, 2) * d - 9 * y * x * x -
                9 * y * y * x - 9 * x * x * x;
  return {X, Y};
}

Rat rhs_direct(const Values& v, const Rat& X) {
  const auto& [a, b, c, d, x, y] = v;
  return X * X * X - 3 * a * c * X - a * a * a - c * c * c - Rat(27, 4) * (b - d) * (b - d);
}

}  // namespace

TEST(MPoly, RingAxioms) {
  RatGen gen(51);
  for (int i = 0; i < 60; ++i) {
    const MPoly p = random_poly(gen), q = random_poly(gen), r = random_poly(gen);
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p + q) + r, p + (q + r));
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_TRUE((p - p).is_zero());
    EXPECT_EQ(p * MPoly(1), p);
    EXPECT_TRUE((p * MPoly()).is_zero());
    EXPECT_EQ(pow(p, 3), p * p * p);
  }
}

TEST(MPoly, EvaluationIsARingHomomorphism) {
  RatGen gen(52);
  for (int i = 0; i < 100; ++i) {
    const MPoly p = random_poly(gen), q = random_poly(gen);
    const Values v = random_point(gen);
    EXPECT_EQ((p + q).evaluate(v), p.evaluate(v) + q.evaluate(v));
    EXPECT_EQ((p * q).evaluate(v), p.evaluate(v) * q.evaluate(v));
    EXPECT_EQ(p.scale(Rat(3, 7)).evaluate(v), Rat(3, 7) * p.evaluate(v));
  }
}

TEST(MPoly, SubstituteMatchesEvaluation) {
  RatGen gen(53);
  for (int i = 0; i < 50; ++i) {
    const MPoly p = random_poly(gen), value = random_poly(gen, 3);
    Values v = random_point(gen);
    const Rat inner = value.evaluate(v);
    const Rat lhs = substitute(p, Var::x, value).evaluate(v);
    v[static_cast<std::size_t>(Var::x)] = inner;
    EXPECT_EQ(lhs, p.evaluate(v));
  }
}

TEST(MPoly, StrAndDegree) {
  using namespace poly;
  EXPECT_EQ(MPoly().str(), "0");
  const MPoly p = pow(x(), 3) * y() + 2;
  EXPECT_EQ(p.degree_in(Var::x), 3u);
  EXPECT_EQ(p.degree_in(Var::y), 1u);
  EXPECT_EQ(p.degree_in(Var::a), 0u);
}

TEST(Relation, ReductionExamples) {
  using namespace poly;
  EXPECT_EQ(reduce_mod_relation(pow(x(), 3)), pow(y(), 3) + c() * y() + d() - a() * x() - b());
  EXPECT_TRUE(reduce_mod_relation(relation()).is_zero());
  EXPECT_EQ(reduce_mod_relation(x() * x() + y()), x() * x() + y());
  EXPECT_EQ(reduce_mod_relation(pow(x(), 4)), reduce_mod_relation(x() * (pow(y(), 3) + c() * y() + d() - a() * x() - b())));
}

TEST(Relation, DivisionIdentity) {
  RatGen gen(54);
  for (int i = 0; i < 40; ++i) {
    const MPoly p = random_poly(gen) * pow(poly::x(), static_cast<unsigned>(gen.integer(0, 4))) + random_poly(gen);
    const auto div = divide_by_relation(p);
    EXPECT_EQ(div.quotient * poly::relation() + div.remainder, p);
    EXPECT_LE(div.remainder.degree_in(Var::x), 2u);
    // the remainder agrees with p on the relation variety
    const Values v = random_on_relation(gen);
    EXPECT_EQ(div.remainder.evaluate(v), p.evaluate(v));
  }
}

TEST(Identities, WeierstrassIdentityHoldsAndAgreesWithEvaluation) {
  EXPECT_TRUE(verify_weierstrass_identity());
  EXPECT_TRUE(weierstrass_identity_remainder(poly::transform_X(), poly::transform_Y()).is_zero());
  RatGen gen(55);
  for (int i = 0; i < 250; ++i) {
    const Values v = random_on_relation(gen);
    const auto [X, Y] = transform_direct(v);
    EXPECT_EQ(Y * Y, rhs_direct(v, X));
    EXPECT_EQ(poly::transform_X().evaluate(v), X);
    EXPECT_EQ(poly::transform_Y().evaluate(v), Y);
  }
}

TEST(Identities, PointIdentityHoldsAndAgreesWithEvaluation) {
  EXPECT_TRUE(verify_point_identity());
  RatGen gen(56);
  int checked = 0;
  while (checked < 250) {
    Values v = random_point(gen);
    const auto& [a, b, c, d, x, y] = v;
    if (a == c) continue;
    const Rat s = b - d, w = a - c;
    // P' = (s/(c-a), s/(c-a)) lies on the relation
    v[4] = v[5] = s / (c - a);
    const Rat px = v[4];
    ASSERT_EQ(px * px * px + a * px + b, px * px * px + c * px + d);
    const auto [X, Y] = transform_direct(v);
    EXPECT_EQ(X, (9 * s * s + w * w * (a + c)) / (w * w));
    EXPECT_EQ(Y, 9 * s * (6 * s * s + w * w * (a + c)) / (2 * w * w * w));
    ++checked;
  }
}

TEST(Identities, DiscIdentityHoldsAndAgreesWithEvaluation) {
  EXPECT_TRUE(verify_disc_identity());
  RatGen gen(57);
  for (int i = 0; i < 250; ++i) {
    const Values v = random_point(gen);
    const auto& [a, b, c, d, x, y] = v;
    // discriminant of X^3 + pX + q as the product of squared root differences
    // is -4p^3 - 27q^2; compare with the closed form
    const Rat p = -3 * a * c;
    const Rat q = -(a * a * a + c * c * c + Rat(27, 4) * (b - d) * (b - d));
    const Rat inner = 4 * a * a * a + 4 * c * c * c + 27 * (b - d) * (b - d);
    EXPECT_EQ(-4 * p * p * p - 27 * q * q, 108 * a * a * a * c * c * c - Rat(27, 16) * inner * inner);
  }
  // a cubic with known roots 1, 2, -3: X^3 - 7X + 6, discriminant ((1-2)(1+3)(2+3))^2 = 400
  EXPECT_EQ(-4 * Rat(-7) * Rat(-7) * Rat(-7) - 27 * Rat(36), Rat(400));
}

TEST(Identities, EveryCoefficientMutationOfTheTransformIsDetected) {
  const MPoly X = poly::transform_X();
  const MPoly Y = poly::transform_Y();
  RatGen gen(58);
  for (const auto& [e, coeff] : X.terms()) {
    const MPoly mutated = X + MPoly::monomial(1, e);
    EXPECT_FALSE(verify_weierstrass_identity(mutated, Y));
    bool seen = false;
    for (int i = 0; i < 20 && !seen; ++i) {
      const Values v = random_on_relation(gen);
      const Rat Xm = mutated.evaluate(v), Yv = Y.evaluate(v);
      seen = Yv * Yv != rhs_direct(v, Xm);
    }
    EXPECT_TRUE(seen);
  }
  for (const auto& [e, coeff] : Y.terms()) EXPECT_FALSE(verify_weierstrass_identity(X, Y + MPoly::monomial(1, e)));
  // the 3yx coefficient changed to 4
  const MPoly bumped = X + poly::x() * poly::y();
  EXPECT_FALSE(verify_weierstrass_identity(bumped, Y));
  EXPECT_FALSE(verify_point_identity(bumped, Y));
}
