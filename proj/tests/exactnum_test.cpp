#include <gtest/gtest.h>

#include "simtwist/exactnum.hpp"
#include "test_support.hpp"

using namespace simtwist;
using simtwist::testing::RatGen;

TEST(Rat, MakeRationalCanonicalizes) {
  EXPECT_EQ(make_rational(6, -4).str(), "-3/2");
  EXPECT_EQ(make_rational(0, 7).str(), "0");
  EXPECT_EQ(make_rational(0, 7).den(), 1);
  EXPECT_EQ(make_rational(10, 5).str(), "2");
  EXPECT_THROW(make_rational(1, 0), std::domain_error);
}

TEST(Rat, ParseAcceptsStrictFormat) {
  EXPECT_EQ(Rat::parse("-63/4"), Rat(-63, 4));
  EXPECT_EQ(Rat::parse("81/2"), Rat(81, 2));
  EXPECT_EQ(Rat::parse("12"), Rat(12));
  EXPECT_EQ(Rat::parse("4/6").str(), "2/3");
  EXPECT_EQ(Rat::parse("-0").str(), "0");
  EXPECT_EQ(parse_rational("123456789012345678901234567890").str(), "123456789012345678901234567890");
}

TEST(Rat, ParseRejectsMalformed) {
  for (const char* bad : {"", "-", "1/", "/2", "1/0", "+1", " 1", "1 ", "1.5", "1/2/3", "--1", "1/-2", "abc", "0x10"})
    EXPECT_THROW(Rat::parse(bad), std::invalid_argument) << bad;
}

TEST(Rat, DivisionByZeroThrows) {
  EXPECT_THROW(Rat(1) / Rat(0), std::domain_error);
  Rat r(3);
  EXPECT_THROW(r /= Rat(), std::domain_error);
}

TEST(Rat, FieldAxiomsOnRandomValues) {
  RatGen gen(11);
  for (int i = 0; i < 500; ++i) {
    const Rat p = gen.rational(50), q = gen.rational(50), r = gen.rational(50);
    EXPECT_EQ(p + q, q + p);
    EXPECT_EQ(p * q, q * p);
    EXPECT_EQ((p + q) + r, p + (q + r));
    EXPECT_EQ((p * q) * r, p * (q * r));
    EXPECT_EQ(p * (q + r), p * q + p * r);
    EXPECT_EQ(p - p, Rat(0));
    if (!q.is_zero()) {
      EXPECT_EQ((p / q) * q, p);
    }
  }
}

TEST(Rat, AlwaysCanonical) {
  RatGen gen(12);
  for (int i = 0; i < 500; ++i) {
    const Rat q = gen.rational(1000) * gen.rational(1000) - gen.rational(1000);
    EXPECT_GT(q.den(), 0);
    Int g;
    mpz_gcd(g.get_mpz_t(), q.num().get_mpz_t(), q.den().get_mpz_t());
    EXPECT_EQ(g, 1);
    EXPECT_EQ(Rat::parse(q.str()), q);
  }
}

TEST(Rat, PowMatchesRepeatedProduct) {
  RatGen gen(13);
  for (int i = 0; i < 100; ++i) {
    const Rat q = gen.rational(30);
    Rat acc(1);
    for (unsigned e = 0; e <= 7; ++e) {
      EXPECT_EQ(pow(q, e), acc);
      acc *= q;
    }
  }
}

TEST(Squares, Examples) {
  EXPECT_EQ(is_perfect_square(Rat(9, 4)), Rat(3, 2));
  EXPECT_EQ(is_perfect_square(Rat(0)), Rat(0));
  EXPECT_FALSE(is_perfect_square(Rat(-4)));
  EXPECT_FALSE(is_perfect_square(Rat(2)));
  EXPECT_FALSE(is_perfect_square(Rat(4, 3)));
  EXPECT_EQ(is_perfect_square(Int(144)), Int(12));
  EXPECT_EQ(exact_root(Rat(-8, 27), 3), Rat(-2, 3));
  EXPECT_FALSE(exact_root(Rat(-16), 4));
  EXPECT_EQ(exact_root(Rat(64), 6), Rat(2));
}

TEST(Squares, SquaresOfRandomRationalsAreRecognized) {
  RatGen gen(14);
  for (int i = 0; i < 300; ++i) {
    const Rat q = gen.rational(10000);
    EXPECT_EQ(is_perfect_square(q * q), abs(q));
  }
}

TEST(SquareClass, Examples) {
  EXPECT_TRUE(same_square_class(Rat(2), Rat(8)));
  EXPECT_TRUE(same_square_class(Rat(-3), Rat(-27, 4)));
  EXPECT_FALSE(same_square_class(Rat(2), Rat(3)));
  EXPECT_FALSE(same_square_class(Rat(-1), Rat(1)));
  EXPECT_THROW(same_square_class(Rat(0), Rat(1)), std::domain_error);
}

TEST(SquareClass, IsAnEquivalenceCompatibleWithSquares) {
  RatGen gen(15);
  for (int i = 0; i < 300; ++i) {
    const Rat p = gen.nonzero(40), q = gen.nonzero(40), s = gen.nonzero(40);
    EXPECT_TRUE(same_square_class(p, p));
    EXPECT_EQ(same_square_class(p, q), same_square_class(q, p));
    EXPECT_TRUE(same_square_class(p, p * s * s));
    if (same_square_class(p, q) && same_square_class(q, s)) {
      EXPECT_TRUE(same_square_class(p, s));
    }
    // the classes of p, q, pq can not all coincide unless p, q are squares
    EXPECT_EQ(same_square_class(p * q, Rat(1)), same_square_class(p, q));
  }
}
