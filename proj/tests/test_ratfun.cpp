#include <gtest/gtest.h>

#include "piflat/format.hpp"
#include "piflat/ratfun.hpp"
#include "support/generators.hpp"

using namespace piflat;
using piflat::testing::T;

TEST(RationalTest, ParsesLiterals) {
    EXPECT_EQ(parse_rational("-3/6"), Rational(-1, 2));
    EXPECT_EQ(parse_rational("+7"), Rational(7));
    EXPECT_THROW(parse_rational("1/0"), DomainError);
    EXPECT_THROW(parse_rational("x"), DomainError);
    EXPECT_EQ(piflat::ceil(Rational(7, 2)), 4);
    EXPECT_EQ(piflat::ceil(Rational(-7, 2)), -3);
    EXPECT_EQ(piflat::floor(Rational(-7, 2)), -4);
}

TEST(RationalFunctionTest, Arithmetic) {
    EXPECT_EQ((T() + 1) + (T() - 1), 2 * T());
    RationalFunction q((T() * T() - 1).numerator(), (T() - 1).numerator());
    EXPECT_EQ(q, T() + 1);
    EXPECT_EQ((RationalFunction(1) / (T() + 3)) * (T() + 3), RationalFunction(1));
    EXPECT_THROW(T() / RationalFunction(0), DomainError);
    EXPECT_EQ(RationalFunction(0).denominator(), QPoly(1));
}

TEST(RationalFunctionTest, CanonicalDenominatorIsMonic) {
    RationalFunction r(QPoly({Rational(2)}), QPoly({Rational(6), Rational(4)}));  // 2/(4t+6)
    EXPECT_EQ(r.denominator(), QPoly({Rational(3, 2), Rational(1)}));
    EXPECT_EQ(r.numerator(), QPoly({Rational(1, 2)}));
}

TEST(RationalFunctionTest, Derivative) {
    EXPECT_EQ((T() * T()).derivative(), 2 * T());
    EXPECT_EQ((1 / T()).derivative(), -1 / (T() * T()));
    EXPECT_EQ((T() + 3).derivative(), RationalFunction(1));
}

TEST(RationalFunctionTest, Shift) {
    EXPECT_EQ(rf_shift(T() + 3, 1, 1), T() + 2);
    EXPECT_EQ(rf_shift(T(), -2, 1), T() + 2);
    EXPECT_EQ(rf_shift(1 / (T() + 3), 1, 1), 1 / (T() + 2));
    EXPECT_EQ(rf_shift(T(), 3, Rational(1, 2)), T() - Rational(3, 2));
}

TEST(RationalFunctionTest, Evaluation) {
    EXPECT_EQ(rf_eval(T() + 3, 0), Rational(3));
    EXPECT_THROW(rf_eval(1 / T(), 0), PoleError);
    RationalFunction q((T() * T() - 1).numerator(), (T() - 1).numerator());
    EXPECT_EQ(rf_eval(q, 1), Rational(2));
}

TEST(RationalFunctionTest, Printing) {
    EXPECT_EQ(to_string(T() * T() - Rational(3, 4) * T() + 1), "t^2-3/4*t+1");
    EXPECT_EQ(to_string(-1 / (T() + 3)), "-1/(t+3)");
    EXPECT_EQ(to_string(RationalFunction(0)), "0");
}
