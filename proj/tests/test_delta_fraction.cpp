#include <gtest/gtest.h>

#include "piflat/delta_fraction.hpp"
#include "piflat/format.hpp"
#include "support/generators.hpp"

using namespace piflat;
using piflat::testing::T;

namespace {

const Rational kTau = 1;

DeltaPoly d(long k = 1) { return DeltaPoly::delta(kTau, k); }
DeltaPoly c(const RationalFunction& f) { return DeltaPoly(f, kTau); }
DeltaFraction frac(const DeltaPoly& den, const DeltaPoly& num) { return DeltaFraction(den, num); }
DeltaFraction inv(const DeltaPoly& den) { return DeltaFraction(den, c(1)); }

}  // namespace

TEST(DeltaFractionTest, Addition) {
    EXPECT_EQ(inv(d()) + DeltaFraction(kTau), inv(d()));
    EXPECT_TRUE((inv(d()) + (-inv(d()))).is_zero());
    DeltaFraction s = inv(d()) + inv(d() - c(1));
    EXPECT_EQ(s, frac(d(2) - d(), d() * c(2) - c(1)));
    // clearing denominators: (delta^2 - delta) * s = 2 delta - 1
    EXPECT_EQ(DeltaFraction(d(2) - d()) * s, DeltaFraction(c(2) * d() - c(1)));
}

TEST(DeltaFractionTest, Multiplication) {
    EXPECT_TRUE((inv(d()) * DeltaFraction(d())).is_one());
    DeltaFraction r = inv(d(2) - d()) * DeltaFraction(d());
    EXPECT_EQ(DeltaFraction(d(2) - d()) * r, DeltaFraction(d()));
    EXPECT_EQ(r.denominator(), d() - c(1));

    // delta^-1 t = (t+1) delta^-1
    DeltaFraction lhs = inv(d()) * DeltaFraction(c(T()));
    DeltaFraction rhs = DeltaFraction(c(T() + 1)) * inv(d());
    EXPECT_TRUE(df_eq(lhs, rhs));
    EXPECT_EQ(DeltaFraction(d()) * lhs, DeltaFraction(c(T())));
}

TEST(DeltaFractionTest, Inverse) {
    EXPECT_EQ(df_inv(DeltaFraction(d())), inv(d()));
    EXPECT_EQ(df_inv(inv(d(2) - d())), DeltaFraction(d(2) - d()));
    DeltaFraction x = frac(d(), d() - c(1));
    EXPECT_EQ(df_inv(x), frac(d() - c(1), d()));
    EXPECT_TRUE((x * df_inv(x)).is_one());
    EXPECT_THROW(df_inv(DeltaFraction(kTau)), DomainError);
}

TEST(DeltaFractionTest, Equality) {
    EXPECT_TRUE(df_eq(inv(d()) * DeltaFraction(d()), DeltaFraction::one(kTau)));
    DeltaFraction a = inv(d()) * DeltaFraction(c(T()));
    DeltaFraction b = DeltaFraction(c(T())) * inv(d());
    EXPECT_FALSE(df_eq(a, b));
    EXPECT_TRUE(df_eq(DeltaFraction(kTau), frac(d(), DeltaPoly(kTau))));
}

TEST(DeltaFractionTest, CanonicalFormCancelsLeftFactor) {
    // (delta*(delta-1))^-1 * (delta*t) = (delta-1)^-1 t
    DeltaFraction f = frac(d() * (d() - c(1)), d() * c(T()));
    EXPECT_EQ(f.denominator(), d() - c(1));
    EXPECT_EQ(f.numerator(), c(T()));
    // monic denominator after a left scalar
    DeltaFraction g = frac(c(T()) * d(), c(1));
    EXPECT_TRUE(g.denominator().leading().is_one());
}

TEST(DeltaFractionTest, Theta) {
    EXPECT_TRUE(df_theta(inv(d())).is_zero());
    EXPECT_EQ(df_theta(inv(d()) * DeltaFraction(c(T()))), inv(d()));
    // theta((delta^2-delta)^-1 (1/a)) = (delta^2-delta)^-1 (-a'/a^2), a = t+3
    RationalFunction a = T() + 3;
    DeltaFraction x = inv(d(2) - d()) * DeltaFraction(c(1 / a));
    EXPECT_EQ(df_theta(x), inv(d(2) - d()) * DeltaFraction(c(-1 / (a * a))));
}

TEST(DeltaFractionTest, CommonDenominator) {
    std::vector<DeltaFraction> e1{inv(d()), inv(d(2) - d())};
    auto r1 = df_common_denominator(e1);
    EXPECT_EQ(r1.pi, d(2) - d());
    for (std::size_t i = 0; i < e1.size(); ++i) EXPECT_EQ(DeltaFraction(r1.pi) * e1[i], DeltaFraction(r1.numerators[i]));

    std::vector<DeltaFraction> e2{DeltaFraction(c(1)), DeltaFraction(c(T()))};
    auto r2 = df_common_denominator(e2);
    EXPECT_TRUE(r2.pi.is_one());
    EXPECT_EQ(r2.numerators[1], c(T()));

    // order independence
    std::vector<DeltaFraction> e3{inv(d(2) - d()), inv(d())};
    EXPECT_EQ(df_common_denominator(e3).pi, r1.pi);
    EXPECT_THROW(df_common_denominator(std::vector<DeltaFraction>{}), PreconditionError);
}
