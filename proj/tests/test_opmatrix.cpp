#include <gtest/gtest.h>

#include "piflat/reduction.hpp"
#include "support/generators.hpp"
#include "support/systems.hpp"

using namespace piflat;
using piflat::testing::Ops;
using piflat::testing::T;

namespace {

const Ops o;

FracMatrix frac_matrix(std::initializer_list<std::initializer_list<DeltaFraction>> rows) {
    FracMatrix m;
    for (const auto& r : rows) m.emplace_back(r);
    return m;
}

DeltaFraction fr(const DeltaPoly& p) { return DeltaFraction(p); }

}  // namespace

TEST(OpMatrixTest, Multiplication) {
    OpMatrix Mt({{o.zero(), o.inv(o.dp())}, {o.one(), o.zero()}}, o.tau);
    OpMatrix B({{o.zero()}, {o.del()}}, o.tau);
    EXPECT_EQ(mat_mul(Mt, B), OpMatrix({{o.one()}, {o.zero()}}, o.tau));

    OpMatrix A({{o.D(), o.k(T())}, {o.zero(), o.D(2)}}, o.tau);
    EXPECT_EQ(OpMatrix::identity(2, o.tau) * A, A);

    OpMatrix row({{o.one(), -o.D()}}, o.tau);
    OpMatrix T({{o.one(), o.D()}, {o.zero(), o.one()}}, o.tau);
    EXPECT_EQ(row * T, OpMatrix({{o.one(), o.zero()}}, o.tau));

    EXPECT_THROW(row * row, ShapeError);
}

TEST(SkewKernelTest, LeftKernel) {
    auto one = DeltaFraction::one(o.tau);
    auto k1 = skew_left_kernel(frac_matrix({{one}, {one}}), o.tau);
    ASSERT_TRUE(k1);
    EXPECT_EQ(k1->at(0), -k1->at(1));
    EXPECT_FALSE(k1->at(0).is_zero());

    auto zero = DeltaFraction(o.tau);
    EXPECT_FALSE(skew_left_kernel(frac_matrix({{one, zero}, {zero, one}}), o.tau));

    FracMatrix L = frac_matrix({{fr(o.dp())}, {fr(o.dp(2) - o.dp())}});
    auto k3 = skew_left_kernel(L, o.tau);
    ASSERT_TRUE(k3);
    EXPECT_TRUE((k3->at(0) * L[0][0] + k3->at(1) * L[1][0]).is_zero());
}

TEST(SkewKernelTest, RightKernelWithVaryingCoefficients) {
    // L = (1, t*delta): L * mu = 0 needs mu_1 = -t*delta*mu_2
    FracMatrix L = frac_matrix({{DeltaFraction::one(o.tau), fr(o.dc(T()) * o.dp())}});
    auto mu = skew_right_kernel(L, o.tau);
    ASSERT_TRUE(mu);
    EXPECT_TRUE((L[0][0] * mu->at(0) + L[0][1] * mu->at(1)).is_zero());
    EXPECT_EQ(skew_rank(L), 1u);
}

TEST(RowReduceTest, AlreadyReduced) {
    OpMatrix M({{o.one(), -o.D()}}, o.tau);
    auto red = row_reduce(M);
    EXPECT_TRUE(red.transform.forward.is_identity());
    EXPECT_EQ(red.reduced, M);
}

TEST(RowReduceTest, EliminatesDegreeOneRow) {
    OpMatrix M({{o.D()}, {o.one()}}, o.tau);
    auto red = row_reduce(M);
    EXPECT_EQ(red.transform.forward * M, red.reduced);
    EXPECT_TRUE(red.transform.is_consistent());
    EXPECT_EQ(red.rank, 1u);
    EXPECT_EQ(red.reduced.degree(), 0);
    EXPECT_TRUE(red.reduced.row_is_zero(1));
    EXPECT_TRUE(is_row_reduced(red.reduced));
}

TEST(RowReduceTest, InputMatrixOfDelayExample) {
    OpMatrix B({{o.zero()}, {o.del()}}, o.tau);
    auto red = row_reduce(B);
    EXPECT_EQ(red.reduced.degree(), 0);
    EXPECT_EQ(red.rank, 1u);
    EXPECT_EQ(red.transform.forward * B, red.reduced);
}

TEST(ColumnReduceTest, DerivativeInput) {
    OpMatrix F({{o.one(), -o.D()}}, o.tau);
    auto red = column_reduce(F);
    EXPECT_EQ(red.reduced, OpMatrix({{o.one(), o.zero()}}, o.tau));
    EXPECT_EQ(red.transform.forward, OpMatrix({{o.one(), o.D()}, {o.zero(), o.one()}}, o.tau));
    EXPECT_EQ(F * red.transform.forward, red.reduced);
}

TEST(ColumnReduceTest, DelayExampleReachesUnitRow) {
    RationalFunction a = piflat::testing::example_a();
    OpMatrix F({{o.D(), o.k(a) * (o.del(2) - o.del())}}, o.tau);
    auto T = right_inverse(F);
    ASSERT_TRUE(T);
    EXPECT_EQ(F * T->forward, OpMatrix({{o.one(), o.zero()}}, o.tau));
    EXPECT_TRUE(T->is_consistent());
    // the unimodular factor of the worked example
    OrePoly w21 = o.inv(o.dp(2) - o.dp()) * o.k(1 / a);
    OrePoly w22 = -(o.inv(o.dp(2) - o.dp()) * o.k(1 / a) * o.D());
    OpMatrix W({{o.zero(), o.one()}, {w21, w22}}, o.tau);
    EXPECT_EQ(F * W, OpMatrix({{o.one(), o.zero()}}, o.tau));
    EXPECT_EQ(T->forward(1, 1), w22);
}

TEST(ColumnReduceTest, IdentityIsFixed) {
    auto red = column_reduce(OpMatrix::identity(2, o.tau));
    EXPECT_TRUE(red.transform.forward.is_identity());
}

TEST(HyperRegularTest, Examples) {
    EXPECT_TRUE(is_hyper_regular(OpMatrix({{o.zero()}, {o.del()}}, o.tau)));
    EXPECT_FALSE(is_hyper_regular(OpMatrix({{o.D()}}, o.tau)));
    EXPECT_TRUE(is_hyper_regular(piflat::testing::example1_system().matrix()));
    EXPECT_FALSE(is_hyper_regular(OpMatrix({{o.D(), o.zero()}}, o.tau)));
    EXPECT_TRUE(is_hyper_regular(OpMatrix(0, 2, o.tau)));
}

TEST(OneSidedInverseTest, Examples) {
    OpMatrix B({{o.zero()}, {o.del()}}, o.tau);
    auto S = left_inverse(B);
    ASSERT_TRUE(S);
    EXPECT_EQ(S->forward * B, OpMatrix({{o.one()}, {o.zero()}}, o.tau));
    EXPECT_EQ(S->forward, OpMatrix({{o.zero(), o.inv(o.dp())}, {o.one(), o.zero()}}, o.tau));

    auto I = left_inverse(OpMatrix::identity(2, o.tau));
    ASSERT_TRUE(I);
    EXPECT_TRUE(I->forward.is_identity());

    EXPECT_FALSE(left_inverse(OpMatrix({{o.D()}}, o.tau)));
    EXPECT_FALSE(right_inverse(OpMatrix({{o.D()}}, o.tau)));
}

TEST(UnimodularPairTest, CheckedConstruction) {
    OpMatrix T({{o.one(), o.D()}, {o.zero(), o.one()}}, o.tau);
    OpMatrix Ti({{o.one(), -o.D()}, {o.zero(), o.one()}}, o.tau);
    EXPECT_NO_THROW(UnimodularPair::checked(T, Ti));
    EXPECT_THROW(UnimodularPair::checked(T, T), DomainError);
}
