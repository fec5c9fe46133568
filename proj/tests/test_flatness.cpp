#include <gtest/gtest.h>

#include "piflat/flatness.hpp"
#include "support/generators.hpp"
#include "support/systems.hpp"

using namespace piflat;
using piflat::testing::Ops;
using piflat::testing::T;

namespace {

const Ops o;

}  // namespace

TEST(SystemTest, Validation) {
    auto sys = piflat::testing::example1_system();
    EXPECT_EQ(sys.states(), 2u);
    EXPECT_EQ(sys.inputs(), 1u);
    EXPECT_EQ(sys.matrix().cols(), 3u);

    EXPECT_THROW(SystemLTV(OpMatrix({{o.one(), o.one()}}, o.tau), OpMatrix({{o.one()}}, o.tau)), ShapeError);
    EXPECT_THROW(SystemLTV(OpMatrix({{o.one()}}, o.tau), OpMatrix({{o.one(), o.one()}}, o.tau)), ShapeError);
    // rank-deficient (A, -B)
    OpMatrix A({{o.D(), o.zero()}, {o.D(), o.zero()}}, o.tau);
    OpMatrix B({{o.one()}, {o.one()}}, o.tau);
    EXPECT_THROW(SystemLTV(A, B), PreconditionError);
    // delta denominators are not allowed in system matrices
    EXPECT_THROW(SystemLTV(OpMatrix({{o.inv(o.dp())}}, o.tau), OpMatrix({{o.one()}}, o.tau)), PreconditionError);
}

TEST(CertificateTest, ReferenceCertificateVerifies) {
    auto sys = piflat::testing::example1_system();
    auto cert = piflat::testing::example1_reference_certificate();
    EXPECT_EQ(cert.pi, o.dp(3) - o.dp(2));
    EXPECT_TRUE(verify_certificate(sys.matrix(), cert));
    EXPECT_EQ(cert.k_index, 0u);
}

TEST(CertificateTest, TamperedCertificateFails) {
    auto sys = piflat::testing::example1_system();
    auto cert = piflat::testing::example1_reference_certificate();
    cert.Q = cert.Q.left_scaled(DeltaFraction(o.dp()));
    auto report = verify_certificate_report(sys.matrix(), cert);
    EXPECT_FALSE(report.ok);
    EXPECT_FALSE(report.reason.empty());

    auto cert2 = piflat::testing::example1_reference_certificate();
    cert2.kind = FlatnessKind::pi_flat;
    cert2.P = OpMatrix({{o.dp(3) - o.dp(2), o.zero(), o.one()}}, o.tau);
    EXPECT_FALSE(verify_certificate(sys.matrix(), cert2));
}

TEST(FlatnessTest, DelayExampleIsPiZeroFlat) {
    auto sys = piflat::testing::example1_system();
    auto out = pi_zero_flat_output(sys);
    ASSERT_TRUE(out.ok()) << out.failure;
    const auto& cert = *out.certificate;
    EXPECT_EQ(cert.kind, FlatnessKind::pi_zero_flat);
    EXPECT_EQ(cert.pi, o.dp(3) - o.dp(2));
    EXPECT_EQ(cert.P_bar(), OpMatrix({{o.one(), o.zero(), o.zero()}}, o.tau));
    auto ref = piflat::testing::example1_reference_certificate();
    EXPECT_EQ(cert.Q_bar(), ref.Q_bar());
    EXPECT_EQ(cert.k_index, 0u);
    ASSERT_TRUE(cert.input_map.has_value());
    EXPECT_EQ(*cert.input_map, OpMatrix({{o.zero(), o.inv(o.dp()) * o.D()}}, o.tau));
}

TEST(FlatnessTest, DelayExampleIsPiFlat) {
    auto sys = piflat::testing::example1_system();
    auto out = pi_flat_output(sys.matrix());
    ASSERT_TRUE(out.ok()) << out.failure;
    EXPECT_TRUE(verify_certificate(sys.matrix(), *out.certificate));
    EXPECT_EQ(out.certificate->kind, FlatnessKind::pi_flat);
    EXPECT_EQ(out.certificate->outputs(), 1u);
}

TEST(FlatnessTest, DerivativeInputHasIndexOne) {
    auto sys = piflat::testing::derivative_input_system();
    auto out = pi_flat_output(sys.matrix());
    ASSERT_TRUE(out.ok()) << out.failure;
    const auto& cert = *out.certificate;
    EXPECT_TRUE(cert.pi.is_one());
    EXPECT_EQ(cert.Q, OpMatrix({{o.D()}, {o.one()}}, o.tau));
    EXPECT_EQ(cert.P, OpMatrix({{o.zero(), o.one()}}, o.tau));
    EXPECT_EQ(cert.k_index, 1u);
    // B = (D) is not hyper-regular
    EXPECT_THROW(pi_zero_flat_output(sys), PreconditionError);
}

TEST(FlatnessTest, IntegratorHasOutputX) {
    SystemLTV sys(OpMatrix({{o.D()}}, o.tau), OpMatrix({{o.one()}}, o.tau));
    auto out = pi_zero_flat_output(sys);
    ASSERT_TRUE(out.ok()) << out.failure;
    EXPECT_EQ(out.certificate->Q, OpMatrix({{o.one()}, {o.D()}}, o.tau));
    EXPECT_EQ(out.certificate->P, OpMatrix({{o.one(), o.zero()}}, o.tau));
    EXPECT_TRUE(out.certificate->pi.is_one());
    EXPECT_EQ(out.certificate->k_index, 0u);
}

TEST(FlatnessTest, UncontrollableIsNotFlat) {
    // F = (D, 0): x' = 0 with a disconnected input
    OpMatrix F({{o.D(), o.zero()}}, o.tau);
    auto out = pi_flat_output(F);
    EXPECT_FALSE(out.ok());
    EXPECT_FALSE(out.failure.empty());

    SystemLTV sys(OpMatrix({{o.D(), o.zero()}, {o.zero(), o.D()}}, o.tau),
                  OpMatrix({{o.one()}, {o.zero()}}, o.tau));
    EXPECT_FALSE(pi_zero_flat_output(sys).ok());
    EXPECT_FALSE(pi_flat_output(sys.matrix()).ok());
}

TEST(FlatnessTest, ZeroInputMatrixIsRejected) {
    // (A, -B) still has full row rank when A is invertible, but B = 0 is not hyper-regular
    SystemLTV sys(OpMatrix({{o.D(), o.zero()}, {o.zero(), o.D()}}, o.tau),
                  OpMatrix({{o.zero()}, {o.zero()}}, o.tau));
    EXPECT_THROW(pi_zero_flat_output(sys), PreconditionError);
}

TEST(FlatnessTest, TimeVaryingChain) {
    // x1' = t x2, x2' = u
    SystemLTV sys(OpMatrix({{o.D(), -o.k(T())}, {o.zero(), o.D()}}, o.tau),
                  OpMatrix({{o.zero()}, {o.one()}}, o.tau));
    auto out = pi_zero_flat_output(sys);
    ASSERT_TRUE(out.ok()) << out.failure;
    EXPECT_TRUE(verify_certificate(sys.matrix(), *out.certificate));
    EXPECT_TRUE(out.certificate->pi.is_one());
}

TEST(KIndexTest, Examples) {
    FlatnessCertificate c;
    c.pi = o.dp(0);
    c.P = OpMatrix({{o.one(), o.zero(), o.zero()}}, o.tau);
    EXPECT_EQ(flatness_index_k(c, 2, 1), 0u);
    c.P = OpMatrix({{o.one(), o.zero(), o.del()}}, o.tau);
    EXPECT_EQ(flatness_index_k(c, 2, 1), 1u);
    c.P = OpMatrix({{o.one(), o.zero(), o.D(2)}}, o.tau);
    EXPECT_EQ(flatness_index_k(c, 2, 1), 3u);
    EXPECT_THROW(flatness_index_k(c, 1, 1), ShapeError);
}

TEST(TransformTest, IdentityAndUnits) {
    auto sys = piflat::testing::example1_system();
    auto cert = piflat::testing::example1_reference_certificate();
    auto same = transform_flat_output(cert, UnimodularPair::identity(1, o.tau));
    EXPECT_EQ(same.P_bar(), cert.P_bar());
    EXPECT_EQ(same.Q_bar(), cert.Q_bar());

    OpMatrix s({{o.k(T() + 1)}}, o.tau), si({{o.k(1 / (T() + 1))}}, o.tau);
    auto scaled = transform_flat_output(cert, UnimodularPair::checked(s, si));
    EXPECT_TRUE(verify_certificate(sys.matrix(), scaled));
    EXPECT_EQ(scaled.kind, FlatnessKind::pi_zero_flat);

    OpMatrix d({{o.del()}}, o.tau), di({{o.inv(o.dp())}}, o.tau);
    EXPECT_TRUE(verify_certificate(sys.matrix(), transform_flat_output(cert, UnimodularPair::checked(d, di))));
}

TEST(TransformTest, SwapOfTwoOutputs) {
    // two decoupled integrators
    SystemLTV sys(OpMatrix({{o.D(), o.zero()}, {o.zero(), o.D()}}, o.tau), OpMatrix::identity(2, o.tau));
    auto out = pi_zero_flat_output(sys);
    ASSERT_TRUE(out.ok()) << out.failure;
    OpMatrix sw({{o.zero(), o.one()}, {o.one(), o.zero()}}, o.tau);
    auto swapped = transform_flat_output(*out.certificate, UnimodularPair::checked(sw, sw));
    EXPECT_TRUE(verify_certificate(sys.matrix(), swapped));
    EXPECT_EQ(swapped.P_bar().block(0, 0, 2, 2), sw * out.certificate->P_bar().block(0, 0, 2, 2));
    EXPECT_THROW(transform_flat_output(*out.certificate, UnimodularPair::identity(1, o.tau)), ShapeError);
}
