#include "kolmo/errors.hpp"
#include "kolmo/group.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace kolmo {
namespace {

using test::Gen;

GroupPoint pt(double t, std::initializer_list<double> x)
{
    Eigen::VectorXd v(static_cast<Eigen::Index>(x.size()));
    Eigen::Index i = 0;
    for (double c : x) {
        v(i++) = c;
    }
    return {t, v};
}

double max_norm(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }

TEST(ExpB, ZeroIsIdentity)
{
    EXPECT_EQ(max_norm(exp_B(0.0, test::k2()) - Eigen::MatrixXd::Identity(2, 2)), 0.0);
}

TEST(ExpB, Nilpotent)
{
    Eigen::Matrix2d expected;
    expected << 1, 0, 2, 1;
    EXPECT_LE(max_norm(exp_B(2.0, test::k1()) - expected), 1e-15);
}

TEST(ExpB, Idempotent)
{
    const double e = std::exp(1.0);
    Eigen::Matrix2d expected;
    expected << e, 0, e - 1, 1;
    EXPECT_LE(relative_error(exp_B(1.0, test::k2()), expected), 1e-14);
    Eigen::MatrixXd b(2, 2);
    b << 1, 0, 1, 0;
    EXPECT_LE(relative_error(exp_B(1.0, test::k2()), test::series_oracle(b, 0)), 1e-14);
}

TEST(Expm, MatchesSeriesOnRandomMatrices)
{
    Gen g(21);
    for (int i = 0; i < 100; ++i) {
        const Eigen::MatrixXd a = g.matrix(4, 4, -2.0, 2.0);
        ASSERT_LE(relative_error(expm(a), test::series_oracle(a, 0, 60)), 1e-12);
    }
}

TEST(Phi, AtZero)
{
    const Eigen::MatrixXd z = Eigen::MatrixXd::Zero(3, 3);
    EXPECT_EQ(max_norm(phi(z, 1) - Eigen::MatrixXd::Identity(3, 3)), 0.0);
    EXPECT_EQ(max_norm(phi(z, 2) - 0.5 * Eigen::MatrixXd::Identity(3, 3)), 0.0);
}

TEST(Phi, IdempotentPattern)
{
    const double d2 = 0.25;
    Eigen::MatrixXd a(2, 2);
    a << -d2, 0, -d2, 0;
    const double expected = (1.0 - std::exp(-d2)) / d2;
    EXPECT_NEAR(phi(a, 1)(0, 0), expected, 1e-15);
    EXPECT_LE(relative_error(phi(a, 1), test::series_oracle(a, 1)), 1e-15);
    EXPECT_LE(relative_error(phi(a, 2), test::series_oracle(a, 2)), 1e-15);
}

TEST(Phi, OnlyFirstAndSecond)
{
    EXPECT_THROW(phi(Eigen::MatrixXd::Zero(2, 2), 0), ValidationError);
    EXPECT_THROW(phi(Eigen::MatrixXd::Zero(2, 2), 3), ValidationError);
}

TEST(PhiProperty, Recurrences)
{
    Gen g(22);
    for (int i = 0; i < 1000; ++i) {
        const Eigen::MatrixXd a = g.matrix(4, 4, -2.0, 2.0);
        const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(4, 4);
        const Eigen::MatrixXd p1 = phi(a, 1);
        ASSERT_LE(relative_error(a * p1, expm(a) - id), 1e-12);
        ASSERT_LE(relative_error(a * phi(a, 2), p1 - id), 1e-12);
    }
}

TEST(Compose, Examples)
{
    const auto s = test::k1();
    const GroupPoint z = pt(1, {2, 3});
    EXPECT_EQ(max_abs_difference(compose(z, GroupPoint::identity(2), s), z), 0.0);
    EXPECT_LE(max_abs_difference(compose(z, pt(2, {4, 5}), s), pt(3, {6, 12})), 1e-15);
    EXPECT_LE(max_abs_difference(compose(z, inverse(z, s), s), GroupPoint::identity(2)), 1e-12);
    EXPECT_THROW(compose(z, pt(0, {1, 2, 3}), s), DimensionError);
}

TEST(Inverse, Examples)
{
    const auto s = test::k1();
    EXPECT_EQ(max_abs_difference(inverse(GroupPoint::identity(2), s), GroupPoint::identity(2)), 0.0);
    EXPECT_LE(max_abs_difference(inverse(pt(1, {1, 0}), s), pt(-1, {-1, 1})), 1e-15);
}

TEST(Norm, Examples)
{
    const auto s = test::k1();
    EXPECT_EQ(b_norm(GroupPoint::identity(2), s), 0.0);
    EXPECT_NEAR(b_norm(pt(0.25, {0, 0.008}), s), 0.7, 1e-15);
    // printed exponent |x_i|^{2j+1}
    EXPECT_NEAR(b_norm(pt(0.25, {0.5, 0.5}), s, NormExponent::Printed), 0.5 + 0.5 + 0.125, 1e-15);
}

TEST(Distance, Examples)
{
    const auto s = test::k1();
    EXPECT_EQ(semi_distance(pt(0, {0, 0}), pt(0, {0, 1}), s), 1.0);
    Gen g(3);
    for (int i = 0; i < 50; ++i) {
        const GroupPoint z = g.point(2);
        EXPECT_LE(semi_distance(z, z, test::k2()), 1e-5); // |rounding|^{1/3}
    }
    // asymmetric in general: both directions are defined, equality is not required
    const GroupPoint a = pt(0.3, {0.1, -0.2});
    const GroupPoint b = pt(-0.4, {0.5, 0.7});
    EXPECT_GE(semi_distance(a, b, test::k2()), 0.0);
    EXPECT_GE(semi_distance(b, a, test::k2()), 0.0);
    EXPECT_THROW(semi_distance(a, pt(0, {1}), s), DimensionError);
}

class GroupAxioms : public ::testing::TestWithParam<int> {
protected:
    KolmogorovStructure structure() const
    {
        switch (GetParam()) {
        case 0: return test::k1();
        case 1: return test::k2();
        default: return test::k4();
        }
    }
};

TEST_P(GroupAxioms, AssociativityIdentityInverse)
{
    const auto s = structure();
    Gen g(100 + GetParam());
    const int d = s.dimension();
    for (int i = 0; i < 1000; ++i) {
        const GroupPoint a = g.point(d);
        const GroupPoint b = g.point(d);
        const GroupPoint c = g.point(d);
        ASSERT_LE(relative_error(compose(compose(a, b, s), c, s), compose(a, compose(b, c, s), s)), 1e-12);
        ASSERT_LE(relative_error(compose(GroupPoint::identity(d), a, s), a), 1e-12);
        ASSERT_LE(relative_error(compose(a, inverse(a, s), s), GroupPoint::identity(d)), 1e-12);
        ASSERT_LE(relative_error(compose(inverse(a, s), a, s), GroupPoint::identity(d)), 1e-12);
        ASSERT_LE(relative_error(inverse(inverse(a, s), s), a), 1e-12);
    }
}

TEST_P(GroupAxioms, ExpSemigroup)
{
    const auto s = structure();
    Gen g(200 + GetParam());
    for (int i = 0; i < 1000; ++i) {
        const double a = g.uniform(-2, 2);
        const double b = g.uniform(-2, 2);
        ASSERT_LE(relative_error(exp_B(a + b, s), exp_B(a, s) * exp_B(b, s)), 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Structures, GroupAxioms, ::testing::Values(0, 1, 2));

TEST(NormProperty, DegreeOneHomogeneity)
{
    const auto s = test::k1();
    Gen g(9);
    for (double lambda : {0.5, 2.0, 10.0}) {
        for (int i = 0; i < 1000; ++i) {
            const GroupPoint z = g.point(2);
            const double ref = lambda * b_norm(z, s);
            ASSERT_LE(std::abs(b_norm(dilation(lambda, z, s), s) - ref) / ref, 1e-12);
        }
    }
}

TEST(NormProperty, PrintedExponentIsNotHomogeneous)
{
    const auto s = test::k1();
    const GroupPoint z = pt(0.3, {0.4, 0.5});
    const double ratio = b_norm(dilation(2.0, z, s), s, NormExponent::Printed) / b_norm(z, s, NormExponent::Printed);
    EXPECT_GT(std::abs(ratio - 2.0), 0.1);
}

} // namespace
} // namespace kolmo
