#include "cospa/core.hpp"
#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

namespace cospa {
namespace {

TEST(CutoffDistance, EuclideanBelowCutoff) {
    EXPECT_DOUBLE_EQ(cutoff_distance(Vector{{0.0, 0.0}}, Vector{{3.0, 4.0}}, 10.0, 2.0), 5.0);
}

TEST(CutoffDistance, CutoffSaturates) {
    EXPECT_DOUBLE_EQ(cutoff_distance(Vector{{0.0, 0.0}}, Vector{{3.0, 4.0}}, 2.0, 2.0), 2.0);
}

TEST(CutoffDistance, IdenticalPointsAreZero) {
    const Vector x{{1.5, -2.0}};
    EXPECT_EQ(cutoff_distance(x, x, 0.1), 0.0);
}

TEST(CutoffDistance, OtherBaseNorms) {
    const Vector x{{0.0, 0.0}};
    const Vector y{{3.0, 4.0}};
    EXPECT_DOUBLE_EQ(cutoff_distance(x, y, 100.0, 1.0), 7.0);
    EXPECT_DOUBLE_EQ(cutoff_distance(x, y, 100.0, kInfinity), 4.0);
    EXPECT_NEAR(cutoff_distance(x, y, 100.0, 3.0), std::cbrt(27.0 + 64.0), 1e-12);
}

TEST(CutoffDistance, RejectsBadInput) {
    EXPECT_THROW(cutoff_distance(Vector{{0.0}}, Vector{{0.0, 1.0}}, 1.0), DimensionError);
    EXPECT_THROW(cutoff_distance(Vector{{std::nan("")}}, Vector{{0.0}}, 1.0), std::invalid_argument);
    EXPECT_THROW(cutoff_distance(Vector{{kInfinity}}, Vector{{0.0}}, 1.0), std::invalid_argument);
    EXPECT_THROW(cutoff_distance(Vector{{0.0}}, Vector{{1.0}}, 0.0), std::invalid_argument);
}

TEST(CutoffDistance, Properties) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    std::uniform_real_distribution<double> ua(0.01, 10.0);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto dim = static_cast<Eigen::Index>(1 + trial % 4);
        Vector x(dim), y(dim);
        for (Eigen::Index k = 0; k < dim; ++k) {
            x[k] = u(rng);
            y[k] = u(rng);
        }
        const double a1 = ua(rng);
        const double a2 = a1 + ua(rng);
        for (double norm : {1.0, 2.0, 2.5, kInfinity}) {
            const double d1 = cutoff_distance(x, y, a1, norm);
            EXPECT_EQ(d1, cutoff_distance(y, x, a1, norm));
            EXPECT_LE(d1, a1);
            EXPECT_GT(d1, 0.0);  // x != y almost surely
            EXPECT_LE(d1, cutoff_distance(x, y, a2, norm));
            EXPECT_EQ(cutoff_distance(x, x, a1, norm), 0.0);
        }
    }
}

TEST(ValidateParams, SurveillanceOperatingPointIsValid) {
    const auto prm = validate_params({.p = 1, .base_norm = 2, .c = 80, .c_dot = 81, .xi = 1, .alpha = 2});
    EXPECT_EQ(prm.c(), 80.0);
    EXPECT_EQ(prm.c_dot(), 81.0);
    EXPECT_FALSE(prm.infinite_order());
    EXPECT_EQ(MetricParams::defaults().raw().c_dot, 81.0);
}

TEST(ValidateParams, CardinalityPenaltyBelowCutoff) {
    try {
        validate_params({.c = 1.0, .c_dot = 0.5});
        FAIL() << "expected ParamError";
    } catch (const ParamError& e) {
        ASSERT_EQ(e.violations().size(), 1u);
        EXPECT_EQ(e.violations()[0].field, "c_dot");
    }
}

TEST(ValidateParams, AlphaOutOfRange) {
    try {
        validate_params({.alpha = 3.0});
        FAIL() << "expected ParamError";
    } catch (const ParamError& e) {
        ASSERT_EQ(e.violations().size(), 1u);
        EXPECT_EQ(e.violations()[0].field, "alpha");
    }
}

TEST(ValidateParams, ReportsEveryViolation) {
    try {
        validate_params({.p = 0.5, .base_norm = std::nan(""), .c = -1.0, .c_dot = -2.0, .xi = 1.5, .alpha = 0.0});
        FAIL() << "expected ParamError";
    } catch (const ParamError& e) {
        std::vector<std::string> fields;
        for (const auto& v : e.violations()) fields.push_back(v.field);
        EXPECT_EQ(fields, (std::vector<std::string>{"p", "base_norm", "c", "c_dot", "xi", "alpha"}));
    }
}

TEST(ValidateParams, InfiniteOrderAccepted) {
    const auto prm = validate_params({.p = kInfinity, .base_norm = kInfinity, .c = 1, .c_dot = 1});
    EXPECT_TRUE(prm.infinite_order());
}

TEST(PointSet, EnforcesDimensionAndFiniteness) {
    PointSet s(2);
    EXPECT_TRUE(s.empty());
    s.push_back(Vector{{1.0, 2.0}});
    s.push_back(Vector{{1.0, 2.0}});  // duplicates are legal
    EXPECT_EQ(s.size(), 2u);
    EXPECT_THROW(s.push_back(Vector{{1.0}}), DimensionError);
    EXPECT_THROW(s.push_back(Vector{{1.0, std::nan("")}}), std::invalid_argument);
    EXPECT_THROW(PointSet(0), DimensionError);
    const PointSet lit{{0.0, 0.0}, {3.0, 4.0}};
    EXPECT_EQ(lit.dim(), 2u);
    EXPECT_EQ(lit.size(), 2u);
}

}  // namespace
}  // namespace cospa
