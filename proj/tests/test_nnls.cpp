#include <gtest/gtest.h>

#include <random>

#include "dmc/nnls.hpp"

using namespace dmc;

TEST(Nnls, UnconstrainedSolutionInterior)
{
    Eigen::MatrixXd a(3, 2);
    a << 1, 0, 0, 1, 1, 1;
    const Eigen::VectorXd x0 = (Eigen::VectorXd(2) << 2.0, 3.0).finished();
    const auto r = nnls(a, a * x0);
    EXPECT_TRUE(r.converged);
    EXPECT_NEAR((r.x - x0).norm(), 0.0, 1e-12);
    EXPECT_NEAR(r.residual_norm, 0.0, 1e-12);
}

TEST(Nnls, ActiveBound)
{
    // unconstrained least squares would make x_2 negative
    Eigen::MatrixXd a(2, 2);
    a << 1, 1, 0, 1;
    const Eigen::VectorXd b = (Eigen::VectorXd(2) << 1.0, -1.0).finished();
    const auto r = nnls(a, b);
    EXPECT_TRUE(r.converged);
    EXPECT_EQ(r.x(1), 0.0);
    EXPECT_NEAR(r.x(0), 1.0, 1e-12);
}

TEST(Nnls, KktConditionsOnRandomProblems)
{
    std::mt19937_64 rng(40);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int t = 0; t < 50; ++t) {
        const int m = 30, n = 12;
        Eigen::MatrixXd a(m, n);
        Eigen::VectorXd b(m);
        for (int i = 0; i < m; ++i) {
            b(i) = g(rng);
            for (int j = 0; j < n; ++j) a(i, j) = g(rng);
        }
        const auto r = nnls(a, b);
        ASSERT_TRUE(r.converged);
        EXPECT_GE(r.x.minCoeff(), 0.0);
        const Eigen::VectorXd grad = a.transpose() * (a * r.x - b);
        for (int j = 0; j < n; ++j) {
            if (r.x(j) > 0.0) {
                EXPECT_NEAR(grad(j), 0.0, 1e-10);
            } else {
                EXPECT_GE(grad(j), -1e-10);
            }
        }
        // no feasible perturbation along a coordinate improves the objective
        const double f0 = (a * r.x - b).squaredNorm();
        for (int j = 0; j < n; ++j) {
            Eigen::VectorXd y = r.x;
            y(j) += 1e-3;
            EXPECT_GE((a * y - b).squaredNorm(), f0 - 1e-12);
        }
    }
}

TEST(Nnls, DimensionMismatch)
{
    EXPECT_THROW(nnls(Eigen::MatrixXd::Ones(3, 2), Eigen::VectorXd::Ones(2)), DimensionError);
}
