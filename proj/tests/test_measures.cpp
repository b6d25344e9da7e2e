#include <gtest/gtest.h>

#include "oracles.hpp"
#include "test_support.hpp"

using namespace dmc;
using dmc::testing::gauss_vec;

TEST(Predicates, S0AndSplus)
{
    EXPECT_TRUE(on_S0(Vec{1.0, 0.0}));
    EXPECT_FALSE(on_S0(Vec{0.6, -0.8}));
    EXPECT_TRUE(in_Splus(Vec{0.6, 0.8}));
    EXPECT_TRUE(in_Splus(Vec{1.0, 0.0}));
    EXPECT_FALSE(in_Splus(Vec{0.6, -0.8}));
}

TEST(SphereMeasureType, Validation)
{
    EXPECT_THROW(SphereMeasure(2, {{{1.0, 1.0}, 1.0}}), DomainError);
    EXPECT_THROW(SphereMeasure(2, {{{1.0, 0.0}, 1.0}}, true), DomainError);
    const SphereMeasure m(2, {{{1.0, 0.0}, 1e-16}, {{0.0, 1.0}, 2.0}});
    EXPECT_EQ(m.atoms().size(), 1u);
}

TEST(Evenize, Examples)
{
    const SphereMeasure d(2, {{{1.0, 0.0}, 1.0}});
    const SphereMeasure e = evenize(d);
    EXPECT_TRUE(e.is_even());
    ASSERT_EQ(e.atoms().size(), 2u);
    for (const auto& a : e.atoms()) EXPECT_DOUBLE_EQ(a.w, 0.5);
    const SphereMeasure ee = evenize(e);
    ASSERT_EQ(ee.atoms().size(), 2u);
    EXPECT_NEAR(ee.total_mass(), 1.0, 1e-15);
}

TEST(Evenize, CosineTransformUnchanged)
{
    std::mt19937_64 rng(10);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = dmc::testing::uniform_count(rng, 2, 5);
        const auto mu = dmc::testing::random_measure(rng, n, 4, true);
        const Vec u = gauss_vec(rng, n);
        EXPECT_NEAR(cosine_transform(evenize(mu), u), cosine_transform(mu, u), 1e-12);
    }
}

TEST(MeasureOfVector, Examples)
{
    const auto m = measure_of_vector(DiscreteRandomVector(2, {{{3.0, 4.0}, 1.0}}));
    ASSERT_EQ(m.atoms().size(), 1u);
    EXPECT_NEAR(m.atoms()[0].v[0], 0.6, 1e-15);
    EXPECT_NEAR(m.atoms()[0].v[1], 0.8, 1e-15);
    EXPECT_NEAR(m.atoms()[0].w, 5.0, 1e-15);
    const auto s = measure_of_vector(DiscreteRandomVector(2, {{{1.0, 0.0}, 0.5}, {{-1.0, 0.0}, 0.5}}, true));
    EXPECT_TRUE(s.is_even());
    EXPECT_NEAR(s.total_mass(), 1.0, 1e-15);
}

TEST(MeasureOfVector, KTransformContract)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = dmc::testing::uniform_count(rng, 2, 4);
        const auto xi = dmc::testing::random_law(rng, n, 5);
        const ConvexBody k = t % 2 ? dmc::testing::random_zonotope(rng, n, 3) : lp_ball(3.0, n);
        const Vec u = gauss_vec(rng, n);
        const double lhs = expected_support(xi, k, u);
        EXPECT_NEAR(lhs, k_transform(k, measure_of_vector(xi), u), 1e-12 * std::max(1.0, lhs));
    }
}

TEST(MeasureOfVector, ScalingScalesMass)
{
    std::mt19937_64 rng(12);
    const auto xi = dmc::testing::random_law(rng, 3, 4);
    const double c = 2.75;
    const auto scaled_xi = map_law(xi, [&](const Vec& x) { return scaled(x, c); }, false);
    const auto a = measure_of_vector(xi), b = measure_of_vector(scaled_xi);
    EXPECT_NEAR(b.total_mass(), c * a.total_mass(), 1e-12);
    ASSERT_EQ(a.atoms().size(), b.atoms().size());
    for (std::size_t k = 0; k < a.atoms().size(); ++k) EXPECT_LE(max_abs_diff(a.atoms()[k].v, b.atoms()[k].v), 1e-15);
}

TEST(RandomVector, Validation)
{
    EXPECT_THROW(DiscreteRandomVector(2, {{{1.0, 0.0}, 0.5}}), DomainError);
    EXPECT_THROW(DiscreteRandomVector(2, {{{1.0, 0.0}, -1.0}, {{1.0, 0.0}, 2.0}}), DomainError);
    EXPECT_THROW(DiscreteRandomVector(2, {{{1.0, 0.0}, 1.0}}, true), DomainError);
    const DiscreteRandomVector r(2, {{{1.0, 0.0}, 0.5 + 4e-10}, {{0.0, 1.0}, 0.5}});
    EXPECT_NEAR(r.atoms()[0].p + r.atoms()[1].p, 1.0, 1e-15);
}

TEST(ExpectedSupport, Examples)
{
    const DiscreteRandomVector d(2, {{{1.0, 1.0}, 1.0}});
    EXPECT_EQ(expected_support(d, unit_segment(2), Vec{1.0, -1.0}), 0.0);
    std::mt19937_64 rng(13);
    for (int t = 0; t < 50; ++t) {
        const auto xi = dmc::testing::random_law(rng, 2, 4);
        const Vec u = gauss_vec(rng, 2);
        double e1 = 0.0, e2 = 0.0, eb = 0.0;
        for (const auto& a : xi.atoms()) {
            e1 += a.p * std::abs(a.x[0]);
            e2 += a.p * std::abs(a.x[1]);
            eb += a.p * oracle::lp({u[0] * a.x[0], u[1] * a.x[1]}, 2.0);
        }
        EXPECT_NEAR(expected_support(xi, lp_ball(kInf, 2), u), std::abs(u[0]) * e1 + std::abs(u[1]) * e2, 1e-12);
        EXPECT_NEAR(expected_support(xi, lp_ball(2.0, 2), u), eb, 1e-12);
    }
}

TEST(ZonoidOf, Examples)
{
    const Zonotope z = zonoid_of(DiscreteRandomVector(2, {{{2.0, 1.0}, 1.0}}));
    EXPECT_TRUE(zonotopes_equal(z, Zonotope{2, {{2.0, 1.0}}}));
    const Zonotope s = canonical_zonotope(zonoid_of(DiscreteRandomVector(2, {{{1.0, 0.0}, 0.5}, {{-1.0, 0.0}, 0.5}}, true)));
    ASSERT_EQ(s.generators.size(), 1u);
    EXPECT_NEAR(s.generators[0][0], 1.0, 1e-15);
    std::mt19937_64 rng(14);
    for (int t = 0; t < 50; ++t) {
        const auto xi = dmc::testing::random_law(rng, 3, 5);
        const Vec u = gauss_vec(rng, 3);
        std::vector<Vec> xs;
        std::vector<double> ps;
        for (const auto& a : xi.atoms()) {
            xs.push_back(a.x);
            ps.push_back(a.p);
        }
        EXPECT_NEAR(support(ConvexBody(zonoid_of(xi)), u), oracle::expected_abs_projection(xs, ps, u), 1e-12);
        EXPECT_NEAR(expected_support(xi, unit_segment(3), u), oracle::expected_abs_projection(xs, ps, u), 1e-12);
    }
}

TEST(Moments, Examples)
{
    const DiscreteRandomVector d(2, {{{2.0, 3.0}, 1.0}});
    EXPECT_NEAR(moment_f(d, Vec{0.5, 0.5}, {}, {0, 1}), std::sqrt(6.0), 1e-14);
    EXPECT_THROW(moment_f(d, Vec{0.7, 0.5}, {}, {0, 1}), DomainError);
    EXPECT_THROW(moment_f(d, Vec{0.5, 0.5}, {0}, {1}), DomainError);

    std::mt19937_64 rng(15);
    for (int t = 0; t < 30; ++t) {
        auto xi = dmc::testing::random_symmetric_law(rng, 3, 3);
        EXPECT_EQ(moment_f(xi, Vec{0.25, 0.25, 0.5}, {0}, {0, 1, 2}), 0.0);
        EXPECT_EQ(moment_f(xi, Vec{0.25, 0.25, 0.5}, {0, 1, 2}, {0, 1, 2}), 0.0);
    }
}

TEST(Moments, SingleCoordinateByDirectSummation)
{
    const DiscreteRandomVector xi(3, {{{2.0, 0.0, 0.0}, 0.25}, {{-3.0, 0.0, 0.0}, 0.25}, {{1.0, 1.0, 0.0}, 0.5}});
    EXPECT_NEAR(moment_f(xi, Vec{1.0, 0.0, 0.0}, {}, {0}), 0.25 * 2.0 + 0.25 * 3.0, 1e-15);
    EXPECT_NEAR(moment_f(xi, Vec{1.0, 0.0, 0.0}, {0}, {0}), 0.25 * 2.0 - 0.25 * 3.0, 1e-15);
}

TEST(Moments, LinearInTheLaw)
{
    std::mt19937_64 rng(16);
    for (int t = 0; t < 50; ++t) {
        const auto a = dmc::testing::random_law(rng, 3, 3), b = dmc::testing::random_law(rng, 3, 4);
        const double lam = dmc::testing::uniform(rng, 0.1, 0.9);
        const auto m = mixture(a, b, lam);
        const Vec alpha{0.2, 0.3, 0.5};
        const IndexSet E{0, 1, 2}, J{0, 2};
        EXPECT_NEAR(moment_f(m, alpha, J, E), lam * moment_f(a, alpha, J, E) + (1 - lam) * moment_f(b, alpha, J, E), 1e-12);
    }
}

TEST(Moments, SignPatternDecomposition)
{
    std::mt19937_64 rng(17);
    for (int t = 0; t < 30; ++t) {
        auto xi = dmc::testing::random_symmetric_law(rng, 3, 4);
        const IndexSet E{0, 2};
        const Vec alpha{0.4, 0.0, 0.6};
        // put some atoms into A_E
        xi = map_law(xi, [](const Vec& x) { return Vec{x[0], std::abs(x[0]) > 0.5 ? 0.0 : x[1], x[2]}; }, true);
        double total = 0.0, signed_total = 0.0;
        for (int s0 : {-1, 1})
            for (int s2 : {-1, 1}) {
                double mass = 0.0;
                for (const auto& a : xi.atoms()) {
                    if (!in_A(a.x, E) || (a.x[0] > 0) != (s0 > 0) || (a.x[2] > 0) != (s2 > 0)) continue;
                    mass += a.p * std::pow(std::abs(a.x[0]), 0.4) * std::pow(std::abs(a.x[2]), 0.6);
                }
                total += mass;
                signed_total += s0 * s2 * mass;
            }
        EXPECT_NEAR(total, moment_f(xi, alpha, {}, E), 1e-12);
        EXPECT_NEAR(signed_total, moment_f(xi, alpha, E, E), 1e-12);
    }
}

TEST(Moments, AlphaAndMax)
{
    const DiscreteRandomVector d(2, {{{1.0, 2.0}, 1.0}});
    const Vec u{0.5, 3.0};
    EXPECT_NEAR(alpha_moment(d, u, 0.7), std::pow(6.5, 0.7), 1e-13);
    EXPECT_NEAR(max_moment(d, u, 0.7), std::pow(6.0, 0.7), 1e-13);
    EXPECT_THROW(alpha_moment(d, u, 0.0), DomainError);

    // completely dependent xi = zeta v factorises
    const Vec v{0.3, 1.1};
    const std::vector<std::pair<double, double>> zeta{{0.5, 0.2}, {1.5, 0.5}, {4.0, 0.3}};
    std::vector<VectorAtom> atoms;
    double ez = 0.0;
    for (const auto& [z, p] : zeta) {
        atoms.push_back({scaled(v, z), p});
        ez += p * std::pow(z, 0.7);
    }
    const DiscreteRandomVector dep(2, atoms);
    EXPECT_NEAR(alpha_moment(dep, u, 0.7), ez * std::pow(oracle::dot(u, v), 0.7), 1e-12);
    EXPECT_NEAR(max_moment(dep, u, 0.7), ez * std::pow(std::max(u[0] * v[0], u[1] * v[1]), 0.7), 1e-12);

    std::mt19937_64 rng(18);
    for (int t = 0; t < 30; ++t) {
        const auto xi = map_law(dmc::testing::random_law(rng, 3, 4), [](const Vec& x) {
            Vec y(x);
            for (double& c : y) c = std::abs(c);
            return y;
        }, false);
        const Vec w = dmc::testing::positive_unit(rng, 3);
        EXPECT_NEAR(alpha_moment(xi, w, 1.0), expected_support(xi, unit_segment(3), w), 1e-12);
    }
}
