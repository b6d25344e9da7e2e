#include <gtest/gtest.h>

#include "dmc/core.hpp"

using namespace dmc;

TEST(Core, ConjugateExponentIsSymbolicAtTheBoundary)
{
    EXPECT_TRUE(std::isinf(conjugate_exponent(1.0)));
    EXPECT_EQ(conjugate_exponent(kInf), 1.0);
    EXPECT_DOUBLE_EQ(conjugate_exponent(2.0), 2.0);
    EXPECT_DOUBLE_EQ(conjugate_exponent(3.0), 1.5);
    EXPECT_THROW(conjugate_exponent(0.5), DomainError);
}

TEST(Core, LpNorms)
{
    const Vec a{3.0, -4.0};
    EXPECT_DOUBLE_EQ(lp_norm(a, 2.0), 5.0);
    EXPECT_DOUBLE_EQ(lp_norm(a, 1.0), 7.0);
    EXPECT_DOUBLE_EQ(lp_norm(a, kInf), 4.0);
}

TEST(Core, SignedPowerKeepsSign)
{
    EXPECT_DOUBLE_EQ(signed_power(-8.0, 1.0 / 3.0), -2.0);
    EXPECT_DOUBLE_EQ(signed_power(4.0, 0.5), 2.0);
    EXPECT_EQ(signed_power(0.0, 0.5), 0.0);
}

TEST(Core, SubsetsAreSortedBySize)
{
    const auto all = subsets_where(3, [](const IndexSet&) { return true; });
    ASSERT_EQ(all.size(), 7u);
    for (std::size_t i = 1; i < all.size(); ++i) EXPECT_LE(all[i - 1].size(), all[i].size());
    const auto even = subsets_where(4, [](const IndexSet& J) { return J.size() % 2 == 0; });
    EXPECT_EQ(even.size(), 7u);  // six pairs and the full set
}

TEST(Core, SphereArea)
{
    EXPECT_NEAR(sphere_area(2), 2.0 * M_PI, 1e-14);
    EXPECT_NEAR(sphere_area(3), 4.0 * M_PI, 1e-13);
}

TEST(Core, EmbedAndRestrict)
{
    const IndexSet J{0, 2};
    const Vec e = embed(Vec{5.0, 7.0}, J, 3);
    EXPECT_EQ(e, (Vec{5.0, 0.0, 7.0}));
    EXPECT_EQ(restrict_to(e, J), (Vec{5.0, 7.0}));
    EXPECT_THROW(check_index_set({}, 3), DomainError);
    EXPECT_THROW(check_index_set({3}, 3), DomainError);
}
