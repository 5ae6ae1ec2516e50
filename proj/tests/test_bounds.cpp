#include <gtest/gtest.h>

#include <cmath>

#include "ipbounds/bounds.hpp"
#include "ipbounds/gram.hpp"

using namespace ipbounds;

namespace {

const Complex I{0.0, 1.0};

GramData identity2() { return gram_from_matrix(ComplexMatrix::identity(2)); }
GramData ones2() { return gram_from_matrix(std::vector<CVector>{{1.0, 1.0}, {1.0, 1.0}}); }
GramData half2() { return gram_from_matrix(std::vector<CVector>{{1.0, 0.5}, {0.5, 1.0}}); }

ProjectionData project(const CVector& x, const std::vector<CVector>& ys) { return projection_data(x, VectorFamily(ys)); }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(NormExpansion, WorkedValues) {
    EXPECT_DOUBLE_EQ(norm_squared_expansion(CVector{1.0, 1.0}, identity2()), 2.0);
    EXPECT_DOUBLE_EQ(norm_squared_expansion(CVector{1.0, -1.0}, ones2()), 0.0);
    EXPECT_DOUBLE_EQ(norm_squared_expansion(CVector{1.0, 1.0}, ones2()), 4.0);
}

TEST(NormExpansion, LengthMismatchThrows) {
    EXPECT_THROW(norm_squared_expansion(CVector{1.0}, identity2()), InputError);
}

TEST(DoubleSum, WorkedValues) {
    EXPECT_DOUBLE_EQ(double_sum(CVector{1.0, -1.0}, ones2()), 4.0);
    EXPECT_DOUBLE_EQ(double_sum(CVector{1.0, 1.0}, identity2()), 2.0);
    EXPECT_DOUBLE_EQ(double_sum(CVector{0.0, 0.0}, half2()), 0.0);
}

TEST(WeightedPowerSum, WorkedValues) {
    EXPECT_DOUBLE_EQ(weighted_power_sum(std::vector<double>{1, 1}, 2.0, std::vector<double>{1, 1}), 2.0);
    EXPECT_DOUBLE_EQ(weighted_power_sum(std::vector<double>{2, 0}, 3.0, std::vector<double>{1, 5}), 8.0);
    EXPECT_DOUBLE_EQ(weighted_power_sum(std::vector<double>{1, 1}, 2.0, std::vector<double>{2, 2}), 4.0);
    EXPECT_THROW(weighted_power_sum(std::vector<double>{1}, 0.0, std::vector<double>{1}), std::domain_error);
    EXPECT_THROW(weighted_power_sum(std::vector<double>{1}, -1.0, std::vector<double>{1}), std::domain_error);
}

TEST(HolderBound, WorkedValues) {
    const ConjugatePair two = ConjugatePair::from(2.0);
    EXPECT_NEAR(holder_bound(CVector{1.0, 1.0}, identity2(), two), 2.0, 1e-15);
    EXPECT_NEAR(holder_bound(CVector{1.0, 1.0}, ones2(), two), 4.0, 1e-15);
    const GramData four = gram_from_matrix(std::vector<CVector>{{4.0}});
    for (double p : {1.5, 2.0, 3.0, 50.0}) {
        EXPECT_NEAR(holder_bound(CVector{1.0}, four, ConjugatePair::from(p)), 4.0, 1e-14) << p;
    }
}

TEST(HolderBound, LargeExponentsDoNotOverflow) {
    const GramData g = gram_from_matrix(std::vector<CVector>{{1e6, 0.0}, {0.0, 1e-6}});
    const double v = holder_bound(CVector{1e5, 1e-5}, g, ConjugatePair::from(100.0));
    EXPECT_TRUE(std::isfinite(v));
    EXPECT_GT(v, 0.0);
}

TEST(FactorP, WorkedValues) {
    const HolderParams hp = HolderParams::make(2.0, 2.0, 2.0);
    const CVector a{1.0, 1.0};
    EXPECT_NEAR(factor_p(a, identity2(), hp, Side::MaxAll), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(factor_p(a, identity2(), hp, Side::MaxRow), std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(factor_p(a, identity2(), hp, Side::DoubleHolder), std::sqrt(2.0), 1e-15);
}

TEST(FactorQ, WorkedValues) {
    const HolderParams hp = HolderParams::make(2.0, 2.0, 2.0);
    EXPECT_NEAR(factor_q(CVector{1.0, 1.0}, identity2(), hp, Side::MaxAll), std::sqrt(2.0), 1e-15);
    // mpmath: sqrt(10) = 3.162277660168379332
    EXPECT_NEAR(factor_q(CVector{1.0, 3.0}, identity2(), hp, Side::MaxRow), 3.162277660168379332, 1e-15);
    EXPECT_NEAR(factor_q(CVector{1.0, 1.0}, identity2(), hp, Side::DoubleHolder), std::sqrt(2.0), 1e-15);
}

TEST(FactorP, DoubleHolderNeedsSecondaryPair) {
    EXPECT_THROW(factor_p(CVector{1.0, 1.0}, identity2(), HolderParams::make(2.0), Side::DoubleHolder),
                 std::invalid_argument);
}

TEST(BranchBound, WorkedValues) {
    const HolderParams two = HolderParams::make(2.0);
    EXPECT_NEAR(branch_bound(CVector{1.0, 1.0}, identity2(), two, {Side::MaxAll, Side::MaxAll}).value, 2.0, 1e-15);
    EXPECT_NEAR(branch_bound(CVector{1.0, 1.0}, identity2(), two, {Side::MaxRow, Side::MaxRow}).value, 2.0, 1e-15);
    // mpmath oracle: (sum a^4)^(1/4) (sum r^2)^(1/4) (sum a^2)^(1/2) (max r)^(1/2) = 8.0992721164935327969
    const BoundValue b6 = branch_bound(CVector{1.0, 2.0}, half2(), HolderParams::make(2.0, 2.0),
                                       {Side::DoubleHolder, Side::MaxRow});
    EXPECT_LT(rel(b6.value, 8.0992721164935327969), 1e-14);
    EXPECT_EQ(b6.branch, 6);
    EXPECT_EQ(b6.form, Form::Derived);
}

TEST(BranchBound, RejectsInvalidParams) {
    EXPECT_THROW(branch_bound(CVector{1.0}, gram_from_matrix(ComplexMatrix::identity(1)), HolderParams::make(2.0, 2.0),
                              {Side::MaxAll, Side::MaxAll}),
                 std::invalid_argument);
}

TEST(LhsPecaric, WorkedValues) {
    EXPECT_DOUBLE_EQ(lhs_pecaric({{1.0, 0.0}, 1.0}, CVector{1.0, 0.0}), 1.0);
    EXPECT_DOUBLE_EQ(lhs_pecaric({{1.0, 1.0}, 2.0}, CVector{1.0, -1.0}), 0.0);
    EXPECT_DOUBLE_EQ(lhs_pecaric({{1.0, 1.0}, 2.0}, CVector{2.0, I}), 5.0);
}

TEST(PecaricBound, WorkedValues) {
    const std::vector<CVector> basis{{1.0, 0.0}, {0.0, 1.0}};
    const GramData g = gram_matrix(VectorFamily(basis));
    const auto e1 = pecaric_bound(project({1.0, 0.0}, basis), CVector{1.0, 0.0}, g);
    EXPECT_DOUBLE_EQ(e1.row_weighted, 1.0);
    EXPECT_DOUBLE_EQ(e1.max_row, 1.0);
    const auto zero = pecaric_bound(project({1.0, 0.0}, basis), CVector{0.0, 0.0}, g);
    EXPECT_EQ(zero.row_weighted, 0.0);
    EXPECT_EQ(zero.max_row, 0.0);
    const auto ones = pecaric_bound(project({1.0, 1.0}, basis), CVector{1.0, 1.0}, g);
    EXPECT_DOUBLE_EQ(ones.row_weighted, 4.0);
    EXPECT_DOUBLE_EQ(ones.max_row, 4.0);
}

TEST(PecaricSelf, WorkedValues) {
    const std::vector<CVector> basis{{1.0, 0.0}, {0.0, 1.0}};
    const GramData g = gram_matrix(VectorFamily(basis));
    const auto e1 = pecaric_self(project({1.0, 0.0}, basis), g);
    EXPECT_DOUBLE_EQ(e1.lhs, 1.0);
    EXPECT_DOUBLE_EQ(e1.row_weighted, 1.0);
    EXPECT_DOUBLE_EQ(e1.max_row, 1.0);
    const auto zero = pecaric_self(project({0.0, 0.0}, basis), g);
    EXPECT_EQ(zero.lhs + zero.row_weighted + zero.max_row, 0.0);
    const auto ones = pecaric_self(project({1.0, 1.0}, basis), g);
    EXPECT_DOUBLE_EQ(ones.lhs, 4.0);
    EXPECT_DOUBLE_EQ(ones.row_weighted, 4.0);
    EXPECT_DOUBLE_EQ(ones.max_row, 4.0);
}

TEST(BombieriBound, WorkedValues) {
    const std::vector<CVector> basis{{1.0, 0.0}, {0.0, 1.0}};
    const auto orth = bombieri_bound(project({0.3, -2.0}, basis), gram_matrix(VectorFamily(basis)));
    EXPECT_DOUBLE_EQ(orth.bound, 0.09 + 4.0);
    const auto zero = bombieri_bound(project({0.0, 0.0}, basis), gram_matrix(VectorFamily(basis)));
    EXPECT_EQ(zero.lhs, 0.0);
    EXPECT_EQ(zero.bound, 0.0);
    const std::vector<CVector> twice{{1.0, 0.0}, {1.0, 0.0}};
    const auto rep = bombieri_bound(project({1.0, 1.0}, twice), gram_matrix(VectorFamily(twice)));
    EXPECT_DOUBLE_EQ(rep.lhs, 2.0);
    EXPECT_DOUBLE_EQ(rep.bound, 4.0);
}

TEST(PecaricTypeChain, ReducesToClassicalAtTwo) {
    const std::vector<CVector> ys{{1.0, 0.5 * I, 0.0}, {0.2, 1.0, -0.3}, {0.0, 0.4, 1.0}};
    const VectorFamily f(ys);
    const ProjectionData pd = projection_data({0.7, -0.1, 0.3 * I}, f);
    const GramData g = gram_matrix(f);
    const CVector c{{1.0, 0.5}, -0.25, {0.0, 2.0}};
    const BoundChain chain =
        pecaric_type_chain(pd, c, g, HolderParams::make(2.0), BranchSelector{Side::MaxRow, Side::MaxRow});
    const auto classical = pecaric_bound(pd, c, g);
    EXPECT_LT(rel(chain.branches.front().value, classical.max_row), 1e-12);
    EXPECT_LT(rel(*chain.middle, classical.row_weighted), 1e-12);
}

TEST(PecaricTypeChain, ZeroCoefficients) {
    const std::vector<CVector> ys{{1.0, 0.0}, {0.5, 1.0}};
    const VectorFamily f(ys);
    const BoundChain chain = pecaric_type_chain(projection_data({1.0, 2.0}, f), CVector{0.0, 0.0}, gram_matrix(f),
                                                HolderParams::make(3.0, 2.0, 4.0));
    EXPECT_EQ(chain.lhs, 0.0);
    EXPECT_EQ(*chain.middle, 0.0);
    for (const auto& b : chain.branches) EXPECT_EQ(b.value, 0.0) << b.branch;
    EXPECT_EQ(chain.branches.size(), 9u);
}

TEST(BombieriTypeChain, OrthonormalEquality) {
    const std::vector<CVector> basis{{1.0, 0.0}, {0.0, 1.0}};
    const VectorFamily f(basis);
    const BoundChain chain = bombieri_type_chain(projection_data({1.0, 0.0}, f), gram_matrix(f), HolderParams::make(2.0, 2.0, 2.0));
    EXPECT_NEAR(chain.lhs, 1.0, 1e-15);
    EXPECT_NEAR(*chain.middle, 1.0, 1e-15);
}

TEST(BombieriTypeChain, ZeroProjection) {
    const std::vector<CVector> ys{{1.0, 0.0}, {0.5, 1.0}};
    const VectorFamily f(ys);
    const BoundChain chain =
        bombieri_type_chain(projection_data({0.0, 0.0}, f), gram_matrix(f), HolderParams::make(3.0, 2.0, 4.0));
    EXPECT_EQ(chain.lhs, 0.0);
    EXPECT_EQ(*chain.middle, 0.0);
    for (const auto& b : chain.branches) EXPECT_EQ(b.value, 0.0);
}

TEST(BombieriRatio, WorkedValues) {
    const std::vector<CVector> basis{{1.0, 0.0}, {0.0, 1.0}};
    const VectorFamily f(basis);
    const GramData g = gram_matrix(f);
    const ProjectionData pd = projection_data({1.0, 1.0}, f);
    const auto at2 = bombieri_ratio(pd, g, ConjugatePair::from(2.0));
    EXPECT_NEAR(at2.ratio_lhs, 2.0, 1e-15);
    EXPECT_DOUBLE_EQ(at2.bound, 2.0);
    // mpmath: 4 / (2^(1/3) 2^(2/3)) = 2
    EXPECT_NEAR(bombieri_ratio(pd, g, ConjugatePair::from(3.0)).ratio_lhs, 2.0, 1e-14);
    const auto zero = bombieri_ratio(projection_data({0.0, 0.0}, f), g, ConjugatePair::from(3.0));
    EXPECT_EQ(zero.ratio_lhs, 0.0);
    EXPECT_EQ(zero.bound, 0.0);
}

TEST(SlackTolerance, FloorAndRelative) {
    EXPECT_EQ(slack_tolerance(0.0), 1e-12);
    EXPECT_EQ(slack_tolerance(1.0), 1e-9);
    EXPECT_EQ(slack_tolerance(-1e6), 1e-3);
}
