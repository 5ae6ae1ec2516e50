#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "ipbounds/exponents.hpp"
#include "ipbounds/random.hpp"

using namespace ipbounds;

namespace {

bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST(Conjugate, WorkedValues) {
    EXPECT_EQ(conjugate(2.0), 2.0);
    EXPECT_EQ(conjugate(3.0), 1.5);
    EXPECT_EQ(conjugate(1.25), 5.0);
}

TEST(Conjugate, RejectsOutsideOpenHalfLine) {
    EXPECT_THROW(conjugate(1.0), std::domain_error);
    EXPECT_THROW(conjugate(0.5), std::domain_error);
    EXPECT_THROW(conjugate(std::nan("")), std::domain_error);
    EXPECT_THROW(conjugate(INFINITY), std::domain_error);
}

TEST(Conjugate, InvolutionAndStraddlesTwo) {
    Rng rng(5, 0);
    for (int t = 0; t < 1000; ++t) {
        const double p = std::exp(rng.uniform(std::log(kPairLow), std::log(kMaxExponent)));
        const double q = conjugate(p);
        EXPECT_NEAR(conjugate(q), p, 1e-12 * p);
        EXPECT_NEAR(1.0 / p + 1.0 / q, 1.0, 1e-12);
        EXPECT_LE(std::min(p, q), 2.0);
        EXPECT_GE(std::max(p, q), 2.0);
    }
}

TEST(ConjugatePair, DomainKeepsBothMembersInside) {
    EXPECT_NO_THROW(ConjugatePair::from(kPairLow));
    EXPECT_NO_THROW(ConjugatePair::from(kMaxExponent));
    EXPECT_THROW(ConjugatePair::from(1.005), std::domain_error);
    // 1.01 itself is in range but its conjugate (101) is not.
    EXPECT_THROW(ConjugatePair::from(1.01), std::domain_error);
    EXPECT_THROW(ConjugatePair::from(150.0), std::domain_error);
}

TEST(BranchSelector, ListingOrder) {
    const auto all = BranchSelector::all();
    for (int k = 1; k <= 9; ++k) {
        EXPECT_EQ(all[k - 1].index(), k);
        EXPECT_EQ(BranchSelector::from_index(k), all[k - 1]);
    }
    EXPECT_EQ(all[0], (BranchSelector{Side::MaxAll, Side::MaxAll}));
    EXPECT_EQ(all[1], (BranchSelector{Side::MaxAll, Side::DoubleHolder}));
    EXPECT_EQ(all[3], (BranchSelector{Side::DoubleHolder, Side::MaxAll}));
    EXPECT_EQ(all[5], (BranchSelector{Side::DoubleHolder, Side::MaxRow}));
    EXPECT_EQ(all[8], (BranchSelector{Side::MaxRow, Side::MaxRow}));
    EXPECT_THROW(BranchSelector::from_index(0), std::invalid_argument);
    EXPECT_THROW(BranchSelector::from_index(10), std::invalid_argument);
}

TEST(Validate, MaxRowBothSidesNeedsNothing) {
    EXPECT_TRUE(validate(HolderParams::make(2.0), {Side::MaxRow, Side::MaxRow}).empty());
}

TEST(Validate, MissingSecondaryPair) {
    const auto errors = validate(HolderParams::make(2.0), {Side::DoubleHolder, Side::MaxAll});
    EXPECT_TRUE(contains(errors, "ab required"));
}

TEST(Validate, SuperfluousPair) {
    const auto errors = validate(HolderParams::make(2.0, 2.0, 3.0), {Side::MaxAll, Side::MaxRow});
    EXPECT_TRUE(contains(errors, "ab superfluous for this branch"));
    EXPECT_TRUE(contains(errors, "gd superfluous for this branch"));
    EXPECT_EQ(errors.size(), 2u);
}

TEST(Validate, ReportsEveryViolation) {
    HolderParams bad;
    bad.pq = {1.0, 1e300};
    bad.ab = ConjugatePair{3.0, 2.0};  // not conjugate
    const auto errors = validate(bad, {Side::MaxAll, Side::DoubleHolder});
    EXPECT_GE(errors.size(), 3u);  // pq domain, ab conjugacy, ab superfluous, gd required
    EXPECT_TRUE(contains(errors, "gd required"));
    EXPECT_TRUE(contains(errors, "ab superfluous for this branch"));
}

TEST(RestrictTo, KeepsOnlyNeededPairs) {
    const HolderParams full = HolderParams::make(3.0, 2.0, 4.0);
    for (const auto& b : BranchSelector::all()) {
        const HolderParams r = restrict_to(full, b);
        EXPECT_TRUE(validate(r, b).empty()) << b.index();
    }
    EXPECT_THROW(restrict_to(HolderParams::make(3.0), {Side::DoubleHolder, Side::MaxAll}), std::invalid_argument);
}
