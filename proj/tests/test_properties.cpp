#include <gtest/gtest.h>

#include <cmath>

#include "ipbounds/bounds.hpp"
#include "ipbounds/formula.hpp"
#include "ipbounds/verify.hpp"
#include "naive_oracle.hpp"

using namespace ipbounds;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

FuzzConfig stream(std::uint64_t seed, int n_max = 8) {
    FuzzConfig cfg;
    cfg.seed = seed;
    cfg.n_max = n_max;
    cfg.d_max = n_max;
    return cfg;
}

Instance scaled_family(const Instance& inst, Complex u) {
    std::vector<CVector> ys = inst.family->vectors();
    for (auto& y : ys)
        for (auto& z : y) z *= u;
    return Instance::from_coordinates(VectorFamily(ys), *inst.x, inst.c);
}

}  // namespace

TEST(Properties, CoefficientScalingIsQuadratic) {
    const FuzzConfig cfg = stream(31);
    const Complex t{-0.7, 1.9};
    const double t2 = std::norm(t);
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Instance inst = random_instance(cfg, i);
        const HolderParams hp = random_params(cfg, i)[1];
        CVector c = *inst.c;
        for (auto& z : c) z *= t;
        const BoundChain a = pecaric_type_chain(inst.proj, *inst.c, inst.gram, hp);
        const BoundChain b = pecaric_type_chain(inst.proj, c, inst.gram, hp);
        EXPECT_NEAR(b.lhs, t2 * a.lhs, 1e-12 * (1 + t2 * a.lhs));
        EXPECT_LT(rel(*b.middle, t2 * *a.middle), 1e-12);
        for (std::size_t k = 0; k < 9; ++k) EXPECT_LT(rel(b.branches[k].value, t2 * a.branches[k].value), 1e-12);
    }
}

TEST(Properties, VectorScalingIsQuadratic) {
    const FuzzConfig cfg = stream(32);
    const Complex s{0.4, -0.3};
    const double s2 = std::norm(s);
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Instance inst = random_instance(cfg, i);
        CVector x = *inst.x;
        for (auto& z : x) z *= s;
        const Instance moved = Instance::from_coordinates(*inst.family, x, inst.c);
        const HolderParams hp = random_params(cfg, i)[2];
        const BoundChain a = pecaric_type_chain(inst.proj, *inst.c, inst.gram, hp);
        const BoundChain b = pecaric_type_chain(moved.proj, *moved.c, moved.gram, hp);
        EXPECT_NEAR(b.lhs, s2 * a.lhs, 1e-12 * (1 + a.lhs));
        EXPECT_LT(rel(*b.middle, s2 * *a.middle), 1e-12);
        for (std::size_t k = 0; k < 9; ++k) EXPECT_LT(rel(b.branches[k].value, s2 * a.branches[k].value), 1e-12);
    }
}

TEST(Properties, FamilyScalingCovariance) {
    const FuzzConfig cfg = stream(33);
    const Complex u{1.3, 0.6};
    const double u2 = std::norm(u);
    for (std::uint64_t i = 0; i < 200; ++i) {
        const Instance inst = random_instance(cfg, i);
        const Instance big = scaled_family(inst, u);
        const HolderParams hp = random_params(cfg, i)[3];
        EXPECT_LT(rel(holder_bound(*big.c, big.gram, hp.pq), u2 * holder_bound(*inst.c, inst.gram, hp.pq)), 1e-12);
        const BoundChain a = bombieri_type_chain(inst.proj, inst.gram, hp);
        const BoundChain b = bombieri_type_chain(big.proj, big.gram, hp);
        EXPECT_NEAR(b.lhs, u2 * a.lhs, 1e-12 * (1 + u2 * a.lhs));
        EXPECT_LT(rel(*b.middle, u2 * *a.middle), 1e-12);
        EXPECT_TRUE(check_chain(big, hp).all_pass());
    }
}

TEST(Properties, HolderSelfConjugate) {
    const FuzzConfig cfg = stream(34);
    for (std::uint64_t i = 0; i < 300; ++i) {
        const Instance inst = random_instance(cfg, i);
        const ConjugatePair pq = random_params(cfg, i)[1].pq;
        const ConjugatePair qp{pq.q, pq.p};
        EXPECT_LT(rel(holder_bound(*inst.c, inst.gram, qp), holder_bound(*inst.c, inst.gram, pq)), 1e-14);
    }
}

TEST(Properties, OrthonormalConstantModulusEqualityWitnesses) {
    for (int n = 1; n <= 8; ++n) {
        std::vector<CVector> ys(n, CVector(n, 0.0));
        for (int i = 0; i < n; ++i) ys[i][i] = 1.0;
        CVector c(n);
        for (int i = 0; i < n; ++i) c[i] = std::polar(0.8, 0.7 * i);
        const Instance inst = Instance::from_coordinates(VectorFamily(ys), CVector(n, 0.5), c);
        const HolderParams hp = HolderParams::make(2.0);
        const double lhs = norm_squared_expansion(c, inst.gram);
        EXPECT_LT(rel(holder_bound(c, inst.gram, hp.pq), lhs), 1e-12);
        for (int k : {1, 3, 9}) {
            const auto sel = BranchSelector::from_index(k);
            EXPECT_LT(rel(branch_bound(c, inst.gram, hp, sel).value, lhs), 1e-12) << "n=" << n << " branch " << k;
        }
    }
}

TEST(Properties, BombieriSquaredIsPecaricWithConjugatedProjections) {
    const FuzzConfig cfg = stream(35);
    for (std::uint64_t i = 0; i < 300; ++i) {
        const Instance inst = random_instance(cfg, i);
        const HolderParams hp = random_params(cfg, i)[i % 5];
        CVector c = inst.proj.proj;
        for (auto& z : c) z = std::conj(z);
        const BoundChain pec = pecaric_type_chain(inst.proj, c, inst.gram, hp);
        const BoundChain bom = bombieri_type_chain(inst.proj, inst.gram, hp);
        for (std::size_t k = 0; k < 9; ++k) {
            const double sq = bom.branches[k].value * bom.branches[k].value;
            EXPECT_LE(std::abs(sq - pec.branches[k].value), 1e-12 * pec.branches[k].value + 1e-300);
        }
        EXPECT_LT(rel(pec.lhs, bom.lhs * bom.lhs), 1e-12 + (bom.lhs == 0 ? 1.0 : 0.0));
    }
}

TEST(Properties, AgreesWithNaiveOracleOnSmallFamilies) {
    const FuzzConfig cfg = stream(36, 3);
    for (std::uint64_t i = 0; i < 300; ++i) {
        const Instance inst = random_instance(cfg, i);
        for (const auto& hp : random_params(cfg, i)) {
            const naive::Ladder L = naive::evaluate(inst.family->vectors(), *inst.x, *inst.c, naive::exps(hp));
            EXPECT_LT(rel(holder_bound(*inst.c, inst.gram, hp.pq), L.holder), 1e-9);
            for (const auto& sel : BranchSelector::all()) {
                const double v = branch_bound(*inst.c, inst.gram, restrict_to(hp, sel), sel).value;
                EXPECT_LT(rel(v, L.gram_branch[sel.index() - 1]), 1e-9);
            }
            const FormulaContext ctx{inst.proj.proj, inst.gram, inst.proj.norm_x_sq};
            EXPECT_LT(rel(printed_form_value(ctx, 6, FormulaSource::Bombieri, hp).value, L.bom_b6_printed), 1e-9);
        }
    }
}
