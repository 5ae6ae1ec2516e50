#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "ipbounds/bounds.hpp"
#include "ipbounds/formula.hpp"
#include "ipbounds/random.hpp"

using namespace ipbounds;

namespace {

GramData half2() { return gram_from_matrix(std::vector<CVector>{{1.0, 0.5}, {0.5, 1.0}}); }

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

const std::set<std::pair<FormulaSource, int>> kDiffering{
    {FormulaSource::Gram, 4}, {FormulaSource::Bombieri, 4}, {FormulaSource::Bombieri, 6}};

}  // namespace

TEST(Exponent, ConjugateReciprocalsCollapse) {
    Exponent e = Exponent::reciprocal(1, {Symbol::P});
    e += Exponent::reciprocal(1, {Symbol::Q});
    EXPECT_EQ(e, Exponent::constant(1));

    Exponent f = Exponent::reciprocal(1, {Symbol::Alpha, Symbol::P});
    f += Exponent::reciprocal(1, {Symbol::Beta, Symbol::P});
    EXPECT_EQ(f, Exponent::reciprocal(1, {Symbol::P}));

    Exponent g = Exponent::reciprocal(1, {Symbol::P});
    g += Exponent::reciprocal(-1, {Symbol::P});
    EXPECT_TRUE(g.is_zero());
}

TEST(Exponent, Evaluates) {
    const HolderParams hp = HolderParams::make(3.0, 2.0, 4.0);
    EXPECT_DOUBLE_EQ(Exponent::reciprocal(1, {Symbol::Beta, Symbol::Q}).evaluate(hp), 1.0 / (2.0 * 1.5));
    EXPECT_DOUBLE_EQ(Exponent::reciprocal(Rational(1, 2), {Symbol::Delta}).evaluate(hp), 0.5 / (4.0 / 3.0));
    EXPECT_DOUBLE_EQ(Exponent::constant(Rational(3, 6)).evaluate(hp), 0.5);
}

TEST(Rational, Normalizes) {
    EXPECT_EQ(Rational(2, 4), Rational(1, 2));
    EXPECT_EQ(Rational(1, -2), Rational(-1, 2));
    EXPECT_EQ(Rational(1, 3) + Rational(1, 6), Rational(1, 2));
    EXPECT_EQ(Rational(2, 3) * Rational(3, 4), Rational(1, 2));
}

TEST(FormulaSource, Names) {
    for (auto s : {FormulaSource::Gram, FormulaSource::Pecaric, FormulaSource::Bombieri}) {
        EXPECT_EQ(formula_source_from_string(to_string(s)), s);
    }
    EXPECT_THROW(formula_source_from_string("nope"), std::invalid_argument);
}

TEST(PrintedForms, CoincideWithDerivedExceptThreeBranches) {
    for (auto s : {FormulaSource::Gram, FormulaSource::Pecaric, FormulaSource::Bombieri}) {
        for (int k = 1; k <= 9; ++k) {
            const bool same = printed_formula(s, k) == derived_formula(s, k);
            EXPECT_EQ(same, !kDiffering.contains({s, k}))
                << to_string(s) << " " << k << "\nprinted " << printed_formula(s, k).to_string() << "\nderived "
                << derived_formula(s, k).to_string();
        }
    }
}

TEST(PrintedForms, CoincidingFormsAgreeBitForBit) {
    Rng rng(21, 0);
    for (int t = 0; t < 200; ++t) {
        const int n = rng.uniform_int(1, 5);
        std::vector<CVector> ys(n, CVector(3));
        for (auto& y : ys)
            for (auto& z : y) z = rng.unit_disk();
        const GramData g = gram_matrix(VectorFamily(ys));
        CVector c(n);
        for (auto& z : c) z = rng.unit_disk();
        const HolderParams hp = HolderParams::make(1 + std::pow(10.0, rng.uniform(-1.9, 1.9)), rng.uniform(1.1, 50),
                                                   rng.uniform(1.1, 50));
        for (auto s : {FormulaSource::Gram, FormulaSource::Pecaric, FormulaSource::Bombieri}) {
            for (int k = 1; k <= 9; ++k) {
                if (kDiffering.contains({s, k})) continue;
                const FormulaContext ctx{c, g, 0.7};
                EXPECT_EQ(printed_form_value(ctx, k, s, hp).value, derived_form_value(ctx, k, s, hp).value);
            }
        }
    }
}

TEST(PrintedForms, DerivedCatalogMatchesFactorComposition) {
    Rng rng(22, 0);
    for (int t = 0; t < 200; ++t) {
        const int n = rng.uniform_int(1, 5);
        std::vector<CVector> ys(n, CVector(4));
        for (auto& y : ys)
            for (auto& z : y) z = rng.unit_disk();
        const GramData g = gram_matrix(VectorFamily(ys));
        CVector c(n);
        for (auto& z : c) z = rng.unit_disk();
        const HolderParams hp = HolderParams::make(1 + std::pow(10.0, rng.uniform(-1.9, 1.9)), rng.uniform(1.1, 50),
                                                   rng.uniform(1.1, 50));
        for (const auto& sel : BranchSelector::all()) {
            const double symbolic = derived_form_value({c, g, 1.0}, sel.index(), FormulaSource::Gram, hp).value;
            const double direct = branch_bound(c, g, restrict_to(hp, sel), sel).value;
            EXPECT_LE(rel(symbolic, direct), 1e-12) << sel.index();
        }
    }
}

TEST(PrintedForms, GramBranchFourWorkedValues) {
    // mpmath at 50 digits: printed 13.772112537491610345, derived 10.718445660611352587
    const HolderParams hp = HolderParams::make(3.0, 2.0);
    const CVector a{1.0, 2.0};
    const GramData g = half2();
    const BoundValue printed = printed_form_value({a, g, 1.0}, 4, FormulaSource::Gram, hp);
    const BoundValue derived = derived_form_value({a, g, 1.0}, 4, FormulaSource::Gram, hp);
    EXPECT_EQ(printed.form, Form::Printed);
    EXPECT_EQ(derived.form, Form::Derived);
    EXPECT_LT(rel(printed.value, 13.772112537491610345), 1e-14);
    EXPECT_LT(rel(derived.value, 10.718445660611352587), 1e-14);
    EXPECT_LT(rel(branch_bound(a, g, hp, {Side::DoubleHolder, Side::MaxAll}).value, 10.718445660611352587), 1e-14);
}

TEST(PrintedForms, BombieriBranchesFourAndSixWorkedValues) {
    // a = |(x, y_i)| = (1, 2), ||x|| = 1; mpmath at 50 digits.
    const CVector a{1.0, 2.0};
    const GramData g = half2();
    const HolderParams hp4 = HolderParams::make(3.0, 2.0);
    EXPECT_LT(rel(printed_form_value({a, g, 1.0}, 4, FormulaSource::Bombieri, hp4).value, 4.4160942931795439719),
              1e-14);
    EXPECT_LT(rel(derived_form_value({a, g, 1.0}, 4, FormulaSource::Bombieri, hp4).value, 3.2739037341698598861),
              1e-14);
    EXPECT_LT(rel(printed_form_value({a, g, 1.0}, 6, FormulaSource::Bombieri, hp4).value, 2.6865761845027726832),
              1e-14);
    EXPECT_LT(rel(derived_form_value({a, g, 1.0}, 6, FormulaSource::Bombieri, hp4).value, 2.874403306307475287),
              1e-14);
}

TEST(PrintedForms, PrefactorsBySource) {
    const CVector a{1.0, 2.0};
    const GramData g = half2();
    const HolderParams hp = HolderParams::make(3.0);
    const double base = printed_form_value({a, g, 1.0}, 1, FormulaSource::Gram, hp).value;
    EXPECT_DOUBLE_EQ(printed_form_value({a, g, 4.0}, 1, FormulaSource::Pecaric, hp).value, 4.0 * base);
    EXPECT_DOUBLE_EQ(std::pow(printed_form_value({a, g, 4.0}, 1, FormulaSource::Bombieri, hp).value, 2),
                     4.0 * base);
}
