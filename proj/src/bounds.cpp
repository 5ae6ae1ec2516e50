#include "ipbounds/bounds.hpp"

#include <cmath>
#include <stdexcept>

#include "ipbounds/summation.hpp"
#include "powers.hpp"

namespace ipbounds {

using detail::magnitudes;
using detail::max_of;
using detail::pow_nonneg;
using detail::power_norm;

namespace {

void require_length(std::size_t got, const GramData& gram, const char* what) {
    if (got != gram.size()) {
        throw InputError(std::string(what) + " has length " + std::to_string(got) + " but the family has " +
                         std::to_string(gram.size()) + " vectors");
    }
}

double sum_of_squares(std::span<const double> a) {
    CompensatedSum s;
    for (double x : a) s.add(x * x);
    return s.value();
}

double side_factor(std::span<const double> a, const GramData& gram, double e,
                   const std::optional<ConjugatePair>& split, Side side, const char* split_name) {
    switch (side) {
        case Side::MaxAll:
            return max_of(a) * pow_nonneg(gram.total_abs_sum, 1.0 / e);
        case Side::DoubleHolder: {
            if (!split) throw std::invalid_argument(std::string(split_name) + " required");
            const double row_norm = power_norm(gram.abs_row_sums, split->q);
            return power_norm(a, split->p * e) * pow_nonneg(row_norm, 1.0 / e);
        }
        case Side::MaxRow:
            return power_norm(a, e) * pow_nonneg(gram.max_row_sum(), 1.0 / e);
    }
    throw std::invalid_argument("unknown side");
}

double branch_value(std::span<const double> a, const GramData& gram, const HolderParams& params,
                    const BranchSelector& branch) {
    return side_factor(a, gram, params.pq.p, params.ab, branch.p_side, "ab") *
           side_factor(a, gram, params.pq.q, params.gd, branch.q_side, "gd");
}

CVector conjugated(std::span<const Complex> c) {
    CVector out(c.begin(), c.end());
    for (auto& z : out) z = std::conj(z);
    return out;
}

std::vector<BranchSelector> requested(std::optional<BranchSelector> branch) {
    if (branch) return {*branch};
    const auto all = BranchSelector::all();
    return {all.begin(), all.end()};
}

}  // namespace

std::string to_string(Form form) { return form == Form::Derived ? "derived" : "printed"; }

double norm_squared_expansion(std::span<const Complex> alphas, const GramData& gram) {
    require_length(alphas.size(), gram, "coefficient vector");
    CompensatedComplexSum acc;
    CompensatedSum scale;
    const std::size_t n = gram.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            acc.add(alphas[i] * std::conj(alphas[j]) * gram.g(i, j));
            scale.add(std::abs(alphas[i]) * std::abs(alphas[j]) * std::abs(gram.g(i, j)));
        }
    }
    const Complex total = acc.value();
    if (std::abs(total.imag()) > 1e-9 * scale.value() + 1e-300) {
        throw InputError("norm expansion has a non-vanishing imaginary part; the Gram data is not Hermitian");
    }
    return total.real();
}

double double_sum(std::span<const Complex> alphas, const GramData& gram) {
    require_length(alphas.size(), gram, "coefficient vector");
    const auto a = magnitudes(alphas);
    CompensatedSum acc;
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < a.size(); ++j) acc.add(a[i] * a[j] * std::abs(gram.g(i, j)));
    }
    return acc.value();
}

double weighted_power_sum(std::span<const double> abs_alphas, double t, std::span<const double> weights) {
    if (!(t > 0.0)) throw std::domain_error("power sum exponent must be positive");
    if (abs_alphas.size() != weights.size()) throw InputError("power sum length mismatch");
    CompensatedSum acc;
    for (std::size_t i = 0; i < abs_alphas.size(); ++i) {
        if (abs_alphas[i] < 0.0 || weights[i] < 0.0) throw InputError("power sum inputs must be nonnegative");
        acc.add(pow_nonneg(abs_alphas[i], t) * weights[i]);
    }
    return acc.value();
}

double holder_bound(std::span<const Complex> alphas, const GramData& gram, const ConjugatePair& pq) {
    require_length(alphas.size(), gram, "coefficient vector");
    const auto a = magnitudes(alphas);
    return power_norm(a, pq.p, gram.abs_row_sums) * power_norm(a, pq.q, gram.abs_row_sums);
}

double factor_p(std::span<const Complex> alphas, const GramData& gram, const HolderParams& params, Side side) {
    require_length(alphas.size(), gram, "coefficient vector");
    return side_factor(magnitudes(alphas), gram, params.pq.p, params.ab, side, "ab");
}

double factor_q(std::span<const Complex> alphas, const GramData& gram, const HolderParams& params, Side side) {
    require_length(alphas.size(), gram, "coefficient vector");
    return side_factor(magnitudes(alphas), gram, params.pq.q, params.gd, side, "gd");
}

BoundValue branch_bound(std::span<const Complex> alphas, const GramData& gram, const HolderParams& params,
                        const BranchSelector& branch) {
    require_valid(params, branch);
    require_length(alphas.size(), gram, "coefficient vector");
    return {"branch", branch.index(), params, Form::Derived, branch_value(magnitudes(alphas), gram, params, branch)};
}

double lhs_pecaric(const ProjectionData& proj, std::span<const Complex> c) {
    if (c.size() != proj.proj.size()) throw InputError("coefficient vector and projections differ in length");
    CompensatedComplexSum acc;
    for (std::size_t i = 0; i < c.size(); ++i) acc.add(c[i] * proj.proj[i]);
    return std::norm(acc.value());
}

PecaricBounds pecaric_bound(const ProjectionData& proj, std::span<const Complex> c, const GramData& gram) {
    require_length(c.size(), gram, "coefficient vector");
    const auto a = magnitudes(c);
    CompensatedSum weighted;
    for (std::size_t i = 0; i < a.size(); ++i) weighted.add(a[i] * a[i] * gram.abs_row_sums[i]);
    return {proj.norm_x_sq * weighted.value(), proj.norm_x_sq * sum_of_squares(a) * gram.max_row_sum()};
}

PecaricSelf pecaric_self(const ProjectionData& proj, const GramData& gram) {
    const CVector c = conjugated(proj.proj);
    const auto bounds = pecaric_bound(proj, c, gram);
    const double s = sum_of_squares(magnitudes(proj.proj));
    return {s * s, bounds.row_weighted, bounds.max_row};
}

BombieriBound bombieri_bound(const ProjectionData& proj, const GramData& gram) {
    require_length(proj.proj.size(), gram, "projection vector");
    return {sum_of_squares(magnitudes(proj.proj)), proj.norm_x_sq * gram.max_row_sum()};
}

BoundChain pecaric_type_chain(const ProjectionData& proj, std::span<const Complex> c, const GramData& gram,
                              const HolderParams& params, std::optional<BranchSelector> branch) {
    require_length(c.size(), gram, "coefficient vector");
    const CVector alphas = conjugated(c);
    const auto a = magnitudes(alphas);

    BoundChain chain;
    chain.lhs = lhs_pecaric(proj, c);
    chain.middle = proj.norm_x_sq * holder_bound(alphas, gram, params.pq);
    for (const auto& sel : requested(branch)) {
        const HolderParams used = restrict_to(params, sel);
        require_valid(used, sel);
        chain.branches.push_back({"pecaric_branch", sel.index(), used, Form::Derived,
                                  proj.norm_x_sq * branch_value(a, gram, used, sel)});
    }
    const auto classical = pecaric_bound(proj, c, gram);
    chain.classical.push_back({"pecaric", 0, {}, Form::Derived, classical.row_weighted});
    chain.classical.push_back({"pecaric_max_row", 0, {}, Form::Derived, classical.max_row});
    return chain;
}

BoundChain bombieri_type_chain(const ProjectionData& proj, const GramData& gram, const HolderParams& params,
                               std::optional<BranchSelector> branch) {
    require_length(proj.proj.size(), gram, "projection vector");
    const CVector c = conjugated(proj.proj);
    const BoundChain squared = pecaric_type_chain(proj, c, gram, params, branch);
    const auto a = magnitudes(proj.proj);

    BoundChain chain;
    chain.lhs = sum_of_squares(a);
    chain.middle = std::sqrt(proj.norm_x_sq) * std::sqrt(power_norm(a, params.pq.p, gram.abs_row_sums)) *
                   std::sqrt(power_norm(a, params.pq.q, gram.abs_row_sums));
    for (const auto& b : squared.branches) {
        chain.branches.push_back({"bombieri_branch", b.branch, b.params, Form::Derived, std::sqrt(b.value)});
    }
    const auto classical = bombieri_bound(proj, gram);
    chain.classical.push_back({"bombieri", 0, {}, Form::Derived, classical.bound});
    const auto ratio = bombieri_ratio(proj, gram, params.pq);
    chain.classical.push_back({"bombieri_ratio", 0, {params.pq, {}, {}}, Form::Derived, ratio.bound});
    return chain;
}

RatioBound bombieri_ratio(const ProjectionData& proj, const GramData& gram, const ConjugatePair& pq) {
    require_length(proj.proj.size(), gram, "projection vector");
    const auto a = magnitudes(proj.proj);
    RatioBound out;
    out.bound = proj.norm_x_sq * gram.max_row_sum();
    const double denom = power_norm(a, pq.p) * power_norm(a, pq.q);
    if (denom > 0.0) {
        const double s = sum_of_squares(a);
        out.ratio_lhs = s * s / denom;
    }
    return out;
}

}  // namespace ipbounds
