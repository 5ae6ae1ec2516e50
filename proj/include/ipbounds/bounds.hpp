#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ipbounds/exponents.hpp"
#include "ipbounds/gram.hpp"

namespace ipbounds {

enum class Form { Derived, Printed };

std::string to_string(Form form);

struct BoundValue {
    std::string name;
    int branch = 0;  // 1..9 for branch bounds, 0 otherwise
    HolderParams params;
    Form form = Form::Derived;
    double value = 0.0;
};

/// lhs <= middle <= each branch value, for the DERIVED forms.
struct BoundChain {
    double lhs = 0.0;
    std::optional<double> middle;
    std::vector<BoundValue> branches;
    std::vector<BoundValue> classical;
};

/// Relative slack tolerance with an absolute floor: a bound passes when
/// bound >= lhs - slack_tolerance(bound).
inline double slack_tolerance(double bound) {
    const double rel = 1e-9 * (bound < 0 ? -bound : bound);
    return rel > 1e-12 ? rel : 1e-12;
}

/// Real part of sum_ij a_i conj(a_j) G_ij, i.e. ||sum a_i z_i||^2 for a Gram
/// matrix built from coordinates. Throws InputError if the imaginary part
/// exceeds 1e-9 relative to the absolute double sum.
double norm_squared_expansion(std::span<const Complex> alphas, const GramData& gram);

/// M = sum_ij |a_i| |a_j| |G_ij|.
double double_sum(std::span<const Complex> alphas, const GramData& gram);

/// sum_i a_i^t r_i with 0^t = 0. Throws std::domain_error for t <= 0.
double weighted_power_sum(std::span<const double> abs_alphas, double t, std::span<const double> weights);

/// (sum |a_i|^p r_i)^(1/p) (sum |a_i|^q r_i)^(1/q).
double holder_bound(std::span<const Complex> alphas, const GramData& gram, const ConjugatePair& pq);

/// Majorizations of (sum |a_i|^p r_i)^(1/p):
///   MaxAll:       max|a_i| S^(1/p)
///   DoubleHolder: (sum |a_i|^(alpha p))^(1/(alpha p)) (sum r_i^beta)^(1/(beta p))
///   MaxRow:       (sum |a_i|^p)^(1/p) (max r_i)^(1/p)
double factor_p(std::span<const Complex> alphas, const GramData& gram, const HolderParams& params, Side side);

/// Mirror of factor_p with p -> q and (alpha, beta) -> (gamma, delta).
double factor_q(std::span<const Complex> alphas, const GramData& gram, const HolderParams& params, Side side);

/// factor_p * factor_q for the selected sides. Requires validate(params, branch) to pass.
BoundValue branch_bound(std::span<const Complex> alphas, const GramData& gram, const HolderParams& params,
                        const BranchSelector& branch);

/// |sum c_i (x, y_i)|^2.
double lhs_pecaric(const ProjectionData& proj, std::span<const Complex> c);

struct PecaricBounds {
    double row_weighted = 0.0;  // ||x||^2 sum |c_i|^2 r_i
    double max_row = 0.0;       // ||x||^2 (sum |c_i|^2) max r_i
};
PecaricBounds pecaric_bound(const ProjectionData& proj, std::span<const Complex> c, const GramData& gram);

struct PecaricSelf {
    double lhs = 0.0;  // (sum |(x,y_i)|^2)^2
    double row_weighted = 0.0;
    double max_row = 0.0;
};
/// Pecaric's bound with c_i = conj((x, y_i)).
PecaricSelf pecaric_self(const ProjectionData& proj, const GramData& gram);

struct BombieriBound {
    double lhs = 0.0;    // sum |(x,y_i)|^2
    double bound = 0.0;  // ||x||^2 max r_i
};
BombieriBound bombieri_bound(const ProjectionData& proj, const GramData& gram);

/// |sum c_i (x,y_i)|^2 <= ||x||^2 holder(conj c) <= ||x||^2 branch(conj c).
/// With no branch given all nine are evaluated and params must carry both
/// secondary pairs; superfluous pairs are dropped per branch.
BoundChain pecaric_type_chain(const ProjectionData& proj, std::span<const Complex> c, const GramData& gram,
                              const HolderParams& params, std::optional<BranchSelector> branch = {});

/// The square-rooted chain with c_i = conj((x, y_i)):
/// sum |(x,y_i)|^2 <= ||x|| [sum a^p r]^(1/(2p)) [sum a^q r]^(1/(2q)) <= branches.
BoundChain bombieri_type_chain(const ProjectionData& proj, const GramData& gram, const HolderParams& params,
                               std::optional<BranchSelector> branch = {});

struct RatioBound {
    double ratio_lhs = 0.0;  // (sum a^2)^2 / ((sum a^p)^(1/p) (sum a^q)^(1/q)); 0 when a = 0
    double bound = 0.0;      // ||x||^2 max r_i
};
RatioBound bombieri_ratio(const ProjectionData& proj, const GramData& gram, const ConjugatePair& pq);

}  // namespace ipbounds
