#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ipbounds/bounds.hpp"
#include "ipbounds/exponents.hpp"
#include "ipbounds/instance.hpp"

namespace ipbounds {

/// What is minimized over the free exponents.
///   Holder:        (sum |c|^p r)^(1/p) (sum |c|^q r)^(1/q), coefficients c as alpha
///   Branch:        one DERIVED branch (config.branch) with alpha = c
///   Pecaric:       ||x||^2 holder(conj c), or a branch when config.branch is set
///   Bombieri:      the square-rooted chain middle, or a branch when config.branch is set
///   BombieriRatio: ||x|| ((sum a^p)^(1/p) (sum a^q)^(1/q) max r)^(1/2), a = |(x, y_i)|
enum class Target { Holder, Branch, Pecaric, Bombieri, BombieriRatio };

/// BestOfAll minimizes over all nine branches (Branch, Pecaric, Bombieri targets).
enum class Scope { SingleBranch, BestOfAll };

std::string to_string(Target target);
Target target_from_string(const std::string& name);

/// `points` values log-spaced over [lo, hi], both ends included.
std::vector<double> log_grid(std::size_t points, double lo = kPairLow, double hi = kMaxExponent);

struct OptimConfig {
    std::vector<double> p_grid = log_grid(40);
    std::vector<double> secondary_grid = log_grid(20);
    int refine_iters = 32;
    Target target = Target::Holder;
    int branch = 0;
    Scope scope = Scope::SingleBranch;
    Execution execution = Execution::Parallel;
};

std::vector<std::string> validate(const OptimConfig& config);

struct OptimResult {
    double best_value = 0.0;
    HolderParams best_params;
    std::optional<BranchSelector> best_branch;
    std::size_t evaluations = 0;
    std::size_t skipped = 0;
    double lhs = 0.0;
    double tightness = 0.0;

    [[nodiscard]] double skipped_fraction() const {
        return evaluations == 0 ? 0.0 : static_cast<double>(skipped) / static_cast<double>(evaluations);
    }
    /// More than 1% of the evaluated points overflowed.
    [[nodiscard]] bool flagged() const { return skipped_fraction() > 0.01; }

    friend bool operator==(const OptimResult&, const OptimResult&) = default;
};

/// Relative tolerance under which two objective values count as tied.
inline constexpr double kTieTolerance = 1e-12;

/// The baseline p = alpha = gamma = 2 point is evaluated first and wins ties;
/// then the grid over the active coordinates (lexicographic, p slowest); then
/// refine_iters golden-section steps per active coordinate between the grid
/// neighbours of the incumbent. A candidate replaces the incumbent only if it
/// is lower by more than kTieTolerance, or tied with a lower branch index.
OptimResult optimize(const Instance& instance, const OptimConfig& config);

/// Plain scan over `points` log-spaced p values (times the secondary grid for
/// active secondary exponents), no baseline and no refinement.
OptimResult dense_scan(const Instance& instance, const OptimConfig& config, std::size_t points = 400);

/// Objective at one parameter point. Non-finite values are returned as-is.
/// `branch_out` receives the minimizing branch for BestOfAll or the fixed branch.
double objective(const Instance& instance, const OptimConfig& config, const HolderParams& params,
                 std::optional<BranchSelector>* branch_out = nullptr);

/// Left-hand side the target bounds.
double target_lhs(const Instance& instance, const OptimConfig& config);

/// Smallest DERIVED branch value with alpha = c; ties go to the lowest index.
/// params must carry both secondary pairs.
std::pair<BranchSelector, BoundValue> best_branch(const Instance& instance, const HolderParams& params);

}  // namespace ipbounds
