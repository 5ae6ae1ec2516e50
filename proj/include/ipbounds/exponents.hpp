#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipbounds {

/// Numeric domain for every Hoelder exponent. Both members of a conjugate
/// pair must lie in [kMinExponent, kMaxExponent], so p itself is confined to
/// [kMaxExponent / (kMaxExponent - 1), kMaxExponent].
inline constexpr double kMinExponent = 1.01;
inline constexpr double kMaxExponent = 100.0;
inline constexpr double kPairLow = kMaxExponent / (kMaxExponent - 1.0);

/// q = p / (p - 1). Throws std::domain_error for p <= 1 or non-finite p.
double conjugate(double p);

struct ConjugatePair {
    double p = 2.0;
    double q = 2.0;

    /// Throws std::domain_error when p or its conjugate leaves the domain.
    static ConjugatePair from(double p);

    friend bool operator==(const ConjugatePair&, const ConjugatePair&) = default;
};

/// How one Hoelder factor is majorized.
enum class Side { MaxAll = 0, DoubleHolder = 1, MaxRow = 2 };

struct BranchSelector {
    Side p_side = Side::MaxAll;
    Side q_side = Side::MaxAll;

    /// 1..9 in the order (MaxAll, MaxAll), (MaxAll, DoubleHolder), ..., (MaxRow, MaxRow).
    [[nodiscard]] int index() const noexcept {
        return 3 * static_cast<int>(p_side) + static_cast<int>(q_side) + 1;
    }
    static BranchSelector from_index(int index);
    static std::array<BranchSelector, 9> all();

    friend bool operator==(const BranchSelector&, const BranchSelector&) = default;
};

std::string to_string(Side side);

/// (p, q) plus the secondary pairs (alpha, beta) for the p-side split and
/// (gamma, delta) for the q-side split.
struct HolderParams {
    ConjugatePair pq;
    std::optional<ConjugatePair> ab;
    std::optional<ConjugatePair> gd;

    static HolderParams make(double p, std::optional<double> alpha = {}, std::optional<double> gamma = {});

    friend bool operator==(const HolderParams&, const HolderParams&) = default;
};

/// Empty result means valid. Reports every violation: missing or superfluous
/// secondary pairs, pairs that are not conjugate, pairs outside the domain.
std::vector<std::string> validate(const HolderParams& params, const BranchSelector& branch);

/// Same checks without the branch requirements (only pair validity).
std::vector<std::string> validate_pairs(const HolderParams& params);

/// Keeps only the secondary pairs the branch uses. Throws std::invalid_argument
/// if a needed pair is absent.
HolderParams restrict_to(const HolderParams& params, const BranchSelector& branch);

void require_valid(const HolderParams& params, const BranchSelector& branch);

}  // namespace ipbounds
