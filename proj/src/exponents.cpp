#include "ipbounds/exponents.hpp"

#include <cmath>
#include <sstream>

namespace ipbounds {

namespace {

constexpr double kConjugacyTol = 1e-12;
constexpr double kDomainSlack = 1e-12;

void check_pair(const ConjugatePair& pair, const char* name, std::vector<std::string>& errors) {
    if (!std::isfinite(pair.p) || !std::isfinite(pair.q)) {
        errors.push_back(std::string(name) + " pair is not finite");
        return;
    }
    if (pair.p <= 1.0 || pair.q <= 1.0) {
        std::ostringstream msg;
        msg << name << " pair (" << pair.p << ", " << pair.q << ") must have both exponents > 1";
        errors.push_back(msg.str());
        return;
    }
    if (std::abs(1.0 / pair.p + 1.0 / pair.q - 1.0) > kConjugacyTol) {
        std::ostringstream msg;
        msg << name << " pair (" << pair.p << ", " << pair.q << ") is not conjugate";
        errors.push_back(msg.str());
    }
    for (double e : {pair.p, pair.q}) {
        if (e < kMinExponent - kDomainSlack || e > kMaxExponent + kDomainSlack) {
            std::ostringstream msg;
            msg << name << " exponent " << e << " outside [" << kMinExponent << ", " << kMaxExponent << "]";
            errors.push_back(msg.str());
        }
    }
}

}  // namespace

double conjugate(double p) {
    if (!std::isfinite(p) || p <= 1.0) throw std::domain_error("conjugate exponent needs finite p > 1");
    return p / (p - 1.0);
}

ConjugatePair ConjugatePair::from(double p) {
    const ConjugatePair pair{p, conjugate(p)};
    std::vector<std::string> errors;
    check_pair(pair, "exponent", errors);
    if (!errors.empty()) throw std::domain_error(errors.front());
    return pair;
}

BranchSelector BranchSelector::from_index(int index) {
    if (index < 1 || index > 9) throw std::invalid_argument("branch index must be in 1..9");
    return {static_cast<Side>((index - 1) / 3), static_cast<Side>((index - 1) % 3)};
}

std::array<BranchSelector, 9> BranchSelector::all() {
    std::array<BranchSelector, 9> out;
    for (int k = 1; k <= 9; ++k) out[k - 1] = from_index(k);
    return out;
}

std::string to_string(Side side) {
    switch (side) {
        case Side::MaxAll: return "max_all";
        case Side::DoubleHolder: return "double_holder";
        case Side::MaxRow: return "max_row";
    }
    return "?";
}

HolderParams HolderParams::make(double p, std::optional<double> alpha, std::optional<double> gamma) {
    HolderParams out;
    out.pq = ConjugatePair::from(p);
    if (alpha) out.ab = ConjugatePair::from(*alpha);
    if (gamma) out.gd = ConjugatePair::from(*gamma);
    return out;
}

std::vector<std::string> validate_pairs(const HolderParams& params) {
    std::vector<std::string> errors;
    check_pair(params.pq, "pq", errors);
    if (params.ab) check_pair(*params.ab, "ab", errors);
    if (params.gd) check_pair(*params.gd, "gd", errors);
    return errors;
}

std::vector<std::string> validate(const HolderParams& params, const BranchSelector& branch) {
    std::vector<std::string> errors = validate_pairs(params);
    const bool need_ab = branch.p_side == Side::DoubleHolder;
    const bool need_gd = branch.q_side == Side::DoubleHolder;
    if (need_ab && !params.ab) errors.emplace_back("ab required");
    if (!need_ab && params.ab) errors.emplace_back("ab superfluous for this branch");
    if (need_gd && !params.gd) errors.emplace_back("gd required");
    if (!need_gd && params.gd) errors.emplace_back("gd superfluous for this branch");
    return errors;
}

HolderParams restrict_to(const HolderParams& params, const BranchSelector& branch) {
    HolderParams out{params.pq, std::nullopt, std::nullopt};
    if (branch.p_side == Side::DoubleHolder) {
        if (!params.ab) throw std::invalid_argument("ab required");
        out.ab = params.ab;
    }
    if (branch.q_side == Side::DoubleHolder) {
        if (!params.gd) throw std::invalid_argument("gd required");
        out.gd = params.gd;
    }
    return out;
}

void require_valid(const HolderParams& params, const BranchSelector& branch) {
    const auto errors = validate(params, branch);
    if (errors.empty()) return;
    std::string msg = "invalid Hoelder parameters for branch " + std::to_string(branch.index()) + ":";
    for (const auto& e : errors) msg += " " + e + ";";
    throw std::invalid_argument(msg);
}

}  // namespace ipbounds
