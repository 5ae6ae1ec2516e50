#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ipbounds/bounds.hpp"
#include "ipbounds/exponents.hpp"
#include "ipbounds/formula.hpp"
#include "ipbounds/instance.hpp"

namespace ipbounds {

enum class EntryDistribution { UnitDisk, Gaussian, Sparse };

std::string to_string(EntryDistribution d);
EntryDistribution distribution_from_string(const std::string& name);

struct FuzzConfig {
    std::uint64_t seed = 1;
    std::size_t instances = 10000;
    int n_min = 1;
    int n_max = 8;
    int d_min = 1;
    int d_max = 8;
    EntryDistribution distribution = EntryDistribution::UnitDisk;
    double sparse_density = 0.3;
    std::size_t pq_samples = 5;
    /// Odd indices become random Hermitian (generally indefinite) Gram-direct probes.
    bool include_gram_direct = false;
    Execution execution = Execution::Parallel;
    /// Test-only fault injection: every DERIVED branch value is multiplied by this.
    double fault_scale = 1.0;
};

std::vector<std::string> validate(const FuzzConfig& config);

/// Deterministic in (config.seed, index); independent of every other index.
Instance random_instance(const FuzzConfig& config, std::uint64_t index);

/// config.pq_samples parameter sets for an instance. The first is always
/// p = alpha = gamma = 2; the rest draw each exponent as 1 + 10^u with u
/// uniform so that both members of every pair stay inside the domain.
std::vector<HolderParams> random_params(const FuzzConfig& config, std::uint64_t index);

/// Stable identifiers of the inequality links checked per instance.
std::size_t link_count();
const std::string& link_name(std::size_t link);

struct Check {
    std::size_t link = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool pass = true;
};

struct Tightness {
    std::size_t bound = 0;  // index into tightness_name()
    double ratio = 0.0;     // bound / lhs
};

std::size_t tightness_count();
const std::string& tightness_name(std::size_t bound);

struct ChainReport {
    std::uint64_t instance_id = 0;
    std::vector<Check> checks;
    std::vector<Tightness> tightness;
    double min_slack = 0.0;

    [[nodiscard]] bool all_pass() const;
};

/// Evaluates the Gram-form chain, the Pecaric- and Bombieri-type chains and
/// the classical bounds for one instance. Links whose left side needs a real
/// inner product space are skipped for Gram-direct instances. params must
/// carry both secondary pairs. Failures are recorded, never thrown.
ChainReport check_chain(const Instance& instance, const HolderParams& params, std::uint64_t instance_id = 0,
                        double fault_scale = 1.0);

struct LinkStats {
    std::string name;
    std::size_t checks = 0;
    std::size_t violations = 0;
    double min_slack = 0.0;
    double min_relative_slack = 0.0;
    std::uint64_t worst_instance = 0;
};

struct TightnessStats {
    std::string bound;
    std::size_t count = 0;
    double min = 0.0;
    double q05 = 0.0;
    double median = 0.0;
    double q95 = 0.0;
    double max = 0.0;
};

struct Violation {
    std::uint64_t instance_id = 0;
    std::size_t param_index = 0;
    std::string link;
    double lhs = 0.0;
    double rhs = 0.0;
};

struct FuzzSummary {
    std::uint64_t seed = 0;
    std::size_t instances = 0;
    std::size_t total_checks = 0;
    std::size_t violations = 0;
    std::vector<LinkStats> links;
    std::vector<TightnessStats> tightness;
    std::vector<Violation> first_violations;  // at most 20, in instance order
};

/// Serial reference implementation; fuzz() with Execution::Parallel must match it exactly.
FuzzSummary fuzz_serial(const FuzzConfig& config);
FuzzSummary fuzz(const FuzzConfig& config);

struct AuditCounterexample {
    std::uint64_t instance_id = 0;
    std::size_t param_index = 0;
    FormulaSource source = FormulaSource::Gram;
    int branch = 1;
    Instance instance;
    HolderParams params;
    double printed = 0.0;
    double derived = 0.0;
    double middle = 0.0;
};

struct AuditRow {
    FormulaSource source = FormulaSource::Gram;
    int branch = 1;
    bool coincides = false;  // printed and derived formulas are symbolically identical
    std::string printed_formula;
    std::string derived_formula;
    std::size_t checks = 0;
    std::size_t violations_vs_middle = 0;
    std::size_t violations_vs_lhs = 0;
    std::size_t derived_violations = 0;
    double worst_relative_gap = 0.0;  // min (printed - middle) / middle
    std::optional<AuditCounterexample> worst;
};

struct AuditReport {
    std::uint64_t seed = 0;
    std::size_t instances = 0;
    std::vector<AuditRow> rows;  // 27 rows: sources x branches 1..9
};

struct AuditValues {
    double printed = 0.0;
    double derived = 0.0;
    double middle = 0.0;
    std::optional<double> lhs;  // only for coordinate-form instances
};

/// Printed, derived and middle values of one (source, branch) on one instance.
AuditValues audit_values(const Instance& instance, const HolderParams& params, FormulaSource source, int branch);

AuditReport audit_printed_forms_serial(const FuzzConfig& config);
AuditReport audit_printed_forms(const FuzzConfig& config);

}  // namespace ipbounds
