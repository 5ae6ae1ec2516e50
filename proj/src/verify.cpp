#include "ipbounds/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ipbounds/random.hpp"

namespace ipbounds {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr std::size_t kBlock = 256;
constexpr std::size_t kMaxRecordedViolations = 20;

struct Catalogs {
    std::vector<std::string> links;
    std::vector<std::string> bounds;
};

const Catalogs& catalogs() {
    static const Catalogs c = [] {
        Catalogs out;
        auto& l = out.links;
        l.emplace_back("gram.expansion<=double_sum");
        l.emplace_back("gram.double_sum<=holder");
        for (int k = 1; k <= 9; ++k) l.push_back("gram.holder<=branch_" + std::to_string(k));
        for (const char* side : {"p", "q"}) {
            for (Side s : {Side::MaxAll, Side::DoubleHolder, Side::MaxRow}) {
                l.push_back(std::string("gram.") + side + "_factor<=" + to_string(s));
            }
        }
        l.emplace_back("pecaric.lhs<=schwarz");
        l.emplace_back("pecaric.schwarz<=holder");
        for (int k = 1; k <= 9; ++k) l.push_back("pecaric.holder<=branch_" + std::to_string(k));
        l.emplace_back("bombieri.lhs<=holder");
        for (int k = 1; k <= 9; ++k) l.push_back("bombieri.holder<=branch_" + std::to_string(k));
        l.emplace_back("pecaric.lhs<=row_weighted");
        l.emplace_back("pecaric.row_weighted<=max_row");
        l.emplace_back("pecaric_self.lhs<=row_weighted");
        l.emplace_back("pecaric_self.row_weighted<=max_row");
        l.emplace_back("bombieri.lhs<=max_row");
        l.emplace_back("bombieri_ratio.lhs<=bound");
        l.emplace_back("bessel.lhs<=norm");

        auto& b = out.bounds;
        b.emplace_back("gram.holder");
        for (int k = 1; k <= 9; ++k) b.push_back("gram.branch_" + std::to_string(k));
        b.emplace_back("pecaric.holder");
        for (int k = 1; k <= 9; ++k) b.push_back("pecaric.branch_" + std::to_string(k));
        b.emplace_back("bombieri.holder");
        for (int k = 1; k <= 9; ++k) b.push_back("bombieri.branch_" + std::to_string(k));
        for (const char* name : {"pecaric", "pecaric_max_row", "pecaric_self", "pecaric_self_max_row", "bombieri",
                                 "bombieri_ratio"}) {
            b.emplace_back(name);
        }
        return out;
    }();
    return c;
}

std::size_t link_id(const std::string& name) {
    const auto& l = catalogs().links;
    return static_cast<std::size_t>(std::find(l.begin(), l.end(), name) - l.begin());
}

std::size_t bound_id(const std::string& name) {
    const auto& b = catalogs().bounds;
    return static_cast<std::size_t>(std::find(b.begin(), b.end(), name) - b.begin());
}

Complex draw_entry(Rng& rng, const FuzzConfig& config) {
    switch (config.distribution) {
        case EntryDistribution::UnitDisk: return rng.unit_disk();
        case EntryDistribution::Gaussian: return rng.complex_normal();
        case EntryDistribution::Sparse: {
            const bool nonzero = rng.uniform() < config.sparse_density;
            const Complex z = rng.unit_disk();
            return nonzero ? z : Complex{};
        }
    }
    return {};
}

CVector draw_vector(Rng& rng, const FuzzConfig& config, std::size_t len) {
    CVector v(len);
    for (auto& z : v) z = draw_entry(rng, config);
    return v;
}

CVector conjugated(const CVector& v) {
    CVector out = v;
    for (auto& z : out) z = std::conj(z);
    return out;
}

class ChainBuilder {
public:
    ChainBuilder(ChainReport& report, double fault_scale) : report_(report), fault_(fault_scale) {}

    void link(const std::string& name, double lhs, double rhs) {
        const double slack = rhs - lhs;
        report_.checks.push_back({link_id(name), lhs, rhs, slack, slack >= -slack_tolerance(rhs)});
    }

    void ratio(const std::string& name, double bound, double lhs) {
        if (lhs > 1e-300 && std::isfinite(bound)) report_.tightness.push_back({bound_id(name), bound / lhs});
    }

    double branch(double v) const { return fault_ * v; }

private:
    ChainReport& report_;
    double fault_;
};

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return kNaN;
    auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
    rank = std::clamp<std::size_t>(rank, 1, sorted.size());
    return sorted[rank - 1];
}

/// Runs `work(index)` for each index of a block, serially or with OpenMP.
template <typename Result, typename Work>
std::vector<Result> run_block(std::size_t begin, std::size_t end, Execution execution, Work&& work) {
    std::vector<Result> out(end - begin);
    const auto count = static_cast<std::ptrdiff_t>(end - begin);
    if (execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
        for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = work(begin + static_cast<std::size_t>(i));
    } else {
        for (std::ptrdiff_t i = 0; i < count; ++i) out[i] = work(begin + static_cast<std::size_t>(i));
    }
    return out;
}

void require_valid(const FuzzConfig& config) {
    const auto errors = validate(config);
    if (errors.empty()) return;
    std::string msg = "invalid fuzz config:";
    for (const auto& e : errors) msg += " " + e + ";";
    throw std::invalid_argument(msg);
}

FuzzSummary run_fuzz(const FuzzConfig& config, Execution execution) {
    require_valid(config);
    const auto& cat = catalogs();
    FuzzSummary summary;
    summary.seed = config.seed;
    summary.instances = config.instances;
    summary.links.resize(cat.links.size());
    for (std::size_t i = 0; i < cat.links.size(); ++i) {
        summary.links[i].name = cat.links[i];
        summary.links[i].min_slack = kNaN;
        summary.links[i].min_relative_slack = kNaN;
    }
    std::vector<std::vector<double>> ratios(cat.bounds.size());

    for (std::size_t begin = 0; begin < config.instances; begin += kBlock) {
        const std::size_t end = std::min(config.instances, begin + kBlock);
        const auto reports = run_block<std::vector<ChainReport>>(begin, end, execution, [&](std::size_t index) {
            const Instance instance = random_instance(config, index);
            std::vector<ChainReport> out;
            for (const auto& params : random_params(config, index)) {
                out.push_back(check_chain(instance, params, index, config.fault_scale));
            }
            return out;
        });
        for (const auto& per_instance : reports) {
            for (std::size_t j = 0; j < per_instance.size(); ++j) {
                const ChainReport& r = per_instance[j];
                for (const Check& c : r.checks) {
                    LinkStats& s = summary.links[c.link];
                    ++s.checks;
                    ++summary.total_checks;
                    if (!c.pass) {
                        ++s.violations;
                        ++summary.violations;
                        if (summary.first_violations.size() < kMaxRecordedViolations) {
                            summary.first_violations.push_back({r.instance_id, j, s.name, c.lhs, c.rhs});
                        }
                    }
                    if (std::isnan(s.min_slack) || c.slack < s.min_slack) {
                        s.min_slack = c.slack;
                        s.worst_instance = r.instance_id;
                    }
                    const double rel = c.slack / std::max(std::abs(c.rhs), 1e-300);
                    if (std::isnan(s.min_relative_slack) || rel < s.min_relative_slack) s.min_relative_slack = rel;
                }
                for (const Tightness& t : r.tightness) ratios[t.bound].push_back(t.ratio);
            }
        }
    }

    for (std::size_t b = 0; b < cat.bounds.size(); ++b) {
        auto& v = ratios[b];
        std::sort(v.begin(), v.end());
        TightnessStats t;
        t.bound = cat.bounds[b];
        t.count = v.size();
        t.min = v.empty() ? kNaN : v.front();
        t.q05 = quantile(v, 0.05);
        t.median = quantile(v, 0.5);
        t.q95 = quantile(v, 0.95);
        t.max = v.empty() ? kNaN : v.back();
        summary.tightness.push_back(t);
    }
    return summary;
}

const std::array<FormulaSource, 3> kSources = {FormulaSource::Gram, FormulaSource::Pecaric,
                                               FormulaSource::Bombieri};

AuditReport run_audit(const FuzzConfig& config, Execution execution) {
    require_valid(config);
    AuditReport report;
    report.seed = config.seed;
    report.instances = config.instances;
    for (FormulaSource source : kSources) {
        for (int k = 1; k <= 9; ++k) {
            AuditRow row;
            row.source = source;
            row.branch = k;
            row.coincides = printed_formula(source, k) == derived_formula(source, k);
            row.printed_formula = printed_formula(source, k).to_string();
            row.derived_formula = derived_formula(source, k).to_string();
            row.worst_relative_gap = kNaN;
            report.rows.push_back(std::move(row));
        }
    }

    struct InstanceAudit {
        Instance instance;
        std::vector<HolderParams> params;
        std::vector<AuditValues> values;  // params x 27 rows
    };

    for (std::size_t begin = 0; begin < config.instances; begin += kBlock) {
        const std::size_t end = std::min(config.instances, begin + kBlock);
        const auto block = run_block<InstanceAudit>(begin, end, execution, [&](std::size_t index) {
            InstanceAudit out{random_instance(config, index), random_params(config, index), {}};
            for (const auto& params : out.params) {
                for (FormulaSource source : kSources) {
                    for (int k = 1; k <= 9; ++k) out.values.push_back(audit_values(out.instance, params, source, k));
                }
            }
            return out;
        });
        for (std::size_t b = 0; b < block.size(); ++b) {
            const InstanceAudit& ia = block[b];
            const std::uint64_t id = begin + b;
            for (std::size_t j = 0; j < ia.params.size(); ++j) {
                for (std::size_t r = 0; r < report.rows.size(); ++r) {
                    AuditRow& row = report.rows[r];
                    const AuditValues& v = ia.values[j * report.rows.size() + r];
                    ++row.checks;
                    const double gap = (v.printed - v.middle) / std::max(std::abs(v.middle), 1e-300);
                    const bool below_middle = v.printed < v.middle - slack_tolerance(v.middle);
                    if (v.derived < v.middle - slack_tolerance(v.middle)) ++row.derived_violations;
                    if (v.lhs && v.printed < *v.lhs - slack_tolerance(*v.lhs)) ++row.violations_vs_lhs;
                    if (std::isnan(row.worst_relative_gap) || gap < row.worst_relative_gap) {
                        row.worst_relative_gap = gap;
                    }
                    if (below_middle) {
                        ++row.violations_vs_middle;
                        const bool worse = !row.worst ||
                                           gap < (row.worst->printed - row.worst->middle) /
                                                     std::max(std::abs(row.worst->middle), 1e-300);
                        if (worse) {
                            row.worst = AuditCounterexample{id,         j,         row.source, row.branch,
                                                            ia.instance, ia.params[j], v.printed, v.derived,
                                                            v.middle};
                        }
                    }
                }
            }
        }
    }
    return report;
}

}  // namespace

std::string to_string(EntryDistribution d) {
    switch (d) {
        case EntryDistribution::UnitDisk: return "unit_disk";
        case EntryDistribution::Gaussian: return "gaussian";
        case EntryDistribution::Sparse: return "sparse";
    }
    return "?";
}

EntryDistribution distribution_from_string(const std::string& name) {
    for (auto d : {EntryDistribution::UnitDisk, EntryDistribution::Gaussian, EntryDistribution::Sparse}) {
        if (to_string(d) == name) return d;
    }
    throw std::invalid_argument("unknown entry distribution '" + name + "'");
}

std::vector<std::string> validate(const FuzzConfig& config) {
    std::vector<std::string> errors;
    if (config.n_min < 1 || config.n_max < config.n_min) errors.emplace_back("n range must be nonempty with n >= 1");
    if (config.d_min < 1 || config.d_max < config.d_min) errors.emplace_back("d range must be nonempty with d >= 1");
    if (config.pq_samples < 1) errors.emplace_back("pq_samples must be at least 1");
    if (!(config.sparse_density > 0.0 && config.sparse_density <= 1.0)) {
        errors.emplace_back("sparse density must be in (0, 1]");
    }
    return errors;
}

Instance random_instance(const FuzzConfig& config, std::uint64_t index) {
    Rng rng(config.seed, index);
    const auto n = static_cast<std::size_t>(rng.uniform_int(config.n_min, config.n_max));
    const auto d = static_cast<std::size_t>(rng.uniform_int(config.d_min, config.d_max));

    if (config.include_gram_direct && index % 2 == 1) {
        ComplexMatrix g(n);
        for (std::size_t i = 0; i < n; ++i) {
            g(i, i) = std::abs(draw_entry(rng, config));
            for (std::size_t j = i + 1; j < n; ++j) {
                g(i, j) = draw_entry(rng, config);
                g(j, i) = std::conj(g(i, j));
            }
        }
        ProjectionData proj{draw_vector(rng, config, n), 2.0 * rng.uniform()};
        CVector c = draw_vector(rng, config, n);
        return Instance::from_gram(g, std::move(proj), std::move(c));
    }

    std::vector<CVector> ys;
    ys.reserve(n);
    for (std::size_t i = 0; i < n; ++i) ys.push_back(draw_vector(rng, config, d));
    CVector x = draw_vector(rng, config, d);
    CVector c = draw_vector(rng, config, n);
    return Instance::from_coordinates(VectorFamily(std::move(ys)), std::move(x), std::move(c));
}

std::vector<HolderParams> random_params(const FuzzConfig& config, std::uint64_t index) {
    Rng rng(config.seed ^ 0x6a09e667f3bcc909ULL, index);
    const double span = std::log10(kMaxExponent - 1.0);
    auto draw = [&] { return 1.0 + std::pow(10.0, rng.uniform(-span, span)); };
    std::vector<HolderParams> out;
    out.push_back(HolderParams::make(2.0, 2.0, 2.0));
    for (std::size_t k = 1; k < config.pq_samples; ++k) {
        const double p = draw();
        const double alpha = draw();
        const double gamma = draw();
        out.push_back(HolderParams::make(p, alpha, gamma));
    }
    return out;
}

std::size_t link_count() { return catalogs().links.size(); }
const std::string& link_name(std::size_t link) { return catalogs().links.at(link); }
std::size_t tightness_count() { return catalogs().bounds.size(); }
const std::string& tightness_name(std::size_t bound) { return catalogs().bounds.at(bound); }

bool ChainReport::all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

ChainReport check_chain(const Instance& instance, const HolderParams& params, std::uint64_t instance_id,
                        double fault_scale) {
    ChainReport report;
    report.instance_id = instance_id;
    ChainBuilder b(report, fault_scale);
    const GramData& gram = instance.gram;
    const ProjectionData& proj = instance.proj;
    const CVector& c = instance.coefficients();
    const bool real_space = instance.coordinate_form();

    // Gram form with alpha = c.
    const double expansion = norm_squared_expansion(c, gram);
    const double m = double_sum(c, gram);
    const double holder = holder_bound(c, gram, params.pq);
    b.link("gram.expansion<=double_sum", expansion, m);
    b.link("gram.double_sum<=holder", m, holder);
    b.ratio("gram.holder", holder, expansion);
    for (const auto& sel : BranchSelector::all()) {
        const double v = b.branch(branch_bound(c, gram, restrict_to(params, sel), sel).value);
        b.link("gram.holder<=branch_" + std::to_string(sel.index()), holder, v);
        b.ratio("gram.branch_" + std::to_string(sel.index()), v, expansion);
    }
    {
        std::vector<double> a(c.size());
        for (std::size_t i = 0; i < c.size(); ++i) a[i] = std::abs(c[i]);
        const double wp = std::pow(weighted_power_sum(a, params.pq.p, gram.abs_row_sums), 1.0 / params.pq.p);
        const double wq = std::pow(weighted_power_sum(a, params.pq.q, gram.abs_row_sums), 1.0 / params.pq.q);
        for (Side s : {Side::MaxAll, Side::DoubleHolder, Side::MaxRow}) {
            if (std::isfinite(wp)) b.link("gram.p_factor<=" + to_string(s), wp, factor_p(c, gram, params, s));
            if (std::isfinite(wq)) b.link("gram.q_factor<=" + to_string(s), wq, factor_q(c, gram, params, s));
        }
    }

    // Pecaric type.
    const BoundChain pec = pecaric_type_chain(proj, c, gram, params);
    const double schwarz = proj.norm_x_sq * norm_squared_expansion(conjugated(c), gram);
    if (real_space) b.link("pecaric.lhs<=schwarz", pec.lhs, schwarz);
    b.link("pecaric.schwarz<=holder", schwarz, *pec.middle);
    b.ratio("pecaric.holder", *pec.middle, pec.lhs);
    for (const auto& br : pec.branches) {
        const double v = b.branch(br.value);
        b.link("pecaric.holder<=branch_" + std::to_string(br.branch), *pec.middle, v);
        b.ratio("pecaric.branch_" + std::to_string(br.branch), v, pec.lhs);
    }

    // Bombieri type.
    const BoundChain bom = bombieri_type_chain(proj, gram, params);
    if (real_space) b.link("bombieri.lhs<=holder", bom.lhs, *bom.middle);
    b.ratio("bombieri.holder", *bom.middle, bom.lhs);
    for (const auto& br : bom.branches) {
        const double v = b.branch(br.value);
        b.link("bombieri.holder<=branch_" + std::to_string(br.branch), *bom.middle, v);
        b.ratio("bombieri.branch_" + std::to_string(br.branch), v, bom.lhs);
    }

    // Classical bounds.
    if (real_space) {
        const auto pb = pecaric_bound(proj, c, gram);
        b.link("pecaric.lhs<=row_weighted", pec.lhs, pb.row_weighted);
        b.link("pecaric.row_weighted<=max_row", pb.row_weighted, pb.max_row);
        b.ratio("pecaric", pb.row_weighted, pec.lhs);
        b.ratio("pecaric_max_row", pb.max_row, pec.lhs);

        const auto ps = pecaric_self(proj, gram);
        b.link("pecaric_self.lhs<=row_weighted", ps.lhs, ps.row_weighted);
        b.link("pecaric_self.row_weighted<=max_row", ps.row_weighted, ps.max_row);
        b.ratio("pecaric_self", ps.row_weighted, ps.lhs);
        b.ratio("pecaric_self_max_row", ps.max_row, ps.lhs);

        const auto bb = bombieri_bound(proj, gram);
        b.link("bombieri.lhs<=max_row", bb.lhs, bb.bound);
        b.ratio("bombieri", bb.bound, bb.lhs);

        const auto rr = bombieri_ratio(proj, gram, params.pq);
        b.link("bombieri_ratio.lhs<=bound", rr.ratio_lhs, rr.bound);
        b.ratio("bombieri_ratio", rr.bound, rr.ratio_lhs);

        if (is_identity(gram, 1e-12)) b.link("bessel.lhs<=norm", bb.lhs, proj.norm_x_sq);
    }

    report.min_slack = std::numeric_limits<double>::infinity();
    for (const auto& chk : report.checks) report.min_slack = std::min(report.min_slack, chk.slack);
    return report;
}

FuzzSummary fuzz_serial(const FuzzConfig& config) { return run_fuzz(config, Execution::Serial); }

FuzzSummary fuzz(const FuzzConfig& config) { return run_fuzz(config, config.execution); }

AuditValues audit_values(const Instance& instance, const HolderParams& params, FormulaSource source, int branch) {
    const auto sel = BranchSelector::from_index(branch);
    const CVector& c = instance.coefficients();
    AuditValues out;
    switch (source) {
        case FormulaSource::Gram: {
            out.printed = printed_form_value({c, instance.gram, 1.0}, branch, source, params).value;
            out.derived = branch_bound(c, instance.gram, restrict_to(params, sel), sel).value;
            out.middle = holder_bound(c, instance.gram, params.pq);
            if (instance.coordinate_form()) out.lhs = norm_squared_expansion(c, instance.gram);
            break;
        }
        case FormulaSource::Pecaric: {
            out.printed =
                printed_form_value({c, instance.gram, instance.proj.norm_x_sq}, branch, source, params).value;
            const BoundChain chain = pecaric_type_chain(instance.proj, c, instance.gram, params, sel);
            out.derived = chain.branches.front().value;
            out.middle = *chain.middle;
            if (instance.coordinate_form()) out.lhs = chain.lhs;
            break;
        }
        case FormulaSource::Bombieri: {
            out.printed = printed_form_value({instance.proj.proj, instance.gram, instance.proj.norm_x_sq}, branch,
                                             source, params)
                              .value;
            const BoundChain chain = bombieri_type_chain(instance.proj, instance.gram, params, sel);
            out.derived = chain.branches.front().value;
            out.middle = *chain.middle;
            if (instance.coordinate_form()) out.lhs = chain.lhs;
            break;
        }
    }
    return out;
}

AuditReport audit_printed_forms_serial(const FuzzConfig& config) { return run_audit(config, Execution::Serial); }

AuditReport audit_printed_forms(const FuzzConfig& config) { return run_audit(config, config.execution); }

}  // namespace ipbounds
