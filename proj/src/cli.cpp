#include "ipbounds/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <optional>
#include <stdexcept>

#include "ipbounds/bounds.hpp"
#include "ipbounds/formula.hpp"
#include "ipbounds/optimizer.hpp"
#include "ipbounds/report.hpp"
#include "ipbounds/verify.hpp"

namespace ipbounds {

namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Options {
    std::string instance;
    double p = 2.0;
    double alpha = 2.0;
    double gamma = 2.0;
    std::string branch;
    std::string target = "holder";
    std::uint64_t seed = 1;
    std::size_t instances = 10000;
    std::string out;
    std::string format = "structured";
    bool dense_grid = false;
    bool printed = false;
    std::string distribution = "unit_disk";
    bool gram_direct = false;
    bool audit_gram_direct = true;
    bool serial = false;
    std::size_t pq_samples = 5;
    int n_max = 8;
    int d_max = 8;
    std::size_t p_points = 40;
    std::size_t secondary_points = 20;
    int refine_iters = 32;

    CLI::Option* p_opt = nullptr;
    CLI::Option* alpha_opt = nullptr;
    CLI::Option* gamma_opt = nullptr;
};

// Explicit flags win over params stored in the file, which win over the defaults.
HolderParams resolve_params(const Options& o, const std::optional<StoredParams>& stored) {
    double p = o.p, alpha = o.alpha, gamma = o.gamma;
    if (stored) {
        if (o.p_opt->count() == 0) p = stored->p;
        if (o.alpha_opt->count() == 0 && stored->alpha) alpha = *stored->alpha;
        if (o.gamma_opt->count() == 0 && stored->gamma) gamma = *stored->gamma;
    }
    return HolderParams::make(p, alpha, gamma);
}

std::vector<BranchSelector> selected_branches(const std::string& flag) {
    if (flag.empty() || flag == "all") {
        const auto all = BranchSelector::all();
        return {all.begin(), all.end()};
    }
    int k = 0;
    try {
        std::size_t used = 0;
        k = std::stoi(flag, &used);
        if (used != flag.size()) k = 0;
    } catch (const std::exception&) {
        k = 0;
    }
    if (k < 1 || k > 9) throw UsageError("--branch must be 1..9 or 'all', got '" + flag + "'");
    return {BranchSelector::from_index(k)};
}

HolderParams pq_only(const HolderParams& params) { return HolderParams{params.pq, std::nullopt, std::nullopt}; }

void emit(const Report& report, const Options& o, std::ostream& out) {
    const std::string text = o.format == "tabular" ? to_tabular(report) : dump(to_json(report));
    if (o.out.empty()) {
        out << text;
    } else {
        write_text(o.out, text);
    }
}

std::size_t derived_violations(const Report& report) {
    std::size_t count = 0;
    for (const auto& row : report.rows) {
        if (row.form == Form::Derived && row.value < row.lhs - slack_tolerance(row.value)) ++count;
    }
    return count;
}

int cmd_eval(const Options& o, std::ostream& out, std::ostream& err) {
    const InstanceFile file = read_instance_file(o.instance);
    const Instance& inst = file.instance;
    const HolderParams params = resolve_params(o, file.params);
    const auto branches = selected_branches(o.branch);
    const CVector& c = inst.coefficients();
    const GramData& g = inst.gram;
    const ProjectionData& proj = inst.proj;

    Report rep;
    rep.command = "eval";
    rep.info.emplace_back("instance", inst.coordinate_form() ? "coordinates" : "gram");
    rep.info.emplace_back("n", std::to_string(inst.size()));

    const double expansion = norm_squared_expansion(c, g);
    const double holder = holder_bound(c, g, params.pq);
    rep.rows.push_back(make_row("gram.double_sum", 0, Form::Derived, std::nullopt, double_sum(c, g), expansion));
    rep.rows.push_back(make_row("gram.holder", 0, Form::Derived, pq_only(params), holder, expansion));
    for (const auto& sel : branches) {
        const HolderParams bp = restrict_to(params, sel);
        rep.rows.push_back(
            make_row("gram.branch", sel.index(), Form::Derived, bp, branch_bound(c, g, bp, sel).value, expansion));
        if (o.printed) {
            const double v = printed_form_value({c, g, 1.0}, sel.index(), FormulaSource::Gram, params).value;
            rep.rows.push_back(make_row("gram.branch", sel.index(), Form::Printed, bp, v, holder));
        }
    }

    const BoundChain pec = pecaric_type_chain(proj, c, g, params);
    rep.rows.push_back(make_row("pecaric.holder", 0, Form::Derived, pq_only(params), *pec.middle, pec.lhs));
    for (const auto& sel : branches) {
        const BoundValue& b = pec.branches.at(static_cast<std::size_t>(sel.index() - 1));
        rep.rows.push_back(make_row("pecaric.branch", b.branch, Form::Derived, b.params, b.value, pec.lhs));
        if (o.printed) {
            const double v =
                printed_form_value({c, g, proj.norm_x_sq}, sel.index(), FormulaSource::Pecaric, params).value;
            rep.rows.push_back(make_row("pecaric.branch", sel.index(), Form::Printed, b.params, v, *pec.middle));
        }
    }

    const BoundChain bom = bombieri_type_chain(proj, g, params);
    rep.rows.push_back(make_row("bombieri.holder", 0, Form::Derived, pq_only(params), *bom.middle, bom.lhs));
    for (const auto& sel : branches) {
        const BoundValue& b = bom.branches.at(static_cast<std::size_t>(sel.index() - 1));
        rep.rows.push_back(make_row("bombieri.branch", b.branch, Form::Derived, b.params, b.value, bom.lhs));
        if (o.printed) {
            const double v =
                printed_form_value({proj.proj, g, proj.norm_x_sq}, sel.index(), FormulaSource::Bombieri, params)
                    .value;
            rep.rows.push_back(make_row("bombieri.branch", sel.index(), Form::Printed, b.params, v, *bom.middle));
        }
    }

    const auto pb = pecaric_bound(proj, c, g);
    rep.rows.push_back(make_row("pecaric", 0, Form::Derived, std::nullopt, pb.row_weighted, pec.lhs));
    rep.rows.push_back(make_row("pecaric_max_row", 0, Form::Derived, std::nullopt, pb.max_row, pec.lhs));
    const auto ps = pecaric_self(proj, g);
    rep.rows.push_back(make_row("pecaric_self", 0, Form::Derived, std::nullopt, ps.row_weighted, ps.lhs));
    rep.rows.push_back(make_row("pecaric_self_max_row", 0, Form::Derived, std::nullopt, ps.max_row, ps.lhs));
    const auto bb = bombieri_bound(proj, g);
    rep.rows.push_back(make_row("bombieri", 0, Form::Derived, std::nullopt, bb.bound, bb.lhs));
    const auto rr = bombieri_ratio(proj, g, params.pq);
    rep.rows.push_back(make_row("bombieri_ratio", 0, Form::Derived, pq_only(params), rr.bound, rr.ratio_lhs));
    if (is_identity(g)) {
        rep.rows.push_back(make_row("bessel", 0, Form::Derived, std::nullopt, proj.norm_x_sq, bb.lhs));
        rep.info.emplace_back("bessel", "applies: the family is orthonormal");
    } else {
        rep.info.emplace_back("bessel", "not applicable: the Gram matrix is not the identity");
    }

    // Left sides of a Gram-direct instance need not come from any vectors, so
    // only coordinate instances can witness a violation.
    const std::size_t violations = inst.coordinate_form() ? derived_violations(rep) : 0;
    rep.metrics.emplace_back("lhs_gram", expansion);
    rep.metrics.emplace_back("lhs_pecaric", pec.lhs);
    rep.metrics.emplace_back("lhs_bombieri", bb.lhs);
    rep.metrics.emplace_back("derived_violations", static_cast<double>(violations));
    emit(rep, o, out);
    if (violations > 0) {
        err << "eval: " << violations << " DERIVED bound(s) fall below their left-hand side\n";
        return 1;
    }
    return 0;
}

int cmd_optimize(const Options& o, std::ostream& out, std::ostream& err) {
    const InstanceFile file = read_instance_file(o.instance);
    const Instance& inst = file.instance;

    OptimConfig cfg;
    try {
        cfg.target = target_from_string(o.target);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const bool branchy = cfg.target == Target::Branch || cfg.target == Target::Pecaric || cfg.target == Target::Bombieri;
    if (!branchy && !o.branch.empty()) throw UsageError("--branch does not apply to target " + o.target);
    if (branchy) {
        if (o.branch == "all" || (o.branch.empty() && cfg.target == Target::Branch)) {
            cfg.scope = Scope::BestOfAll;
        } else if (!o.branch.empty()) {
            cfg.branch = selected_branches(o.branch).front().index();
        }
    }
    cfg.p_grid = log_grid(o.p_points);
    cfg.secondary_grid = log_grid(o.secondary_points);
    cfg.refine_iters = o.refine_iters;
    cfg.execution = o.serial ? Execution::Serial : Execution::Parallel;
    if (const auto errors = validate(cfg); !errors.empty()) throw UsageError(errors.front());

    const OptimResult r = optimize(inst, cfg);
    const std::string name = to_string(cfg.target);
    Report rep;
    rep.command = "optimize";
    rep.info.emplace_back("target", name);
    rep.info.emplace_back("scope", cfg.scope == Scope::BestOfAll ? "best_of_all" : "single_branch");
    rep.info.emplace_back("best_branch", r.best_branch ? std::to_string(r.best_branch->index()) : "none");
    rep.info.emplace_back("flagged", r.flagged() ? "yes: more than 1% of points skipped" : "no");
    const int best_index = r.best_branch ? r.best_branch->index() : 0;
    rep.rows.push_back(make_row("optimize." + name, best_index, Form::Derived, r.best_params, r.best_value, r.lhs));

    HolderParams base = HolderParams::make(2.0);
    if (r.best_params.ab) base.ab = ConjugatePair::from(2.0);
    if (r.best_params.gd) base.gd = ConjugatePair::from(2.0);
    std::optional<BranchSelector> base_branch;
    const double base_value = objective(inst, cfg, HolderParams::make(2.0, 2.0, 2.0), &base_branch);
    rep.rows.push_back(make_row("baseline." + name, base_branch ? base_branch->index() : 0, Form::Derived, base,
                                base_value, r.lhs));

    rep.metrics.emplace_back("evaluations", static_cast<double>(r.evaluations));
    rep.metrics.emplace_back("skipped", static_cast<double>(r.skipped));
    rep.metrics.emplace_back("skipped_fraction", r.skipped_fraction());
    rep.metrics.emplace_back("lhs", r.lhs);
    rep.metrics.emplace_back("tightness", r.tightness);

    int code = 0;
    if (inst.coordinate_form() && r.best_value < r.lhs - slack_tolerance(r.best_value)) {
        err << "optimize: best value falls below the left-hand side\n";
        code = 1;
    }
    if (o.dense_grid) {
        const OptimResult d = dense_scan(inst, cfg);
        const int dense_index = d.best_branch ? d.best_branch->index() : 0;
        rep.rows.push_back(make_row("dense_scan." + name, dense_index, Form::Derived, d.best_params, d.best_value, d.lhs));
        const double gap = (r.best_value - d.best_value) / std::max(std::abs(d.best_value), 1e-300);
        rep.metrics.emplace_back("dense_relative_gap", gap);
        const bool ok = gap <= 1e-6;
        rep.info.emplace_back("dense_check", ok ? "pass" : "fail");
        if (!ok) {
            err << "optimize: result exceeds the dense scan by " << gap << " relative\n";
            code = 1;
        }
    }
    emit(rep, o, out);
    return code;
}

FuzzConfig fuzz_config(const Options& o, const CliHooks& hooks) {
    FuzzConfig fc;
    fc.seed = o.seed;
    fc.instances = o.instances;
    try {
        fc.distribution = distribution_from_string(o.distribution);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    fc.pq_samples = o.pq_samples;
    fc.n_max = o.n_max;
    fc.d_max = o.d_max;
    fc.include_gram_direct = o.gram_direct;
    fc.execution = o.serial ? Execution::Serial : Execution::Parallel;
    fc.fault_scale = hooks.fault_scale;
    if (const auto errors = validate(fc); !errors.empty()) throw UsageError(errors.front());
    return fc;
}

int cmd_fuzz(const Options& o, const CliHooks& hooks, std::ostream& out, std::ostream& err) {
    const FuzzConfig fc = fuzz_config(o, hooks);
    const FuzzSummary summary = fuzz(fc);
    const fs::path path = o.out.empty() ? fs::path("fuzz_summary.json") : fs::path(o.out);
    write_text(path, dump(to_json(summary)));
    out << "fuzz: " << summary.instances << " instances, " << summary.total_checks << " checks, "
        << summary.violations << " violations; summary in " << path.string() << "\n";
    if (summary.violations == 0) return 0;

    const Violation& v = summary.first_violations.front();
    const HolderParams params = random_params(fc, v.instance_id).at(v.param_index);
    Json cex = instance_to_json(random_instance(fc, v.instance_id));
    Json stored = Json::object();
    stored["p"] = params.pq.p;
    if (params.ab) stored["alpha"] = params.ab->p;
    if (params.gd) stored["gamma"] = params.gd->p;
    cex["params"] = std::move(stored);
    cex["violation"] = Json{{"link", v.link},
                            {"instance_id", v.instance_id},
                            {"param_index", v.param_index},
                            {"lhs", v.lhs},
                            {"rhs", v.rhs}};
    fs::path cex_path = path;
    cex_path.replace_filename(path.stem().string() + "_counterexample.json");
    write_text(cex_path, dump(cex));
    err << "fuzz: DERIVED violation of " << v.link << " on instance " << v.instance_id << "; counterexample in "
        << cex_path.string() << "\n";
    return 1;
}

int cmd_audit(const Options& o, const CliHooks& hooks, std::ostream& out) {
    const FuzzConfig fc = fuzz_config(o, hooks);
    const AuditReport report = audit_printed_forms(fc);
    const fs::path dir = o.out.empty() ? fs::path("audit") : fs::path(o.out);
    fs::create_directories(dir);

    std::vector<std::string> files(report.rows.size());
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        const AuditRow& row = report.rows[i];
        if (!row.worst) continue;
        files[i] = "audit_" + to_string(row.source) + "_b" + std::to_string(row.branch) + ".json";
        write_text(dir / files[i], dump(counterexample_to_json(*row.worst)));
    }
    write_text(dir / "audit_report.json", dump(to_json(report, files)));

    for (const auto& row : report.rows) {
        if (row.coincides) continue;
        out << to_string(row.source) << " branch " << row.branch << ": " << row.violations_vs_middle << " of "
            << row.checks << " checks below the middle expression\n";
    }
    out << "audit report in " << (dir / "audit_report.json").string() << "\n";
    return 0;
}

void add_params(CLI::App* cmd, Options& o) {
    o.p_opt = cmd->add_option("--p", o.p, "Hoelder exponent p (q is its conjugate)");
    o.alpha_opt = cmd->add_option("--alpha", o.alpha, "secondary exponent for the p-side split");
    o.gamma_opt = cmd->add_option("--gamma", o.gamma, "secondary exponent for the q-side split");
}

void add_output(CLI::App* cmd, Options& o) {
    cmd->add_option("--out", o.out, "write the report here instead of stdout");
    cmd->add_option("--format", o.format, "structured or tabular")
        ->check(CLI::IsMember({"structured", "tabular"}));
}

void add_stream(CLI::App* cmd, Options& o) {
    cmd->add_option("--seed", o.seed, "random seed");
    cmd->add_option("--instances", o.instances, "number of random instances");
    cmd->add_option("--distribution", o.distribution, "unit_disk, gaussian or sparse");
    cmd->add_option("--pq-samples", o.pq_samples, "parameter sets per instance");
    cmd->add_option("--n-max", o.n_max, "largest family size");
    cmd->add_option("--d-max", o.d_max, "largest dimension");
    cmd->add_flag("--serial", o.serial, "disable OpenMP");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const CliHooks& hooks) {
    CLI::App app{"Bounds on |sum c_i (x, y_i)|^2 for finite vector families", "ipbounds"};
    app.require_subcommand(1);
    Options o;

    auto* eval = app.add_subcommand("eval", "evaluate the full bound ladder for one instance");
    eval->add_option("--instance", o.instance, "instance file")->required();
    add_params(eval, o);
    eval->add_option("--branch", o.branch, "1..9 or all");
    eval->add_flag("--printed", o.printed, "add the as-typeset branch formulas");
    add_output(eval, o);

    auto* opt = app.add_subcommand("optimize", "minimize a bound over the free exponents");
    opt->add_option("--instance", o.instance, "instance file")->required();
    opt->add_option("--target", o.target, "holder, branch, pecaric, bombieri or bombieri_ratio");
    opt->add_option("--branch", o.branch, "1..9 or all");
    opt->add_option("--p-points", o.p_points, "grid points for p");
    opt->add_option("--secondary-points", o.secondary_points, "grid points for alpha and gamma");
    opt->add_option("--refine-iters", o.refine_iters, "golden-section steps per coordinate");
    opt->add_flag("--dense-grid", o.dense_grid, "cross-check against a 400-point scan");
    opt->add_flag("--serial", o.serial, "disable OpenMP");
    add_output(opt, o);

    auto* fuzz_cmd = app.add_subcommand("fuzz", "check every derived inequality on random instances");
    add_stream(fuzz_cmd, o);
    fuzz_cmd->add_flag("--gram-direct", o.gram_direct, "mix in Hermitian Gram-direct probes");
    fuzz_cmd->add_option("--out", o.out, "summary file (default fuzz_summary.json)");

    auto* audit = app.add_subcommand("audit", "compare the printed branch formulas with the derived ones");
    add_stream(audit, o);
    audit->add_flag("--gram-direct,!--no-gram-direct", o.audit_gram_direct, "mix in Hermitian Gram-direct probes");
    audit->add_option("--out", o.out, "output directory (default audit)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(std::move(reversed));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*eval) return cmd_eval(o, out, err);
        if (*opt) return cmd_optimize(o, out, err);
        if (*fuzz_cmd) return cmd_fuzz(o, hooks, out, err);
        if (*audit) {
            o.gram_direct = o.audit_gram_direct;
            return cmd_audit(o, hooks, out);
        }
    } catch (const ParseError& e) {
        err << "error: " << o.instance << ": " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

}  // namespace ipbounds
