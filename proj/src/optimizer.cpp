#include "ipbounds/optimizer.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "powers.hpp"

namespace ipbounds {

namespace {

using Point = std::array<double, 3>;  // p, alpha, gamma

struct Active {
    bool alpha = false;
    bool gamma = false;
};

std::optional<BranchSelector> fixed_branch(const OptimConfig& config) {
    if (config.branch == 0) return std::nullopt;
    return BranchSelector::from_index(config.branch);
}

bool branch_family(Target t) { return t == Target::Branch || t == Target::Pecaric || t == Target::Bombieri; }

Active active_coordinates(const OptimConfig& config) {
    if (!branch_family(config.target)) return {};
    if (config.scope == Scope::BestOfAll) return {true, true};
    if (auto sel = fixed_branch(config)) {
        return {sel->p_side == Side::DoubleHolder, sel->q_side == Side::DoubleHolder};
    }
    return {};
}

HolderParams params_at(const Point& x, Active active) {
    HolderParams params;
    params.pq = ConjugatePair::from(x[0]);
    if (active.alpha) params.ab = ConjugatePair::from(x[1]);
    if (active.gamma) params.gd = ConjugatePair::from(x[2]);
    return params;
}

int branch_rank(const std::optional<BranchSelector>& b) { return b ? b->index() : 0; }

bool better(double value, int rank, double best, int best_rank) {
    if (!std::isfinite(value)) return false;
    if (!std::isfinite(best)) return true;
    const double tol = kTieTolerance * std::abs(best);
    if (value < best - tol) return true;
    return value <= best + tol && rank < best_rank;
}

struct Evaluation {
    double value = std::numeric_limits<double>::quiet_NaN();
    std::optional<BranchSelector> branch;
};

struct Search {
    const Instance& instance;
    const OptimConfig& config;
    Active active;
    Point best_point{2.0, 2.0, 2.0};
    Evaluation best;
    std::size_t evaluations = 0;
    std::size_t skipped = 0;

    Evaluation evaluate(const Point& x) const {
        Evaluation e;
        try {
            e.value = objective(instance, config, params_at(x, active), &e.branch);
        } catch (const std::domain_error&) {
            e.value = std::numeric_limits<double>::quiet_NaN();
        }
        return e;
    }

    void offer(const Point& x, const Evaluation& e) {
        ++evaluations;
        if (!std::isfinite(e.value)) {
            ++skipped;
            return;
        }
        if (better(e.value, branch_rank(e.branch), best.value, branch_rank(best.branch))) {
            best = e;
            best_point = x;
        }
    }

    /// Evaluates every point (serially or with OpenMP), then folds them in
    /// index order so the outcome does not depend on thread scheduling.
    void scan(const std::vector<Point>& points) {
        std::vector<Evaluation> results(points.size());
        const auto count = static_cast<std::ptrdiff_t>(points.size());
        if (config.execution == Execution::Parallel) {
#pragma omp parallel for schedule(static)
            for (std::ptrdiff_t i = 0; i < count; ++i) results[i] = evaluate(points[i]);
        } else {
            for (std::ptrdiff_t i = 0; i < count; ++i) results[i] = evaluate(points[i]);
        }
        for (std::size_t i = 0; i < points.size(); ++i) offer(points[i], results[i]);
    }

    double probe(Point x, std::size_t coord, double v) {
        x[coord] = v;
        const Evaluation e = evaluate(x);
        offer(x, e);
        return std::isfinite(e.value) ? e.value : std::numeric_limits<double>::infinity();
    }

    void golden(std::size_t coord, const std::vector<double>& grid) {
        const Point base = best_point;
        const double centre = base[coord];
        double lo = kPairLow;
        double hi = kMaxExponent;
        for (double g : grid) {
            if (g < centre) lo = std::max(lo, g);
            if (g > centre) hi = std::min(hi, g);
        }
        if (!(lo < hi)) return;
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double a = lo, b = hi;
        double c = b - inv_phi * (b - a);
        double d = a + inv_phi * (b - a);
        double fc = probe(base, coord, c);
        double fd = probe(base, coord, d);
        for (int it = 0; it < config.refine_iters; ++it) {
            if (fc < fd) {
                b = d;
                d = c;
                fd = fc;
                c = b - inv_phi * (b - a);
                fc = probe(base, coord, c);
            } else {
                a = c;
                c = d;
                fc = fd;
                d = a + inv_phi * (b - a);
                fd = probe(base, coord, d);
            }
        }
    }

    OptimResult result() const {
        OptimResult out;
        out.evaluations = evaluations;
        out.skipped = skipped;
        out.lhs = target_lhs(instance, config);
        if (std::isfinite(best.value)) {
            out.best_value = best.value;
            out.best_params = params_at(best_point, active);
            out.best_branch = best.branch;
        } else {
            out.best_value = std::numeric_limits<double>::infinity();
        }
        out.tightness = out.best_value / std::max(out.lhs, 1e-300);
        return out;
    }
};

std::vector<Point> product_grid(const std::vector<double>& p_grid, const std::vector<double>& secondary,
                                Active active) {
    const std::vector<double> fixed{2.0};
    const auto& alphas = active.alpha ? secondary : fixed;
    const auto& gammas = active.gamma ? secondary : fixed;
    std::vector<Point> points;
    points.reserve(p_grid.size() * alphas.size() * gammas.size());
    for (double p : p_grid) {
        for (double a : alphas) {
            for (double g : gammas) points.push_back({p, a, g});
        }
    }
    return points;
}

void require_valid(const OptimConfig& config) {
    const auto errors = validate(config);
    if (errors.empty()) return;
    std::string msg = "invalid optimizer config:";
    for (const auto& e : errors) msg += " " + e + ";";
    throw std::invalid_argument(msg);
}

double min_over_branches(const std::array<double, 9>& values, std::optional<BranchSelector>* branch_out) {
    double best = std::numeric_limits<double>::quiet_NaN();
    int best_rank = 10;
    for (int k = 1; k <= 9; ++k) {
        if (better(values[k - 1], k, best, best_rank)) {
            best = values[k - 1];
            best_rank = k;
        }
    }
    if (branch_out && best_rank <= 9) *branch_out = BranchSelector::from_index(best_rank);
    return best;
}

CVector projection_coefficients(const Instance& instance) { return instance.proj.proj; }

}  // namespace

std::string to_string(Target target) {
    switch (target) {
        case Target::Holder: return "holder";
        case Target::Branch: return "branch";
        case Target::Pecaric: return "pecaric";
        case Target::Bombieri: return "bombieri";
        case Target::BombieriRatio: return "bombieri_ratio";
    }
    return "?";
}

Target target_from_string(const std::string& name) {
    for (Target t : {Target::Holder, Target::Branch, Target::Pecaric, Target::Bombieri, Target::BombieriRatio}) {
        if (to_string(t) == name) return t;
    }
    throw std::invalid_argument("unknown target '" + name + "'");
}

std::vector<double> log_grid(std::size_t points, double lo, double hi) {
    std::vector<double> out(points);
    if (points == 0) return out;
    out.front() = lo;
    if (points == 1) return out;
    const double ratio = std::log(hi / lo);
    for (std::size_t i = 1; i + 1 < points; ++i) {
        out[i] = lo * std::exp(ratio * static_cast<double>(i) / static_cast<double>(points - 1));
    }
    out.back() = hi;
    return out;
}

std::vector<std::string> validate(const OptimConfig& config) {
    std::vector<std::string> errors;
    auto check_grid = [&](const std::vector<double>& grid, const char* name) {
        if (grid.empty()) errors.push_back(std::string(name) + " is empty");
        if (!std::is_sorted(grid.begin(), grid.end())) errors.push_back(std::string(name) + " is not sorted");
        for (double g : grid) {
            if (!(g >= kPairLow - 1e-12 && g <= kMaxExponent + 1e-12)) {
                errors.push_back(std::string(name) + " has a point outside the exponent domain");
                break;
            }
        }
    };
    check_grid(config.p_grid, "p_grid");
    check_grid(config.secondary_grid, "secondary_grid");
    if (config.refine_iters < 0) errors.emplace_back("refine_iters must be nonnegative");
    if (config.branch < 0 || config.branch > 9) errors.emplace_back("branch must be in 0..9");
    if (config.target == Target::Branch && config.scope == Scope::SingleBranch && config.branch == 0) {
        errors.emplace_back("branch target needs a branch index");
    }
    return errors;
}

double objective(const Instance& instance, const OptimConfig& config, const HolderParams& params,
                 std::optional<BranchSelector>* branch_out) {
    const bool best_of_all = config.scope == Scope::BestOfAll && branch_family(config.target);
    const auto sel = fixed_branch(config);

    // Branch values of the chosen coefficient vector, optionally post-transformed.
    auto branches = [&](const CVector& coeffs, auto&& transform) {
        std::array<double, 9> values{};
        for (const auto& b : BranchSelector::all()) {
            values[b.index() - 1] = transform(branch_bound(coeffs, instance.gram, restrict_to(params, b), b).value);
        }
        return values;
    };
    auto single = [&](const CVector& coeffs) {
        if (branch_out) *branch_out = sel;
        return branch_bound(coeffs, instance.gram, restrict_to(params, *sel), *sel).value;
    };

    const double norm_x_sq = instance.proj.norm_x_sq;
    switch (config.target) {
        case Target::Holder:
            return holder_bound(instance.coefficients(), instance.gram, params.pq);
        case Target::Branch: {
            const CVector& c = instance.coefficients();
            if (best_of_all) return min_over_branches(branches(c, [](double v) { return v; }), branch_out);
            return single(c);
        }
        case Target::Pecaric: {
            const CVector& c = instance.coefficients();
            if (best_of_all) {
                return min_over_branches(branches(c, [&](double v) { return norm_x_sq * v; }), branch_out);
            }
            if (sel) return norm_x_sq * single(c);
            return norm_x_sq * holder_bound(c, instance.gram, params.pq);
        }
        case Target::Bombieri: {
            const CVector a = projection_coefficients(instance);
            if (best_of_all) {
                return min_over_branches(branches(a, [&](double v) { return std::sqrt(norm_x_sq * v); }),
                                         branch_out);
            }
            if (sel) return std::sqrt(norm_x_sq * single(a));
            const auto mags = detail::magnitudes(a);
            return std::sqrt(norm_x_sq) * std::sqrt(detail::power_norm(mags, params.pq.p, instance.gram.abs_row_sums)) *
                   std::sqrt(detail::power_norm(mags, params.pq.q, instance.gram.abs_row_sums));
        }
        case Target::BombieriRatio: {
            const auto mags = detail::magnitudes(instance.proj.proj);
            return std::sqrt(norm_x_sq * instance.gram.max_row_sum()) *
                   std::sqrt(detail::power_norm(mags, params.pq.p) * detail::power_norm(mags, params.pq.q));
        }
    }
    throw std::invalid_argument("unknown target");
}

double target_lhs(const Instance& instance, const OptimConfig& config) {
    switch (config.target) {
        case Target::Holder:
        case Target::Branch:
            return norm_squared_expansion(instance.coefficients(), instance.gram);
        case Target::Pecaric:
            return lhs_pecaric(instance.proj, instance.coefficients());
        case Target::Bombieri:
        case Target::BombieriRatio:
            return bombieri_bound(instance.proj, instance.gram).lhs;
    }
    throw std::invalid_argument("unknown target");
}

OptimResult optimize(const Instance& instance, const OptimConfig& config) {
    require_valid(config);
    Search search{instance, config, active_coordinates(config), {2.0, 2.0, 2.0}, {}};
    const Point baseline{2.0, 2.0, 2.0};
    search.offer(baseline, search.evaluate(baseline));
    search.scan(product_grid(config.p_grid, config.secondary_grid, search.active));
    search.golden(0, config.p_grid);
    if (search.active.alpha) search.golden(1, config.secondary_grid);
    if (search.active.gamma) search.golden(2, config.secondary_grid);
    return search.result();
}

OptimResult dense_scan(const Instance& instance, const OptimConfig& config, std::size_t points) {
    require_valid(config);
    Search search{instance, config, active_coordinates(config), {2.0, 2.0, 2.0}, {}};
    search.scan(product_grid(log_grid(points), config.secondary_grid, search.active));
    return search.result();
}

std::pair<BranchSelector, BoundValue> best_branch(const Instance& instance, const HolderParams& params) {
    const CVector& c = instance.coefficients();
    std::optional<std::pair<BranchSelector, BoundValue>> best;
    for (const auto& sel : BranchSelector::all()) {
        BoundValue v = branch_bound(c, instance.gram, restrict_to(params, sel), sel);
        if (!best || better(v.value, sel.index(), best->second.value, best->first.index())) {
            best.emplace(sel, std::move(v));
        }
    }
    return *best;
}

}  // namespace ipbounds
