#include "ipbounds/formula.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "powers.hpp"

namespace ipbounds {

using detail::max_of;
using detail::pow_nonneg;

Rational::Rational(std::int64_t n, std::int64_t d) : num(n), den(d) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
}

Rational operator+(Rational a, Rational b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
Rational operator*(Rational a, Rational b) { return {a.num * b.num, a.den * b.den}; }

namespace {

const char* symbol_name(std::size_t s) {
    static constexpr const char* names[kSymbolCount] = {"p", "q", "alpha", "beta", "gamma", "delta"};
    return names[s];
}

double symbol_value(std::size_t s, const HolderParams& params) {
    switch (static_cast<Symbol>(s)) {
        case Symbol::P: return params.pq.p;
        case Symbol::Q: return params.pq.q;
        case Symbol::Alpha:
        case Symbol::Beta:
            if (!params.ab) throw std::invalid_argument("ab required");
            return s == static_cast<std::size_t>(Symbol::Alpha) ? params.ab->p : params.ab->q;
        case Symbol::Gamma:
        case Symbol::Delta:
            if (!params.gd) throw std::invalid_argument("gd required");
            return s == static_cast<std::size_t>(Symbol::Gamma) ? params.gd->p : params.gd->q;
    }
    throw std::invalid_argument("unknown symbol");
}

/// prod symbol^power, evaluated in symbol order.
double monomial_value(const Powers& powers, const HolderParams& params) {
    double v = 1.0;
    for (std::size_t s = 0; s < kSymbolCount; ++s) {
        const double x = powers[s] == 0 ? 1.0 : symbol_value(s, params);
        for (int k = 0; k < powers[s]; ++k) v *= x;
        for (int k = 0; k < -powers[s]; ++k) v /= x;
    }
    return v;
}

std::string symbols_product(const Powers& powers, int sign) {
    std::string out;
    for (std::size_t s = 0; s < kSymbolCount; ++s) {
        for (int k = 0; k < sign * powers[s]; ++k) {
            if (!out.empty()) out += "*";
            out += symbol_name(s);
        }
    }
    return out;
}

std::string monomial_string(const Powers& powers, Rational c) {
    // Every monomial in the catalog has only negative powers (reciprocals).
    std::string den = symbols_product(powers, -1);
    const std::string num = symbols_product(powers, 1);
    std::ostringstream out;
    if (!num.empty()) {
        out << num;
        return out.str();
    }
    if (c.den != 1) den = den.empty() ? std::to_string(c.den) : std::to_string(c.den) + "*" + den;
    if (den.empty()) {
        out << c.num;
    } else {
        out << c.num << "/" << (den.find('*') != std::string::npos ? "(" + den + ")" : den);
    }
    return out.str();
}

constexpr std::array<std::pair<Symbol, Symbol>, 3> kConjugatePairs = {
    std::pair{Symbol::P, Symbol::Q}, std::pair{Symbol::Alpha, Symbol::Beta},
    std::pair{Symbol::Gamma, Symbol::Delta}};

}  // namespace

Exponent Exponent::constant(Rational c) {
    Exponent e;
    if (c.num != 0) e.terms_[Powers{}] = c;
    return e;
}

Exponent Exponent::reciprocal(Rational c, std::initializer_list<Symbol> symbols) {
    Powers powers{};
    for (Symbol s : symbols) --powers[static_cast<std::size_t>(s)];
    Exponent e;
    if (c.num != 0) e.terms_[powers] = c;
    return e;
}

Exponent& Exponent::operator+=(const Exponent& other) {
    for (const auto& [powers, c] : other.terms_) {
        auto it = terms_.find(powers);
        if (it == terms_.end()) {
            terms_.emplace(powers, c);
        } else {
            it->second = it->second + c;
            if (it->second.num == 0) terms_.erase(it);
        }
    }
    simplify();
    return *this;
}

Exponent Exponent::scaled(Rational c) const {
    Exponent out;
    if (c.num == 0) return out;
    for (const auto& [powers, coef] : terms_) out.terms_.emplace(powers, coef * c);
    return out;
}

// c/(X*s) + c/(X*t) = c/X whenever 1/s + 1/t = 1.
void Exponent::simplify() {
    bool changed = true;
    while (changed) {
        changed = false;
        for (auto [s, t] : kConjugatePairs) {
            const auto si = static_cast<std::size_t>(s);
            const auto ti = static_cast<std::size_t>(t);
            for (auto it = terms_.begin(); it != terms_.end(); ++it) {
                if (it->first[si] >= 0) continue;
                Powers rest = it->first;
                ++rest[si];
                Powers partner = rest;
                --partner[ti];
                auto jt = terms_.find(partner);
                if (jt == terms_.end() || !(jt->second == it->second)) continue;
                const Rational c = it->second;
                terms_.erase(jt);
                terms_.erase(it);
                Exponent collapsed;
                collapsed.terms_[rest] = c;
                *this += collapsed;
                changed = true;
                break;
            }
            if (changed) break;
        }
    }
}

double Exponent::evaluate(const HolderParams& params) const {
    double v = 0.0;
    for (const auto& [powers, c] : terms_) v += c.value() * monomial_value(powers, params);
    return v;
}

std::string Exponent::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (const auto& [powers, c] : terms_) {
        if (!out.empty()) out += " + ";
        out += monomial_string(powers, c);
    }
    return out;
}

Formula& Formula::times(Base base, const Exponent& exponent) {
    auto it = terms_.find(base);
    if (it == terms_.end()) {
        if (!exponent.is_zero()) terms_.emplace(base, exponent);
    } else {
        it->second += exponent;
        if (it->second.is_zero()) terms_.erase(it);
    }
    return *this;
}

Formula Formula::merged(const Formula& other) const {
    Formula out = *this;
    for (const auto& [base, e] : other.terms_) out.times(base, e);
    return out;
}

Formula Formula::raised(Rational c) const {
    Formula out;
    for (const auto& [base, e] : terms_) out.times(base, e.scaled(c));
    return out;
}

double Formula::value(std::span<const double> abs_coeffs, const GramData& gram, const HolderParams& params) const {
    double v = 1.0;
    for (const auto& [base, exponent] : terms_) {
        const double e = exponent.evaluate(params);
        double term = 0.0;
        switch (base.kind) {
            case BaseKind::MaxAbs: term = pow_nonneg(max_of(abs_coeffs), e); break;
            case BaseKind::TotalAbs: term = pow_nonneg(gram.total_abs_sum, e); break;
            case BaseKind::MaxRow: term = pow_nonneg(gram.max_row_sum(), e); break;
            case BaseKind::AbsPowerSum:
            case BaseKind::RowPowerSum: {
                const std::span<const double> xs =
                    base.kind == BaseKind::AbsPowerSum ? abs_coeffs : std::span<const double>(gram.abs_row_sums);
                const double t = monomial_value(base.inner, params);
                const double m = max_of(xs);
                if (m == 0.0) {
                    term = 0.0;
                    break;
                }
                CompensatedSum s;
                for (double x : xs) {
                    if (x > 0.0) s.add(pow_nonneg(x / m, t));
                }
                // (sum x^t)^e = m^(t e) (sum (x/m)^t)^e
                term = pow_nonneg(m, t * e) * pow_nonneg(s.value(), e);
                break;
            }
        }
        v *= term;
    }
    return v;
}

std::string Formula::to_string() const {
    std::string out;
    for (const auto& [base, e] : terms_) {
        if (!out.empty()) out += " * ";
        std::string b;
        switch (base.kind) {
            case BaseKind::MaxAbs: b = "max|a|"; break;
            case BaseKind::TotalAbs: b = "S"; break;
            case BaseKind::MaxRow: b = "max r"; break;
            case BaseKind::AbsPowerSum: b = "sum |a|^(" + symbols_product(base.inner, 1) + ")"; break;
            case BaseKind::RowPowerSum: b = "sum r^(" + symbols_product(base.inner, 1) + ")"; break;
        }
        out += "(" + b + ")^(" + e.to_string() + ")";
    }
    return out.empty() ? "1" : out;
}

std::string to_string(FormulaSource source) {
    switch (source) {
        case FormulaSource::Gram: return "gram";
        case FormulaSource::Pecaric: return "pecaric";
        case FormulaSource::Bombieri: return "bombieri";
    }
    return "?";
}

FormulaSource formula_source_from_string(const std::string& name) {
    if (name == "gram") return FormulaSource::Gram;
    if (name == "pecaric") return FormulaSource::Pecaric;
    if (name == "bombieri") return FormulaSource::Bombieri;
    throw std::invalid_argument("unknown formula source '" + name + "'");
}

namespace {

using S = Symbol;

Base max_abs() { return {BaseKind::MaxAbs, {}}; }
Base total() { return {BaseKind::TotalAbs, {}}; }
Base max_row() { return {BaseKind::MaxRow, {}}; }

Powers product(std::initializer_list<Symbol> symbols) {
    Powers p{};
    for (Symbol s : symbols) ++p[static_cast<std::size_t>(s)];
    return p;
}
Base abs_pow(std::initializer_list<Symbol> symbols) { return {BaseKind::AbsPowerSum, product(symbols)}; }
Base row_pow(std::initializer_list<Symbol> symbols) { return {BaseKind::RowPowerSum, product(symbols)}; }

Exponent one() { return Exponent::constant(1); }
Exponent two() { return Exponent::constant(2); }
Exponent half() { return Exponent::constant({1, 2}); }
Exponent inv(std::initializer_list<Symbol> symbols) { return Exponent::reciprocal(1, symbols); }
Exponent half_inv(std::initializer_list<Symbol> symbols) { return Exponent::reciprocal({1, 2}, symbols); }

using Catalog = std::array<Formula, 9>;

Catalog printed_gram() {
    Catalog c;
    c[0].times(max_abs(), two()).times(total(), one());
    c[1].times(max_abs(), one())
        .times(abs_pow({S::Gamma, S::Q}), inv({S::Gamma, S::Q}))
        .times(total(), inv({S::P}))
        .times(row_pow({S::Delta}), inv({S::Delta, S::Q}));
    c[2].times(max_abs(), one())
        .times(abs_pow({S::Q}), inv({S::Q}))
        .times(total(), inv({S::P}))
        .times(max_row(), inv({S::Q}));
    c[3].times(max_abs(), one())
        .times(abs_pow({S::Alpha, S::P}), inv({S::Alpha, S::P}))
        .times(total(), inv({S::Q}))
        .times(row_pow({S::Beta}), inv({S::Beta, S::Q}));
    c[4].times(abs_pow({S::Alpha, S::P}), inv({S::Alpha, S::P}))
        .times(abs_pow({S::Gamma, S::Q}), inv({S::Gamma, S::Q}))
        .times(row_pow({S::Beta}), inv({S::P, S::Beta}))
        .times(row_pow({S::Delta}), inv({S::Delta, S::Q}));
    c[5].times(abs_pow({S::Q}), inv({S::Q}))
        .times(abs_pow({S::Alpha, S::P}), inv({S::Alpha, S::P}))
        .times(max_row(), inv({S::Q}))
        .times(row_pow({S::Beta}), inv({S::P, S::Beta}));
    c[6].times(max_abs(), one())
        .times(abs_pow({S::P}), inv({S::P}))
        .times(max_row(), inv({S::P}))
        .times(total(), inv({S::Q}));
    c[7].times(abs_pow({S::P}), inv({S::P}))
        .times(abs_pow({S::Gamma, S::Q}), inv({S::Gamma, S::Q}))
        .times(max_row(), inv({S::P}))
        .times(row_pow({S::Delta}), inv({S::Delta, S::Q}));
    c[8].times(abs_pow({S::P}), inv({S::P})).times(abs_pow({S::Q}), inv({S::Q})).times(max_row(), one());
    return c;
}

Catalog printed_pecaric() {
    Catalog c;
    c[0].times(max_abs(), two()).times(total(), one());
    c[1].times(max_abs(), one())
        .times(abs_pow({S::Gamma, S::Q}), inv({S::Gamma, S::Q}))
        .times(total(), inv({S::P}))
        .times(row_pow({S::Delta}), inv({S::Delta, S::Q}));
    c[2].times(max_abs(), one())
        .times(abs_pow({S::Q}), inv({S::Q}))
        .times(total(), inv({S::P}))
        .times(max_row(), inv({S::Q}));
    c[3].times(max_abs(), one())
        .times(abs_pow({S::Alpha, S::P}), inv({S::Alpha, S::P}))
        .times(total(), inv({S::Q}))
        .times(row_pow({S::Beta}), inv({S::P, S::Beta}));
    c[4].times(abs_pow({S::Alpha, S::P}), inv({S::Alpha, S::P}))
        .times(abs_pow({S::Gamma, S::Q}), inv({S::Gamma, S::Q}))
        .times(row_pow({S::Beta}), inv({S::P, S::Beta}))
        .times(row_pow({S::Delta}), inv({S::Delta, S::Q}));
    c[5].times(abs_pow({S::Q}), inv({S::Q}))
        .times(abs_pow({S::Alpha, S::P}), inv({S::Alpha, S::P}))
        .times(max_row(), inv({S::Q}))
        .times(row_pow({S::Beta}), inv({S::P, S::Beta}));
    c[6].times(max_abs(), one())
        .times(abs_pow({S::P}), inv({S::P}))
        .times(max_row(), inv({S::P}))
        .times(total(), inv({S::Q}));
    c[7].times(abs_pow({S::P}), inv({S::P}))
        .times(abs_pow({S::Gamma, S::Q}), inv({S::Gamma, S::Q}))
        .times(max_row(), inv({S::P}))
        .times(row_pow({S::Delta}), inv({S::Delta, S::Q}));
    c[8].times(abs_pow({S::P}), inv({S::P})).times(abs_pow({S::Q}), inv({S::Q})).times(max_row(), one());
    return c;
}

Catalog printed_bombieri() {
    Catalog c;
    c[0].times(max_abs(), one()).times(total(), half());
    c[1].times(max_abs(), half())
        .times(abs_pow({S::Gamma, S::Q}), half_inv({S::Gamma, S::Q}))
        .times(total(), half_inv({S::P}))
        .times(row_pow({S::Delta}), half_inv({S::Delta, S::Q}));
    c[2].times(max_abs(), half())
        .times(abs_pow({S::Q}), half_inv({S::Q}))
        .times(total(), half_inv({S::P}))
        .times(max_row(), half_inv({S::Q}));
    c[3].times(max_abs(), half())
        .times(abs_pow({S::Alpha, S::P}), half_inv({S::Alpha, S::Beta}))
        .times(total(), half_inv({S::Q}))
        .times(row_pow({S::Beta}), inv({S::P, S::Beta}));
    c[4].times(abs_pow({S::Alpha, S::P}), half_inv({S::Alpha, S::P}))
        .times(abs_pow({S::Gamma, S::Q}), half_inv({S::Gamma, S::Q}))
        .times(row_pow({S::Beta}), half_inv({S::P, S::Beta}))
        .times(row_pow({S::Delta}), half_inv({S::Delta, S::Q}));
    c[5].times(abs_pow({S::Q}), half_inv({S::Q}))
        .times(abs_pow({S::Alpha, S::P}), half_inv({S::Alpha, S::P}))
        .times(max_row(), half_inv({S::P}))
        .times(row_pow({S::Beta}), half_inv({S::P, S::Beta}));
    c[6].times(max_abs(), half())
        .times(abs_pow({S::P}), half_inv({S::P}))
        .times(max_row(), half_inv({S::P}))
        .times(total(), half_inv({S::Q}));
    c[7].times(abs_pow({S::P}), half_inv({S::P}))
        .times(abs_pow({S::Gamma, S::Q}), half_inv({S::Gamma, S::Q}))
        .times(max_row(), half_inv({S::P}))
        .times(row_pow({S::Delta}), half_inv({S::Delta, S::Q}));
    c[8].times(abs_pow({S::P}), half_inv({S::P}))
        .times(abs_pow({S::Q}), half_inv({S::Q}))
        .times(max_row(), half());
    return c;
}

Formula side_formula(Side side, Symbol e, Symbol split, Symbol split_conjugate) {
    Formula f;
    switch (side) {
        case Side::MaxAll:
            f.times(max_abs(), one()).times(total(), inv({e}));
            break;
        case Side::DoubleHolder:
            f.times(abs_pow({split, e}), inv({split, e})).times(row_pow({split_conjugate}), inv({split_conjugate, e}));
            break;
        case Side::MaxRow:
            f.times(abs_pow({e}), inv({e})).times(max_row(), inv({e}));
            break;
    }
    return f;
}

Catalog derived(Rational power) {
    Catalog c;
    for (const auto& sel : BranchSelector::all()) {
        const Formula fp = side_formula(sel.p_side, S::P, S::Alpha, S::Beta);
        const Formula fq = side_formula(sel.q_side, S::Q, S::Gamma, S::Delta);
        c[sel.index() - 1] = fp.merged(fq).raised(power);
    }
    return c;
}

const Catalog& catalog(FormulaSource source, Form form) {
    static const Catalog printed[3] = {printed_gram(), printed_pecaric(), printed_bombieri()};
    static const Catalog derived_forms[3] = {derived(1), derived(1), derived({1, 2})};
    const auto idx = static_cast<std::size_t>(source);
    return form == Form::Printed ? printed[idx] : derived_forms[idx];
}

void check_branch(int branch) {
    if (branch < 1 || branch > 9) throw std::invalid_argument("branch index must be in 1..9");
}

double prefactor(FormulaSource source, double norm_x_sq) {
    switch (source) {
        case FormulaSource::Gram: return 1.0;
        case FormulaSource::Pecaric: return norm_x_sq;
        case FormulaSource::Bombieri: return std::sqrt(norm_x_sq);
    }
    return 1.0;
}

BoundValue form_value(const FormulaContext& context, int branch, FormulaSource source, const HolderParams& params,
                      Form form) {
    check_branch(branch);
    const auto sel = BranchSelector::from_index(branch);
    const HolderParams used = restrict_to(params, sel);
    require_valid(used, sel);
    if (context.coefficients.size() != context.gram.size()) {
        throw InputError("coefficient vector length does not match the Gram matrix");
    }
    const auto a = detail::magnitudes(context.coefficients);
    const double v =
        prefactor(source, context.norm_x_sq) * catalog(source, form)[branch - 1].value(a, context.gram, used);
    return {to_string(source) + "_branch", branch, used, form, v};
}

}  // namespace

const Formula& printed_formula(FormulaSource source, int branch) {
    check_branch(branch);
    return catalog(source, Form::Printed)[branch - 1];
}

const Formula& derived_formula(FormulaSource source, int branch) {
    check_branch(branch);
    return catalog(source, Form::Derived)[branch - 1];
}

BoundValue printed_form_value(const FormulaContext& context, int branch, FormulaSource source,
                              const HolderParams& params) {
    return form_value(context, branch, source, params, Form::Printed);
}

BoundValue derived_form_value(const FormulaContext& context, int branch, FormulaSource source,
                              const HolderParams& params) {
    return form_value(context, branch, source, params, Form::Derived);
}

}  // namespace ipbounds
