#pragma once

// Symbolic representation of the nine branch formulas. Each formula is a
// product of terms base^exponent, where the exponent is a sum of Laurent
// monomials in the Hoelder exponents (p, q, alpha, beta, gamma, delta).
// Formulas are kept in a canonical form (like bases merged, conjugate
// reciprocal pairs 1/p + 1/q collapsed to 1) so two transcriptions of the
// same bound compare equal and evaluate to identical bits.

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>

#include "ipbounds/bounds.hpp"
#include "ipbounds/exponents.hpp"
#include "ipbounds/gram.hpp"

namespace ipbounds {

enum class Symbol { P = 0, Q, Alpha, Beta, Gamma, Delta };
inline constexpr std::size_t kSymbolCount = 6;

struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d = 1);

    friend Rational operator+(Rational a, Rational b);
    friend Rational operator*(Rational a, Rational b);
    friend bool operator==(const Rational&, const Rational&) = default;
    [[nodiscard]] double value() const { return static_cast<double>(num) / static_cast<double>(den); }
};

/// Integer powers of each symbol; the coefficient lives in the owning map.
using Powers = std::array<int, kSymbolCount>;

/// Sum of coefficient * prod(symbol^power) terms, canonicalized.
class Exponent {
public:
    Exponent() = default;
    static Exponent constant(Rational c);
    /// c / (s1 * s2 * ...).
    static Exponent reciprocal(Rational c, std::initializer_list<Symbol> symbols);

    Exponent& operator+=(const Exponent& other);
    [[nodiscard]] Exponent scaled(Rational c) const;
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] double evaluate(const HolderParams& params) const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Exponent&, const Exponent&) = default;

private:
    void simplify();
    std::map<Powers, Rational> terms_;
};

enum class BaseKind {
    MaxAbs,       // max_i |a_i|
    AbsPowerSum,  // sum_i |a_i|^m
    TotalAbs,     // S = sum_ij |G_ij|
    RowPowerSum,  // sum_i r_i^m
    MaxRow,       // max_i r_i
};

/// A base quantity; `inner` is the power m for the power-sum kinds (a
/// product of symbols), all-zero otherwise.
struct Base {
    BaseKind kind = BaseKind::MaxAbs;
    Powers inner{};

    auto operator<=>(const Base&) const = default;
};

class Formula {
public:
    Formula& times(Base base, const Exponent& exponent);
    [[nodiscard]] Formula merged(const Formula& other) const;
    [[nodiscard]] Formula raised(Rational c) const;

    /// Product of the term values in canonical order; zero when any base is zero.
    [[nodiscard]] double value(std::span<const double> abs_coeffs, const GramData& gram,
                               const HolderParams& params) const;
    [[nodiscard]] std::string to_string() const;

    friend bool operator==(const Formula&, const Formula&) = default;

private:
    std::map<Base, Exponent> terms_;
};

/// Which bound family a branch formula belongs to: the Gram form
/// (coefficients alpha_i, no prefactor), the Pecaric type (coefficients c_i,
/// prefactor ||x||^2) or the Bombieri type (coefficients (x, y_i), prefactor ||x||).
enum class FormulaSource { Gram, Pecaric, Bombieri };

std::string to_string(FormulaSource source);
FormulaSource formula_source_from_string(const std::string& name);

/// The brace formula exactly as typeset, exponents included.
const Formula& printed_formula(FormulaSource source, int branch);

/// The formula obtained by multiplying the p-side and q-side factor
/// majorizations (square-rooted for the Bombieri source).
const Formula& derived_formula(FormulaSource source, int branch);

struct FormulaContext {
    std::span<const Complex> coefficients;
    const GramData& gram;
    double norm_x_sq = 1.0;
};

/// Prefactor (1, ||x||^2 or ||x||) times the printed formula, tagged PRINTED.
BoundValue printed_form_value(const FormulaContext& context, int branch, FormulaSource source,
                              const HolderParams& params);

/// Same for the symbolic derived formula, tagged DERIVED.
BoundValue derived_form_value(const FormulaContext& context, int branch, FormulaSource source,
                              const HolderParams& params);

}  // namespace ipbounds
