#pragma once

#include <optional>

#include "ipbounds/gram.hpp"

namespace ipbounds {

/// One problem instance: a Gram matrix with the projections of a vector x,
/// optionally the coordinates they came from, and optionally coefficients c.
struct Instance {
    std::optional<VectorFamily> family;  // set for coordinate-form instances
    std::optional<CVector> x;
    GramData gram;
    ProjectionData proj;
    std::optional<CVector> c;

    static Instance from_coordinates(VectorFamily family, CVector x, std::optional<CVector> c = {});
    static Instance from_gram(const ComplexMatrix& g, ProjectionData proj, std::optional<CVector> c = {});

    [[nodiscard]] bool coordinate_form() const noexcept { return family.has_value(); }
    [[nodiscard]] std::size_t size() const noexcept { return gram.size(); }

    /// The coefficient vector; throws InputError naming field "c" when absent.
    [[nodiscard]] const CVector& coefficients() const;
};

enum class Execution { Serial, Parallel };

}  // namespace ipbounds
