#include "ipbounds/instance.hpp"

#include <cmath>
#include <string>

namespace ipbounds {

namespace {

void check_coefficients(const std::optional<CVector>& c, std::size_t n) {
    if (!c) return;
    if (c->size() != n) {
        throw InputError("field 'c' has " + std::to_string(c->size()) + " entries, expected " + std::to_string(n));
    }
    require_finite(*c, "field 'c'");
}

}  // namespace

Instance Instance::from_coordinates(VectorFamily family, CVector x, std::optional<CVector> c) {
    require_finite(x, "field 'x'");
    Instance out;
    out.gram = gram_matrix(family);
    out.proj = projection_data(x, family);
    check_coefficients(c, family.count());
    out.family = std::move(family);
    out.x = std::move(x);
    out.c = std::move(c);
    return out;
}

Instance Instance::from_gram(const ComplexMatrix& g, ProjectionData proj, std::optional<CVector> c) {
    Instance out;
    out.gram = gram_from_matrix(g);
    if (proj.proj.size() != out.gram.size()) {
        throw InputError("field 'proj' has " + std::to_string(proj.proj.size()) + " entries, expected " +
                         std::to_string(out.gram.size()));
    }
    require_finite(proj.proj, "field 'proj'");
    if (!std::isfinite(proj.norm_x_sq) || proj.norm_x_sq < 0.0) {
        throw InputError("field 'norm_x_sq' must be a finite nonnegative number");
    }
    check_coefficients(c, out.gram.size());
    out.proj = std::move(proj);
    out.c = std::move(c);
    return out;
}

const CVector& Instance::coefficients() const {
    if (!c) throw InputError("field 'c' is required for this command but missing from the instance");
    return *c;
}

}  // namespace ipbounds
