#include "ipbounds/gram.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ipbounds/summation.hpp"

namespace ipbounds {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void fill_row_sums(GramData& out) {
    const std::size_t n = out.g.size();
    out.abs_row_sums.assign(n, 0.0);
    CompensatedSum total;
    for (std::size_t i = 0; i < n; ++i) {
        CompensatedSum row;
        for (std::size_t j = 0; j < n; ++j) row.add(std::abs(out.g(i, j)));
        out.abs_row_sums[i] = row.value();
        total.add(out.abs_row_sums[i]);
    }
    out.total_abs_sum = total.value();
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

VectorFamily::VectorFamily(std::vector<CVector> vectors) : vectors_(std::move(vectors)) {
    if (vectors_.empty()) throw InputError("vector family must contain at least one vector");
    const std::size_t d = vectors_.front().size();
    if (d == 0) throw InputError("vector dimension must be at least 1");
    for (std::size_t i = 0; i < vectors_.size(); ++i) {
        if (vectors_[i].size() != d) {
            throw InputError("vector " + std::to_string(i) + " has dimension " +
                             std::to_string(vectors_[i].size()) + ", expected " + std::to_string(d));
        }
        require_finite(vectors_[i], "family vector");
    }
}

double GramData::max_row_sum() const noexcept {
    return abs_row_sums.empty() ? 0.0 : *std::max_element(abs_row_sums.begin(), abs_row_sums.end());
}

void require_finite(const CVector& v, const char* what) {
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!finite(v[k])) {
            throw InputError(std::string(what) + " has a non-finite entry at index " + std::to_string(k));
        }
    }
}

Complex inner_product(const CVector& u, const CVector& v) {
    if (u.size() != v.size()) {
        throw InputError("inner product dimension mismatch: " + std::to_string(u.size()) + " vs " +
                         std::to_string(v.size()));
    }
    require_finite(u, "inner product operand");
    require_finite(v, "inner product operand");
    CompensatedComplexSum acc;
    for (std::size_t k = 0; k < u.size(); ++k) acc.add(u[k] * std::conj(v[k]));
    return acc.value();
}

GramData gram_matrix(const VectorFamily& family) {
    const std::size_t n = family.count();
    GramData out;
    out.g = ComplexMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        out.g(i, i) = inner_product(family[i], family[i]).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex gij = inner_product(family[i], family[j]);
            out.g(i, j) = gij;
            out.g(j, i) = std::conj(gij);
        }
    }
    fill_row_sums(out);
    return out;
}

GramData gram_from_matrix(const std::vector<CVector>& rows) {
    const std::size_t n = rows.size();
    if (n == 0) throw InputError("gram matrix must be at least 1x1");
    ComplexMatrix g(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != n) {
            throw InputError("gram matrix is not square: row " + std::to_string(i) + " has " +
                             std::to_string(rows[i].size()) + " entries, expected " + std::to_string(n));
        }
        for (std::size_t j = 0; j < n; ++j) g(i, j) = rows[i][j];
    }
    return gram_from_matrix(g);
}

GramData gram_from_matrix(const ComplexMatrix& g) {
    const std::size_t n = g.size();
    if (n == 0) throw InputError("gram matrix must be at least 1x1");
    double scale = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!finite(g(i, j))) {
                throw InputError("gram matrix entry (" + std::to_string(i) + "," + std::to_string(j) +
                                 ") is not finite");
            }
            scale = std::max(scale, std::abs(g(i, j)));
        }
    }

    double worst = 0.0;
    std::size_t wi = 0, wj = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            const double dev = std::abs(g(i, j) - std::conj(g(j, i)));
            if (dev > worst) {
                worst = dev;
                wi = i;
                wj = j;
            }
        }
    }
    if (worst > 1e-9 * scale) {
        throw InputError("gram matrix is not Hermitian: entry (" + std::to_string(wi) + "," +
                         std::to_string(wj) + ") deviates from the conjugate transpose by " +
                         std::to_string(worst));
    }

    GramData out;
    out.g = ComplexMatrix(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) out.g(i, j) = (g(i, j) + std::conj(g(j, i))) / 2.0;
        if (out.g(i, i).real() < -1e-9 * scale) {
            throw InputError("gram matrix diagonal entry " + std::to_string(i) + " is negative");
        }
        out.g(i, i) = std::max(out.g(i, i).real(), 0.0);
    }
    fill_row_sums(out);
    return out;
}

ProjectionData projection_data(const CVector& x, const VectorFamily& family) {
    if (x.size() != family.dimension()) {
        throw InputError("x has dimension " + std::to_string(x.size()) + ", family has dimension " +
                         std::to_string(family.dimension()));
    }
    ProjectionData out;
    out.proj.reserve(family.count());
    for (const auto& y : family.vectors()) out.proj.push_back(inner_product(x, y));
    out.norm_x_sq = inner_product(x, x).real();
    return out;
}

bool is_identity(const GramData& gram, double tol) {
    for (std::size_t i = 0; i < gram.size(); ++i) {
        for (std::size_t j = 0; j < gram.size(); ++j) {
            const Complex expected = i == j ? 1.0 : 0.0;
            if (std::abs(gram.g(i, j) - expected) > tol) return false;
        }
    }
    return true;
}

}  // namespace ipbounds
