#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace ipbounds {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Raised for malformed input data: dimension mismatches, non-finite entries,
/// non-Hermitian Gram input and the like.
class InputError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Dense row-major complex matrix.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n) {}

    [[nodiscard]] std::size_t size() const noexcept { return n_; }
    Complex& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

    static ComplexMatrix identity(std::size_t n);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

/// n >= 1 coordinate vectors sharing a dimension d >= 1.
class VectorFamily {
public:
    explicit VectorFamily(std::vector<CVector> vectors);

    [[nodiscard]] std::size_t count() const noexcept { return vectors_.size(); }
    [[nodiscard]] std::size_t dimension() const noexcept { return vectors_.front().size(); }
    [[nodiscard]] const CVector& operator[](std::size_t i) const { return vectors_[i]; }
    [[nodiscard]] const std::vector<CVector>& vectors() const noexcept { return vectors_; }

private:
    std::vector<CVector> vectors_;
};

/// Hermitian matrix G_ij = (y_i, y_j) together with the absolute row sums
/// r_i = sum_j |G_ij| and their total S = sum_i r_i.
struct GramData {
    ComplexMatrix g;
    std::vector<double> abs_row_sums;
    double total_abs_sum = 0.0;

    [[nodiscard]] std::size_t size() const noexcept { return g.size(); }
    [[nodiscard]] double max_row_sum() const noexcept;
};

/// The inner products (x, y_i) and the squared norm of x.
struct ProjectionData {
    CVector proj;
    double norm_x_sq = 0.0;
};

/// sum_k u_k * conj(v_k): linear in the first argument, conjugate-linear in the second.
Complex inner_product(const CVector& u, const CVector& v);

GramData gram_matrix(const VectorFamily& family);

/// Builds GramData from an explicit matrix. Accepts data that is Hermitian up
/// to 1e-9 relative deviation and symmetrizes it as (G + G^H)/2. Positive
/// semidefiniteness is not checked.
GramData gram_from_matrix(const std::vector<CVector>& rows);
GramData gram_from_matrix(const ComplexMatrix& g);

ProjectionData projection_data(const CVector& x, const VectorFamily& family);

/// True when G equals the identity to within `tol` in every entry.
bool is_identity(const GramData& gram, double tol = 1e-12);

void require_finite(const CVector& v, const char* what);

}  // namespace ipbounds
