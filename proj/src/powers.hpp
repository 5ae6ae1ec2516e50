#pragma once

// Private helpers for the nonnegative-real power arithmetic shared by the
// bound evaluators.

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>
#include <vector>

#include "ipbounds/gram.hpp"
#include "ipbounds/summation.hpp"

namespace ipbounds::detail {

/// s^t for s >= 0 computed as exp(t ln s); 0^t = 0 for t > 0.
inline double pow_nonneg(double s, double t) {
    if (t == 0.0) return 1.0;
    if (s == 0.0) return 0.0;
    return std::exp(t * std::log(s));
}

inline double max_of(std::span<const double> xs) {
    double m = 0.0;
    for (double x : xs) m = std::max(m, x);
    return m;
}

inline std::vector<double> magnitudes(std::span<const Complex> zs) {
    std::vector<double> out(zs.size());
    for (std::size_t i = 0; i < zs.size(); ++i) out[i] = std::abs(zs[i]);
    return out;
}

/// (sum_i a_i^t w_i)^(1/t), rescaled by the largest contributing a_i so that
/// large exponents neither overflow nor underflow. An empty weight span means
/// unit weights. Zero a_i contribute nothing.
inline double power_norm(std::span<const double> a, double t, std::span<const double> w = {}) {
    const bool weighted = !w.empty();
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (weighted && w[i] <= 0.0) continue;
        m = std::max(m, a[i]);
    }
    if (m == 0.0) return 0.0;
    CompensatedSum s;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0.0) continue;
        const double wi = weighted ? w[i] : 1.0;
        if (wi <= 0.0) continue;
        s.add(pow_nonneg(a[i] / m, t) * wi);
    }
    return m * pow_nonneg(s.value(), 1.0 / t);
}

/// ln(sum_i a_i^t); -infinity when every a_i is zero.
inline double log_power_sum(std::span<const double> a, double t) {
    const double m = max_of(a);
    if (m == 0.0) return -std::numeric_limits<double>::infinity();
    CompensatedSum s;
    for (double x : a) {
        if (x > 0.0) s.add(pow_nonneg(x / m, t));
    }
    return t * std::log(m) + std::log(s.value());
}

}  // namespace ipbounds::detail
