#include <cmath>
#include <limits>

#include "fracdt/kernels.hpp"

namespace fracdt::kernels::scalar {

double compensated_sum(std::span<const double> xs) noexcept {
    double s = 0.0;
    double c = 0.0;
    for (double x : xs) {
        const double t = s + x;
        if (std::abs(s) >= std::abs(x)) {
            c += (s - t) + x;
        } else {
            c += (x - t) + s;
        }
        s = t;
    }
    return s + c;
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double acc = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) acc = std::fma(a[i], b[i], acc);
    return acc;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) noexcept {
    double m = 0.0;
    const std::size_t n = a.size();
    for (std::size_t i = 0; i < n; ++i) {
        const double d = std::abs(a[i] - b[i]);
        if (std::isnan(d)) return std::numeric_limits<double>::quiet_NaN();
        if (d > m) m = d;
    }
    return m;
}

}  // namespace fracdt::kernels::scalar
