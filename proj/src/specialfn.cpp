#include "fracdt/specialfn.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "fracdt/errors.hpp"

namespace fracdt::specialfn {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczosCoeffs = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

// Rational part of the Lanczos sum at z = x - 1.
double lanczos_sum(double z) {
    double acc = kLanczosCoeffs[0];
    for (std::size_t i = 1; i < kLanczosCoeffs.size(); ++i) {
        acc += kLanczosCoeffs[i] / (z + static_cast<double>(i));
    }
    return acc;
}

// Exact (n-1)! for small positive integers.
bool integer_gamma(double x, double& out) {
    if (x > 21.0 || x != std::floor(x)) return false;
    double f = 1.0;
    for (int k = 2; k < static_cast<int>(x); ++k) f *= k;
    out = f;
    return true;
}

}  // namespace

PositiveReal::PositiveReal(double value) : value_(value) {
    if (!std::isfinite(value) || !(value > 0.0)) {
        throw DomainError("expected a finite positive real, got " + std::to_string(value));
    }
}

double gamma(PositiveReal xr) {
    double x = xr.value();
    double exact = 0.0;
    if (integer_gamma(x, exact)) return exact;
    if (x < 0.5) {
        // Γ(x) = Γ(x+1)/x keeps the Lanczos sum in its accurate range.
        return gamma(PositiveReal(x + 1.0)) / x;
    }
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    // t^(z+1/2) split in two halves so the power does not overflow before e^-t.
    const double half = std::pow(t, 0.5 * (z + 0.5));
    return std::sqrt(2.0 * std::numbers::pi) * half * (half * std::exp(-t)) * lanczos_sum(z);
}

double log_gamma(PositiveReal xr) {
    double x = xr.value();
    if (x < 0.5) {
        return log_gamma(PositiveReal(x + 1.0)) - std::log(x);
    }
    if (x == 1.0 || x == 2.0) return 0.0;
    const double z = x - 1.0;
    const double t = z + kLanczosG + 0.5;
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t +
           std::log(lanczos_sum(z));
}

double beta(PositiveReal a, PositiveReal b) {
    const double s = a.value() + b.value();
    if (s < 150.0) {
        const double direct = gamma(a) * gamma(b) / gamma(PositiveReal(s));
        if (std::isfinite(direct) && direct > 0.0) return direct;
    }
    return std::exp(log_gamma(a) + log_gamma(b) - log_gamma(PositiveReal(s)));
}

}  // namespace fracdt::specialfn
