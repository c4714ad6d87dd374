#pragma once
// The Riemann-sum reading Σ f(s_i)(Δs_i)^α of the (dt)^α integral, kept as
// a counterexample: for α < 1 and uniform partitions the sums grow like
// n^(1-α) instead of converging.

#include <string_view>
#include <vector>

#include "fracdt/jumarie.hpp"

namespace fracdt {

enum class SamplePoint { left, right, midpoint };

struct PartitionScheme {
    SamplePoint sample_point = SamplePoint::right;
};

enum class Verdict { diverges, converges, inconclusive };

std::string_view to_string(Verdict v) noexcept;
std::string_view to_string(SamplePoint p) noexcept;

/// Slope above this (with a good fit) counts as divergence; |slope| at or
/// below it counts as convergence.
inline constexpr double kSlopeThreshold = 0.05;
inline constexpr double kR2Threshold = 0.99;

struct DivergenceReport {
    std::vector<long> ns;
    std::vector<double> sums;
    double fitted_exponent = 0.0;
    double fitted_r2 = 0.0;
    Verdict verdict = Verdict::inconclusive;

    friend bool operator==(const DivergenceReport&, const DivergenceReport&) = default;
};

struct SideBySide {
    double definition_value = 0.0;
    DivergenceReport report;
};

/// Σ_{i=1}^n f(s_i)(t/n)^α over the uniform partition of [0, t].
/// Throws RefusalError for the Dirac delta, DomainError for t ≤ 0 or n < 1.
double riemann_sum(const Integrand& f, FractionalOrder alpha, double t, long n,
                   PartitionScheme scheme = {});

/// Least-squares slope and r² of log|sum| against log n.
///
/// Sums that vanish or change sign cannot be placed on a log scale; the
/// report is then "inconclusive" with slope 0 and r² 0.
DivergenceReport divergence_scan(const Integrand& f, FractionalOrder alpha, double t,
                                 const std::vector<long>& ns, PartitionScheme scheme = {});

/// The definition value next to the Riemann-sum scan of the same integral.
SideBySide side_by_side(const Integrand& f, FractionalOrder alpha, double t,
                        const std::vector<long>& ns, const QuadratureConfig& cfg = {},
                        PartitionScheme scheme = {});

}  // namespace fracdt
