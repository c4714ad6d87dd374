#include "fracdt/riemann_probe.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fracdt/errors.hpp"
#include "fracdt/kernels.hpp"

namespace fracdt {

namespace {

constexpr long kChunk = 4096;

double sample_at(long i, double h, SamplePoint p) {
    // i is the 1-based subinterval index.
    switch (p) {
        case SamplePoint::left:
            return static_cast<double>(i - 1) * h;
        case SamplePoint::midpoint:
            return (static_cast<double>(i) - 0.5) * h;
        case SamplePoint::right:
            break;
    }
    return static_cast<double>(i) * h;
}

}  // namespace

std::string_view to_string(Verdict v) noexcept {
    switch (v) {
        case Verdict::diverges:
            return "diverges";
        case Verdict::converges:
            return "converges";
        case Verdict::inconclusive:
            break;
    }
    return "inconclusive";
}

std::string_view to_string(SamplePoint p) noexcept {
    switch (p) {
        case SamplePoint::left:
            return "left";
        case SamplePoint::midpoint:
            return "midpoint";
        case SamplePoint::right:
            break;
    }
    return "right";
}

double riemann_sum(const Integrand& f, FractionalOrder alpha, double t, long n, PartitionScheme scheme) {
    if (std::holds_alternative<DiracDelta>(f)) {
        throw RefusalError("the Dirac delta is not pointwise evaluable; no Riemann sum exists");
    }
    if (!std::isfinite(t) || !(t > 0.0)) throw DomainError("Riemann sum needs t > 0");
    if (n < 1) throw DomainError("Riemann sum needs n >= 1, got " + std::to_string(n));

    const auto fn = pointwise(f);
    const double h = t / static_cast<double>(n);
    const double weight = std::pow(h, alpha.value());

    // f(s_i) are accumulated chunk-wise; (Δs)^α is common to every term.
    std::vector<double> buf(static_cast<std::size_t>(std::min(n, kChunk)));
    std::vector<double> partials;
    for (long start = 1; start <= n; start += kChunk) {
        const long stop = std::min(n, start + kChunk - 1);
        std::size_t len = 0;
        for (long i = start; i <= stop; ++i) {
            const double y = fn(sample_at(i, h, scheme.sample_point));
            if (!std::isfinite(y)) throw DomainError("integrand is not finite at a sample point");
            buf[len++] = y;
        }
        partials.push_back(kernels::compensated_sum(std::span<const double>(buf.data(), len)));
    }
    const double total = kernels::compensated_sum(partials);
    return total * weight;
}

DivergenceReport divergence_scan(const Integrand& f, FractionalOrder alpha, double t,
                                 const std::vector<long>& ns, PartitionScheme scheme) {
    if (ns.size() < 4) throw DomainError("divergence scan needs at least 4 partition sizes");
    for (std::size_t k = 0; k < ns.size(); ++k) {
        if (ns[k] < 2) throw DomainError("partition sizes must be >= 2");
        if (k > 0 && ns[k] <= ns[k - 1]) throw DomainError("partition sizes must be strictly increasing");
    }

    DivergenceReport report;
    report.ns = ns;
    report.sums.reserve(ns.size());
    for (long n : ns) report.sums.push_back(riemann_sum(f, alpha, t, n, scheme));

    const double sign = report.sums.front() > 0.0 ? 1.0 : -1.0;
    for (double s : report.sums) {
        if (!(s * sign > 0.0)) {
            report.verdict = Verdict::inconclusive;
            return report;
        }
    }

    const auto m = static_cast<double>(ns.size());
    double mx = 0.0;
    double my = 0.0;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = 0; k < ns.size(); ++k) {
        xs.push_back(std::log(static_cast<double>(ns[k])));
        ys.push_back(std::log(std::abs(report.sums[k])));
        mx += xs.back();
        my += ys.back();
    }
    mx /= m;
    my /= m;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        const double dx = xs[k] - mx;
        const double dy = ys[k] - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
    }
    const double slope = sxy / sxx;
    double r2 = 1.0;
    // A flat sequence is fitted perfectly by slope 0.
    if (syy > 1e-24 * std::max(1.0, my * my)) r2 = std::clamp(sxy * sxy / (sxx * syy), 0.0, 1.0);
    report.fitted_exponent = slope;
    report.fitted_r2 = r2;

    if (slope > kSlopeThreshold && r2 > kR2Threshold) {
        report.verdict = Verdict::diverges;
    } else if (std::abs(slope) <= kSlopeThreshold) {
        report.verdict = Verdict::converges;
    } else {
        report.verdict = Verdict::inconclusive;
    }
    return report;
}

SideBySide side_by_side(const Integrand& f, FractionalOrder alpha, double t, const std::vector<long>& ns,
                        const QuadratureConfig& cfg, PartitionScheme scheme) {
    SideBySide out;
    out.report = divergence_scan(f, alpha, t, ns, scheme);
    const QuadratureResult def = jumarie_integral(f, alpha, t, cfg);
    if (!def.converged) throw ConvergenceError("definition value quadrature did not converge");
    out.definition_value = def.value;
    return out;
}

}  // namespace fracdt
