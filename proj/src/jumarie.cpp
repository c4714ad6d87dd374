#include "fracdt/jumarie.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "fracdt/errors.hpp"
#include "fracdt/specialfn.hpp"

namespace fracdt {

namespace {

using specialfn::PositiveReal;

constexpr std::size_t kContinuousSplit = 8;
constexpr std::size_t kJacobiMinNodes = 8;
constexpr std::size_t kJacobiMaxNodes = 1024;

double power_eval(double tau, double exponent) {
    if (tau > 0.0) return std::exp(exponent * std::log(tau));
    if (exponent == 0.0) return 1.0;
    return exponent > 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

void check_t(double t) {
    if (!std::isfinite(t) || t < 0.0) {
        throw DomainError("upper limit t must be finite and non-negative, got " + std::to_string(t));
    }
}

// Pointwise evaluator plus the quadrature hints that travel with it.
struct Sampled {
    std::function<double(double)> f;
    Smoothness hint = Smoothness::smooth;
    std::vector<double> breakpoints;
};

Sampled sampled(const Integrand& f) {
    return std::visit(
        [](const auto& kind) -> Sampled {
            using K = std::decay_t<decltype(kind)>;
            if constexpr (std::is_same_v<K, Constant>) {
                const double c = kind.c;
                return {[c](double) { return c; }, Smoothness::smooth, {}};
            } else if constexpr (std::is_same_v<K, Power>) {
                const double g = kind.exponent;
                return {[g](double tau) { return power_eval(tau, g); }, Smoothness::smooth, {}};
            } else if constexpr (std::is_same_v<K, DiracDelta>) {
                throw RefusalError("the Dirac delta has no pointwise values; numeric quadrature refuses it");
            } else {
                if (!kind.f) throw DomainError("callable integrand is empty");
                return {kind.f, kind.hint, kind.breakpoints};
            }
        },
        f);
}

// Sorted interior cut points of [lo, hi], endpoints included.
std::vector<double> cuts(double lo, double hi, const std::vector<double>& bps, Smoothness hint) {
    std::vector<double> out{lo};
    for (double b : bps) {
        if (b > lo && b < hi) out.push_back(b);
    }
    if (out.size() == 1 && hint == Smoothness::continuous) {
        for (std::size_t k = 1; k < kContinuousSplit; ++k) {
            out.push_back(lo + (hi - lo) * static_cast<double>(k) / kContinuousSplit);
        }
    }
    out.push_back(hi);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

// scale · ∫_0^t (t-τ)^(α-1) f(τ) dτ for t > 0.
QuadratureResult weighted_integral(const Sampled& s, double alpha, double t, double scale,
                                   const QuadratureConfig& cfg) {
    const double mid = 0.5 * t;
    const double am1 = alpha - 1.0;
    const auto& f = s.f;
    auto direct = [&f, t, am1, scale](double tau) {
        return scale * std::pow(t - tau, am1) * f(tau);
    };

    std::vector<quadrature::Piece> pieces;
    const auto left = cuts(0.0, mid, s.breakpoints, s.hint);
    for (std::size_t i = 0; i + 1 < left.size(); ++i) pieces.push_back({direct, left[i], left[i + 1]});

    if (cfg.scheme == QuadratureScheme::substitution) {
        // τ = t - u^(1/α) maps [mid, t] onto u ∈ [0, (t-mid)^α] with Jacobian (1/α)(t-τ)^(1-α).
        const double inv = 1.0 / alpha;
        const double factor = scale / alpha;
        auto substituted = [&f, t, inv, factor](double u) { return factor * f(t - std::pow(u, inv)); };
        std::vector<double> mapped;
        for (double b : s.breakpoints) {
            if (b > mid && b < t) mapped.push_back(std::pow(t - b, alpha));
        }
        const auto right = cuts(0.0, std::pow(t - mid, alpha), mapped, s.hint);
        for (std::size_t i = 0; i + 1 < right.size(); ++i) {
            pieces.push_back({substituted, right[i], right[i + 1]});
        }
        return quadrature::adaptive(pieces, cfg);
    }

    // Gauss-Jacobi: regular pieces by adaptive quadrature, the last piece
    // [c, t] against the weight (t-τ)^(α-1).
    const auto right = cuts(mid, t, s.breakpoints, s.hint);
    for (std::size_t i = 0; i + 2 < right.size(); ++i) pieces.push_back({direct, right[i], right[i + 1]});
    const double c = right[right.size() - 2];

    QuadratureResult regular = quadrature::adaptive(pieces, cfg);
    const double half = 0.5 * (t - c);
    const double prefactor = scale * std::pow(half, alpha);
    auto apply = [&](std::size_t n) {
        const quadrature::Rule rule = quadrature::gauss_jacobi(n, am1, 0.0);
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double y = f(c + half * (1.0 + rule.nodes[i]));
            if (!std::isfinite(y)) throw DomainError("integrand is not finite inside the Gauss-Jacobi panel");
            acc += rule.weights[i] * y;
        }
        return prefactor * acc;
    };

    long evals = regular.evals;
    std::size_t n = kJacobiMinNodes;
    double coarse = apply(n);
    evals += static_cast<long>(n);
    double fine = coarse;
    double err = std::numeric_limits<double>::infinity();
    bool jacobi_ok = false;
    while (2 * n <= kJacobiMaxNodes && evals + static_cast<long>(2 * n) <= cfg.max_evals) {
        n *= 2;
        fine = apply(n);
        evals += static_cast<long>(n);
        err = std::abs(fine - coarse);
        if (err <= 0.5 * cfg.target(fine + regular.value)) {
            jacobi_ok = true;
            break;
        }
        coarse = fine;
    }
    QuadratureResult out;
    out.value = regular.value + fine;
    out.error_estimate = regular.error_estimate + (std::isfinite(err) ? err : std::abs(fine));
    out.evals = evals;
    out.converged = regular.converged && jacobi_ok && out.error_estimate <= cfg.target(out.value);
    return out;
}

QuadratureResult exact(double v) { return {v, 0.0, 0, true}; }

}  // namespace

FractionalOrder::FractionalOrder(double alpha) : alpha_(alpha) {
    if (!std::isfinite(alpha) || !(alpha > 0.0) || alpha > 1.0) {
        throw DomainError("fractional order must lie in (0, 1], got " + std::to_string(alpha));
    }
}

FractionalOrder FractionalOrder::complement() const {
    if (!is_strict()) throw DomainError("complementary order 1 - alpha requires alpha < 1");
    return FractionalOrder(1.0 - alpha_);
}

Integrand constant(double c) {
    if (!std::isfinite(c)) throw DomainError("constant integrand must be finite");
    return Constant{c};
}

Integrand power(double exponent) {
    if (!std::isfinite(exponent) || !(exponent > -1.0)) {
        throw DomainError("power exponent must exceed -1, got " + std::to_string(exponent));
    }
    return Power{exponent};
}

Integrand dirac_delta() { return DiracDelta{}; }

Integrand callable(std::function<double(double)> f, Smoothness hint, std::vector<double> breakpoints) {
    if (!f) throw DomainError("callable integrand is empty");
    return Callable{std::move(f), hint, std::move(breakpoints)};
}

bool is_symbolic(const Integrand& f) noexcept { return !std::holds_alternative<Callable>(f); }

double evaluate(const Integrand& f, double tau) { return pointwise(f)(tau); }

std::function<double(double)> pointwise(const Integrand& f) { return sampled(f).f; }

double closed_form(const Integrand& f, FractionalOrder order, double t) {
    check_t(t);
    const double alpha = order.value();
    if (const auto* k = std::get_if<Constant>(&f)) {
        return t == 0.0 ? 0.0 : k->c * std::pow(t, alpha);
    }
    if (const auto* k = std::get_if<Power>(&f)) {
        if (!(k->exponent > -1.0)) throw DomainError("power exponent must exceed -1");
        if (t == 0.0) return 0.0;
        const double g = k->exponent;
        const double coeff = specialfn::gamma(PositiveReal(alpha + 1.0)) *
                             specialfn::gamma(PositiveReal(g + 1.0)) /
                             specialfn::gamma(PositiveReal(alpha + g + 1.0));
        return coeff * std::pow(t, alpha + g);
    }
    if (std::holds_alternative<DiracDelta>(f)) {
        if (t == 0.0 && order.is_strict()) {
            throw DomainError("delta integral alpha*t^(alpha-1) is singular at t = 0");
        }
        return alpha * std::pow(t, alpha - 1.0);
    }
    throw DomainError("closed form exists only for constant, power and delta integrands");
}

QuadratureResult jumarie_integral(const Integrand& f, FractionalOrder order, double t,
                                  const QuadratureConfig& cfg) {
    cfg.validate();
    check_t(t);
    const bool delta = std::holds_alternative<DiracDelta>(f);
    if (delta && !cfg.symbolic_shortcut) {
        throw RefusalError("the Dirac delta cannot be integrated numerically");
    }
    if (delta) return exact(closed_form(f, order, t));
    if (t == 0.0) return exact(0.0);
    if (is_symbolic(f) && cfg.symbolic_shortcut) return exact(closed_form(f, order, t));
    const double alpha = order.value();
    return weighted_integral(sampled(f), alpha, t, alpha, cfg);
}

QuadratureResult riemann_liouville(const Integrand& f, FractionalOrder order, double t,
                                   const QuadratureConfig& cfg) {
    cfg.validate();
    check_t(t);
    const double alpha = order.value();
    const bool delta = std::holds_alternative<DiracDelta>(f);
    if (delta && !cfg.symbolic_shortcut) {
        throw RefusalError("the Dirac delta cannot be integrated numerically");
    }
    if (delta) {
        if (t == 0.0 && order.is_strict()) {
            throw DomainError("delta fractional integral t^(alpha-1)/Gamma(alpha) is singular at t = 0");
        }
        return exact(std::pow(t, alpha - 1.0) / specialfn::gamma(PositiveReal(alpha)));
    }
    if (t == 0.0) return exact(0.0);
    if (cfg.symbolic_shortcut) {
        if (const auto* k = std::get_if<Constant>(&f)) {
            return exact(k->c * std::pow(t, alpha) / specialfn::gamma(PositiveReal(alpha + 1.0)));
        }
        if (const auto* k = std::get_if<Power>(&f)) {
            const double g = k->exponent;
            return exact(specialfn::gamma(PositiveReal(g + 1.0)) /
                         specialfn::gamma(PositiveReal(alpha + g + 1.0)) * std::pow(t, alpha + g));
        }
    }
    return weighted_integral(sampled(f), alpha, t, 1.0 / specialfn::gamma(PositiveReal(alpha)), cfg);
}

std::vector<QuadratureResult> prefix_profile(const Integrand& f, FractionalOrder alpha,
                                             std::span<const double> grid,
                                             const QuadratureConfig& cfg) {
    if (grid.empty() || grid.front() != 0.0) throw DomainError("profile grid must start at 0");
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1]) || !std::isfinite(grid[k])) {
            throw DomainError("profile grid must be strictly ascending (index " + std::to_string(k) + ")");
        }
    }
    std::vector<QuadratureResult> out;
    out.reserve(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        QuadratureResult r = jumarie_integral(f, alpha, grid[k], cfg);
        if (!r.converged) throw GridPointError(k, "quadrature did not converge");
        out.push_back(r);
    }
    return out;
}

}  // namespace fracdt
