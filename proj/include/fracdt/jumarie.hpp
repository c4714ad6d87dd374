#pragma once
// Integral with respect to (dτ)^α:
//
//   ∫_0^t f(τ) (dτ)^α = α ∫_0^t (t - τ)^(α-1) f(τ) dτ,   0 < α ≤ 1,
//
// i.e. Γ(α+1) times the Riemann-Liouville fractional integral of order α.

#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "fracdt/quadrature.hpp"

namespace fracdt {

/// Order α ∈ (0, 1].
class FractionalOrder {
public:
    explicit FractionalOrder(double alpha);

    double value() const noexcept { return alpha_; }
    /// α < 1, required wherever the complementary order 1 - α is used.
    bool is_strict() const noexcept { return alpha_ < 1.0; }
    /// The order 1 - α. Throws DomainError when α = 1.
    FractionalOrder complement() const;

    friend bool operator==(FractionalOrder, FractionalOrder) = default;

private:
    double alpha_;
};

struct Constant {
    double c = 0.0;
};

/// τ^exponent with exponent > -1.
struct Power {
    double exponent = 0.0;
};

struct DiracDelta {};

enum class Smoothness { smooth, continuous };

struct Callable {
    std::function<double(double)> f;
    Smoothness hint = Smoothness::smooth;
    // Points in (0, t) where f has kinks; quadrature panels never straddle them.
    std::vector<double> breakpoints;
};

using Integrand = std::variant<Constant, Power, DiracDelta, Callable>;

Integrand constant(double c);
/// Throws DomainError unless exponent > -1.
Integrand power(double exponent);
Integrand dirac_delta();
Integrand callable(std::function<double(double)> f, Smoothness hint = Smoothness::smooth,
                   std::vector<double> breakpoints = {});

bool is_symbolic(const Integrand& f) noexcept;

/// Pointwise value f(τ). Throws RefusalError for the Dirac delta.
double evaluate(const Integrand& f, double tau);

/// Reusable pointwise evaluator; same refusal rule as evaluate().
std::function<double(double)> pointwise(const Integrand& f);

/// Analytic value of the integral for Constant, Power and DiracDelta:
///   c·t^α,   Γ(α+1)Γ(γ+1)/Γ(α+γ+1)·t^(α+γ),   α·t^(α-1).
/// Throws DomainError for Callable, for t < 0, and for the delta at t = 0
/// when α < 1.
double closed_form(const Integrand& f, FractionalOrder alpha, double t);

/// The (dτ)^α integral over [0, t].
///
/// Symbolic kinds return the closed form (error 0, evals 0) unless
/// cfg.symbolic_shortcut is false. Numeric evaluation splits [0, t] at t/2:
/// the left half is integrated directly (the kernel is smooth there), the
/// right half either through s = (t-τ)^α, which removes the singularity, or
/// with a Gauss-Jacobi rule carrying the weight (t-τ)^(α-1).
///
/// A non-converged quadrature is reported through `converged`, not thrown.
QuadratureResult jumarie_integral(const Integrand& f, FractionalOrder alpha, double t,
                                  const QuadratureConfig& cfg = {});

/// (1/Γ(α)) ∫_0^t (t-τ)^(α-1) f(τ) dτ. Same dispatch and errors as
/// jumarie_integral; symbolic kinds use their own closed forms.
QuadratureResult riemann_liouville(const Integrand& f, FractionalOrder alpha, double t,
                                   const QuadratureConfig& cfg = {});

/// jumarie_integral at every node of an ascending grid starting at 0.
/// Throws GridPointError naming the first node whose quadrature failed.
std::vector<QuadratureResult> prefix_profile(const Integrand& f, FractionalOrder alpha,
                                             std::span<const double> grid,
                                             const QuadratureConfig& cfg = {});

}  // namespace fracdt
