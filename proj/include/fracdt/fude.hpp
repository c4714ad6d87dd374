#pragma once
// Pathwise Picard solver for dX = g(t, X) dt + h(t, X) dF^α.
//
// One sample path of the driver is modelled as dF_u^α = φ(u) (du)^(1-α)
// with |φ| ≤ 2κ/(1-α), so that
//
//   ∫_0^t w(u) dF_u^α = (1-α) ∫_0^t (t-u)^(-α) w(u) φ(u) du,
//
// the order-(1-α) (du)-integral of w·φ. Functions live on grid nodes and are
// interpolated linearly in between.

#include <cstdint>
#include <functional>
#include <span>
#include <variant>
#include <vector>

#include "fracdt/jumarie.hpp"

namespace fracdt {

/// m+1 equally spaced nodes on [0, horizon].
std::vector<double> uniform_grid(double horizon, std::size_t m);

/// Linear interpolation of (grid, values) at x ∈ [grid.front(), grid.back()].
double interpolate(std::span<const double> grid, std::span<const double> values, double x);

class DriverPath {
public:
    /// Throws DomainError unless α < 1, κ > 0, the grid is strictly ascending
    /// from 0, phi matches the grid, and |phi| ≤ 2κ/(1-α) everywhere.
    DriverPath(FractionalOrder alpha, std::vector<double> grid, std::vector<double> phi, double kappa);

    FractionalOrder alpha() const noexcept { return alpha_; }
    const std::vector<double>& grid() const noexcept { return grid_; }
    const std::vector<double>& phi() const noexcept { return phi_; }
    double kappa() const noexcept { return kappa_; }
    double horizon() const noexcept { return grid_.back(); }
    /// 2κ/(1-α).
    double bound() const noexcept;

    friend bool operator==(const DriverPath&, const DriverPath&) = default;

private:
    FractionalOrder alpha_;
    std::vector<double> grid_;
    std::vector<double> phi_;
    double kappa_;
};

struct ConstantDriver {
    double level = 1.0;
};

/// φ(u) = amplitude · sin(2π · frequency · u).
struct SinusoidDriver {
    double amplitude = 1.0;
    double frequency = 1.0;
};

/// φ(u) = Σ_{k=1}^{modes} a_k sin(kπu/T + θ_k), a_k = κ·U_k/k with U_k
/// uniform on [-1, 1] and θ_k uniform on [0, 2π), drawn from a splitmix64
/// stream seeded with `seed`.
struct SeededSmoothDriver {
    std::uint64_t seed = 0;
    int modes = 3;
};

using DriverModel = std::variant<ConstantDriver, SinusoidDriver, SeededSmoothDriver>;

/// Realizes `model` on `grid`. The model's sup-norm (|level|, |amplitude|,
/// Σ|a_k|) must not exceed 2κ/(1-α); violations are rejected, never clamped.
DriverPath make_driver(const DriverModel& model, double kappa, FractionalOrder alpha,
                       std::vector<double> grid);

/// Product-integration weights of node k: the exact order-(1-α) integral of
/// the piecewise-linear interpolant, as Σ_j W[j]·v_j over nodes 0..k.
std::vector<double> driver_weights(std::span<const double> grid, FractionalOrder alpha, std::size_t k);

/// ∫_0^t w dF^α for w sampled on path.grid() and t a grid node.
double driver_integral(std::span<const double> w, const DriverPath& path, double t);

/// Same integral through jumarie_integral on the interpolant of w·φ (the
/// adaptive substitution route). Used to cross-check driver_integral.
QuadratureResult driver_integral_quadrature(std::span<const double> w, const DriverPath& path, double t,
                                            const QuadratureConfig& cfg = {});

struct CoefficientPair {
    std::function<double(double, double)> g;
    std::function<double(double, double)> h;
    /// Shared linear-growth and Lipschitz constant L.
    double growth_L = 1.0;
};

/// Spot-checks |g|,|h| ≤ L(1+|x|) and the Lipschitz bound in x at 200
/// Halton points of [0, T] × [x0 - R, x0 + R], R = 2(1+|x0|)e^(LT).
/// Throws CoefficientError on the first violation.
void check_coefficients(const CoefficientPair& coeffs, double x0, double horizon);

struct PicardOptions {
    double tol = 1e-8;
    int max_iter = 50;
};

struct PicardTrace {
    std::vector<std::vector<double>> iterates;
    std::vector<double> gaps;
    bool converged = false;
    int iterations_used = 0;
    double residual = 0.0;
    /// L·(T + max|φ|·T^(1-α)): sup-norm Lipschitz constant of one Picard step.
    double contraction_factor = 0.0;

    friend bool operator==(const PicardTrace&, const PicardTrace&) = default;
};

/// Picard iteration X^(0) ≡ x0,
///   X^(n) = x0 + ∫_0^t g(s, X^(n-1)) ds + ∫_0^t h(s, X^(n-1)) dF^α,
/// stopping once D^(n) = max_{grid ∩ (0,T]} |X^(n+1) - X^(n)| ≤ tol.
///
/// Throws CoefficientError if the spot-check fails and ConvergenceError when
/// gaps fail to decrease three times in a row or iterates become non-finite.
PicardTrace picard_solve(const CoefficientPair& coeffs, double x0, const DriverPath& path,
                         const PicardOptions& opts = {});

/// L(1+|x0|)(t + 2t^(1-α)κ/(1-α)).
double first_gap_bound(double L, double x0, double kappa, FractionalOrder alpha, double t);

struct GapCheck {
    double d0 = 0.0;
    double bound = 0.0;
    bool satisfied = false;

    friend bool operator==(const GapCheck&, const GapCheck&) = default;
};

/// D^(0) over the whole path against first_gap_bound at t = T.
GapCheck check_first_gap(const CoefficientPair& coeffs, double x0, const DriverPath& path);

struct IdentityCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    double residual = 0.0;

    friend bool operator==(const IdentityCheck&, const IdentityCheck&) = default;
};

/// Both sides of
///   (2κ/(1-α)) ∫_0^t w (du)^(1-α) = (2κ/(1-α))(1-α) ∫_0^t (t-u)^(-α) w(u) du
/// for w ≥ 0 on `grid`: the left through jumarie_integral at order 1-α, the
/// right by direct panel quadrature with a Gauss-Jacobi rule on the
/// singular last panel. residual = |lhs - rhs| / max(1, |lhs|).
IdentityCheck verify_driver_identity(std::span<const double> grid, std::span<const double> w, double kappa,
                                   FractionalOrder alpha, double t, const QuadratureConfig& cfg = {});

}  // namespace fracdt
