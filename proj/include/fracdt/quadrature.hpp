#pragma once
// Quadrature building blocks: a globally adaptive Gauss-Kronrod (7,15)
// integrator over several independent pieces, and Gauss-Jacobi rules.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace fracdt {

enum class QuadratureScheme { substitution, gauss_jacobi };

struct QuadratureConfig {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    long max_evals = 100000;
    QuadratureScheme scheme = QuadratureScheme::substitution;
    // When false, Constant and Power integrands go through numeric
    // quadrature too, and the Dirac delta is refused.
    bool symbolic_shortcut = true;

    /// Throws DomainError on non-positive tolerances or max_evals < 15.
    void validate() const;

    double target(double value) const;
};

struct QuadratureResult {
    double value = 0.0;
    double error_estimate = 0.0;
    long evals = 0;
    bool converged = true;

    friend bool operator==(const QuadratureResult&, const QuadratureResult&) = default;
};

namespace quadrature {

using Function = std::function<double(double)>;

/// One interval of a composite integral, with its own integrand.
struct Piece {
    Function f;
    double a;
    double b;
};

/// Globally adaptive G7/K15 over the union of `pieces`: the panel with the
/// largest |K15 - G7| is bisected until the summed estimate meets
/// cfg.target(|value|) or cfg.max_evals is exhausted.
///
/// Throws DomainError if an integrand returns a non-finite value.
QuadratureResult adaptive(std::span<const Piece> pieces, const QuadratureConfig& cfg);

QuadratureResult adaptive(const Function& f, double a, double b, const QuadratureConfig& cfg);

struct Rule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// n-point Gauss-Jacobi rule on [-1, 1] for the weight (1-x)^a (1+x)^b,
/// a, b > -1. Golub-Welsch start, Newton polish on the three-term recurrence.
Rule gauss_jacobi(std::size_t n, double a, double b);

inline Rule gauss_legendre(std::size_t n) { return gauss_jacobi(n, 0.0, 0.0); }

}  // namespace quadrature
}  // namespace fracdt
