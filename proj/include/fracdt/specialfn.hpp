#pragma once

namespace fracdt::specialfn {

/// Strictly positive, finite real. Construction throws DomainError otherwise.
class PositiveReal {
public:
    explicit PositiveReal(double value);
    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

private:
    double value_;
};

/// Gamma function on the positive real axis (Lanczos, g = 7, n = 9).
double gamma(PositiveReal x);

/// log Γ(x) for x > 0.
double log_gamma(PositiveReal x);

/// Euler beta B(a, b) = Γ(a)Γ(b)/Γ(a+b).
///
/// Direct gamma products are used while Γ(a+b) is comfortably finite;
/// beyond that the value is assembled from log-gamma differences.
double beta(PositiveReal a, PositiveReal b);

}  // namespace fracdt::specialfn
