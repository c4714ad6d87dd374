#include "fracdt/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <tuple>
#include <sstream>

#include "fracdt/errors.hpp"
#include "fracdt/specialfn.hpp"

namespace fracdt {

void QuadratureConfig::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0) || !std::isfinite(rel_tol) || !std::isfinite(abs_tol)) {
        throw DomainError("quadrature tolerances must be finite and positive");
    }
    if (max_evals < 15) throw DomainError("max_evals must be at least 15");
}

double QuadratureConfig::target(double value) const {
    return std::max(abs_tol, rel_tol * std::abs(value));
}

namespace quadrature {

namespace {

// QUADPACK qk15 abscissae and weights.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    std::size_t piece;
    double value;
    double error;

    bool operator<(const Panel& other) const { return error < other.error; }
};

double checked(const Function& f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        std::ostringstream os;
        os.precision(17);
        os << "integrand is not finite at x=" << x;
        throw DomainError(os.str());
    }
    return y;
}

Panel gk15(const Function& f, double a, double b, std::size_t piece) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked(f, center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double pair = checked(f, center - dx) + checked(f, center + dx);
        kronrod += kWgk[j] * pair;
        if (j % 2 == 1) gauss += kWg[j / 2] * pair;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, piece, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult adaptive(std::span<const Piece> pieces, const QuadratureConfig& cfg) {
    cfg.validate();
    std::priority_queue<Panel> heap;
    std::vector<Panel> frozen;
    long evals = 0;
    for (std::size_t i = 0; i < pieces.size(); ++i) {
        const Piece& p = pieces[i];
        if (!(p.b > p.a)) continue;
        heap.push(gk15(p.f, p.a, p.b, i));
        evals += 15;
    }

    auto totals = [&] {
        double value = 0.0;
        double error = 0.0;
        auto copy = heap;
        while (!copy.empty()) {
            value += copy.top().value;
            error += copy.top().error;
            copy.pop();
        }
        for (const Panel& p : frozen) {
            value += p.value;
            error += p.error;
        }
        return std::pair{value, error};
    };

    double value = 0.0;
    double error = 0.0;
    std::tie(value, error) = totals();
    bool converged = error <= cfg.target(value);
    long steps = 0;
    while (!converged && !heap.empty()) {
        if (evals + 30 > cfg.max_evals) break;
        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            frozen.push_back(worst);
            continue;
        }
        const Function& f = pieces[worst.piece].f;
        Panel left = gk15(f, worst.a, mid, worst.piece);
        Panel right = gk15(f, mid, worst.b, worst.piece);
        evals += 30;
        value += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
        // Running sums drift; resum exactly every so often.
        if (++steps % 64 == 0) std::tie(value, error) = totals();
        converged = error <= cfg.target(value);
    }
    std::tie(value, error) = totals();
    converged = error <= cfg.target(value);
    return {value, error, evals, converged};
}

QuadratureResult adaptive(const Function& f, double a, double b, const QuadratureConfig& cfg) {
    const std::array<Piece, 1> pieces{Piece{f, a, b}};
    return adaptive(pieces, cfg);
}

Rule gauss_jacobi(std::size_t n, double a, double b) {
    if (n == 0) throw DomainError("Gauss-Jacobi rule needs at least one node");
    if (!(a > -1.0) || !(b > -1.0)) throw DomainError("Gauss-Jacobi exponents must exceed -1");

    const double ab = a + b;
    Eigen::VectorXd diag(static_cast<Eigen::Index>(n));
    Eigen::VectorXd sub(static_cast<Eigen::Index>(n > 1 ? n - 1 : 0));
    for (std::size_t k = 0; k < n; ++k) {
        const double s = 2.0 * k + ab;
        diag[static_cast<Eigen::Index>(k)] =
            (k == 0) ? (b - a) / (ab + 2.0) : (b * b - a * a) / (s * (s + 2.0));
    }
    for (std::size_t k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        const double s = 2.0 * kk + ab;
        double beta = 0.0;
        if (k == 1) {
            beta = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + ab) * (2.0 + ab) * (3.0 + ab));
        } else {
            beta = 4.0 * kk * (kk + a) * (kk + b) * (kk + ab) / (s * s * (s + 1.0) * (s - 1.0));
        }
        sub[static_cast<Eigen::Index>(k - 1)] = std::sqrt(beta);
    }

    std::vector<double> nodes(n);
    if (n == 1) {
        nodes[0] = diag[0];
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
        solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
        for (std::size_t i = 0; i < n; ++i) nodes[i] = solver.eigenvalues()[static_cast<Eigen::Index>(i)];
    }

    const double nn = static_cast<double>(n);
    // w_i = 2^(a+b+1) Γ(n+a+1)Γ(n+b+1) / (Γ(n+a+b+1) n! (1-x_i²) P_n'(x_i)²);
    // this form is far less sensitive to the last-bit rounding of nodes
    // crowding an endpoint than the one using P_(n-1).
    const double log_norm = specialfn::log_gamma(specialfn::PositiveReal(a + nn + 1.0)) +
                            specialfn::log_gamma(specialfn::PositiveReal(b + nn + 1.0)) -
                            specialfn::log_gamma(specialfn::PositiveReal(nn + 1.0)) -
                            specialfn::log_gamma(specialfn::PositiveReal(nn + ab + 1.0));
    Rule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        double z = std::clamp(nodes[i], -1.0 + 1e-300, 1.0 - 1e-300);
        double pn = 0.0;
        double dp = 0.0;
        double temp = 0.0;
        for (int it = 0; it < 4; ++it) {
            temp = 2.0 + ab;
            double p1 = (a - b + temp * z) / 2.0;
            double p2 = 1.0;
            for (std::size_t j = 2; j <= n; ++j) {
                const double jj = static_cast<double>(j);
                const double p3 = p2;
                p2 = p1;
                temp = 2.0 * jj + ab;
                const double c1 = 2.0 * jj * (jj + ab) * (temp - 2.0);
                const double c2 = (temp - 1.0) * (a * a - b * b + temp * (temp - 2.0) * z);
                const double c3 = 2.0 * (jj - 1.0 + a) * (jj - 1.0 + b) * temp;
                p1 = (c2 * p2 - c3 * p3) / c1;
            }
            pn = p1;
            dp = (nn * (a - b - temp * z) * pn + 2.0 * (nn + a) * (nn + b) * p2) / (temp * (1.0 - z * z));
            const double step = pn / dp;
            z -= step;
            if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(z))) break;
        }
        rule.nodes[i] = z;
        rule.weights[i] = std::exp(log_norm) * std::pow(2.0, ab + 1.0) / ((1.0 - z * z) * dp * dp);
    }
    return rule;
}

}  // namespace quadrature
}  // namespace fracdt
