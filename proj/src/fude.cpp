#include "fracdt/fude.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fracdt/errors.hpp"
#include "fracdt/kernels.hpp"
#include "fracdt/quadrature.hpp"

namespace fracdt {

namespace {

constexpr std::size_t kSpotChecks = 200;
constexpr std::size_t kSegmentNodes = 8;

void check_grid(std::span<const double> grid) {
    if (grid.size() < 2 || grid.front() != 0.0) {
        throw DomainError("grid must start at 0 and contain at least two nodes");
    }
    for (std::size_t k = 1; k < grid.size(); ++k) {
        if (!(grid[k] > grid[k - 1]) || !std::isfinite(grid[k])) {
            throw DomainError("grid must be strictly ascending (index " + std::to_string(k) + ")");
        }
    }
}

std::size_t node_index(std::span<const double> grid, double t) {
    const auto it = std::lower_bound(grid.begin(), grid.end(), t);
    if (it == grid.end() || *it != t) {
        throw DomainError("t = " + std::to_string(t) + " is not a grid node");
    }
    return static_cast<std::size_t>(it - grid.begin());
}

// splitmix64; fixed arithmetic so paths are identical across platforms.
class SplitMix {
public:
    explicit SplitMix(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

double halton(std::size_t index, unsigned base) {
    double f = 1.0;
    double r = 0.0;
    while (index > 0) {
        f /= base;
        r += f * static_cast<double>(index % base);
        index /= base;
    }
    return r;
}

// Gauss-Legendre nodes and weights on [0, 1].
const quadrature::Rule& unit_legendre() {
    static const quadrature::Rule rule = [] {
        quadrature::Rule r = quadrature::gauss_legendre(kSegmentNodes);
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            r.nodes[i] = 0.5 * (r.nodes[i] + 1.0);
            r.weights[i] *= 0.5;
        }
        return r;
    }();
    return rule;
}

// Lower-triangular product-integration matrix, one row per node.
std::vector<std::vector<double>> driver_matrix(std::span<const double> grid, FractionalOrder alpha) {
    std::vector<std::vector<double>> rows(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) rows[k] = driver_weights(grid, alpha, k);
    return rows;
}

struct Step {
    std::vector<double> next;
    std::vector<double> drift;
    std::vector<double> noise;
};

// One Picard map X -> x0 + ∫g dt + ∫h dF^α on the grid.
class PicardMap {
public:
    PicardMap(const CoefficientPair& coeffs, double x0, const DriverPath& path)
        : coeffs_(coeffs), x0_(x0), path_(path), weights_(driver_matrix(path.grid(), path.alpha())) {}

    std::vector<double> operator()(std::span<const double> x) const {
        const auto& grid = path_.grid();
        const auto& phi = path_.phi();
        const std::size_t n = grid.size();
        std::vector<double> gv(n);
        std::vector<double> hv(n);
        for (std::size_t j = 0; j < n; ++j) {
            gv[j] = coeffs_.g(grid[j], x[j]);
            hv[j] = coeffs_.h(grid[j], x[j]) * phi[j];
        }
        std::vector<double> out(n);
        double drift = 0.0;
        out[0] = x0_;
        for (std::size_t k = 1; k < n; ++k) {
            drift += 0.5 * (grid[k] - grid[k - 1]) * (gv[k - 1] + gv[k]);
            const double noise = kernels::dot(weights_[k], std::span<const double>(hv.data(), k + 1));
            out[k] = x0_ + drift + noise;
        }
        return out;
    }

private:
    const CoefficientPair& coeffs_;
    double x0_;
    const DriverPath& path_;
    std::vector<std::vector<double>> weights_;
};

double sup_abs(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

std::vector<double> uniform_grid(double horizon, std::size_t m) {
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw DomainError("horizon must be positive");
    if (m < 1) throw DomainError("grid needs at least one interval");
    std::vector<double> grid(m + 1);
    for (std::size_t k = 0; k <= m; ++k) grid[k] = horizon * static_cast<double>(k) / static_cast<double>(m);
    grid[m] = horizon;
    return grid;
}

double interpolate(std::span<const double> grid, std::span<const double> values, double x) {
    if (x <= grid.front()) return values.front();
    if (x >= grid.back()) return values.back();
    const auto it = std::upper_bound(grid.begin(), grid.end(), x);
    const auto j = static_cast<std::size_t>(it - grid.begin());
    const double lam = (x - grid[j - 1]) / (grid[j] - grid[j - 1]);
    return (1.0 - lam) * values[j - 1] + lam * values[j];
}

DriverPath::DriverPath(FractionalOrder alpha, std::vector<double> grid, std::vector<double> phi, double kappa)
    : alpha_(alpha), grid_(std::move(grid)), phi_(std::move(phi)), kappa_(kappa) {
    if (!alpha_.is_strict()) throw DomainError("driver paths need alpha < 1");
    if (!(kappa_ > 0.0) || !std::isfinite(kappa_)) throw DomainError("kappa must be positive");
    check_grid(grid_);
    if (phi_.size() != grid_.size()) throw DomainError("phi must have one sample per grid node");
    const double b = bound();
    for (std::size_t i = 0; i < phi_.size(); ++i) {
        if (!(std::abs(phi_[i]) <= b)) {
            throw DomainError("|phi| exceeds 2*kappa/(1-alpha) at node " + std::to_string(i));
        }
    }
}

double DriverPath::bound() const noexcept { return 2.0 * kappa_ / (1.0 - alpha_.value()); }

DriverPath make_driver(const DriverModel& model, double kappa, FractionalOrder alpha, std::vector<double> grid) {
    if (!alpha.is_strict()) throw DomainError("driver paths need alpha < 1");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be positive");
    check_grid(grid);
    const double bound = 2.0 * kappa / (1.0 - alpha.value());
    const double horizon = grid.back();
    std::vector<double> phi(grid.size());

    auto reject_if = [bound](double sup) {
        if (!(sup <= bound)) {
            throw DomainError("driver sup-norm " + std::to_string(sup) + " exceeds 2*kappa/(1-alpha) = " +
                              std::to_string(bound));
        }
    };

    if (const auto* m = std::get_if<ConstantDriver>(&model)) {
        reject_if(std::abs(m->level));
        std::fill(phi.begin(), phi.end(), m->level);
    } else if (const auto* m = std::get_if<SinusoidDriver>(&model)) {
        reject_if(std::abs(m->amplitude));
        for (std::size_t i = 0; i < grid.size(); ++i) {
            phi[i] = m->amplitude * std::sin(2.0 * std::numbers::pi * m->frequency * grid[i]);
        }
    } else {
        const auto& s = std::get<SeededSmoothDriver>(model);
        if (s.modes < 1) throw DomainError("seeded driver needs at least one mode");
        SplitMix rng(s.seed);
        std::vector<double> amp(static_cast<std::size_t>(s.modes));
        std::vector<double> phase(amp.size());
        double sup = 0.0;
        for (std::size_t k = 0; k < amp.size(); ++k) {
            amp[k] = kappa * (2.0 * rng.uniform() - 1.0) / static_cast<double>(k + 1);
            phase[k] = 2.0 * std::numbers::pi * rng.uniform();
            sup += std::abs(amp[k]);
        }
        reject_if(sup);
        for (std::size_t i = 0; i < grid.size(); ++i) {
            double v = 0.0;
            for (std::size_t k = 0; k < amp.size(); ++k) {
                v += amp[k] * std::sin(static_cast<double>(k + 1) * std::numbers::pi * grid[i] / horizon + phase[k]);
            }
            phi[i] = v;
        }
    }
    return DriverPath(alpha, std::move(grid), std::move(phi), kappa);
}

std::vector<double> driver_weights(std::span<const double> grid, FractionalOrder alpha, std::size_t k) {
    if (!alpha.is_strict()) throw DomainError("driver weights need alpha < 1");
    if (k >= grid.size()) throw DomainError("node index out of range");
    const double a_ = alpha.value();
    const double beta = 1.0 - a_;
    const double t = grid[k];
    const quadrature::Rule& gl = unit_legendre();
    std::vector<double> w(k + 1, 0.0);
    for (std::size_t j = 0; j < k; ++j) {
        const double delta = grid[j + 1] - grid[j];
        const double near = t - grid[j + 1];
        const double far = t - grid[j];
        double wl = 0.0;
        double wr = 0.0;
        if (j + 1 == k) {
            const double db = std::pow(delta, beta);
            wl = beta * db / (1.0 + beta);
            wr = db / (1.0 + beta);
        } else if (near < delta) {
            const double i0 = std::pow(far, beta) - std::pow(near, beta);
            const double i1 = beta / (1.0 + beta) * (std::pow(far, 1.0 + beta) - std::pow(near, 1.0 + beta));
            wl = (i1 - near * i0) / delta;
            wr = (far * i0 - i1) / delta;
        } else {
            // Kernel analytic on the segment; its singularity is at least one
            // segment length away.
            for (std::size_t q = 0; q < gl.nodes.size(); ++q) {
                const double s = gl.nodes[q];
                const double kern = gl.weights[q] * std::pow(near + delta * s, -a_);
                wl += kern * s;
                wr += kern * (1.0 - s);
            }
            wl *= beta * delta;
            wr *= beta * delta;
        }
        w[j] += wl;
        w[j + 1] += wr;
    }
    return w;
}

double driver_integral(std::span<const double> w, const DriverPath& path, double t) {
    const auto& grid = path.grid();
    if (w.size() != grid.size()) throw DomainError("w must be sampled on the driver grid");
    const std::size_t k = node_index(grid, t);
    const std::vector<double> weights = driver_weights(grid, path.alpha(), k);
    std::vector<double> v(k + 1);
    for (std::size_t j = 0; j <= k; ++j) v[j] = w[j] * path.phi()[j];
    return kernels::dot(weights, v);
}

QuadratureResult driver_integral_quadrature(std::span<const double> w, const DriverPath& path, double t,
                                            const QuadratureConfig& cfg) {
    const auto& grid = path.grid();
    if (w.size() != grid.size()) throw DomainError("w must be sampled on the driver grid");
    const std::size_t k = node_index(grid, t);
    if (k == 0) return {0.0, 0.0, 0, true};
    std::vector<double> nodes(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(k + 1));
    std::vector<double> v(k + 1);
    for (std::size_t j = 0; j <= k; ++j) v[j] = w[j] * path.phi()[j];
    std::vector<double> bps(nodes.begin() + 1, nodes.end() - 1);
    auto f = callable([nodes, v](double u) { return interpolate(nodes, v, u); }, Smoothness::continuous,
                      std::move(bps));
    return jumarie_integral(f, path.alpha().complement(), t, cfg);
}

void check_coefficients(const CoefficientPair& coeffs, double x0, double horizon) {
    if (!coeffs.g || !coeffs.h) throw CoefficientError("coefficients g and h must both be set");
    const double L = coeffs.growth_L;
    if (!(L > 0.0) || !std::isfinite(L)) throw CoefficientError("growth constant L must be positive");
    const double radius = 2.0 * (1.0 + std::abs(x0)) * std::exp(L * horizon);
    constexpr double kRel = 1e-9;
    constexpr double kAbs = 1e-12;
    for (std::size_t i = 1; i <= kSpotChecks; ++i) {
        const double t = horizon * halton(i, 2);
        const double x = x0 + radius * (2.0 * halton(i, 3) - 1.0);
        const double y = x0 + radius * (2.0 * halton(i, 5) - 1.0);
        const double gx = coeffs.g(t, x);
        const double hx = coeffs.h(t, x);
        const double gy = coeffs.g(t, y);
        const double hy = coeffs.h(t, y);
        if (!std::isfinite(gx) || !std::isfinite(hx) || !std::isfinite(gy) || !std::isfinite(hy)) {
            throw CoefficientError("coefficients are not finite on the working box");
        }
        const double growth = L * (1.0 + std::abs(x)) * (1.0 + kRel) + kAbs;
        if (std::abs(gx) > growth || std::abs(hx) > growth) {
            throw CoefficientError("linear growth bound violated at t=" + std::to_string(t) +
                                   " x=" + std::to_string(x));
        }
        const double lip = L * std::abs(x - y) * (1.0 + kRel) + kAbs;
        if (std::abs(gx - gy) > lip || std::abs(hx - hy) > lip) {
            throw CoefficientError("Lipschitz bound violated at t=" + std::to_string(t) + " between x=" +
                                   std::to_string(x) + " and x=" + std::to_string(y));
        }
    }
}

PicardTrace picard_solve(const CoefficientPair& coeffs, double x0, const DriverPath& path,
                         const PicardOptions& opts) {
    if (!(opts.tol > 0.0)) throw DomainError("Picard tolerance must be positive");
    if (opts.max_iter < 1) throw DomainError("max_iter must be at least 1");
    if (!std::isfinite(x0)) throw DomainError("x0 must be finite");
    check_coefficients(coeffs, x0, path.horizon());

    const PicardMap step(coeffs, x0, path);
    PicardTrace trace;
    const double T = path.horizon();
    trace.contraction_factor =
        coeffs.growth_L * (T + sup_abs(path.phi()) * std::pow(T, 1.0 - path.alpha().value()));
    trace.iterates.emplace_back(path.grid().size(), x0);

    int rising = 0;
    for (int n = 0; n < opts.max_iter; ++n) {
        std::vector<double> next = step(trace.iterates.back());
        if (!all_finite(next)) throw ConvergenceError("Picard iterate became non-finite");
        const double gap = kernels::max_abs_diff(next, trace.iterates.back());
        trace.iterates.push_back(std::move(next));
        trace.gaps.push_back(gap);
        trace.iterations_used = n + 1;
        if (gap <= opts.tol) {
            trace.converged = true;
            break;
        }
        if (trace.gaps.size() >= 2) {
            rising = gap >= trace.gaps[trace.gaps.size() - 2] ? rising + 1 : 0;
            if (rising >= 3) {
                throw ConvergenceError("Picard gaps failed to decrease for 3 consecutive iterations");
            }
        }
    }
    const auto& last = trace.iterates.back();
    trace.residual = kernels::max_abs_diff(step(last), last);
    return trace;
}

double first_gap_bound(double L, double x0, double kappa, FractionalOrder alpha, double t) {
    if (!(L > 0.0) || !(kappa > 0.0) || !(t > 0.0) || !std::isfinite(x0) || !std::isfinite(L) ||
        !std::isfinite(kappa) || !std::isfinite(t)) {
        throw DomainError("first gap bound needs L > 0, kappa > 0, t > 0 and finite x0");
    }
    if (!alpha.is_strict()) throw DomainError("first gap bound needs alpha < 1");
    const double a = alpha.value();
    return L * (1.0 + std::abs(x0)) * (t + 2.0 * std::pow(t, 1.0 - a) * kappa / (1.0 - a));
}

GapCheck check_first_gap(const CoefficientPair& coeffs, double x0, const DriverPath& path) {
    check_coefficients(coeffs, x0, path.horizon());
    const PicardMap step(coeffs, x0, path);
    const std::vector<double> start(path.grid().size(), x0);
    const std::vector<double> first = step(start);
    if (!all_finite(first)) throw ConvergenceError("first Picard iterate is not finite");
    GapCheck out;
    out.d0 = kernels::max_abs_diff(first, start);
    out.bound = first_gap_bound(coeffs.growth_L, x0, path.kappa(), path.alpha(), path.horizon());
    out.satisfied = out.d0 < out.bound;
    return out;
}

IdentityCheck verify_driver_identity(std::span<const double> grid, std::span<const double> w, double kappa,
                                     FractionalOrder alpha, double t, const QuadratureConfig& cfg) {
    if (!alpha.is_strict()) throw DomainError("identity check needs alpha < 1");
    if (!(kappa > 0.0) || !std::isfinite(kappa)) throw DomainError("kappa must be positive");
    check_grid(grid);
    if (w.size() != grid.size()) throw DomainError("w must have one sample per grid node");
    for (double v : w) {
        if (!(v >= 0.0) || !std::isfinite(v)) throw DomainError("w must be finite and non-negative");
    }
    const std::size_t k = node_index(grid, t);
    const double a = alpha.value();
    const double prefactor = 2.0 * kappa / (1.0 - a);
    IdentityCheck out;
    if (k == 0) return out;

    const std::vector<double> nodes(grid.begin(), grid.begin() + static_cast<std::ptrdiff_t>(k + 1));
    const std::vector<double> vals(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k + 1));
    auto interp = [nodes, vals](double u) { return interpolate(nodes, vals, u); };

    // Left side: order-(1-α) integral through the jumarie module.
    std::vector<double> bps(nodes.begin() + 1, nodes.end() - 1);
    const QuadratureResult lhs = jumarie_integral(callable(interp, Smoothness::continuous, bps),
                                                  alpha.complement(), t, cfg);
    if (!lhs.converged) throw ConvergenceError("identity left side did not converge");

    // Right side: (t-u)^(-α) w(u) panel by panel, weighted rule on the last one.
    std::vector<quadrature::Piece> pieces;
    auto kernel = [interp, t, a](double u) { return std::pow(t - u, -a) * interp(u); };
    for (std::size_t j = 0; j + 1 < k; ++j) pieces.push_back({kernel, nodes[j], nodes[j + 1]});
    QuadratureConfig inner = cfg;
    inner.abs_tol = 0.5 * cfg.abs_tol;
    const QuadratureResult regular = quadrature::adaptive(pieces, inner);
    if (!regular.converged) throw ConvergenceError("identity right side did not converge");
    const double c = nodes[k - 1];
    const double half = 0.5 * (t - c);
    const quadrature::Rule rule = quadrature::gauss_jacobi(kSegmentNodes, -a, 0.0);
    double last = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
        last += rule.weights[i] * interp(c + half * (1.0 + rule.nodes[i]));
    }
    last *= std::pow(half, 1.0 - a);

    out.lhs = prefactor * lhs.value;
    out.rhs = prefactor * (1.0 - a) * (regular.value + last);
    out.residual = std::abs(out.lhs - out.rhs) / std::max(1.0, std::abs(out.lhs));
    return out;
}

}  // namespace fracdt
