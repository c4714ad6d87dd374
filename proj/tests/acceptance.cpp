// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "fracdt/cli.hpp"
#include "fracdt/errors.hpp"
#include "fracdt/fude.hpp"
#include "fracdt/jumarie.hpp"
#include "fracdt/riemann_probe.hpp"
#include "fracdt/specialfn.hpp"
#include "oracle.hpp"

using namespace fracdt;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) detail = what;
        ok = ok && cond;
    }
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

std::string num(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

QuadratureConfig numeric() {
    QuadratureConfig cfg;
    cfg.symbolic_shortcut = false;
    return cfg;
}

struct SmoothFn {
    double c0, c1, w, p, c2;
    double operator()(double x) const { return c0 + c1 * std::sin(w * x + p) + c2 * x * x; }
};

SmoothFn random_smooth(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    return {u(rng), u(rng), 3.0 * std::abs(u(rng)), u(rng), u(rng)};
}

CoefficientPair random_admissible(std::mt19937_64& rng, double L) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double a = u(rng), b = u(rng), p = 3.0 * u(rng);
    const double c = u(rng), d = u(rng), q = 3.0 * u(rng);
    return {[=](double t, double x) { return L * (0.5 * a * std::sin(x + p + t) + 0.5 * b * x); },
            [=](double t, double x) { return L * (0.5 * c * std::cos(x + q) * std::cos(t) + 0.5 * d * x); }, L};
}

Outcome constant_rule() {
    Outcome o;
    double worst = 0.0;
    for (int k = 1; k <= 10; ++k) {
        for (double t : {0.5, 1.0, 2.0}) {
            const double a = 0.1 * k;
            const auto r = jumarie_integral(constant(1.0), FractionalOrder(a), t, numeric());
            worst = std::max(worst, rel(r.value, std::pow(t, a)));
        }
    }
    o.require(worst <= 1e-9, "max rel err " + num(worst));
    o.detail = o.ok ? "max rel err " + num(worst) : o.detail;
    return o;
}

Outcome headline_value() {
    Outcome o;
    std::ostringstream out, err;
    const int code = cli::run({"fracdt", "integrate", "--f", "const:1", "--alpha", "0.5", "--t", "1"}, out, err);
    o.require(code == 0, "exit code " + std::to_string(code));
    std::istringstream is(out.str());
    std::string header, row;
    std::getline(is, header);
    std::getline(is, row);
    std::vector<std::string> cells;
    std::istringstream rs(row);
    for (std::string c; std::getline(rs, c, ',');) cells.push_back(c);
    o.require(cells.size() == 7, "unexpected row '" + row + "'");
    if (o.ok) {
        const double v = std::stod(cells[3]);
        o.require(std::abs(v - 1.0) <= 1e-10, "printed " + cells[3]);
        o.detail = "printed " + cells[3];
    }
    return o;
}

Outcome power_rule() {
    Outcome o;
    double worst = 0.0;
    for (double g : {0.0, 0.5, 1.0, 2.0, 3.7}) {
        for (int k = 1; k <= 9; ++k) {
            const double a = 0.1 * k;
            for (double t : {0.5, 1.0, 2.0}) {
                const double exact = specialfn::gamma(specialfn::PositiveReal(a + 1)) *
                                     specialfn::gamma(specialfn::PositiveReal(g + 1)) /
                                     specialfn::gamma(specialfn::PositiveReal(a + g + 1)) * std::pow(t, a + g);
                const auto r = jumarie_integral(power(g), FractionalOrder(a), t, numeric());
                o.require(r.converged, "non-converged quadrature");
                worst = std::max(worst, rel(r.value, exact));
            }
        }
    }
    o.require(worst <= 1e-8, "max rel err " + num(worst));
    const auto spot = jumarie_integral(power(2.0), FractionalOrder(0.5), 1.0, numeric());
    const double brute = oracle::jumarie([](double s) { return s * s; }, 0.5, 1.0);
    o.require(rel(spot.value, 8.0 / 15.0) <= 1e-10 && rel(brute, 8.0 / 15.0) <= 1e-12, "spot value " + num(spot.value));
    if (o.ok) o.detail = "max rel err " + num(worst) + ", spot 8/15 ok";
    return o;
}

Outcome dirac_rule() {
    Outcome o;
    for (double a : {0.1, 0.3, 0.5, 0.7, 1.0}) {
        for (double t : {0.25, 0.5, 1.0, 2.0, 4.0}) {
            const double v = closed_form(dirac_delta(), FractionalOrder(a), t);
            o.require(v == a * std::pow(t, a - 1.0), "alpha=" + num(a) + " t=" + num(t));
        }
    }
    if (o.ok) o.detail = "25/25 exact";
    return o;
}

Outcome divergence() {
    Outcome o;
    std::vector<long> ns;
    for (long n = 16; n <= 65536; n *= 4) ns.push_back(n);
    const auto s = side_by_side(constant(1.0), FractionalOrder(0.5), 1.0, ns);
    for (std::size_t k = 0; k < ns.size(); ++k) {
        const double root = std::sqrt(static_cast<double>(ns[k]));
        o.require(std::abs(s.report.sums[k] - root) <= 4 * std::numeric_limits<double>::epsilon() * root,
                  "sum at n=" + std::to_string(ns[k]));
    }
    o.require(s.report.fitted_exponent >= 0.48 && s.report.fitted_exponent <= 0.52,
              "slope " + num(s.report.fitted_exponent));
    o.require(s.report.verdict == Verdict::diverges, "verdict " + std::string(to_string(s.report.verdict)));
    o.require(std::abs(s.definition_value - 1.0) <= 1e-12, "definition value " + num(s.definition_value));
    if (o.ok) o.detail = "slope " + num(s.report.fitted_exponent) + ", definition value 1";
    return o;
}

Outcome bridge() {
    Outcome o;
    std::mt19937_64 rng(5);
    double worst = 0.0;
    for (int i = 0; i < 10; ++i) {
        const double a = 0.05 + 0.095 * i;
        const SmoothFn f = random_smooth(rng);
        for (int j = 0; j < 10; ++j) {
            const double t = 0.2 + 0.3 * j;
            const auto J = jumarie_integral(callable(f), FractionalOrder(a), t);
            const auto R = riemann_liouville(callable(f), FractionalOrder(a), t);
            const double g = specialfn::gamma(specialfn::PositiveReal(a + 1.0));
            worst = std::max(worst, std::abs(J.value - g * R.value) / std::max(std::abs(J.value), 1e-300));
        }
    }
    o.require(worst <= 1e-9, "max rel gap " + num(worst));
    if (o.ok) o.detail = "max rel gap " + num(worst);
    return o;
}

Outcome driver_identity() {
    Outcome o;
    std::mt19937_64 rng(211);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 30; ++trial) {
        const FractionalOrder a(0.02 + 0.96 * u(rng));
        const double kappa = 0.1 + 5.0 * u(rng);
        const std::size_t m = 8 + static_cast<std::size_t>(56 * u(rng));
        const auto grid = uniform_grid(0.1 + 3.0 * u(rng), m);
        const double c0 = u(rng), c1 = u(rng), w1 = 6.0 * u(rng), p = 6.0 * u(rng);
        std::vector<double> w(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) w[i] = c0 + c1 * (1.0 + std::sin(w1 * grid[i] + p));
        const double t = grid[1 + static_cast<std::size_t>((m - 1) * u(rng))];
        worst = std::max(worst, verify_driver_identity(grid, w, kappa, a, t).residual);
    }
    o.require(worst <= 1e-8, "max residual " + num(worst));
    if (o.ok) o.detail = "max residual " + num(worst);
    return o;
}

Outcome ode_limit() {
    Outcome o;
    const auto grid = uniform_grid(1.0, 512);
    const auto path = make_driver(ConstantDriver{0.0}, 1.0, FractionalOrder(0.5), grid);
    const CoefficientPair c{[](double, double x) { return x; }, [](double, double) { return 0.0; }, 1.0};
    const auto tr = picard_solve(c, 1.0, path);
    const double ode = oracle::rk4([](double, double x) { return x; }, 1.0, 1.0, 4096);
    const double err = std::abs(tr.iterates.back().back() - ode);
    o.require(tr.converged, "not converged");
    o.require(tr.iterations_used <= 25, std::to_string(tr.iterations_used) + " iterations");
    o.require(err <= 1e-6, "|X(1) - e| = " + num(err));
    if (o.ok) o.detail = "|X(1) - e| = " + num(err) + " after " + std::to_string(tr.iterations_used) + " iterations";
    return o;
}

Outcome driver_only() {
    Outcome o;
    const auto grid = uniform_grid(1.0, 256);
    const auto path = make_driver(ConstantDriver{1.0}, 1.0, FractionalOrder(0.5), grid);
    const CoefficientPair c{[](double, double) { return 0.0; }, [](double, double) { return 1.0; }, 1.0};
    const double x0 = 0.75;
    const auto tr = picard_solve(c, x0, path);
    double worst = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        worst = std::max(worst, std::abs(tr.iterates.back()[i] - x0 - std::sqrt(grid[i])));
    o.require(tr.converged, "not converged");
    o.require(worst <= 1e-7, "max err " + num(worst));
    if (o.ok) o.detail = "max err " + num(worst);
    return o;
}

Outcome first_gap() {
    Outcome o;
    o.require(first_gap_bound(1.0, 0.0, 1.0, FractionalOrder(0.5), 1.0) == 5.0, "spot value");
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    int satisfied = 0;
    for (int trial = 0; trial < 20; ++trial) {
        const double L = 0.2 + 2.0 * u(rng);
        const FractionalOrder a(0.05 + 0.9 * u(rng));
        const double kappa = 0.2 + 2.0 * u(rng);
        const auto grid = uniform_grid(0.2 + 1.8 * u(rng), 48);
        const auto path = make_driver(SeededSmoothDriver{static_cast<std::uint64_t>(trial), 5}, kappa, a, grid);
        satisfied += check_first_gap(random_admissible(rng, L), 4.0 * (u(rng) - 0.5), path).satisfied;
    }
    o.require(satisfied == 20, std::to_string(satisfied) + "/20 satisfied");
    if (o.ok) o.detail = "20/20 satisfied, bound(1,0,1,0.5,1) = 5";
    return o;
}

Outcome properties() {
    Outcome o;
    std::uniform_real_distribution<double> ua(0.05, 1.0);
    std::uniform_real_distribution<double> ut(0.1, 3.0);
    std::uniform_real_distribution<double> uc(-3.0, 3.0);
    std::uniform_real_distribution<double> u01(0.0, 1.0);

    int linear = 0, reduction = 0, positive = 0, contraction = 0, determinism = 0;
    std::mt19937_64 rng(23);
    for (int i = 0; i < 100; ++i) {
        const SmoothFn f = random_smooth(rng), g = random_smooth(rng);
        const double ca = uc(rng), cb = uc(rng);
        const FractionalOrder a(ua(rng));
        const double t = ut(rng);
        const auto rf = jumarie_integral(callable(f), a, t);
        const auto rg = jumarie_integral(callable(g), a, t);
        const auto rs = jumarie_integral(callable([&](double x) { return ca * f(x) + cb * g(x); }), a, t);
        const double slack = rs.error_estimate + std::abs(ca) * rf.error_estimate + std::abs(cb) * rg.error_estimate +
                             1e-14 * (std::abs(ca * rf.value) + std::abs(cb * rg.value) + 1.0);
        linear += std::abs(rs.value - (ca * rf.value + cb * rg.value)) <= slack;
    }
    rng.seed(11);
    for (int i = 0; i < 100; ++i) {
        const SmoothFn f = random_smooth(rng);
        const double t = ut(rng);
        const double plain = oracle::tanh_sinh(std::function<double(double)>(f), 0.0, t);
        const auto r = jumarie_integral(callable(f), FractionalOrder(1.0), t);
        reduction += std::abs(r.value - plain) <= 1e-9 * std::max(1.0, std::abs(plain));
    }
    rng.seed(29);
    const QuadratureConfig defaults;
    for (int i = 0; i < 100; ++i) {
        const SmoothFn base = random_smooth(rng);
        const FractionalOrder a(ua(rng));
        const double t = ut(rng);
        positive += jumarie_integral(callable([base](double x) { return base(x) * base(x); }), a, t).value >=
                    -defaults.abs_tol;
    }
    rng.seed(307);
    for (int trial = 0; trial < 100; ++trial) {
        const double L = 0.2 + 0.8 * u01(rng);
        const FractionalOrder a(0.1 + 0.8 * u01(rng));
        const double kappa = 0.05 + 0.25 * u01(rng);
        const auto grid = uniform_grid(0.1 + 0.4 * u01(rng), 32);
        const auto path = make_driver(SeededSmoothDriver{static_cast<std::uint64_t>(trial), 3}, kappa, a, grid);
        const auto tr = picard_solve(random_admissible(rng, L), 2.0 * (u01(rng) - 0.5), path, {1e-10, 60});
        bool ok = tr.converged && tr.contraction_factor < 1.0;
        for (std::size_t n = 0; ok && n + 1 < tr.gaps.size(); ++n)
            ok = tr.gaps[n + 1] <= tr.contraction_factor * tr.gaps[n] + 1e-13;
        contraction += ok;
    }
    rng.seed(401);
    const auto grid = uniform_grid(1.0, 32);
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto p1 = make_driver(SeededSmoothDriver{seed, 4}, 1.0, FractionalOrder(0.4), grid);
        const auto p2 = make_driver(SeededSmoothDriver{seed, 4}, 1.0, FractionalOrder(0.4), grid);
        const auto coeffs = random_admissible(rng, 0.5);
        determinism += p1 == p2 && picard_solve(coeffs, 0.3, p1) == picard_solve(coeffs, 0.3, p2);
    }
    std::ostringstream d;
    d << "linearity " << linear << ", alpha=1 " << reduction << ", positivity " << positive << ", contraction "
      << contraction << ", determinism " << determinism << " (of 100)";
    o.require(linear == 100 && reduction == 100 && positive == 100 && contraction == 100 && determinism == 100,
              d.str());
    o.detail = d.str();
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        int id;
        const char* name;
        double budget_s;  // 0 = no runtime limit
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria = {
        {1, "constant rule", 1.0, constant_rule},
        {2, "headline value from the CLI", 0.0, headline_value},
        {3, "power rule", 5.0, power_rule},
        {4, "Dirac rule", 0.0, dirac_rule},
        {5, "Riemann-sum divergence vs definition", 2.0, divergence},
        {6, "bridge identity", 0.0, bridge},
        {7, "driver-integral identity", 0.0, driver_identity},
        {8, "ODE limit", 10.0, ode_limit},
        {9, "driver-only solution", 0.0, driver_only},
        {10, "first-gap bound", 0.0, first_gap},
        {11, "property suites", 0.0, properties},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.budget_s > 0.0 && secs >= c.budget_s) {
            o.ok = false;
            o.detail += " (runtime " + num(secs) + " s over " + num(c.budget_s) + " s)";
        }
        failures += !o.ok;
        std::printf("%s  %2d  %-38s %7.3f s  %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs, o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
