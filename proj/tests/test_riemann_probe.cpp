#include <doctest.h>

#include <cmath>
#include <random>

#include "fracdt/errors.hpp"
#include "fracdt/riemann_probe.hpp"

using namespace fracdt;

namespace {

// Plain long double summation as an independent reference.
long double brute_sum(const std::function<double(double)>& f, double alpha, double t, long n, SamplePoint sp) {
    const long double h = static_cast<long double>(t) / n;
    const long double w = std::pow(h, static_cast<long double>(alpha));
    long double acc = 0.0L;
    for (long i = 1; i <= n; ++i) {
        long double s = h * i;
        if (sp == SamplePoint::left) s = h * (i - 1);
        if (sp == SamplePoint::midpoint) s = h * (i - 0.5L);
        acc += f(static_cast<double>(s)) * w;
    }
    return acc;
}

const std::vector<long> kDecade = {16, 64, 256, 1024, 4096};

}  // namespace

TEST_CASE("riemann_sum spot values") {
    CHECK(riemann_sum(constant(1.0), FractionalOrder(0.5), 1.0, 100) == doctest::Approx(10.0).epsilon(1e-15));
    CHECK(riemann_sum(constant(1.0), FractionalOrder(0.5), 1.0, 4) == doctest::Approx(2.0).epsilon(1e-15));
    for (long n : {1L, 7L, 1000L, 123457L}) {
        CHECK(std::abs(riemann_sum(constant(1.0), FractionalOrder(1.0), 1.0, n) - 1.0) <= 1e-14);
    }
}

TEST_CASE("riemann_sum domain") {
    const FractionalOrder a(0.5);
    CHECK_THROWS_AS(riemann_sum(dirac_delta(), a, 1.0, 10), RefusalError);
    CHECK_THROWS_AS(riemann_sum(dirac_delta(), a, 1.0, 10), DomainError);
    CHECK_THROWS_AS(riemann_sum(constant(1.0), a, 0.0, 10), DomainError);
    CHECK_THROWS_AS(riemann_sum(constant(1.0), a, -1.0, 10), DomainError);
    CHECK_THROWS_AS(riemann_sum(constant(1.0), a, 1.0, 0), DomainError);
    CHECK_THROWS_AS(divergence_scan(constant(1.0), a, 1.0, {16, 64, 256}), DomainError);
    CHECK_THROWS_AS(divergence_scan(constant(1.0), a, 1.0, {16, 64, 64, 256}), DomainError);
    CHECK_THROWS_AS(divergence_scan(constant(1.0), a, 1.0, {1, 4, 16, 64}), DomainError);
    CHECK_THROWS_AS(divergence_scan(dirac_delta(), a, 1.0, kDecade), RefusalError);
}

TEST_CASE("constant sums are t^alpha n^(1-alpha)") {
    for (double a : {0.1, 0.5, 0.9}) {
        for (double t : {0.3, 1.0, 2.5}) {
            for (long n : {1L, 3L, 64L, 1000L, 65536L, 1000000L}) {
                const double exact = std::pow(t, a) * std::pow(static_cast<double>(n), 1.0 - a);
                const double got = riemann_sum(constant(1.0), FractionalOrder(a), t, n);
                CHECK(std::abs(got - exact) <= 8 * std::numeric_limits<double>::epsilon() * exact);
            }
        }
    }
}

TEST_CASE("sample points match brute summation") {
    auto f = [](double x) { return std::exp(-x) + x * x; };
    for (auto sp : {SamplePoint::left, SamplePoint::right, SamplePoint::midpoint}) {
        for (long n : {5L, 100L, 10007L}) {
            const double got = riemann_sum(callable(f), FractionalOrder(0.4), 1.5, n, {sp});
            const double ref = static_cast<double>(brute_sum(f, 0.4, 1.5, n, sp));
            CHECK(std::abs(got - ref) <= 1e-13 * std::abs(ref));
        }
    }
}

TEST_CASE("alpha = 1 left sums converge at first order") {
    auto f = [](double x) { return std::sin(x) + 2.0; };
    const double exact = (1.0 - std::cos(2.0)) + 4.0;
    double prev = 0.0;
    for (long n : {100L, 1000L, 10000L}) {
        const double err = std::abs(riemann_sum(callable(f), FractionalOrder(1.0), 2.0, n, {SamplePoint::left}) - exact);
        if (prev > 0.0) {
            const double ratio = prev / err;
            CHECK(ratio > 8.0);
            CHECK(ratio < 12.0);
        }
        prev = err;
    }
}

TEST_CASE("divergence scan examples") {
    const auto r = divergence_scan(constant(1.0), FractionalOrder(0.5), 1.0, kDecade);
    CHECK(r.ns == kDecade);
    REQUIRE(r.sums.size() == kDecade.size());
    CHECK(r.sums[0] == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(r.sums[4] == doctest::Approx(64.0).epsilon(1e-15));
    CHECK(std::abs(r.fitted_exponent - 0.5) < 1e-12);
    CHECK(r.fitted_r2 > 1.0 - 1e-12);
    CHECK(r.fitted_r2 <= 1.0);
    CHECK(r.verdict == Verdict::diverges);

    const auto one = divergence_scan(constant(1.0), FractionalOrder(1.0), 1.0, kDecade);
    CHECK(std::abs(one.fitted_exponent) < 1e-12);
    CHECK(one.verdict == Verdict::converges);

    const auto lin = divergence_scan(power(1.0), FractionalOrder(0.5), 1.0, kDecade);
    for (std::size_t k = 0; k < kDecade.size(); ++k) {
        const double ref = static_cast<double>(brute_sum([](double x) { return x; }, 0.5, 1.0, kDecade[k], SamplePoint::right));
        CHECK(std::abs(lin.sums[k] - ref) <= 1e-13 * ref);
    }
    CHECK(std::abs(lin.fitted_exponent - 0.5) < 0.01);
    CHECK(lin.verdict == Verdict::diverges);
}

TEST_CASE("slope law 1 - alpha") {
    const std::vector<long> ns = {10, 40, 160, 640, 2560, 10240};
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.1, 2.0);
    for (int k = 1; k <= 9; ++k) {
        const double a = 0.1 * k;
        const double c0 = u(rng), c1 = u(rng);
        auto f = [c0, c1](double x) { return c0 + c1 * std::cos(x) * std::cos(x); };
        const auto r = divergence_scan(callable(f), FractionalOrder(a), u(rng), ns);
        CHECK(r.fitted_exponent >= 1.0 - a - 0.02);
        CHECK(r.fitted_exponent <= 1.0 - a + 0.02);
        CHECK(r.verdict == Verdict::diverges);
    }
}

TEST_CASE("constant sums grow strictly") {
    for (double a : {0.1, 0.5, 0.95}) {
        double prev = 0.0;
        for (long n = 1; n <= 4096; n *= 2) {
            const double s = riemann_sum(constant(1.0), FractionalOrder(a), 1.0, n);
            CHECK(s > prev);
            prev = s;
        }
    }
}

TEST_CASE("sign-changing and vanishing sums are inconclusive") {
    // Right-sample sums of sin(2πx) over [0,1] are zero up to rounding and change sign.
    const auto r = divergence_scan(callable([](double x) { return std::sin(2.0 * M_PI * x); }), FractionalOrder(0.5),
                                   1.0, kDecade);
    CHECK(r.verdict == Verdict::inconclusive);
    CHECK(r.fitted_exponent == 0.0);
    CHECK(r.fitted_r2 == 0.0);

    const auto z = divergence_scan(constant(0.0), FractionalOrder(0.5), 1.0, kDecade);
    CHECK(z.verdict == Verdict::inconclusive);

    // Sums of a fixed negative constant are placed on the log scale by magnitude.
    const auto neg = divergence_scan(constant(-3.0), FractionalOrder(0.5), 1.0, kDecade);
    CHECK(neg.verdict == Verdict::diverges);
    CHECK(std::abs(neg.fitted_exponent - 0.5) < 1e-12);
}

TEST_CASE("poor fits are inconclusive") {
    // A spike at the right end dominates the small-n sums and fades as n grows,
    // so log|sum| bends instead of following a line.
    auto f = [](double x) { return x > 0.999 ? 1e6 : 1.0; };
    const auto r = divergence_scan(callable(f), FractionalOrder(0.5), 1.0, {4, 8, 16, 32, 2000, 4000});
    CHECK(r.fitted_exponent < -kSlopeThreshold);
    CHECK(r.fitted_r2 < kR2Threshold);
    CHECK(r.fitted_r2 >= 0.0);
    CHECK(r.verdict == Verdict::inconclusive);
}

TEST_CASE("side by side") {
    const auto a = side_by_side(constant(1.0), FractionalOrder(0.5), 1.0, kDecade);
    CHECK(std::abs(a.definition_value - 1.0) <= 1e-10);
    CHECK(a.report.verdict == Verdict::diverges);

    const auto b = side_by_side(constant(1.0), FractionalOrder(1.0), 1.0, kDecade);
    CHECK(std::abs(b.definition_value - 1.0) <= 1e-12);
    CHECK(b.report.verdict == Verdict::converges);

    const auto c = side_by_side(power(2.0), FractionalOrder(0.5), 1.0, kDecade);
    CHECK(std::abs(c.definition_value - 8.0 / 15.0) <= 1e-12);
    CHECK(c.report.verdict == Verdict::diverges);
}

TEST_CASE("enum names") {
    CHECK(to_string(Verdict::diverges) == "diverges");
    CHECK(to_string(Verdict::converges) == "converges");
    CHECK(to_string(Verdict::inconclusive) == "inconclusive");
    CHECK(to_string(SamplePoint::midpoint) == "midpoint");
}
