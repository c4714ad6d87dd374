#include "fracdt/kernels.hpp"

#if FRACDT_HAVE_X86

#include <immintrin.h>

#include <cmath>
#include <limits>

#define FRACDT_AVX2 __attribute__((target("avx2,fma")))

namespace fracdt::kernels::avx2 {

namespace {

FRACDT_AVX2 inline __m256d abs_pd(__m256d v) {
    return _mm256_andnot_pd(_mm256_set1_pd(-0.0), v);
}

}  // namespace

FRACDT_AVX2 double compensated_sum(std::span<const double> xs) noexcept {
    const std::size_t n = xs.size();
    const double* p = xs.data();
    __m256d s = _mm256_setzero_pd();
    __m256d c = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d x = _mm256_loadu_pd(p + i);
        const __m256d t = _mm256_add_pd(s, x);
        // Neumaier branch taken per lane: |s| >= |x| ? (s - t) + x : (x - t) + s
        const __m256d s_big = _mm256_cmp_pd(abs_pd(s), abs_pd(x), _CMP_GE_OQ);
        const __m256d big = _mm256_blendv_pd(x, s, s_big);
        const __m256d small = _mm256_blendv_pd(s, x, s_big);
        c = _mm256_add_pd(c, _mm256_add_pd(_mm256_sub_pd(big, t), small));
        s = t;
    }
    alignas(32) double ls[4];
    alignas(32) double lc[4];
    _mm256_store_pd(ls, s);
    _mm256_store_pd(lc, c);

    // Fold lanes and the tail with the same scalar recurrence.
    double acc = 0.0;
    double comp = lc[0] + lc[1] + lc[2] + lc[3];
    auto add = [&](double x) {
        const double t = acc + x;
        if (std::abs(acc) >= std::abs(x)) {
            comp += (acc - t) + x;
        } else {
            comp += (x - t) + acc;
        }
        acc = t;
    };
    for (double v : ls) add(v);
    for (; i < n; ++i) add(p[i]);
    return acc + comp;
}

FRACDT_AVX2 double dot(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t n = a.size();
    const double* pa = a.data();
    const double* pb = b.data();
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
        acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i + 4), _mm256_loadu_pd(pb + i + 4), acc1);
    }
    for (; i + 4 <= n; i += 4) {
        acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i), acc0);
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, _mm256_add_pd(acc0, acc1));
    double acc = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
    for (; i < n; ++i) acc = std::fma(pa[i], pb[i], acc);
    return acc;
}

FRACDT_AVX2 double max_abs_diff(std::span<const double> a, std::span<const double> b) noexcept {
    const std::size_t n = a.size();
    const double* pa = a.data();
    const double* pb = b.data();
    __m256d m = _mm256_setzero_pd();
    __m256d nan_seen = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d d = abs_pd(_mm256_sub_pd(_mm256_loadu_pd(pa + i), _mm256_loadu_pd(pb + i)));
        nan_seen = _mm256_or_pd(nan_seen, _mm256_cmp_pd(d, d, _CMP_UNORD_Q));
        m = _mm256_max_pd(m, d);
    }
    if (_mm256_movemask_pd(nan_seen) != 0) return std::numeric_limits<double>::quiet_NaN();
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, m);
    double out = 0.0;
    for (double v : lanes) out = v > out ? v : out;
    for (; i < n; ++i) {
        const double d = std::abs(pa[i] - pb[i]);
        if (std::isnan(d)) return std::numeric_limits<double>::quiet_NaN();
        if (d > out) out = d;
    }
    return out;
}

}  // namespace fracdt::kernels::avx2

#endif
