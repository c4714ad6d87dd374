#pragma once
// Data-parallel inner loops shared by the probe and the Picard solver.
//
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant. The dispatching entry points pick the widest variant the
// running CPU supports, once per process. Both variants are always linked so
// tests can compare them directly.

#include <cstddef>
#include <span>
#include <string_view>

#if defined(__x86_64__) || defined(_M_X64)
#define FRACDT_HAVE_X86 1
#else
#define FRACDT_HAVE_X86 0
#endif

namespace fracdt::kernels {

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// True when the CPU reports both AVX2 and FMA.
bool avx2_available() noexcept;

/// ISA used by the dispatching entry points below.
Isa active_isa() noexcept;

/// Neumaier-compensated sum.
double compensated_sum(std::span<const double> xs) noexcept;

/// Inner product; a and b must have equal length.
double dot(std::span<const double> a, std::span<const double> b) noexcept;

/// max_i |a_i - b_i|; NaN if any difference is NaN, 0 for empty input.
double max_abs_diff(std::span<const double> a, std::span<const double> b) noexcept;

namespace scalar {
double compensated_sum(std::span<const double> xs) noexcept;
double dot(std::span<const double> a, std::span<const double> b) noexcept;
double max_abs_diff(std::span<const double> a, std::span<const double> b) noexcept;
}  // namespace scalar

#if FRACDT_HAVE_X86
// Callers must check avx2_available() first.
namespace avx2 {
double compensated_sum(std::span<const double> xs) noexcept;
double dot(std::span<const double> a, std::span<const double> b) noexcept;
double max_abs_diff(std::span<const double> a, std::span<const double> b) noexcept;
}  // namespace avx2
#endif

}  // namespace fracdt::kernels
