#include "fracdt/kernels.hpp"

namespace fracdt::kernels {

namespace {

struct Table {
    Isa isa;
    double (*sum)(std::span<const double>) noexcept;
    double (*dot)(std::span<const double>, std::span<const double>) noexcept;
    double (*max_abs_diff)(std::span<const double>, std::span<const double>) noexcept;
};

Table select() noexcept {
#if FRACDT_HAVE_X86
    if (avx2_available()) {
        return {Isa::avx2, &avx2::compensated_sum, &avx2::dot, &avx2::max_abs_diff};
    }
#endif
    return {Isa::scalar, &scalar::compensated_sum, &scalar::dot, &scalar::max_abs_diff};
}

const Table& table() noexcept {
    static const Table t = select();
    return t;
}

}  // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
        case Isa::avx2:
            return "avx2";
        case Isa::scalar:
            break;
    }
    return "scalar";
}

bool avx2_available() noexcept {
#if FRACDT_HAVE_X86 && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Isa active_isa() noexcept { return table().isa; }

double compensated_sum(std::span<const double> xs) noexcept { return table().sum(xs); }

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    return table().dot(a, b);
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) noexcept {
    return table().max_abs_diff(a, b);
}

}  // namespace fracdt::kernels
