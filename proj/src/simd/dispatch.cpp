#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

#include "svgbench/simd.hpp"

#ifndef SVGBENCH_HAVE_AVX2
namespace svgbench::simd::avx2 {
const KernelTable table{};
}
#endif

namespace svgbench::simd {

namespace {

Isa initial_isa() {
    Isa isa = detected_isa();
    if (const char* env = std::getenv("SVGBENCH_ISA")) {
        const std::string_view v(env);
        if (v == "scalar") isa = Isa::Scalar;
        else if (v == "avx2" && isa_supported(Isa::Avx2)) isa = Isa::Avx2;
    }
    return isa;
}

std::atomic<Isa>& active() {
    static std::atomic<Isa> isa{initial_isa()};
    return isa;
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_supported(Isa isa) {
    if (isa == Isa::Scalar) return true;
#if defined(SVGBENCH_HAVE_AVX2) && (defined(__x86_64__) || defined(__i386__))
    static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return ok;
#else
    return false;
#endif
}

Isa detected_isa() { return isa_supported(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar; }

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
    if (!isa_supported(isa)) throw std::invalid_argument(std::string("ISA not supported: ") + isa_name(isa));
    active().store(isa, std::memory_order_relaxed);
}

const KernelTable& kernels(Isa isa) { return isa == Isa::Avx2 ? avx2::table : scalar::table; }

const KernelTable& kernels() { return kernels(active_isa()); }

}  // namespace svgbench::simd
