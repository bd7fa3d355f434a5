#include <atomic>
#include <cstdlib>
#include <string>
#include <string_view>

#include "mgm/errors.hpp"
#include "mgm/kernels.hpp"

namespace mgm::kernels {

#ifndef MGM_HAVE_AVX2
namespace avx2 {
// Not built for this target; isa_available(Avx2) is false so these never run.
void code_packed(const PackedWords& words, double b0, double b1, std::span<double> out) {
    scalar::code_packed(words, b0, b1, out);
}
void poly_eval_grid(std::span<const double> coeffs, std::span<const double> xs,
                    std::span<double> f, std::span<double> fprime) {
    scalar::poly_eval_grid(coeffs, xs, f, fprime);
}
GridMin transversality_min(std::span<const double> coeffs, std::span<const double> xs) {
    return scalar::transversality_min(coeffs, xs);
}
}  // namespace avx2
#endif

namespace {

Isa detect() {
    const char* env = std::getenv("MGM_SIMD");
    const std::string_view want = env ? env : "auto";
    if (want == "scalar") return Isa::Scalar;
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
    static std::atomic<Isa> isa{detect()};
    return isa;
}

}  // namespace

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
    if (isa == Isa::Scalar) return true;
#if defined(MGM_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2");
#else
    return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
    if (!isa_available(isa)) {
        throw DomainError(std::string("kernel variant not available: ") + to_string(isa));
    }
    current().store(isa, std::memory_order_relaxed);
}

void code_packed(const PackedWords& words, double b0, double b1, std::span<double> out) {
    if (active_isa() == Isa::Avx2) return avx2::code_packed(words, b0, b1, out);
    scalar::code_packed(words, b0, b1, out);
}

void poly_eval_grid(std::span<const double> coeffs, std::span<const double> xs,
                    std::span<double> f, std::span<double> fprime) {
    if (active_isa() == Isa::Avx2) return avx2::poly_eval_grid(coeffs, xs, f, fprime);
    scalar::poly_eval_grid(coeffs, xs, f, fprime);
}

GridMin transversality_min(std::span<const double> coeffs, std::span<const double> xs) {
    if (active_isa() == Isa::Avx2) return avx2::transversality_min(coeffs, xs);
    return scalar::transversality_min(coeffs, xs);
}

}  // namespace mgm::kernels
