#pragma once

// Data-parallel inner loops. Each kernel has a scalar reference implementation
// and, on x86-64, an AVX2 variant; the variant is chosen once at runtime from
// the CPU features and the MGM_SIMD environment variable (scalar|avx2|auto).
//
// The vector variants perform the same floating-point operations in the same
// order as the scalar ones (no FMA contraction), so their results are
// bit-identical. The kernel tests assert exact equality.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mgm/subshift.hpp"

namespace mgm::kernels {

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);

// The variant currently used by the dispatching entry points.
Isa active_isa();

// True if the CPU and the build both support the variant.
bool isa_available(Isa isa);

// Overrides the runtime choice; throws DomainError when unavailable.
void set_isa(Isa isa);

// Words of a common depth packed one bit per symbol, least significant bit
// first. Word w occupies bits[w * chunks, (w + 1) * chunks).
struct PackedWords {
    std::size_t count = 0;
    std::size_t depth = 0;
    std::size_t chunks = 0;
    std::vector<std::uint64_t> bits;

    PackedWords() = default;
    PackedWords(std::size_t count, std::size_t depth);

    std::uint64_t* word(std::size_t w) { return bits.data() + w * chunks; }
    const std::uint64_t* word(std::size_t w) const { return bits.data() + w * chunks; }
    void set(std::size_t w, std::size_t k, Symbol s) {
        if (s) word(w)[k >> 6] |= std::uint64_t{1} << (k & 63);
    }
    Symbol get(std::size_t w, std::size_t k) const {
        return static_cast<Symbol>((word(w)[k >> 6] >> (k & 63)) & 1);
    }
    void assign(std::size_t w, SymbolSpan symbols);
};

struct GridMin {
    double value = 0.0;
    std::size_t index = 0;  // first grid index attaining the minimum
};

// Coding map of every packed word at ratios (b0, b1); out.size() == words.count.
void code_packed(const PackedWords& words, double b0, double b1, std::span<double> out);

// f(x) = sum_k coeffs[k] x^k and f'(x) at every x (Horner, jointly).
void poly_eval_grid(std::span<const double> coeffs, std::span<const double> xs,
                    std::span<double> f, std::span<double> fprime);

// min over xs of max(f(x), -f'(x)).
GridMin transversality_min(std::span<const double> coeffs, std::span<const double> xs);

namespace scalar {
void code_packed(const PackedWords& words, double b0, double b1, std::span<double> out);
void poly_eval_grid(std::span<const double> coeffs, std::span<const double> xs,
                    std::span<double> f, std::span<double> fprime);
GridMin transversality_min(std::span<const double> coeffs, std::span<const double> xs);
}  // namespace scalar

namespace avx2 {
void code_packed(const PackedWords& words, double b0, double b1, std::span<double> out);
void poly_eval_grid(std::span<const double> coeffs, std::span<const double> xs,
                    std::span<double> f, std::span<double> fprime);
GridMin transversality_min(std::span<const double> coeffs, std::span<const double> xs);
}  // namespace avx2

}  // namespace mgm::kernels
