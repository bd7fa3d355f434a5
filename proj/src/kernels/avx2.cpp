// Compiled with -mavx2. Nothing here may run before dispatch has confirmed
// CPU support.

#include <immintrin.h>

#include <algorithm>

#include "mgm/kernels.hpp"

namespace mgm::kernels::avx2 {

void code_packed(const PackedWords& words, double b0, double b1, std::span<double> out) {
    const __m256d vb0 = _mm256_set1_pd(b0);
    const __m256d vb1 = _mm256_set1_pd(b1);
    const __m256i one = _mm256_set1_epi64x(1);
    const std::size_t chunks = words.chunks;
    std::size_t w = 0;
    for (; w + 4 <= words.count; w += 4) {
        const std::uint64_t* base = words.word(w);
        __m256d weight = _mm256_set1_pd(1.0);
        __m256d value = _mm256_setzero_pd();
        for (std::size_t c = 0; c < chunks; ++c) {
            __m256i lanes = _mm256_set_epi64x(
                static_cast<long long>(base[3 * chunks + c]), static_cast<long long>(base[2 * chunks + c]),
                static_cast<long long>(base[chunks + c]), static_cast<long long>(base[c]));
            const std::size_t stop = std::min<std::size_t>(64, words.depth - c * 64);
            for (std::size_t b = 0; b < stop; ++b) {
                const __m256i bit = _mm256_and_si256(lanes, one);
                lanes = _mm256_srli_epi64(lanes, 1);
                const __m256d mask = _mm256_castsi256_pd(_mm256_cmpeq_epi64(bit, one));
                weight = _mm256_mul_pd(weight, _mm256_blendv_pd(vb0, vb1, mask));
                value = _mm256_add_pd(value, _mm256_and_pd(mask, weight));
            }
        }
        _mm256_storeu_pd(out.data() + w, value);
    }
    if (w < words.count) {
        PackedWords tail(words.count - w, words.depth);
        std::copy(words.word(w), words.word(words.count), tail.bits.begin());
        scalar::code_packed(tail, b0, b1, out.subspan(w));
    }
}

namespace {

inline void horner4(const double* coeffs, std::size_t n, __m256d x, __m256d& p, __m256d& dp) {
    p = _mm256_set1_pd(n ? coeffs[n - 1] : 0.0);
    dp = _mm256_setzero_pd();
    for (std::size_t k = n ? n - 1 : 0; k-- > 0;) {
        dp = _mm256_add_pd(_mm256_mul_pd(dp, x), p);
        p = _mm256_add_pd(_mm256_mul_pd(p, x), _mm256_set1_pd(coeffs[k]));
    }
}

}  // namespace

void poly_eval_grid(std::span<const double> coeffs, std::span<const double> xs,
                    std::span<double> f, std::span<double> fprime) {
    std::size_t j = 0;
    for (; j + 4 <= xs.size(); j += 4) {
        __m256d p, dp;
        horner4(coeffs.data(), coeffs.size(), _mm256_loadu_pd(xs.data() + j), p, dp);
        _mm256_storeu_pd(f.data() + j, p);
        _mm256_storeu_pd(fprime.data() + j, dp);
    }
    if (j < xs.size()) {
        scalar::poly_eval_grid(coeffs, xs.subspan(j), f.subspan(j), fprime.subspan(j));
    }
}

GridMin transversality_min(std::span<const double> coeffs, std::span<const double> xs) {
    if (xs.size() < 4) return scalar::transversality_min(coeffs, xs);
    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d best = _mm256_set1_pd(0.0);
    __m256i best_idx = _mm256_setzero_si256();
    __m256i idx = _mm256_set_epi64x(3, 2, 1, 0);
    const __m256i step = _mm256_set1_epi64x(4);
    std::size_t j = 0;
    for (; j + 4 <= xs.size(); j += 4) {
        __m256d p, dp;
        horner4(coeffs.data(), coeffs.size(), _mm256_loadu_pd(xs.data() + j), p, dp);
        const __m256d neg = _mm256_xor_pd(dp, sign);
        // Same selection as the scalar (p < neg ? neg : p).
        const __m256d v = _mm256_blendv_pd(p, neg, _mm256_cmp_pd(p, neg, _CMP_LT_OQ));
        if (j == 0) {
            best = v;
            best_idx = idx;
        } else {
            const __m256d better = _mm256_cmp_pd(v, best, _CMP_LT_OQ);
            best = _mm256_blendv_pd(best, v, better);
            best_idx = _mm256_castpd_si256(_mm256_blendv_pd(
                _mm256_castsi256_pd(best_idx), _mm256_castsi256_pd(idx), better));
        }
        idx = _mm256_add_epi64(idx, step);
    }
    alignas(32) double vals[4];
    alignas(32) long long inds[4];
    _mm256_store_pd(vals, best);
    _mm256_store_si256(reinterpret_cast<__m256i*>(inds), best_idx);
    GridMin out{vals[0], static_cast<std::size_t>(inds[0])};
    for (int l = 1; l < 4; ++l) {
        const auto li = static_cast<std::size_t>(inds[l]);
        if (vals[l] < out.value || (vals[l] == out.value && li < out.index)) out = {vals[l], li};
    }
    if (j < xs.size()) {
        GridMin rest = scalar::transversality_min(coeffs, xs.subspan(j));
        rest.index += j;
        if (rest.value < out.value) out = rest;
    }
    return out;
}

}  // namespace mgm::kernels::avx2
