#include <algorithm>

#include "mgm/kernels.hpp"

namespace mgm::kernels {

PackedWords::PackedWords(std::size_t count_, std::size_t depth_)
    : count(count_), depth(depth_), chunks((depth_ + 63) / 64), bits(count_ * chunks, 0) {}

void PackedWords::assign(std::size_t w, SymbolSpan symbols) {
    std::uint64_t* dst = word(w);
    std::fill(dst, dst + chunks, 0);
    const std::size_t n = std::min(symbols.size(), depth);
    for (std::size_t k = 0; k < n; ++k) set(w, k, symbols[k]);
}

namespace scalar {

void code_packed(const PackedWords& words, double b0, double b1, std::span<double> out) {
    for (std::size_t w = 0; w < words.count; ++w) {
        const std::uint64_t* bits = words.word(w);
        double weight = 1.0;
        double value = 0.0;
        for (std::size_t k = 0; k < words.depth; ++k) {
            if ((bits[k >> 6] >> (k & 63)) & 1) {
                weight *= b1;
                value += weight;
            } else {
                weight *= b0;
            }
        }
        out[w] = value;
    }
}

void poly_eval_grid(std::span<const double> coeffs, std::span<const double> xs,
                    std::span<double> f, std::span<double> fprime) {
    const std::size_t n = coeffs.size();
    for (std::size_t j = 0; j < xs.size(); ++j) {
        const double x = xs[j];
        double p = n ? coeffs[n - 1] : 0.0;
        double dp = 0.0;
        for (std::size_t k = n ? n - 1 : 0; k-- > 0;) {
            dp = dp * x + p;
            p = p * x + coeffs[k];
        }
        f[j] = p;
        fprime[j] = dp;
    }
}

GridMin transversality_min(std::span<const double> coeffs, std::span<const double> xs) {
    const std::size_t n = coeffs.size();
    GridMin best{0.0, 0};
    for (std::size_t j = 0; j < xs.size(); ++j) {
        const double x = xs[j];
        double p = n ? coeffs[n - 1] : 0.0;
        double dp = 0.0;
        for (std::size_t k = n ? n - 1 : 0; k-- > 0;) {
            dp = dp * x + p;
            p = p * x + coeffs[k];
        }
        const double neg = -dp;
        const double v = p < neg ? neg : p;
        if (j == 0 || v < best.value) best = {v, j};
    }
    return best;
}

}  // namespace scalar
}  // namespace mgm::kernels
