#pragma once

// The coding map pi_{b0,b1}(s) = sum_i s_i * b1^{#_i} * b0^{i - #_i}, where #_i
// counts the ones among s_1..s_i, together with the metric structure that makes
// it Lipschitz.

#include <cstddef>

#include "mgm/subshift.hpp"

namespace mgm {

// A pair of contraction ratios in (0,1)^2. Used both for (beta0, beta1) and for
// the second axis (tau0, tau1) of the planar map.
class GeometricParams {
public:
    GeometricParams(double beta0, double beta1);

    double beta0() const { return beta0_; }
    double beta1() const { return beta1_; }
    double max_ratio() const { return max_ratio_; }
    double ratio() const { return beta1_ / beta0_; }  // c with beta1 = c * beta0

    // Largest value of the coding map on the shift: b1 / (1 - b0 b1), attained
    // by 1010...
    double supremum() const { return beta1_ / (1.0 - beta0_ * beta1_); }

    // m^{n+1} / (1 - m): bound on the contribution of symbols past depth n.
    double tail_bound(std::size_t depth) const;

    // Smallest depth whose tail bound is at most eps:
    //     ceil( log(eps (1 - m)) / log m ).
    std::size_t depth_for(double eps) const;

private:
    double beta0_;
    double beta1_;
    double max_ratio_;
};

struct CodedValue {
    double value = 0.0;
    double tail_bound = 0.0;  // |pi(infinite continuation) - value| <= tail_bound
};

// Evaluates the truncated coding map over the given symbols. The weights are
// accumulated multiplicatively (one multiplication per symbol), which is the
// same operation order the batch kernels use.
CodedValue pi_eval(SymbolSpan symbols, const GeometricParams& params);

// pi(s) - pi(t) for words of equal length, summed term by term so that a
// shared prefix contributes exactly zero. Throws DomainError on a length
// mismatch.
double pi_difference(SymbolSpan s, SymbolSpan t, const GeometricParams& params);

// b1^{#_n} b0^{n - #_n}. Throws DomainError for the empty word.
double cylinder_diameter(SymbolSpan symbols, const GeometricParams& params);

// Adapted metric: b1^{#_i(s)} b0^{i - #_i(s)} with i the common-prefix length;
// 0 when s == t. Throws DomainError when the lengths differ.
double adapted_distance(SymbolSpan s, SymbolSpan t, const GeometricParams& params);

enum class SupportType { Cantor, IntervalBearing };

// Cantor iff b0 + b0 b1 < 1.
SupportType support_classification(const GeometricParams& params);
const char* to_string(SupportType type);

struct PlanarCodedValue {
    double x = 0.0;
    double y = 0.0;
    double tail_x = 0.0;
    double tail_y = 0.0;
};

PlanarCodedValue pi2_eval(SymbolSpan symbols, const GeometricParams& x_params,
                          const GeometricParams& y_params);

}  // namespace mgm
