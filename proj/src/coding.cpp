#include "mgm/coding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mgm/errors.hpp"

namespace mgm {

GeometricParams::GeometricParams(double beta0, double beta1) : beta0_(beta0), beta1_(beta1) {
    if (!(beta0 > 0.0 && beta0 < 1.0) || !(beta1 > 0.0 && beta1 < 1.0)) {
        throw DomainError("contraction ratios must lie in (0,1), got (" + std::to_string(beta0) +
                          ", " + std::to_string(beta1) + ")");
    }
    max_ratio_ = std::max(beta0, beta1);
}

double GeometricParams::tail_bound(std::size_t depth) const {
    return std::pow(max_ratio_, static_cast<double>(depth) + 1.0) / (1.0 - max_ratio_);
}

std::size_t GeometricParams::depth_for(double eps) const {
    if (!(eps > 0.0)) throw DomainError("depth_for: eps must be positive");
    const double n = std::ceil(std::log(eps * (1.0 - max_ratio_)) / std::log(max_ratio_));
    return n < 1.0 ? 1 : static_cast<std::size_t>(n);
}

CodedValue pi_eval(SymbolSpan symbols, const GeometricParams& params) {
    const double b0 = params.beta0();
    const double b1 = params.beta1();
    double weight = 1.0;
    double value = 0.0;
    for (Symbol s : symbols) {
        if (s == 1) {
            weight *= b1;
            value += weight;
        } else if (s == 0) {
            weight *= b0;
        } else {
            throw InvalidAlphabetError("pi_eval: symbol outside {0,1}");
        }
    }
    return {value, params.tail_bound(symbols.size())};
}

double pi_difference(SymbolSpan s, SymbolSpan t, const GeometricParams& params) {
    if (s.size() != t.size()) throw DomainError("pi_difference: words differ in length");
    double ws = 1.0, wt = 1.0, diff = 0.0;
    for (std::size_t k = 0; k < s.size(); ++k) {
        if (s[k] > 1 || t[k] > 1) throw InvalidAlphabetError("pi_difference: symbol outside {0,1}");
        ws *= s[k] ? params.beta1() : params.beta0();
        wt *= t[k] ? params.beta1() : params.beta0();
        diff += (s[k] ? ws : 0.0) - (t[k] ? wt : 0.0);
    }
    return diff;
}

double cylinder_diameter(SymbolSpan symbols, const GeometricParams& params) {
    if (symbols.empty()) throw DomainError("cylinder_diameter: empty word");
    double d = 1.0;
    for (Symbol s : symbols) d *= (s == 1) ? params.beta1() : params.beta0();
    return d;
}

double adapted_distance(SymbolSpan s, SymbolSpan t, const GeometricParams& params) {
    if (s.size() != t.size()) {
        throw DomainError("adapted_distance: words of different lengths");
    }
    const auto cmp = common_prefix_and_product_distance(s, t);
    if (cmp.common_prefix == s.size()) return 0.0;
    if (cmp.common_prefix == 0) return 1.0;
    return cylinder_diameter(s.first(cmp.common_prefix), params);
}

SupportType support_classification(const GeometricParams& params) {
    const double b0 = params.beta0();
    return b0 + b0 * params.beta1() < 1.0 ? SupportType::Cantor : SupportType::IntervalBearing;
}

const char* to_string(SupportType type) {
    return type == SupportType::Cantor ? "Cantor" : "IntervalBearing";
}

PlanarCodedValue pi2_eval(SymbolSpan symbols, const GeometricParams& x_params,
                          const GeometricParams& y_params) {
    const CodedValue x = pi_eval(symbols, x_params);
    const CodedValue y = pi_eval(symbols, y_params);
    return {x.value, y.value, x.tail_bound, y.tail_bound};
}

}  // namespace mgm
