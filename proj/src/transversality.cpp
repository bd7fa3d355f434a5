#include "mgm/transversality.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mgm/coding.hpp"
#include "mgm/errors.hpp"
#include "mgm/kernels.hpp"

namespace mgm {

namespace {

double horner(std::span<const double> c, double x) {
    double v = 0.0;
    for (std::size_t k = c.size(); k-- > 0;) v = v * x + c[k];
    return v;
}

}  // namespace

SeriesInstance::SeriesInstance(std::vector<Symbol> s, std::vector<Symbol> t, std::vector<double> a,
                               std::vector<double> b)
    : s_(std::move(s)), t_(std::move(t)), a_(std::move(a)), b_(std::move(b)) {
    const std::size_t n = s_.size();
    if (t_.size() != n || a_.size() != n || b_.size() != n) {
        throw DomainError("SeriesInstance: s, t, a, b must have equal length");
    }
    coeffs_.resize(n + 1);
    coeffs_[0] = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (s_[k] > 1 || t_[k] > 1) throw InvalidAlphabetError("SeriesInstance: symbol outside {0,1}");
        if (!(a_[k] > 0.0 && a_[k] <= 1.0) || !(b_[k] > 0.0 && b_[k] <= 1.0)) {
            throw DomainError("SeriesInstance: coefficients a_k, b_k must lie in (0,1]");
        }
        coeffs_[k + 1] = a_[k] * s_[k] - b_[k] * t_[k];
    }
}

SeriesInstance SeriesInstance::from_coefficients(std::vector<double> coeffs) {
    if (coeffs.empty() || coeffs[0] != 1.0) {
        throw DomainError("SeriesInstance: constant coefficient must be 1");
    }
    const std::size_t n = coeffs.size() - 1;
    std::vector<Symbol> s(n, 0), t(n, 0);
    std::vector<double> a(n, 1.0), b(n, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        const double c = coeffs[k + 1];
        if (!(std::abs(c) <= 1.0)) throw DomainError("SeriesInstance: |c_k| must be at most 1");
        if (c > 0.0) {
            s[k] = 1;
            a[k] = c;
        } else if (c < 0.0) {
            t[k] = 1;
            b[k] = -c;
        }
    }
    return SeriesInstance(std::move(s), std::move(t), std::move(a), std::move(b));
}

bool SeriesInstance::admissible() const { return is_admissible(s_) && is_admissible(t_); }

double SeriesInstance::value(double x) const { return horner(coeffs_, x); }

double SeriesInstance::derivative(double x) const {
    double v = 0.0;
    for (std::size_t k = coeffs_.size(); k-- > 1;) v = v * x + static_cast<double>(k) * coeffs_[k];
    return v;
}

const char* to_string(CoefficientLaw law) {
    switch (law) {
        case CoefficientLaw::Uniform: return "uniform";
        case CoefficientLaw::Unit: return "unit";
        case CoefficientLaw::Structured: return "structured";
        case CoefficientLaw::Unconstrained: return "unconstrained";
    }
    return "uniform";
}

CoefficientLaw parse_coefficient_law(std::string_view name) {
    for (auto law : {CoefficientLaw::Uniform, CoefficientLaw::Unit, CoefficientLaw::Structured,
                     CoefficientLaw::Unconstrained}) {
        if (name == to_string(law)) return law;
    }
    throw DomainError("unknown coefficient law '" + std::string(name) + "'");
}

SeriesInstance random_series_instance(std::size_t depth, CoefficientLaw law,
                                      const MarkovParams& markov, Engine& eng) {
    if (depth == 0) throw DomainError("series depth must be positive");
    if (law == CoefficientLaw::Structured) {
        // Depth of psi is N - i - 1; pick the pair so that it comes out at `depth`.
        const double c = uniform_open_closed(eng);
        std::vector<Symbol> sbar(depth + 1), tbar(depth + 1);
        const ChainSampler sampler(markov);
        sbar[0] = 1;
        tbar[0] = 0;
        sampler.draw_continuation(eng, 1, depth, [&](std::size_t k, Symbol s) { sbar[k + 1] = s; });
        sampler.draw_continuation(eng, 0, depth, [&](std::size_t k, Symbol s) { tbar[k + 1] = s; });
        return FactorizationCase(std::move(sbar), std::move(tbar), c, true).psi();
    }
    std::vector<Symbol> s(depth), t(depth);
    std::vector<double> a(depth, 1.0), b(depth, 1.0);
    if (law == CoefficientLaw::Unconstrained) {
        for (std::size_t k = 0; k < depth; ++k) {
            const std::uint64_t r = eng();
            s[k] = static_cast<Symbol>(r & 1);
            t[k] = static_cast<Symbol>((r >> 1) & 1);
        }
    } else {
        const ChainSampler sampler(markov);
        sampler.draw(eng, depth, [&](std::size_t k, Symbol v) { s[k] = v; });
        sampler.draw(eng, depth, [&](std::size_t k, Symbol v) { t[k] = v; });
    }
    if (law == CoefficientLaw::Uniform || law == CoefficientLaw::Unconstrained) {
        for (auto& v : a) v = uniform_open_closed(eng);
        for (auto& v : b) v = uniform_open_closed(eng);
    }
    return SeriesInstance(std::move(s), std::move(t), std::move(a), std::move(b));
}

std::vector<SeriesInstance> random_series_instances(std::size_t count, std::size_t depth,
                                                    CoefficientLaw law, const MarkovParams& markov,
                                                    std::uint64_t seed) {
    std::vector<SeriesInstance> out;
    out.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        Engine eng = make_engine(derive_seed(seed, k));
        out.push_back(random_series_instance(depth, law, markov, eng));
    }
    return out;
}

DeltaReport empirical_delta(std::span<const SeriesInstance> instances, double lo, double hi,
                            std::size_t grid_points) {
    if (!(lo > 0.0 && lo < hi && hi < 1.0)) {
        throw DomainError("empirical_delta: interval must satisfy 0 < lo < hi < 1");
    }
    if (grid_points < kMinTransversalityGrid) {
        throw DomainError("empirical_delta: need at least 256 grid points");
    }
    if (instances.empty()) throw DegenerateError("empirical_delta: no instances");

    std::vector<double> xs(grid_points);
    const double h = (hi - lo) / static_cast<double>(grid_points - 1);
    for (std::size_t j = 0; j < grid_points; ++j) xs[j] = lo + h * static_cast<double>(j);
    xs.back() = hi;

    DeltaReport report;
    report.instances = instances.size();
    report.grid_points = grid_points;
    std::vector<double> f(grid_points), fp(grid_points);
    for (std::size_t k = 0; k < instances.size(); ++k) {
        const kernels::GridMin gm = kernels::transversality_min(instances[k].coefficients(), xs);
        if (k == 0 || gm.value < report.delta_star) {
            report.delta_star = gm.value;
            report.argmin_x = xs[gm.index];
            report.argmin_instance = k;
        }
        if (gm.value <= 0.0) {
            kernels::poly_eval_grid(instances[k].coefficients(), xs, f, fp);
            std::size_t found = 0;
            for (std::size_t j = 0; j < grid_points && found < kMaxWitnessesPerInstance; ++j) {
                if (std::max(f[j], -fp[j]) <= 0.0) {
                    report.violations.push_back({k, xs[j], f[j], fp[j]});
                    ++found;
                }
            }
        }
    }
    return report;
}

nlohmann::json witness_to_json(const TransversalityWitness& w, const SeriesInstance& instance) {
    return nlohmann::json{{"x", w.x},           {"f", w.f},           {"fprime", w.fprime},
                          {"s", instance.s()}, {"t", instance.t()}, {"a", instance.a()},
                          {"b", instance.b()}};
}

FactorizationCase::FactorizationCase(std::vector<Symbol> s, std::vector<Symbol> t, double c,
                                     bool require_admissible)
    : s_(std::move(s)), t_(std::move(t)), c_(c) {
    if (s_.size() != t_.size()) throw DomainError("FactorizationCase: words differ in length");
    if (!(c > 0.0 && c <= 1.0)) throw DomainError("FactorizationCase: c must lie in (0,1]");
    const bool s_ok = is_admissible(s_);
    const bool t_ok = is_admissible(t_);
    if (require_admissible && !(s_ok && t_ok)) {
        throw DomainError("FactorizationCase: words must be admissible");
    }
    i_ = common_prefix_and_product_distance(s_, t_).common_prefix;
    if (i_ == s_.size()) throw DegenerateError("FactorizationCase: s and t coincide");
    if (s_.size() < i_ + 8) throw DomainError("FactorizationCase: need depth N >= i + 8");
}

SeriesInstance FactorizationCase::psi() const {
    // Orient so that the leading shifted symbol of `hi` is 1.
    const auto& hi = sign() > 0 ? s_ : t_;
    const auto& lo = sign() > 0 ? t_ : s_;
    const std::size_t n = s_.size() - i_ - 1;
    std::vector<Symbol> ss(n), tt(n);
    std::vector<double> a(n, 1.0), b(n, 1.0);
    // #_{m}(bar) for the shifted words, counted as we go.
    std::size_t ones_hi = 1, ones_lo = 0;
    for (std::size_t k = 0; k < n; ++k) {
        const Symbol sh = hi[i_ + 1 + k];
        const Symbol sl = lo[i_ + 1 + k];
        ones_hi += sh;
        ones_lo += sl;
        ss[k] = sh;
        tt[k] = sl;
        if (sh) a[k] = std::pow(c_, static_cast<double>(ones_hi) - 1.0);
        if (sl) b[k] = std::pow(c_, static_cast<double>(ones_lo) - 1.0);
    }
    return SeriesInstance(std::move(ss), std::move(tt), std::move(a), std::move(b));
}

double FactorizationCase::phi(double beta) const {
    return pi_difference(s_, t_, GeometricParams(beta, c_ * beta));
}

double FactorizationCase::factorized(double beta) const {
    std::size_t ones = 0;
    for (std::size_t k = 0; k < i_; ++k) ones += s_[k];
    const double scale = std::pow(beta, static_cast<double>(i_) + 1.0) *
                         std::pow(c_, static_cast<double>(ones) + 1.0);
    return scale * sign() * psi().value(beta);
}

FactorizationCase random_factorization_case(std::size_t depth, const MarkovParams& markov,
                                            Engine& eng, double c) {
    if (depth < 9) throw DomainError("random_factorization_case: depth must be at least 9");
    const Word s = sample_word(markov, depth, eng);
    std::size_t i = 0;
    for (;;) {
        i = uniform_index(eng, depth - 8);
        // Flipping s_{i+1} from 0 to 1 is only admissible if s_i is 0.
        if (!(s[i] == 0 && i > 0 && s[i - 1] == 1)) break;
    }
    std::vector<Symbol> t(s.symbols().begin(), s.symbols().begin() + i);
    t.push_back(s[i] == 1 ? 0 : 1);
    t.resize(depth);
    ChainSampler(markov).draw_continuation(eng, t[i], depth - i - 1,
                                          [&](std::size_t k, Symbol v) { t[i + 1 + k] = v; });
    return FactorizationCase(std::vector<Symbol>(s.symbols().begin(), s.symbols().end()),
                             std::move(t), c, true);
}

FactorizationReport factorization_check(const FactorizationCase& fc, std::span<const double> betas) {
    FactorizationReport report;
    bool first = true;
    for (double beta : betas) {
        if (!(beta > 0.0 && beta < 1.0)) throw DomainError("factorization_check: beta must lie in (0,1)");
        const double lhs = fc.phi(beta);
        const double rhs = fc.factorized(beta);
        const double scale = std::max(std::abs(lhs), std::abs(rhs));
        const double err = scale > 0.0 ? std::abs(lhs - rhs) / scale : 0.0;
        if (first || err > report.max_relative_error) {
            report.max_relative_error = err;
            report.worst_beta = beta;
            first = false;
        }
    }
    return report;
}

}  // namespace mgm
