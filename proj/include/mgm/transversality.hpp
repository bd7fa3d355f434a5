#pragma once

// Empirical probes of the delta-transversality condition
//     f(x) < delta  =>  f'(x) < -delta
// for power series f(x) = 1 + sum_k (a_k s_k - b_k t_k) x^k with s, t in the
// golden-mean shift and a_k, b_k in (0,1], and a numerical check of the
// factorization that reduces the difference of two coding-map values to such
// a series.
//
// Everything here works at a finite truncation depth and on a finite grid, so
// a positive delta is evidence of consistency, not a certificate.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "mgm/rng.hpp"
#include "mgm/subshift.hpp"

namespace mgm {

// One member of the class: coefficients c_0 = 1, c_k = a_k s_k - b_k t_k.
class SeriesInstance {
public:
    // s, t, a, b all of length N. Throws DomainError when a_k or b_k is
    // outside (0,1] or the lengths differ.
    SeriesInstance(std::vector<Symbol> s, std::vector<Symbol> t, std::vector<double> a,
                   std::vector<double> b);

    // The instance with the given coefficients (coeffs[0] must be 1 and
    // |coeffs[k]| <= 1); s, t, a, b are reconstructed canonically.
    static SeriesInstance from_coefficients(std::vector<double> coeffs);

    std::size_t depth() const { return s_.size(); }
    std::span<const double> coefficients() const { return coeffs_; }
    const std::vector<Symbol>& s() const { return s_; }
    const std::vector<Symbol>& t() const { return t_; }
    const std::vector<double>& a() const { return a_; }
    const std::vector<double>& b() const { return b_; }

    // True when both s and t avoid "11", i.e. the instance lies in the
    // golden-mean class rather than only in the unconstrained superclass.
    bool admissible() const;

    double value(double x) const;
    double derivative(double x) const;

private:
    std::vector<Symbol> s_, t_;
    std::vector<double> a_, b_;
    std::vector<double> coeffs_;
};

enum class CoefficientLaw {
    Uniform,        // a_k, b_k uniform on (0,1], s, t from the Markov chain
    Unit,           // a_k = b_k = 1, s, t from the Markov chain
    Structured,     // the c^{#}-weighted form produced by the factorization
    Unconstrained,  // a_k, b_k uniform, s, t independent fair bits (no 11 restriction)
};

const char* to_string(CoefficientLaw law);
CoefficientLaw parse_coefficient_law(std::string_view name);

SeriesInstance random_series_instance(std::size_t depth, CoefficientLaw law,
                                      const MarkovParams& markov, Engine& eng);

// `count` instances, instance k drawn from the stream derive_seed(seed, k).
std::vector<SeriesInstance> random_series_instances(std::size_t count, std::size_t depth,
                                                    CoefficientLaw law, const MarkovParams& markov,
                                                    std::uint64_t seed);

struct TransversalityWitness {
    std::size_t instance = 0;
    double x = 0.0;
    double f = 0.0;
    double fprime = 0.0;
};

struct DeltaReport {
    double delta_star = 0.0;  // min over instances and grid of max(f, -f')
    double argmin_x = 0.0;
    std::size_t argmin_instance = 0;
    std::size_t instances = 0;
    std::size_t grid_points = 0;
    // Grid points with max(f, -f') <= 0, at most kMaxWitnessesPerInstance each.
    std::vector<TransversalityWitness> violations;
};

inline constexpr std::size_t kMinTransversalityGrid = 256;
inline constexpr std::size_t kMaxWitnessesPerInstance = 8;

// Grid of `grid_points` equally spaced points on [lo, hi], endpoints included.
// Throws DomainError unless 0 < lo < hi < 1 and grid_points >= 256.
DeltaReport empirical_delta(std::span<const SeriesInstance> instances, double lo, double hi,
                            std::size_t grid_points);

// {x, f, fprime, s, t, a, b}
nlohmann::json witness_to_json(const TransversalityWitness& w, const SeriesInstance& instance);

// Two distinct sequences compared under the ratios (beta, c beta).
class FactorizationCase {
public:
    // Throws DegenerateError when s == t, DomainError when the lengths differ,
    // c is outside (0,1], N < i + 8, or (if require_admissible) either word
    // contains "11".
    FactorizationCase(std::vector<Symbol> s, std::vector<Symbol> t, double c,
                      bool require_admissible = true);

    const std::vector<Symbol>& s() const { return s_; }
    const std::vector<Symbol>& t() const { return t_; }
    double c() const { return c_; }
    std::size_t agreement() const { return i_; }  // common-prefix length i
    std::size_t depth() const { return s_.size(); }
    // s-bar_1 - t-bar_1, i.e. +1 or -1.
    int sign() const { return s_[i_] == 1 ? 1 : -1; }

    // The series psi with phi(beta) = beta^{i+1} c^{#_i + 1} sign psi(beta),
    // as a member of the class (s and t exchanged when sign is -1).
    SeriesInstance psi() const;

    // pi_{beta, c beta}(s) - pi_{beta, c beta}(t) via the coding map.
    double phi(double beta) const;
    // The factorized right-hand side.
    double factorized(double beta) const;

private:
    std::vector<Symbol> s_, t_;
    double c_;
    std::size_t i_;
};

FactorizationCase random_factorization_case(std::size_t depth, const MarkovParams& markov,
                                            Engine& eng, double c);

struct FactorizationReport {
    double max_relative_error = 0.0;  // |phi - rhs| / max(|phi|, |rhs|)
    double worst_beta = 0.0;
};

FactorizationReport factorization_check(const FactorizationCase& fc, std::span<const double> betas);

}  // namespace mgm
