#pragma once

// Monte Carlo construction of the Markov geometric measure (the law of the
// random series sum_i X_i b1^{#_i} b0^{i - #_i}) and empirical diagnostics on
// it. The diagnostics are heuristics: they report trends at finite sample
// size and resolution, never a verdict on absolute continuity.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mgm/coding.hpp"
#include "mgm/kernels.hpp"
#include "mgm/subshift.hpp"

namespace mgm {

// Sorted samples with ball-mass queries by binary search.
class EmpiricalMeasure {
public:
    explicit EmpiricalMeasure(std::vector<double> samples);

    std::span<const double> samples() const { return samples_; }
    std::size_t size() const { return samples_.size(); }
    double min() const { return samples_.front(); }
    double max() const { return samples_.back(); }
    double diameter() const { return max() - min(); }

    // Number of samples in the closed ball [x - r, x + r].
    std::size_t ball_count(double x, double r) const;

private:
    std::vector<double> samples_;
};

class SampleSet : public EmpiricalMeasure {
public:
    SampleSet(std::vector<double> samples, GeometricParams geometry, MarkovParams markov,
              std::size_t depth, std::uint64_t seed);

    const GeometricParams& geometry() const { return geometry_; }
    const MarkovParams& markov() const { return markov_; }
    std::size_t depth() const { return depth_; }
    std::uint64_t seed() const { return seed_; }
    double tail_bound() const { return tail_bound_; }

private:
    GeometricParams geometry_;
    MarkovParams markov_;
    std::size_t depth_;
    std::uint64_t seed_;
    double tail_bound_;
};

inline constexpr double kDefaultTailEps = 1e-12;

// Samples are generated in blocks of this many words; block b draws from the
// stream derive_seed(seed, b). Output is independent of the thread count.
inline constexpr std::size_t kSampleBlock = std::size_t{1} << 15;

// Calls fn(first_index, words) for every block of `count` sampled words of the
// chain, truncated to `depth` symbols. Blocks may run concurrently.
void for_each_word_block(const MarkovParams& markov, std::size_t count, std::size_t depth,
                         std::uint64_t seed,
                         const std::function<void(std::size_t, const kernels::PackedWords&)>& fn);

// `count` independent draws of the truncated series. Throws DegenerateError
// for count == 0 and DomainError for depth == 0.
SampleSet sample_measure(const GeometricParams& geometry, const MarkovParams& markov,
                         std::size_t count, std::size_t depth, std::uint64_t seed);

// Same, with depth = geometry.depth_for(eps).
SampleSet sample_measure_eps(const GeometricParams& geometry, const MarkovParams& markov,
                             std::size_t count, double eps, std::uint64_t seed);

struct Histogram {
    double origin = 0.0;
    double bin_width = 1.0;
    std::vector<std::uint64_t> counts;
    std::uint64_t total = 0;

    double bin_left(std::size_t i) const { return origin + bin_width * static_cast<double>(i); }
};

// Bins [origin + k w, origin + (k+1) w) on the lattice through 0, covering the
// sample range.
Histogram make_histogram(const EmpiricalMeasure& measure, double bin_width);

// Plug-in estimate of the integral of f^2: sum_i c_i^2 / (N^2 w).
double l2_norm_estimate(const EmpiricalMeasure& measure, double bin_width);
double l2_norm_estimate(const Histogram& histogram);

struct LocalDimensionEstimate {
    double slope = 0.0;      // mean of the per-probe regression slopes
    double r_squared = 0.0;  // mean per-probe R^2
    std::size_t probes_used = 0;
    std::size_t excluded_pairs = 0;  // (probe, radius) pairs with an empty ball
};

// Regresses log mu(B_r(x)) on log r at probe points drawn from the samples.
// The probe itself is not counted in its ball. Requires at least three
// strictly decreasing radii in (0, diameter) spanning two octaves.
LocalDimensionEstimate local_dimension_estimate(const EmpiricalMeasure& measure,
                                                std::span<const double> radii,
                                                std::size_t probe_count, std::uint64_t seed);

struct DensityProbe {
    double median = 0.0;
    double q10 = 0.0;
    double q90 = 0.0;
    double q99 = 0.0;
    double max = 0.0;
    // Median over probes of mu(B_r(x)) / 2r, one entry per radius.
    std::vector<double> median_by_radius;
    std::size_t probes_used = 0;
    std::size_t excluded_pairs = 0;
};

// Per probe, min over radii of mu(B_r(x)) / 2r, summarized by quantiles.
DensityProbe lower_local_density_probe(const EmpiricalMeasure& measure,
                                       std::span<const double> radii, std::size_t probe_count,
                                       std::uint64_t seed);

// Geometric ladder r0, r0/ratio, ... with `count` entries.
std::vector<double> geometric_radii(double r0, double ratio, std::size_t count);

}  // namespace mgm
