#include "mgm/measure.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mgm/errors.hpp"
#include "mgm/fit.hpp"
#include "mgm/parallel.hpp"
#include "mgm/rng.hpp"

namespace mgm {

EmpiricalMeasure::EmpiricalMeasure(std::vector<double> samples) : samples_(std::move(samples)) {
    if (samples_.empty()) throw DegenerateError("empirical measure needs at least one sample");
    std::sort(samples_.begin(), samples_.end());
}

std::size_t EmpiricalMeasure::ball_count(double x, double r) const {
    const auto lo = std::lower_bound(samples_.begin(), samples_.end(), x - r);
    const auto hi = std::upper_bound(lo, samples_.end(), x + r);
    return static_cast<std::size_t>(hi - lo);
}

SampleSet::SampleSet(std::vector<double> samples, GeometricParams geometry, MarkovParams markov,
                     std::size_t depth, std::uint64_t seed)
    : EmpiricalMeasure(std::move(samples)),
      geometry_(geometry),
      markov_(markov),
      depth_(depth),
      seed_(seed),
      tail_bound_(geometry.tail_bound(depth)) {}

void for_each_word_block(const MarkovParams& markov, std::size_t count, std::size_t depth,
                         std::uint64_t seed,
                         const std::function<void(std::size_t, const kernels::PackedWords&)>& fn) {
    if (depth == 0) throw DomainError("sampling depth must be at least 1");
    const std::size_t blocks = (count + kSampleBlock - 1) / kSampleBlock;
    const ChainSampler sampler(markov);
    parallel_for_blocks(blocks, [&](std::size_t b) {
        const std::size_t first = b * kSampleBlock;
        const std::size_t n = std::min(kSampleBlock, count - first);
        kernels::PackedWords words(n, depth);
        Engine eng = make_engine(derive_seed(seed, b));
        for (std::size_t w = 0; w < n; ++w) {
            std::uint64_t* bits = words.word(w);
            sampler.draw(eng, depth, [bits](std::size_t k, Symbol s) {
                bits[k >> 6] |= std::uint64_t{s} << (k & 63);
            });
        }
        fn(first, words);
    });
}

SampleSet sample_measure(const GeometricParams& geometry, const MarkovParams& markov,
                         std::size_t count, std::size_t depth, std::uint64_t seed) {
    if (count == 0) throw DegenerateError("sample_measure: count must be positive");
    std::vector<double> values(count);
    for_each_word_block(markov, count, depth, seed,
                        [&](std::size_t first, const kernels::PackedWords& words) {
                            kernels::code_packed(words, geometry.beta0(), geometry.beta1(),
                                                 std::span(values).subspan(first, words.count));
                        });
    return SampleSet(std::move(values), geometry, markov, depth, seed);
}

SampleSet sample_measure_eps(const GeometricParams& geometry, const MarkovParams& markov,
                             std::size_t count, double eps, std::uint64_t seed) {
    return sample_measure(geometry, markov, count, geometry.depth_for(eps), seed);
}

Histogram make_histogram(const EmpiricalMeasure& measure, double bin_width) {
    if (!(bin_width > 0.0)) throw DomainError("histogram bin width must be positive");
    Histogram h;
    h.bin_width = bin_width;
    const double first = std::floor(measure.min() / bin_width);
    const double last = std::floor(measure.max() / bin_width);
    if (last - first > 5e8) throw CapacityError("histogram would need more than 5e8 bins");
    h.origin = first * bin_width;
    h.counts.assign(static_cast<std::size_t>(last - first) + 1, 0);
    for (double x : measure.samples()) {
        auto i = static_cast<std::ptrdiff_t>(std::floor(x / bin_width) - first);
        i = std::clamp<std::ptrdiff_t>(i, 0, static_cast<std::ptrdiff_t>(h.counts.size()) - 1);
        ++h.counts[static_cast<std::size_t>(i)];
    }
    h.total = measure.size();
    return h;
}

double l2_norm_estimate(const Histogram& histogram) {
    std::uint64_t sum_sq = 0;  // exact: sum of c_i^2 <= total^2
    for (std::uint64_t c : histogram.counts) sum_sq += c * c;
    const double n = static_cast<double>(histogram.total);
    return static_cast<double>(sum_sq) / (n * n * histogram.bin_width);
}

double l2_norm_estimate(const EmpiricalMeasure& measure, double bin_width) {
    return l2_norm_estimate(make_histogram(measure, bin_width));
}

namespace {

void validate_radii(const EmpiricalMeasure& measure, std::span<const double> radii) {
    if (radii.size() < 3) throw DomainError("need at least three radii");
    for (std::size_t i = 0; i < radii.size(); ++i) {
        if (!(radii[i] > 0.0)) throw DomainError("radii must be positive");
        if (i > 0 && !(radii[i] < radii[i - 1])) throw DomainError("radii must be strictly decreasing");
    }
    if (measure.diameter() > 0.0 && !(radii.front() < measure.diameter())) {
        throw DomainError("largest radius must be below the sample diameter");
    }
    if (radii.front() / radii.back() < 4.0) throw DomainError("radii must span at least two octaves");
}

std::vector<std::size_t> pick_probes(const EmpiricalMeasure& measure, std::size_t probe_count,
                                     std::uint64_t seed) {
    if (probe_count == 0) throw DomainError("probe_count must be positive");
    if (measure.size() < 2) throw DegenerateError("need at least two samples");
    Engine eng = make_engine(seed);
    std::vector<std::size_t> probes(probe_count);
    for (auto& p : probes) p = uniform_index(eng, measure.size());
    return probes;
}

double quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) return 0.0;
    const double pos = q * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (pos - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

LocalDimensionEstimate local_dimension_estimate(const EmpiricalMeasure& measure,
                                                std::span<const double> radii,
                                                std::size_t probe_count, std::uint64_t seed) {
    validate_radii(measure, radii);
    const auto probes = pick_probes(measure, probe_count, seed);
    const double others = static_cast<double>(measure.size() - 1);

    LocalDimensionEstimate out;
    double slope_sum = 0.0, r2_sum = 0.0;
    std::vector<double> xs, ys;
    for (std::size_t idx : probes) {
        const double x = measure.samples()[idx];
        xs.clear();
        ys.clear();
        for (double r : radii) {
            const std::size_t c = measure.ball_count(x, r) - 1;
            if (c == 0) {
                ++out.excluded_pairs;
                continue;
            }
            xs.push_back(std::log(r));
            ys.push_back(std::log(static_cast<double>(c) / others));
        }
        if (xs.size() < 3) continue;
        const LinearFit fit = fit_line(xs, ys);
        slope_sum += fit.slope;
        r2_sum += fit.r_squared;
        ++out.probes_used;
    }
    if (out.probes_used == 0) throw DegenerateError("no probe had three non-empty balls");
    out.slope = slope_sum / static_cast<double>(out.probes_used);
    out.r_squared = r2_sum / static_cast<double>(out.probes_used);
    return out;
}

DensityProbe lower_local_density_probe(const EmpiricalMeasure& measure,
                                       std::span<const double> radii, std::size_t probe_count,
                                       std::uint64_t seed) {
    validate_radii(measure, radii);
    const auto probes = pick_probes(measure, probe_count, seed);
    const double others = static_cast<double>(measure.size() - 1);

    DensityProbe out;
    std::vector<double> lower;
    std::vector<std::vector<double>> by_radius(radii.size());
    for (std::size_t idx : probes) {
        const double x = measure.samples()[idx];
        double low = 0.0;
        bool any = false;
        for (std::size_t j = 0; j < radii.size(); ++j) {
            const std::size_t c = measure.ball_count(x, radii[j]) - 1;
            if (c == 0) {
                ++out.excluded_pairs;
                continue;
            }
            const double density = static_cast<double>(c) / others / (2.0 * radii[j]);
            by_radius[j].push_back(density);
            low = any ? std::min(low, density) : density;
            any = true;
        }
        if (any) lower.push_back(low);
    }
    if (lower.empty()) throw DegenerateError("every probe ball was empty");
    std::sort(lower.begin(), lower.end());
    out.probes_used = lower.size();
    out.median = quantile(lower, 0.5);
    out.q10 = quantile(lower, 0.1);
    out.q90 = quantile(lower, 0.9);
    out.q99 = quantile(lower, 0.99);
    out.max = lower.back();
    for (auto& v : by_radius) {
        std::sort(v.begin(), v.end());
        out.median_by_radius.push_back(quantile(v, 0.5));
    }
    return out;
}

std::vector<double> geometric_radii(double r0, double ratio, std::size_t count) {
    if (!(r0 > 0.0) || !(ratio > 1.0)) throw DomainError("geometric_radii: need r0 > 0 and ratio > 1");
    std::vector<double> radii(count);
    double r = r0;
    for (auto& v : radii) {
        v = r;
        r /= ratio;
    }
    return radii;
}

}  // namespace mgm
