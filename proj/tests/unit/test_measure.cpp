#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mgm/coding.hpp"
#include "mgm/errors.hpp"
#include "mgm/measure.hpp"
#include "mgm/rng.hpp"
#include "mgm/subshift.hpp"

using namespace mgm;

namespace {

// Evenly spaced points are a low-discrepancy stand-in for Lebesgue measure.
std::vector<double> uniform_fixture(std::size_t n, double length = 1.0) {
    std::vector<double> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = length * (static_cast<double>(i) + 0.5) / n;
    return v;
}

std::vector<double> random_uniform_fixture(std::size_t n, std::uint64_t seed) {
    Engine eng = make_engine(seed);
    std::vector<double> v(n);
    for (double& x : v) x = uniform01(eng);
    return v;
}

// Middle-third Cantor measure: random ternary digits in {0, 2}.
std::vector<double> cantor_fixture(std::size_t n, std::uint64_t seed) {
    Engine eng = make_engine(seed);
    std::vector<double> v(n);
    for (double& x : v) {
        double scale = 1.0 / 3.0;
        x = 0.0;
        for (int d = 0; d < 40; ++d, scale /= 3.0) x += (eng() & 1) ? 2.0 * scale : 0.0;
    }
    return v;
}

double ecdf(std::span<const double> sorted, double x) {
    return static_cast<double>(std::upper_bound(sorted.begin(), sorted.end(), x) - sorted.begin()) /
           static_cast<double>(sorted.size());
}

}  // namespace

// =============================================================================
// EmpiricalMeasure
// =============================================================================

TEST(EmpiricalMeasure, SortsAndCountsClosedBalls) {
    const EmpiricalMeasure m({0.5, 0.1, 0.3, 0.3, 0.9});
    EXPECT_TRUE(std::is_sorted(m.samples().begin(), m.samples().end()));
    EXPECT_EQ(m.ball_count(0.3, 0.0), 2u);
    EXPECT_EQ(m.ball_count(0.3, 0.2), 4u);
    EXPECT_EQ(m.ball_count(2.0, 0.5), 0u);
    EXPECT_DOUBLE_EQ(m.diameter(), 0.8);
    EXPECT_THROW(EmpiricalMeasure({}), DegenerateError);
}

// =============================================================================
// sample_measure
// =============================================================================

TEST(SampleMeasure, Deterministic) {
    const GeometricParams g(0.6, 0.7);
    const MarkovParams m(0.5);
    const auto a = sample_measure(g, m, 70'000, 50, 11);
    const auto b = sample_measure(g, m, 70'000, 50, 11);
    ASSERT_EQ(a.size(), b.size());
    EXPECT_TRUE(std::equal(a.samples().begin(), a.samples().end(), b.samples().begin()));
    const auto c = sample_measure(g, m, 70'000, 50, 12);
    EXPECT_FALSE(std::equal(a.samples().begin(), a.samples().end(), c.samples().begin()));
}

TEST(SampleMeasure, MatchesDirectSampling) {
    // Samples are the coding map of chain words drawn block by block.
    const GeometricParams g(0.45, 0.8);
    const MarkovParams mk(0.3);
    const std::size_t count = 1000, depth = 40;
    const auto set = sample_measure(g, mk, count, depth, 77);
    std::vector<double> direct;
    for_each_word_block(mk, count, depth, 77, [&](std::size_t, const kernels::PackedWords& words) {
        for (std::size_t w = 0; w < words.count; ++w) {
            std::vector<Symbol> s(depth);
            for (std::size_t k = 0; k < depth; ++k) s[k] = words.get(w, k);
            EXPECT_TRUE(is_admissible(s));
            direct.push_back(pi_eval(s, g).value);
        }
    });
    std::sort(direct.begin(), direct.end());
    ASSERT_EQ(direct.size(), count);
    EXPECT_TRUE(std::equal(direct.begin(), direct.end(), set.samples().begin()));
}

TEST(SampleMeasure, Errors) {
    const GeometricParams g(0.5, 0.5);
    const MarkovParams m(0.5);
    EXPECT_THROW(sample_measure(g, m, 0, 10, 1), DegenerateError);
    EXPECT_THROW(sample_measure(g, m, 10, 0, 1), DomainError);
}

TEST(SampleMeasure, NearDeterministicChainConcentratesAtZero) {
    const auto set = sample_measure_eps(GeometricParams(0.5, 0.5), MarkovParams(1 - 1e-9), 100'000,
                                        kDefaultTailEps, 3);
    EXPECT_EQ(set.max(), 0.0);
}

TEST(SampleMeasure, SupportBound) {
    for (auto [b0, b1] : {std::pair{0.4, 0.4}, {0.9, 0.8}, {0.3, 0.95}}) {
        const GeometricParams g(b0, b1);
        const auto set = sample_measure_eps(g, MarkovParams(0.35), 100'000, 1e-12, 9);
        EXPECT_GE(set.min(), 0.0);
        EXPECT_LE(set.max(), g.supremum() + set.tail_bound());
        EXPECT_LE(set.tail_bound(), 1e-12);
    }
}

TEST(SampleMeasure, MeanMatchesCylinderEnclosure) {
    // E[S] bracketed by exhaustive depth-14 cylinders: each cylinder contributes
    // nu(w) times a value in [pi(w), pi(w) + tail_bound(14)].
    const GeometricParams g(0.5, 0.5);
    const MarkovParams m(0.5);
    double lo = 0.0;
    for (const Word& w : enumerate_words(14)) lo += cylinder_measure(w, m) * pi_eval(w, g).value;
    const double hi = lo + g.tail_bound(14);
    EXPECT_LE(lo, 1.0 / 3.0);
    EXPECT_GE(hi, 1.0 / 3.0);

    const auto set = sample_measure(g, m, 1'000'000, 30, 20240607);
    const auto xs = set.samples();
    const double mean = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
    double var = 0.0;
    for (double x : xs) var += (x - mean) * (x - mean);
    const double se = std::sqrt(var / (xs.size() - 1) / xs.size());
    EXPECT_GT(mean, lo - 3 * se);
    EXPECT_LT(mean, hi + 3 * se);
}

TEST(SampleMeasure, EcdfConvergesWithDepth) {
    // 0 <= S - S_d <= tail(d), so F(x) <= F_d(x) <= F(x + tail(d)). With DKW
    // bands on both empirical CDFs, the difference at depth d and 2d is bounded
    // by the empirical mass of [x - tail(2d), x + tail(d)] plus four bands.
    const GeometricParams g(0.6, 0.6);
    const MarkovParams m(0.5);
    const std::size_t n = 200'000;
    for (std::size_t d : {6u, 12u, 24u}) {
        const auto a = sample_measure(g, m, n, d, 100 + d);
        const auto b = sample_measure(g, m, n, 2 * d, 200 + d);
        const double band = std::sqrt(std::log(2.0 / 1e-6) / (2.0 * n));
        for (int i = 0; i <= 100; ++i) {
            const double x = g.supremum() * i / 100.0;
            const double diff = std::abs(ecdf(a.samples(), x) - ecdf(b.samples(), x));
            const double slack = ecdf(b.samples(), x + a.tail_bound()) -
                                 ecdf(b.samples(), x - b.tail_bound() - a.tail_bound());
            EXPECT_LE(diff, slack + 4 * band) << "d=" << d << " x=" << x;
        }
    }
}

// =============================================================================
// Histogram and L2
// =============================================================================

TEST(Histogram, CountsSumToTotal) {
    const EmpiricalMeasure m(random_uniform_fixture(10'000, 4));
    const auto h = make_histogram(m, 0.013);
    EXPECT_EQ(std::accumulate(h.counts.begin(), h.counts.end(), std::uint64_t{0}), h.total);
    EXPECT_EQ(h.total, 10'000u);
    EXPECT_LE(h.bin_left(0), m.min());
    EXPECT_GT(h.bin_left(h.counts.size()), m.max());
    EXPECT_THROW(make_histogram(m, 0.0), DomainError);
    EXPECT_THROW(make_histogram(m, 1e-12), CapacityError);
}

TEST(L2Norm, Fixtures) {
    EXPECT_NEAR(l2_norm_estimate(EmpiricalMeasure(random_uniform_fixture(1'000'000, 1)), 0.01), 1.0, 0.05);
    EXPECT_NEAR(l2_norm_estimate(EmpiricalMeasure(uniform_fixture(1'000'000, 2.0)), 0.01), 0.5, 0.025);
    EXPECT_DOUBLE_EQ(l2_norm_estimate(EmpiricalMeasure(std::vector<double>(1000, 0.37)), 0.01), 100.0);
}

TEST(L2Norm, PermutationAndScaling) {
    auto xs = random_uniform_fixture(50'000, 8);
    for (double& x : xs) x = x * x;  // non-uniform density
    const double base = l2_norm_estimate(EmpiricalMeasure(xs), 0.01);
    auto shuffled = xs;
    std::reverse(shuffled.begin(), shuffled.end());
    EXPECT_EQ(l2_norm_estimate(EmpiricalMeasure(shuffled), 0.01), base);
    // Scaling by a power of two moves every point and bin edge exactly.
    auto doubled = xs;
    for (double& x : doubled) x *= 2.0;
    EXPECT_DOUBLE_EQ(l2_norm_estimate(EmpiricalMeasure(doubled), 0.02), base / 2.0);
    auto tripled = xs;
    for (double& x : tripled) x *= 3.0;
    EXPECT_NEAR(l2_norm_estimate(EmpiricalMeasure(tripled), 0.03), base / 3.0, 1e-3 * base);
}

// =============================================================================
// Local dimension
// =============================================================================

TEST(LocalDimension, UniformFixture) {
    const EmpiricalMeasure m(random_uniform_fixture(1'000'000, 21));
    const auto radii = geometric_radii(0.05, 2.0, 8);
    const auto est = local_dimension_estimate(m, radii, 400, 5);
    EXPECT_NEAR(est.slope, 1.0, 0.05);
    EXPECT_GT(est.r_squared, 0.95);
    EXPECT_EQ(est.probes_used, 400u);
}

TEST(LocalDimension, CantorFixture) {
    const EmpiricalMeasure m(cantor_fixture(1'000'000, 22));
    const auto radii = geometric_radii(0.1, 3.0, 7);
    const auto est = local_dimension_estimate(m, radii, 400, 6);
    EXPECT_NEAR(est.slope, std::log(2.0) / std::log(3.0), 0.05);
}

TEST(LocalDimension, PreconditionsAndExclusions) {
    const EmpiricalMeasure m(random_uniform_fixture(1000, 2));
    EXPECT_THROW(local_dimension_estimate(m, std::vector<double>{0.1, 0.05}, 10, 1), DomainError);
    EXPECT_THROW(local_dimension_estimate(m, std::vector<double>{0.1, 0.2, 0.05}, 10, 1), DomainError);
    EXPECT_THROW(local_dimension_estimate(m, std::vector<double>{0.1, 0.08, 0.06}, 10, 1), DomainError);
    EXPECT_THROW(local_dimension_estimate(m, std::vector<double>{5.0, 1.0, 0.1}, 10, 1), DomainError);
    // Radii far below the sample spacing leave empty balls, which are excluded.
    const auto est = local_dimension_estimate(m, std::vector<double>{0.1, 0.05, 0.02, 1e-7}, 50, 1);
    EXPECT_GT(est.excluded_pairs, 0u);
    EXPECT_THROW(local_dimension_estimate(m, std::vector<double>{0.1, 1e-7, 1e-8}, 50, 1), DegenerateError);
}

// =============================================================================
// Lower local density
// =============================================================================

TEST(DensityProbe, UniformFixture) {
    const EmpiricalMeasure m(random_uniform_fixture(1'000'000, 30));
    const auto probe = lower_local_density_probe(m, geometric_radii(0.02, 2.0, 5), 300, 3);
    EXPECT_NEAR(probe.median, 1.0, 0.1);
    EXPECT_LE(probe.q10, probe.median);
    EXPECT_LE(probe.median, probe.q90);
    EXPECT_LE(probe.q90, probe.q99);
    EXPECT_LE(probe.q99, probe.max);
}

TEST(DensityProbe, AtomGrowsLikeInverseRadius) {
    // Mass 0.8 at 0.5 on top of a uniform background, so most probes sit on the atom.
    auto xs = random_uniform_fixture(200'000, 31);
    std::fill(xs.begin(), xs.begin() + 160'000, 0.5);
    const EmpiricalMeasure m(xs);
    const auto radii = geometric_radii(0.04, 2.0, 5);
    const auto probe = lower_local_density_probe(m, radii, 200, 4);
    ASSERT_EQ(probe.median_by_radius.size(), radii.size());
    for (std::size_t i = 1; i < radii.size(); ++i) {
        EXPECT_GT(probe.median_by_radius[i], 1.8 * probe.median_by_radius[i - 1]);
    }
    const double expected = 0.8 / (2 * radii.back()) + 0.2;
    EXPECT_NEAR(probe.median_by_radius.back(), expected, 0.02 * expected);
}
