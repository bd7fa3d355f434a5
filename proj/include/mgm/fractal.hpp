#pragma once

// The self-affine set Lambda = (pi_{b0,b1} x pi_{t0,t1})(Sigma_A), the
// weighted Moran equation
//     b0 t0^{d-1} + b0 b1 (t0 t1)^{d-1} = 1      (d > 1)
// for its dimension, the classical Moran equation t0^d + (t0 t1)^d = 1, and
// box-counting estimates on sampled point clouds.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "mgm/coding.hpp"
#include "mgm/fit.hpp"
#include "mgm/subshift.hpp"

namespace mgm {

struct MoranSolution {
    double d = 0.0;
    double residual = 0.0;  // g(d) - 1
    double bracket_lo = 0.0;
    double bracket_hi = 0.0;
    std::size_t iterations = 0;
    // Weights p = b0 t0^{d-1} and 1 - p = b0 b1 (t0 t1)^{d-1}; p defines the
    // Markov measure whose projection attains dimension d.
    double p = 0.0;
    double q = 0.0;
};

inline constexpr double kMoranTolerance = 1e-12;
inline constexpr std::size_t kMoranMaxIterations = 200;

// g(d) = b0 t0^{d-1} + b0 b1 (t0 t1)^{d-1}.
double weighted_moran_function(double beta0, double beta1, double tau0, double tau1, double d);

// Root d > 1 of g(d) = 1 by bisection. Requires b0 + b0 b1 > 1 and
// t0 + t0 t1 < 1 (all in (0,1)); throws DomainError naming the failed one.
MoranSolution moran_solve(double beta0, double beta1, double tau0, double tau1);

// Root d in (0,1) of t0^d + (t0 t1)^d = 1. Requires t0 + t0 t1 < 1.
MoranSolution classical_moran(double tau0, double tau1);

// Dimension of the projected Markov measure:
//   H/L_t + (1 - L_b/L_t) dim_mu,
// H = p log p + (1-p) log(1-p), L_b = log b0 + (1-p) log b1, L_t likewise.
// Requires t0 + t0 t1 < 1, b0 + b0 b1 >= 1 and dim_mu in [0,1].
double projected_measure_dimension(double beta0, double beta1, double tau0, double tau1, double p,
                                   double dim_mu);

struct Point2 {
    double x = 0.0;
    double y = 0.0;
};

struct PointCloud2D {
    std::vector<Point2> points;
    GeometricParams x_params;
    GeometricParams y_params;
    std::size_t depth = 0;
    std::uint64_t seed = 0;
};

// Points (pi_X(s), pi_Y(s)) for `count` sampled words of the chain.
PointCloud2D attractor_point_cloud(const GeometricParams& x_params, const GeometricParams& y_params,
                                   const MarkovParams& markov, std::size_t count, std::size_t depth,
                                   std::uint64_t seed);

// G_{s_1} o G_{s_2} o ... o G_{s_n} applied to `start`, with
// G_0(x,y) = (b0 x, t0 y) and G_1(x,y) = (b1 x + b1, t1 y + t1).
Point2 ifs_compose(SymbolSpan symbols, const GeometricParams& x_params,
                   const GeometricParams& y_params, Point2 start = {});

// Chaos-game orbit: z_k = G_{s_k}(z_{k-1}) from z_0 = start. After n steps
// this equals ifs_compose of the reversed word.
Point2 chaos_game(SymbolSpan symbols, const GeometricParams& x_params,
                  const GeometricParams& y_params, Point2 start = {});

struct BoxCount {
    double scale = 0.0;
    std::uint64_t count = 0;
};

struct BoxDimension {
    double slope = 0.0;
    double r_squared = 0.0;
    std::vector<BoxCount> counts;  // one per octave in the fitted range
};

// Occupied boxes of side L 2^-k, k in [k_min, k_max], on the lattice anchored
// at the lower-left corner of the bounding box (L = its longer side).
std::vector<BoxCount> box_counts(std::span<const Point2> points, unsigned k_min, unsigned k_max);
std::vector<BoxCount> box_counts(std::span<const double> samples, unsigned k_min, unsigned k_max);

// Least-squares slope of log N against log(1/scale). Requires at least four
// octaves; throws DegenerateError when fewer than two scales are occupied by
// more than one box.
BoxDimension box_counting_dimension(std::span<const Point2> points, unsigned k_min, unsigned k_max);
BoxDimension box_counting_dimension(std::span<const double> samples, unsigned k_min,
                                    unsigned k_max);

void write_points_csv(std::ostream& os, std::span<const Point2> points);
std::vector<Point2> read_points_csv(std::istream& is);
void write_box_counts_csv(std::ostream& os, std::span<const BoxCount> counts);

}  // namespace mgm
