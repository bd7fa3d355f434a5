#include "mgm/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mgm/errors.hpp"
#include "mgm/measure.hpp"

namespace mgm {

namespace {

void check_unit(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
        throw DomainError(std::string(name) + " must lie in (0,1), got " + std::to_string(v));
    }
}

void check_cantor_axis(double tau0, double tau1) {
    check_unit(tau0, "tau0");
    check_unit(tau1, "tau1");
    if (!(tau0 + tau0 * tau1 < 1.0)) {
        throw DomainError("requires tau0 + tau0*tau1 < 1, got " + std::to_string(tau0 + tau0 * tau1));
    }
}

// Bisection on a strictly decreasing function with f(lo) > 1 > f(hi), run until
// the bracket stops shrinking (or the iteration cap).
template <typename F>
MoranSolution bisect_decreasing(F&& f, double lo, double hi) {
    MoranSolution sol;
    std::size_t it = 0;
    for (; it < kMoranMaxIterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (!(mid > lo && mid < hi)) break;
        if (f(mid) > 1.0) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    sol.bracket_lo = lo;
    sol.bracket_hi = hi;
    sol.iterations = it;
    // Whichever endpoint is closer to the level set.
    const double flo = f(lo) - 1.0, fhi = f(hi) - 1.0;
    sol.d = std::abs(flo) <= std::abs(fhi) ? lo : hi;
    sol.residual = std::abs(flo) <= std::abs(fhi) ? flo : fhi;
    return sol;
}

}  // namespace

double weighted_moran_function(double beta0, double beta1, double tau0, double tau1, double d) {
    return beta0 * std::pow(tau0, d - 1.0) + beta0 * beta1 * std::pow(tau0 * tau1, d - 1.0);
}

MoranSolution moran_solve(double beta0, double beta1, double tau0, double tau1) {
    check_unit(beta0, "beta0");
    check_unit(beta1, "beta1");
    check_cantor_axis(tau0, tau1);
    if (!(beta0 + beta0 * beta1 > 1.0)) {
        throw DomainError("requires beta0 + beta0*beta1 > 1, got " +
                          std::to_string(beta0 + beta0 * beta1));
    }
    auto g = [&](double d) { return weighted_moran_function(beta0, beta1, tau0, tau1, d); };
    double hi = 2.0;
    while (!(g(hi) < 1.0)) {
        hi *= 2.0;
        if (hi > 1e6) throw DomainError("moran_solve: no upper bracket found");
    }
    MoranSolution sol = bisect_decreasing(g, 1.0, hi);
    sol.p = beta0 * std::pow(tau0, sol.d - 1.0);
    sol.q = beta0 * beta1 * std::pow(tau0 * tau1, sol.d - 1.0);
    return sol;
}

MoranSolution classical_moran(double tau0, double tau1) {
    check_cantor_axis(tau0, tau1);
    auto h = [&](double d) { return std::pow(tau0, d) + std::pow(tau0 * tau1, d); };
    MoranSolution sol = bisect_decreasing(h, 0.0, 1.0);
    sol.p = std::pow(tau0, sol.d);
    sol.q = std::pow(tau0 * tau1, sol.d);
    return sol;
}

double projected_measure_dimension(double beta0, double beta1, double tau0, double tau1, double p,
                                   double dim_mu) {
    check_unit(beta0, "beta0");
    check_unit(beta1, "beta1");
    check_unit(p, "p");
    check_cantor_axis(tau0, tau1);
    if (!(beta0 + beta0 * beta1 >= 1.0)) {
        throw DomainError("requires beta0 + beta0*beta1 >= 1, got " +
                          std::to_string(beta0 + beta0 * beta1));
    }
    if (!(dim_mu >= 0.0 && dim_mu <= 1.0)) throw DomainError("dim_mu must lie in [0,1]");
    const double entropy_term = p * std::log(p) + (1.0 - p) * std::log1p(-p);
    const double lyap_beta = std::log(beta0) + (1.0 - p) * std::log(beta1);
    const double lyap_tau = std::log(tau0) + (1.0 - p) * std::log(tau1);
    return entropy_term / lyap_tau + (1.0 - lyap_beta / lyap_tau) * dim_mu;
}

PointCloud2D attractor_point_cloud(const GeometricParams& x_params, const GeometricParams& y_params,
                                   const MarkovParams& markov, std::size_t count, std::size_t depth,
                                   std::uint64_t seed) {
    if (count == 0) throw DegenerateError("attractor_point_cloud: count must be positive");
    std::vector<Point2> points(count);
    for_each_word_block(markov, count, depth, seed,
                        [&](std::size_t first, const kernels::PackedWords& words) {
                            std::vector<double> xs(words.count), ys(words.count);
                            kernels::code_packed(words, x_params.beta0(), x_params.beta1(), xs);
                            kernels::code_packed(words, y_params.beta0(), y_params.beta1(), ys);
                            for (std::size_t i = 0; i < words.count; ++i) {
                                points[first + i] = {xs[i], ys[i]};
                            }
                        });
    return PointCloud2D{std::move(points), x_params, y_params, depth, seed};
}

namespace {

Point2 apply_map(Symbol s, Point2 z, const GeometricParams& xp, const GeometricParams& yp) {
    if (s == 1) return {xp.beta1() * z.x + xp.beta1(), yp.beta1() * z.y + yp.beta1()};
    return {xp.beta0() * z.x, yp.beta0() * z.y};
}

}  // namespace

Point2 ifs_compose(SymbolSpan symbols, const GeometricParams& x_params,
                   const GeometricParams& y_params, Point2 start) {
    Point2 z = start;
    for (std::size_t k = symbols.size(); k-- > 0;) z = apply_map(symbols[k], z, x_params, y_params);
    return z;
}

Point2 chaos_game(SymbolSpan symbols, const GeometricParams& x_params,
                  const GeometricParams& y_params, Point2 start) {
    Point2 z = start;
    for (Symbol s : symbols) z = apply_map(s, z, x_params, y_params);
    return z;
}

namespace {

constexpr unsigned kMaxOctave = 30;

void check_octaves(unsigned k_min, unsigned k_max) {
    if (k_max > kMaxOctave) throw DomainError("box counting supports octaves up to 30");
    if (k_min > k_max) throw DomainError("box counting: k_min must not exceed k_max");
}

std::uint32_t cell_index(double v, double lo, double side, unsigned k) {
    const double cells = std::ldexp(1.0, static_cast<int>(k));
    const double idx = std::floor((v - lo) / side * cells);
    return static_cast<std::uint32_t>(std::clamp(idx, 0.0, cells - 1.0));
}

std::vector<BoxCount> count_keys(std::vector<std::uint64_t>& keys, unsigned k_min, unsigned k_max,
                                 double side, unsigned bits_per_axis, bool two_d) {
    std::vector<BoxCount> out;
    std::vector<std::uint64_t> work;
    for (unsigned k = k_min; k <= k_max; ++k) {
        const unsigned shift = k_max - k;
        work.resize(keys.size());
        const std::uint64_t low_mask = (std::uint64_t{1} << bits_per_axis) - 1;
        for (std::size_t i = 0; i < keys.size(); ++i) {
            if (two_d) {
                const std::uint64_t ix = keys[i] >> bits_per_axis;
                const std::uint64_t iy = keys[i] & low_mask;
                work[i] = ((ix >> shift) << bits_per_axis) | (iy >> shift);
            } else {
                work[i] = keys[i] >> shift;
            }
        }
        std::sort(work.begin(), work.end());
        const auto distinct = std::unique(work.begin(), work.end()) - work.begin();
        out.push_back({std::ldexp(side, -static_cast<int>(k)), static_cast<std::uint64_t>(distinct)});
    }
    return out;
}

BoxDimension fit_counts(std::vector<BoxCount> counts) {
    std::vector<double> xs, ys;
    std::size_t informative = 0;
    for (const auto& c : counts) {
        xs.push_back(-std::log(c.scale));
        ys.push_back(std::log(static_cast<double>(c.count)));
        if (c.count > 1) ++informative;
    }
    if (informative < 2) throw DegenerateError("box counting: fewer than two occupied scales");
    const LinearFit fit = fit_line(xs, ys);
    return BoxDimension{fit.slope, fit.r_squared, std::move(counts)};
}

}  // namespace

std::vector<BoxCount> box_counts(std::span<const Point2> points, unsigned k_min, unsigned k_max) {
    check_octaves(k_min, k_max);
    if (points.empty()) throw DegenerateError("box counting: no points");
    double x0 = points[0].x, x1 = x0, y0 = points[0].y, y1 = y0;
    for (const auto& p : points) {
        x0 = std::min(x0, p.x);
        x1 = std::max(x1, p.x);
        y0 = std::min(y0, p.y);
        y1 = std::max(y1, p.y);
    }
    const double side = std::max(x1 - x0, y1 - y0);
    if (!(side > 0.0)) throw DegenerateError("box counting: all points coincide");
    std::vector<std::uint64_t> keys(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) {
        keys[i] = (std::uint64_t{cell_index(points[i].x, x0, side, k_max)} << 32) |
                  cell_index(points[i].y, y0, side, k_max);
    }
    return count_keys(keys, k_min, k_max, side, 32, true);
}

std::vector<BoxCount> box_counts(std::span<const double> samples, unsigned k_min, unsigned k_max) {
    check_octaves(k_min, k_max);
    if (samples.empty()) throw DegenerateError("box counting: no samples");
    const auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    const double lo = *lo_it;
    const double side = *hi_it - lo;
    if (!(side > 0.0)) throw DegenerateError("box counting: all samples coincide");
    std::vector<std::uint64_t> keys(samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) keys[i] = cell_index(samples[i], lo, side, k_max);
    return count_keys(keys, k_min, k_max, side, 32, false);
}

BoxDimension box_counting_dimension(std::span<const Point2> points, unsigned k_min, unsigned k_max) {
    if (k_max < k_min + 4) throw DomainError("box counting needs at least four octaves of scales");
    return fit_counts(box_counts(points, k_min, k_max));
}

BoxDimension box_counting_dimension(std::span<const double> samples, unsigned k_min,
                                    unsigned k_max) {
    if (k_max < k_min + 4) throw DomainError("box counting needs at least four octaves of scales");
    return fit_counts(box_counts(samples, k_min, k_max));
}

void write_points_csv(std::ostream& os, std::span<const Point2> points) {
    const auto old = os.precision(17);
    os << "x,y\n";
    for (const auto& p : points) os << p.x << ',' << p.y << '\n';
    os.precision(old);
}

std::vector<Point2> read_points_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "x,y") throw DomainError("point CSV: expected header 'x,y'");
    std::vector<Point2> points;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw DomainError("point CSV: malformed row '" + line + "'");
        points.push_back({std::stod(line.substr(0, comma)), std::stod(line.substr(comma + 1))});
    }
    return points;
}

void write_box_counts_csv(std::ostream& os, std::span<const BoxCount> counts) {
    const auto old = os.precision(17);
    os << "scale,count\n";
    for (const auto& c : counts) os << c.scale << ',' << c.count << '\n';
    os.precision(old);
}

}  // namespace mgm
