#pragma once

// Closed-form dimension bound and the parameter-region classifier.
//
// For mu = mu_{b0,b1,p}:
//   dim_H mu <= (p log p + (1-p) log(1-p)) / (log b0 + (1-p) log b1),
//   singular        when  b0 b1^{1-p} < p^p (1-p)^{1-p},
//   a.c. (a.e.)     when  (p/b0)^p ((1-p)/(b0 b1))^{1-p} < 1 and b0, b1 < 0.739,
//   L^2 density     when  (b0 - p^2) b1 > (1-p)^2 and b0, b1 < 0.739,
//   L^q density     when  p^q / b0^{q-1} + (1-p)^q / (b0 b1)^{q-1} < 1.
// The last three hold for almost every parameter pair only; the classifier
// reports the region, not a property of the specific measure.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

namespace mgm {

double dim_upper_bound(double beta0, double beta1, double p);

struct RegionConditions {
    bool singular_cond = false;
    bool ac_cond = false;
    bool l2_cond = false;
    std::optional<bool> lq_cond;  // present when q was supplied
    bool within_0739 = false;

    // Left-hand sides, for plotting.
    double singular_lhs = 0.0;  // b0 b1^{1-p}
    double singular_rhs = 0.0;  // p^p (1-p)^{1-p}
    double ac_lhs = 0.0;        // (p/b0)^p ((1-p)/(b0 b1))^{1-p}
    double l2_lhs = 0.0;        // (b0 - p^2) b1
    double l2_rhs = 0.0;        // (1-p)^2
    std::optional<double> lq_lhs;
};

// Throws DomainError unless all of b0, b1, p lie in (0,1) and q (if given) in (1,2].
RegionConditions region_conditions(double beta0, double beta1, double p,
                                   std::optional<double> q = std::nullopt);

// Left-hand side of the L^q condition.
double lq_lhs(double beta0, double beta1, double p, double q);

enum class Region { Singular, AbsContinuousAE, L2DensityAE, Undetermined };

std::string_view to_string(Region region);
// Throws DomainError on an unknown spelling.
Region parse_region(std::string_view name);

struct RegionClass {
    Region region = Region::Undetermined;
    double dim_bound = 0.0;
    RegionConditions conditions;
};

// Singular if singular_cond; else L2DensityAE if within_0739 and l2_cond; else
// AbsContinuousAE if within_0739 and ac_cond; else Undetermined.
RegionClass classify(double beta0, double beta1, double p);

struct RegionCell {
    double beta0 = 0.0;
    double beta1 = 0.0;
    double p = 0.0;
    double dim_bound = 0.0;
    Region region = Region::Undetermined;
    // The L^q condition is established for beta1 <= beta0; cells above the diagonal
    // use the symmetric L^2 form and are flagged.
    bool beta1_exceeds_beta0 = false;
};

struct GridBounds {
    double beta0_lo = 0.0, beta0_hi = 1.0;
    double beta1_lo = 0.0, beta1_hi = 1.0;
};

struct RegionMap {
    double p = 0.0;
    std::size_t resolution = 0;
    GridBounds bounds;
    std::vector<RegionCell> cells;  // row-major: beta1 outer, beta0 inner

    std::array<std::size_t, 4> class_counts() const;
};

// Classifies the cell centers of a resolution x resolution grid.
RegionMap region_grid_scan(double p, std::size_t resolution, GridBounds bounds = {});

// CSV with header "beta0,beta1,p,dim_bound,class", values at 17 significant digits.
void write_region_csv(std::ostream& os, const RegionMap& map);
// Parses the same format back into cells (flags recomputed from beta values).
std::vector<RegionCell> read_region_csv(std::istream& is);

}  // namespace mgm
