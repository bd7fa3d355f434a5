#include "mgm/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "mgm/constants.hpp"
#include "mgm/errors.hpp"

namespace mgm {

namespace {

void check_unit(double v, const char* name) {
    if (!(v > 0.0 && v < 1.0)) {
        throw DomainError(std::string(name) + " must lie in (0,1), got " + std::to_string(v));
    }
}

// p log p + (1-p) log(1-p), negative on (0,1).
double neg_entropy_term(double p) { return p * std::log(p) + (1.0 - p) * std::log1p(-p); }

}  // namespace

double dim_upper_bound(double beta0, double beta1, double p) {
    check_unit(beta0, "beta0");
    check_unit(beta1, "beta1");
    check_unit(p, "p");
    return neg_entropy_term(p) / (std::log(beta0) + (1.0 - p) * std::log(beta1));
}

double lq_lhs(double beta0, double beta1, double p, double q) {
    return std::pow(p, q) / std::pow(beta0, q - 1.0) +
           std::pow(1.0 - p, q) / std::pow(beta0 * beta1, q - 1.0);
}

RegionConditions region_conditions(double beta0, double beta1, double p, std::optional<double> q) {
    check_unit(beta0, "beta0");
    check_unit(beta1, "beta1");
    check_unit(p, "p");
    if (q && !(*q > 1.0 && *q <= 2.0)) throw DomainError("q must lie in (1,2]");

    RegionConditions rc;
    const double lb0 = std::log(beta0), lb1 = std::log(beta1);
    // Compared in log form, the same expression whose ratio is the dimension
    // bound, so "singular" and "bound < 1" agree.
    const double log_lhs = lb0 + (1.0 - p) * lb1;
    const double log_rhs = neg_entropy_term(p);
    rc.singular_lhs = std::exp(log_lhs);
    rc.singular_rhs = std::exp(log_rhs);
    rc.singular_cond = log_lhs < log_rhs;

    rc.ac_lhs = std::pow(p / beta0, p) * std::pow((1.0 - p) / (beta0 * beta1), 1.0 - p);
    rc.ac_cond = rc.ac_lhs < 1.0;

    rc.l2_lhs = (beta0 - p * p) * beta1;
    rc.l2_rhs = (1.0 - p) * (1.0 - p);
    rc.l2_cond = rc.l2_lhs > rc.l2_rhs;

    if (q) {
        rc.lq_lhs = lq_lhs(beta0, beta1, p, *q);
        rc.lq_cond = *rc.lq_lhs < 1.0;
    }
    rc.within_0739 = std::max(beta0, beta1) < kTransversalityBound;
    return rc;
}

std::string_view to_string(Region region) {
    switch (region) {
        case Region::Singular: return "Singular";
        case Region::AbsContinuousAE: return "AbsContinuousAE";
        case Region::L2DensityAE: return "L2DensityAE";
        case Region::Undetermined: return "Undetermined";
    }
    return "Undetermined";
}

Region parse_region(std::string_view name) {
    for (Region r : {Region::Singular, Region::AbsContinuousAE, Region::L2DensityAE,
                     Region::Undetermined}) {
        if (to_string(r) == name) return r;
    }
    throw DomainError("unknown region class '" + std::string(name) + "'");
}

RegionClass classify(double beta0, double beta1, double p) {
    RegionClass out;
    out.conditions = region_conditions(beta0, beta1, p);
    out.dim_bound = dim_upper_bound(beta0, beta1, p);
    const auto& c = out.conditions;
    if (c.singular_cond) {
        out.region = Region::Singular;
    } else if (c.within_0739 && c.l2_cond) {
        out.region = Region::L2DensityAE;
    } else if (c.within_0739 && c.ac_cond) {
        out.region = Region::AbsContinuousAE;
    } else {
        out.region = Region::Undetermined;
    }
    return out;
}

std::array<std::size_t, 4> RegionMap::class_counts() const {
    std::array<std::size_t, 4> counts{};
    for (const auto& cell : cells) ++counts[static_cast<std::size_t>(cell.region)];
    return counts;
}

RegionMap region_grid_scan(double p, std::size_t resolution, GridBounds bounds) {
    if (resolution < 2) throw DomainError("region_grid_scan: resolution must be at least 2");
    if (!(bounds.beta0_lo >= 0.0 && bounds.beta0_lo < bounds.beta0_hi && bounds.beta0_hi <= 1.0 &&
          bounds.beta1_lo >= 0.0 && bounds.beta1_lo < bounds.beta1_hi && bounds.beta1_hi <= 1.0)) {
        throw DomainError("region_grid_scan: bounds must be increasing intervals inside [0,1]");
    }
    check_unit(p, "p");
    RegionMap map;
    map.p = p;
    map.resolution = resolution;
    map.bounds = bounds;
    map.cells.reserve(resolution * resolution);
    const double h0 = (bounds.beta0_hi - bounds.beta0_lo) / static_cast<double>(resolution);
    const double h1 = (bounds.beta1_hi - bounds.beta1_lo) / static_cast<double>(resolution);
    for (std::size_t j = 0; j < resolution; ++j) {
        const double b1 = bounds.beta1_lo + (static_cast<double>(j) + 0.5) * h1;
        for (std::size_t i = 0; i < resolution; ++i) {
            const double b0 = bounds.beta0_lo + (static_cast<double>(i) + 0.5) * h0;
            const RegionClass rc = classify(b0, b1, p);
            map.cells.push_back({b0, b1, p, rc.dim_bound, rc.region, b1 > b0});
        }
    }
    return map;
}

void write_region_csv(std::ostream& os, const RegionMap& map) {
    const auto old = os.precision(17);
    os << "beta0,beta1,p,dim_bound,class\n";
    for (const auto& c : map.cells) {
        os << c.beta0 << ',' << c.beta1 << ',' << c.p << ',' << c.dim_bound << ','
           << to_string(c.region) << '\n';
    }
    os.precision(old);
}

std::vector<RegionCell> read_region_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "beta0,beta1,p,dim_bound,class") {
        throw DomainError("region CSV: missing or unexpected header");
    }
    std::vector<RegionCell> cells;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream row(line);
        RegionCell cell;
        std::string field;
        double* targets[] = {&cell.beta0, &cell.beta1, &cell.p, &cell.dim_bound};
        for (double* t : targets) {
            if (!std::getline(row, field, ',')) throw DomainError("region CSV: short row '" + line + "'");
            *t = std::stod(field);
        }
        if (!std::getline(row, field)) throw DomainError("region CSV: missing class in '" + line + "'");
        cell.region = parse_region(field);
        cell.beta1_exceeds_beta0 = cell.beta1 > cell.beta0;
        cells.push_back(cell);
    }
    return cells;
}

}  // namespace mgm
