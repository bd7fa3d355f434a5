// mgm: command-line front end for the markovgeom library.
//
// Exit status: 0 on success, 1 on usage or I/O errors, 2 when a parameter
// violates a mathematical precondition.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "mgm/analysis.hpp"
#include "mgm/coding.hpp"
#include "mgm/constants.hpp"
#include "mgm/errors.hpp"
#include "mgm/fractal.hpp"
#include "mgm/kernels.hpp"
#include "mgm/measure.hpp"
#include "mgm/rng.hpp"
#include "mgm/subshift.hpp"
#include "mgm/transversality.hpp"

#ifndef MGM_VERSION
#define MGM_VERSION "0.0.0"
#endif

using namespace mgm;
using json = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

using Value = std::variant<double, std::int64_t, std::string, bool>;

std::string format_number(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

json to_json(const Value& v) {
    return std::visit(
        [](const auto& x) -> json {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(x)) return nullptr;
                return std::stod(format_number(x));
            } else {
                return x;
            }
        },
        v);
}

std::string to_csv(const Value& v) {
    return std::visit(
        [](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, double>) return format_number(x);
            else if constexpr (std::is_same_v<T, bool>) return x ? "true" : "false";
            else if constexpr (std::is_same_v<T, std::string>) return x;
            else return std::to_string(x);
        },
        v);
}

// One subcommand result: flat scalar fields, optionally a table.
struct Result {
    std::vector<std::pair<std::string, Value>> fields;
    std::vector<std::string> header;
    std::vector<std::vector<Value>> rows;
    std::optional<std::size_t> depth;
    // Verbatim CSV body for tables with a fixed module format.
    std::optional<std::string> raw_csv;
    json extra = json::object();  // nested JSON-only payload (witnesses, counts)

    void add(std::string key, Value v) { fields.emplace_back(std::move(key), std::move(v)); }
    bool has_table() const { return !header.empty() || raw_csv.has_value(); }
};

struct Globals {
    std::string format = "csv";
    std::string output;
    std::uint64_t seed = kDefaultSeed;
    std::size_t threads = 0;
    bool emit_gnuplot = false;
};

class Sink {
public:
    explicit Sink(const std::string& path) {
        if (path.empty() || path == "-") {
            os_ = &std::cout;
        } else {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw UsageError("cannot open output file " + path);
            os_ = file_.get();
        }
    }
    std::ostream& operator*() { return *os_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* os_ = nullptr;
};

void emit(const Result& r, const Globals& g) {
    Sink sink(g.output);
    std::ostream& os = *sink;
    if (g.format == "json") {
        json j = json::object();
        for (const auto& [k, v] : r.fields) j[k] = to_json(v);
        if (!r.header.empty()) {
            json rows = json::array();
            for (const auto& row : r.rows) {
                json obj = json::object();
                for (std::size_t c = 0; c < r.header.size(); ++c) obj[r.header[c]] = to_json(row[c]);
                rows.push_back(std::move(obj));
            }
            j["rows"] = std::move(rows);
        }
        for (auto it = r.extra.begin(); it != r.extra.end(); ++it) j[it.key()] = it.value();
        json meta = {{"seed", g.seed}, {"version", MGM_VERSION}};
        meta["depth"] = r.depth ? json(*r.depth) : json(nullptr);
        j["meta"] = std::move(meta);
        os << j.dump(2) << '\n';
        return;
    }
    if (r.has_table()) {
        if (r.raw_csv) {
            os << *r.raw_csv;
        } else {
            for (std::size_t c = 0; c < r.header.size(); ++c) os << (c ? "," : "") << r.header[c];
            os << '\n';
            for (const auto& row : r.rows) {
                for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << to_csv(row[c]);
                os << '\n';
            }
        }
        // Scalars accompany the table on stderr so stdout stays a clean CSV.
        for (const auto& [k, v] : r.fields) std::cerr << k << '=' << to_csv(v) << '\n';
        return;
    }
    for (std::size_t c = 0; c < r.fields.size(); ++c) os << (c ? "," : "") << r.fields[c].first;
    os << '\n';
    for (std::size_t c = 0; c < r.fields.size(); ++c) os << (c ? "," : "") << to_csv(r.fields[c].second);
    os << '\n';
}

// gnuplot script next to the CSV output, named <output>.gp.
void emit_gnuplot(const std::string& plot_body, const Globals& g) {
    if (!g.emit_gnuplot) return;
    if (g.output.empty() || g.output == "-" || g.format != "csv") {
        throw UsageError("--emit-gnuplot needs --format csv and an --output file");
    }
    const std::string path = g.output + ".gp";
    std::ofstream gp(path);
    if (!gp) throw UsageError("cannot open " + path);
    gp << "set datafile separator ','\n"
       << "set key autotitle columnhead\n"
       << "data = '" << g.output << "'\n"
       << plot_body;
}

std::vector<Symbol> parse_word(const std::string& text) {
    std::vector<Symbol> out;
    for (char ch : text) {
        if (ch == ',' || ch == ' ') continue;
        if (ch != '0' && ch != '1') throw InvalidAlphabetError("word symbols must be 0 or 1");
        out.push_back(static_cast<Symbol>(ch - '0'));
    }
    return out;
}

std::size_t resolve_depth(const GeometricParams& geom, std::size_t depth, double eps) {
    return depth > 0 ? depth : geom.depth_for(eps);
}

// ----------------------------------------------------------------------------
// Subcommands. Each registers its flags and returns the action to run.

using Action = std::function<void(const Globals&)>;

struct Triple {
    double beta0 = 0.0, beta1 = 0.0, p = kGoldenP;
};

void add_triple(CLI::App* cmd, Triple& t, bool require_p = true) {
    cmd->add_option("--beta0", t.beta0, "contraction ratio after a 0")->required();
    cmd->add_option("--beta1", t.beta1, "contraction ratio after a 1")->required();
    auto* p = cmd->add_option("--p", t.p, "transition probability 0 -> 0");
    if (require_p) p->required();
}

struct SamplingFlags {
    std::size_t count = 1'000'000;
    std::size_t depth = 0;
    double eps = kDefaultTailEps;
};

void add_sampling(CLI::App* cmd, SamplingFlags& s) {
    cmd->add_option("--count", s.count, "number of samples")->capture_default_str();
    cmd->add_option("--depth", s.depth, "truncation depth (default: from --eps)");
    cmd->add_option("--eps", s.eps, "tail tolerance used when --depth is absent")->capture_default_str();
}

Action cmd_entropy(CLI::App& app) {
    auto* cmd = app.add_subcommand("entropy", "entropy of the Markov measure");
    auto p = std::make_shared<double>();
    cmd->add_option("--p", *p, "transition probability 0 -> 0")->required();
    return [p](const Globals& g) {
        Result r;
        r.add("p", *p);
        r.add("entropy", parry_entropy(MarkovParams(*p)));
        emit(r, g);
    };
}

Action cmd_cylinder(CLI::App& app) {
    auto* cmd = app.add_subcommand("cylinder", "measure (and optionally image diameter) of a cylinder");
    auto p = std::make_shared<double>();
    auto word = std::make_shared<std::string>();
    auto beta = std::make_shared<std::vector<double>>();
    cmd->add_option("--p", *p, "transition probability 0 -> 0")->required();
    cmd->add_option("--word", *word, "symbols, e.g. 0100")->required();
    cmd->add_option("--betas", *beta, "beta0 beta1: also report the coding-map image")->expected(2);
    return [=](const Globals& g) {
        const auto w = parse_word(*word);
        Result r;
        r.add("word", *word);
        r.add("admissible", is_admissible(w));
        r.add("measure", cylinder_measure(w, MarkovParams(*p)));
        if (!beta->empty()) {
            const GeometricParams geom((*beta)[0], (*beta)[1]);
            r.add("pi_left", pi_eval(w, geom).value);
            r.add("diameter", w.empty() ? 1.0 : cylinder_diameter(w, geom));
        }
        r.depth = w.size();
        emit(r, g);
    };
}

Action cmd_classify(CLI::App& app) {
    auto* cmd = app.add_subcommand("classify", "region of a parameter triple");
    auto t = std::make_shared<Triple>();
    auto q = std::make_shared<double>(0.0);
    add_triple(cmd, *t);
    cmd->add_option("--q", *q, "also evaluate the L^q condition, q in (1,2]");
    return [=](const Globals& g) {
        const auto cls = classify(t->beta0, t->beta1, t->p);
        const auto rc = *q > 0.0 ? region_conditions(t->beta0, t->beta1, t->p, *q) : cls.conditions;
        Result r;
        r.add("class", std::string(to_string(cls.region)));
        r.add("dim_bound", cls.dim_bound);
        r.add("singular_cond", rc.singular_cond);
        r.add("ac_cond", rc.ac_cond);
        r.add("l2_cond", rc.l2_cond);
        r.add("within_0739", rc.within_0739);
        r.add("singular_lhs", rc.singular_lhs);
        r.add("singular_rhs", rc.singular_rhs);
        r.add("ac_lhs", rc.ac_lhs);
        r.add("l2_lhs", rc.l2_lhs);
        r.add("l2_rhs", rc.l2_rhs);
        if (rc.lq_cond) {
            r.add("q", *q);
            r.add("lq_cond", *rc.lq_cond);
            r.add("lq_lhs", *rc.lq_lhs);
        }
        emit(r, g);
    };
}

Action cmd_dim_bound(CLI::App& app) {
    auto* cmd = app.add_subcommand("dim-bound", "upper bound for the dimension of the measure");
    auto t = std::make_shared<Triple>();
    add_triple(cmd, *t);
    return [=](const Globals& g) {
        Result r;
        r.add("dim_bound", dim_upper_bound(t->beta0, t->beta1, t->p));
        emit(r, g);
    };
}

Action cmd_region_map(CLI::App& app) {
    auto* cmd = app.add_subcommand("region-map", "classify a grid of (beta0, beta1) at fixed p");
    auto p = std::make_shared<double>(kGoldenP);
    auto res = std::make_shared<std::size_t>(100);
    auto bounds = std::make_shared<GridBounds>();
    cmd->add_option("--p", *p, "transition probability 0 -> 0")->required();
    cmd->add_option("--resolution", *res, "cells per axis")->capture_default_str();
    cmd->add_option("--beta0-min", bounds->beta0_lo);
    cmd->add_option("--beta0-max", bounds->beta0_hi);
    cmd->add_option("--beta1-min", bounds->beta1_lo);
    cmd->add_option("--beta1-max", bounds->beta1_hi);
    return [=](const Globals& g) {
        const auto map = region_grid_scan(*p, *res, *bounds);
        Result r;
        const auto counts = map.class_counts();
        for (Region reg : {Region::Singular, Region::AbsContinuousAE, Region::L2DensityAE, Region::Undetermined}) {
            r.add(std::string("count_") + std::string(to_string(reg)),
                  static_cast<std::int64_t>(counts[static_cast<std::size_t>(reg)]));
        }
        if (g.format == "csv") {
            std::ostringstream os;
            write_region_csv(os, map);
            r.raw_csv = os.str();
        } else {
            r.header = {"beta0", "beta1", "p", "dim_bound", "class"};
            for (const auto& c : map.cells) {
                r.rows.push_back({c.beta0, c.beta1, c.p, c.dim_bound, std::string(to_string(c.region))});
            }
        }
        emit(r, g);
        emit_gnuplot(
            "set xlabel 'beta0'\nset ylabel 'beta1'\nset key off\n"
            "cls(s) = s eq 'Singular' ? 0 : s eq 'AbsContinuousAE' ? 1 : s eq 'L2DensityAE' ? 2 : 3\n"
            "plot data using 1:2:(cls(strcol(5))) with points pt 5 ps 0.5 lc variable\n",
            g);
    };
}

Action cmd_sample(CLI::App& app) {
    auto* cmd = app.add_subcommand("sample", "Monte Carlo samples of the measure");
    auto t = std::make_shared<Triple>();
    auto s = std::make_shared<SamplingFlags>();
    add_triple(cmd, *t);
    add_sampling(cmd, *s);
    return [=](const Globals& g) {
        const GeometricParams geom(t->beta0, t->beta1);
        const std::size_t depth = resolve_depth(geom, s->depth, s->eps);
        const auto set = sample_measure(geom, MarkovParams(t->p), s->count, depth, g.seed);
        Result r;
        r.depth = depth;
        r.add("count", static_cast<std::int64_t>(set.size()));
        r.add("tail_bound", set.tail_bound());
        r.add("min", set.min());
        r.add("max", set.max());
        r.header = {"x"};
        for (double x : set.samples()) r.rows.push_back({x});
        emit(r, g);
        emit_gnuplot("set ylabel 'x'\nplot data using 0:1 with dots\n", g);
    };
}

Action cmd_hist(CLI::App& app) {
    auto* cmd = app.add_subcommand("hist", "histogram and L^2 estimate of the measure");
    auto t = std::make_shared<Triple>();
    auto s = std::make_shared<SamplingFlags>();
    auto width = std::make_shared<double>();
    add_triple(cmd, *t);
    add_sampling(cmd, *s);
    cmd->add_option("--bin-width", *width, "bin width")->required();
    return [=](const Globals& g) {
        const GeometricParams geom(t->beta0, t->beta1);
        const std::size_t depth = resolve_depth(geom, s->depth, s->eps);
        const auto set = sample_measure(geom, MarkovParams(t->p), s->count, depth, g.seed);
        const auto h = make_histogram(set, *width);
        Result r;
        r.depth = depth;
        r.add("bin_width", h.bin_width);
        r.add("total", static_cast<std::int64_t>(h.total));
        r.add("l2_norm", l2_norm_estimate(h));
        r.header = {"bin_left", "count", "density"};
        const double norm = static_cast<double>(h.total) * h.bin_width;
        for (std::size_t i = 0; i < h.counts.size(); ++i) {
            r.rows.push_back({h.bin_left(i), static_cast<std::int64_t>(h.counts[i]),
                              static_cast<double>(h.counts[i]) / norm});
        }
        emit(r, g);
        emit_gnuplot("set xlabel 'x'\nset ylabel 'density'\nset style fill solid\n"
                     "plot data using 1:3 with boxes\n",
                     g);
    };
}

Action cmd_local_dim(CLI::App& app) {
    auto* cmd = app.add_subcommand("local-dim", "local dimension and lower density probes");
    auto t = std::make_shared<Triple>();
    auto s = std::make_shared<SamplingFlags>();
    auto r0 = std::make_shared<double>(1e-2);
    auto ratio = std::make_shared<double>(2.0);
    auto nradii = std::make_shared<std::size_t>(12);
    auto probes = std::make_shared<std::size_t>(2000);
    add_triple(cmd, *t);
    add_sampling(cmd, *s);
    cmd->add_option("--r0", *r0, "largest radius")->capture_default_str();
    cmd->add_option("--ratio", *ratio, "ratio between consecutive radii")->capture_default_str();
    cmd->add_option("--radii", *nradii, "number of radii")->capture_default_str();
    cmd->add_option("--probes", *probes, "number of probe points")->capture_default_str();
    return [=](const Globals& g) {
        const GeometricParams geom(t->beta0, t->beta1);
        const std::size_t depth = resolve_depth(geom, s->depth, s->eps);
        const auto set = sample_measure(geom, MarkovParams(t->p), s->count, depth, g.seed);
        const auto radii = geometric_radii(*r0, *ratio, *nradii);
        const auto est = local_dimension_estimate(set, radii, *probes, derive_seed(g.seed, 1));
        const auto dens = lower_local_density_probe(set, radii, *probes, derive_seed(g.seed, 2));
        Result r;
        r.depth = depth;
        r.add("slope", est.slope);
        r.add("r_squared", est.r_squared);
        r.add("probes_used", static_cast<std::int64_t>(est.probes_used));
        r.add("excluded_pairs", static_cast<std::int64_t>(est.excluded_pairs));
        r.add("dim_bound", dim_upper_bound(t->beta0, t->beta1, t->p));
        r.add("density_median", dens.median);
        r.add("density_q10", dens.q10);
        r.add("density_q90", dens.q90);
        r.add("density_q99", dens.q99);
        r.add("density_max", dens.max);
        emit(r, g);
    };
}

struct FourRatios {
    double beta0 = 0.0, beta1 = 0.0, tau0 = 0.0, tau1 = 0.0;
};

void add_four(CLI::App* cmd, FourRatios& f) {
    cmd->add_option("--beta0", f.beta0, "horizontal ratio after a 0")->required();
    cmd->add_option("--beta1", f.beta1, "horizontal ratio after a 1")->required();
    cmd->add_option("--tau0", f.tau0, "vertical ratio after a 0")->required();
    cmd->add_option("--tau1", f.tau1, "vertical ratio after a 1")->required();
}

void add_moran(Result& r, const MoranSolution& sol) {
    r.add("d", sol.d);
    r.add("residual", sol.residual);
    r.add("iterations", static_cast<std::int64_t>(sol.iterations));
    r.add("bracket_lo", sol.bracket_lo);
    r.add("bracket_hi", sol.bracket_hi);
}

Action cmd_moran(CLI::App& app) {
    auto* cmd = app.add_subcommand("moran", "weighted Moran equation for the self-affine set");
    auto f = std::make_shared<FourRatios>();
    add_four(cmd, *f);
    return [=](const Globals& g) {
        const auto sol = moran_solve(f->beta0, f->beta1, f->tau0, f->tau1);
        Result r;
        add_moran(r, sol);
        r.add("p", sol.p);
        emit(r, g);
    };
}

Action cmd_classical_moran(CLI::App& app) {
    auto* cmd = app.add_subcommand("classical-moran", "Moran equation t0^d + (t0 t1)^d = 1");
    auto t0 = std::make_shared<double>(), t1 = std::make_shared<double>();
    cmd->add_option("--tau0", *t0)->required();
    cmd->add_option("--tau1", *t1)->required();
    return [=](const Globals& g) {
        Result r;
        add_moran(r, classical_moran(*t0, *t1));
        emit(r, g);
    };
}

Action cmd_projected_dim(CLI::App& app) {
    auto* cmd = app.add_subcommand("projected-dim", "dimension of the projected Markov measure");
    auto f = std::make_shared<FourRatios>();
    auto p = std::make_shared<double>(), dim_mu = std::make_shared<double>(1.0);
    add_four(cmd, *f);
    cmd->add_option("--p", *p, "transition probability 0 -> 0")->required();
    cmd->add_option("--dim-mu", *dim_mu, "dimension of the horizontal measure")->capture_default_str();
    return [=](const Globals& g) {
        Result r;
        r.add("dim", projected_measure_dimension(f->beta0, f->beta1, f->tau0, f->tau1, *p, *dim_mu));
        emit(r, g);
    };
}

Action cmd_fractal_points(CLI::App& app) {
    auto* cmd = app.add_subcommand("fractal-points", "sample the self-affine attractor");
    auto f = std::make_shared<FourRatios>();
    auto p = std::make_shared<double>(0.0);
    auto count = std::make_shared<std::size_t>(100'000);
    auto depth = std::make_shared<std::size_t>(0);
    add_four(cmd, *f);
    cmd->add_option("--p", *p, "chain parameter (default: the Moran weight when defined, else golden)");
    cmd->add_option("--count", *count)->capture_default_str();
    cmd->add_option("--depth", *depth, "truncation depth (default: tail below 1e-12 on both axes)");
    return [=](const Globals& g) {
        const GeometricParams x(f->beta0, f->beta1), y(f->tau0, f->tau1);
        double chain_p = *p;
        if (chain_p == 0.0) {
            try {
                chain_p = moran_solve(f->beta0, f->beta1, f->tau0, f->tau1).p;
            } catch (const DomainError&) {
                chain_p = kGoldenP;
            }
        }
        const std::size_t n = *depth > 0 ? *depth
                                         : std::max(x.depth_for(kDefaultTailEps), y.depth_for(kDefaultTailEps));
        const auto cloud = attractor_point_cloud(x, y, MarkovParams(chain_p), *count, n, g.seed);
        Result r;
        r.depth = n;
        r.add("p", chain_p);
        r.add("count", static_cast<std::int64_t>(cloud.points.size()));
        r.header = {"x", "y"};
        for (const auto& pt : cloud.points) r.rows.push_back({pt.x, pt.y});
        emit(r, g);
        emit_gnuplot("set xlabel 'x'\nset ylabel 'y'\nset key off\nplot data using 1:2 with dots\n", g);
    };
}

Action cmd_boxdim(CLI::App& app) {
    auto* cmd = app.add_subcommand("boxdim", "box-counting dimension of a CSV point set (x or x,y)");
    auto input = std::make_shared<std::string>();
    auto kmin = std::make_shared<unsigned>(3), kmax = std::make_shared<unsigned>(11);
    cmd->add_option("--input", *input, "CSV produced by sample or fractal-points")->required()->check(CLI::ExistingFile);
    cmd->add_option("--k-min", *kmin, "coarsest octave")->capture_default_str();
    cmd->add_option("--k-max", *kmax, "finest octave")->capture_default_str();
    return [=](const Globals& g) {
        std::ifstream in(*input);
        std::string header;
        std::getline(in, header);
        if (!header.empty() && header.back() == '\r') header.pop_back();
        BoxDimension bd;
        if (header == "x,y") {
            in.seekg(0);
            const auto pts = read_points_csv(in);
            bd = box_counting_dimension(pts, *kmin, *kmax);
        } else if (header == "x") {
            std::vector<double> xs;
            for (std::string line; std::getline(in, line);) {
                if (!line.empty()) xs.push_back(std::stod(line));
            }
            bd = box_counting_dimension(xs, *kmin, *kmax);
        } else {
            throw UsageError("unrecognized CSV header '" + header + "' (expected x or x,y)");
        }
        Result r;
        r.add("slope", bd.slope);
        r.add("r_squared", bd.r_squared);
        r.add("k_min", static_cast<std::int64_t>(*kmin));
        r.add("k_max", static_cast<std::int64_t>(*kmax));
        r.header = {"scale", "count"};
        for (const auto& c : bd.counts) r.rows.push_back({c.scale, static_cast<std::int64_t>(c.count)});
        emit(r, g);
        emit_gnuplot("set logscale xy\nset xlabel 'box side'\nset ylabel 'occupied boxes'\n"
                     "plot data using 1:2 with linespoints\n",
                     g);
    };
}

Action cmd_transversality(CLI::App& app) {
    auto* cmd = app.add_subcommand("transversality", "empirical delta-transversality over random series");
    auto count = std::make_shared<std::size_t>(10'000), depth = std::make_shared<std::size_t>(40);
    auto grid = std::make_shared<std::size_t>(1024);
    auto lo = std::make_shared<double>(0.1), hi = std::make_shared<double>(kTransversalityBound);
    auto p = std::make_shared<double>(kGoldenP);
    auto law = std::make_shared<std::string>("uniform");
    cmd->add_option("--count", *count, "number of random instances")->capture_default_str();
    cmd->add_option("--depth", *depth, "series truncation")->capture_default_str();
    cmd->add_option("--lo", *lo)->capture_default_str();
    cmd->add_option("--hi", *hi)->capture_default_str();
    cmd->add_option("--grid", *grid, "grid points on [lo, hi]")->capture_default_str();
    cmd->add_option("--p", *p, "chain parameter for the symbol sequences")->capture_default_str();
    cmd->add_option("--law", *law, "uniform|unit|structured|unconstrained")->capture_default_str();
    return [=](const Globals& g) {
        const auto coeff_law = parse_coefficient_law(*law);
        const auto inst = random_series_instances(*count, *depth, coeff_law, MarkovParams(*p), g.seed);
        const auto rep = empirical_delta(inst, *lo, *hi, *grid);
        Result r;
        r.depth = *depth;
        r.add("law", std::string(to_string(coeff_law)));
        r.add("delta_star", rep.delta_star);
        r.add("argmin_x", rep.argmin_x);
        r.add("argmin_instance", static_cast<std::int64_t>(rep.argmin_instance));
        r.add("instances", static_cast<std::int64_t>(rep.instances));
        r.add("grid_points", static_cast<std::int64_t>(rep.grid_points));
        r.add("violations", static_cast<std::int64_t>(rep.violations.size()));
        json witnesses = json::array();
        for (const auto& w : rep.violations) witnesses.push_back(json::parse(witness_to_json(w, inst[w.instance]).dump()));
        r.extra["witnesses"] = std::move(witnesses);
        emit(r, g);
    };
}

Action cmd_factor_check(CLI::App& app) {
    auto* cmd = app.add_subcommand("factor-check", "check the factorization of coding-map differences");
    auto count = std::make_shared<std::size_t>(1000), depth = std::make_shared<std::size_t>(60);
    auto c = std::make_shared<double>(0.0);
    auto p = std::make_shared<double>(kGoldenP);
    auto betas = std::make_shared<std::size_t>(17);
    cmd->add_option("--count", *count, "number of random cases")->capture_default_str();
    cmd->add_option("--depth", *depth, "word length N")->capture_default_str();
    cmd->add_option("--c", *c, "ratio beta1/beta0 in (0,1] (default: uniform per case)");
    cmd->add_option("--p", *p, "chain parameter")->capture_default_str();
    cmd->add_option("--betas", *betas, "beta samples on [0.1, 0.739]")->capture_default_str();
    return [=](const Globals& g) {
        if (*betas < 2) throw UsageError("--betas must be at least 2");
        std::vector<double> bs;
        for (std::size_t k = 0; k < *betas; ++k) {
            bs.push_back(0.1 + (kTransversalityBound - 0.1) * static_cast<double>(k) / (*betas - 1));
        }
        Engine eng = make_engine(g.seed);
        const MarkovParams markov(*p);
        FactorizationReport worst;
        std::size_t worst_case = 0;
        for (std::size_t k = 0; k < *count; ++k) {
            const double ck = *c > 0.0 ? *c : uniform_open_closed(eng);
            const auto fc = random_factorization_case(*depth, markov, eng, ck);
            const auto rep = factorization_check(fc, bs);
            if (k == 0 || rep.max_relative_error > worst.max_relative_error) {
                worst = rep;
                worst_case = k;
            }
        }
        Result r;
        r.depth = *depth;
        r.add("cases", static_cast<std::int64_t>(*count));
        r.add("max_relative_error", worst.max_relative_error);
        r.add("worst_beta", worst.worst_beta);
        r.add("worst_case", static_cast<std::int64_t>(worst_case));
        emit(r, g);
    };
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov geometric measures on the golden-mean shift"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", MGM_VERSION);

    Globals globals;
    app.add_option("--format", globals.format, "output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    app.add_option("--output,-o", globals.output, "output file (default: standard output)");
    app.add_option("--seed", globals.seed, "RNG seed")->capture_default_str();
    app.add_option("--threads", globals.threads, "worker threads (default: MGM_THREADS or all cores)");
    app.add_flag("--emit-gnuplot", globals.emit_gnuplot, "write <output>.gp next to the CSV");
    std::string simd;
    app.add_option("--simd", simd, "kernel variant: scalar|avx2 (default: MGM_SIMD or auto)")
        ->check(CLI::IsMember({"scalar", "avx2"}));

    std::map<CLI::App*, Action> actions;
    for (auto make : {cmd_entropy, cmd_cylinder, cmd_classify, cmd_dim_bound, cmd_region_map, cmd_sample,
                      cmd_hist, cmd_local_dim, cmd_moran, cmd_classical_moran, cmd_projected_dim,
                      cmd_fractal_points, cmd_boxdim, cmd_transversality, cmd_factor_check}) {
        const std::size_t before = app.get_subcommands({}).size();
        Action act = make(app);
        actions[app.get_subcommands({})[before]] = std::move(act);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (globals.threads > 0) ::setenv("MGM_THREADS", std::to_string(globals.threads).c_str(), 1);
        if (simd == "scalar") kernels::set_isa(kernels::Isa::Scalar);
        if (simd == "avx2") kernels::set_isa(kernels::Isa::Avx2);
        for (auto* sub : app.get_subcommands()) actions.at(sub)(globals);
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
