// robin: eigenvalue queries and inequality verification for the Robin
// Laplacian with negative boundary parameter.
//
// Exit codes: 0 all checks pass, 1 a mathematical inequality was violated,
// 2 input or usage error.

#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "../src/parallel.hpp"
#include "robin/dearrange.hpp"
#include "robin/geometry.hpp"
#include "robin/radial.hpp"
#include "robin/report.hpp"
#include "robin/shapes.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

struct CommonOptions {
    double alpha = -1.0;
    double tol = 1e-10;
    double quad_tol = 1e-10;
    int fem_levels = 4;
    std::uint64_t seed = 1;
    std::string format = "csv";
    std::string out_path;
    bool hull_repair = false;
    double perimeter = 2.0 * M_PI;
};

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            throw std::invalid_argument("cannot write to " + out_path);
        }
        out << text;
    }
}

int run_ball(int dim, double radius, const CommonOptions& opt) {
    const auto eig = robin::radial::ball_eigenvalue({dim, radius}, opt.alpha,
                                                    opt.tol);
    if (opt.format == "json") {
        nlohmann::json j;
        j["dim"] = dim;
        j["radius"] = radius;
        j["alpha"] = opt.alpha;
        j["k"] = eig.k;
        j["lambda"] = eig.lambda;
        j["root_residual"] = eig.root_residual;
        j["constant_bound"] = opt.alpha * dim / radius;
        write_output(j.dump(2) + "\n", opt.out_path);
    } else {
        std::ostringstream os;
        os << "ball dim=" << dim << " R=" << fmt(radius)
           << " alpha=" << fmt(opt.alpha) << "\n"
           << "  k              = " << fmt(eig.k) << "\n"
           << "  lambda         = " << fmt(eig.lambda) << "\n"
           << "  root residual  = " << fmt(eig.root_residual) << "\n"
           << "  bound alpha*n/R= " << fmt(opt.alpha * dim / radius) << "\n";
        write_output(os.str(), opt.out_path);
    }
    return eig.lambda < opt.alpha * dim / radius ? kExitOk : kExitViolation;
}

int run_annulus(int dim, double r_out, double r_in, const CommonOptions& opt) {
    const auto ann = robin::radial::annulus_eigenvalue({dim, r_out, r_in},
                                                       opt.alpha, opt.tol);
    // side-by-side discs: equal area and equal perimeter
    const double r_area = std::sqrt(r_out * r_out - r_in * r_in);
    const double r_perim = r_out + r_in;
    const auto disc_area =
        robin::radial::ball_eigenvalue({dim, r_area}, opt.alpha, opt.tol);
    const auto disc_perim =
        robin::radial::ball_eigenvalue({dim, r_perim}, opt.alpha, opt.tol);
    if (opt.format == "json") {
        nlohmann::json j;
        j["dim"] = dim;
        j["outer_radius"] = r_out;
        j["inner_radius"] = r_in;
        j["alpha"] = opt.alpha;
        j["found"] = ann.found;
        j["k"] = ann.k;
        j["lambda"] = ann.lambda;
        j["det_residual"] = ann.det_residual;
        j["equal_area_disc_lambda"] = disc_area.lambda;
        j["equal_perimeter_disc_lambda"] = disc_perim.lambda;
        write_output(j.dump(2) + "\n", opt.out_path);
    } else {
        std::ostringstream os;
        os << "annulus dim=" << dim << " R_out=" << fmt(r_out)
           << " R_in=" << fmt(r_in) << " alpha=" << fmt(opt.alpha) << "\n";
        if (!ann.found) {
            os << "  no root found in the scan range\n";
        } else {
            os << "  k              = " << fmt(ann.k) << "\n"
               << "  lambda         = " << fmt(ann.lambda) << "\n"
               << "  det residual   = " << fmt(ann.det_residual) << "\n";
        }
        os << "  equal-area disc lambda      = " << fmt(disc_area.lambda)
           << " (R=" << fmt(r_area) << ")\n"
           << "  equal-perimeter disc lambda = " << fmt(disc_perim.lambda)
           << " (R=" << fmt(r_perim) << ")\n";
        write_output(os.str(), opt.out_path);
    }
    return ann.found ? kExitOk : kExitViolation;
}

robin::report::TheoremReport verify_one(const robin::geom::ConvexPolygon& poly,
                                        const std::string& label,
                                        const CommonOptions& opt,
                                        double alpha) {
    robin::dearrange::ChainOptions chain;
    chain.root_tol = opt.tol;
    chain.quad_tol = opt.quad_tol;
    chain.fem_levels = opt.fem_levels;
    chain.fem_tol = opt.tol;
    auto rep = robin::dearrange::verify_chain(poly, alpha, chain);
    rep.shape_label = label;
    return rep;
}

int run_verify(const std::string& shape, const CommonOptions& opt) {
    const auto spec = robin::shapes::parse_shape_spec(shape);
    const auto poly = robin::shapes::make_shape(spec, opt.perimeter, opt.seed,
                                                opt.hull_repair);
    const auto rep = verify_one(poly, shape, opt, opt.alpha);
    if (opt.format == "json") {
        write_output(robin::report::to_json(rep) + "\n", opt.out_path);
    } else {
        std::ostringstream os;
        os << robin::report::csv_header() << "\n"
           << robin::report::to_csv_row(rep) << "\n";
        write_output(os.str(), opt.out_path);
    }
    if (!rep.all_ok()) {
        std::cerr << "violation: shape " << shape << " alpha "
                  << fmt(opt.alpha) << " flags perimetri=" << rep.perimetri_ok
                  << " energie=" << rep.energie_ok
                  << " normeL2=" << rep.normel2_ok
                  << " boundary=" << rep.boundary_ok
                  << " chain=" << rep.chain_ok
                  << " margin_star=" << fmt(rep.margin_star)
                  << " margin_fw=" << fmt(rep.margin_fw) << "\n";
        return kExitViolation;
    }
    return kExitOk;
}

int run_sweep(const std::vector<std::string>& shape_specs, int count,
              const std::vector<double>& alphas, unsigned jobs,
              const CommonOptions& opt) {
    if (alphas.empty()) {
        throw std::invalid_argument("sweep needs at least one --alpha");
    }
    // Expand the corpus: random specs yield `count` seeded shapes, other
    // specs one shape each.
    struct Row {
        robin::geom::ConvexPolygon poly;
        std::string label;
        double alpha;
    };
    std::vector<Row> rows;
    for (const std::string& text : shape_specs) {
        const auto spec = robin::shapes::parse_shape_spec(text);
        std::vector<std::pair<robin::geom::ConvexPolygon, std::string>> shapes;
        if (spec.kind == robin::shapes::ShapeSpec::Kind::random) {
            if (count < 1) {
                throw std::invalid_argument("random sweep needs --count >= 1");
            }
            robin::shapes::Xorshift64Star rng(opt.seed);
            for (int i = 0; i < count; ++i) {
                shapes.emplace_back(
                    robin::shapes::random_convex_polygon(spec.m, rng),
                    text + "#" + std::to_string(i));
            }
        } else {
            shapes.emplace_back(robin::shapes::make_shape(
                                    spec, opt.perimeter, opt.seed,
                                    opt.hull_repair),
                                text);
        }
        for (auto& [poly, label] : shapes) {
            for (double alpha : alphas) {
                rows.push_back({poly, label, alpha});
            }
        }
    }
    if (rows.empty()) {
        throw std::invalid_argument("empty sweep corpus");
    }

    const auto reports =
        robin::detail::parallel_map<robin::report::TheoremReport>(
            rows.size(),
            [&](std::size_t i) {
                return verify_one(rows[i].poly, rows[i].label, opt,
                                  rows[i].alpha);
            },
            jobs);

    std::ostringstream os;
    os << robin::report::csv_header() << "\n";
    bool any_violation = false;
    double min_margin_star = std::numeric_limits<double>::infinity();
    double min_margin_fw = std::numeric_limits<double>::infinity();
    for (const auto& rep : reports) {
        os << robin::report::to_csv_row(rep) << "\n";
        any_violation = any_violation || !rep.all_ok();
        min_margin_star = std::min(min_margin_star, rep.margin_star);
        min_margin_fw = std::min(min_margin_fw, rep.margin_fw);
    }
    os << "# summary rows=" << reports.size()
       << " min_margin_star=" << fmt(min_margin_star)
       << " min_margin_fw=" << fmt(min_margin_fw)
       << " violations=" << (any_violation ? "yes" : "no") << "\n";
    write_output(os.str(), opt.out_path);
    return any_violation ? kExitViolation : kExitOk;
}

int run_profile(const std::string& shape, const CommonOptions& opt) {
    const auto spec = robin::shapes::parse_shape_spec(shape);
    const auto poly = robin::shapes::make_shape(spec, opt.perimeter, opt.seed,
                                                opt.hull_repair);
    const auto profile = robin::geom::parallel_profile(poly);
    std::ostringstream os;
    os << "s,perimeter,area,slope,at_breakpoint\n";
    bool slope_ok = true;
    for (const auto& iv : profile.intervals) {
        for (int i = 0; i < 16; ++i) {
            const double s = iv.s_begin + (iv.s_end - iv.s_begin) * i / 16.0;
            os << fmt(s) << ',' << fmt(profile.perimeter_at(s)) << ','
               << fmt(profile.area_at(s)) << ',' << fmt(iv.slope) << ','
               << (i == 0 && s > 0.0 ? 1 : 0) << "\n";
        }
        slope_ok = slope_ok && iv.slope <= -2.0 * M_PI + 1e-12;
    }
    const double r = profile.inradius;
    os << fmt(r) << ',' << fmt(profile.perimeter_at(r)) << ','
       << fmt(profile.area_at(r)) << ','
       << fmt(profile.intervals.back().slope) << ",1\n";
    write_output(os.str(), opt.out_path);
    if (!slope_ok) {
        std::cerr << "violation: profile slope above -2*pi\n";
        return kExitViolation;
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "First Robin-Laplacian eigenvalue with negative boundary parameter: "
        "radial solvers, dearranged test functions, FEM cross-checks, and "
        "the equal-perimeter comparison chain."};
    app.require_subcommand(1);

    CommonOptions opt;
    int dim = 2;
    double radius = 1.0;
    double inner_radius = 0.0;
    std::string shape;
    std::vector<std::string> sweep_shapes;
    std::vector<double> alphas;
    int count = 0;
    unsigned jobs = 0;

    auto add_common = [&](CLI::App* cmd, bool with_alpha = true) {
        if (with_alpha) {
            cmd->add_option("--alpha", opt.alpha,
                            "boundary parameter, must be negative");
        }
        cmd->add_option("--tol", opt.tol, "root-finding tolerance");
        cmd->add_option("--quad-tol", opt.quad_tol, "quadrature tolerance");
        cmd->add_option("--levels", opt.fem_levels,
                        "finest FEM refinement level (>= 2)");
        cmd->add_option("--seed", opt.seed, "corpus seed");
        cmd->add_option("--format", opt.format, "output format: csv or json")
            ->check(CLI::IsMember({"csv", "json"}));
        cmd->add_option("--out", opt.out_path, "write output to this file");
        cmd->add_flag("--hull-repair", opt.hull_repair,
                      "replace nonconvex file input by its convex hull");
        cmd->add_option("--perimeter", opt.perimeter,
                        "perimeter for regular:m shapes (default 2*pi)");
    };

    CLI::App* ball = app.add_subcommand(
        "ball", "eigenvalue of a ball from the Bessel root equation");
    ball->add_option("--dim", dim, "space dimension n >= 2");
    ball->add_option("--radius", radius, "ball radius");
    add_common(ball);

    CLI::App* annulus = app.add_subcommand(
        "annulus", "eigenvalue of a spherical shell, with disc comparisons");
    annulus->add_option("--dim", dim, "space dimension n >= 2");
    annulus->add_option("--radius", radius, "outer radius");
    annulus->add_option("--inner-radius", inner_radius, "inner radius");
    add_common(annulus);

    CLI::App* verify = app.add_subcommand(
        "verify",
        "check the comparison chain and every proof-step inequality on one "
        "shape (regular:m | rectangle:a,b | random:n | file:path)");
    verify->add_option("--shape", shape, "shape spec")->required();
    add_common(verify);

    CLI::App* sweep = app.add_subcommand(
        "sweep", "batch verification over a shape corpus, CSV report");
    sweep->add_option("--shape", sweep_shapes, "shape specs (repeatable)")
        ->required();
    sweep->add_option("--count", count,
                      "number of random shapes per random: spec");
    sweep->add_option("--alpha", alphas, "alpha values (repeatable)");
    sweep->add_option("--jobs", jobs, "worker threads (0 = hardware)");
    add_common(sweep, /*with_alpha=*/false);

    CLI::App* profile = app.add_subcommand(
        "profile", "dump the inner-parallel perimeter/area profile as CSV");
    profile->add_option("--shape", shape, "shape spec")->required();
    add_common(profile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        if (ball->parsed()) {
            return run_ball(dim, radius, opt);
        }
        if (annulus->parsed()) {
            return run_annulus(dim, radius, inner_radius, opt);
        }
        if (verify->parsed()) {
            return run_verify(shape, opt);
        }
        if (sweep->parsed()) {
            if (alphas.empty()) {
                alphas.push_back(opt.alpha);
            }
            return run_sweep(sweep_shapes, count, alphas, jobs, opt);
        }
        if (profile->parsed()) {
            return run_profile(shape, opt);
        }
    } catch (const std::domain_error& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
