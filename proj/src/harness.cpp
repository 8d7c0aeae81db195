#include "robin/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <utility>
#include <vector>

#include "json.hpp"
#include "parallel.hpp"
#include "robin/dearrange.hpp"
#include "robin/fem.hpp"
#include "robin/geometry.hpp"
#include "robin/quadrature.hpp"
#include "robin/radial.hpp"
#include "robin/shapes.hpp"
#include "robin/special.hpp"

namespace robin::harness {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
    std::string name;
    bool pass = true;
    double margin = kInf;  // worst slack across the case's assertions
    std::string detail;
};

// Accumulates assertions; margin is the smallest slack seen, negative slack
// fails the case and records the first offending description.
class Check {
  public:
    // value <= limit, slack = limit - value.
    void le(double value, double limit, const std::string& what) {
        slack(limit - value, what);
    }
    // |a - b| <= tol.
    void close(double a, double b, double tol, const std::string& what) {
        slack(tol - std::abs(a - b), what);
    }
    void is_true(bool ok, const std::string& what) {
        if (!ok) {
            slack(-1.0, what);
        }
    }
    void slack(double s, const std::string& what) {
        if (s < margin_) {
            margin_ = s;
        }
        if (s < 0.0 && pass_) {
            pass_ = false;
            std::ostringstream os;
            os << what << " (slack " << s << ")";
            first_failure_ = os.str();
        }
    }

    bool pass() const { return pass_; }
    double margin() const { return margin_; }
    const std::string& detail() const { return first_failure_; }

  private:
    bool pass_ = true;
    double margin_ = kInf;
    std::string first_failure_;
};

struct Ctx {
    std::uint64_t seed = 2026;
    bool inject_fault = false;
    std::string replay_dir = ".";
    std::optional<geom::ConvexPolygon> replay_polygon;
    double replay_alpha = -1.0;
};

std::uint64_t fnv64(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h ? h : 1;
}

shapes::Xorshift64Star case_rng(const Ctx& ctx, const std::string& name) {
    return shapes::Xorshift64Star(ctx.seed ^ fnv64(name));
}

// ---------------------------------------------------------------------------
// Corpus machinery: random-polygon cases share shrinking and replay handling.

using PolyCheckFn =
    std::function<void(Check&, const geom::ConvexPolygon&, double alpha)>;

std::optional<geom::ConvexPolygon> rounded_polygon(
    const geom::ConvexPolygon& poly, int digits) {
    const double scale = std::pow(10.0, digits);
    std::vector<geom::Point> v;
    v.reserve(poly.size());
    for (const geom::Point& p : poly.vertices()) {
        v.push_back({std::round(p.x * scale) / scale,
                     std::round(p.y * scale) / scale});
    }
    try {
        return geom::ConvexPolygon(std::move(v));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

std::optional<geom::ConvexPolygon> without_vertex(
    const geom::ConvexPolygon& poly, std::size_t index) {
    std::vector<geom::Point> v = poly.vertices();
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(index));
    try {
        return geom::ConvexPolygon(std::move(v));
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
}

geom::ConvexPolygon shrink_counterexample(
    geom::ConvexPolygon failing,
    const std::function<bool(const geom::ConvexPolygon&)>& still_fails) {
    // Fewer hull points first, then coarser coordinates.
    bool progress = true;
    while (progress && failing.size() > 4) {
        progress = false;
        for (std::size_t i = 0; i < failing.size(); ++i) {
            auto candidate = without_vertex(failing, i);
            if (candidate && still_fails(*candidate)) {
                failing = std::move(*candidate);
                progress = true;
                break;
            }
        }
    }
    for (int digits : {6, 3, 2, 1}) {
        auto candidate = rounded_polygon(failing, digits);
        if (candidate && still_fails(*candidate)) {
            failing = std::move(*candidate);
        }
    }
    return failing;
}

std::string save_replay(const Ctx& ctx, const std::string& case_name,
                        const geom::ConvexPolygon& poly, double alpha) {
    nlohmann::json j;
    j["case"] = case_name;
    j["alpha"] = alpha;
    j["seed"] = ctx.seed;
    nlohmann::json verts = nlohmann::json::array();
    for (const geom::Point& p : poly.vertices()) {
        verts.push_back({p.x, p.y});
    }
    j["polygon"] = verts;
    const std::string path =
        ctx.replay_dir + "/" + case_name + ".counterexample.json";
    std::ofstream out(path);
    out << j.dump(2) << '\n';
    return path;
}

Outcome run_polygon_case(const std::string& name, const Ctx& ctx,
                         const std::vector<double>& alphas, int corpus_size,
                         const PolyCheckFn& fn) {
    Outcome outcome{name};
    auto eval = [&](const geom::ConvexPolygon& poly, double alpha) {
        Check check;
        fn(check, poly, alpha);
        return check;
    };

    if (ctx.replay_polygon) {
        const Check check = eval(*ctx.replay_polygon, ctx.replay_alpha);
        outcome.pass = check.pass();
        outcome.margin = check.margin();
        outcome.detail = check.pass() ? "replay passed" : check.detail();
        return outcome;
    }

    auto rng = case_rng(ctx, name);
    for (int i = 0; i < corpus_size; ++i) {
        geom::ConvexPolygon poly = shapes::random_convex_polygon(12, rng);
        for (double alpha : alphas) {
            const Check check = eval(poly, alpha);
            outcome.margin = std::min(outcome.margin, check.margin());
            if (!check.pass()) {
                outcome.pass = false;
                const geom::ConvexPolygon minimal = shrink_counterexample(
                    poly, [&](const geom::ConvexPolygon& q) {
                        return !eval(q, alpha).pass();
                    });
                const std::string path =
                    save_replay(ctx, name, minimal, alpha);
                std::ostringstream os;
                os << check.detail() << "; alpha " << alpha
                   << ", counterexample " << path;
                outcome.detail = os.str();
                return outcome;
            }
        }
    }
    return outcome;
}

// ---------------------------------------------------------------------------
// Special function cases

Outcome case_bessel_wronskian(const Ctx&) {
    Check c;
    for (int i = 0; i < 20; ++i) {
        const double nu = 0.25 * i;
        for (int j = 0; j < 20; ++j) {
            const double x = 0.25 + 0.5 * j;
            const double lhs =
                special::bessel_i(nu, x).scaled_value *
                    special::bessel_k(nu + 1.0, x).scaled_value +
                special::bessel_i(nu + 1.0, x).scaled_value *
                    special::bessel_k(nu, x).scaled_value;
            c.close(lhs * x, 1.0, 1e-8, "Wronskian identity at nu=" +
                                            std::to_string(nu) +
                                            " x=" + std::to_string(x));
        }
    }
    return {"bessel_wronskian", c.pass(), c.margin(), c.detail()};
}

Outcome case_bessel_recurrence(const Ctx&) {
    Check c;
    for (double nu : {1.0, 1.5, 2.0, 3.25, 5.0}) {
        for (double x : {0.5, 1.0, 2.0, 5.0, 10.0, 25.0}) {
            const double im = special::bessel_i(nu - 1.0, x).value;
            const double ip = special::bessel_i(nu + 1.0, x).value;
            const double iv = special::bessel_i(nu, x).value;
            c.le(std::abs(im - ip - 2.0 * nu / x * iv), 1e-9 * im,
                 "three-term recurrence at nu=" + std::to_string(nu) +
                     " x=" + std::to_string(x));
        }
    }
    return {"bessel_recurrence", c.pass(), c.margin(), c.detail()};
}

Outcome case_bessel_crossover(const Ctx&) {
    Check c;
    for (double nu : {0.0, 0.5, 1.0, 2.0, 5.0}) {
        for (int i = 0; i <= 20; ++i) {
            const double x = 25.0 + 0.5 * i;
            const double a = special::bessel_i_scaled_by_series(nu, x);
            const double b = special::bessel_i_scaled_by_asymptotic(nu, x);
            c.le(std::abs(a - b), 1e-7 * a,
                 "series/asymptotic agreement at x=" + std::to_string(x));
        }
    }
    return {"bessel_branch_crossover", c.pass(), c.margin(), c.detail()};
}

Outcome case_scaled_overflow(const Ctx&) {
    Check c;
    for (double nu : {0.0, 1.0, 2.5}) {
        for (double x : {50.0, 100.0, 300.0, 700.0}) {
            const double iv = special::bessel_i(nu, x).scaled_value;
            const double kv = special::bessel_k(nu, x).scaled_value;
            c.is_true(std::isfinite(iv) && iv > 0.0, "scaled I finite");
            c.is_true(std::isfinite(kv) && kv > 0.0, "scaled K finite");
        }
    }
    return {"bessel_scaled_no_overflow", c.pass(), c.margin(), c.detail()};
}

// ---------------------------------------------------------------------------
// Radial cases

Outcome case_ball_bound(const Ctx&) {
    Check c;
    for (int n : {2, 3, 4, 5}) {
        for (double R : {0.3, 1.0, 2.0, 10.0}) {
            for (double alpha : {-0.25, -1.0, -4.0}) {
                const auto eig =
                    radial::ball_eigenvalue({n, R}, alpha, 1e-12);
                c.le(eig.lambda, alpha * n / R,
                     "constant-test-function bound, n=" + std::to_string(n));
                c.le(eig.root_residual, 1e-9, "root residual");
                c.close(eig.lambda, -eig.k * eig.k, 0.0, "lambda = -k^2");
            }
        }
    }
    return {"ball_eigenvalue_bound", c.pass(), c.margin(), c.detail()};
}

Outcome case_halfspace_limit(const Ctx&) {
    Check c;
    double prev = kInf;
    for (double R : {5.0, 10.0, 25.0, 50.0}) {
        const double k = radial::ball_eigenvalue({2, R}, -1.0, 1e-12).k;
        c.le(1.0, k, "k stays above |alpha|");
        c.le(k, prev, "k decreases with R");
        prev = k;
    }
    c.le(std::abs(prev - 1.0), 0.03, "half-space limit at R = 50");
    return {"ball_halfspace_limit", c.pass(), c.margin(), c.detail()};
}

Outcome case_phi_shape(const Ctx&) {
    Check c;
    for (int n : {2, 3, 5}) {
        const auto eig = radial::ball_eigenvalue({n, 1.3}, -1.5, 1e-12);
        const double R = eig.ball.radius;
        c.close(radial::eigenfunction_phi(eig, 0.0).derivative, 0.0, 0.0,
                "phi'(0) = 0");
        const auto at_R = radial::eigenfunction_phi(eig, R);
        c.le(std::abs(at_R.derivative + eig.alpha * at_R.value),
             1e-8 * std::abs(at_R.value), "Robin boundary residual");
        double prev_val = 0.0;
        for (int i = 1; i <= 40; ++i) {
            const double r = R * i / 40.0;
            const auto phi = radial::eigenfunction_phi(eig, r);
            c.le(0.0, phi.value, "phi positive");
            c.le(0.0, phi.derivative, "phi nondecreasing slope");
            c.le(prev_val, phi.value, "phi increasing");
            prev_val = phi.value;
        }
    }
    return {"phi_positive_increasing", c.pass(), c.margin(), c.detail()};
}

Outcome case_phi_ode(const Ctx&) {
    Check c;
    for (int n : {2, 3, 4}) {
        const auto eig = radial::ball_eigenvalue({n, 1.0}, -1.0, 1e-12);
        const double h = 1e-5;
        for (int i = 4; i <= 18; ++i) {
            const double r = 0.05 * i;
            // -(r^{n-1} phi')' / r^{n-1} = lambda phi, by central differences
            // on the analytic flux F(r) = r^{n-1} phi'(r).
            auto flux = [&](double rr) {
                return std::pow(rr, n - 1) *
                       radial::eigenfunction_phi(eig, rr).derivative;
            };
            const double divergence =
                (flux(r + h) - flux(r - h)) / (2.0 * h * std::pow(r, n - 1));
            const double rhs =
                eig.lambda * radial::eigenfunction_phi(eig, r).value;
            c.le(std::abs(-divergence - rhs), 1e-6 * std::abs(rhs),
                 "radial ODE residual at r=" + std::to_string(r));
        }
    }
    return {"phi_ode_residual", c.pass(), c.margin(), c.detail()};
}

Outcome case_phi_inverse(const Ctx& ctx) {
    Check c;
    auto rng = case_rng(ctx, "phi_inverse_roundtrip");
    const auto eig = radial::ball_eigenvalue({2, 1.7}, -0.8, 1e-12);
    const double lo = radial::eigenfunction_phi(eig, 0.0).value;
    const double hi = radial::eigenfunction_phi(eig, eig.ball.radius).value;
    c.close(radial::phi_inverse(eig, hi), eig.ball.radius, 1e-10,
            "endpoint t = phi(R)");
    c.close(radial::phi_inverse(eig, lo), 0.0, 1e-10, "endpoint t = phi(0)");
    for (int i = 0; i < 100; ++i) {
        const double t = lo + (hi - lo) * rng.uniform();
        const double r = radial::phi_inverse(eig, t);
        c.le(std::abs(radial::eigenfunction_phi(eig, r).value - t), 1e-9 * t,
             "round trip phi(phi_inverse(t)) = t");
    }
    return {"phi_inverse_roundtrip", c.pass(), c.margin(), c.detail()};
}

Outcome case_annulus_continuity(const Ctx&) {
    Check c;
    const auto ball = radial::ball_eigenvalue({2, 1.0}, -1.0, 1e-12);
    const auto ann = radial::annulus_eigenvalue({2, 1.0, 1e-3}, -1.0, 1e-12);
    c.is_true(ann.found, "thin-hole annulus has a root");
    c.le(std::abs(ann.lambda - ball.lambda), 1e-2,
         "annulus converges to the ball as the hole closes");
    return {"annulus_ball_continuity", c.pass(), c.margin(), c.detail()};
}

Outcome case_annulus_alpha(const Ctx&) {
    Check c;
    const auto a1 = radial::annulus_eigenvalue({2, 1.0, 0.5}, -1.0, 1e-12);
    const auto a2 = radial::annulus_eigenvalue({2, 1.0, 0.5}, -2.0, 1e-12);
    c.is_true(a1.found && a2.found, "roots found");
    c.le(a2.lambda, a1.lambda, "more negative alpha, more negative lambda");
    return {"annulus_alpha_monotonicity", c.pass(), c.margin(), c.detail()};
}

Outcome case_annulus_chain(const Ctx&) {
    Check c;
    const double alpha = -1.0;
    const auto ann = radial::annulus_eigenvalue({2, 1.0, 0.5}, alpha, 1e-12);
    const auto inner = radial::ball_eigenvalue({2, 1.0}, alpha, 1e-12);
    const auto outer = radial::ball_eigenvalue({2, 1.5}, alpha, 1e-12);
    c.is_true(ann.found, "annulus root found");
    c.le(ann.lambda, inner.lambda, "shell below the enclosing ball");
    c.le(inner.lambda, outer.lambda, "ball below the equal-perimeter ball");
    const double perimeter = 2.0 * M_PI * 1.5;
    const double volume = M_PI * (1.0 - 0.25);
    c.le(ann.lambda, alpha * perimeter / volume,
         "constant-test-function bound on the shell");
    return {"annulus_shell_chain", c.pass(), c.margin(), c.detail()};
}

Outcome case_ball_monotonicity(const Ctx& ctx) {
    Check c;
    auto rng = case_rng(ctx, "ball_radius_monotonicity");
    for (int i = 0; i < 20; ++i) {
        const int n = 2 + static_cast<int>(rng.uniform() * 3);
        const double r1 = 0.2 + 4.0 * rng.uniform();
        const double r2 = r1 * (1.05 + rng.uniform());
        const double alpha = -(0.2 + 3.0 * rng.uniform());
        const auto check =
            radial::ball_lambda_monotonicity(n, alpha, r1, r2, 1e-12);
        c.is_true(check.strictly_increasing, "lambda increases with radius");
        c.le(check.lambda_small, check.lambda_large, "ordering margin");
    }
    return {"ball_radius_monotonicity", c.pass(), c.margin(), c.detail()};
}

// ---------------------------------------------------------------------------
// Geometry cases

Outcome case_isoperimetric(const Ctx& ctx) {
    return run_polygon_case(
        "polygon_isoperimetric_deficit", ctx, {-1.0}, 20,
        [](Check& c, const geom::ConvexPolygon& poly, double) {
            const double P = poly.perimeter();
            const double A = poly.area();
            c.le(4.0 * M_PI * A, P * P, "P^2 >= 4 pi A");
        });
}

Outcome case_erosion_semigroup(const Ctx& ctx) {
    return run_polygon_case(
        "erosion_semigroup", ctx, {-1.0}, 10,
        [](Check& c, const geom::ConvexPolygon& poly, double) {
            const double r = geom::inradius(poly);
            const double tol = 1e-9 * poly.diameter();
            const std::pair<double, double> splits[] = {
                {0.3, 0.4}, {0.5, 0.2}, {0.1, 0.7}};
            for (auto [fs, ft] : splits) {
                const double s = fs * r, t = ft * r;
                const auto once = geom::inner_parallel(poly, s + t);
                const auto first = geom::inner_parallel(poly, s);
                if (!first || !once) {
                    c.is_true(false, "erosion inside inradius came back empty");
                    return;
                }
                const auto twice = geom::inner_parallel(*first, t);
                if (!twice) {
                    c.is_true(false, "second erosion came back empty");
                    return;
                }
                c.close(twice->perimeter(), once->perimeter(), tol,
                        "semigroup perimeter");
                c.close(twice->area(), once->area(), tol, "semigroup area");
                // vertex sets match up to tolerance
                for (const geom::Point& p : twice->vertices()) {
                    double best = kInf;
                    for (const geom::Point& q : once->vertices()) {
                        best = std::min(best, std::hypot(p.x - q.x, p.y - q.y));
                    }
                    c.le(best, tol, "semigroup vertex match");
                }
            }
        });
}

Outcome case_profile_vs_direct(const Ctx& ctx) {
    return run_polygon_case(
        "profile_matches_direct_erosion", ctx, {-1.0}, 5,
        [&ctx](Check& c, const geom::ConvexPolygon& poly, double) {
            auto rng = case_rng(ctx, "profile_matches_direct_erosion:samples");
            const auto profile = geom::parallel_profile(poly);
            for (int i = 0; i < 200; ++i) {
                const double s = profile.inradius * 0.999 * rng.uniform();
                const auto eroded = geom::inner_parallel(poly, s);
                if (!eroded) {
                    c.is_true(false, "erosion empty before the inradius");
                    return;
                }
                c.le(std::abs(profile.perimeter_at(s) - eroded->perimeter()),
                     1e-9 * eroded->perimeter(), "profile perimeter");
                c.le(std::abs(profile.area_at(s) - eroded->area()),
                     1e-9 * std::max(eroded->area(), 1e-6), "profile area");
            }
        });
}

Outcome case_profile_slope(const Ctx& ctx) {
    return run_polygon_case(
        "profile_slope_and_concavity", ctx, {-1.0}, 20,
        [](Check& c, const geom::ConvexPolygon& poly, double) {
            const auto profile = geom::parallel_profile(poly);
            double prev_slope = -2.0 * M_PI;
            for (const auto& iv : profile.intervals) {
                c.le(iv.slope, -2.0 * M_PI + 1e-12,
                     "slope magnitude at least 2 pi");
                c.le(iv.slope, prev_slope + 1e-12,
                     "P concave: slopes nonincreasing");
                prev_slope = iv.slope;
                // A' = -P at the interval midpoint, by finite differences.
                const double mid = 0.5 * (iv.s_begin + iv.s_end);
                const double h = 1e-6 * (iv.s_end - iv.s_begin);
                const double fd = (profile.area_at(mid + h) -
                                   profile.area_at(mid - h)) /
                                  (2.0 * h);
                c.le(std::abs(fd + profile.perimeter_at(mid)), 1e-8,
                     "coarea A' = -P");
            }
            c.le(0.0, profile.perimeter_at(profile.inradius) + 1e-12,
                 "terminal perimeter nonnegative");
            c.le(std::abs(profile.area_at(profile.inradius)),
                 1e-9 * poly.area(), "terminal area zero");
        });
}

Outcome case_mgon_slope(const Ctx&) {
    Check c;
    double prev_excess = kInf;
    for (int m : {3, 4, 5, 6, 8, 12, 16, 32, 64, 128}) {
        const auto poly = shapes::regular_polygon(m, 2.0 * M_PI);
        const auto profile = geom::parallel_profile(poly);
        c.is_true(profile.intervals.size() == 1,
                  "regular m-gon erodes homothetically");
        const double expected = -2.0 * m * std::tan(M_PI / m);
        c.close(profile.intervals[0].slope, expected, 1e-9,
                "closed-form slope at m=" + std::to_string(m));
        const double excess = -profile.intervals[0].slope - 2.0 * M_PI;
        c.le(0.0, excess + 1e-12, "excess over 2 pi nonnegative");
        c.le(excess, prev_excess, "excess decreasing in m");
        prev_excess = excess;
    }
    return {"regular_mgon_slope_formula", c.pass(), c.margin(), c.detail()};
}

Outcome case_outer_offset(const Ctx& ctx) {
    return run_polygon_case(
        "steiner_outer_offset", ctx, {-1.0}, 10,
        [](Check& c, const geom::ConvexPolygon& poly, double) {
            const double P = poly.perimeter();
            c.close(geom::outer_offset_perimeter(poly, 0.0), P, 1e-12 * P,
                    "zero offset");
            for (double rho : {0.1, 1.0, 7.5}) {
                const double grown = geom::outer_offset_perimeter(poly, rho);
                c.close((grown - P) / rho, 2.0 * M_PI, 1e-10,
                        "Steiner derivative is 2 pi");
            }
        });
}

Outcome case_inradius_consistency(const Ctx& ctx) {
    return run_polygon_case(
        "inradius_consistency", ctx, {-1.0}, 10,
        [](Check& c, const geom::ConvexPolygon& poly, double) {
            const double direct = geom::inradius(poly);
            const auto profile = geom::parallel_profile(poly);
            // agreement is limited by the clipping noise floor of the
            // emptiness test, not by the bisection width
            c.close(direct, profile.inradius, 1e-7 * poly.diameter(),
                    "bisection inradius vs profile sweep");
            const double r_star = geom::ball_of_same_perimeter(poly).radius;
            c.le(direct, r_star * (1.0 + 1e-12),
                 "inradius below equal-perimeter disc radius");
        });
}

// ---------------------------------------------------------------------------
// Dearrangement cases

Outcome case_testfunction_relations(const Ctx&) {
    Check c;
    double prev_gap = kInf;
    for (int m : {16, 64, 256}) {
        const auto poly = shapes::regular_polygon(m, 2.0 * M_PI);
        const auto test = dearrange::build_test(poly, -1.0, 1e-12);
        const double v_min =
            radial::eigenfunction_phi(test.star, 0.0).value;
        const double v_max = radial::eigenfunction_phi(
                                 test.star, test.star.ball.radius)
                                 .value;
        c.close(test.w_max, v_max, 0.0, "w_max equals the disc maximum");
        c.le(v_min, test.w_min + 1e-14, "w_min at least the disc minimum");
        c.le(test.profile.inradius, test.star.ball.radius,
             "inradius below R_star");
        const double gap = test.w_min - v_min;
        c.le(gap, prev_gap, "w_min - v_min shrinking as m grows");
        prev_gap = gap;
    }
    c.le(prev_gap, 2e-4, "near-disc minimum gap small at m = 256");
    return {"testfunction_relations", c.pass(), c.margin(), c.detail()};
}

void check_dearrange_ode(Check& c, const geom::ConvexPolygon& poly,
                         double alpha) {
    const auto test = dearrange::build_test(poly, alpha, 1e-12);
    const double r_star = test.star.ball.radius;
    const double r = test.profile.inradius;
    // g(t) = phi'(phi^{-1}(t)); integrate G' = -g(G), G(0) = phi(R_star)
    // with the classical fourth-order Runge-Kutta step.
    auto g = [&](double t) {
        const double rho = radial::phi_inverse(test.star, t);
        return radial::eigenfunction_phi(test.star, rho).derivative;
    };
    const int steps = 1000;
    const double h = r / steps;
    double G = test.w_max;
    for (int i = 0; i < steps; ++i) {
        const double s = i * h;
        const double k1 = -g(G);
        const double k2 = -g(G + 0.5 * h * k1);
        const double k3 = -g(G + 0.5 * h * k2);
        const double k4 = -g(G + h * k3);
        G += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const double closed_form =
            radial::eigenfunction_phi(test.star, r_star - (s + h)).value;
        c.le(std::abs(G - closed_form), 1e-6,
             "closed-form dearrangement matches the level-set ODE");
    }
}

Outcome case_dearrange_ode(const Ctx& ctx) {
    return run_polygon_case("dearrangement_ode_crosscheck", ctx, {-1.0}, 10,
                            check_dearrange_ode);
}

Outcome case_levelset_perimeter(const Ctx& ctx) {
    return run_polygon_case(
        "levelset_perimeter_comparison", ctx, {-0.5, -1.0}, 8,
        [](Check& c, const geom::ConvexPolygon& poly, double alpha) {
            const auto test = dearrange::build_test(poly, alpha, 1e-12);
            const auto samples = dearrange::perimeter_comparison(test, 100);
            for (const auto& s : samples) {
                c.le(s.polygon_perimeter, s.disc_perimeter + 1e-9,
                     "P(E_t) <= P(B_t)");
            }
            const auto& top = samples.back();
            c.close(top.polygon_perimeter, top.disc_perimeter,
                    1e-9 * top.disc_perimeter,
                    "equality at the boundary level");
        });
}

Outcome case_levelset_volume(const Ctx& ctx) {
    return run_polygon_case(
        "levelset_volume_comparison", ctx, {-0.5, -1.0}, 8,
        [](Check& c, const geom::ConvexPolygon& poly, double alpha) {
            const auto test = dearrange::build_test(poly, alpha, 1e-12);
            const double scale = M_PI * test.star.ball.radius *
                                 test.star.ball.radius;
            for (const auto& s : dearrange::volume_comparison(test, 100)) {
                c.le(s.polygon_excess, s.disc_excess + 1e-9 * scale,
                     "superlevel measures ordered");
            }
        });
}

Outcome case_functional_comparison(const Ctx& ctx) {
    return run_polygon_case(
        "functional_term_comparison", ctx, {-0.5, -1.0, -5.0}, 8,
        [](Check& c, const geom::ConvexPolygon& poly, double alpha) {
            const auto test = dearrange::build_test(poly, alpha, 1e-12);
            const auto terms = dearrange::functional_terms(test, 1e-10);
            const auto disc = dearrange::disc_terms(test.star, 1e-10);
            c.le(terms.dirichlet, disc.dirichlet + 1e-8,
                 "Dirichlet energy does not increase");
            c.le(terms.l2, disc.l2 + 1e-8, "L2 mass does not increase");
            c.close(terms.boundary, disc.boundary, 1e-9 * disc.boundary,
                    "boundary term preserved");
            c.le(terms.rayleigh, disc.rayleigh + 1e-8,
                 "Rayleigh quotient comparison");
            c.close(disc.rayleigh, test.star.lambda,
                    1e-7 * std::abs(test.star.lambda),
                    "disc quotient reproduces the disc eigenvalue");
        });
}

Outcome case_rayleigh_negative(const Ctx& ctx) {
    Check c;
    auto rng = case_rng(ctx, "rayleigh_negative");
    for (int i = 0; i < 5; ++i) {
        const auto poly = shapes::random_convex_polygon(12, rng);
        const double alpha = -(0.3 + 3.0 * rng.uniform());
        const auto test = dearrange::build_test(poly, alpha, 1e-12);
        const auto terms = dearrange::functional_terms(test, 1e-10);
        // Fault-injection point for the harness self-test: flipping the sign
        // of alpha here must turn the quotient positive and fail the suite.
        const double alpha_used = ctx.inject_fault ? -alpha : alpha;
        const double quotient =
            (terms.dirichlet + alpha_used * terms.boundary) / terms.l2;
        c.le(quotient, 0.0, "Rayleigh quotient of the test function negative");
    }
    return {"rayleigh_negative", c.pass(), c.margin(), c.detail()};
}

// ---------------------------------------------------------------------------
// FEM cases

Outcome case_fem_partition(const Ctx& ctx) {
    return run_polygon_case(
        "fem_partition_identities", ctx, {-1.0}, 6,
        [](Check& c, const geom::ConvexPolygon& poly, double alpha) {
            const auto mesh = fem::triangulate(poly, 2);
            const auto mats = fem::assemble(mesh);
            const Eigen::VectorXd ones =
                Eigen::VectorXd::Ones(mats.mass.rows());
            const double k_const = ones.dot(mats.stiffness * ones);
            const double volume = ones.dot(mats.mass * ones);
            const double perim = ones.dot(mats.boundary_mass * ones);
            c.le(std::abs(k_const), 1e-10, "constants span the kernel of K");
            c.close(volume, poly.area(), 1e-12 * poly.area(),
                    "mass row sums give the area");
            c.close(perim, poly.perimeter(), 1e-12 * poly.perimeter(),
                    "boundary mass row sums give the perimeter");
            const double rq =
                (k_const + alpha * perim) / volume;
            c.close(rq, alpha * poly.perimeter() / poly.area(),
                    1e-10, "constant Rayleigh quotient");
        });
}

Outcome case_fem_eigen(const Ctx& ctx) {
    return run_polygon_case(
        "fem_eigen_consistency", ctx, {-0.5, -1.0}, 3,
        [](Check& c, const geom::ConvexPolygon& poly, double alpha) {
            const auto mesh = fem::triangulate(poly, 3);
            const auto mats = fem::assemble(mesh);
            const auto result = fem::smallest_eigenvalue(mats, alpha, 1e-10);
            c.le(result.lambda_h,
                 alpha * poly.perimeter() / poly.area(),
                 "discrete eigenvalue below the constant bound");
            c.is_true(result.multiplicity_check == 1,
                      "first eigenvalue simple");
            const int n = static_cast<int>(result.eigenvector.size());
            const Eigen::Map<const Eigen::VectorXd> x(
                result.eigenvector.data(), n);
            const double min = x.minCoeff();
            const double max = x.maxCoeff();
            c.le(0.0, min * max, "eigenvector sign-constant");
            Eigen::SparseMatrix<double> pencil = mats.stiffness;
            pencil += alpha * mats.boundary_mass;
            const double rq =
                x.dot(pencil * x) / x.dot(mats.mass * x);
            c.le(std::abs(rq - result.lambda_h),
                 1e-10 * std::abs(result.lambda_h),
                 "Rayleigh quotient of the eigenvector");
        });
}

Outcome case_fem_refinement(const Ctx& ctx) {
    return run_polygon_case(
        "fem_refinement_monotone", ctx, {-1.0}, 3,
        [](Check& c, const geom::ConvexPolygon& poly, double alpha) {
            const auto result = fem::solve(poly, alpha, 4, 1e-10);
            c.is_true(result.monotone,
                      "eigenvalues decrease under refinement");
            c.le(std::abs(result.lambda_extrapolated - result.lambda_h),
                 result.error_estimate + 1e-12,
                 "extrapolation within the error estimate");
        });
}

Outcome case_fem_vs_radial(const Ctx&) {
    Check c;
    const auto poly = shapes::regular_polygon(32, 2.0 * M_PI);
    const auto fem_result = fem::solve(poly, -1.0, 4, 1e-10);
    const auto disc =
        radial::ball_eigenvalue(geom::ball_of_same_perimeter(poly), -1.0,
                                1e-12);
    c.le(std::abs(fem_result.lambda_extrapolated - disc.lambda), 2e-2,
         "FEM on a near-disc polygon matches the radial eigenvalue");
    return {"fem_vs_radial_near_disc", c.pass(), c.margin(), c.detail()};
}

Outcome case_chain_corpus(const Ctx& ctx) {
    return run_polygon_case(
        "eigenvalue_chain_corpus", ctx, {-0.5, -2.0}, 6,
        [](Check& c, const geom::ConvexPolygon& poly, double alpha) {
            const auto rep = dearrange::verify_chain(poly, alpha);
            c.le(rep.lambda_fem, rep.rayleigh_w + rep.tol_chain,
                 "lambda_fem <= F(w, Omega)");
            c.le(rep.rayleigh_w, rep.lambda_star + rep.tol_chain,
                 "F(w, Omega) <= lambda_star");
            c.is_true(rep.all_ok(), "all report flags");
        });
}

Outcome case_equality_trend(const Ctx&) {
    Check c;
    double prev = kInf;
    for (int m : {8, 16, 32}) {
        const auto poly = shapes::regular_polygon(m, 2.0 * M_PI);
        const auto test = dearrange::build_test(poly, -1.0, 1e-12);
        const auto terms = dearrange::functional_terms(test, 1e-10);
        const double margin = test.star.lambda - terms.rayleigh;
        c.le(0.0, margin, "margin positive away from the disc");
        c.le(margin, prev, "margin decreasing toward the disc");
        prev = margin;
    }
    return {"equality_margin_trend", c.pass(), c.margin(), c.detail()};
}

Outcome case_generator_smoke(const Ctx& ctx) {
    Check c;
    auto rng = case_rng(ctx, "generator_smoke");
    for (int i = 0; i < 10000; ++i) {
        try {
            const auto poly = shapes::random_convex_polygon(12, rng);
            if (poly.size() < 4) {
                c.is_true(false, "hull with fewer than 4 vertices");
                break;
            }
        } catch (const std::exception& e) {
            c.is_true(false, std::string("generator failed: ") + e.what());
            break;
        }
    }
    return {"random_generator_smoke", c.pass(), c.margin(), c.detail()};
}

using CaseFn = Outcome (*)(const Ctx&);

struct CaseDef {
    const char* name;
    CaseFn run;
};

constexpr CaseDef kCases[] = {
    {"bessel_wronskian", case_bessel_wronskian},
    {"bessel_recurrence", case_bessel_recurrence},
    {"bessel_branch_crossover", case_bessel_crossover},
    {"bessel_scaled_no_overflow", case_scaled_overflow},
    {"ball_eigenvalue_bound", case_ball_bound},
    {"ball_halfspace_limit", case_halfspace_limit},
    {"phi_positive_increasing", case_phi_shape},
    {"phi_ode_residual", case_phi_ode},
    {"phi_inverse_roundtrip", case_phi_inverse},
    {"annulus_ball_continuity", case_annulus_continuity},
    {"annulus_alpha_monotonicity", case_annulus_alpha},
    {"annulus_shell_chain", case_annulus_chain},
    {"ball_radius_monotonicity", case_ball_monotonicity},
    {"polygon_isoperimetric_deficit", case_isoperimetric},
    {"erosion_semigroup", case_erosion_semigroup},
    {"profile_matches_direct_erosion", case_profile_vs_direct},
    {"profile_slope_and_concavity", case_profile_slope},
    {"regular_mgon_slope_formula", case_mgon_slope},
    {"steiner_outer_offset", case_outer_offset},
    {"inradius_consistency", case_inradius_consistency},
    {"testfunction_relations", case_testfunction_relations},
    {"dearrangement_ode_crosscheck", case_dearrange_ode},
    {"levelset_perimeter_comparison", case_levelset_perimeter},
    {"levelset_volume_comparison", case_levelset_volume},
    {"functional_term_comparison", case_functional_comparison},
    {"rayleigh_negative", case_rayleigh_negative},
    {"fem_partition_identities", case_fem_partition},
    {"fem_eigen_consistency", case_fem_eigen},
    {"fem_refinement_monotone", case_fem_refinement},
    {"fem_vs_radial_near_disc", case_fem_vs_radial},
    {"eigenvalue_chain_corpus", case_chain_corpus},
    {"equality_margin_trend", case_equality_trend},
    {"random_generator_smoke", case_generator_smoke},
};

}  // namespace

int run_suite(const SuiteOptions& options, std::ostream& out) {
    Ctx ctx;
    ctx.seed = options.seed;
    ctx.inject_fault = options.inject_fault;
    ctx.replay_dir = options.replay_dir;

    std::string replay_case;
    if (!options.replay_file.empty()) {
        std::ifstream in(options.replay_file);
        if (!in) {
            out << "cannot open replay file " << options.replay_file << '\n';
            return 2;
        }
        nlohmann::json j;
        in >> j;
        replay_case = j.at("case").get<std::string>();
        ctx.replay_alpha = j.at("alpha").get<double>();
        std::vector<geom::Point> pts;
        for (const auto& v : j.at("polygon")) {
            pts.push_back({v.at(0).get<double>(), v.at(1).get<double>()});
        }
        ctx.replay_polygon = geom::ConvexPolygon(std::move(pts));
    }

    std::vector<const CaseDef*> selected;
    for (const CaseDef& def : kCases) {
        const std::string name = def.name;
        if (!replay_case.empty()) {
            if (name == replay_case) selected.push_back(&def);
        } else if (options.filter.empty() ||
                   name.find(options.filter) != std::string::npos) {
            selected.push_back(&def);
        }
    }
    if (selected.empty()) {
        out << "no cases match filter '"
            << (replay_case.empty() ? options.filter : replay_case) << "'\n";
        return 2;
    }

    const auto outcomes = detail::parallel_map<Outcome>(
        selected.size(),
        [&](std::size_t i) {
            try {
                return selected[i]->run(ctx);
            } catch (const std::exception& e) {
                return Outcome{selected[i]->name, false, -kInf,
                               std::string("exception: ") + e.what()};
            }
        },
        options.threads);

    int failures = 0;
    for (const Outcome& o : outcomes) {
        if (o.pass) {
            out << "PASS " << o.name;
            if (std::isfinite(o.margin)) {
                out << " (margin " << o.margin << ")";
            }
            out << '\n';
        } else {
            ++failures;
            out << "FAIL " << o.name << ": " << o.detail << '\n';
        }
    }
    out << (failures == 0 ? "all " : "") << outcomes.size() - failures << "/"
        << outcomes.size() << " properties hold\n";
    return failures == 0 ? 0 : 1;
}

}  // namespace robin::harness
