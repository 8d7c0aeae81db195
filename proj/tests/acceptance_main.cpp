// Acceptance suite: one line per criterion, nonzero exit on any failure.
//
// The criteria pin down the artifact end to end: agreement of the two
// independent eigenvalue routes, the comparison chain on a seeded random
// corpus, the equality-case trend on regular polygons, every proof-step
// inequality, the eigenvalue bound and simplicity, the erosion-profile
// lemma, the closed-form dearrangement, the special-function identities,
// and the shell comparison chain.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "../src/parallel.hpp"
#include "robin/dearrange.hpp"
#include "robin/fem.hpp"
#include "robin/geometry.hpp"
#include "robin/radial.hpp"
#include "robin/shapes.hpp"
#include "robin/special.hpp"

using namespace robin;

namespace {

int failures = 0;

void report(int index, bool pass, const std::string& what,
            const std::string& detail) {
    std::printf("%s criterion %d: %s (%s)\n", pass ? "PASS" : "FAIL", index,
                what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

double seconds_since(
    const std::chrono::steady_clock::time_point& start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

std::vector<geom::ConvexPolygon> corpus_50(std::uint64_t seed) {
    shapes::Xorshift64Star rng(seed);
    std::vector<geom::ConvexPolygon> corpus;
    corpus.reserve(50);
    for (int i = 0; i < 50; ++i) {
        corpus.push_back(shapes::random_convex_polygon(12, rng));
    }
    return corpus;
}

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// --- criterion 1: radial vs FEM on the 64-gon inscribed in the unit disc

void criterion_1() {
    const auto start = std::chrono::steady_clock::now();
    const double side = 2.0 * std::sin(M_PI / 64.0);
    const auto poly = shapes::regular_polygon(64, 64.0 * side);
    const auto fem_result = fem::solve(poly, -1.0, 4, 1e-10);
    const auto radial_result = radial::ball_eigenvalue({2, 1.0}, -1.0, 1e-12);
    const double gap =
        std::abs(fem_result.lambda_extrapolated - radial_result.lambda);
    const double elapsed = seconds_since(start);
    report(1, gap <= 2e-2 && elapsed <= 10.0,
           "ball eigenvalue cross-validation, radial vs FEM",
           "|dlambda| = " + fmt(gap) + " <= 2e-2, " + fmt(elapsed) + " s");
}

// --- criteria 2 and 4 share the corpus run

struct CorpusRun {
    std::vector<report::TheoremReport> reports;
    double elapsed = 0.0;
};

CorpusRun run_corpus(const std::vector<geom::ConvexPolygon>& corpus) {
    const auto start = std::chrono::steady_clock::now();
    const double alphas[] = {-0.5, -1.0, -5.0};
    std::vector<std::pair<const geom::ConvexPolygon*, double>> jobs;
    for (const auto& poly : corpus) {
        for (double alpha : alphas) {
            jobs.emplace_back(&poly, alpha);
        }
    }
    CorpusRun run;
    run.reports = detail::parallel_map<report::TheoremReport>(
        jobs.size(), [&](std::size_t i) {
            return dearrange::verify_chain(*jobs[i].first, jobs[i].second);
        });
    run.elapsed = seconds_since(start);
    return run;
}

void criterion_2(const CorpusRun& run) {
    int violations = 0;
    double min_margin_fw = 1e300;
    double min_margin_star = 1e300;
    for (const auto& rep : run.reports) {
        const bool ok = rep.lambda_fem <= rep.rayleigh_w + rep.tol_chain &&
                        rep.rayleigh_w <= rep.lambda_star + rep.tol_chain;
        if (!ok) ++violations;
        min_margin_fw = std::min(min_margin_fw, rep.margin_fw);
        min_margin_star = std::min(min_margin_star, rep.margin_star);
    }
    report(2, violations == 0 && run.elapsed <= 300.0,
           "comparison chain on 50 seeded polygons x 3 alphas",
           std::to_string(run.reports.size()) + " reports, " +
               std::to_string(violations) + " violations, min margins " +
               fmt(min_margin_fw) + " / " + fmt(min_margin_star) + ", " +
               fmt(run.elapsed) + " s");
}

void criterion_4(const CorpusRun& run) {
    int violations = 0;
    for (const auto& rep : run.reports) {
        if (!rep.perimetri_ok || !rep.normel2_ok || !rep.energie_ok ||
            !rep.boundary_ok) {
            ++violations;
        }
    }
    report(4, violations == 0,
           "proof-step inequalities on every corpus shape",
           std::to_string(run.reports.size()) + " reports, " +
               std::to_string(violations) + " violations");
}

// --- criterion 3: equality-case margin trend on regular m-gons

void criterion_3() {
    // The margin threshold at m = 64 pins alpha = -0.5 (the mildest corpus
    // value); the trend itself holds for every alpha.
    const double alpha = -0.5;
    double prev = 1e300;
    bool ok = true;
    double last = 0.0;
    std::ostringstream os;
    for (int m : {8, 16, 32, 64}) {
        const auto poly = shapes::regular_polygon(m, 2.0 * M_PI);
        const auto test = dearrange::build_test(poly, alpha, 1e-12);
        const auto terms = dearrange::functional_terms(test, 1e-10);
        const double margin = test.star.lambda - terms.rayleigh;
        ok = ok && margin > 0.0 && margin < prev;
        prev = margin;
        last = margin;
        os << " m" << m << "=" << fmt(margin);
    }
    ok = ok && last <= 1e-3;
    report(3, ok, "equality-case margin positive, decreasing, <= 1e-3 at m=64",
           "alpha=-0.5, margins" + os.str());
}

// --- criterion 5: eigenvalue bound, sign-constant eigenvector, simplicity

void criterion_5(const std::vector<geom::ConvexPolygon>& corpus,
                 const CorpusRun& run) {
    int bound_violations = 0;
    for (const auto& rep : run.reports) {
        // radial route: alpha P / |Omega| on the disc is 2 alpha / R
        if (!(rep.lambda_star < rep.alpha * 2.0 / rep.r_star)) {
            ++bound_violations;
        }
        if (!(rep.lambda_fem < rep.alpha * rep.perimeter / rep.area)) {
            ++bound_violations;
        }
    }
    const auto checks = detail::parallel_map<int>(
        corpus.size(), [&](std::size_t i) {
            const auto& poly = corpus[i];
            const auto mats = fem::assemble(fem::triangulate(poly, 3));
            const auto res = fem::smallest_eigenvalue(mats, -1.0, 1e-10);
            double lo = 1e300, hi = -1e300;
            for (double v : res.eigenvector) {
                lo = std::min(lo, v);
                hi = std::max(hi, v);
            }
            int bad = 0;
            if (!(lo * hi > 0.0)) ++bad;                      // sign change
            if (res.multiplicity_check != 1) ++bad;           // not simple
            if (!(res.lambda_h <
                  -1.0 * poly.perimeter() / poly.area())) {
                ++bad;
            }
            return bad;
        });
    int eigen_violations = 0;
    for (int bad : checks) eigen_violations += bad;
    report(5, bound_violations == 0 && eigen_violations == 0,
           "eigenvalue bound, sign-constant eigenvector, simplicity",
           std::to_string(run.reports.size()) + " bound checks, " +
               std::to_string(corpus.size()) +
               " eigenvector checks, violations " +
               std::to_string(bound_violations + eigen_violations));
}

// --- criterion 6: erosion-profile lemma

void criterion_6(const std::vector<geom::ConvexPolygon>& corpus) {
    int violations = 0;
    for (const auto& poly : corpus) {
        const auto profile = geom::parallel_profile(poly);
        double prev_slope = -2.0 * M_PI + 1e-12;
        for (const auto& iv : profile.intervals) {
            if (!(iv.slope <= -2.0 * M_PI + 1e-12)) ++violations;
            if (!(iv.slope <= prev_slope + 1e-12)) ++violations;
            prev_slope = iv.slope;
            const double mid = 0.5 * (iv.s_begin + iv.s_end);
            const double h = 1e-6 * profile.inradius;
            const double fd = (profile.area_at(mid + h) -
                               profile.area_at(mid - h)) /
                              (2.0 * h);
            if (!(std::abs(fd + profile.perimeter_at(mid)) <= 1e-8)) {
                ++violations;
            }
        }
    }
    double worst_closed_form = 0.0;
    for (int m : {3, 4, 6, 8, 16, 32, 64, 128}) {
        const auto poly = shapes::regular_polygon(m, 2.0 * M_PI);
        const auto profile = geom::parallel_profile(poly);
        const double expected = -2.0 * m * std::tan(M_PI / m);
        worst_closed_form = std::max(
            worst_closed_form,
            std::abs(profile.intervals.at(0).slope - expected));
    }
    report(6, violations == 0 && worst_closed_form <= 1e-9,
           "profile slope >= 2 pi, concavity, A' = -P, m-gon closed form",
           std::to_string(violations) + " violations, closed-form dev " +
               fmt(worst_closed_form));
}

// --- criterion 7: closed-form dearrangement vs level-set ODE

void criterion_7(const std::vector<geom::ConvexPolygon>& corpus) {
    double worst = 0.0;
    for (std::size_t i = 0; i < 10; ++i) {
        const auto test = dearrange::build_test(corpus[i], -1.0, 1e-12);
        const double r_star = test.star.ball.radius;
        const double r = test.profile.inradius;
        auto g = [&](double t) {
            return radial::eigenfunction_phi(test.star,
                                             radial::phi_inverse(test.star, t))
                .derivative;
        };
        const int steps = 1000;
        const double h = r / steps;
        double G = test.w_max;
        for (int step = 0; step < steps; ++step) {
            const double k1 = -g(G);
            const double k2 = -g(G + 0.5 * h * k1);
            const double k3 = -g(G + 0.5 * h * k2);
            const double k4 = -g(G + h * k3);
            G += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            const double closed =
                radial::eigenfunction_phi(test.star,
                                          r_star - (step + 1) * h)
                    .value;
            worst = std::max(worst, std::abs(G - closed));
        }
    }
    report(7, worst <= 1e-6,
           "closed-form dearrangement matches the level-set ODE",
           "10 shapes, max deviation " + fmt(worst));
}

// --- criterion 8: special-function identities

void criterion_8() {
    double worst_wronskian = 0.0;
    double worst_recurrence = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double nu = 0.25 * i;
        for (int j = 0; j < 20; ++j) {
            const double x = 0.25 + 0.5 * j;
            const double w =
                special::bessel_i(nu, x).scaled_value *
                    special::bessel_k(nu + 1.0, x).scaled_value +
                special::bessel_i(nu + 1.0, x).scaled_value *
                    special::bessel_k(nu, x).scaled_value;
            worst_wronskian =
                std::max(worst_wronskian, std::abs(w * x - 1.0));
            if (nu >= 1.0) {
                const double im = special::bessel_i(nu - 1.0, x).value;
                const double ip = special::bessel_i(nu + 1.0, x).value;
                const double iv = special::bessel_i(nu, x).value;
                worst_recurrence = std::max(
                    worst_recurrence,
                    std::abs(im - ip - 2.0 * nu / x * iv) / im);
            }
        }
    }
    // certified 20-term series value of I_0(1)
    double term = 1.0, series = 1.0;
    for (int m = 1; m < 20; ++m) {
        term *= 0.25 / (m * m);
        series += term;
    }
    const double i0_dev = std::abs(special::bessel_i(0.0, 1.0).value - series);
    double worst_half = 0.0;
    for (double x : {0.4, 1.0, 3.0, 9.0}) {
        const double i_half = std::sqrt(2.0 / (M_PI * x)) * std::sinh(x);
        worst_half = std::max(worst_half,
                              std::abs(special::bessel_i(0.5, x).value -
                                       i_half) /
                                  i_half);
        const double k_half = std::sqrt(M_PI / (2.0 * x)) * std::exp(-x);
        worst_half = std::max(worst_half,
                              std::abs(special::bessel_k(0.5, x).value -
                                       k_half) /
                                  k_half);
    }
    report(8,
           worst_wronskian <= 1e-8 && worst_recurrence <= 1e-8 &&
               i0_dev <= 1e-10 && worst_half <= 1e-9,
           "Wronskian, recurrence, certified series, half-integer forms",
           "wronskian " + fmt(worst_wronskian) + ", recurrence " +
               fmt(worst_recurrence) + ", I0(1) dev " + fmt(i0_dev) +
               ", half-integer dev " + fmt(worst_half));
}

// --- criterion 9: shell chain and radius monotonicity

void criterion_9() {
    const auto ann = radial::annulus_eigenvalue({2, 1.0, 0.5}, -1.0, 1e-12);
    const auto ball_inner = radial::ball_eigenvalue({2, 1.0}, -1.0, 1e-12);
    const auto ball_outer = radial::ball_eigenvalue({2, 1.5}, -1.0, 1e-12);
    bool ok = ann.found && ann.lambda <= ball_inner.lambda &&
              ball_inner.lambda <= ball_outer.lambda;
    shapes::Xorshift64Star rng(7);
    int mono_failures = 0;
    for (int i = 0; i < 20; ++i) {
        const int n = 2 + static_cast<int>(rng.uniform() * 3);
        const double r1 = 0.2 + 4.0 * rng.uniform();
        const double r2 = r1 * (1.05 + rng.uniform());
        const double alpha = -(0.2 + 3.0 * rng.uniform());
        if (!radial::ball_lambda_monotonicity(n, alpha, r1, r2)
                 .strictly_increasing) {
            ++mono_failures;
        }
    }
    ok = ok && mono_failures == 0;
    report(9, ok, "shell chain and ball monotonicity",
           "lambda(shell) " + fmt(ann.lambda) + " <= " +
               fmt(ball_inner.lambda) + " <= " + fmt(ball_outer.lambda) +
               ", monotonicity failures " + std::to_string(mono_failures));
}

}  // namespace

int main() {
    const auto start = std::chrono::steady_clock::now();
    const auto corpus = corpus_50(42);

    criterion_1();
    const CorpusRun run = run_corpus(corpus);
    criterion_2(run);
    criterion_3();
    criterion_4(run);
    criterion_5(corpus, run);
    criterion_6(corpus);
    criterion_7(corpus);
    criterion_8();
    criterion_9();

    std::printf("%d/9 criteria pass in %.1f s\n", 9 - failures,
                seconds_since(start));
    return failures == 0 ? 0 : 1;
}
