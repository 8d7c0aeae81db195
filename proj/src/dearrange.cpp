#include "robin/dearrange.hpp"

#include <cmath>
#include <stdexcept>

#include "robin/fem.hpp"
#include "robin/quadrature.hpp"

namespace robin::dearrange {

namespace {

using geom::ParallelProfile;
using radial::RadialEigen;

// Integrates f(s) * P(Omega_s) over [0, r] interval by interval, so the
// quadrature never straddles a breakpoint of the piecewise-affine perimeter.
template <typename F>
double coarea_integral(const ParallelProfile& profile, const F& f,
                       double quad_tol) {
    double total = 0.0;
    for (const geom::ProfileInterval& iv : profile.intervals) {
        auto integrand = [&](double s) {
            return f(s) * (iv.perimeter_begin + iv.slope * (s - iv.s_begin));
        };
        total += quadrature::integrate(integrand, iv.s_begin, iv.s_end,
                                       quad_tol);
    }
    return total;
}

}  // namespace

DearrangedTest build_test(const geom::ConvexPolygon& poly, double alpha,
                          double tol) {
    radial::BallSpec star_spec = geom::ball_of_same_perimeter(poly);
    RadialEigen star = radial::ball_eigenvalue(star_spec, alpha, tol);
    ParallelProfile profile = geom::parallel_profile(poly);
    if (profile.inradius > star_spec.radius * (1.0 + 1e-12)) {
        throw std::runtime_error(
            "inradius exceeds the equal-perimeter disc radius; "
            "test function undefined");
    }
    const double w_max = radial::eigenfunction_phi(star, star_spec.radius).value;
    const double w_min =
        radial::eigenfunction_phi(
            star, std::max(0.0, star_spec.radius - profile.inradius))
            .value;
    return {poly, std::move(profile), star, alpha, w_max, w_min};
}

FunctionalTerms functional_terms(const DearrangedTest& test, double quad_tol) {
    if (!(quad_tol > 0.0)) {
        throw std::domain_error("quadrature tolerance must be positive");
    }
    const double r_star = test.star.ball.radius;
    FunctionalTerms terms;
    terms.dirichlet = coarea_integral(
        test.profile,
        [&](double s) {
            const double d = radial::eigenfunction_phi(test.star, r_star - s)
                                 .derivative;
            return d * d;
        },
        quad_tol);
    terms.l2 = coarea_integral(
        test.profile,
        [&](double s) {
            const double v = radial::eigenfunction_phi(test.star, r_star - s)
                                 .value;
            return v * v;
        },
        quad_tol);
    terms.boundary = test.w_max * test.w_max * test.polygon.perimeter();
    terms.rayleigh =
        (terms.dirichlet + test.alpha * terms.boundary) / terms.l2;
    return terms;
}

FunctionalTerms disc_terms(const RadialEigen& star, double quad_tol) {
    const double R = star.ball.radius;
    FunctionalTerms terms;
    terms.dirichlet = quadrature::integrate(
        [&](double r) {
            const double d = radial::eigenfunction_phi(star, r).derivative;
            return d * d * 2.0 * M_PI * r;
        },
        0.0, R, quad_tol);
    terms.l2 = quadrature::integrate(
        [&](double r) {
            const double v = radial::eigenfunction_phi(star, r).value;
            return v * v * 2.0 * M_PI * r;
        },
        0.0, R, quad_tol);
    const double phi_R = radial::eigenfunction_phi(star, R).value;
    terms.boundary = phi_R * phi_R * 2.0 * M_PI * R;
    terms.rayleigh =
        (terms.dirichlet + star.alpha * terms.boundary) / terms.l2;
    return terms;
}

std::vector<PerimeterSample> perimeter_comparison(const DearrangedTest& test,
                                                  int samples) {
    if (samples < 2) {
        throw std::domain_error("need at least 2 comparison samples");
    }
    const double r_star = test.star.ball.radius;
    const double rho_min = r_star - test.profile.inradius;
    std::vector<PerimeterSample> out;
    out.reserve(samples);
    // Chebyshev nodes of [rho_min, r_star], endpoints included.
    for (int i = 0; i < samples; ++i) {
        const double theta = M_PI * i / (samples - 1);
        const double rho =
            0.5 * (rho_min + r_star) - 0.5 * (r_star - rho_min) * std::cos(theta);
        const double s = std::min(std::max(r_star - rho, 0.0),
                                  test.profile.inradius);
        out.push_back({radial::eigenfunction_phi(test.star, rho).value,
                       test.profile.perimeter_at(s), 2.0 * M_PI * rho});
    }
    return out;
}

std::vector<VolumeSample> volume_comparison(const DearrangedTest& test,
                                            int samples) {
    if (samples < 2) {
        throw std::domain_error("need at least 2 comparison samples");
    }
    const double r_star = test.star.ball.radius;
    const double area = test.polygon.area();
    const double disc_area = M_PI * r_star * r_star;
    const double v_min = radial::eigenfunction_phi(test.star, 0.0).value;

    std::vector<VolumeSample> out;
    out.reserve(samples);
    // A few uniform samples below v_min (where B_t is empty), then Chebyshev
    // spacing in rho through the steep boundary region.
    const int below = std::max(2, samples / 8);
    for (int i = 0; i < below; ++i) {
        const double t = v_min * i / below;
        out.push_back({t, area, disc_area});
    }
    const int above = samples - below;
    for (int i = 0; i < above; ++i) {
        const double theta = M_PI * i / (above - 1);
        const double rho = 0.5 * r_star * (1.0 - std::cos(theta));
        const double t = radial::eigenfunction_phi(test.star, rho).value;
        const double nu = M_PI * rho * rho;
        // mu(t) = |E_t| = |Omega_{s}| with s = R_star - rho; zero once the
        // level drops below the minimum of w.
        const double s = r_star - rho;
        const double mu =
            (s >= test.profile.inradius) ? 0.0 : test.profile.area_at(s);
        out.push_back({t, area - mu, disc_area - nu});
    }
    return out;
}

report::TheoremReport verify_chain(const geom::ConvexPolygon& poly,
                                   double alpha, const ChainOptions& opts) {
    const DearrangedTest test = build_test(poly, alpha, opts.root_tol);
    const FunctionalTerms poly_terms = functional_terms(test, opts.quad_tol);
    const FunctionalTerms star_terms = disc_terms(test.star, opts.quad_tol);
    const fem::SpectrumResult spectrum =
        fem::solve(poly, alpha, opts.fem_levels, opts.fem_tol);

    report::TheoremReport rep;
    std::vector<double> coords;
    coords.reserve(2 * poly.size());
    for (const geom::Point& p : poly.vertices()) {
        coords.push_back(p.x);
        coords.push_back(p.y);
    }
    rep.shape_id = report::fingerprint(coords);
    rep.alpha = alpha;
    rep.perimeter = poly.perimeter();
    rep.area = poly.area();
    rep.inradius = test.profile.inradius;
    rep.r_star = test.star.ball.radius;
    rep.lambda_star = test.star.lambda;
    rep.rayleigh_w = poly_terms.rayleigh;
    rep.lambda_fem = spectrum.lambda_extrapolated;
    rep.fem_error = spectrum.error_estimate;
    rep.margin_star = rep.lambda_star - rep.rayleigh_w;
    rep.margin_fw = rep.rayleigh_w - rep.lambda_fem;
    rep.quad_tol = opts.quad_tol;
    rep.tol_chain = std::max(1e-8, 2.0 * spectrum.error_estimate);

    const auto peri = perimeter_comparison(test, opts.comparison_samples);
    rep.perimetri_ok = true;
    for (const PerimeterSample& s : peri) {
        if (s.polygon_perimeter > s.disc_perimeter + 1e-9) {
            rep.perimetri_ok = false;
        }
    }
    const auto vols = volume_comparison(test, opts.comparison_samples);
    const double area_scale = M_PI * rep.r_star * rep.r_star;
    bool volumes_ok = true;
    for (const VolumeSample& s : vols) {
        if (s.polygon_excess > s.disc_excess + 1e-9 * area_scale) {
            volumes_ok = false;
        }
    }
    const double ineq_tol = 100.0 * opts.quad_tol;
    rep.energie_ok = poly_terms.dirichlet <= star_terms.dirichlet + ineq_tol;
    rep.normel2_ok =
        volumes_ok && poly_terms.l2 <= star_terms.l2 + ineq_tol;
    rep.boundary_ok = std::abs(poly_terms.boundary - star_terms.boundary) <=
                      1e-9 * star_terms.boundary;
    rep.chain_ok = rep.lambda_fem <= rep.rayleigh_w + rep.tol_chain &&
                   rep.rayleigh_w <= rep.lambda_star + rep.tol_chain;
    return rep;
}

}  // namespace robin::dearrange
