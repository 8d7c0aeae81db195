#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "robin/dearrange.hpp"
#include "robin/shapes.hpp"

using namespace robin;

namespace {

geom::ConvexPolygon unit_square() {
    return geom::ConvexPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

// Independent disc-side oracle: adaptive Simpson on [0, R], separate from
// the Gauss-Legendre path used by the library.
template <typename F>
double simpson(const F& f, double a, double b, int depth, double tol) {
    const double m = 0.5 * (a + b);
    auto s = [&](double l, double mid, double r) {
        return (r - l) / 6.0 * (f(l) + 4.0 * f(mid) + f(r));
    };
    const double whole = s(a, m, b);
    const double left = s(a, 0.5 * (a + m), m);
    const double right = s(m, 0.5 * (m + b), b);
    if (depth > 24 || std::abs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return simpson(f, a, m, depth + 1, 0.5 * tol) +
           simpson(f, m, b, depth + 1, 0.5 * tol);
}

}  // namespace

TEST_CASE("test function construction on the unit square") {
    const auto test = dearrange::build_test(unit_square(), -1.0, 1e-12);
    CHECK(test.star.ball.radius == doctest::Approx(2.0 / M_PI).epsilon(1e-13));
    CHECK(test.profile.inradius == doctest::Approx(0.5).epsilon(1e-12));
    // r < R_star, so the deepest level sits strictly above the disc center
    const double v_min = radial::eigenfunction_phi(test.star, 0.0).value;
    CHECK(test.w_min > v_min);
    CHECK(test.w_max > test.w_min);
    const double v_max =
        radial::eigenfunction_phi(test.star, test.star.ball.radius).value;
    CHECK(test.w_max == doctest::Approx(v_max));
}

TEST_CASE("boundary term is exactly w_max^2 P") {
    for (double alpha : {-0.5, -1.0, -4.0}) {
        const auto test = dearrange::build_test(unit_square(), alpha, 1e-12);
        const auto terms = dearrange::functional_terms(test, 1e-10);
        CHECK(terms.boundary ==
              doctest::Approx(test.w_max * test.w_max * 4.0).epsilon(1e-14));
        CHECK(terms.rayleigh < 0.0);
        CHECK(terms.dirichlet >= 0.0);
        CHECK(terms.l2 > 0.0);
    }
}

TEST_CASE("square Rayleigh quotient against an independently frozen value") {
    // cross-implementation reference for F(w, square) at alpha = -1
    const auto test = dearrange::build_test(unit_square(), -1.0, 1e-12);
    const auto terms = dearrange::functional_terms(test, 1e-12);
    CHECK(terms.rayleigh == doctest::Approx(-4.534681).epsilon(2e-6));
    const auto star = radial::ball_eigenvalue({2, 2.0 / M_PI}, -1.0, 1e-12);
    CHECK(star.lambda == doctest::Approx(-3.696281).epsilon(2e-6));
    CHECK(terms.rayleigh < star.lambda);
}

TEST_CASE("near-disc polygon reproduces the disc functionals") {
    const auto poly = shapes::regular_polygon(512, 2.0 * M_PI);
    const auto test = dearrange::build_test(poly, -1.0, 1e-12);
    const auto terms = dearrange::functional_terms(test, 1e-10);
    const double R = test.star.ball.radius;
    auto phi = [&](double r) {
        return radial::eigenfunction_phi(test.star, r);
    };
    const double dir_oracle = simpson(
        [&](double r) {
            const double d = phi(r).derivative;
            return d * d * 2.0 * M_PI * r;
        },
        0.0, R, 0, 1e-12);
    const double l2_oracle = simpson(
        [&](double r) {
            const double v = phi(r).value;
            return v * v * 2.0 * M_PI * r;
        },
        0.0, R, 0, 1e-12);
    const double bnd_oracle =
        phi(R).value * phi(R).value * 2.0 * M_PI * R;
    CHECK(std::abs(terms.dirichlet - dir_oracle) <= 1e-2 * dir_oracle);
    CHECK(std::abs(terms.l2 - l2_oracle) <= 1e-2 * l2_oracle);
    CHECK(std::abs(terms.boundary - bnd_oracle) <= 1e-2 * bnd_oracle);
}

TEST_CASE("quadrature tolerance contract") {
    const auto test = dearrange::build_test(unit_square(), -1.0, 1e-12);
    const auto tight = dearrange::functional_terms(test, 1e-12);
    const auto loose = dearrange::functional_terms(test, 1e-6);
    CHECK(std::abs(tight.dirichlet - loose.dirichlet) < 1e-6);
    CHECK(std::abs(tight.l2 - loose.l2) < 1e-6);
}

TEST_CASE("level-set perimeter comparison on the square") {
    const auto test = dearrange::build_test(unit_square(), -1.0, 1e-12);
    const auto samples = dearrange::perimeter_comparison(test, 100);
    CHECK(samples.size() == 100);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        CHECK(samples[i].polygon_perimeter <=
              samples[i].disc_perimeter + 1e-9);
        if (i + 1 < samples.size()) {  // strict away from the top level
            CHECK(samples[i].polygon_perimeter <
                  samples[i].disc_perimeter);
        }
    }
    CHECK(samples.back().polygon_perimeter ==
          doctest::Approx(samples.back().disc_perimeter).epsilon(1e-12));
    CHECK(samples.back().disc_perimeter == doctest::Approx(4.0));
}

TEST_CASE("near-disc level-set perimeters nearly coincide") {
    const auto poly = shapes::regular_polygon(128, 2.0 * M_PI);
    const auto test = dearrange::build_test(poly, -1.0, 1e-12);
    double max_gap = 0.0;
    for (const auto& s : dearrange::perimeter_comparison(test, 100)) {
        max_gap = std::max(max_gap, s.disc_perimeter - s.polygon_perimeter);
    }
    CHECK(max_gap <= 1e-2 * poly.perimeter());
}

TEST_CASE("superlevel measure comparison") {
    const auto test = dearrange::build_test(unit_square(), -1.0, 1e-12);
    const auto samples = dearrange::volume_comparison(test, 100);
    const double disc_area = M_PI * std::pow(test.star.ball.radius, 2);
    for (const auto& s : samples) {
        CHECK(s.polygon_excess <= s.disc_excess + 1e-9 * disc_area);
    }
    // at the top level both excesses vanish
    CHECK(samples.back().polygon_excess ==
          doctest::Approx(0.0).epsilon(1e-9));
    CHECK(samples.back().disc_excess == doctest::Approx(0.0).epsilon(1e-9));
    // and the L2 consequence
    const auto terms = dearrange::functional_terms(test, 1e-10);
    const auto disc = dearrange::disc_terms(test.star, 1e-10);
    CHECK(terms.l2 < disc.l2);
    CHECK(terms.l2 / disc.l2 < 1.0);
}

TEST_CASE("full chain on the unit square") {
    const auto rep = dearrange::verify_chain(unit_square(), -1.0);
    CHECK(rep.perimetri_ok);
    CHECK(rep.energie_ok);
    CHECK(rep.normel2_ok);
    CHECK(rep.boundary_ok);
    CHECK(rep.chain_ok);
    CHECK(rep.lambda_fem <= rep.rayleigh_w + rep.tol_chain);
    CHECK(rep.rayleigh_w <= rep.lambda_star + rep.tol_chain);
    // separable 1D oracle: lambda(square, -1) = -2 k^2, k tanh(k/2) = 1
    CHECK(rep.lambda_fem == doctest::Approx(-4.764196).epsilon(5e-4));
    CHECK(rep.margin_fw > 0.0);
    CHECK(rep.margin_star > 0.0);
}

TEST_CASE("elongated rectangle keeps a healthy margin") {
    const auto rect = shapes::rectangle(4.0, 0.25);
    const auto rep = dearrange::verify_chain(rect, -0.5);
    CHECK(rep.chain_ok);
    CHECK(rep.perimetri_ok);
    CHECK(rep.margin_star > 0.1);  // far from the disc
    // separable 1D oracle for the true eigenvalue
    CHECK(rep.lambda_fem == doctest::Approx(-4.444546).epsilon(2e-2));
}

TEST_CASE("equality-case margins decrease toward the disc") {
    double prev = 1e9;
    for (int m : {8, 16, 32, 64}) {
        const auto poly = shapes::regular_polygon(m, 2.0 * M_PI);
        const auto test = dearrange::build_test(poly, -0.5, 1e-12);
        const auto terms = dearrange::functional_terms(test, 1e-10);
        const double margin = test.star.lambda - terms.rayleigh;
        CHECK(margin > 0.0);
        CHECK(margin < prev);
        prev = margin;
    }
    CHECK(prev <= 1e-3);  // m = 64 sits this close to equality
}
