#pragma once

// Transplants the disc eigenfunction onto the level sets of the boundary
// distance of a convex polygon: w(x) = phi(R_star - d(x)) with R_star the
// equal-perimeter disc radius. Evaluates the Rayleigh-functional terms of w
// by coarea quadrature against the erosion profile and checks every
// inequality in the comparison chain
//     lambda(alpha, Omega) <= F(w, Omega) <= lambda(alpha, Omega_star).

#include <vector>

#include "robin/geometry.hpp"
#include "robin/radial.hpp"
#include "robin/report.hpp"

namespace robin::dearrange {

struct DearrangedTest {
    geom::ConvexPolygon polygon;
    geom::ParallelProfile profile;
    radial::RadialEigen star;  // equal-perimeter disc eigenpair
    double alpha = 0.0;
    double w_max = 0.0;  // phi(R_star), attained on the boundary
    double w_min = 0.0;  // phi(R_star - inradius), attained at the deepest point
};

/// Builds the test function. The dearrangement G from the level-set
/// construction G^{-1}(t) = int_t^{v_max} ds / g(s) collapses to the closed
/// form G(s) = phi(R_star - s); the ODE cross-check G' = -g(G) guards the
/// derivation numerically.
DearrangedTest build_test(const geom::ConvexPolygon& poly, double alpha,
                          double tol = 1e-12);

struct FunctionalTerms {
    double dirichlet = 0.0;  // int |grad w|^2
    double boundary = 0.0;   // int_boundary w^2
    double l2 = 0.0;         // int w^2
    double rayleigh = 0.0;   // (dirichlet + alpha boundary) / l2
};

/// Coarea reduction with |grad d| = 1:
///   dirichlet = int_0^r phi'(R_star - s)^2 P(Omega_s) ds
///   l2        = int_0^r phi (R_star - s)^2 P(Omega_s) ds
///   boundary  = phi(R_star)^2 P(Omega) exactly.
FunctionalTerms functional_terms(const DearrangedTest& test,
                                 double quad_tol = 1e-10);

/// Same three terms on the equal-perimeter disc, by radial quadrature
/// int_0^R (..) 2 pi r dr; right-hand sides of the comparison inequalities.
FunctionalTerms disc_terms(const radial::RadialEigen& star,
                           double quad_tol = 1e-10);

struct PerimeterSample {
    double level;              // t
    double polygon_perimeter;  // P(E_t) = P(Omega_{R_star - rho})
    double disc_perimeter;     // P(B_t) = 2 pi rho, rho = phi^{-1}(t)
};

/// Level-set perimeter comparison P(E_t) <= P(B_t) over `samples` levels
/// Chebyshev-spaced in rho, including the endpoint t = w_max where both
/// sides equal P(Omega).
std::vector<PerimeterSample> perimeter_comparison(const DearrangedTest& test,
                                                  int samples);

struct VolumeSample {
    double level;           // t
    double polygon_excess;  // |Omega| - mu(t)
    double disc_excess;     // |Omega_star| - nu(t)
};

/// Superlevel measure comparison |Omega| - mu(t) <= |Omega_star| - nu(t)
/// for t in [0, v_max].
std::vector<VolumeSample> volume_comparison(const DearrangedTest& test,
                                            int samples);

struct ChainOptions {
    double root_tol = 1e-12;
    double quad_tol = 1e-10;
    int fem_levels = 4;
    double fem_tol = 1e-10;
    int comparison_samples = 100;
};

/// Runs both eigenvalue routes and every proof-step inequality on one
/// polygon. A violated inequality is a finding reported through the flags,
/// not an exception.
report::TheoremReport verify_chain(const geom::ConvexPolygon& poly,
                                   double alpha,
                                   const ChainOptions& opts = {});

}  // namespace robin::dearrange
