#pragma once

// P1 finite element solver for the first Robin eigenvalue on convex
// polygons: centroid-fan triangulation with red refinement, stiffness /
// mass / boundary-mass assembly, inertia-bisection for the smallest
// eigenvalue of the indefinite pencil, and Richardson extrapolation.

#include <Eigen/Sparse>
#include <array>
#include <vector>

#include "robin/geometry.hpp"

namespace robin::fem {

struct TriMesh {
    std::vector<geom::Point> points;
    std::vector<std::array<int, 3>> triangles;       // positively oriented
    std::vector<std::array<int, 2>> boundary_edges;  // lie on polygon edges
    double h = 0.0;                                  // max edge length
};

/// Fan triangulation from the centroid plus `levels` rounds of red
/// refinement (each triangle split into four by edge midpoints).
TriMesh triangulate(const geom::ConvexPolygon& poly, int levels);

struct RobinMatrices {
    Eigen::SparseMatrix<double> stiffness;      // K, PSD with kernel = constants
    Eigen::SparseMatrix<double> mass;           // M, SPD; 1^T M 1 = |Omega|
    Eigen::SparseMatrix<double> boundary_mass;  // B; 1^T B 1 = P(Omega)
};

RobinMatrices assemble(const TriMesh& mesh);

struct SpectrumResult {
    double lambda_h = 0.0;             // finest-level eigenvalue
    double lambda_extrapolated = 0.0;  // order-2 Richardson value
    double error_estimate = 0.0;
    std::vector<double> eigenvector;   // finest-level nodal values
    int multiplicity_check = 0;        // inertia count at lambda_h + 10 tol
    double observed_order = 0.0;       // from three consecutive levels
    std::vector<double> lambda_levels;
    bool monotone = true;              // eigenvalues decreased under refinement
};

/// Smallest eigenvalue of (K + alpha B) x = lambda M x on one mesh.
/// Sylvester inertia of K + alpha B - sigma M localizes the eigenvalue, a
/// bisection narrows it to width tol, and shifted inverse iteration polishes
/// the value and produces the eigenvector.
SpectrumResult smallest_eigenvalue(const RobinMatrices& mats, double alpha,
                                   double tol);

/// Solves on levels L-2, L-1, L and Richardson-extrapolates assuming
/// order-2 convergence; error_estimate = |lambda_L - lambda_{L-1}|.
SpectrumResult solve(const geom::ConvexPolygon& poly, double alpha, int levels,
                     double tol);

}  // namespace robin::fem
