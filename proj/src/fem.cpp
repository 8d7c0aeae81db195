#include "robin/fem.hpp"

#include <Eigen/SparseCholesky>
#include <cmath>
#include <map>
#include <stdexcept>

namespace robin::fem {

namespace {

using SparseMat = Eigen::SparseMatrix<double>;
using Triplet = Eigen::Triplet<double>;

int midpoint_index(std::map<std::pair<int, int>, int>& cache,
                   std::vector<geom::Point>& points, int a, int b) {
    const auto key = std::minmax(a, b);
    const auto it = cache.find(key);
    if (it != cache.end()) {
        return it->second;
    }
    const geom::Point mid{0.5 * (points[a].x + points[b].x),
                          0.5 * (points[a].y + points[b].y)};
    points.push_back(mid);
    const int idx = static_cast<int>(points.size()) - 1;
    cache.emplace(key, idx);
    return idx;
}

double edge_length(const TriMesh& mesh, int a, int b) {
    return std::hypot(mesh.points[b].x - mesh.points[a].x,
                      mesh.points[b].y - mesh.points[a].y);
}

}  // namespace

TriMesh triangulate(const geom::ConvexPolygon& poly, int levels) {
    if (levels < 0) {
        throw std::domain_error("refinement level must be >= 0");
    }
    TriMesh mesh;
    const auto& verts = poly.vertices();
    const int m = static_cast<int>(verts.size());
    mesh.points.push_back(poly.centroid());
    for (const geom::Point& p : verts) {
        mesh.points.push_back(p);
    }
    for (int i = 0; i < m; ++i) {
        mesh.triangles.push_back({0, 1 + i, 1 + (i + 1) % m});
        mesh.boundary_edges.push_back({1 + i, 1 + (i + 1) % m});
    }

    for (int level = 0; level < levels; ++level) {
        std::map<std::pair<int, int>, int> midpoints;
        std::vector<std::array<int, 3>> refined;
        refined.reserve(4 * mesh.triangles.size());
        for (const auto& t : mesh.triangles) {
            const int m01 = midpoint_index(midpoints, mesh.points, t[0], t[1]);
            const int m12 = midpoint_index(midpoints, mesh.points, t[1], t[2]);
            const int m20 = midpoint_index(midpoints, mesh.points, t[2], t[0]);
            refined.push_back({t[0], m01, m20});
            refined.push_back({m01, t[1], m12});
            refined.push_back({m20, m12, t[2]});
            refined.push_back({m01, m12, m20});
        }
        mesh.triangles = std::move(refined);
        std::vector<std::array<int, 2>> boundary;
        boundary.reserve(2 * mesh.boundary_edges.size());
        for (const auto& e : mesh.boundary_edges) {
            const int mid = midpoint_index(midpoints, mesh.points, e[0], e[1]);
            boundary.push_back({e[0], mid});
            boundary.push_back({mid, e[1]});
        }
        mesh.boundary_edges = std::move(boundary);
    }

    mesh.h = 0.0;
    for (const auto& t : mesh.triangles) {
        mesh.h = std::max({mesh.h, edge_length(mesh, t[0], t[1]),
                           edge_length(mesh, t[1], t[2]),
                           edge_length(mesh, t[2], t[0])});
    }
    return mesh;
}

RobinMatrices assemble(const TriMesh& mesh) {
    const int n = static_cast<int>(mesh.points.size());
    std::vector<Triplet> kt, mt, bt;
    kt.reserve(9 * mesh.triangles.size());
    mt.reserve(9 * mesh.triangles.size());
    bt.reserve(4 * mesh.boundary_edges.size());

    for (const auto& t : mesh.triangles) {
        const geom::Point& p0 = mesh.points[t[0]];
        const geom::Point& p1 = mesh.points[t[1]];
        const geom::Point& p2 = mesh.points[t[2]];
        const double twice_area = (p1.x - p0.x) * (p2.y - p0.y) -
                                  (p1.y - p0.y) * (p2.x - p0.x);
        if (!(twice_area > 0.0)) {
            throw std::runtime_error("degenerate or inverted mesh triangle");
        }
        const double area = 0.5 * twice_area;
        // Gradients of the barycentric functions from the opposite edges.
        const double bx[3] = {p1.y - p2.y, p2.y - p0.y, p0.y - p1.y};
        const double by[3] = {p2.x - p1.x, p0.x - p2.x, p1.x - p0.x};
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double kij =
                    (bx[i] * bx[j] + by[i] * by[j]) / (4.0 * area);
                kt.emplace_back(t[i], t[j], kij);
                const double mij = area / 12.0 * (i == j ? 2.0 : 1.0);
                mt.emplace_back(t[i], t[j], mij);
            }
        }
    }
    for (const auto& e : mesh.boundary_edges) {
        const double len = edge_length(mesh, e[0], e[1]);
        bt.emplace_back(e[0], e[0], len / 3.0);
        bt.emplace_back(e[1], e[1], len / 3.0);
        bt.emplace_back(e[0], e[1], len / 6.0);
        bt.emplace_back(e[1], e[0], len / 6.0);
    }

    RobinMatrices mats;
    mats.stiffness.resize(n, n);
    mats.mass.resize(n, n);
    mats.boundary_mass.resize(n, n);
    mats.stiffness.setFromTriplets(kt.begin(), kt.end());
    mats.mass.setFromTriplets(mt.begin(), mt.end());
    mats.boundary_mass.setFromTriplets(bt.begin(), bt.end());
    return mats;
}

namespace {

class InertiaSolver {
  public:
    InertiaSolver(const SparseMat& pencil_a, const SparseMat& mass)
        : a_(pencil_a), m_(mass) {
        SparseMat probe = a_;
        probe += m_;  // union sparsity pattern
        ldlt_.analyzePattern(probe);
    }

    // Number of pencil eigenvalues below sigma, via the negative pivots of
    // the LDL^T factorization of A - sigma M (Sylvester's law of inertia).
    // Factorization breakdown (an exactly zero pivot) is handled by nudging
    // sigma, which cannot move the count across the bisection bracket by
    // more than the nudge.
    int eigenvalues_below(double sigma) {
        for (int attempt = 0; attempt < 5; ++attempt) {
            if (factorize(sigma)) {
                int count = 0;
                const auto& d = ldlt_.vectorD();
                for (Eigen::Index i = 0; i < d.size(); ++i) {
                    if (d[i] < 0.0) ++count;
                }
                return count;
            }
            sigma += (std::abs(sigma) + 1.0) * 1e-12 * (attempt + 1);
        }
        throw std::runtime_error("LDLT inertia factorization kept breaking down");
    }

    bool factorize(double sigma) {
        SparseMat shifted = a_ - sigma * m_;
        ldlt_.factorize(shifted);
        if (ldlt_.info() != Eigen::Success) {
            return false;
        }
        const auto& d = ldlt_.vectorD();
        for (Eigen::Index i = 0; i < d.size(); ++i) {
            if (!std::isfinite(d[i]) || d[i] == 0.0) {
                return false;
            }
        }
        return true;
    }

    Eigen::VectorXd solve(const Eigen::VectorXd& rhs) const {
        return ldlt_.solve(rhs);
    }

  private:
    SparseMat a_;
    SparseMat m_;
    Eigen::SimplicialLDLT<SparseMat> ldlt_;
};

}  // namespace

SpectrumResult smallest_eigenvalue(const RobinMatrices& mats, double alpha,
                                   double tol) {
    if (!(alpha < 0.0)) {
        throw std::domain_error("boundary parameter alpha must be negative");
    }
    if (!(tol > 0.0)) {
        throw std::domain_error("tolerance must be positive");
    }
    const int n = static_cast<int>(mats.mass.rows());
    const Eigen::VectorXd ones = Eigen::VectorXd::Ones(n);
    const double volume = ones.dot(mats.mass * ones);
    const double perimeter = ones.dot(mats.boundary_mass * ones);

    SparseMat pencil = mats.stiffness;
    pencil += alpha * mats.boundary_mass;
    InertiaSolver solver(pencil, mats.mass);

    // The constant test function gives the rigorous upper end of the
    // bracket: lambda_h < alpha P / |Omega| < 0.
    const double rayleigh_const = alpha * perimeter / volume;
    double hi = rayleigh_const;
    if (solver.eigenvalues_below(hi) < 1) {
        throw std::runtime_error(
            "discrete eigenvalue not strictly below the constant-function bound");
    }
    double lo = 2.0 * rayleigh_const;
    int doublings = 0;
    while (solver.eigenvalues_below(lo) > 0) {
        lo *= 2.0;
        if (++doublings > 60) {
            throw std::runtime_error("failed to bracket the smallest eigenvalue");
        }
    }

    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (solver.eigenvalues_below(mid) >= 1) {
            hi = mid;
        } else {
            lo = mid;
        }
    }

    SpectrumResult result;
    const double mid = 0.5 * (lo + hi);

    // Polish with shifted inverse iteration anchored just below the bracket,
    // where the factorization is definite on the eigenspace of interest.
    double lambda = mid;
    Eigen::VectorXd x = ones;
    bool polished = false;
    const double shift = lo - 0.5 * tol - 1e-14 * std::abs(lo);
    if (solver.factorize(shift)) {
        double prev = std::numeric_limits<double>::infinity();
        for (int it = 0; it < 60; ++it) {
            Eigen::VectorXd y = solver.solve(mats.mass * x);
            const double norm = std::sqrt(y.dot(mats.mass * y));
            if (!(norm > 0.0) || !std::isfinite(norm)) {
                break;
            }
            x = y / norm;
            const double rq = x.dot(pencil * x) / x.dot(mats.mass * x);
            if (std::abs(rq - prev) <= 1e-13 * std::abs(rq)) {
                lambda = rq;
                polished = true;
                break;
            }
            prev = rq;
        }
        if (!polished && std::isfinite(prev)) {
            lambda = prev;
            polished = true;
        }
    }
    // Reject a polish that escaped the certified bracket.
    if (!polished || lambda < lo - 10.0 * tol || lambda > hi + 10.0 * tol) {
        lambda = mid;
        x = ones;
        result.error_estimate = 10.0 * (hi - lo);
    } else {
        result.error_estimate = hi - lo;
    }

    if (x.sum() < 0.0) {
        x = -x;
    }
    result.lambda_h = lambda;
    result.lambda_extrapolated = lambda;
    result.eigenvector.assign(x.data(), x.data() + n);
    result.lambda_levels = {lambda};
    result.multiplicity_check = solver.eigenvalues_below(lambda + 10.0 * tol);
    result.observed_order = std::numeric_limits<double>::quiet_NaN();
    return result;
}

SpectrumResult solve(const geom::ConvexPolygon& poly, double alpha, int levels,
                     double tol) {
    if (levels < 2) {
        throw std::domain_error("solve requires at least 2 refinement levels");
    }
    std::vector<double> lambdas;
    SpectrumResult finest;
    for (int level = levels - 2; level <= levels; ++level) {
        const TriMesh mesh = triangulate(poly, level);
        const RobinMatrices mats = assemble(mesh);
        finest = smallest_eigenvalue(mats, alpha, tol);
        lambdas.push_back(finest.lambda_h);
    }

    SpectrumResult result = finest;
    result.lambda_levels = lambdas;
    const double d1 = lambdas[1] - lambdas[0];  // refinement decrements
    const double d2 = lambdas[2] - lambdas[1];
    result.monotone = d1 <= tol && d2 <= tol;
    result.observed_order =
        (d1 * d2 > 0.0) ? std::log2(d1 / d2)
                        : std::numeric_limits<double>::quiet_NaN();
    // Order-2 Richardson on the two finest levels.
    result.lambda_extrapolated = lambdas[2] + (lambdas[2] - lambdas[1]) / 3.0;
    result.error_estimate = std::abs(lambdas[2] - lambdas[1]);
    if (!result.monotone) {
        result.error_estimate =
            3.0 * std::max(std::abs(d1), std::abs(d2));  // widened, flagged
    }
    return result;
}

}  // namespace robin::fem
