#pragma once

// Planar convex polygons, inward parallel bodies Omega_s = {d > s}, the
// inradius, and the piecewise profile s -> (P(Omega_s), |Omega_s|).

#include <cstddef>
#include <optional>
#include <vector>

#include "robin/radial.hpp"

namespace robin::geom {

struct Point {
    double x = 0.0;
    double y = 0.0;
};

/// Strictly convex polygon with counterclockwise vertex order. The
/// constructor rejects fewer than three vertices, duplicate vertices (within
/// 1e-12 of the diameter), clockwise order, and collinear triples.
class ConvexPolygon {
  public:
    explicit ConvexPolygon(std::vector<Point> vertices);

    const std::vector<Point>& vertices() const { return verts_; }
    std::size_t size() const { return verts_.size(); }

    double perimeter() const;
    double area() const;       // shoelace, positive
    double diameter() const;   // max pairwise vertex distance
    Point centroid() const;    // area centroid

  private:
    std::vector<Point> verts_;
};

/// Inner parallel body at depth s >= 0: the intersection of the inward
/// shifted edge half-planes. Empty (nullopt) once the interior vanishes;
/// vanished edges are dropped from the result.
std::optional<ConvexPolygon> inner_parallel(const ConvexPolygon& poly,
                                            double s);

/// Largest s with a nonempty inner parallel body, by bisection on emptiness
/// to 1e-12 relative.
double inradius(const ConvexPolygon& poly);

struct ProfileInterval {
    double s_begin = 0.0;
    double s_end = 0.0;
    double perimeter_begin = 0.0;  // P at s_begin
    double slope = 0.0;            // dP/ds, constant on the interval, < 0
    double area_begin = 0.0;       // A at s_begin
    std::size_t edge_count = 0;    // surviving edges on the interval
};

/// Piecewise description of the erosion profile. On each interval P is
/// affine with slope -sum_v 2 tan(eps_v / 2) over surviving exterior angles
/// and A' = -P, so A is quadratic. Breakpoints are the depths where edges
/// vanish; simultaneous events within 1e-10 * inradius are merged.
struct ParallelProfile {
    std::vector<ProfileInterval> intervals;  // contiguous, covering [0, r]
    double inradius = 0.0;

    double perimeter_at(double s) const;
    double area_at(double s) const;
    double slope_at(double s) const;
    std::vector<double> interior_breakpoints() const;

  private:
    const ProfileInterval& interval_at(double s) const;
};

ParallelProfile parallel_profile(const ConvexPolygon& poly);

/// Steiner formula in the plane: P(poly + rho B_1) = P(poly) + 2 pi rho.
double outer_offset_perimeter(const ConvexPolygon& poly, double rho);

/// The disc with the same perimeter: n = 2, R = P / (2 pi).
radial::BallSpec ball_of_same_perimeter(const ConvexPolygon& poly);

}  // namespace robin::geom
