#pragma once

// Shape corpus generation and polygon file I/O. Random polygons are convex
// hulls of points drawn uniformly from the unit disc with a fixed,
// documented generator (xorshift64*), so corpora are reproducible across
// runs and implementations.

#include <cstdint>
#include <string>

#include "robin/geometry.hpp"

namespace robin::shapes {

/// xorshift64* pseudorandom generator. Deterministic 64-bit shift-register
/// sequence: x ^= x >> 12; x ^= x << 25; x ^= x >> 27; return x * 2685821657736338717.
class Xorshift64Star {
  public:
    explicit Xorshift64Star(std::uint64_t seed);
    std::uint64_t next();
    /// Uniform double in [0, 1) from the top 53 bits.
    double uniform();

  private:
    std::uint64_t state_;
};

/// Regular m-gon with the given perimeter, centered at the origin with a
/// vertex on the positive x axis.
geom::ConvexPolygon regular_polygon(int m, double perimeter);

/// Axis-aligned a x b rectangle with one corner at the origin.
geom::ConvexPolygon rectangle(double a, double b);

/// Convex hull of `n_points` uniform draws from the unit disc. Hulls with
/// fewer than 4 vertices or a numerically collinear triple are rejected and
/// redrawn from the same stream.
geom::ConvexPolygon random_convex_polygon(int n_points, Xorshift64Star& rng);

/// Convex hull of an arbitrary point set (used by --hull-repair).
geom::ConvexPolygon convex_hull(std::vector<geom::Point> points);

/// Polygon file format: a JSON array of [x, y] pairs, counterclockwise.
geom::ConvexPolygon load_polygon(const std::string& path,
                                 bool hull_repair = false);
void save_polygon(const geom::ConvexPolygon& poly, const std::string& path);

/// Parses a shape spec: "regular:m", "rectangle:a,b", "random:n",
/// "file:path". `perimeter` applies to regular, `seed` to random.
struct ShapeSpec {
    enum class Kind { regular, rectangle, random, file } kind;
    int m = 0;                // regular vertex count / random point count
    double a = 0.0, b = 0.0;  // rectangle sides
    std::string path;
};
ShapeSpec parse_shape_spec(const std::string& text);

geom::ConvexPolygon make_shape(const ShapeSpec& spec, double perimeter,
                               std::uint64_t seed, bool hull_repair = false);

}  // namespace robin::shapes
