#include "robin/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace robin::geom {

namespace {

double cross(const Point& o, const Point& a, const Point& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

double dist(const Point& a, const Point& b) {
    return std::hypot(b.x - a.x, b.y - a.y);
}

double polygon_area(const std::vector<Point>& v) {
    double twice = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        twice += a.x * b.y - a.y * b.x;
    }
    return 0.5 * twice;
}

double polygon_perimeter(const std::vector<Point>& v) {
    double p = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        p += dist(v[i], v[(i + 1) % v.size()]);
    }
    return p;
}

double max_pairwise_distance(const std::vector<Point>& v) {
    double d = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            d = std::max(d, dist(v[i], v[j]));
        }
    }
    return d;
}

// Merge consecutive vertices closer than merge_tol and drop vertices whose
// turn is numerically degenerate. Used to clean up clipper output before
// revalidation; returns an empty list when fewer than 3 vertices survive.
std::vector<Point> cleaned_loop(std::vector<Point> v, double scale) {
    const double merge_tol = 5e-14 * scale;
    const double cross_tol = 1e-26 * scale * scale;
    bool changed = true;
    while (changed && v.size() >= 3) {
        changed = false;
        for (std::size_t i = 0; i < v.size() && v.size() >= 3;) {
            const Point& prev = v[(i + v.size() - 1) % v.size()];
            const Point& cur = v[i];
            const Point& next = v[(i + 1) % v.size()];
            if (dist(cur, next) <= merge_tol || cross(prev, cur, next) <= cross_tol) {
                v.erase(v.begin() + static_cast<std::ptrdiff_t>(i));
                changed = true;
            } else {
                ++i;
            }
        }
    }
    if (v.size() < 3) v.clear();
    return v;
}

struct EdgeLine {
    double nx, ny;  // outward unit normal
    double offset;  // n . x = offset on the edge line
};

std::vector<EdgeLine> edge_lines(const std::vector<Point>& v) {
    std::vector<EdgeLine> lines;
    lines.reserve(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % v.size()];
        const double len = dist(a, b);
        // CCW boundary: outward normal is the edge direction rotated by -90.
        const double nx = (b.y - a.y) / len;
        const double ny = (a.x - b.x) / len;
        lines.push_back({nx, ny, nx * a.x + ny * a.y});
    }
    return lines;
}

// Sutherland-Hodgman clip of a convex loop against the half-plane
// n . x <= c.
std::vector<Point> clip_halfplane(const std::vector<Point>& v, double nx,
                                  double ny, double c) {
    std::vector<Point> out;
    out.reserve(v.size() + 1);
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = v[i];
        const Point& b = v[(i + 1) % n];
        const double da = nx * a.x + ny * a.y - c;
        const double db = nx * b.x + ny * b.y - c;
        if (da <= 0.0) {
            out.push_back(a);
        }
        if ((da < 0.0 && db > 0.0) || (da > 0.0 && db <= 0.0)) {
            const double t = da / (da - db);
            out.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
        }
    }
    return out;
}

// Exterior angle at the vertex between incoming edge u and outgoing edge w.
double exterior_angle(const Point& prev, const Point& cur, const Point& next) {
    const double ux = cur.x - prev.x, uy = cur.y - prev.y;
    const double wx = next.x - cur.x, wy = next.y - cur.y;
    return std::atan2(ux * wy - uy * wx, ux * wx + uy * wy);
}

}  // namespace

ConvexPolygon::ConvexPolygon(std::vector<Point> vertices)
    : verts_(std::move(vertices)) {
    if (verts_.size() < 3) {
        throw std::invalid_argument("polygon needs at least 3 vertices");
    }
    for (const Point& p : verts_) {
        if (!std::isfinite(p.x) || !std::isfinite(p.y)) {
            throw std::invalid_argument("polygon vertex is not finite");
        }
    }
    const double diam = max_pairwise_distance(verts_);
    if (!(diam > 0.0)) {
        throw std::invalid_argument("polygon is a single point");
    }
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (dist(verts_[i], verts_[(i + 1) % n]) <= 1e-12 * diam) {
            throw std::invalid_argument("duplicate polygon vertices");
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        const double c = cross(verts_[i], verts_[(i + 1) % n], verts_[(i + 2) % n]);
        if (!(c > 0.0)) {
            throw std::invalid_argument(
                "polygon must be strictly convex and counterclockwise");
        }
    }
    if (!(polygon_area(verts_) > 0.0)) {
        throw std::invalid_argument("polygon area must be positive");
    }
}

double ConvexPolygon::perimeter() const { return polygon_perimeter(verts_); }

double ConvexPolygon::area() const { return polygon_area(verts_); }

double ConvexPolygon::diameter() const {
    return max_pairwise_distance(verts_);
}

Point ConvexPolygon::centroid() const {
    double cx = 0.0, cy = 0.0, twice_area = 0.0;
    const std::size_t n = verts_.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Point& a = verts_[i];
        const Point& b = verts_[(i + 1) % n];
        const double w = a.x * b.y - a.y * b.x;
        twice_area += w;
        cx += (a.x + b.x) * w;
        cy += (a.y + b.y) * w;
    }
    return {cx / (3.0 * twice_area), cy / (3.0 * twice_area)};
}

std::optional<ConvexPolygon> inner_parallel(const ConvexPolygon& poly,
                                            double s) {
    if (!(s >= 0.0) || !std::isfinite(s)) {
        throw std::domain_error("erosion depth must be >= 0 and finite");
    }
    if (s == 0.0) {
        return poly;
    }
    const double scale = poly.diameter();
    std::vector<Point> loop = poly.vertices();
    for (const EdgeLine& line : edge_lines(poly.vertices())) {
        loop = clip_halfplane(loop, line.nx, line.ny, line.offset - s);
        if (loop.size() < 3) {
            return std::nullopt;
        }
    }
    loop = cleaned_loop(std::move(loop), scale);
    if (loop.size() < 3 || polygon_area(loop) <= 1e-28 * scale * scale) {
        return std::nullopt;
    }
    // A sliver thinner than floating-point resolution can survive cleaning
    // with a nonpositive turn; treat it as vanished.
    for (std::size_t i = 0; i < loop.size(); ++i) {
        if (cross(loop[i], loop[(i + 1) % loop.size()],
                  loop[(i + 2) % loop.size()]) <= 0.0) {
            return std::nullopt;
        }
    }
    return ConvexPolygon(std::move(loop));
}

double inradius(const ConvexPolygon& poly) {
    // A >= r P / 2 for convex sets, so 2A/P brackets r from above. The
    // bisection narrows to 1e-12 relative width, but the emptiness test is
    // floating-point limited: near a tangential collapse the clipped sliver
    // drowns in rounding noise around 1e-8 * diameter. parallel_profile
    // computes the same depth from exact edge-vanish times when full
    // precision matters; the two agree within that noise floor.
    double lo = 0.0;
    double hi = 2.0 * poly.area() / poly.perimeter();
    const double width_target = 1e-12 * hi;
    if (inner_parallel(poly, hi).has_value()) {
        return hi;  // tangential polygon, bound is exact
    }
    while (hi - lo > width_target) {
        const double mid = 0.5 * (lo + hi);
        if (inner_parallel(poly, mid).has_value()) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

namespace {

const ProfileInterval* find_interval(const std::vector<ProfileInterval>& iv,
                                     double s) {
    for (const ProfileInterval& i : iv) {
        if (s <= i.s_end) return &i;
    }
    return iv.empty() ? nullptr : &iv.back();
}

}  // namespace

double ParallelProfile::perimeter_at(double s) const {
    const ProfileInterval& iv = interval_at(s);
    return iv.perimeter_begin + iv.slope * (s - iv.s_begin);
}

double ParallelProfile::area_at(double s) const {
    const ProfileInterval& iv = interval_at(s);
    const double u = s - iv.s_begin;
    return iv.area_begin - iv.perimeter_begin * u - 0.5 * iv.slope * u * u;
}

double ParallelProfile::slope_at(double s) const { return interval_at(s).slope; }

std::vector<double> ParallelProfile::interior_breakpoints() const {
    std::vector<double> b;
    for (std::size_t i = 0; i + 1 < intervals.size(); ++i) {
        b.push_back(intervals[i].s_end);
    }
    return b;
}

const ProfileInterval& ParallelProfile::interval_at(double s) const {
    if (intervals.empty()) {
        throw std::logic_error("empty parallel profile");
    }
    if (!(s >= -1e-12 * inradius) || s > inradius * (1.0 + 1e-12)) {
        throw std::domain_error("profile evaluated outside [0, inradius]");
    }
    return *find_interval(intervals, std::min(std::max(s, 0.0), inradius));
}

ParallelProfile parallel_profile(const ConvexPolygon& poly) {
    ParallelProfile profile;
    const double scale = poly.diameter();
    const double merge_tol_base = 2.0 * poly.area() / poly.perimeter();

    std::vector<Point> cur = poly.vertices();
    double s = 0.0;
    for (int guard = 0; guard < 4096; ++guard) {
        const std::size_t n = cur.size();
        std::vector<double> rate(n);  // tan(eps_v / 2) per vertex
        for (std::size_t i = 0; i < n; ++i) {
            const double eps = exterior_angle(cur[(i + n - 1) % n], cur[i],
                                              cur[(i + 1) % n]);
            rate[i] = std::tan(0.5 * eps);
        }

        ProfileInterval iv;
        iv.s_begin = s;
        iv.perimeter_begin = polygon_perimeter(cur);
        iv.area_begin = polygon_area(cur);
        iv.edge_count = n;
        double slope = 0.0;
        for (double r : rate) slope += 2.0 * r;
        iv.slope = -slope;

        // Vanish time of each edge: its length shrinks at the sum of the
        // endpoint rates.
        double tau_edge = std::numeric_limits<double>::infinity();
        std::vector<double> vanish(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double len = dist(cur[i], cur[(i + 1) % n]);
            vanish[i] = len / (rate[i] + rate[(i + 1) % n]);
            tau_edge = std::min(tau_edge, vanish[i]);
        }

        // Depth at which the quadratic area law hits zero. The body can only
        // degenerate at a combinatorial event (a point or segment collapse is
        // the simultaneous vanishing of its adjacent edges), so in exact
        // arithmetic this root never lies strictly inside an interval; the
        // branch guards against rounding, and the cancellation-prone square
        // root is trusted only well beyond its own noise scale.
        const double disc = iv.perimeter_begin * iv.perimeter_begin +
                            2.0 * iv.slope * iv.area_begin;
        double tau_area = std::numeric_limits<double>::infinity();
        if (disc >= 0.0) {
            tau_area = (iv.perimeter_begin - std::sqrt(disc)) / (-iv.slope);
        }
        const double tau_noise = 1e-7 * iv.perimeter_begin *
                                 iv.perimeter_begin / (-iv.slope);

        const double merge_tol = 1e-10 * merge_tol_base;
        if (tau_area < tau_edge - tau_noise) {
            iv.s_end = s + tau_area;
            profile.intervals.push_back(iv);
            profile.inradius = iv.s_end;
            return profile;
        }

        iv.s_end = s + tau_edge;
        profile.intervals.push_back(iv);

        // Erode to the event depth: advance every surviving edge line by
        // tau_edge and re-intersect consecutive lines; edges whose vanish
        // time ties with the event (within merge_tol) are dropped.
        std::vector<EdgeLine> lines = edge_lines(cur);
        std::vector<EdgeLine> survivors;
        for (std::size_t i = 0; i < n; ++i) {
            if (vanish[i] > tau_edge + merge_tol) {
                survivors.push_back(
                    {lines[i].nx, lines[i].ny, lines[i].offset - tau_edge});
            }
        }
        if (survivors.size() < 3) {
            // All remaining edges vanished together: the body collapsed.
            profile.inradius = iv.s_end;
            return profile;
        }
        std::vector<Point> next;
        next.reserve(survivors.size());
        for (std::size_t i = 0; i < survivors.size(); ++i) {
            const EdgeLine& a = survivors[i];
            const EdgeLine& b = survivors[(i + 1) % survivors.size()];
            const double det = a.nx * b.ny - a.ny * b.nx;
            next.push_back({(a.offset * b.ny - b.offset * a.ny) / det,
                            (a.nx * b.offset - b.nx * a.offset) / det});
        }
        next = cleaned_loop(std::move(next), scale);
        if (next.size() < 3) {
            profile.inradius = iv.s_end;
            return profile;
        }
        cur = std::move(next);
        s = iv.s_end;
    }
    throw std::runtime_error("parallel_profile did not terminate");
}

double outer_offset_perimeter(const ConvexPolygon& poly, double rho) {
    if (!(rho >= 0.0)) {
        throw std::domain_error("outer offset distance must be >= 0");
    }
    return poly.perimeter() + 2.0 * M_PI * rho;
}

radial::BallSpec ball_of_same_perimeter(const ConvexPolygon& poly) {
    return {2, poly.perimeter() / (2.0 * M_PI)};
}

}  // namespace robin::geom
