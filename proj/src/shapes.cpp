#include "robin/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"

namespace robin::shapes {

Xorshift64Star::Xorshift64Star(std::uint64_t seed)
    : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

std::uint64_t Xorshift64Star::next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 2685821657736338717ULL;
}

double Xorshift64Star::uniform() {
    return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

geom::ConvexPolygon regular_polygon(int m, double perimeter) {
    if (m < 3) {
        throw std::invalid_argument("regular polygon needs m >= 3");
    }
    if (!(perimeter > 0.0)) {
        throw std::invalid_argument("perimeter must be positive");
    }
    const double side = perimeter / m;
    const double circumradius = side / (2.0 * std::sin(M_PI / m));
    std::vector<geom::Point> v;
    v.reserve(m);
    for (int i = 0; i < m; ++i) {
        const double angle = 2.0 * M_PI * i / m;
        v.push_back({circumradius * std::cos(angle),
                     circumradius * std::sin(angle)});
    }
    return geom::ConvexPolygon(std::move(v));
}

geom::ConvexPolygon rectangle(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) {
        throw std::invalid_argument("rectangle sides must be positive");
    }
    return geom::ConvexPolygon({{0.0, 0.0}, {a, 0.0}, {a, b}, {0.0, b}});
}

geom::ConvexPolygon convex_hull(std::vector<geom::Point> pts) {
    if (pts.size() < 3) {
        throw std::invalid_argument("hull needs at least 3 points");
    }
    std::sort(pts.begin(), pts.end(), [](const auto& p, const auto& q) {
        return p.x < q.x || (p.x == q.x && p.y < q.y);
    });
    auto turn = [](const geom::Point& o, const geom::Point& a,
                   const geom::Point& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    // Andrew monotone chain; strict turns drop collinear interior points.
    std::vector<geom::Point> hull(2 * pts.size());
    std::size_t k = 0;
    for (const geom::Point& p : pts) {
        while (k >= 2 && turn(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
        hull[k++] = p;
    }
    const std::size_t lower = k + 1;
    for (auto it = pts.rbegin() + 1; it != pts.rend(); ++it) {
        while (k >= lower && turn(hull[k - 2], hull[k - 1], *it) <= 0.0) --k;
        hull[k++] = *it;
    }
    hull.resize(k - 1);
    return geom::ConvexPolygon(std::move(hull));
}

geom::ConvexPolygon random_convex_polygon(int n_points, Xorshift64Star& rng) {
    if (n_points < 4) {
        throw std::invalid_argument("random polygon needs at least 4 points");
    }
    for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<geom::Point> pts;
        pts.reserve(n_points);
        while (static_cast<int>(pts.size()) < n_points) {
            const double x = 2.0 * rng.uniform() - 1.0;
            const double y = 2.0 * rng.uniform() - 1.0;
            if (x * x + y * y <= 1.0) {
                pts.push_back({x, y});
            }
        }
        try {
            geom::ConvexPolygon hull = convex_hull(std::move(pts));
            if (hull.size() < 4) {
                continue;
            }
            // Reject nearly collinear triples the strict hull let through.
            const auto& v = hull.vertices();
            const std::size_t n = v.size();
            bool sharp = true;
            for (std::size_t i = 0; i < n && sharp; ++i) {
                const geom::Point& o = v[i];
                const geom::Point& a = v[(i + 1) % n];
                const geom::Point& b = v[(i + 2) % n];
                const double c =
                    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
                if (c <= 1e-9) sharp = false;
            }
            if (sharp) {
                return hull;
            }
        } catch (const std::invalid_argument&) {
            // degenerate draw, redrawn below
        }
    }
    throw std::runtime_error("random polygon generation kept failing");
}

geom::ConvexPolygon load_polygon(const std::string& path, bool hull_repair) {
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot open polygon file: " + path);
    }
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument("polygon file " + path +
                                    " is not valid JSON: " + e.what());
    }
    if (!j.is_array()) {
        throw std::invalid_argument(
            "polygon file must contain one array of [x, y] pairs");
    }
    std::vector<geom::Point> pts;
    pts.reserve(j.size());
    for (const auto& entry : j) {
        if (!entry.is_array() || entry.size() != 2 ||
            !entry[0].is_number() || !entry[1].is_number()) {
            throw std::invalid_argument(
                "polygon file entries must be [x, y] number pairs");
        }
        pts.push_back({entry[0].get<double>(), entry[1].get<double>()});
    }
    if (hull_repair) {
        return convex_hull(std::move(pts));
    }
    return geom::ConvexPolygon(std::move(pts));
}

void save_polygon(const geom::ConvexPolygon& poly, const std::string& path) {
    nlohmann::json j = nlohmann::json::array();
    for (const geom::Point& p : poly.vertices()) {
        j.push_back({p.x, p.y});
    }
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write polygon file: " + path);
    }
    out << j.dump() << '\n';
}

ShapeSpec parse_shape_spec(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) {
        throw std::invalid_argument(
            "shape spec must look like kind:params, got '" + text + "'");
    }
    const std::string kind = text.substr(0, colon);
    const std::string params = text.substr(colon + 1);
    ShapeSpec spec{};
    try {
        if (kind == "regular") {
            spec.kind = ShapeSpec::Kind::regular;
            spec.m = std::stoi(params);
        } else if (kind == "rectangle") {
            spec.kind = ShapeSpec::Kind::rectangle;
            const auto comma = params.find(',');
            if (comma == std::string::npos) {
                throw std::invalid_argument("rectangle:a,b");
            }
            spec.a = std::stod(params.substr(0, comma));
            spec.b = std::stod(params.substr(comma + 1));
        } else if (kind == "random") {
            spec.kind = ShapeSpec::Kind::random;
            spec.m = std::stoi(params);
        } else if (kind == "file") {
            spec.kind = ShapeSpec::Kind::file;
            spec.path = params;
        } else {
            throw std::invalid_argument("unknown shape kind '" + kind + "'");
        }
    } catch (const std::logic_error&) {
        throw std::invalid_argument("malformed shape spec '" + text + "'");
    }
    return spec;
}

geom::ConvexPolygon make_shape(const ShapeSpec& spec, double perimeter,
                               std::uint64_t seed, bool hull_repair) {
    switch (spec.kind) {
        case ShapeSpec::Kind::regular:
            return regular_polygon(spec.m, perimeter);
        case ShapeSpec::Kind::rectangle:
            return rectangle(spec.a, spec.b);
        case ShapeSpec::Kind::random: {
            Xorshift64Star rng(seed);
            return random_convex_polygon(spec.m, rng);
        }
        case ShapeSpec::Kind::file:
            return load_polygon(spec.path, hull_repair);
    }
    throw std::logic_error("unreachable shape kind");
}

}  // namespace robin::shapes
