#include "conres/scene.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include <nlohmann/json.hpp>

namespace conres {

namespace {

using nlohmann::json;

constexpr double kPi = std::numbers::pi;

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

bool segments_properly_intersect(const Vec2& a, const Vec2& b, const Vec2& c,
                                 const Vec2& d) {
    const double d1 = cross2(b - a, c - a);
    const double d2 = cross2(b - a, d - a);
    const double d3 = cross2(d - c, a - c);
    const double d4 = cross2(d - c, b - c);
    return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0));
}

PolygonScene parse_polygon(const json& j) {
    PolygonScene s;
    if (!j.contains("vertices") || !j["vertices"].is_array())
        throw MalformedDocument("polygon scene requires \"vertices\" array");
    for (const auto& v : j["vertices"]) {
        if (!v.is_array() || v.size() != 2)
            throw MalformedDocument("vertex must be a [x, y] pair");
        s.vertices.emplace_back(v[0].get<double>(), v[1].get<double>());
    }
    if (s.vertices.size() < 3)
        throw InvariantViolation("polygon needs at least three vertices");

    if (j.contains("boundary_condition")) {
        const std::string bc = j["boundary_condition"].get<std::string>();
        if (bc == "dirichlet")
            s.boundary_condition = BoundaryCondition::Dirichlet;
        else if (bc == "neumann")
            s.boundary_condition = BoundaryCondition::Neumann;
        else
            throw MalformedDocument("boundary_condition must be dirichlet or neumann");
    }
    s.nontrapping_asserted = j.value("nontrapping_asserted", false);

    if (signed_area(s.vertices) < 0)
        throw InvariantViolation("vertices must be counterclockwise");
    if (!polygon_is_simple(s.vertices))
        throw InvariantViolation("polygon is not simple (self-intersection)");

    const std::size_t n = s.vertices.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j2 = i + 1; j2 < n; ++j2)
            for (std::size_t k = j2 + 1; k < n; ++k)
                if (collinear(s.vertices[i], s.vertices[j2], s.vertices[k]))
                    throw InvariantViolation("three vertices collinear");

    for (std::size_t i = 0; i < n; ++i) {
        const double a = interior_angle(s.vertices, i);
        if (!(a > 0.0 && a < 2.0 * kPi))
            throw InvariantViolation("interior angle outside (0, 2*pi)");
        if (std::abs(a - kPi) < 1e-9)
            throw InvariantViolation("interior angle equal to pi (not a cone point)");
    }
    return s;
}

DeltaLineScene parse_delta_line(const json& j) {
    DeltaLineScene s;
    if (!j.contains("positions") || !j.contains("strengths"))
        throw MalformedDocument("delta_line scene requires \"positions\" and \"strengths\"");
    s.positions = j["positions"].get<std::vector<double>>();
    s.strengths = j["strengths"].get<std::vector<double>>();
    if (s.positions.empty())
        throw InvariantViolation("at least one delta required");
    if (s.positions.size() != s.strengths.size())
        throw InvariantViolation("positions and strengths must have equal length");
    for (std::size_t i = 1; i < s.positions.size(); ++i)
        if (!(s.positions[i] > s.positions[i - 1]))
            throw InvariantViolation("positions must be strictly increasing");
    for (double c : s.strengths)
        if (c == 0.0) throw InvariantViolation("delta strength must be nonzero");
    return s;
}

DeltaCircleScene parse_delta_circle(const json& j) {
    DeltaCircleScene s;
    if (!j.contains("R") || !j.contains("V"))
        throw MalformedDocument("delta_circle scene requires \"R\" and \"V\"");
    s.radius = j["R"].get<double>();
    s.strength = j["V"].get<double>();
    if (!(s.radius > 0.0)) throw InvariantViolation("R must be positive");
    return s;
}

}  // namespace

bool collinear(const Vec2& a, const Vec2& b, const Vec2& c) {
    const double area2 = std::abs(cross2(b - a, c - a));
    const double lo_x = std::min({a.x(), b.x(), c.x()});
    const double hi_x = std::max({a.x(), b.x(), c.x()});
    const double lo_y = std::min({a.y(), b.y(), c.y()});
    const double hi_y = std::max({a.y(), b.y(), c.y()});
    double bbox = (hi_x - lo_x) * (hi_y - lo_y);
    if (bbox == 0.0) bbox = std::max(hi_x - lo_x, hi_y - lo_y);
    if (bbox == 0.0) return true;  // all three points coincide
    return 0.5 * area2 < 1e-12 * bbox;
}

double signed_area(const std::vector<Vec2>& v) {
    double a = 0.0;
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = v[i];
        const Vec2& q = v[(i + 1) % n];
        a += cross2(p, q);
    }
    return 0.5 * a;
}

bool polygon_is_simple(const std::vector<Vec2>& v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            // Skip adjacent edges (they share an endpoint).
            if (j == i || (j + 1) % n == i || (i + 1) % n == j) continue;
            if (segments_properly_intersect(v[i], v[(i + 1) % n], v[j],
                                            v[(j + 1) % n]))
                return false;
        }
    }
    return true;
}

bool polygon_is_convex(const std::vector<Vec2>& v) {
    const std::size_t n = v.size();
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2 e1 = v[(i + 1) % n] - v[i];
        const Vec2 e2 = v[(i + 2) % n] - v[(i + 1) % n];
        if (cross2(e1, e2) < 0) return false;
    }
    return true;
}

double interior_angle(const std::vector<Vec2>& v, std::size_t i) {
    const std::size_t n = v.size();
    const Vec2 to_prev = v[(i + n - 1) % n] - v[i];
    const Vec2 to_next = v[(i + 1) % n] - v[i];
    // CCW polygon: interior angle is the rotation from to_next to to_prev
    // measured counterclockwise.
    double a = std::atan2(cross2(to_next, to_prev), to_next.dot(to_prev));
    if (a <= 0) a += 2.0 * kPi;
    return a;
}

Scene parse_scene(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw MalformedDocument(e.what());
    }
    if (!j.is_object() || !j.contains("model"))
        throw MalformedDocument("scene document must be an object with a \"model\" key");
    const std::string model = j["model"].get<std::string>();
    if (model == "polygon") return parse_polygon(j);
    if (model == "delta_line") return parse_delta_line(j);
    if (model == "delta_circle") return parse_delta_circle(j);
    throw UnknownModel(model);
}

std::string serialize_scene(const Scene& scene) {
    json j;
    if (const auto* p = std::get_if<PolygonScene>(&scene)) {
        j["model"] = "polygon";
        auto verts = json::array();
        for (const auto& v : p->vertices) verts.push_back({v.x(), v.y()});
        j["vertices"] = verts;
        j["boundary_condition"] =
            p->boundary_condition == BoundaryCondition::Dirichlet ? "dirichlet"
                                                                  : "neumann";
        j["nontrapping_asserted"] = p->nontrapping_asserted;
    } else if (const auto* d = std::get_if<DeltaLineScene>(&scene)) {
        j["model"] = "delta_line";
        j["positions"] = d->positions;
        j["strengths"] = d->strengths;
    } else {
        const auto& c = std::get<DeltaCircleScene>(scene);
        j["model"] = "delta_circle";
        j["R"] = c.radius;
        j["V"] = c.strength;
    }
    return j.dump();
}

std::vector<ConePoint> cone_points(const PolygonScene& scene) {
    std::vector<ConePoint> out;
    const std::size_t n = scene.vertices.size();
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        ConePoint cp;
        cp.id = static_cast<int>(i);
        cp.position = scene.vertices[i];
        cp.interior_angle = interior_angle(scene.vertices, i);
        if (std::abs(cp.interior_angle - kPi) < 1e-9)
            throw DegenerateAngle("interior angle equals pi at vertex " +
                                  std::to_string(i));
        cp.wedge_angle = 2.0 * kPi - cp.interior_angle;
        cp.link_length = 2.0 * cp.wedge_angle;
        out.push_back(cp);
    }
    return out;
}

ValidationReport validate(const Scene& scene) {
    ValidationReport report;
    const auto* p = std::get_if<PolygonScene>(&scene);
    if (!p) {
        report.checks.push_back({"model", CheckStatus::Verified,
                                 "solvable model, assumptions hold by construction"});
        return report;
    }

    const std::size_t n = p->vertices.size();
    bool any_collinear = false;
    for (std::size_t i = 0; i < n && !any_collinear; ++i)
        for (std::size_t j = i + 1; j < n && !any_collinear; ++j)
            for (std::size_t k = j + 1; k < n; ++k)
                if (collinear(p->vertices[i], p->vertices[j], p->vertices[k])) {
                    any_collinear = true;
                    break;
                }

    if (polygon_is_convex(p->vertices)) {
        report.checks.push_back({"nontrapping", CheckStatus::Verified,
                                 "convex polygon exterior is nontrapping"});
    } else if (p->nontrapping_asserted) {
        report.checks.push_back({"nontrapping", CheckStatus::AssertedByUser,
                                 "nonconvex polygon; user asserted nontrapping"});
    } else {
        report.checks.push_back({"nontrapping", CheckStatus::NeedsAssertion,
                                 "nonconvex polygon requires nontrapping_asserted"});
    }

    report.checks.push_back(
        {"no_three_collinear",
         any_collinear ? CheckStatus::Violated : CheckStatus::Verified,
         any_collinear ? "three vertices collinear" : ""});

    report.checks.push_back({"non_conjugacy", CheckStatus::AssertedByUser,
                             "asserted (flat geometry)"});
    return report;
}

}  // namespace conres
