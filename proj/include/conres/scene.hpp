#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "conres/errors.hpp"

namespace conres {

using Vec2 = Eigen::Vector2d;

enum class BoundaryCondition { Dirichlet, Neumann };

// A vertex of a polygon exterior viewed as a conic singularity of the
// doubled surface. The link circle has length rho = 2 * (2*pi - alpha).
struct ConePoint {
    int id = 0;
    Vec2 position = Vec2::Zero();
    double interior_angle = 0.0;   // alpha, radians
    double wedge_angle = 0.0;      // w = 2*pi - alpha
    double link_length = 0.0;      // rho = 2*w
};

struct PolygonScene {
    std::vector<Vec2> vertices;  // counterclockwise
    BoundaryCondition boundary_condition = BoundaryCondition::Dirichlet;
    bool nontrapping_asserted = false;
};

struct DeltaLineScene {
    std::vector<double> positions;  // strictly increasing
    std::vector<double> strengths;  // nonzero
};

struct DeltaCircleScene {
    double radius = 0.0;
    double strength = 0.0;
    double diameter() const { return 2.0 * radius; }
};

using Scene = std::variant<PolygonScene, DeltaLineScene, DeltaCircleScene>;

enum class CheckStatus { Verified, AssertedByUser, NeedsAssertion, Violated };

struct ValidationCheck {
    std::string name;
    CheckStatus status;
    std::string details;
};

struct ValidationReport {
    std::vector<ValidationCheck> checks;
    bool has_violation() const {
        for (const auto& c : checks)
            if (c.status == CheckStatus::Violated) return true;
        return false;
    }
};

// Parses a UTF-8 JSON scene document. Throws MalformedDocument,
// UnknownModel or InvariantViolation.
Scene parse_scene(const std::string& text);

// Inverse of parse_scene on valid scenes (round-trip identity).
std::string serialize_scene(const Scene& scene);

// One cone point per vertex, in vertex order. Throws DegenerateAngle when
// an interior angle equals pi within 1e-9 rad.
std::vector<ConePoint> cone_points(const PolygonScene& scene);

ValidationReport validate(const Scene& scene);

// Scale-free collinearity test: triangle area < 1e-12 * bounding-box area.
bool collinear(const Vec2& a, const Vec2& b, const Vec2& c);

bool polygon_is_simple(const std::vector<Vec2>& vertices);
bool polygon_is_convex(const std::vector<Vec2>& vertices);
double signed_area(const std::vector<Vec2>& vertices);

// Interior angle at vertex i of a counterclockwise simple polygon.
double interior_angle(const std::vector<Vec2>& vertices, std::size_t i);

}  // namespace conres
