#include <doctest.h>

#include <cmath>
#include <numbers>

#include "conres/scene.hpp"

using namespace conres;

namespace {

constexpr double kPi = std::numbers::pi;

PolygonScene make_polygon(std::initializer_list<std::pair<double, double>> pts) {
    PolygonScene s;
    for (const auto& [x, y] : pts) s.vertices.emplace_back(x, y);
    return s;
}

}  // namespace

TEST_CASE("delta_line document maps to typed scene") {
    const auto scene =
        parse_scene(R"({"model":"delta_line","positions":[0,1],"strengths":[1,1]})");
    const auto& line = std::get<DeltaLineScene>(scene);
    CHECK(line.positions == std::vector<double>{0.0, 1.0});
    CHECK(line.strengths == std::vector<double>{1.0, 1.0});
}

TEST_CASE("delta_circle document carries radius, strength and diameter") {
    const auto scene = parse_scene(R"({"model":"delta_circle","R":1.0,"V":5.0})");
    const auto& c = std::get<DeltaCircleScene>(scene);
    CHECK(c.radius == 1.0);
    CHECK(c.strength == 5.0);
    CHECK(c.diameter() == 2.0);
}

TEST_CASE("collinear vertex triple is rejected") {
    CHECK_THROWS_AS(
        parse_scene(R"({"model":"polygon","vertices":[[0,0],[1,0],[2,0],[0,1]]})"),
        InvariantViolation);
}

TEST_CASE("malformed and unknown documents are rejected") {
    CHECK_THROWS_AS(parse_scene("not json"), MalformedDocument);
    CHECK_THROWS_AS(parse_scene(R"([1,2,3])"), MalformedDocument);
    CHECK_THROWS_AS(parse_scene(R"({"model":"frobnicator"})"), UnknownModel);
    CHECK_THROWS_AS(parse_scene(R"({"model":"delta_line","positions":[0,1]})"),
                    MalformedDocument);
    CHECK_THROWS_AS(parse_scene(R"({"model":"delta_circle","R":1.0})"),
                    MalformedDocument);
    CHECK_THROWS_AS(
        parse_scene(R"({"model":"delta_line","positions":[1,0],"strengths":[1,1]})"),
        InvariantViolation);
    CHECK_THROWS_AS(
        parse_scene(R"({"model":"delta_line","positions":[0],"strengths":[0]})"),
        InvariantViolation);
    CHECK_THROWS_AS(parse_scene(R"({"model":"delta_circle","R":-1.0,"V":5.0})"),
                    InvariantViolation);
    // clockwise orientation
    CHECK_THROWS_AS(
        parse_scene(R"({"model":"polygon","vertices":[[0,0],[0,1],[1,0]]})"),
        InvariantViolation);
}

TEST_CASE("parse is the inverse of serialize on valid scenes") {
    const char* docs[] = {
        R"({"model":"delta_line","positions":[0,1],"strengths":[1,1]})",
        R"({"model":"delta_circle","R":1.0,"V":5.0})",
        R"({"model":"polygon","vertices":[[0,0],[4,0],[0,3]],"boundary_condition":"neumann","nontrapping_asserted":true})",
    };
    for (const char* doc : docs) {
        const Scene a = parse_scene(doc);
        const Scene b = parse_scene(serialize_scene(a));
        CHECK(serialize_scene(a) == serialize_scene(b));
    }
}

TEST_CASE("unit square vertices have link length 3*pi") {
    const auto scene = parse_scene(
        R"({"model":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]})");
    const auto cones = cone_points(std::get<PolygonScene>(scene));
    REQUIRE(cones.size() == 4);
    for (const auto& c : cones) {
        CHECK(c.interior_angle == doctest::Approx(kPi / 2).epsilon(1e-12));
        CHECK(c.wedge_angle == doctest::Approx(3 * kPi / 2).epsilon(1e-12));
        CHECK(c.link_length == doctest::Approx(3 * kPi).epsilon(1e-12));
    }
}

TEST_CASE("equilateral triangle vertices have link length 10*pi/3") {
    const auto poly = make_polygon({{0, 0}, {1, 0}, {0.5, std::sqrt(3.0) / 2}});
    const auto cones = cone_points(poly);
    for (const auto& c : cones)
        CHECK(c.link_length == doctest::Approx(10.0 * kPi / 3.0).epsilon(1e-12));
}

TEST_CASE("cone points preserve vertex order and positions") {
    const auto poly = make_polygon({{0, 0}, {4, 0}, {0, 3}});
    const auto cones = cone_points(poly);
    REQUIRE(cones.size() == 3);
    CHECK(cones[0].position == Vec2(0, 0));
    CHECK(cones[1].position == Vec2(4, 0));
    CHECK(cones[2].position == Vec2(0, 3));
    for (int i = 0; i < 3; ++i) CHECK(cones[i].id == i);
}

TEST_CASE("flat vertex is not a cone point") {
    // Vertex 1 sits on the segment 0 -> 2: interior angle exactly pi.
    const auto poly = make_polygon({{0, 0}, {1, 0}, {2, 0}, {0, 1}});
    CHECK_THROWS_AS(cone_points(poly), DegenerateAngle);
}

TEST_CASE("exterior angles of a simple polygon sum to 2*pi") {
    const std::vector<PolygonScene> polys = {
        make_polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}),
        make_polygon({{0, 0}, {4, 0}, {0, 3}}),
        make_polygon({{0, 0}, {2, 0}, {2, 1}, {1.2, 1}, {1.1, 2}, {0, 2}}),
        make_polygon({{0, 0}, {2, 0}, {2, 2}, {1.6, 2}, {1.6, 0.5},
                      {1.4, 0.5}, {1.4, 2}, {0, 2}}),
    };
    for (const auto& p : polys) {
        double sum = 0.0;
        for (const auto& c : cone_points(p)) sum += kPi - c.interior_angle;
        CHECK(sum == doctest::Approx(2 * kPi).epsilon(1e-9));
    }
}

TEST_CASE("convex polygon validates as nontrapping") {
    const auto scene = parse_scene(
        R"({"model":"polygon","vertices":[[0,0],[2,0],[3,1],[1,2]]})");
    const auto report = validate(scene);
    bool found = false;
    for (const auto& c : report.checks)
        if (c.name == "nontrapping") {
            CHECK(c.status == CheckStatus::Verified);
            found = true;
        }
    CHECK(found);
    CHECK_FALSE(report.has_violation());
}

TEST_CASE("nonconvex polygon needs a nontrapping assertion") {
    const auto poly = make_polygon(
        {{0, 0}, {2, 0}, {2, 1}, {1.2, 1}, {1.1, 2}, {0, 2}});
    const auto report = validate(Scene{poly});
    for (const auto& c : report.checks)
        if (c.name == "nontrapping") CHECK(c.status == CheckStatus::NeedsAssertion);

    PolygonScene asserted = poly;
    asserted.nontrapping_asserted = true;
    const auto report2 = validate(Scene{asserted});
    for (const auto& c : report2.checks)
        if (c.name == "nontrapping") CHECK(c.status == CheckStatus::AssertedByUser);
}

TEST_CASE("validation reports a collinear triple as violated") {
    const auto poly = make_polygon({{0, 0}, {1, 0}, {2, 0}, {0, 1}});
    const auto report = validate(Scene{poly});
    bool found = false;
    for (const auto& c : report.checks)
        if (c.name == "no_three_collinear") {
            CHECK(c.status == CheckStatus::Violated);
            found = true;
        }
    CHECK(found);
    CHECK(report.has_violation());
}

TEST_CASE("solvable models validate trivially") {
    const auto scene = parse_scene(R"({"model":"delta_circle","R":1.0,"V":5.0})");
    const auto report = validate(scene);
    CHECK_FALSE(report.has_violation());
}

TEST_CASE("collinearity test is scale free") {
    CHECK(collinear({0, 0}, {1e-9, 0}, {2e-9, 0}));
    CHECK(collinear({0, 0}, {1e9, 1e9}, {2e9, 2e9}));
    CHECK_FALSE(collinear({0, 0}, {1, 0}, {0.5, 0.5}));
}
