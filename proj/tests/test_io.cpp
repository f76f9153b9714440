#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "conres/io.hpp"

using namespace conres;

namespace {

Resonance res(double re, double im, int mult = 1, const std::string& tag = "delta_line",
              int mode = 0, double residual = 1e-12) {
    Resonance r;
    r.lambda = {re, im};
    r.multiplicity = mult;
    r.model_tag = tag;
    r.mode_index = mode;
    r.residual = residual;
    return r;
}

}  // namespace

TEST_CASE("17 significant digits round-trip every double") {
    const double values[] = {0.1,    1.0 / 3.0, 1e300, 5e-324,
                             -0.25,  -1e-17,    0.0,   123456.789};
    for (double v : values) {
        const std::string s = format_double(v);
        // strtod instead of stod: stod throws on subnormals like 5e-324.
        CHECK(std::strtod(s.c_str(), nullptr) == v);
    }
}

TEST_CASE("resonance CSV round trip is exact") {
    const std::vector<Resonance> in = {
        res(1.0 / 3.0, -0.1, 1, "delta_line", 0, 1e-13),
        res(5.25, -2.0 / 7.0, 2, "delta_circle", 7, 3e-11),
        res(-17.125, -1e-5, 1, "delta_circle", 0, 0.0),
    };
    const auto out = resonances_from_csv(resonances_to_csv(in));
    REQUIRE(out.size() == in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        CHECK(out[i].lambda == in[i].lambda);
        CHECK(out[i].multiplicity == in[i].multiplicity);
        CHECK(out[i].model_tag == in[i].model_tag);
        CHECK(out[i].mode_index == in[i].mode_index);
        CHECK(out[i].residual == in[i].residual);
    }
}

TEST_CASE("resonance CSV header and rows are validated") {
    CHECK_THROWS_AS(resonances_from_csv(""), MalformedDocument);
    CHECK_THROWS_AS(resonances_from_csv("re,im\n1,2\n"), MalformedDocument);
    const std::string header = "model,mode,re_lambda,im_lambda,multiplicity,residual\n";
    CHECK_THROWS_AS(resonances_from_csv(header + "delta_line,0,1,2\n"),
                    MalformedDocument);
    CHECK_THROWS_AS(resonances_from_csv(header + "delta_line,0,1,-1,0,1e-12\n"),
                    MalformedDocument);  // nonpositive multiplicity
    CHECK_THROWS_AS(resonances_from_csv(header + "delta_line,0,oops,-1,1,1e-12\n"),
                    MalformedDocument);
    CHECK_THROWS_AS(resonances_from_csv(header + "delta_line,0,1.5x,-1,1,1e-12\n"),
                    MalformedDocument);
    CHECK(resonances_from_csv(header).empty());
}

TEST_CASE("Windows line endings are tolerated") {
    const std::string text =
        "model,mode,re_lambda,im_lambda,multiplicity,residual\r\n"
        "delta_line,0,1.5,-0.25,1,1e-12\r\n";
    const auto out = resonances_from_csv(text);
    REQUIRE(out.size() == 1);
    CHECK(out[0].lambda == std::complex<double>(1.5, -0.25));
}

TEST_CASE("segment CSV lists reflections and both angles") {
    GeodesicSegment straight;
    straight.from_cone = 0;
    straight.to_cone = 2;
    straight.length = 5.0;
    straight.arrival_angle = 0.75;
    straight.departure_angle = 1.5;

    GeodesicSegment bounced = straight;
    bounced.reflection_edges = {1, 3, 2};

    const std::string csv = segments_to_csv({straight, bounced});
    std::istringstream in(csv);
    std::string line;
    std::getline(in, line);
    CHECK(line == "from,to,length,reflections,theta_in,theta_out");
    std::getline(in, line);
    CHECK(line == "0,2,5,,0.75,1.5");
    std::getline(in, line);
    CHECK(line == "0,2,5,1;3;2,0.75,1.5");
}

TEST_CASE("kernel and trace tables carry the documented headers") {
    KernelSample k;
    k.rho = 4.0;
    k.s = 0.5;
    k.value = {0.0, -0.125};
    const std::string kcsv = kernel_table_to_csv({k});
    CHECK(kcsv == "rho,s,re,im\n4,0.5,0,-0.125\n");

    const std::string tcsv = trace_to_csv({1.0}, {{0.6, -0.8}});
    CHECK(tcsv == "t,abs_s\n1,1\n");

    CHECK_THROWS_AS(trace_to_csv({1.0, 2.0}, {{0, 0}}), InvariantViolation);
}

TEST_CASE("chains serialize as id arrays") {
    CHECK(chain_ids_to_json({1, 2, 3}) == "[1,2,3]");
    CHECK(chain_ids_to_json({}) == "[]");
}
