#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include "conres/models.hpp"
#include "conres/specfun.hpp"

using namespace conres;

namespace {

constexpr double kPi = std::numbers::pi;

DeltaLineScene line_scene(std::vector<double> xs, std::vector<double> cs) {
    DeltaLineScene s;
    s.positions = std::move(xs);
    s.strengths = std::move(cs);
    return s;
}

// Two-delta resonance condition, c1 = c2 = c at spacing L = 1:
// e^{2iλ} = (2iλ/c - 1)^2, split into the two square-root branches.
Cd branch_fn(int sign, double c, Cd lam) {
    return std::exp(Cd(0, 1) * lam) - double(sign) * (2.0 * Cd(0, 1) * lam / c - 1.0);
}

Cd branch_dfn(int sign, double c, Cd lam) {
    return Cd(0, 1) * std::exp(Cd(0, 1) * lam) - double(sign) * 2.0 * Cd(0, 1) / c;
}

// Newton from a seed grid on each branch; the surviving converged points
// inside the box are the oracle resonance set.
std::vector<Cd> two_delta_oracle(double c, const SearchBox& box) {
    std::vector<Cd> roots;
    for (int sign : {+1, -1}) {
        for (double re = box.re_lo; re <= box.re_hi; re += 0.25) {
            for (double im = box.im_lo; im <= box.im_hi; im += 0.25) {
                Cd z(re, im);
                bool ok = false;
                for (int it = 0; it < 80; ++it) {
                    const Cd step = branch_fn(sign, c, z) / branch_dfn(sign, c, z);
                    z -= step;
                    if (std::abs(step) < 1e-13) {
                        ok = true;
                        break;
                    }
                }
                if (!ok || std::abs(branch_fn(sign, c, z)) > 1e-10) continue;
                if (z.real() < box.re_lo - 1e-9 || z.real() > box.re_hi + 1e-9 ||
                    z.imag() < box.im_lo - 1e-9 || z.imag() > box.im_hi + 1e-9)
                    continue;
                bool dup = false;
                for (const Cd& r : roots)
                    if (std::abs(r - z) < 1e-6) dup = true;
                if (!dup) roots.push_back(z);
            }
        }
    }
    std::sort(roots.begin(), roots.end(), [](Cd a, Cd b) {
        return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
    });
    return roots;
}

// Fourth-order integration of the m = 0 radial equation
//   u'' + u'/r + λ² u = 0
// from near the origin, with the delta-shell jump u' += V u at r = R.
struct RadialState {
    Cd u, up;
};

RadialState integrate_radial(Cd lam, double V, double R, double r_end) {
    const double r0 = 1e-3;
    const Cd lr = lam * r0;
    RadialState s;
    s.u = 1.0 - lr * lr / 4.0 + lr * lr * lr * lr / 64.0;
    s.up = -lam * lam * r0 / 2.0 + lam * lam * lam * lam * r0 * r0 * r0 / 16.0;

    auto rhs = [lam](double r, const RadialState& y) {
        return RadialState{y.up, -y.up / r - lam * lam * y.u};
    };
    auto step = [&](double r, double h, RadialState y) {
        const auto k1 = rhs(r, y);
        const auto k2 = rhs(r + h / 2, {y.u + h / 2 * k1.u, y.up + h / 2 * k1.up});
        const auto k3 = rhs(r + h / 2, {y.u + h / 2 * k2.u, y.up + h / 2 * k2.up});
        const auto k4 = rhs(r + h, {y.u + h * k3.u, y.up + h * k3.up});
        y.u += h / 6 * (k1.u + 2.0 * k2.u + 2.0 * k3.u + k4.u);
        y.up += h / 6 * (k1.up + 2.0 * k2.up + 2.0 * k3.up + k4.up);
        return y;
    };

    const int n1 = 4000;
    double r = r0;
    const double h1 = (R - r0) / n1;
    for (int i = 0; i < n1; ++i, r += h1) s = step(r, h1, s);
    s.up += V * s.u;  // delta shell
    const int n2 = 4000;
    const double h2 = (r_end - R) / n2;
    r = R;
    for (int i = 0; i < n2; ++i, r += h2) s = step(r, h2, s);
    return s;
}

}  // namespace

TEST_CASE("one-delta determinant has the explicit closed form") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 30; ++trial) {
        const double c = u(rng) + 3.5;  // keep away from c = 0
        const double x = u(rng);
        const Cd lam(u(rng), u(rng) - 3.5);
        const auto scene = line_scene({x}, {c});
        const Cd expect = 2.0 * Cd(0, 1) * lam - c;
        CHECK(std::abs(delta_line_determinant(scene, lam) - expect) <
              1e-12 * std::abs(expect));
    }
}

TEST_CASE("one-delta resonance sits at minus i c over two") {
    const Scene attract{line_scene({0.0}, {-2.0})};
    const auto up = find_resonances(attract, {-1, 1, 0.5, 1.5});
    REQUIRE(up.size() == 1);
    CHECK(std::abs(up[0].lambda - Cd(0, 1)) < 1e-10);
    CHECK(up[0].multiplicity == 1);
    CHECK(up[0].model_tag == "delta_line");

    const Scene repel{line_scene({0.0}, {2.0})};
    const auto down = find_resonances(repel, {-1, 1, -1.5, -0.5});
    REQUIRE(down.size() == 1);
    CHECK(std::abs(down[0].lambda - Cd(0, -1)) < 1e-10);
}

TEST_CASE("zero strength scatters nothing") {
    const auto scene = line_scene({0.0}, {0.0});
    for (const Cd lam : {Cd(1, -1), Cd(5, 0.3), Cd(-2, 2)}) {
        const Cd norm = delta_line_determinant(scene, lam) / (2.0 * Cd(0, 1) * lam);
        CHECK(std::abs(norm - 1.0) < 1e-14);
    }
    CHECK(find_resonances(Scene{scene}, {1, 5, -5, -1}).empty());
}

TEST_CASE("determinant is undefined at zero frequency") {
    CHECK_THROWS_AS(delta_line_determinant(line_scene({0.0}, {1.0}), Cd(0, 0)),
                    ZeroFrequency);
}

TEST_CASE("two deltas match an independent per-branch solver") {
    const Scene scene{line_scene({0.0, 1.0}, {1.0, 1.0})};
    const SearchBox box{2, 30, -6, 0};
    const auto found = find_resonances(scene, box);
    const auto oracle = two_delta_oracle(1.0, box);

    REQUIRE(found.size() == oracle.size());
    for (std::size_t i = 0; i < found.size(); ++i) {
        CHECK(std::abs(found[i].lambda - oracle[i]) < 1e-8);
        CHECK(found[i].multiplicity == 1);
        CHECK(found[i].residual < 1e-10);
    }
}

TEST_CASE("line resonances are symmetric under reflection of the real part") {
    const Scene scene{line_scene({0.0, 1.0}, {1.0, 1.0})};
    const auto right = find_resonances(scene, {2, 12, -4, -0.2});
    const auto left = find_resonances(scene, {-12, -2, -4, -0.2});
    REQUIRE(!right.empty());
    REQUIRE(right.size() == left.size());
    for (std::size_t i = 0; i < right.size(); ++i) {
        const Cd mirrored = -std::conj(left[left.size() - 1 - i].lambda);
        CHECK(std::abs(right[i].lambda - mirrored) < 1e-8);
    }
}

TEST_CASE("transparent shell has no resonances") {
    DeltaCircleScene circ;
    circ.radius = 1.0;
    circ.strength = 0.0;
    for (const Cd lam : {Cd(3, -1), Cd(10, -2)})
        CHECK(std::abs(delta_circle_mode_function(circ, 2, lam) - 1.0) < 1e-14);
    ResonanceSearchOptions opt;
    opt.mode_max = 3;
    CHECK(find_resonances(Scene{circ}, {1, 8, -3, -0.2}, opt).empty());
}

TEST_CASE("shell mode zero checked against direct radial integration") {
    DeltaCircleScene circ;
    circ.radius = 1.0;
    circ.strength = 5.0;
    ResonanceSearchOptions opt;
    opt.mode_max = 0;
    const auto found = find_resonances(Scene{circ}, {0.5, 39.5, -3, -0.05}, opt);
    REQUIRE(!found.empty());

    for (const auto& r : found) {
        CHECK(r.residual < 1e-8);
        CHECK(r.mode_index == 0);
        CHECK(r.model_tag == "delta_circle");
    }

    // For a resonance the interior solution continues across the shell
    // onto a purely outgoing wave, so the ratio u(r2)/u(r1) outside must
    // match the ratio of outgoing Hankel values.
    const Cd lam = found.front().lambda;
    const double r1 = 1.5, r2 = 2.0;
    const auto a = integrate_radial(lam, circ.strength, circ.radius, r1);
    const auto b = integrate_radial(lam, circ.strength, circ.radius, r2);
    const Cd got = b.u / a.u;
    const Cd want = hankel1(0, lam * r2) / hankel1(0, lam * r1);
    CHECK(std::abs(got - want) < 1e-5 * std::abs(want));
}

TEST_CASE("no shell resonances off the axis in the upper half plane") {
    DeltaCircleScene circ;
    circ.radius = 1.0;
    circ.strength = -5.0;
    ResonanceSearchOptions opt;
    opt.mode_max = 5;
    CHECK(find_resonances(Scene{circ}, {0.5, 10, 0.1, 3}, opt).empty());
}

TEST_CASE("reported roots are already converged") {
    const Scene scene{line_scene({0.0, 1.0}, {1.0, 1.0})};
    const auto& line = std::get<DeltaLineScene>(scene);
    const auto found = find_resonances(scene, {2, 10, -4, -0.2});
    REQUIRE(!found.empty());
    const HolomorphicFn f = [&line](Cd z) {
        return delta_line_determinant(line, z) / std::pow(2.0 * Cd(0, 1) * z, 2.0);
    };
    for (const auto& r : found) {
        const Cd polished = newton_polish(f, r.lambda, 1e-13);
        CHECK(std::abs(polished - r.lambda) < 1e-9);
    }
}

TEST_CASE("search boxes outside the certified region are rejected") {
    DeltaCircleScene circ;
    circ.radius = 1.0;
    circ.strength = 5.0;
    ResonanceSearchOptions opt;
    opt.mode_max = 21;
    CHECK_THROWS_AS(find_resonances(Scene{circ}, {1, 5, -2, -0.2}, opt),
                    DomainExceeded);
    opt.mode_max = 5;
    CHECK_THROWS_AS(find_resonances(Scene{circ}, {30, 45, -1, -0.1}, opt),
                    DomainExceeded);
}

TEST_CASE("search boxes must keep clear of zero and the cut") {
    const Scene line{line_scene({0.0}, {1.0})};
    CHECK_THROWS_AS(find_resonances(line, {-0.5, 0.5, -0.05, 0.05}),
                    ContourThroughZero);

    DeltaCircleScene circ;
    circ.radius = 1.0;
    circ.strength = 5.0;
    CHECK_THROWS_AS(find_resonances(Scene{circ}, {-5, -2, -0.05, 0.05}),
                    ContourThroughZero);
}
