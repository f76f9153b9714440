#include "conres/models.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <numbers>
#include <random>
#include <thread>

#include "conres/specfun.hpp"

namespace conres {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kBoxMargin = 0.1;     // clearance from λ=0 and the cut
constexpr double kCircleArgCap = 40.0; // |λR| cap inside the certified domain
constexpr double kTileWidth = 10.0;    // sub-box width for wide searches

double box_distance_to_origin(const SearchBox& b) {
    const double dx = std::max({b.re_lo, 0.0, -b.re_hi});
    const double dy = std::max({b.im_lo, 0.0, -b.im_hi});
    return std::hypot(dx, dy);
}

double box_distance_to_cut(const SearchBox& b) {
    // Half line {Im = 0, Re <= 0}.
    const double dy = std::max({b.im_lo, 0.0, -b.im_hi});
    if (b.re_lo <= 0.0) return dy;  // overlaps the cut's Re range
    return std::hypot(b.re_lo, dy);
}

std::vector<LocatedRoot> locate_with_retries(const HolomorphicFn& f,
                                             const SearchBox& box,
                                             const RootfindOptions& opt,
                                             std::mt19937_64& rng) {
    SearchBox b = box;
    for (int attempt = 0;; ++attempt) {
        try {
            return subdivide_and_locate(f, b, opt);
        } catch (const ZeroOnContour&) {
            if (attempt >= 5) throw;
            std::uniform_real_distribution<double> u(-1e-4, 1e-4);
            b = box;
            const double sx = u(rng) * box.width();
            const double sy = u(rng) * box.height();
            b.re_lo += sx;
            b.re_hi += sx;
            b.im_lo += sy;
            b.im_hi += sy;
        }
    }
}

// Split a wide box into vertical tiles so subdivision depth stays small
// and tiles can run on the worker pool.
std::vector<SearchBox> tile_box(const SearchBox& box) {
    std::vector<SearchBox> tiles;
    const int n = std::max(1, static_cast<int>(std::ceil(box.width() / kTileWidth)));
    for (int i = 0; i < n; ++i) {
        SearchBox t = box;
        t.re_lo = box.re_lo + box.width() * i / n;
        t.re_hi = box.re_lo + box.width() * (i + 1) / n;
        tiles.push_back(t);
    }
    return tiles;
}

struct Task {
    SearchBox box;
    int mode = 0;
};

std::vector<Resonance> run_tasks(
    const std::vector<Task>& tasks, const ResonanceSearchOptions& opt,
    const std::string& tag,
    const std::function<HolomorphicFn(int mode)>& make_fn) {
    RootfindOptions ropt;
    ropt.tol = opt.tol;
    ropt.seed = opt.seed;

    std::vector<std::vector<Resonance>> slots(tasks.size());
    std::vector<std::exception_ptr> errors(tasks.size());
    std::atomic<std::size_t> next{0};

    auto worker = [&]() {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            try {
                // Independent generator per task keeps results identical
                // regardless of scheduling.
                std::mt19937_64 rng(opt.seed ^ (0x9e3779b97f4a7c15ull * (i + 1)));
                const HolomorphicFn f = make_fn(tasks[i].mode);
                const auto roots = locate_with_retries(f, tasks[i].box, ropt, rng);
                for (const auto& r : roots) {
                    Resonance res;
                    res.lambda = r.root;
                    res.multiplicity = r.multiplicity;
                    res.residual = r.residual;
                    res.model_tag = tag;
                    res.mode_index = tasks[i].mode;
                    res.merged_cluster = r.merged_cluster;
                    slots[i].push_back(res);
                }
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const int nthreads = std::max(1, opt.threads);
    if (nthreads == 1 || tasks.size() <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    std::vector<Resonance> all;
    for (const auto& s : slots) all.insert(all.end(), s.begin(), s.end());

    std::sort(all.begin(), all.end(), [](const Resonance& a, const Resonance& b) {
        if (a.lambda.real() != b.lambda.real())
            return a.lambda.real() < b.lambda.real();
        if (a.lambda.imag() != b.lambda.imag())
            return a.lambda.imag() < b.lambda.imag();
        return a.mode_index < b.mode_index;
    });

    // Tiles share edges; collapse duplicates straddling a cut line.
    std::vector<Resonance> merged;
    for (const auto& r : all) {
        if (!merged.empty() && merged.back().mode_index == r.mode_index &&
            std::abs(merged.back().lambda - r.lambda) < 1e-6) {
            merged.back().residual = std::max(merged.back().residual, r.residual);
            merged.back().merged_cluster = true;
        } else {
            merged.push_back(r);
        }
    }
    return merged;
}

}  // namespace

std::complex<double> delta_line_determinant(const DeltaLineScene& scene,
                                            std::complex<double> lambda) {
    if (lambda == std::complex<double>(0.0, 0.0))
        throw ZeroFrequency("determinant undefined at λ = 0");

    using Eigen::Matrix2cd;
    const std::complex<double> two_i_lambda = 2.0 * std::complex<double>(0.0, 1.0) * lambda;
    Matrix2cd prod = Matrix2cd::Identity();
    bool first = true;
    for (std::size_t j = 0; j < scene.positions.size(); ++j) {
        const double x = scene.positions[j];
        const double c = scene.strengths[j];
        const std::complex<double> down = std::exp(-two_i_lambda * x);
        const std::complex<double> up = std::exp(two_i_lambda * x);
        Matrix2cd m;
        m << two_i_lambda + c, c * down, -c * up, two_i_lambda - c;
        prod = first ? m : Matrix2cd(m * prod);
        first = false;
    }
    if (first) return {1.0, 0.0};  // no deltas: free line
    return prod(1, 1);
}

std::complex<double> delta_circle_mode_function(const DeltaCircleScene& scene,
                                                int m, std::complex<double> lambda) {
    const std::complex<double> z = lambda * scene.radius;
    const auto jh = bessel_jh(m, z);
    const std::complex<double> factor(0.0, kPi * scene.radius * scene.strength / 2.0);
    return 1.0 + factor * jh.j * jh.h;
}

std::vector<Resonance> find_resonances(const Scene& scene, const SearchBox& box,
                                       const ResonanceSearchOptions& opt) {
    if (!(box.re_hi > box.re_lo && box.im_hi > box.im_lo))
        throw InvariantViolation("search box is degenerate");
    if (box_distance_to_origin(box) < kBoxMargin)
        throw ContourThroughZero("box comes within 0.1 of λ = 0");

    if (std::holds_alternative<DeltaLineScene>(scene)) {
        const auto& line = std::get<DeltaLineScene>(scene);
        std::vector<Task> tasks;
        for (const auto& t : tile_box(box)) tasks.push_back({t, 0});
        // Search on the determinant normalized by (2iλ)^n: identical zeros
        // and winding on boxes clear of λ = 0, but O(1) values, so the
        // residual target is meaningful at high frequency.
        const int n = static_cast<int>(line.positions.size());
        return run_tasks(tasks, opt, "delta_line", [&line, n](int) -> HolomorphicFn {
            return [&line, n](Cd z) {
                const Cd scale = std::pow(2.0 * Cd(0.0, 1.0) * z,
                                          static_cast<double>(n));
                return delta_line_determinant(line, z) / scale;
            };
        });
    }

    if (std::holds_alternative<DeltaCircleScene>(scene)) {
        const auto& circ = std::get<DeltaCircleScene>(scene);
        if (box_distance_to_cut(box) < kBoxMargin)
            throw ContourThroughZero("box comes within 0.1 of the branch cut");
        if (opt.mode_max < 0 || opt.mode_max > 20)
            throw DomainExceeded("circle model caps the mode index at 20");
        const double corner =
            std::hypot(std::max(std::abs(box.re_lo), std::abs(box.re_hi)),
                       std::max(std::abs(box.im_lo), std::abs(box.im_hi)));
        if (corner * circ.radius > kCircleArgCap)
            throw DomainExceeded("|λR| exceeds 40 inside the search box");

        std::vector<Task> tasks;
        for (int m = 0; m <= opt.mode_max; ++m)
            for (const auto& t : tile_box(box)) tasks.push_back({t, m});
        return run_tasks(tasks, opt, "delta_circle",
                         [&circ](int m) -> HolomorphicFn {
                             return [&circ, m](Cd z) {
                                 return delta_circle_mode_function(circ, m, z);
                             };
                         });
    }

    throw UnknownModel("resonance computation requires a delta model scene");
}

}  // namespace conres
