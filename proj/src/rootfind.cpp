#include "conres/rootfind.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace conres {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<Cd> contour_points(const SearchBox& b, int per_side) {
    std::vector<Cd> pts;
    pts.reserve(4 * per_side);
    for (int i = 0; i < per_side; ++i) {
        const double t = static_cast<double>(i) / per_side;
        pts.emplace_back(b.re_lo + t * b.width(), b.im_lo);
    }
    for (int i = 0; i < per_side; ++i) {
        const double t = static_cast<double>(i) / per_side;
        pts.emplace_back(b.re_hi, b.im_lo + t * b.height());
    }
    for (int i = 0; i < per_side; ++i) {
        const double t = static_cast<double>(i) / per_side;
        pts.emplace_back(b.re_hi - t * b.width(), b.im_hi);
    }
    for (int i = 0; i < per_side; ++i) {
        const double t = static_cast<double>(i) / per_side;
        pts.emplace_back(b.re_lo, b.im_hi - t * b.height());
    }
    return pts;
}

// Raw accumulated-phase winding at a fixed sampling density.
double raw_winding(const HolomorphicFn& f, const SearchBox& b, int per_side) {
    const auto pts = contour_points(b, per_side);
    std::vector<Cd> vals(pts.size());
    for (std::size_t k = 0; k < pts.size(); ++k) {
        vals[k] = f(pts[k]);
        if (!std::isfinite(vals[k].real()) || !std::isfinite(vals[k].imag()))
            throw NumericalError("non-finite function value on contour");
        if (vals[k] == Cd(0.0, 0.0))
            throw ZeroOnContour("exact zero on contour sample");
    }
    double total = 0.0;
    for (std::size_t k = 0; k < vals.size(); ++k) {
        const Cd ratio = vals[(k + 1) % vals.size()] / vals[k];
        total += std::arg(ratio);  // each step forced into (-pi, pi]
    }
    return total / (2.0 * kPi);
}

struct SubdivideState {
    const HolomorphicFn* f = nullptr;
    RootfindOptions opt;
    std::mt19937_64 rng;
    std::vector<LocatedRoot> found;
};

void subdivide(SubdivideState& st, const SearchBox& box, int winding, int depth) {
    if (winding == 0) return;
    if (depth > st.opt.max_depth)
        throw DepthExceeded("subdivision exceeded max depth");

    if (box.diameter() < st.opt.cell_diameter) {
        LocatedRoot r;
        r.root = newton_polish(*st.f, box.center(), st.opt.tol);
        r.multiplicity = winding;
        r.residual = std::abs((*st.f)(r.root));
        st.found.push_back(r);
        return;
    }

    // Quadrisect; nudge the split lines if a zero sits on them.
    for (int attempt = 0;; ++attempt) {
        std::uniform_real_distribution<double> u(-1e-4, 1e-4);
        const double sx = attempt == 0 ? 0.0 : u(st.rng);
        const double sy = attempt == 0 ? 0.0 : u(st.rng);
        const double mx = 0.5 * (box.re_lo + box.re_hi) + sx * box.width();
        const double my = 0.5 * (box.im_lo + box.im_hi) + sy * box.height();
        SearchBox kids[4] = {
            {box.re_lo, mx, box.im_lo, my},
            {mx, box.re_hi, box.im_lo, my},
            {box.re_lo, mx, my, box.im_hi},
            {mx, box.re_hi, my, box.im_hi},
        };
        int w[4];
        int total = 0;
        try {
            for (int k = 0; k < 4; ++k) {
                w[k] = winding_number(*st.f, kids[k], st.opt);
                total += w[k];
            }
        } catch (const ZeroOnContour&) {
            if (attempt >= 5) throw;
            continue;
        }
        if (total != winding) {
            // Sampling artifact: children must conserve the parent count.
            if (attempt >= 5)
                throw NumericalError("winding conservation failure in subdivision");
            continue;
        }
        for (int k = 0; k < 4; ++k) subdivide(st, kids[k], w[k], depth + 1);
        return;
    }
}

}  // namespace

double SearchBox::diameter() const {
    return std::hypot(width(), height());
}

int winding_number(const HolomorphicFn& f, const SearchBox& box,
                   const RootfindOptions& opt) {
    if (!(box.re_hi > box.re_lo && box.im_hi > box.im_lo))
        throw InvariantViolation("search box is degenerate");

    int per_side = opt.samples_per_side;
    int prev = std::numeric_limits<int>::min();
    bool have_prev = false;
    for (int depth = 0; depth <= opt.max_quadrature_depth; ++depth) {
        const double raw = raw_winding(f, box, per_side);
        const int rounded = static_cast<int>(std::lround(raw));
        const bool near_integer = std::abs(raw - rounded) < 0.25;
        if (near_integer && have_prev && rounded == prev) return rounded;
        if (near_integer) {
            prev = rounded;
            have_prev = true;
        } else {
            have_prev = false;
        }
        per_side *= 2;
    }
    throw NonConvergentQuadrature("winding did not stabilize after depth " +
                                  std::to_string(opt.max_quadrature_depth));
}

Cd newton_polish(const HolomorphicFn& f, Cd z0, double tol,
                 const HolomorphicFn* df, int max_iters) {
    Cd z = z0;
    Cd best = z0;
    double best_val = std::abs(f(z0));
    for (int it = 0; it < max_iters; ++it) {
        const Cd fz = f(z);
        const double mag = std::abs(fz);
        if (mag < best_val) {
            best = z;
            best_val = mag;
        }
        if (mag < tol) return z;
        Cd deriv;
        if (df) {
            deriv = (*df)(z);
        } else {
            const double h = 1e-6 * (1.0 + std::abs(z));
            deriv = (f(z + h) - f(z - h)) / (2.0 * h);
        }
        if (deriv == Cd(0.0, 0.0)) break;
        z -= fz / deriv;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) break;
    }
    if (best_val < tol) return best;
    throw NoConvergence("newton_polish stalled at |f| = " +
                        std::to_string(best_val));
}

std::vector<LocatedRoot> subdivide_and_locate(const HolomorphicFn& f,
                                              const SearchBox& box,
                                              const RootfindOptions& opt) {
    SubdivideState st;
    st.f = &f;
    st.opt = opt;
    st.rng.seed(opt.seed);

    const int total = winding_number(f, box, opt);
    subdivide(st, box, total, 0);

    std::sort(st.found.begin(), st.found.end(),
              [](const LocatedRoot& a, const LocatedRoot& b) {
                  if (a.root.real() != b.root.real())
                      return a.root.real() < b.root.real();
                  return a.root.imag() < b.root.imag();
              });

    // Merge clusters closer than the merge distance.
    std::vector<LocatedRoot> merged;
    for (const auto& r : st.found) {
        if (!merged.empty() &&
            std::abs(merged.back().root - r.root) < opt.merge_distance) {
            merged.back().multiplicity += r.multiplicity;
            merged.back().residual = std::max(merged.back().residual, r.residual);
            merged.back().merged_cluster = true;
        } else {
            merged.push_back(r);
        }
    }
    return merged;
}

}  // namespace conres
