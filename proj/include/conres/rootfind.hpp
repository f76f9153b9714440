#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "conres/errors.hpp"

namespace conres {

using Cd = std::complex<double>;
using HolomorphicFn = std::function<Cd(Cd)>;

struct SearchBox {
    double re_lo = 0.0, re_hi = 0.0;
    double im_lo = 0.0, im_hi = 0.0;

    double width() const { return re_hi - re_lo; }
    double height() const { return im_hi - im_lo; }
    double diameter() const;
    Cd center() const { return {0.5 * (re_lo + re_hi), 0.5 * (im_lo + im_hi)}; }
};

struct RootfindOptions {
    int samples_per_side = 64;     // initial quadrature density, doubled on demand
    int max_quadrature_depth = 16; // doublings before NonConvergentQuadrature
    double cell_diameter = 1e-3;   // subdivision stops below this
    double tol = 1e-10;            // Newton polish target |f|
    int max_depth = 64;            // subdivision depth limit
    double merge_distance = 1e-6;  // roots closer than this are merged
    unsigned long long seed = 0;   // contour-perturbation generator seed
};

struct LocatedRoot {
    Cd root;
    int multiplicity = 1;
    double residual = 0.0;
    bool merged_cluster = false;
};

// Number of zeros of f inside the box, with multiplicity, via accumulated
// phase of contour samples (each step forced into (-pi, pi]). Refines by
// doubling the sample count until the raw value is within 0.25 of an
// integer and stable. Throws ZeroOnContour / NonConvergentQuadrature.
int winding_number(const HolomorphicFn& f, const SearchBox& box,
                   const RootfindOptions& opt = {});

// Bisect boxes of positive winding until small, then Newton-polish.
// Total multiplicity equals the top-level winding number; child windings
// sum to the parent winding at every level.
std::vector<LocatedRoot> subdivide_and_locate(const HolomorphicFn& f,
                                              const SearchBox& box,
                                              const RootfindOptions& opt = {});

// Newton iteration; derivative by central difference with step
// h = 1e-6*(1+|z|) unless an analytic derivative is supplied.
Cd newton_polish(const HolomorphicFn& f, Cd z0, double tol,
                 const HolomorphicFn* df = nullptr, int max_iters = 50);

}  // namespace conres
