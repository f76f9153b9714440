#pragma once

#include <complex>
#include <string>
#include <vector>

#include "conres/rootfind.hpp"
#include "conres/scene.hpp"

namespace conres {

struct Resonance {
    std::complex<double> lambda;
    int multiplicity = 1;
    double residual = 0.0;       // |f(lambda)| at the reported root
    std::string model_tag;       // "delta_line" or "delta_circle"
    int mode_index = 0;          // circle model only; 0 for the line
    bool merged_cluster = false;
};

// Entire function whose zeros (with multiplicity) are the resonances of
// the delta-comb on the line. The transfer matrix across a delta of
// strength c at x is
//   M(λ) = I + (c/2iλ) [[1, e^{-2iλx}], [-e^{2iλx}, -1]],
// and D(λ) = (M_n···M_1)_{22} kills the incoming coefficient. Each factor
// is multiplied by 2iλ here so the product is entire; the zero sets agree
// away from λ = 0.
std::complex<double> delta_line_determinant(const DeltaLineScene& scene,
                                            std::complex<double> lambda);

// Modal resonance condition for the delta shell on the circle:
//   F_m(λ) = 1 + (iπRV/2) J_m(λR) H1_m(λR),
// holomorphic on the cut plane; zeros are the resonances of angular mode m.
std::complex<double> delta_circle_mode_function(const DeltaCircleScene& scene,
                                                int m, std::complex<double> lambda);

struct ResonanceSearchOptions {
    double tol = 1e-10;
    int mode_max = 20;            // circle model: modes 0..mode_max
    unsigned long long seed = 0;  // box-perturbation generator
    int threads = 1;              // worker pool size across modes/sub-boxes
};

// All resonances of the scene's model inside the box, polished to
// residual < tol, deterministically ordered by (Re λ, Im λ, mode).
// The box must keep a margin of 0.1 from λ = 0 and (for the circle
// model) from the branch cut (-inf, 0].
std::vector<Resonance> find_resonances(const Scene& scene, const SearchBox& box,
                                       const ResonanceSearchOptions& opt = {});

}  // namespace conres
