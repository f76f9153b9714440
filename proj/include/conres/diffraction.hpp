#pragma once

#include <complex>

#include "conres/errors.hpp"
#include "conres/geodesics.hpp"

namespace conres {

// Diffraction kernel on a circle link of length rho at separation s.
//
// The half-wave kernel on the link circle has the Abel-regularized
// eigenfunction expansion
//   K(s) = (1/rho) * sum_k e^{-i*pi*2*pi*|k|/rho} e^{2*pi*i*k*s/rho},
// which sums in closed form to
//   K(s) = i*sin(beta) / (rho*(cos(beta) - cos(2*pi*s/rho))),  beta = 2*pi^2/rho.
// Singular exactly on the geometric set s = pi (mod the period).
std::complex<double> diffraction_kernel(double rho, double s);

// Damped spectral partial sum; independent oracle for diffraction_kernel.
std::complex<double> kernel_abel_sum(double rho, double s, double damping,
                                     long kmax);

// Threshold below which |K| counts as an exact kernel zero (cone angles
// 2*pi/k), excluding the junction from SD+.
inline constexpr double kKernelZeroThreshold = 1e-10;

// Tolerance around s = pi: within it a junction is geometric, not strict.
inline constexpr double kGeometricTolerance = 1e-9;

// True iff every junction separation differs from pi by at least the
// geometric tolerance (vacuously true without junctions).
bool is_strictly_diffractive(const DiffractiveChain& chain);

// Product over junctions of |K(rho_i, s_i)|; empty product = 1. The
// closing junction of a closed chain is already part of the chain's
// junction list, so the product has n_gamma factors.
double diffraction_coefficient(const DiffractiveChain& chain);

}  // namespace conres
