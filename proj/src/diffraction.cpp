#include "conres/diffraction.hpp"

#include <cmath>
#include <numbers>

namespace conres {

namespace {
constexpr double kPi = std::numbers::pi;
}

std::complex<double> diffraction_kernel(double rho, double s) {
    if (!(rho > 0.0)) throw InvariantViolation("rho must be positive");
    if (s < 0.0 || s > rho / 2.0 + 1e-12)
        throw AngleOutOfRange("separation must lie in [0, rho/2]");
    if (std::abs(s - kPi) < kGeometricTolerance)
        throw GeometricSingularity("kernel singular at the geometric separation s = pi");

    const double beta = 2.0 * kPi * kPi / rho;
    const double denom = std::cos(beta) - std::cos(2.0 * kPi * s / rho);
    if (std::abs(denom) <= 1e-12)
        throw GeometricSingularity("kernel denominator vanishes (geometric relation)");
    return std::complex<double>(0.0, std::sin(beta) / (rho * denom));
}

std::complex<double> kernel_abel_sum(double rho, double s, double damping,
                                     long kmax) {
    if (!(rho > 0.0)) throw InvariantViolation("rho must be positive");
    if (!(damping > 0.0 && damping < 1.0))
        throw InvariantViolation("damping must lie in (0,1)");
    if (kmax < 1) throw InvariantViolation("kmax must be >= 1");

    const double nu_step = 2.0 * kPi / rho;  // eigenvalue of nu at k=1
    std::complex<double> sum(1.0, 0.0);      // k = 0 term
    double r_pow = 1.0;
    for (long k = 1; k <= kmax; ++k) {
        r_pow *= damping;
        const std::complex<double> phase =
            std::exp(std::complex<double>(0.0, -kPi * nu_step * k));
        // +k and -k terms combine into a cosine in s.
        sum += 2.0 * r_pow * phase * std::cos(2.0 * kPi * k * s / rho);
    }
    return sum / rho;
}

bool is_strictly_diffractive(const DiffractiveChain& chain) {
    for (double s : chain.link_separations)
        if (std::abs(s - kPi) < kGeometricTolerance) return false;
    return true;
}

double diffraction_coefficient(const DiffractiveChain& chain) {
    if (!is_strictly_diffractive(chain))
        throw NotStrictlyDiffractive("chain has a geometric junction");
    double product = 1.0;
    for (std::size_t i = 0; i < chain.link_separations.size(); ++i)
        product *= std::abs(
            diffraction_kernel(chain.junction_rhos[i], chain.link_separations[i]));
    return product;
}

}  // namespace conres
