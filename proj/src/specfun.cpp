#include "conres/specfun.hpp"

namespace conres {

namespace {

using specfun::Cx;

Cx<double> to_cx(std::complex<double> z) { return {z.real(), z.imag()}; }
std::complex<double> from_cx(Cx<double> z) { return {z.re, z.im}; }

}  // namespace

BesselEval bessel_eval(int m, std::complex<double> z) {
    const auto e = specfun::eval<double>(m, to_cx(z));
    return {from_cx(e.j), from_cx(e.jp), from_cx(e.h), from_cx(e.hp)};
}

std::complex<double> bessel_j(int m, std::complex<double> z) {
    // J is entire with J_m(-z) = (-1)^m J_m(z); fold the left half plane
    // onto the certified right half.
    if (z.real() < 0.0 && std::abs(z) > EvalDomainLimits::small_abs)
        return (m % 2 ? -1.0 : 1.0) * bessel_j(m, -z);
    specfun::check_domain<double>(m, to_cx(z), false);
    return from_cx(specfun::j_order<double>(m, to_cx(z)));
}

std::complex<double> bessel_j_prime(int m, std::complex<double> z) {
    // d/dz J_m(-z) parity: (-1)^{m+1} J_m'(z) evaluated at the mirror.
    if (z.real() < 0.0 && std::abs(z) > EvalDomainLimits::small_abs)
        return (m % 2 ? 1.0 : -1.0) * bessel_j_prime(m, -z);
    specfun::check_domain<double>(m, to_cx(z), false);
    const auto jm1 = specfun::j_order<double>(m - 1, to_cx(z));
    const auto jp1 = specfun::j_order<double>(m + 1, to_cx(z));
    return from_cx((jm1 - jp1) * 0.5);
}

std::complex<double> hankel1(int m, std::complex<double> z) {
    specfun::check_domain<double>(m, to_cx(z), true);
    Cx<double> hm1, hm, hp1;
    specfun::h_orders<double>(to_cx(z), m, hm1, hm, hp1);
    return from_cx(hm);
}

std::complex<double> hankel1_prime(int m, std::complex<double> z) {
    specfun::check_domain<double>(m, to_cx(z), true);
    Cx<double> hm1, hm, hp1;
    specfun::h_orders<double>(to_cx(z), m, hm1, hm, hp1);
    return from_cx((hm1 - hp1) * 0.5);
}

BesselJH bessel_jh(int m, std::complex<double> z) {
    specfun::check_domain<double>(m, to_cx(z), true);
    BesselJH out;
    out.j = from_cx(specfun::j_order<double>(m, to_cx(z)));
    Cx<double> hm1, hm, hp1;
    specfun::h_orders<double>(to_cx(z), m, hm1, hm, hp1);
    out.h = from_cx(hm);
    return out;
}

}  // namespace conres
