#pragma once

#include <cmath>
#include <complex>
#include <cstdlib>

#include <quadmath.h>

#include "conres/errors.hpp"

namespace conres {

// Complex Bessel J_m and Hankel H1_m on the certified domain
//   0 <= m <= 60, |z| <= 120, |Im z| <= 25, Re z > 0 or |z| <= 2.
//
// One templated engine serves two instantiations: double for model
// evaluation and __float128 for the Wronskian certification suite, where
// the identity J*H' - J'*H = 2i/(pi*z) is verified at 1e-10 after scaling
// by pi*z/2. Everything is computed from power series at an anchor (or
// the large-argument expansion of H at |z| >= 42) followed by Taylor
// continuation of Bessel's equation along paths on which the continued
// solution is never recessive, then order recurrences at the target.

struct EvalDomainLimits {
    static constexpr int max_order = 60;
    static constexpr double max_abs = 120.0;
    static constexpr double max_imag = 25.0;
    static constexpr double small_abs = 2.0;  // |z| <= this allows Re z <= 0
};

std::complex<double> bessel_j(int m, std::complex<double> z);
std::complex<double> bessel_j_prime(int m, std::complex<double> z);
std::complex<double> hankel1(int m, std::complex<double> z);
std::complex<double> hankel1_prime(int m, std::complex<double> z);

struct BesselEval {
    std::complex<double> j, jp, h, hp;
};
BesselEval bessel_eval(int m, std::complex<double> z);

// J_m(z) and H1_m(z) only; the cheap entry point for model evaluation.
struct BesselJH {
    std::complex<double> j, h;
};
BesselJH bessel_jh(int m, std::complex<double> z);

namespace specfun {

// ---------------------------------------------------------------------
// Scalar traits
// ---------------------------------------------------------------------

template <class Real>
struct real_ops;

template <>
struct real_ops<double> {
    static double eps() { return 2.220446049250313e-16; }
    static double pi() { return 3.141592653589793238462643383279502884; }
    static double euler_gamma() { return 0.577215664901532860606512090082402431; }
    static double sqrt(double x) { return std::sqrt(x); }
    static double exp(double x) { return std::exp(x); }
    static double log(double x) { return std::log(x); }
    static double sin(double x) { return std::sin(x); }
    static double cos(double x) { return std::cos(x); }
    static double atan2(double y, double x) { return std::atan2(y, x); }
    static double abs(double x) { return std::fabs(x); }
    static double copysign(double x, double y) { return std::copysign(x, y); }
    static double overflow_log() { return 690.0; }
    static double from_double(double x) { return x; }
    static double to_double(double x) { return x; }
};

template <>
struct real_ops<__float128> {
    static __float128 eps() {
        static const __float128 v =
            strtoflt128("1.92592994438723585305597794258492732e-34", nullptr);
        return v;
    }
    static __float128 pi() {
        static const __float128 v = strtoflt128(
            "3.14159265358979323846264338327950288419716939937511", nullptr);
        return v;
    }
    static __float128 euler_gamma() {
        static const __float128 v = strtoflt128(
            "0.57721566490153286060651209008240243104215933593992", nullptr);
        return v;
    }
    static __float128 sqrt(__float128 x) { return sqrtq(x); }
    static __float128 exp(__float128 x) { return expq(x); }
    static __float128 log(__float128 x) { return logq(x); }
    static __float128 sin(__float128 x) { return sinq(x); }
    static __float128 cos(__float128 x) { return cosq(x); }
    static __float128 atan2(__float128 y, __float128 x) { return atan2q(y, x); }
    static __float128 abs(__float128 x) { return fabsq(x); }
    static __float128 copysign(__float128 x, __float128 y) { return copysignq(x, y); }
    static __float128 overflow_log() { return 11000.0; }
    static __float128 from_double(double x) { return x; }
    static double to_double(__float128 x) { return static_cast<double>(x); }
};

// Minimal complex type so the __float128 instantiation does not depend on
// std::complex internals.
template <class Real>
struct Cx {
    Real re{}, im{};

    Cx() = default;
    Cx(Real r, Real i) : re(r), im(i) {}
    explicit Cx(Real r) : re(r), im(Real(0)) {}

    Cx operator+(const Cx& o) const { return {re + o.re, im + o.im}; }
    Cx operator-(const Cx& o) const { return {re - o.re, im - o.im}; }
    Cx operator-() const { return {-re, -im}; }
    Cx operator*(const Cx& o) const {
        return {re * o.re - im * o.im, re * o.im + im * o.re};
    }
    Cx operator*(Real s) const { return {re * s, im * s}; }
    Cx operator/(Real s) const { return {re / s, im / s}; }
    Cx& operator+=(const Cx& o) {
        re += o.re;
        im += o.im;
        return *this;
    }
    Cx& operator-=(const Cx& o) {
        re -= o.re;
        im -= o.im;
        return *this;
    }
    Cx& operator*=(const Cx& o) { return *this = *this * o; }
};

template <class Real>
Cx<Real> cdiv(const Cx<Real>& a, const Cx<Real>& b) {
    const Real n = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
}

template <class Real>
Real cabs(const Cx<Real>& a) {
    using R = real_ops<Real>;
    return R::sqrt(a.re * a.re + a.im * a.im);
}

template <class Real>
Cx<Real> cexp(const Cx<Real>& a) {
    using R = real_ops<Real>;
    const Real m = R::exp(a.re);
    return {m * R::cos(a.im), m * R::sin(a.im)};
}

template <class Real>
Cx<Real> clog(const Cx<Real>& a) {
    using R = real_ops<Real>;
    return {R::log(cabs(a)), R::atan2(a.im, a.re)};
}

template <class Real>
Cx<Real> csqrt(const Cx<Real>& a) {
    using R = real_ops<Real>;
    const Real r = cabs(a);
    if (r == Real(0)) return {Real(0), Real(0)};
    if (a.re >= Real(0)) {
        const Real t = R::sqrt((r + a.re) / Real(2));
        return {t, a.im / (Real(2) * t)};
    }
    const Real t = R::sqrt((r - a.re) / Real(2));
    return {R::abs(a.im) / (Real(2) * t), R::copysign(t, a.im)};
}

// ---------------------------------------------------------------------
// Series at small argument
// ---------------------------------------------------------------------

// Power series for J_mu, valid everywhere; used for |z| <= 8 where
// cancellation stays below ~e^8.
template <class Real>
Cx<Real> j_series(int mu, const Cx<Real>& z) {
    const Cx<Real> half = z * Real(0.5);
    Cx<Real> term{Real(1), Real(0)};
    for (int i = 1; i <= mu; ++i) term = term * half / Real(i);
    const Cx<Real> q = half * half;  // z^2/4
    Cx<Real> sum = term;
    using R = real_ops<Real>;
    const Real tiny = R::eps();
    for (int k = 0; k < 600; ++k) {
        term = -(term * q) / (Real(k + 1) * Real(mu + k + 1));
        sum += term;
        if (cabs(term) <= tiny * cabs(sum) && k > 2) break;
    }
    return sum;
}

// Series with logarithm for Y_n, n in {0, 1}.
template <class Real>
Cx<Real> y_series_01(int n, const Cx<Real>& z) {
    using R = real_ops<Real>;
    const Real pi = R::pi();
    const Real gamma = R::euler_gamma();
    const Cx<Real> half = z * Real(0.5);
    const Cx<Real> q = half * half;

    const Cx<Real> jn = j_series(n, z);
    const Cx<Real> logterm = clog(half) * jn * (Real(2) / pi);

    Cx<Real> finite{Real(0), Real(0)};
    if (n == 1) finite = cdiv(Cx<Real>{Real(2), Real(0)}, z);  // (0)!*(z/2)^{-1}

    // sum_k (-1)^k (psi(k+1)+psi(n+k+1)) (z/2)^{2k+n} / (k! (n+k)!)
    Cx<Real> term{Real(1), Real(0)};
    for (int i = 1; i <= n; ++i) term = term * half / Real(i);
    Real psi_a = -gamma;           // psi(1)
    Real psi_b = -gamma;           // psi(n+1)
    for (int i = 1; i <= n; ++i) psi_b += Real(1) / Real(i);
    Cx<Real> psum = term * (psi_a + psi_b);
    const Real tiny = R::eps();
    for (int k = 0; k < 600; ++k) {
        term = -(term * q) / (Real(k + 1) * Real(n + k + 1));
        psi_a += Real(1) / Real(k + 1);
        psi_b += Real(1) / Real(n + k + 1);
        const Cx<Real> contrib = term * (psi_a + psi_b);
        psum += contrib;
        if (cabs(contrib) <= tiny * cabs(psum) && k > 2) break;
    }
    return logterm - finite * (Real(1) / pi) - psum * (Real(1) / pi);
}

// ---------------------------------------------------------------------
// Large-argument expansion of H1_mu, mu in {0, 1}, |z| >= ~40
// ---------------------------------------------------------------------

template <class Real>
Cx<Real> hankel1_asymptotic(int mu, const Cx<Real>& z) {
    using R = real_ops<Real>;
    const Real pi = R::pi();
    const Cx<Real> inv = cdiv(Cx<Real>{Real(1), Real(0)}, z);
    const Real mu2 = Real(4 * mu * mu);

    Cx<Real> term{Real(1), Real(0)};
    Cx<Real> sum = term;
    Real prev = Real(1);
    for (int k = 1; k <= 200; ++k) {
        const Real odd = Real(2 * k - 1);
        const Real coeff = (mu2 - odd * odd) / (Real(8) * Real(k));
        term = term * inv * coeff;
        term = Cx<Real>{-term.im, term.re};  // times i
        const Real mag = cabs(term);
        if (mag >= prev) break;  // divergent tail reached
        sum += term;
        prev = mag;
        if (mag <= R::eps() * cabs(sum)) break;
    }

    const Cx<Real> pref = csqrt(cdiv(Cx<Real>{Real(2) / pi, Real(0)}, z));
    const Real shift = Real(mu) * pi / Real(2) + pi / Real(4);
    const Cx<Real> phase = cexp(Cx<Real>{-z.im, z.re - shift});  // e^{i(z-shift)}
    return pref * phase * sum;
}

// ---------------------------------------------------------------------
// Taylor continuation of z^2 w'' + z w' + (z^2 - mu^2) w = 0
// ---------------------------------------------------------------------

template <class Real>
struct OdeState {
    Cx<Real> w, wp;
};

// One Taylor step from a to a+h. The recurrence runs on coefficients of
// w(a+s); the polynomial ODE coefficients keep it O(1) per term.
template <class Real>
OdeState<Real> taylor_step(int mu, const Cx<Real>& a, const OdeState<Real>& s,
                           const Cx<Real>& h) {
    using R = real_ops<Real>;
    constexpr int kMax = 200;
    Cx<Real> c[kMax + 3];
    c[0] = s.w;
    c[1] = s.wp;

    const Cx<Real> p0 = a * a;
    const Cx<Real> p1 = a * Real(2);
    const Cx<Real> q0 = a;
    const Cx<Real> r0 = a * a - Cx<Real>{Real(mu * mu), Real(0)};
    const Cx<Real> r1 = p1;

    Cx<Real> w{Real(0), Real(0)}, wp{Real(0), Real(0)};
    Cx<Real> hpow{Real(1), Real(0)};
    const Real tiny = R::eps();
    int quiet = 0;
    for (int k = 0;; ++k) {
        // coefficient c[k+2]
        Cx<Real> rhs = p1 * (Real(k + 1) * Real(k)) * c[k + 1] +
                       c[k] * Real(k * (k - 1)) + q0 * Real(k + 1) * c[k + 1] +
                       c[k] * Real(k) + r0 * c[k];
        if (k >= 1) rhs += r1 * c[k - 1];
        if (k >= 2) rhs += c[k - 2];
        c[k + 2] = cdiv(-rhs, p0 * (Real(k + 2) * Real(k + 1)));

        const Cx<Real> contrib = c[k] * hpow;
        w += contrib;
        wp += c[k + 1] * hpow * Real(k + 1);
        hpow *= h;

        if (k > 4 && cabs(contrib) <= tiny * cabs(w))
            ++quiet;
        else
            quiet = 0;
        if (quiet >= 3 || k >= kMax) break;
    }
    return {w, wp};
}

template <class Real>
OdeState<Real> continue_along(int mu, Cx<Real> a, OdeState<Real> s,
                              const Cx<Real>& b) {
    using R = real_ops<Real>;
    for (;;) {
        const Cx<Real> d = b - a;
        const Real dist = cabs(d);
        if (dist == Real(0)) return s;
        Real hmax = Real(0.35) * cabs(a);
        if (hmax > Real(3)) hmax = Real(3);
        const Real step = dist < hmax ? dist : hmax;
        const Cx<Real> h = d * (step / dist);
        s = taylor_step(mu, a, s, h);
        a += h;
        if (!(cabs(s.w) < Real(1) / R::eps() / R::eps())) {
            // keep going; overflow is caught by the caller's guards
        }
        if (step == dist) return s;
    }
}

// ---------------------------------------------------------------------
// Full evaluation
// ---------------------------------------------------------------------

template <class Real>
struct EvalT {
    Cx<Real> j, jp, h, hp;
};

template <class Real>
void check_domain(int m, const Cx<Real>& z, bool need_hankel) {
    using R = real_ops<Real>;
    if (m < 0 || m > EvalDomainLimits::max_order)
        throw DomainExceeded("order outside [0, 60]");
    const double az = R::to_double(cabs(z));
    const double iz = R::to_double(R::abs(z.im));
    if (az > EvalDomainLimits::max_abs || iz > EvalDomainLimits::max_imag)
        throw DomainExceeded("argument outside certified region");
    if (!(R::to_double(z.re) > 0.0) && az > EvalDomainLimits::small_abs)
        throw DomainExceeded("Re z <= 0 with |z| not small");
    if (need_hankel) {
        if (az == 0.0) throw DomainExceeded("Hankel function singular at z = 0");
        if (R::to_double(z.im) == 0.0 && R::to_double(z.re) <= 0.0)
            throw BranchCut("z on the branch cut (-inf, 0]");
        // upward recurrence magnitude guard
        if (m >= 2) {
            const double est = std::lgamma(static_cast<double>(m)) +
                               m * std::log(2.0 / az);
            if (est > R::to_double(R::overflow_log()))
                throw DomainExceeded("H_m overflows at this (m, z)");
        }
    }
}

// J_mu via series or stable path continuation, single order.
template <class Real>
Cx<Real> j_order(int mu, const Cx<Real>& z) {
    const bool neg = mu < 0;
    const int n = neg ? -mu : mu;
    Cx<Real> v;
    if (real_ops<Real>::to_double(cabs(z)) <= 8.0) {
        v = j_series(n, z);
    } else {
        const Cx<Real> anchor{Real(8), Real(0)};
        OdeState<Real> s;
        s.w = j_series(n, anchor);
        const Cx<Real> jm1 = j_series(n >= 1 ? n - 1 : 1, anchor) *
                             Real(n >= 1 ? 1 : -1);
        const Cx<Real> jp1 = j_series(n + 1, anchor);
        s.wp = (jm1 - jp1) * Real(0.5);
        // vertical leg first (J grows away from the real axis), then
        // horizontal (neutral oscillatory regime)
        const Cx<Real> corner{Real(8), z.im};
        s = continue_along(n, anchor, s, corner);
        s = continue_along(n, corner, s, z);
        v = s.w;
    }
    if (neg && (n % 2 == 1)) v = -v;
    return v;
}

// H1 at orders 0 and 1.
template <class Real>
void h01(const Cx<Real>& z, Cx<Real>& h0, Cx<Real>& h1) {
    using R = real_ops<Real>;
    const double az = R::to_double(cabs(z));
    const double imz = R::to_double(z.im);

    if (az <= 2.0) {
        const Cx<Real> j0 = j_series(0, z);
        const Cx<Real> j1 = j_series(1, z);
        const Cx<Real> y0 = y_series_01(0, z);
        const Cx<Real> y1 = y_series_01(1, z);
        h0 = {j0.re - y0.im, j0.im + y0.re};
        h1 = {j1.re - y1.im, j1.im + y1.re};
        return;
    }
    if (az >= 42.0) {
        h0 = hankel1_asymptotic(0, z);
        h1 = hankel1_asymptotic(1, z);
        return;
    }
    if (imz > 0.0 && az > 18.0) {
        // H1 is recessive here; anchor on the |z| = 42 circle at the same
        // height and walk horizontally (|H1| stays level along the leg).
        const Real re_a = R::sqrt(Real(42 * 42) - z.im * z.im);
        const Cx<Real> a{re_a, z.im};
        Cx<Real> a0 = hankel1_asymptotic(0, a);
        Cx<Real> a1 = hankel1_asymptotic(1, a);
        OdeState<Real> s0{a0, -a1};
        OdeState<Real> s1{a1, a0 - cdiv(a1, a)};
        h0 = continue_along(0, a, s0, z).w;
        h1 = continue_along(1, a, s1, z).w;
        return;
    }

    // Real anchor, vertical leg, horizontal leg.
    Real xa = z.re;
    if (R::to_double(xa) > 8.0) xa = Real(8);
    const Cx<Real> anchor{xa, Real(0)};
    const Cx<Real> j0 = j_series(0, anchor);
    const Cx<Real> j1 = j_series(1, anchor);
    const Cx<Real> y0 = y_series_01(0, anchor);
    const Cx<Real> y1 = y_series_01(1, anchor);
    Cx<Real> a0{j0.re - y0.im, j0.im + y0.re};
    Cx<Real> a1{j1.re - y1.im, j1.im + y1.re};
    OdeState<Real> s0{a0, -a1};
    OdeState<Real> s1{a1, a0 - cdiv(a1, anchor)};
    const Cx<Real> corner{xa, z.im};
    s0 = continue_along(0, anchor, s0, corner);
    s1 = continue_along(1, anchor, s1, corner);
    s0 = continue_along(0, corner, s0, z);
    s1 = continue_along(1, corner, s1, z);
    h0 = s0.w;
    h1 = s1.w;
}

// H1 at orders up to n+1 by upward recurrence (stable: H1 is dominant in
// increasing order).
template <class Real>
void h_orders(const Cx<Real>& z, int n, Cx<Real>& hm1, Cx<Real>& hm,
              Cx<Real>& hp1) {
    Cx<Real> h0, h1;
    h01(z, h0, h1);
    if (n == 0) {
        hm1 = -h1;
        hm = h0;
        hp1 = h1;
        return;
    }
    Cx<Real> prev = h0, cur = h1;
    for (int k = 1; k < n; ++k) {
        const Cx<Real> next = cdiv(cur * Real(2 * k), z) - prev;
        prev = cur;
        cur = next;
    }
    hm1 = prev;
    hm = cur;
    hp1 = cdiv(cur * Real(2 * n), z) - prev;
}

template <class Real>
EvalT<Real> eval(int m, const Cx<Real>& z) {
    check_domain(m, z, true);
    EvalT<Real> out;
    const Cx<Real> jm1 = j_order(m - 1, z);
    out.j = j_order(m, z);
    const Cx<Real> jp1 = j_order(m + 1, z);
    out.jp = (jm1 - jp1) * Real(0.5);
    Cx<Real> hm1, hm, hp1;
    h_orders(z, m, hm1, hm, hp1);
    out.h = hm;
    out.hp = (hm1 - hp1) * Real(0.5);
    return out;
}

}  // namespace specfun
}  // namespace conres
