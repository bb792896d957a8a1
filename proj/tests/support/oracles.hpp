// Independent oracles used by the unit and acceptance suites.  Everything
// here recomputes its target quantity through a route the library does not
// use: brute-force contour quadrature, exact polynomial division, or
// numeric series fitting.
#ifndef FCQ_TESTS_ORACLES_HPP
#define FCQ_TESTS_ORACLES_HPP

#include <functional>
#include <vector>

#include "fcq/core_math.hpp"
#include "fcq/integrate.hpp"
#include "fcq/poly_exact.hpp"

namespace fcq::oracles {

// Arc length of E_rho: integral of |dz/dtheta| = sqrt(a_2 - cos 2theta)/sqrt(2).
inline Real ellipse_perimeter(const Real& rho, const PrecisionContext& ctx, const Real& rel_tol) {
    Real a2 = cosh_coeff(rho, 2, ctx);
    auto f = [&](const Real& theta) { return sqrt(a2 - cos(mul_2si(theta, 1))); };
    Real pi = Real::pi(ctx);
    std::vector<Real> panels{Real(0L, ctx), mul_2si(pi, -1), pi, pi + mul_2si(pi, -1),
                             mul_2si(pi, 1)};
    return adaptive_integrate(f, panels, rel_tol, ctx) / sqrt(Real(2L, ctx));
}

// rho_{n,s}(z) for real z > 1 straight from the defining integral,
// Integral_0^pi cos(n t)^{2s+1} / (z - cos t) dt.
inline Real rho_ns_defining_integral(const Real& z, long n, long s, const PrecisionContext& ctx,
                                     const Real& rel_tol) {
    auto f = [&](const Real& theta) {
        return pow_si(cos(Real(n, ctx) * theta), 2 * s + 1) / (z - cos(theta));
    };
    Real pi = Real::pi(ctx);
    std::vector<Real> panels;
    for (long j = 0; j <= 2 * n; ++j) panels.push_back(pi * Real(j, ctx) / Real(2 * n, ctx));
    return adaptive_integrate(f, panels, rel_tol, ctx);
}

// Fourier fit of the coefficient of u^{-p} in g(u) on |u| = rho:
// (1/2pi) Integral_0^{2pi} g(rho e^{i theta}) rho^p e^{i p theta} dtheta
// by the periodic trapezoid rule (exact up to aliasing at rho^{-N}).
inline Complex u_series_coefficient(const std::function<Complex(const Complex&)>& g, long p,
                                    const Real& rho, long samples, const PrecisionContext& ctx) {
    Complex acc(ctx);
    Real pi = Real::pi(ctx);
    for (long j = 0; j < samples; ++j) {
        Real theta = mul_2si(pi, 1) * Real(j, ctx) / Real(samples, ctx);
        Complex u = Complex::polar(rho, theta);
        Complex phase = Complex::polar(pow_si(rho, p), Real(p, ctx) * theta);
        acc += g(u) * phase;
    }
    return acc / Real(samples, ctx);
}

// Exact quadrature remainder R_{n,s}(T_N) as a rational multiple of pi.
// Route: divide T_N by T_n^{2s}; the division remainder IS the Hermite
// interpolant at the multiplicity-2s Chebyshev zeros, so
//   R(T_N) = Integral (T_N - H) T_n w = Integral q T_n^{2s+1} w
// expands through cos-power moments.  All arithmetic exact.
inline Rat quadrature_remainder_over_pi(long N, long n, long s) {
    QPoly tN = chebyshev_T_poly((unsigned long)N);
    QPoly tn = chebyshev_T_poly((unsigned long)n);
    QPoly divisor = QPoly::constant(Rat(1));
    for (long i = 0; i < 2 * s; ++i) divisor = divisor * tn;
    auto [q, rem] = divrem(tN, divisor);
    (void)rem;
    std::vector<Rat> qc = power_to_chebyshev(q);
    // T_n^{2s+1} = 4^{-s} sum_k C(2s+1,k) T_{(2s+1-2k)n}; Integral T_j T_M w = (pi/2) delta_jM
    Rat acc(0);
    for (long k = 0; k <= s; ++k) {
        std::size_t idx = (std::size_t)((2 * s + 1 - 2 * k) * n);
        if (idx < qc.size()) acc += Rat(binom((unsigned long)(2 * s + 1), (unsigned long)k)) * qc[idx];
    }
    acc /= 2;
    mpq_div_2exp(acc.get_mpq_t(), acc.get_mpq_t(), (unsigned long)(2 * s));
    return acc;
}

}  // namespace fcq::oracles

#endif
