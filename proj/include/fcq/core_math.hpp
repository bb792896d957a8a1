#ifndef FCQ_CORE_MATH_HPP
#define FCQ_CORE_MATH_HPP

#include <stdexcept>
#include <vector>

#include "fcq/precision.hpp"

namespace fcq {

// (rho, theta) coordinates on the confocal ellipse E_rho: the image of the
// circle |u| = rho under z = (u + 1/u)/2.  Foci at +-1, semi-axes
// (rho +- 1/rho)/2.
struct EllipseCoord {
    Real rho;
    Real theta;
};

// Degree n rule with node multiplicity 2s; degree of exactness n(2s+1)-1.
struct RuleParams {
    long n;
    long s;

    RuleParams(long n_, long s_) : n(n_), s(s_) {
        if (n < 1 || s < 1) throw std::invalid_argument("RuleParams: require n >= 1 and s >= 1");
    }
};

// a_j(rho) = (rho^j + rho^-j)/2.
inline Real cosh_coeff(const Real& rho, long j, const PrecisionContext& ctx) {
    if (!(rho > 0)) throw std::invalid_argument("cosh_coeff: rho must be positive");
    Real p = pow_si(rho, j);
    (void)ctx;
    return mul_2si(p + 1L / p, -1);
}

// Square root of z^2 - 1 on the branch analytic off [-1,1] with
// z + sqrt(z^2-1) exterior to the unit circle.  This branch choice is
// inherited by every multivalued formula downstream.
inline Complex sqrt_z2m1_exterior(const Complex& z, const PrecisionContext& ctx) {
    Complex one(Real(1L, ctx), Real(0L, ctx));
    return sqrt(z - one) * sqrt(z + one);
}

// u = z + sqrt(z^2-1), |u| > 1 for z off [-1,1].
inline Complex exterior_map(const Complex& z, const PrecisionContext& ctx) {
    return z + sqrt_z2m1_exterior(z, ctx);
}

inline bool on_cut_interval(const Complex& z) {
    return z.im.is_zero() && abs(z.re) <= 1L;
}

namespace detail {
// Recurrence/u-form switch point.  Below it the three-term recurrence is
// stable; above it the u-form avoids the recurrence's cancellation growth.
inline constexpr double kChebyshevUFormThreshold = 2.0;
}  // namespace detail

// T_n(z) for complex z.
inline Complex chebyshev_T(long n, const Complex& z, const PrecisionContext& ctx) {
    if (n < 0) throw std::invalid_argument("chebyshev_T: n must be >= 0");
    Real zero(0L, ctx);
    Real one(1L, ctx);
    if (n == 0) return Complex(one, zero);
    if (abs(z) > Real(detail::kChebyshevUFormThreshold, ctx)) {
        Complex u = exterior_map(z, ctx);
        Complex s = pow_ui(u, (unsigned long)n);
        s += inverse(s);
        return {mul_2si(s.re, -1), mul_2si(s.im, -1)};
    }
    Complex tkm1(one, zero);
    Complex tk = z;
    for (long k = 1; k < n; ++k) {
        Complex t = z * tk;
        Complex next(mul_2si(t.re, 1) - tkm1.re, mul_2si(t.im, 1) - tkm1.im);
        tkm1 = tk;
        tk = next;
    }
    return tk;
}

// T_n(x) for real x.
inline Real chebyshev_T(long n, const Real& x, const PrecisionContext& ctx) {
    if (n < 0) throw std::invalid_argument("chebyshev_T: n must be >= 0");
    Real one(1L, ctx);
    if (n == 0) return one;
    if (abs(x) > Real(detail::kChebyshevUFormThreshold, ctx)) {
        Real w = sqrt(x * x - one);
        Real u = x.sign() > 0 ? x + w : x - w;
        Real un = pow_si(u, n);
        return mul_2si(un + one / un, -1);
    }
    Real tkm1 = one;
    Real tk = x;
    for (long k = 1; k < n; ++k) {
        Real next = mul_2si(x * tk, 1) - tkm1;
        tkm1 = tk;
        tk = next;
    }
    return tk;
}

// Zeros of T_n: cos((2v-1)pi/(2n)), v = 1..n, decreasing.
inline std::vector<Real> chebyshev_nodes(long n, const PrecisionContext& ctx) {
    if (n < 1) throw std::invalid_argument("chebyshev_nodes: n must be >= 1");
    Real pi = Real::pi(ctx);
    std::vector<Real> nodes;
    nodes.reserve(n);
    for (long v = 1; v <= n; ++v)
        nodes.push_back(cos(pi * Real(2 * v - 1, ctx) / Real(2 * n, ctx)));
    return nodes;
}

// Point z = (u + 1/u)/2 with u = rho e^{i theta}.
inline Complex ellipse_point(const EllipseCoord& c, const PrecisionContext& ctx) {
    if (c.rho < 1L) throw std::invalid_argument("ellipse_point: rho must be >= 1");
    Complex u = Complex::polar(c.rho, c.theta);
    (void)ctx;
    Complex r = u + inverse(u);
    return {mul_2si(r.re, -1), mul_2si(r.im, -1)};
}

// Upper estimate of the circumference of E_rho:
// 2 pi a1 (1 - a1^-2/4 - 3 a1^-4/64 - 5 a1^-6/256).
inline Real ellipse_length_upper(const Real& rho, const PrecisionContext& ctx) {
    if (!(rho > 1L)) throw std::invalid_argument("ellipse_length_upper: rho must be > 1");
    Real a1 = cosh_coeff(rho, 1, ctx);
    Real ia2 = 1L / (a1 * a1);
    Real corr = Real(1L, ctx) - ia2 / Real(4L, ctx) - Real(3L, ctx) * ia2 * ia2 / Real(64L, ctx) -
                Real(5L, ctx) * ia2 * ia2 * ia2 / Real(256L, ctx);
    return mul_2si(Real::pi(ctx) * a1 * corr, 1);
}

}  // namespace fcq

#endif
