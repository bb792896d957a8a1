#ifndef FCQ_REMAINDER_KERNEL_HPP
#define FCQ_REMAINDER_KERNEL_HPP

#include <utility>
#include <vector>

#include "fcq/core_math.hpp"
#include "fcq/integrate.hpp"
#include "fcq/poly_exact.hpp"

namespace fcq {

namespace detail {
inline void reject_degenerate_rho(const Real& rho, const PrecisionContext& ctx,
                                  const char* where) {
    if (!(rho > 1L)) throw std::invalid_argument(std::string(where) + ": rho must be > 1");
    if (rho - 1L < Real::pow2(-(ctx.bits / 4), ctx))
        throw PrecisionError(std::string(where) +
                             ": rho too close to 1 for the working precision");
}
}  // namespace detail

// rho_{n,s}(z) = Integral_{-1}^{1} w(t) T_n(t)^{2s+1} / (z - t) dt
//             = (pi / (2^{2s} sqrt(z^2-1))) sum_{k=0}^{s} C(2s+1,k) v^{(2s+1-2k)n},
// v = 1/(z + sqrt(z^2-1)) on the exterior branch (|v| < 1).
inline Complex rho_ns(const Complex& z, const RuleParams& params, const PrecisionContext& ctx) {
    if (on_cut_interval(z)) throw std::invalid_argument("rho_ns: z must lie off [-1,1]");
    long s = params.s;
    Complex w = sqrt_z2m1_exterior(z, ctx);
    Complex v = inverse(z + w);
    Complex sum(ctx);
    for (long k = 0; k <= s; ++k) {
        Real c = to_real(binom((unsigned long)(2 * s + 1), (unsigned long)k), ctx);
        sum += pow_ui(v, (unsigned long)((2 * s + 1 - 2 * k) * params.n)) * c;
    }
    Complex out = sum / w;
    Real scale = mul_2si(Real::pi(ctx), -(int)(2 * s));
    return out * scale;
}

// K_{n,s}(z) = rho_{n,s}(z) / T_n(z)^{2s}.
inline Complex kernel_value(const Complex& z, const RuleParams& params,
                            const PrecisionContext& ctx) {
    if (on_cut_interval(z)) throw std::invalid_argument("kernel_value: z must lie off [-1,1]");
    Complex tn = chebyshev_T(params.n, z, ctx);
    Real t_abs = abs(tn);
    if (t_abs.is_zero() || t_abs < Real::pow2(-4 * ctx.bits, ctx))
        throw PrecisionError("kernel_value: T_n(z) underflows the working precision");
    return rho_ns(z, params, ctx) / pow_ui(tn, (unsigned long)(2 * params.s));
}

// The a, b, c decomposition of |K_{n,s}|^2 on E_rho, together with their
// theta = 0 values A, B, C.
struct KernelModulusParts {
    Real a, b, c;
    Real A, B, C;
};

inline KernelModulusParts kernel_parts(const EllipseCoord& coord, const RuleParams& params,
                                       const PrecisionContext& ctx) {
    detail::reject_degenerate_rho(coord.rho, ctx, "kernel_parts");
    long n = params.n, s = params.s;
    Real are(ctx), aim(ctx), sqrtA(ctx);
    for (long k = 0; k <= s; ++k) {
        Real coeff = to_real(binom((unsigned long)(2 * s + 1), (unsigned long)k), ctx) *
                     pow_si(coord.rho, 2 * n * k);
        Real sn(ctx), cs(ctx);
        sin_cos(sn, cs, Real(2 * n * k, ctx) * coord.theta);
        are += coeff * cs;
        aim += coeff * sn;
        sqrtA += coeff;
    }
    KernelModulusParts parts{
        are * are + aim * aim,
        cosh_coeff(coord.rho, 2, ctx) - cos(mul_2si(coord.theta, 1)),
        cosh_coeff(coord.rho, 2 * n, ctx) + cos(Real(2 * n, ctx) * coord.theta),
        sqrtA * sqrtA,
        cosh_coeff(coord.rho, 2, ctx) - 1L,
        cosh_coeff(coord.rho, 2 * n, ctx) + 1L,
    };
    return parts;
}

// |K_{n,s}(z)|^2 = pi^2 / (2^{2s-1} rho^{2(2s+1)n}) * a / (b c^{2s}).
inline Real kernel_abs2(const EllipseCoord& coord, const RuleParams& params,
                        const PrecisionContext& ctx) {
    KernelModulusParts p = kernel_parts(coord, params, ctx);
    long s = params.s;
    Real pi = Real::pi(ctx);
    Real front = mul_2si(pi * pi, -(int)(2 * s - 1));
    return front / pow_si(coord.rho, 2 * (2 * s + 1) * params.n) * p.a / (p.b * pow_si(p.c, 2 * s));
}

inline long default_theta_grid(const RuleParams& params) {
    // |K|^2 oscillates with frequency up to 2ns in theta; oversample by 4
    // before golden refinement.
    return 8 * params.n * (2 * params.s + 1);
}

struct KernelMax {
    Real theta_star;
    Real max_abs;
    bool theta0_is_grid_max;  // no grid point beats theta = 0
};

// Max of |K_{n,s}| over E_rho: uniform theta scan on [0, pi] (evenness in
// theta halves the domain), then golden-section refinement of the best cell.
inline KernelMax kernel_max_on_ellipse(const Real& rho, const RuleParams& params, long grid_size,
                                       const PrecisionContext& ctx) {
    if (grid_size < 4 * params.n * (2 * params.s + 1))
        throw std::invalid_argument("kernel_max_on_ellipse: grid_size below 4n(2s+1)");
    detail::reject_degenerate_rho(rho, ctx, "kernel_max_on_ellipse");
    Real pi = Real::pi(ctx);
    auto f = [&](const Real& theta) { return kernel_abs2({rho, theta}, params, ctx); };

    long best = 0;
    Real best_val = f(Real(0L, ctx));
    Real val0 = best_val;
    for (long i = 1; i <= grid_size; ++i) {
        Real v = f(pi * Real(i, ctx) / Real(grid_size, ctx));
        if (v > best_val) {
            best_val = v;
            best = i;
        }
    }

    Real lo = pi * Real(std::max(0L, best - 1), ctx) / Real(grid_size, ctx);
    Real hi = pi * Real(std::min(grid_size, best + 1), ctx) / Real(grid_size, ctx);
    Real inv_phi = mul_2si(sqrt(Real(5L, ctx)) - 1L, -1);
    Real c = hi - inv_phi * (hi - lo);
    Real d = lo + inv_phi * (hi - lo);
    Real fc = f(c), fd = f(d);
    Real tol = Real::pow2(-ctx.bits / 2, ctx);
    while (hi - lo > tol) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    Real theta = mul_2si(lo + hi, -1);
    Real v = f(theta);
    bool at_zero = best == 0;
    if (at_zero && !(v > val0 * (1L + Real::pow2(-ctx.bits / 2, ctx)))) {
        theta = Real(0L, ctx);
        v = val0;
    }
    return {theta, sqrt(v), at_zero};
}

inline KernelMax kernel_max_on_ellipse(const Real& rho, const RuleParams& params,
                                       const PrecisionContext& ctx) {
    return kernel_max_on_ellipse(rho, params, default_theta_grid(params), ctx);
}

// L_{n,s}(E_rho) = (1/2pi) Contour|K||dz|
//               = (1/(2^s rho^{(2s+1)n})) Integral_0^pi sqrt(a)/c^s dtheta,
// by adaptive Gauss-Legendre panels split at the 2n oscillation nodes of c.
inline Real kernel_l1_norm_numeric(const Real& rho, const RuleParams& params,
                                   const PrecisionContext& ctx, const Real& rel_tol) {
    detail::reject_degenerate_rho(rho, ctx, "kernel_l1_norm_numeric");
    long n = params.n, s = params.s;
    Real pi = Real::pi(ctx);
    auto g = [&](const Real& theta) {
        KernelModulusParts p = kernel_parts({rho, theta}, params, ctx);
        return sqrt(p.a) / pow_si(p.c, s);
    };
    std::vector<Real> panels;
    panels.reserve((std::size_t)(2 * n + 1));
    for (long j = 0; j <= 2 * n; ++j) panels.push_back(pi * Real(j, ctx) / Real(2 * n, ctx));
    Real integral = adaptive_integrate(g, panels, rel_tol, ctx);
    return mul_2si(integral, -(int)s) / pow_si(rho, (2 * s + 1) * n);
}

inline Real kernel_l1_norm_numeric(const Real& rho, const RuleParams& params,
                                   const PrecisionContext& ctx) {
    return kernel_l1_norm_numeric(rho, params, ctx, Real::pow2(-ctx.bits / 2, ctx));
}

}  // namespace fcq

#endif
