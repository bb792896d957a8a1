#ifndef FCQ_REFERENCE_ORACLE_HPP
#define FCQ_REFERENCE_ORACLE_HPP

#include <cstddef>

#include "fcq/hermite_rule.hpp"
#include "fcq/integrand.hpp"

namespace fcq {

// I(f) = Integral_{-1}^{1} f(t) T_n(t) / sqrt(1-t^2) dt by Gauss-Chebyshev
// discretization (pi/N) sum f(t_k) T_n(t_k), t_k = cos((2k-1)pi/2N).
// N doubles until two successive values agree to 2^{-bits+16} relative;
// convergence is geometric for f analytic in a neighbourhood of [-1,1].
// The sum cancels down from the magnitude of its terms when the integral is
// tiny (large n); a second pass with precision sized to the observed
// cancellation keeps the relative target reachable.
inline Real reference_integral(const Integrand& f, long n, const PrecisionContext& ctx,
                               std::size_t initial_nodes = 0) {
    if (n < 1) throw std::invalid_argument("reference_integral: n must be >= 1");
    long extra = 32;
    for (int attempt = 0;; ++attempt) {
        PrecisionContext work = ctx.boosted(extra);
        Real pi = Real::pi(work);
        auto value_at = [&](std::size_t N, Real& mag_sum) {
            Real acc(work);
            mag_sum = Real(0L, work);
            for (std::size_t k = 1; k <= N; ++k) {
                Real angle = pi * Real((long)(2 * k - 1), work) / Real((long)(2 * N), work);
                Real t = cos(angle);
                Real tn = cos(Real(n, work) * angle);
                Real term = f.value_and_derivs(Complex(t, Real(0L, work)), 0, work)[0].re * tn;
                acc += term;
                mag_sum += abs(term);
            }
            Real scale = pi / Real((long)N, work);
            mag_sum *= scale;
            return acc * scale;
        };

        std::size_t N = initial_nodes > 0 ? initial_nodes : (std::size_t)std::max(64L, 4 * n);
        const std::size_t cap = 1000000;
        Real tol = Real::pow2(-ctx.bits + 16, work);
        Real mag(work);
        Real prev = value_at(N, mag);
        while (true) {
            if (2 * N > cap)
                throw ConvergenceError("reference_integral: node cap reached without stabilizing");
            N *= 2;
            Real cur = value_at(N, mag);
            Real diff = abs(cur - prev);
            if (diff <= tol * abs(cur)) return round_to(cur, ctx);
            Real noise = mag * Real((long)N, work) * Real::pow2(-work.bits + 4, work);
            if (diff <= noise) {
                // summation-noise limited: either the value is zero at the
                // context precision, or one retry with enough guard bits to
                // cover the cancellation
                long cancel = cur.is_zero() ? 8 * ctx.bits
                                            : mpfr_get_exp(mag.raw()) - mpfr_get_exp(cur.raw());
                if (cancel >= ctx.bits || attempt == 1) return round_to(cur, ctx);
                extra = 48 + cancel;
                break;
            }
            prev = cur;
        }
    }
}

// Modified Bessel I_nu(x) by its ascending series, summed until the term
// falls below 2^{-bits} of the partial sum.
inline Real bessel_I(long nu, const Real& x, const PrecisionContext& ctx) {
    if (nu < 0) throw std::invalid_argument("bessel_I: nu must be >= 0");
    Real half_x = mul_2si(x, -1);
    Real term(1L, ctx);
    for (long j = 1; j <= nu; ++j) term *= half_x / Real(j, ctx);
    Real sum = term;
    Real x2 = half_x * half_x;
    Real cutoff = Real::pow2(-ctx.bits - 8, ctx);
    for (long m = 1; m < 100000; ++m) {
        term *= x2 / (Real(m, ctx) * Real(m + nu, ctx));
        sum += term;
        if (term < cutoff * sum) return sum;
    }
    throw ConvergenceError("bessel_I: series failed to converge");
}

// Independent cross-check of the f0 reference value for even n:
// Integral exp(omega t^2) T_n(t) w(t) dt = pi e^{omega/2} I_{n/2}(omega/2).
inline Real f0_closed_form_integral(const Rat& omega_param, long n, const PrecisionContext& ctx) {
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("f0_closed_form_integral: n must be even and >= 2");
    Real half_w = mul_2si(to_real(omega_param, ctx), -1);
    return Real::pi(ctx) * exp(half_w) * bessel_I(n / 2, half_w, ctx);
}

// |I(f) - Q_{n,s}(f)|, both at working precision.  Signals when the
// difference sits below the rounding floor of the integral (the digits
// would be noise, not error).
inline Real actual_error(const RuleParams& params, const Integrand& f,
                         const PrecisionContext& ctx) {
    MultipleNodeRule rule = build_rule(params, ctx);
    Real reference = reference_integral(f, params.n, ctx,
                                        (std::size_t)std::max(64L, 4 * params.n * (2 * params.s + 1)));
    Real q = apply_rule(rule, f, ctx);
    Real err = abs(reference - q);
    if (!err.is_zero() && err < Real::pow2(-ctx.bits + 32, ctx) * abs(reference))
        throw PrecisionError("actual_error: result below noise floor; raise the context precision");
    return err;
}

}  // namespace fcq

#endif
