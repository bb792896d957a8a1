#ifndef FCQ_SERIES_COEFFS_HPP
#define FCQ_SERIES_COEFFS_HPP

#include <utility>
#include <vector>

#include "fcq/core_math.hpp"
#include "fcq/poly_exact.hpp"

namespace fcq {

// Index into the kernel/remainder expansions.  beta and epsilon are
// supported on k = 0 mod 2n; gamma on even k; everything vanishes for odd k.
struct CoeffIndex {
    long n;
    long s;
    long k;

    CoeffIndex(long n_, long s_, long k_) : n(n_), s(s_), k(k_) {
        if (n < 1 || s < 1 || k < 0)
            throw std::invalid_argument("CoeffIndex: require n >= 1, s >= 1, k >= 0");
    }
};

// Coefficient of u^{-2ns-k} in 1/T_n(z)^{2s}:
// 2^{2s} (-1)^j C(j+2s-1, 2s-1) at k = 2jn, zero elsewhere.  Exact.
inline Int beta_coeff(const CoeffIndex& idx) {
    if (idx.k % (2 * idx.n) != 0) return Int(0);
    long j = idx.k / (2 * idx.n);
    Int r = binom((unsigned long)(j + 2 * idx.s - 1), (unsigned long)(2 * idx.s - 1));
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), (unsigned long)(2 * idx.s));
    if (j % 2 != 0) r = -r;
    return r;
}

// Coefficient of u^{-n-k-1} in rho_{n,s}(z), divided by pi:
// (1/2^{2s-1}) sum_{v=0}^{j} C(2s+1, s-v) on the even block
// k = 2nj .. 2n(j+1)-2, zero for odd k.
inline Rat gamma_coeff_over_pi(const CoeffIndex& idx) {
    if (idx.k % 2 != 0) return Rat(0);
    long j = idx.k / (2 * idx.n);
    Int sum(0);
    for (long v = 0; v <= j && v <= idx.s; ++v)
        sum += binom((unsigned long)(2 * idx.s + 1), (unsigned long)(idx.s - v));
    Rat r(sum);
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), (unsigned long)(2 * idx.s - 1));
    return r;
}

// Kernel expansion coefficient (convolution of beta with gamma), over pi.
inline Rat omega_coeff_over_pi(const CoeffIndex& idx) {
    Rat acc(0);
    for (long i = 0; 2 * idx.n * i <= idx.k; ++i) {
        Int b = beta_coeff(CoeffIndex(idx.n, idx.s, 2 * idx.n * i));
        if (b == 0) continue;
        acc += Rat(b) * gamma_coeff_over_pi(CoeffIndex(idx.n, idx.s, idx.k - 2 * idx.n * i));
    }
    return acc;
}

// Remainder expansion coefficient in R_{n,s}(f) = sum_k alpha_{(2s+1)n+k} eps_{n,k},
// derived from the omega convolution; over pi.  Exact.
inline Rat epsilon_true_over_pi(const CoeffIndex& idx) {
    Rat w = omega_coeff_over_pi(idx);
    if (idx.k >= 2) w -= omega_coeff_over_pi(CoeffIndex(idx.n, idx.s, idx.k - 2));
    mpq_div_2exp(w.get_mpq_t(), w.get_mpq_t(), 2);
    return w;
}

// The closed form as printed: (-1)^m s(2m+2s+1)/((m+s)(m+s+1)) C(m+2s,2s) C(2s,s)
// at k = 2nm, zero elsewhere; over pi.  Evaluates to exactly twice
// epsilon_true_over_pi on every index; both are kept first-class and the
// discrepancy is surfaced by the verification suite, never reconciled.
inline Rat epsilon_paper_over_pi(const CoeffIndex& idx) {
    if (idx.k % (2 * idx.n) != 0) return Rat(0);
    long m = idx.k / (2 * idx.n);
    long s = idx.s;
    Rat r(Int(s) * Int(2 * m + 2 * s + 1), Int(m + s) * Int(m + s + 1));
    r.canonicalize();
    r *= Rat(binom((unsigned long)(m + 2 * s), (unsigned long)(2 * s)));
    r *= Rat(binom((unsigned long)(2 * s), (unsigned long)s));
    if (m % 2 != 0) r = -r;
    return r;
}

// Both sides of the alternating binomial partial-sum identity
//   sum_{i=0}^{t} (-1)^i C(m+s-1+i, 2s-1) C(2s+1, i)
//     = (-1)^t (s(2m+2s+2)-t)/((m+s)(m+s+1)) C(m+s+t, 2s) C(2s, t),
// in exact rational arithmetic.
inline std::pair<Rat, Rat> binomial_identity_sides(long t, long m, long s) {
    if (s < 1 || m < 0 || t < 0 || t > 2 * s)
        throw std::invalid_argument("binomial_identity_sides: require s >= 1, m >= 0, 0 <= t <= 2s");
    Rat lhs(0);
    for (long i = 0; i <= t; ++i) {
        Int term = binom((unsigned long)(m + s - 1 + i), (unsigned long)(2 * s - 1)) *
                   binom((unsigned long)(2 * s + 1), (unsigned long)i);
        if (i % 2 == 0)
            lhs += Rat(term);
        else
            lhs -= Rat(term);
    }
    Rat rhs(Int(s) * Int(2 * m + 2 * s + 2) - Int(t), Int(m + s) * Int(m + s + 1));
    rhs.canonicalize();
    rhs *= Rat(binom((unsigned long)(m + s + t), (unsigned long)(2 * s)));
    rhs *= Rat(binom((unsigned long)(2 * s), (unsigned long)t));
    if (t % 2 != 0) rhs = -rhs;
    return {lhs, rhs};
}

// Closed form of the series F:
// sum_{k=0}^{s} (-1)^k C(2s+1, s+k+1) x^{s+k} / (1-x)^{2s}.
inline Real F_closed(const Real& x, long s, const PrecisionContext& ctx) {
    if (!(x > 0L) || !(x < 1L)) throw std::invalid_argument("F_closed: require 0 < x < 1");
    Real num(ctx);
    Real xp = pow_si(x, s);
    for (long k = 0; k <= s; ++k) {
        Real term = to_real(binom((unsigned long)(2 * s + 1), (unsigned long)(s + k + 1)), ctx) * xp;
        if (k % 2 == 0)
            num += term;
        else
            num -= term;
        xp *= x;
    }
    return num / pow_si(Real(1L, ctx) - x, 2 * s);
}

// Truncation of F(x) = s C(2s,s) sum_{m>=0} C(m+2s,2s)(2m+2s+1) x^{m+s} / ((m+s)(m+s+1)),
// summed through m = M.
inline Real F_partial(const Real& x, long s, long M, const PrecisionContext& ctx) {
    if (!(x > 0L) || !(x < 1L)) throw std::invalid_argument("F_partial: require 0 < x < 1");
    if (M < 0) throw std::invalid_argument("F_partial: require M >= 0");
    Real acc(ctx);
    Real xp = pow_si(x, s);
    Int binom_m = binom((unsigned long)(2 * s), (unsigned long)(2 * s));  // C(m+2s, 2s) at m=0
    for (long m = 0; m <= M; ++m) {
        Rat coeff = Rat(binom_m * Int(2 * m + 2 * s + 1), Int(m + s) * Int(m + s + 1));
        coeff.canonicalize();
        acc += to_real(coeff, ctx) * xp;
        xp *= x;
        binom_m = binom_m * Int(m + 2 * s + 1) / Int(m + 1);
    }
    Rat front(Int(s) * binom((unsigned long)(2 * s), (unsigned long)s));
    return to_real(front, ctx) * acc;
}

// Remainder estimate from the Chebyshev coefficients alpha_k of f (expansion
// convention: f = alpha_0/2 + sum_{k>=1} alpha_k T_k):
// sum_{m=0}^{M} alpha_{(2s+1)n + 2nm} eps_{n,2nm}.  A validation estimator,
// not a bound.  M < 0 truncates at the first term below 2^{-bits} of the
// running sum.
inline Real remainder_via_expansion(const std::vector<Real>& cheb_coeffs, const RuleParams& params,
                                    long M, const PrecisionContext& ctx) {
    Real pi = Real::pi(ctx);
    Real acc(ctx);
    Real cutoff = Real::pow2(-ctx.bits, ctx);
    bool auto_stop = M < 0;
    for (long m = 0;; ++m) {
        if (!auto_stop && m > M) break;
        std::size_t index = (std::size_t)((2 * params.s + 1) * params.n + 2 * params.n * m);
        if (index >= cheb_coeffs.size()) break;
        Rat eps = epsilon_true_over_pi(CoeffIndex(params.n, params.s, 2 * params.n * m));
        Real term = cheb_coeffs[index] * to_real(eps, ctx) * pi;
        acc += term;
        if (auto_stop && m > 0 && abs(term) < cutoff * max(abs(acc), Real::pow2(-ctx.bits, ctx)))
            break;
    }
    return acc;
}

}  // namespace fcq

#endif
