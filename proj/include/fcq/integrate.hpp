#ifndef FCQ_INTEGRATE_HPP
#define FCQ_INTEGRATE_HPP

#include <functional>
#include <utility>
#include <vector>

#include "fcq/precision.hpp"

namespace fcq {

struct GaussLegendreRule {
    std::vector<Real> nodes;    // on (-1, 1)
    std::vector<Real> weights;
};

// Nodes and weights of the m-point Gauss-Legendre rule at context precision,
// by Newton iteration on P_m from the Tricomi initial guesses.
inline GaussLegendreRule gauss_legendre(long m, const PrecisionContext& ctx) {
    GaussLegendreRule rule;
    rule.nodes.reserve(m);
    rule.weights.reserve(m);
    Real pi = Real::pi(ctx);
    Real tol = Real::pow2(-ctx.bits + 8, ctx);
    for (long i = 0; i < m; ++i) {
        Real x = cos(pi * Real(4 * i + 3, ctx) / Real(4 * m + 2, ctx));
        Real dp(ctx);
        for (int iter = 0; iter < 200; ++iter) {
            Real pkm1(1L, ctx);
            Real pk = x;
            for (long k = 1; k < m; ++k) {
                Real next = (Real(2 * k + 1, ctx) * x * pk - Real(k, ctx) * pkm1) / Real(k + 1, ctx);
                pkm1 = pk;
                pk = next;
            }
            dp = Real(m, ctx) * (x * pk - pkm1) / (x * x - 1L);
            Real step = pk / dp;
            x -= step;
            if (abs(step) < tol) break;
        }
        rule.nodes.push_back(x);
        rule.weights.push_back(2L / ((1L - x * x) * dp * dp));
    }
    return rule;
}

namespace detail {

inline Real gl_panel(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                     const GaussLegendreRule& rule, const PrecisionContext& ctx) {
    Real half = mul_2si(b - a, -1);
    Real mid = mul_2si(a + b, -1);
    Real acc(ctx);
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
        acc += rule.weights[i] * f(mid + half * rule.nodes[i]);
    return acc * half;
}

inline Real adapt(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                  const Real& coarse, const Real& tol_abs, const GaussLegendreRule& rule,
                  const PrecisionContext& ctx, int depth) {
    if (depth > 48)
        throw ConvergenceError("adaptive_integrate: panel recursion limit reached");
    Real mid = mul_2si(a + b, -1);
    Real left = gl_panel(f, a, mid, rule, ctx);
    Real right = gl_panel(f, mid, b, rule, ctx);
    Real fine = left + right;
    if (abs(fine - coarse) <= tol_abs) return fine;
    Real half_tol = mul_2si(tol_abs, -1);
    return adapt(f, a, mid, left, half_tol, rule, ctx, depth + 1) +
           adapt(f, mid, b, right, half_tol, rule, ctx, depth + 1);
}

}  // namespace detail

// Adaptive Gauss-Legendre integration of f over the given panel boundaries.
// Panels should isolate any known oscillation structure; each is then
// bisected until the local estimate stabilizes to rel_tol of the whole.
inline Real adaptive_integrate(const std::function<Real(const Real&)>& f,
                               const std::vector<Real>& boundaries, const Real& rel_tol,
                               const PrecisionContext& ctx, long order = 32) {
    if (boundaries.size() < 2)
        throw std::invalid_argument("adaptive_integrate: need at least one panel");
    GaussLegendreRule rule = gauss_legendre(order, ctx);
    Real whole(ctx);
    std::vector<Real> coarse;
    coarse.reserve(boundaries.size() - 1);
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i) {
        coarse.push_back(detail::gl_panel(f, boundaries[i], boundaries[i + 1], rule, ctx));
        whole += abs(coarse.back());
    }
    Real floor = Real::pow2(-ctx.bits, ctx);
    Real tol_abs = rel_tol * max(whole, floor);
    Real total(ctx);
    for (std::size_t i = 0; i + 1 < boundaries.size(); ++i)
        total += detail::adapt(f, boundaries[i], boundaries[i + 1], coarse[i],
                               tol_abs / Real((long)(boundaries.size() - 1), ctx), rule, ctx, 0);
    return total;
}

inline Real adaptive_integrate(const std::function<Real(const Real&)>& f, const Real& a,
                               const Real& b, const Real& rel_tol, const PrecisionContext& ctx,
                               long order = 32) {
    return adaptive_integrate(f, std::vector<Real>{a, b}, rel_tol, ctx, order);
}

}  // namespace fcq

#endif
