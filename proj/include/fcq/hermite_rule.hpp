#ifndef FCQ_HERMITE_RULE_HPP
#define FCQ_HERMITE_RULE_HPP

#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "fcq/core_math.hpp"
#include "fcq/precision.hpp"

namespace fcq {

// An integrand supplying derivative stacks at complex points plus its exact
// maximum modulus on E_rho.  The max callback must come from a closed form
// or rigorous argument (bounds rely on it), never from sampling.
struct Integrand {
    std::string id;
    // Returns {f(z), f'(z), ..., f^(order)(z)}.
    std::function<std::vector<Complex>(const Complex& z, long order, const PrecisionContext&)>
        value_and_derivs;
    // max_{z in E_rho} |f(z)|.
    std::function<Real(const Real& rho, const PrecisionContext&)> max_on_ellipse;
};

inline Real round_to(const Real& x, const PrecisionContext& ctx) {
    Real out(ctx);
    mpfr_set(out.raw(), x.raw(), MPFR_RNDN);
    return out;
}

namespace detail {

inline std::vector<std::size_t> leja_order(const std::vector<Real>& pts,
                                           const PrecisionContext& ctx) {
    std::size_t n = pts.size();
    std::vector<std::size_t> order;
    std::vector<bool> used(n, false);
    std::size_t best = 0;
    for (std::size_t i = 1; i < n; ++i)
        if (abs(pts[i]) > abs(pts[best])) best = i;
    order.push_back(best);
    used[best] = true;
    while (order.size() < n) {
        std::size_t arg = n;
        Real best_prod(ctx);
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            Real prod(1L, ctx);
            for (std::size_t j : order) prod *= abs(pts[i] - pts[j]);
            if (arg == n || prod > best_prod) {
                arg = i;
                best_prod = prod;
            }
        }
        order.push_back(arg);
        used[arg] = true;
    }
    return order;
}

// Confluent (repeated-node) Newton divided differences.  Nodes appear in
// blocks of `mult` consecutive copies; `data(d, j)` supplies the j-th
// derivative of f at distinct node d.  Returns the Newton coefficients for
// the flattened node sequence.
inline std::vector<Real> confluent_newton(
    const std::vector<Real>& distinct, long mult,
    const std::function<Real(std::size_t, long)>& data, const PrecisionContext& ctx) {
    std::size_t nd = distinct.size();
    std::size_t N = nd * (std::size_t)mult;
    std::vector<Real> fact(mult, Real(1L, ctx));
    for (long j = 1; j < mult; ++j) fact[j] = fact[j - 1] * Real(j, ctx);

    std::vector<Real> col(N, Real(ctx));
    for (std::size_t a = 0; a < N; ++a) col[a] = data(a / mult, 0);
    std::vector<Real> coeffs;
    coeffs.reserve(N);
    coeffs.push_back(col[0]);
    for (std::size_t j = 1; j < N; ++j) {
        for (std::size_t a = 0; a + j < N; ++a) {
            std::size_t lo = a / mult, hi = (a + j) / mult;
            if (lo == hi) {
                col[a] = data(lo, (long)j) / fact[j];
            } else {
                col[a] = (col[a + 1] - col[a]) / (distinct[hi] - distinct[lo]);
            }
        }
        col.resize(N - j);
        coeffs.push_back(col[0]);
    }
    return coeffs;
}

inline void cheb_mul_t_inplace(std::vector<Real>& g, const PrecisionContext& ctx) {
    std::vector<Real> h(g.size() + 1, Real(ctx));
    for (std::size_t j = 0; j < g.size(); ++j) {
        if (j == 0) {
            h[1] += g[0];
        } else {
            Real half = mul_2si(g[j], -1);
            h[j + 1] += half;
            h[j - 1] += half;
        }
    }
    g = std::move(h);
}

// Chebyshev coefficients of the Newton-form polynomial
// sum_k d_k prod_{j<k} (t - z_j), flattened nodes z.
inline std::vector<Real> newton_to_chebyshev(const std::vector<Real>& z,
                                             const std::vector<Real>& d,
                                             const PrecisionContext& ctx) {
    std::vector<Real> c{d.back()};
    for (std::size_t k = d.size() - 1; k-- > 0;) {
        std::vector<Real> shifted = c;
        cheb_mul_t_inplace(shifted, ctx);
        for (std::size_t j = 0; j < c.size(); ++j) shifted[j] -= z[k] * c[j];
        shifted[0] += d[k];
        c = std::move(shifted);
    }
    return c;
}

}  // namespace detail

// The multiple-node rule: Chebyshev zeros xi_v with multiplicity 2s.
// Applying it to f means applying the exact weighted functional
// f -> Integral f T_n w to the Hermite interpolant of f, which reduces to
// (pi/2) times the T_n Chebyshev coefficient of that interpolant.
// Explicit weights A_{i,v} are the functional applied to the Hermite
// cardinal data; they are computed lazily on first access.
class MultipleNodeRule {
  public:
    MultipleNodeRule(RuleParams params, PrecisionContext ctx)
        : params_(params), ctx_(ctx), nodes_(chebyshev_nodes(params.n, ctx)) {}

    const RuleParams& params() const { return params_; }
    const PrecisionContext& context() const { return ctx_; }
    const std::vector<Real>& nodes() const { return nodes_; }

    // A_{i,v}, v = 1..n, i = 0..2s-1.
    Real weight(long v, long i) const {
        ensure_weights();
        return cache_->w[(std::size_t)(v - 1) * (std::size_t)(2 * params_.s) + (std::size_t)i];
    }
    const std::vector<Real>& weights_flat() const {
        ensure_weights();
        return cache_->w;
    }

  private:
    struct WeightsCache {
        std::once_flag once;
        std::vector<Real> w;
    };

    void ensure_weights() const;

    RuleParams params_;
    PrecisionContext ctx_;
    std::vector<Real> nodes_;
    std::shared_ptr<WeightsCache> cache_ = std::make_shared<WeightsCache>();
};

inline MultipleNodeRule build_rule(const RuleParams& params, const PrecisionContext& ctx) {
    return MultipleNodeRule(params, ctx);
}

namespace detail {

// Guard bits absorbing the conditioning loss of the divided-difference
// table and the basis conversion.
inline PrecisionContext rule_guard(const RuleParams& p, const PrecisionContext& ctx) {
    return ctx.boosted(4 * p.n * p.s + 64);
}

// (pi/2) times the T_n coefficient of the Hermite interpolant whose data
// come from `data(distinct_idx, order)`.
inline Real functional_of_interpolant(const RuleParams& p, const std::vector<Real>& distinct,
                                      const std::function<Real(std::size_t, long)>& data,
                                      const PrecisionContext& guard) {
    std::vector<std::size_t> order = leja_order(distinct, guard);
    std::vector<Real> ordered;
    ordered.reserve(distinct.size());
    for (std::size_t i : order) ordered.push_back(distinct[i]);
    auto permuted = [&](std::size_t d, long j) { return data(order[d], j); };
    std::vector<Real> nd = confluent_newton(ordered, 2 * p.s, permuted, guard);
    std::vector<Real> z;
    z.reserve(nd.size());
    for (const Real& x : ordered)
        for (long r = 0; r < 2 * p.s; ++r) z.push_back(x);
    std::vector<Real> cheb = newton_to_chebyshev(z, nd, guard);
    if ((std::size_t)p.n >= cheb.size()) return Real(guard);
    return mul_2si(Real::pi(guard) * cheb[(std::size_t)p.n], -1);
}

}  // namespace detail

inline void MultipleNodeRule::ensure_weights() const {
    std::call_once(cache_->once, [this] {
        PrecisionContext guard = detail::rule_guard(params_, ctx_);
        std::vector<Real> distinct = chebyshev_nodes(params_.n, guard);
        long m = 2 * params_.s;
        std::vector<Real> w;
        w.reserve((std::size_t)(params_.n * m));
        for (long v = 0; v < params_.n; ++v) {
            for (long i = 0; i < m; ++i) {
                auto cardinal = [&](std::size_t d, long j) {
                    if ((long)d == v && j == i) return Real(1L, guard);
                    return Real(0L, guard);
                };
                w.push_back(round_to(
                    detail::functional_of_interpolant(params_, distinct, cardinal, guard), ctx_));
            }
        }
        cache_->w = std::move(w);
    });
}

enum class RulePath { interpolant, weights };

// Q_{n,s}(f) = sum_v sum_i A_{i,v} f^(i)(xi_v).  The default path builds the
// Hermite interpolant once and reads off its T_n coefficient; the weights
// path uses the explicit A_{i,v}.  Both agree to working precision.
inline Real apply_rule(const MultipleNodeRule& rule, const Integrand& f,
                       const PrecisionContext& ctx, RulePath path = RulePath::interpolant) {
    const RuleParams& p = rule.params();
    long m = 2 * p.s;
    PrecisionContext guard = detail::rule_guard(p, ctx);
    std::vector<Real> distinct = chebyshev_nodes(p.n, guard);

    std::vector<std::vector<Real>> derivs((std::size_t)p.n);
    for (long v = 0; v < p.n; ++v) {
        Complex zv(distinct[(std::size_t)v], Real(0L, guard));
        std::vector<Complex> stack = f.value_and_derivs(zv, m - 1, guard);
        if ((long)stack.size() != m)
            throw std::invalid_argument("apply_rule: integrand returned wrong derivative count");
        derivs[(std::size_t)v].reserve(stack.size());
        for (const Complex& c : stack) derivs[(std::size_t)v].push_back(c.re);
    }

    if (path == RulePath::weights) {
        Real acc(ctx);
        for (long v = 1; v <= p.n; ++v)
            for (long i = 0; i < m; ++i)
                acc += rule.weight(v, i) * round_to(derivs[(std::size_t)(v - 1)][(std::size_t)i], ctx);
        return acc;
    }

    auto data = [&](std::size_t d, long j) { return derivs[d][(std::size_t)j]; };
    return round_to(detail::functional_of_interpolant(p, distinct, data, guard), ctx);
}

// R_{n,s}(f) = reference - Q_{n,s}(f), reference being the true integral.
inline Real remainder(const MultipleNodeRule& rule, const Integrand& f, const Real& reference,
                      const PrecisionContext& ctx) {
    return reference - apply_rule(rule, f, ctx);
}

}  // namespace fcq

#endif
