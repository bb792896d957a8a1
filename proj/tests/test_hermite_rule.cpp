#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "fcq/integrand.hpp"
#include "fcq/reference_oracle.hpp"
#include "fcq/series_coeffs.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace fcq;
using namespace fcq::testutil;

static const PrecisionContext ctx(256);

TEST_CASE("build_rule rejects degenerate parameters") {
    REQUIRE_THROWS_AS(RuleParams(0, 1), std::invalid_argument);
    REQUIRE_THROWS_AS(RuleParams(1, 0), std::invalid_argument);
}

TEST_CASE("rule structure for small cases") {
    SECTION("n=1, s=1: single node at 0, weights {0, pi/2}") {
        MultipleNodeRule rule = build_rule(RuleParams(1, 1), ctx);
        REQUIRE(rule.nodes().size() == 1);
        REQUIRE(abs_le(rule.nodes()[0], Real::pow2(-ctx.bits + 8, ctx)));
        REQUIRE(abs_le(rule.weight(1, 0), Real::pow2(-ctx.bits + 16, ctx)));
        REQUIRE(close_abs(rule.weight(1, 1), mul_2si(Real::pi(ctx), -1),
                          Real::pow2(-ctx.bits + 16, ctx)));
    }
    SECTION("n=2, s=1: two nodes, four weight entries") {
        MultipleNodeRule rule = build_rule(RuleParams(2, 1), ctx);
        REQUIRE(rule.nodes().size() == 2);
        REQUIRE(rule.weights_flat().size() == 4);
        Real half_sqrt2 = mul_2si(sqrt(Real(2L, ctx)), -1);
        REQUIRE(close_abs(rule.nodes()[0], half_sqrt2, Real::pow2(-ctx.bits + 8, ctx)));
        REQUIRE(close_abs(rule.nodes()[1], -half_sqrt2, Real::pow2(-ctx.bits + 8, ctx)));
    }
    SECTION("n=2, s=3: twelve weight entries") {
        MultipleNodeRule rule = build_rule(RuleParams(2, 3), ctx);
        REQUIRE(rule.weights_flat().size() == 12);
    }
}

TEST_CASE("exactness up to degree n(2s+1)-1 against symbolic moments") {
    Real tol = Real::pow2(-ctx.bits / 2, ctx);
    Real pi = Real::pi(ctx);
    for (long n : {1L, 2L, 4L, 5L}) {
        for (long s : {1L, 2L, 3L}) {
            RuleParams p(n, s);
            MultipleNodeRule rule = build_rule(p, ctx);
            long dmax = n * (2 * s + 1) - 1;
            for (long k = 0; k <= dmax; ++k) {
                Real q = apply_rule(rule, make_monomial_integrand(k), ctx);
                Real exact =
                    to_real(moment_monomial_Tn_over_pi((unsigned long)k, (unsigned long)n), ctx) *
                    pi;
                REQUIRE(close_abs(q, exact, tol));
            }
        }
    }
}

TEST_CASE("first non-exact degree: remainder matches the expansion prediction") {
    Real pi = Real::pi(ctx);
    for (long n : {1L, 2L, 3L}) {
        for (long s : {1L, 2L}) {
            RuleParams p(n, s);
            MultipleNodeRule rule = build_rule(p, ctx);
            long k = n * (2 * s + 1);
            Real q = apply_rule(rule, make_monomial_integrand(k), ctx);
            Real exact =
                to_real(moment_monomial_Tn_over_pi((unsigned long)k, (unsigned long)n), ctx) * pi;
            Real rem = exact - q;
            // t^k has T_{n(2s+1)} coefficient 2^{1-k}; higher contributing
            // indices exceed k, so R = 2^{1-k} eps_{n,0}
            Real predicted =
                mul_2si(to_real(epsilon_true_over_pi(CoeffIndex(n, s, 0)), ctx) * pi, 1 - (int)k);
            REQUIRE(!rem.is_zero());
            REQUIRE(close_rel(rem, predicted, Real::pow2(-ctx.bits / 2, ctx)));
        }
    }
}

TEST_CASE("worked n=1, s=1 values") {
    RuleParams p(1, 1);
    MultipleNodeRule rule = build_rule(p, ctx);
    Real pi = Real::pi(ctx);
    Real tol = Real::pow2(-ctx.bits + 32, ctx);

    REQUIRE(abs_le(apply_rule(rule, make_monomial_integrand(2), ctx), tol));
    REQUIRE(abs_le(apply_rule(rule, make_monomial_integrand(3), ctx), tol));

    // Q(t^3) = 0 while the integral is 3pi/8: first non-exact degree
    Real r3 = remainder(rule, make_monomial_integrand(3), mul_2si(Real(3L, ctx) * pi, -3), ctx);
    REQUIRE(close_rel(r3, mul_2si(Real(3L, ctx) * pi, -3), Real::pow2(-200, ctx)));

    // Q(T_3) = (pi/2) T_3'(0) = -3pi/2, so R = 3pi/2
    Real rT3 = remainder(rule, make_chebyshev_T_integrand(3), Real(0L, ctx), ctx);
    REQUIRE(close_rel(rT3, mul_2si(Real(3L, ctx) * pi, -1), Real::pow2(-200, ctx)));

    Real rT2 = remainder(rule, make_monomial_integrand(2), Real(0L, ctx), ctx);
    REQUIRE(abs_le(rT2, tol));
}

TEST_CASE("weights path agrees with the interpolant path") {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> coeff(-2.0, 2.0);
    Real tol = Real::pow2(-ctx.bits / 2, ctx);
    for (long n : {2L, 3L, 5L}) {
        for (long s : {1L, 2L}) {
            RuleParams p(n, s);
            MultipleNodeRule rule = build_rule(p, ctx);
            // random polynomial of degree beyond exactness
            std::vector<Rat> c;
            for (long k = 0; k <= n * (2 * s + 1) + 3; ++k)
                c.emplace_back(rat_from_decimal(std::to_string(coeff(rng))));
            Integrand f = make_poly_integrand(QPoly(std::move(c)), "random poly");
            Real qi = apply_rule(rule, f, ctx, RulePath::interpolant);
            Real qw = apply_rule(rule, f, ctx, RulePath::weights);
            REQUIRE(close_abs(qi, qw, tol * (Real(1L, ctx) + abs(qi))));
        }
    }
    SECTION("f0 integrand, both paths") {
        RuleParams p(4, 2);
        MultipleNodeRule rule = build_rule(p, ctx);
        Integrand f = make_f0_integrand({Rat(1)});
        Real qi = apply_rule(rule, f, ctx, RulePath::interpolant);
        Real qw = apply_rule(rule, f, ctx, RulePath::weights);
        REQUIRE(close_abs(qi, qw, tol * (Real(1L, ctx) + abs(qi))));
    }
}

TEST_CASE("exact quadrature of Chebyshev integrands matches the division oracle") {
    Real pi = Real::pi(ctx);
    Real tol = Real::pow2(-ctx.bits / 2, ctx);
    for (long n : {1L, 2L, 3L}) {
        for (long s : {1L, 2L, 3L}) {
            RuleParams p(n, s);
            MultipleNodeRule rule = build_rule(p, ctx);
            for (long m : {0L, 1L}) {
                long N = (2 * s + 1) * n + 2 * n * m;
                Real r = remainder(rule, make_chebyshev_T_integrand(N), Real(0L, ctx), ctx);
                Real expected =
                    to_real(oracles::quadrature_remainder_over_pi(N, n, s), ctx) * pi;
                REQUIRE(close_abs(r, expected, tol * (Real(1L, ctx) + abs(expected))));
            }
        }
    }
}

TEST_CASE("apply_rule on f0 reproduces the reference integral closely (n=8, s=1, omega=1)") {
    PrecisionContext wide(320);
    RuleParams p(8, 1);
    MultipleNodeRule rule = build_rule(p, wide);
    Integrand f = make_f0_integrand({Rat(1)});
    Real q = apply_rule(rule, f, wide);
    Real ref = reference_integral(f, 8, wide);
    REQUIRE(close_rel(ref, "8.53628578216e-4", 1e-10, wide));
    // Table: actual error 1.94e-15
    REQUIRE(close_rel(abs(ref - q), "1.94e-15", 0.05, wide));
}

TEST_CASE("integrand contract violations surface") {
    RuleParams p(2, 2);
    MultipleNodeRule rule = build_rule(p, ctx);
    Integrand broken;
    broken.id = "broken";
    broken.value_and_derivs = [](const Complex& z, long, const PrecisionContext& c) {
        return std::vector<Complex>{Complex(Real(1L, c), Real(0L, c)), z};  // wrong count
    };
    broken.max_on_ellipse = [](const Real&, const PrecisionContext& c) { return Real(1L, c); };
    REQUIRE_THROWS_AS(apply_rule(rule, broken, ctx), std::invalid_argument);
}
