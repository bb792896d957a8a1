#include <catch2/catch_amalgamated.hpp>

#include "fcq/integrand.hpp"
#include "fcq/remainder_kernel.hpp"
#include "fcq/series_coeffs.hpp"
#include "support/oracles.hpp"
#include "support/test_util.hpp"

using namespace fcq;
using namespace fcq::testutil;

static const PrecisionContext ctx(256);

namespace {
Complex z_of_u(const Complex& u) {
    Complex r = u + inverse(u);
    return {mul_2si(r.re, -1), mul_2si(r.im, -1)};
}
}  // namespace

TEST_CASE("beta coefficients match the numeric series fit of 1/T_n^{2s}") {
    long n = 2;
    for (long s : {1L, 2L}) {
        auto g = [&](const Complex& u) {
            Complex t = chebyshev_T(n, z_of_u(u), ctx);
            return inverse(pow_ui(t, (unsigned long)(2 * s)));
        };
        for (long k : {0L, 2 * n, 4 * n}) {
            Complex fitted =
                oracles::u_series_coefficient(g, 2 * n * s + k, Real(3L, ctx), 96, ctx);
            Real expected = to_real(beta_coeff(CoeffIndex(n, s, k)), ctx);
            REQUIRE(close_abs(fitted.re, expected, Real("1e-12", ctx)));
            REQUIRE(abs_le(fitted.im, Real("1e-12", ctx)));
        }
    }
    REQUIRE(beta_coeff(CoeffIndex(2, 1, 0)) == 4);
    REQUIRE(beta_coeff(CoeffIndex(2, 1, 4)) == -8);
    REQUIRE(beta_coeff(CoeffIndex(2, 2, 0)) == 16);
    REQUIRE(beta_coeff(CoeffIndex(2, 1, 3)) == 0);
    REQUIRE(beta_coeff(CoeffIndex(2, 1, 2)) == 0);
}

TEST_CASE("beta partial sums reproduce 1/T_n^{2s} at the stated rate") {
    std::vector<std::pair<double, double>> uvals{{2.0, 0.9}, {3.5, 2.2}, {2.5, 4.4}};
    for (long n : {1L, 2L, 3L}) {
        for (long s : {1L, 3L}) {
            for (auto [m, a] : uvals) {
                Complex u = Complex::polar(Real(m, ctx), Real(a, ctx));
                Complex t = chebyshev_T(n, z_of_u(u), ctx);
                Complex direct = inverse(pow_ui(t, (unsigned long)(2 * s)));
                for (long J : {2L, 4L, 8L}) {
                    Complex acc(ctx);
                    for (long j = 0; j <= J; ++j) {
                        Real b = to_real(beta_coeff(CoeffIndex(n, s, 2 * j * n)), ctx);
                        Complex up = pow_ui(u, (unsigned long)(2 * n * s + 2 * n * j));
                        acc += inverse(up) * b;
                    }
                    Real rel = abs(acc - direct) / abs(direct);
                    // tail starts at the first omitted block; |1/T^{2s}| itself is
                    // ~ 4^s |u|^{-2ns}, so the relative tail carries the binomial
                    // C(J+2s, 2s-1) that a bare |u| power cannot absorb at |u| = 2
                    Real lead = to_real(binom((unsigned long)(J + 2 * s), (unsigned long)(2 * s - 1)),
                                        ctx);
                    Real bound = Real(4L, ctx) * lead * pow_si(abs(u), -2 * n * (J + 1));
                    REQUIRE(rel < bound);
                }
            }
        }
    }
}

TEST_CASE("gamma coefficients match the numeric series fit of rho_ns") {
    Real pi = Real::pi(ctx);
    for (long n : {1L, 2L}) {
        for (long s : {1L, 2L}) {
            RuleParams p(n, s);
            auto g = [&](const Complex& u) { return rho_ns(z_of_u(u), p, ctx); };
            for (long k : {0L, 2L, 2 * n}) {
                Complex fitted =
                    oracles::u_series_coefficient(g, n + k + 1, Real(3L, ctx), 128, ctx);
                Real expected = to_real(gamma_coeff_over_pi(CoeffIndex(n, s, k)), ctx) * pi;
                REQUIRE(close_abs(fitted.re, expected, Real("1e-12", ctx)));
                REQUIRE(abs_le(fitted.im, Real("1e-12", ctx)));
            }
        }
    }
    // 3pi/2, 2pi, 5pi/4 over pi
    REQUIRE(gamma_coeff_over_pi(CoeffIndex(2, 1, 0)) == Rat(3, 2));
    REQUIRE(gamma_coeff_over_pi(CoeffIndex(2, 1, 4)) == Rat(2));
    REQUIRE(gamma_coeff_over_pi(CoeffIndex(2, 2, 0)) == Rat(5, 4));
    REQUIRE(gamma_coeff_over_pi(CoeffIndex(2, 1, 5)) == Rat(0));
}

TEST_CASE("omega convolution values and parity") {
    for (long n : {1L, 2L, 3L}) {
        REQUIRE(omega_coeff_over_pi(CoeffIndex(n, 1, 0)) == Rat(6));
        REQUIRE(omega_coeff_over_pi(CoeffIndex(n, 1, 2 * n)) == Rat(-4));
        for (long s : {1L, 2L, 3L}) {
            for (long k = 1; k <= 32 * n; k += 2)
                REQUIRE(omega_coeff_over_pi(CoeffIndex(n, s, k)) == Rat(0));
        }
    }
}

TEST_CASE("epsilon_true equals the exact quadrature remainder of T_{(2s+1)n+2nm}") {
    REQUIRE(epsilon_true_over_pi(CoeffIndex(1, 1, 0)) == Rat(3, 2));
    REQUIRE(epsilon_true_over_pi(CoeffIndex(1, 1, 2)) == Rat(-5, 2));
    REQUIRE(epsilon_true_over_pi(CoeffIndex(1, 2, 0)) == Rat(5));
    for (long n : {1L, 2L, 3L})
        for (long s : {1L, 2L, 3L})
            for (long m : {0L, 1L, 2L}) {
                long N = (2 * s + 1) * n + 2 * n * m;
                Rat direct = oracles::quadrature_remainder_over_pi(N, n, s);
                REQUIRE(epsilon_true_over_pi(CoeffIndex(n, s, 2 * n * m)) == direct);
            }
}

TEST_CASE("epsilon_paper is exactly twice epsilon_true on every tested index") {
    REQUIRE(epsilon_paper_over_pi(CoeffIndex(1, 1, 0)) == Rat(3));
    REQUIRE(epsilon_paper_over_pi(CoeffIndex(1, 1, 2)) == Rat(-5));
    REQUIRE(epsilon_paper_over_pi(CoeffIndex(2, 1, 3)) == Rat(0));
    for (long n : {1L, 2L, 3L, 4L})
        for (long s = 1; s <= 5; ++s)
            for (long m = 0; m <= 30; ++m) {
                CoeffIndex idx(n, s, 2 * n * m);
                REQUIRE(epsilon_paper_over_pi(idx) == 2 * epsilon_true_over_pi(idx));
            }
}

TEST_CASE("binomial partial-sum identity holds exactly") {
    SECTION("base case t = 0") {
        auto [lhs, rhs] = binomial_identity_sides(0, 4, 2);
        REQUIRE(lhs == rhs);
        REQUIRE(lhs == Rat(binom(5, 3)));
    }
    SECTION("worked value t=1, m=2, s=1") {
        auto [lhs, rhs] = binomial_identity_sides(1, 2, 1);
        REQUIRE(lhs == Rat(-7));
        REQUIRE(rhs == Rat(-7));
    }
    SECTION("exhaustive sweep t <= 2s, s <= 6, m <= 20") {
        for (long s = 1; s <= 6; ++s)
            for (long m = 0; m <= 20; ++m)
                for (long t = 0; t <= 2 * s; ++t) {
                    auto [lhs, rhs] = binomial_identity_sides(t, m, s);
                    REQUIRE(lhs == rhs);
                }
    }
}

TEST_CASE("F series lemma") {
    Real half("0.5", ctx);
    REQUIRE(close_rel(F_closed(half, 1, ctx), "5", 1e-60, ctx));
    REQUIRE(close_rel(F_closed(half, 2, ctx), "31", 1e-60, ctx));

    SECTION("leading term as x -> 0") {
        Real x = Real::pow2(-30, ctx);
        for (long s : {1L, 2L, 3L}) {
            Real ratio = F_closed(x, s, ctx) / pow_si(x, s);
            Real lead = to_real(binom((unsigned long)(2 * s + 1), (unsigned long)(s + 1)), ctx);
            REQUIRE(close_rel(ratio, lead, Real::pow2(-25, ctx)));
        }
    }

    SECTION("partial sums converge geometrically") {
        for (const char* xs : {"0.1", "0.5", "0.9"}) {
            Real x(xs, ctx);
            for (long s = 1; s <= 4; ++s) {
                Real closed = F_closed(x, s, ctx);
                Real floor = (abs(closed) + Real(1L, ctx)) * Real::pow2(-ctx.bits + 24, ctx);
                Real e100 = abs(F_partial(x, s, 100, ctx) - closed);
                Real e200 = abs(F_partial(x, s, 200, ctx) - closed);
                Real e400 = abs(F_partial(x, s, 400, ctx) - closed);
                // every added block of 100 terms shrinks the error by far more
                // than 50x (the true rate is ~ x^100 with a polynomial factor)
                REQUIRE(e200 <= max(e100 / Real(50L, ctx), floor));
                REQUIRE(e400 <= max(e200 / Real(50L, ctx), floor));
                // the tail is controlled by its first omitted term
                for (long M : {100L, 200L, 400L}) {
                    Real eM = abs(F_partial(x, s, M, ctx) - closed);
                    Rat coeff = Rat(Int(s) * binom((unsigned long)(2 * s), (unsigned long)s) *
                                        binom((unsigned long)(M + 1 + 2 * s), (unsigned long)(2 * s)) *
                                        Int(2 * (M + 1) + 2 * s + 1),
                                    Int(M + 1 + s) * Int(M + 2 + s));
                    coeff.canonicalize();
                    Real first_term = to_real(coeff, ctx) * pow_si(x, M + 1 + s);
                    REQUIRE(eM <= first_term * Real(10L, ctx) / (Real(1L, ctx) - x) + floor);
                }
            }
        }
    }

    SECTION("rejects x outside (0,1)") {
        REQUIRE_THROWS_AS(F_closed(Real(2L, ctx), 1, ctx), std::invalid_argument);
        REQUIRE_THROWS_AS(F_partial(Real(0L, ctx), 1, 10, ctx), std::invalid_argument);
    }
}

TEST_CASE("remainder_via_expansion reproduces symbolic remainders") {
    RuleParams p(1, 1);
    Real pi = Real::pi(ctx);

    // f = T_3: alpha_3 = 1
    std::vector<Real> alpha_T3(4, Real(ctx));
    alpha_T3[3] = Real(1L, ctx);
    REQUIRE(close_rel(remainder_via_expansion(alpha_T3, p, 0, ctx),
                      mul_2si(Real(3L, ctx) * pi, -1), Real::pow2(-200, ctx)));

    // f = t^3 = (3 T_1 + T_3)/4: alpha_3 = 1/4, remainder 3pi/8
    std::vector<Real> alpha_t3(4, Real(ctx));
    alpha_t3[1] = Real("0.75", ctx);
    alpha_t3[3] = Real("0.25", ctx);
    REQUIRE(close_rel(remainder_via_expansion(alpha_t3, p, 0, ctx),
                      mul_2si(Real(3L, ctx) * pi, -3), Real::pow2(-200, ctx)));
}
