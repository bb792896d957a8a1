#ifndef FCQ_INTEGRAND_HPP
#define FCQ_INTEGRAND_HPP

#include <string>
#include <vector>

#include "fcq/core_math.hpp"
#include "fcq/hermite_rule.hpp"
#include "fcq/poly_exact.hpp"

namespace fcq {

// Decimal string -> exact rational ("1.25" -> 5/4, "2e-3" -> 1/500).
inline Rat rat_from_decimal(const std::string& text) {
    std::string mant = text;
    long exp10 = 0;
    if (auto pos = mant.find_first_of("eE"); pos != std::string::npos) {
        exp10 = std::stol(mant.substr(pos + 1));
        mant = mant.substr(0, pos);
    }
    if (auto dot = mant.find('.'); dot != std::string::npos) {
        exp10 -= (long)(mant.size() - dot - 1);
        mant.erase(dot, 1);
    }
    if (mant.empty() || mant == "-" || mant == "+")
        throw std::invalid_argument("rat_from_decimal: cannot parse \"" + text + "\"");
    Rat r(Int(mant.c_str(), 10));
    Int p10;
    mpz_ui_pow_ui(p10.get_mpz_t(), 10, (unsigned long)(exp10 < 0 ? -exp10 : exp10));
    if (exp10 < 0)
        r /= Rat(p10);
    else
        r *= Rat(p10);
    return r;
}

// The entire test integrand f0(z) = exp(omega z^2), omega > 0.  Derivatives
// follow f0^(k) = p_k(z) f0(z) with p_0 = 1, p_{k+1} = p_k' + 2 omega z p_k;
// the maximum modulus on E_rho is exp(omega a_1^2), attained at theta = 0.
struct TestIntegrandF0 {
    Rat omega_param;
};

inline Integrand make_f0_integrand(const TestIntegrandF0& f0) {
    if (f0.omega_param <= 0)
        throw std::invalid_argument("make_f0_integrand: omega must be positive");
    Rat omega = f0.omega_param;
    Integrand g;
    g.id = std::string("exp(omega*z^2),omega=") + omega.get_str();
    g.value_and_derivs = [omega](const Complex& z, long order, const PrecisionContext& ctx) {
        Real w = to_real(omega, ctx);
        // p_k coefficient table, exact recurrence evaluated at ctx precision
        std::vector<std::vector<Real>> p;
        p.push_back({Real(1L, ctx)});
        for (long k = 0; k < order; ++k) {
            const std::vector<Real>& pk = p.back();
            std::vector<Real> next(pk.size() + 1, Real(ctx));
            for (std::size_t j = 1; j < pk.size(); ++j) next[j - 1] += Real((long)j, ctx) * pk[j];
            Real two_w = mul_2si(w, 1);
            for (std::size_t j = 0; j < pk.size(); ++j) next[j + 1] += two_w * pk[j];
            p.push_back(std::move(next));
        }
        Complex e = exp(z * z * w);
        std::vector<Complex> out;
        out.reserve((std::size_t)order + 1);
        for (const auto& pk : p) {
            Complex acc(ctx);
            for (auto it = pk.rbegin(); it != pk.rend(); ++it) {
                acc = acc * z;
                acc.re += *it;
            }
            out.push_back(acc * e);
        }
        return out;
    };
    g.max_on_ellipse = [omega](const Real& rho, const PrecisionContext& ctx) {
        Real a1 = cosh_coeff(rho, 1, ctx);
        return exp(to_real(omega, ctx) * a1 * a1);
    };
    return g;
}

// Generic maximum of |p| on E_rho by dense scan plus golden refinement.
// Polynomial integrands only feed validity checks, so a numerically located
// maximum (inflated by one part in 2^16) is acceptable here.
inline Real poly_max_on_ellipse(const QPoly& p, const Real& rho, const PrecisionContext& ctx) {
    long grid = 8 * std::max(4L, p.degree() + 1);
    Real pi = Real::pi(ctx);
    Real best(ctx);
    for (long i = 0; i <= grid; ++i) {
        Real theta = pi * Real(i, ctx) / Real(grid, ctx);
        Complex z = ellipse_point({rho, theta}, ctx);
        best = max(best, abs(p.eval(z, ctx)));
    }
    return best * (Real(1L, ctx) + Real::pow2(-16, ctx));
}

inline Integrand make_poly_integrand(const QPoly& p, std::string id) {
    Integrand g;
    g.id = std::move(id);
    g.value_and_derivs = [p](const Complex& z, long order, const PrecisionContext& ctx) {
        std::vector<Complex> out;
        out.reserve((std::size_t)order + 1);
        QPoly d = p;
        for (long k = 0; k <= order; ++k) {
            out.push_back(d.eval(z, ctx));
            d = d.derivative();
        }
        return out;
    };
    g.max_on_ellipse = [p](const Real& rho, const PrecisionContext& ctx) {
        return poly_max_on_ellipse(p, rho, ctx);
    };
    return g;
}

inline Integrand make_monomial_integrand(long k) {
    return make_poly_integrand(QPoly::monomial((std::size_t)k), "t^" + std::to_string(k));
}

inline Integrand make_chebyshev_T_integrand(long N) {
    return make_poly_integrand(chebyshev_T_poly((unsigned long)N), "T_" + std::to_string(N));
}

}  // namespace fcq

#endif
