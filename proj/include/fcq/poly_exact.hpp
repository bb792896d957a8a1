#ifndef FCQ_POLY_EXACT_HPP
#define FCQ_POLY_EXACT_HPP

#include <gmpxx.h>

#include <stdexcept>
#include <vector>

#include "fcq/precision.hpp"

namespace fcq {

using Int = mpz_class;
using Rat = mpq_class;

// C(n, k); zero for k > n, as usual.
inline Int binom(unsigned long n, unsigned long k) {
    Int r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

inline Real to_real(const Rat& q, const PrecisionContext& ctx) {
    Real r(ctx);
    mpfr_set_q(r.raw(), q.get_mpq_t(), MPFR_RNDN);
    return r;
}

inline Real to_real(const Int& z, const PrecisionContext& ctx) {
    Real r(ctx);
    mpfr_set_z(r.raw(), z.get_mpz_t(), MPFR_RNDN);
    return r;
}

// Dense polynomial with exact rational coefficients, power basis,
// c[k] multiplying t^k.  Trailing zeros are trimmed.
struct QPoly {
    std::vector<Rat> c;

    QPoly() = default;
    explicit QPoly(std::vector<Rat> coeffs) : c(std::move(coeffs)) { trim(); }

    static QPoly constant(const Rat& v) { return QPoly({v}); }
    static QPoly monomial(std::size_t k) {
        std::vector<Rat> v(k + 1, Rat(0));
        v[k] = 1;
        return QPoly(std::move(v));
    }

    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }

    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }

    Rat coeff(std::size_t k) const { return k < c.size() ? c[k] : Rat(0); }

    friend QPoly operator+(const QPoly& a, const QPoly& b) {
        std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] += b.c[i];
        return QPoly(std::move(r));
    }
    friend QPoly operator-(const QPoly& a, const QPoly& b) {
        std::vector<Rat> r(std::max(a.c.size(), b.c.size()), Rat(0));
        for (std::size_t i = 0; i < a.c.size(); ++i) r[i] += a.c[i];
        for (std::size_t i = 0; i < b.c.size(); ++i) r[i] -= b.c[i];
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const QPoly& a, const QPoly& b) {
        if (a.is_zero() || b.is_zero()) return QPoly();
        std::vector<Rat> r(a.c.size() + b.c.size() - 1, Rat(0));
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
        return QPoly(std::move(r));
    }
    friend QPoly operator*(const QPoly& a, const Rat& s) {
        QPoly r = a;
        for (auto& x : r.c) x *= s;
        r.trim();
        return r;
    }

    QPoly derivative() const {
        if (c.size() <= 1) return QPoly();
        std::vector<Rat> r(c.size() - 1);
        for (std::size_t i = 1; i < c.size(); ++i) r[i - 1] = c[i] * Rat((long)i);
        return QPoly(std::move(r));
    }

    Rat eval(const Rat& x) const {
        Rat acc(0);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    // Horner evaluation at working precision.
    Real eval(const Real& x, const PrecisionContext& ctx) const {
        Real acc(ctx);
        for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * x + to_real(*it, ctx);
        return acc;
    }
    Complex eval(const Complex& x, const PrecisionContext& ctx) const {
        Complex acc(ctx);
        for (auto it = c.rbegin(); it != c.rend(); ++it) {
            acc = acc * x;
            acc.re = acc.re + to_real(*it, ctx);
        }
        return acc;
    }
};

// Long division: a = q*b + r with deg r < deg b.
inline std::pair<QPoly, QPoly> divrem(const QPoly& a, const QPoly& b) {
    if (b.is_zero()) throw std::invalid_argument("divrem: division by zero polynomial");
    QPoly rem = a;
    long db = b.degree();
    if (rem.degree() < db) return {QPoly(), rem};
    std::vector<Rat> q(rem.degree() - db + 1, Rat(0));
    while (!rem.is_zero() && rem.degree() >= db) {
        long k = rem.degree() - db;
        Rat f = rem.c.back() / b.c.back();
        q[k] = f;
        for (long i = 0; i <= db; ++i) rem.c[k + i] -= f * b.c[i];
        rem.trim();
    }
    return {QPoly(std::move(q)), rem};
}

// Chebyshev polynomial T_n in the power basis (integer coefficients).
inline QPoly chebyshev_T_poly(unsigned long n) {
    QPoly tkm1 = QPoly::constant(Rat(1));
    if (n == 0) return tkm1;
    QPoly tk = QPoly::monomial(1);
    QPoly two_t({Rat(0), Rat(2)});
    for (unsigned long k = 1; k < n; ++k) {
        QPoly next = two_t * tk - tkm1;
        tkm1 = std::move(tk);
        tk = std::move(next);
    }
    return tk;
}

// Coefficients g_j of p = sum_j g_j T_j (plain, no halved first term).
// Horner in the Chebyshev basis: t*T_0 = T_1, t*T_j = (T_{j+1}+T_{j-1})/2.
inline std::vector<Rat> power_to_chebyshev(const QPoly& p) {
    std::vector<Rat> g;
    for (auto it = p.c.rbegin(); it != p.c.rend(); ++it) {
        std::vector<Rat> h(g.size() + 1, Rat(0));
        for (std::size_t j = 0; j < g.size(); ++j) {
            if (g[j] == 0) continue;
            if (j == 0) {
                h[1] += g[0];
            } else {
                Rat half = g[j] / 2;
                h[j + 1] += half;
                h[j - 1] += half;
            }
        }
        if (h.empty()) h.assign(1, Rat(0));
        h[0] += *it;
        g = std::move(h);
    }
    while (!g.empty() && g.back() == 0) g.pop_back();
    return g;
}

// (1/pi) * Integral_{-1}^{1} t^k T_n(t) (1-t^2)^{-1/2} dt for n >= 1:
// the T_n coefficient of t^k is 2^{1-k} C(k, (k-n)/2), and
// Integral T_n^2 w = pi/2.
inline Rat moment_monomial_Tn_over_pi(unsigned long k, unsigned long n) {
    if (n == 0) throw std::invalid_argument("moment: n must be >= 1");
    if (k < n || ((k - n) % 2) != 0) return Rat(0);
    Rat r(binom(k, (k - n) / 2));
    r /= 2;  // pi/2 factor, pi taken out
    mpq_div_2exp(r.get_mpq_t(), r.get_mpq_t(), k >= 1 ? k - 1 : 0);
    return r;
}

}  // namespace fcq

#endif
