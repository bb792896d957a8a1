#ifndef FCQ_PRECISION_HPP
#define FCQ_PRECISION_HPP

#include <mpfr.h>

#include <cstdio>
#include <stdexcept>
#include <string>
#include <utility>

namespace fcq {

// Thrown when a result would be dominated by rounding noise at the
// current working precision.
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Thrown when an iterative scheme fails to stabilize within its budget.
struct ConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Working precision, in bits, for every operation evaluated under it.
// Immutable; safe to share across threads.
struct PrecisionContext {
    long bits;

    explicit PrecisionContext(long b) : bits(b) {
        if (b < 64)
            throw std::invalid_argument("PrecisionContext: bits must be >= 64");
    }

    // Same context with extra guard bits for internal stages whose
    // conditioning losses must not show up in delivered results.
    PrecisionContext boosted(long extra) const { return PrecisionContext(bits + extra); }
};

// Arbitrary-precision real backed by mpfr_t.  Every value carries its own
// precision; binary operations allocate the result at the wider of the two
// operand precisions, so arithmetic started from one PrecisionContext stays
// at that context's precision.
class Real {
  public:
    Real() {
        mpfr_init2(v_, 64);
        mpfr_set_nan(v_);
    }
    explicit Real(const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.bits);
        mpfr_set_zero(v_, 1);
    }
    Real(long value, const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.bits);
        mpfr_set_si(v_, value, MPFR_RNDN);
    }
    Real(int value, const PrecisionContext& ctx) : Real((long)value, ctx) {}
    Real(unsigned long value, const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.bits);
        mpfr_set_ui(v_, value, MPFR_RNDN);
    }
    Real(double value, const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.bits);
        mpfr_set_d(v_, value, MPFR_RNDN);
    }
    // Parses a decimal string at the context precision.
    Real(const char* decimal, const PrecisionContext& ctx) {
        mpfr_init2(v_, ctx.bits);
        if (mpfr_set_str(v_, decimal, 10, MPFR_RNDN) != 0)
            throw std::invalid_argument(std::string("Real: cannot parse \"") + decimal + "\"");
    }
    Real(const std::string& decimal, const PrecisionContext& ctx)
        : Real(decimal.c_str(), ctx) {}

    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, 64);
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }
    long prec() const { return mpfr_get_prec(v_); }

    static Real pi(const PrecisionContext& ctx) {
        Real r(ctx);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }
    // 2^e, exact.
    static Real pow2(long e, const PrecisionContext& ctx) {
        Real r(ctx);
        mpfr_set_ui_2exp(r.v_, 1, e, MPFR_RNDN);
        return r;
    }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }

    // Scientific-notation decimal string with the given significant digits.
    std::string str(long digits) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Re", (int)(digits - 1), v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

    friend Real operator-(const Real& a) {
        Real r = make(a.prec());
        mpfr_neg(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

#define FCQ_REAL_BINOP(op, fn)                                   \
    friend Real operator op(const Real& a, const Real& b) {     \
        Real r = make(std::max(a.prec(), b.prec()));            \
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);                        \
        return r;                                               \
    }                                                           \
    friend Real operator op(const Real& a, long b) {            \
        Real r = make(a.prec());                                \
        fn##_si(r.v_, a.v_, b, MPFR_RNDN);                      \
        return r;                                               \
    }
    FCQ_REAL_BINOP(+, mpfr_add)
    FCQ_REAL_BINOP(-, mpfr_sub)
    FCQ_REAL_BINOP(*, mpfr_mul)
    FCQ_REAL_BINOP(/, mpfr_div)
#undef FCQ_REAL_BINOP

    friend Real operator+(long a, const Real& b) { return b + a; }
    friend Real operator*(long a, const Real& b) { return b * a; }
    friend Real operator-(long a, const Real& b) {
        Real r = make(b.prec());
        mpfr_si_sub(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real operator/(long a, const Real& b) {
        Real r = make(b.prec());
        mpfr_si_div(r.v_, a, b.v_, MPFR_RNDN);
        return r;
    }

    Real& operator+=(const Real& o) { return *this = *this + o; }
    Real& operator-=(const Real& o) { return *this = *this - o; }
    Real& operator*=(const Real& o) { return *this = *this * o; }
    Real& operator/=(const Real& o) { return *this = *this / o; }

    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }
    friend bool operator!=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) != 0; }
    friend bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.v_, b.v_) != 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.v_, b.v_) != 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.v_, b.v_) != 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.v_, b.v_) != 0; }
    friend bool operator==(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) == 0; }
    friend bool operator<(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) < 0; }
    friend bool operator>(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) > 0; }
    friend bool operator<=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) <= 0; }
    friend bool operator>=(const Real& a, long b) { return mpfr_cmp_si(a.v_, b) >= 0; }

#define FCQ_REAL_FN1(name, fn)             \
    friend Real name(const Real& a) {      \
        Real r = make(a.prec());           \
        fn(r.v_, a.v_, MPFR_RNDN);         \
        return r;                          \
    }
    FCQ_REAL_FN1(abs, mpfr_abs)
    FCQ_REAL_FN1(sqrt, mpfr_sqrt)
    FCQ_REAL_FN1(exp, mpfr_exp)
    FCQ_REAL_FN1(log, mpfr_log)
    FCQ_REAL_FN1(cos, mpfr_cos)
    FCQ_REAL_FN1(sin, mpfr_sin)
#undef FCQ_REAL_FN1

    friend Real floor(const Real& a) {
        Real r = make(a.prec());
        mpfr_rint(r.v_, a.v_, MPFR_RNDD);
        return r;
    }

    friend Real pow_si(const Real& a, long e) {
        Real r = make(a.prec());
        mpfr_pow_si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend Real hypot(const Real& a, const Real& b) {
        Real r = make(std::max(a.prec(), b.prec()));
        mpfr_hypot(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    friend Real mul_2si(const Real& a, long e) {
        Real r = make(a.prec());
        mpfr_mul_2si(r.v_, a.v_, e, MPFR_RNDN);
        return r;
    }
    friend void sin_cos(Real& s, Real& c, const Real& a) {
        mpfr_set_prec(s.v_, a.prec());
        mpfr_set_prec(c.v_, a.prec());
        mpfr_sin_cos(s.v_, c.v_, a.v_, MPFR_RNDN);
    }
    friend Real max(const Real& a, const Real& b) { return a >= b ? a : b; }
    friend Real min(const Real& a, const Real& b) { return a <= b ? a : b; }

  private:
    static Real make(long prec) {
        Real r;
        mpfr_set_prec(r.v_, prec);
        return r;
    }
    mpfr_t v_;
};

// Complex number over Real.  Only the operations the kernel formulas need.
struct Complex {
    Real re, im;

    Complex() = default;
    explicit Complex(const PrecisionContext& ctx) : re(ctx), im(ctx) {}
    Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}
    explicit Complex(Real r) : re(std::move(r)), im(Real(0L, PrecisionContext(re.prec() < 64 ? 64 : re.prec()))) {}

    static Complex polar(const Real& radius, const Real& angle) {
        Real s(0L, PrecisionContext(std::max(64L, angle.prec())));
        Real c = s;
        sin_cos(s, c, angle);
        return Complex(radius * c, radius * s);
    }

    friend Complex operator+(const Complex& a, const Complex& b) {
        return {a.re + b.re, a.im + b.im};
    }
    friend Complex operator-(const Complex& a, const Complex& b) {
        return {a.re - b.re, a.im - b.im};
    }
    friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
    friend Complex operator*(const Complex& a, const Complex& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Complex operator*(const Complex& a, const Real& b) { return {a.re * b, a.im * b}; }
    friend Complex operator*(const Real& b, const Complex& a) { return a * b; }
    friend Complex operator/(const Complex& a, const Real& b) { return {a.re / b, a.im / b}; }
    friend Complex operator/(const Complex& a, const Complex& b) {
        Real d = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
    }
    Complex& operator+=(const Complex& o) { return *this = *this + o; }

    friend Real abs(const Complex& z) { return hypot(z.re, z.im); }
    friend Real norm(const Complex& z) { return z.re * z.re + z.im * z.im; }
    friend Complex conj(const Complex& z) { return {z.re, -z.im}; }

    friend Complex inverse(const Complex& z) {
        Real d = norm(z);
        return {z.re / d, -(z.im / d)};
    }

    // Principal branch (cut along the negative real axis).
    friend Complex sqrt(const Complex& z) {
        PrecisionContext ctx(std::max({64L, z.re.prec(), z.im.prec()}));
        if (z.im.is_zero()) {
            if (z.re.sign() >= 0) return Complex(sqrt(z.re), Real(0L, ctx));
            return Complex(Real(0L, ctx), sqrt(-z.re));
        }
        Real r = abs(z);
        if (z.re.sign() >= 0) {
            Real t = sqrt(mul_2si(r + z.re, -1));
            return {t, mul_2si(z.im / t, -1)};
        }
        Real t = sqrt(mul_2si(r - z.re, -1));
        Real u = mul_2si(abs(z.im) / t, -1);
        if (z.im.sign() >= 0) return {u, t};
        return {u, -t};
    }

    friend Complex exp(const Complex& z) {
        Real m = exp(z.re);
        Real s(0L, PrecisionContext(std::max(64L, z.im.prec())));
        Real c = s;
        sin_cos(s, c, z.im);
        return {m * c, m * s};
    }

    friend Complex pow_ui(const Complex& z, unsigned long e) {
        PrecisionContext ctx(std::max({64L, z.re.prec(), z.im.prec()}));
        Complex acc(Real(1L, ctx), Real(0L, ctx));
        Complex base = z;
        while (e > 0) {
            if (e & 1UL) acc = acc * base;
            base = base * base;
            e >>= 1UL;
        }
        return acc;
    }
};

}  // namespace fcq

#endif
