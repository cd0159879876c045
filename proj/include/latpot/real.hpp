// RAII wrapper around MPFR: arbitrary-precision reals and a complex pair type.
// Results carry max(operand precision); precision is set explicitly at creation.
#pragma once

#include <mpfr.h>
#include "latpot/rational.hpp"
#include <string>
#include <utility>

namespace latpot {

class Real {
public:
    explicit Real(mpfr_prec_t prec = 53) { mpfr_init2(v_, prec); mpfr_set_zero(v_, 1); }
    Real(const Real& o) { mpfr_init2(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
    Real(Real&& o) noexcept { mpfr_init2(v_, 53); mpfr_swap(v_, o.v_); }
    Real& operator=(const Real& o) {
        if (this != &o) { mpfr_set_prec(v_, mpfr_get_prec(o.v_)); mpfr_set(v_, o.v_, MPFR_RNDN); }
        return *this;
    }
    Real& operator=(Real&& o) noexcept { mpfr_swap(v_, o.v_); return *this; }
    ~Real() { mpfr_clear(v_); }

    static Real of(double x, mpfr_prec_t prec) { Real r(prec); mpfr_set_d(r.v_, x, MPFR_RNDN); return r; }
    static Real of(long x, mpfr_prec_t prec) { Real r(prec); mpfr_set_si(r.v_, x, MPFR_RNDN); return r; }
    static Real of(const Rational& q, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_q(r.v_, q.raw().get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static Real of(const Integer& n, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_z(r.v_, n.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static Real pi(mpfr_prec_t prec) { Real r(prec); mpfr_const_pi(r.v_, MPFR_RNDN); return r; }
    static Real euler_gamma(mpfr_prec_t prec) { Real r(prec); mpfr_const_euler(r.v_, MPFR_RNDN); return r; }
    static Real ln2(mpfr_prec_t prec) { Real r(prec); mpfr_const_log2(r.v_, MPFR_RNDN); return r; }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    mpfr_srcptr raw() const { return v_; }
    mpfr_ptr raw() { return v_; }

    friend Real operator+(const Real& a, const Real& b) { return bin(mpfr_add, a, b); }
    friend Real operator-(const Real& a, const Real& b) { return bin(mpfr_sub, a, b); }
    friend Real operator*(const Real& a, const Real& b) { return bin(mpfr_mul, a, b); }
    friend Real operator/(const Real& a, const Real& b) { return bin(mpfr_div, a, b); }
    Real operator-() const { Real r(prec()); mpfr_neg(r.v_, v_, MPFR_RNDN); return r; }
    Real& operator+=(const Real& o) { mpfr_prec_round(v_, std::max(prec(), o.prec()), MPFR_RNDN); mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator-=(const Real& o) { mpfr_prec_round(v_, std::max(prec(), o.prec()), MPFR_RNDN); mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
    Real& operator*=(const Real& o) { mpfr_prec_round(v_, std::max(prec(), o.prec()), MPFR_RNDN); mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }

    friend Real operator*(const Real& a, long b) { Real r(a.prec()); mpfr_mul_si(r.v_, a.v_, b, MPFR_RNDN); return r; }
    friend Real operator/(const Real& a, long b) { Real r(a.prec()); mpfr_div_si(r.v_, a.v_, b, MPFR_RNDN); return r; }

    bool operator<(const Real& o) const { return mpfr_cmp(v_, o.v_) < 0; }
    bool operator>(const Real& o) const { return mpfr_cmp(v_, o.v_) > 0; }
    bool operator<=(const Real& o) const { return mpfr_cmp(v_, o.v_) <= 0; }
    bool operator>=(const Real& o) const { return mpfr_cmp(v_, o.v_) >= 0; }
    bool operator==(const Real& o) const { return mpfr_cmp(v_, o.v_) == 0; }
    int sign() const { return mpfr_sgn(v_); }
    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }

    Real abs() const { Real r(prec()); mpfr_abs(r.v_, v_, MPFR_RNDN); return r; }
    Real floor() const { Real r(prec()); mpfr_floor(r.v_, v_); return r; }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    Integer to_integer_floor() const {
        Integer n;
        mpfr_t t; mpfr_init2(t, prec()); mpfr_floor(t, v_);
        mpfr_get_z(n.get_mpz_t(), t, MPFR_RNDZ);
        mpfr_clear(t);
        return n;
    }

    std::string str(int digits = 20) const {
        char* s = nullptr;
        mpfr_asprintf(&s, "%.*Rg", digits, v_);
        std::string out(s);
        mpfr_free_str(s);
        return out;
    }

private:
    using mpfr_fun = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    static Real bin(mpfr_fun f, const Real& a, const Real& b) {
        Real r(std::max(a.prec(), b.prec()));
        f(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    mpfr_t v_;
};

#define LATPOT_REAL_UNARY(name, mpfr_name)                       \
    inline Real name(const Real& x) {                            \
        Real r(x.prec());                                        \
        mpfr_name(r.raw(), x.raw(), MPFR_RNDN);                  \
        return r;                                                \
    }
LATPOT_REAL_UNARY(exp, mpfr_exp)
LATPOT_REAL_UNARY(log, mpfr_log)
LATPOT_REAL_UNARY(sqrt, mpfr_sqrt)
LATPOT_REAL_UNARY(sin, mpfr_sin)
LATPOT_REAL_UNARY(cos, mpfr_cos)
LATPOT_REAL_UNARY(tgamma, mpfr_gamma)
#undef LATPOT_REAL_UNARY

inline Real atan2(const Real& y, const Real& x) {
    Real r(std::max(y.prec(), x.prec()));
    mpfr_atan2(r.raw(), y.raw(), x.raw(), MPFR_RNDN);
    return r;
}
inline Real pow_si(const Real& x, long e) {
    Real r(x.prec());
    mpfr_pow_si(r.raw(), x.raw(), e, MPFR_RNDN);
    return r;
}
// upper incomplete gamma Gamma(a, x)
inline Real gamma_inc(const Real& a, const Real& x) {
    Real r(std::max(a.prec(), x.prec()));
    mpfr_gamma_inc(r.raw(), a.raw(), x.raw(), MPFR_RNDN);
    return r;
}
// E1(x) = -Ei(-x) for x > 0
inline Real expint_e1(const Real& x) {
    Real r(x.prec());
    mpfr_neg(r.raw(), x.raw(), MPFR_RNDN);
    mpfr_eint(r.raw(), r.raw(), MPFR_RNDN);
    mpfr_neg(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

// Complex numbers with Real parts.
struct Cplx {
    Real re, im;
    explicit Cplx(mpfr_prec_t prec = 53) : re(prec), im(prec) {}
    Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

    static Cplx of(double x, double y, mpfr_prec_t prec) { return {Real::of(x, prec), Real::of(y, prec)}; }
    mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }

    friend Cplx operator+(const Cplx& a, const Cplx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cplx operator-(const Cplx& a, const Cplx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cplx operator*(const Cplx& a, const Cplx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cplx operator*(const Cplx& a, const Real& s) { return {a.re * s, a.im * s}; }
    Cplx operator-() const { return {-re, -im}; }
    Cplx conj() const { return {re, -im}; }
    Real norm2() const { return re * re + im * im; }
    Real abs() const { return sqrt(norm2()); }
    friend Cplx operator/(const Cplx& a, const Cplx& b) {
        Real n = b.norm2();
        Cplx t = a * b.conj();
        return {t.re / n, t.im / n};
    }
    Cplx pow_int(long e) const {
        mpfr_prec_t p = prec();
        Cplx base = *this;
        if (e < 0) {
            base = Cplx{Real::of(1L, p), Real::of(0L, p)} / base;
            e = -e;
        }
        Cplx r{Real::of(1L, p), Real::of(0L, p)};
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }
};

// e^{i t}
inline Cplx cis(const Real& t) {
    Cplx r(t.prec());
    mpfr_sin_cos(r.im.raw(), r.re.raw(), t.raw(), MPFR_RNDN);
    return r;
}
inline Cplx csqrt(const Cplx& z) {
    // principal branch
    mpfr_prec_t p = z.prec();
    Real r = z.abs();
    Real t = atan2(z.im, z.re);
    Real sr = sqrt(r);
    Real th = t / 2L;
    Cplx u = cis(th);
    return {sr * u.re, sr * u.im};
}

}  // namespace latpot
