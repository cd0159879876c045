// Exact scalar tower: the quadratic field Q(sqrt d), its complexification,
// pi-graded values x + y/pi, and the symbolic constants built from Euler's
// gamma and log 2.
#pragma once

#include "latpot/rational.hpp"
#include "latpot/real.hpp"
#include <optional>
#include <string>

namespace latpot {

// a + b*sqrt(d).  d is square-free; d <= 1 means the element is plain rational
// (b normalized away).  Mixing two values with different d is allowed only when
// one of them is rational.
class FieldElement {
public:
    FieldElement() : a_(0), b_(0), d_(1) {}
    FieldElement(Rational a) : a_(std::move(a)), b_(0), d_(1) {}
    FieldElement(int a) : a_(a), b_(0), d_(1) {}
    FieldElement(Rational a, Rational b, int d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
        normalize();
    }

    static FieldElement sqrt_d(int d) { return FieldElement(0, 1, d); }
    static FieldElement parse(const std::string& s, int d);

    const Rational& rational_part() const { return a_; }
    const Rational& surd_part() const { return b_; }
    int d() const { return d_; }
    bool is_rational() const { return b_.is_zero(); }
    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }

    // exact value as a rational, throws if the surd part is present
    const Rational& as_rational() const {
        if (!is_rational()) throw std::domain_error("FieldElement: not rational");
        return a_;
    }

    friend FieldElement operator+(const FieldElement& x, const FieldElement& y) {
        auto [a, b, d] = align(x, y);
        return FieldElement(a.a_ + b.a_, a.b_ + b.b_, d);
    }
    friend FieldElement operator-(const FieldElement& x, const FieldElement& y) {
        auto [a, b, d] = align(x, y);
        return FieldElement(a.a_ - b.a_, a.b_ - b.b_, d);
    }
    friend FieldElement operator*(const FieldElement& x, const FieldElement& y) {
        auto [a, b, d] = align(x, y);
        return FieldElement(a.a_ * b.a_ + a.b_ * b.b_ * Rational(d),
                            a.a_ * b.b_ + a.b_ * b.a_, d);
    }
    friend FieldElement operator/(const FieldElement& x, const FieldElement& y) {
        return x * y.inverse();
    }
    FieldElement operator-() const { return FieldElement(-a_, -b_, d_); }

    // (a + b sqrt d)^{-1} via the conjugate
    FieldElement inverse() const {
        if (is_zero()) throw std::domain_error("FieldElement: division by zero");
        Rational n = a_ * a_ - b_ * b_ * Rational(d_);
        return FieldElement(a_ / n, -b_ / n, d_);
    }
    // Galois conjugate a - b sqrt d
    FieldElement surd_conj() const { return FieldElement(a_, -b_, d_); }

    bool operator==(const FieldElement& o) const {
        return a_ == o.a_ && b_ == o.b_ && (is_rational() || o.is_rational() ? is_rational() == o.is_rational() : d_ == o.d_);
    }
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    // exact sign of a + b sqrt(d)
    int sign() const {
        if (b_.is_zero()) return a_.sign();
        if (a_.is_zero()) return b_.sign();
        if (a_.sign() == b_.sign()) return a_.sign();
        // opposite signs: compare a^2 with b^2 d
        Rational lhs = a_ * a_, rhs = b_ * b_ * Rational(d_);
        int c = lhs == rhs ? 0 : (lhs < rhs ? -1 : 1);
        return c == 0 ? 0 : (c > 0 ? a_.sign() : b_.sign());
    }
    bool operator<(const FieldElement& o) const { return (*this - o).sign() < 0; }
    bool operator>(const FieldElement& o) const { return (*this - o).sign() > 0; }

    // exact square root within the field, if one exists (rational or rational*sqrt d)
    std::optional<FieldElement> exact_sqrt() const;

    Real to_real(mpfr_prec_t prec) const {
        Real r = Real::of(a_, prec);
        if (!b_.is_zero())
            r += Real::of(b_, prec) * sqrt(Real::of(Rational(d_), prec));
        return r;
    }

    std::string str() const;

private:
    void normalize() {
        if (d_ <= 1) { a_ += b_ * Rational(d_ == 1 ? 1 : 0); b_ = Rational(0); d_ = 1; }
        if (b_.is_zero()) d_ = std::max(d_, 1);
    }
    struct Aligned { const FieldElement& x; const FieldElement& y; int d; };
    static Aligned align(const FieldElement& x, const FieldElement& y) {
        if (x.is_rational()) return {x, y, y.is_rational() ? 1 : y.d_};
        if (y.is_rational()) return {x, y, x.d_};
        if (x.d_ != y.d_) throw std::domain_error("FieldElement: mismatched surds");
        return {x, y, x.d_};
    }
    Rational a_, b_;
    int d_;
};

// Complex numbers with FieldElement components.
class ExactComplex {
public:
    ExactComplex() = default;
    ExactComplex(FieldElement re) : re_(std::move(re)) {}
    ExactComplex(int re) : re_(re) {}
    ExactComplex(Rational re) : re_(std::move(re)) {}
    ExactComplex(FieldElement re, FieldElement im) : re_(std::move(re)), im_(std::move(im)) {}

    static ExactComplex i() { return ExactComplex(FieldElement(0), FieldElement(1)); }

    const FieldElement& real() const { return re_; }
    const FieldElement& imag() const { return im_; }
    bool is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_real() const { return im_.is_zero(); }

    friend ExactComplex operator+(const ExactComplex& a, const ExactComplex& b) {
        return {a.re_ + b.re_, a.im_ + b.im_};
    }
    friend ExactComplex operator-(const ExactComplex& a, const ExactComplex& b) {
        return {a.re_ - b.re_, a.im_ - b.im_};
    }
    friend ExactComplex operator*(const ExactComplex& a, const ExactComplex& b) {
        return {a.re_ * b.re_ - a.im_ * b.im_, a.re_ * b.im_ + a.im_ * b.re_};
    }
    ExactComplex operator-() const { return {-re_, -im_}; }
    ExactComplex conj() const { return {re_, -im_}; }
    FieldElement norm2() const { return re_ * re_ + im_ * im_; }
    ExactComplex inverse() const {
        if (is_zero()) throw std::domain_error("ExactComplex: division by zero");
        FieldElement n = norm2().inverse();
        return {re_ * n, -(im_ * n)};
    }
    friend ExactComplex operator/(const ExactComplex& a, const ExactComplex& b) {
        return a * b.inverse();
    }
    ExactComplex pow_int(long e) const {
        ExactComplex base = *this;
        if (e < 0) { base = base.inverse(); e = -e; }
        ExactComplex r(FieldElement(1));
        while (e) {
            if (e & 1) r = r * base;
            base = base * base;
            e >>= 1;
        }
        return r;
    }
    bool operator==(const ExactComplex& o) const { return re_ == o.re_ && im_ == o.im_; }
    bool operator!=(const ExactComplex& o) const { return !(*this == o); }

    Cplx to_cplx(mpfr_prec_t prec) const { return {re_.to_real(prec), im_.to_real(prec)}; }
    std::string str() const;

private:
    FieldElement re_, im_;
};

// c0 + c1/pi with ExactComplex grades.  Multiplication of two values with
// nonzero 1/pi parts is rejected: nothing in this artifact produces pi^-2.
class PiGraded {
public:
    PiGraded() = default;
    PiGraded(ExactComplex c0, ExactComplex c1) : c0_(std::move(c0)), c1_(std::move(c1)) {}
    static PiGraded integer(ExactComplex c0) { return PiGraded(std::move(c0), ExactComplex()); }
    static PiGraded over_pi(ExactComplex c1) { return PiGraded(ExactComplex(), std::move(c1)); }

    const ExactComplex& c0() const { return c0_; }
    const ExactComplex& c1() const { return c1_; }
    bool is_zero() const { return c0_.is_zero() && c1_.is_zero(); }

    friend PiGraded operator+(const PiGraded& a, const PiGraded& b) {
        return {a.c0_ + b.c0_, a.c1_ + b.c1_};
    }
    friend PiGraded operator-(const PiGraded& a, const PiGraded& b) {
        return {a.c0_ - b.c0_, a.c1_ - b.c1_};
    }
    PiGraded operator-() const { return {-c0_, -c1_}; }
    friend PiGraded operator*(const PiGraded& a, const ExactComplex& s) {
        return {a.c0_ * s, a.c1_ * s};
    }
    friend PiGraded operator*(const PiGraded& a, const PiGraded& b) {
        if (!a.c1_.is_zero() && !b.c1_.is_zero())
            throw std::domain_error("PiGraded: product would create pi^-2");
        return {a.c0_ * b.c0_, a.c0_ * b.c1_ + a.c1_ * b.c0_};
    }
    PiGraded conj() const { return {c0_.conj(), c1_.conj()}; }
    bool operator==(const PiGraded& o) const { return c0_ == o.c0_ && c1_ == o.c1_; }
    bool operator!=(const PiGraded& o) const { return !(*this == o); }

    Cplx eval(mpfr_prec_t prec) const;
    std::string str() const;  // "n + (q)/pi"

private:
    ExactComplex c0_, c1_;
};

// Exact constants of the form  r0 + g0*gamma + l0*log2 + (r1 + g1*gamma + l1*log2)/pi.
// The lambda constants of the expansions live in the 1/pi grade; the diagonal
// series constant (gamma + 2 log 2)/2 lives in the plain grade.
class SymbolicConstant {
public:
    SymbolicConstant() = default;
    static SymbolicConstant rational(Rational r) {
        SymbolicConstant s; s.r0_ = std::move(r); return s;
    }
    // (r + g*gamma + l*log2) / pi
    static SymbolicConstant over_pi(Rational r, Rational g, Rational l) {
        SymbolicConstant s; s.r1_ = std::move(r); s.g1_ = std::move(g); s.l1_ = std::move(l);
        return s;
    }
    // r + g*gamma + l*log2
    static SymbolicConstant plain(Rational r, Rational g, Rational l) {
        SymbolicConstant s; s.r0_ = std::move(r); s.g0_ = std::move(g); s.l0_ = std::move(l);
        return s;
    }

    friend SymbolicConstant operator+(const SymbolicConstant& a, const SymbolicConstant& b) {
        SymbolicConstant s;
        s.r0_ = a.r0_ + b.r0_; s.g0_ = a.g0_ + b.g0_; s.l0_ = a.l0_ + b.l0_;
        s.r1_ = a.r1_ + b.r1_; s.g1_ = a.g1_ + b.g1_; s.l1_ = a.l1_ + b.l1_;
        return s;
    }
    friend SymbolicConstant operator-(const SymbolicConstant& a, const SymbolicConstant& b) {
        SymbolicConstant s;
        s.r0_ = a.r0_ - b.r0_; s.g0_ = a.g0_ - b.g0_; s.l0_ = a.l0_ - b.l0_;
        s.r1_ = a.r1_ - b.r1_; s.g1_ = a.g1_ - b.g1_; s.l1_ = a.l1_ - b.l1_;
        return s;
    }
    friend SymbolicConstant operator*(const SymbolicConstant& a, const Rational& q) {
        SymbolicConstant s;
        s.r0_ = a.r0_ * q; s.g0_ = a.g0_ * q; s.l0_ = a.l0_ * q;
        s.r1_ = a.r1_ * q; s.g1_ = a.g1_ * q; s.l1_ = a.l1_ * q;
        return s;
    }
    // multiply by 1/pi; rejects values that already carry a 1/pi grade
    SymbolicConstant div_pi() const {
        if (!(r1_.is_zero() && g1_.is_zero() && l1_.is_zero()))
            throw std::domain_error("SymbolicConstant: pi^-2 not representable");
        SymbolicConstant s;
        s.r1_ = r0_; s.g1_ = g0_; s.l1_ = l0_;
        return s;
    }
    bool operator==(const SymbolicConstant& o) const {
        return r0_ == o.r0_ && g0_ == o.g0_ && l0_ == o.l0_ &&
               r1_ == o.r1_ && g1_ == o.g1_ && l1_ == o.l1_;
    }
    bool is_zero() const { return *this == SymbolicConstant(); }

    const Rational& pi_rational() const { return r1_; }
    const Rational& pi_gamma_coeff() const { return g1_; }
    const Rational& pi_log2_coeff() const { return l1_; }
    const Rational& plain_rational() const { return r0_; }
    const Rational& plain_gamma_coeff() const { return g0_; }
    const Rational& plain_log2_coeff() const { return l0_; }

    Real eval(mpfr_prec_t prec) const;
    std::string str() const;

private:
    Rational r0_, g0_, l0_;  // plain grade
    Rational r1_, g1_, l1_;  // 1/pi grade
};

// Continued-fraction rational reconstruction: p/q with q <= max_denominator and
// |x - p/q| < 1/(2 q max_denominator), or nothing.
std::optional<Rational> rational_reconstruct(const Real& x, const Integer& max_denominator);

}  // namespace latpot
