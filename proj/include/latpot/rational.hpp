// Arbitrary-precision rationals on top of GMP, always canonical (lowest terms,
// positive denominator).
#pragma once

#include <gmpxx.h>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

namespace latpot {

using Integer = mpz_class;

class Rational {
public:
    Rational() : q_(0) {}
    Rational(int n) : q_(n) {}
    Rational(long n) : q_(n) {}
    Rational(long long n) : q_(Integer(std::to_string(n))) {}
    Rational(const Integer& n) : q_(n) {}
    Rational(const Integer& num, const Integer& den) : q_(num, den) {
        if (den == 0) throw std::domain_error("Rational: zero denominator");
        q_.canonicalize();
    }
    Rational(long num, long den) : Rational(Integer(num), Integer(den)) {}
    explicit Rational(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    static Rational parse(const std::string& s);

    const Integer num() const { return q_.get_num(); }
    const Integer den() const { return q_.get_den(); }
    const mpq_class& raw() const { return q_; }

    Rational operator-() const { return Rational(mpq_class(-q_)); }
    Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
    Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
    Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
    Rational& operator/=(const Rational& o) {
        if (o.q_ == 0) throw std::domain_error("Rational: division by zero");
        q_ /= o.q_;
        return *this;
    }
    friend Rational operator+(Rational a, const Rational& b) { return a += b; }
    friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
    friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
    friend Rational operator/(Rational a, const Rational& b) { return a /= b; }

    bool operator==(const Rational& o) const { return q_ == o.q_; }
    bool operator!=(const Rational& o) const { return q_ != o.q_; }
    bool operator<(const Rational& o) const { return q_ < o.q_; }
    bool operator<=(const Rational& o) const { return q_ <= o.q_; }
    bool operator>(const Rational& o) const { return q_ > o.q_; }
    bool operator>=(const Rational& o) const { return q_ >= o.q_; }

    int sign() const { return sgn(q_); }
    bool is_zero() const { return q_ == 0; }
    bool is_integer() const { return q_.get_den() == 1; }
    Rational abs() const { return Rational(mpq_class(::abs(q_))); }

    Rational pow_int(long e) const {
        if (e == 0) return Rational(1);
        mpq_class base = q_;
        if (e < 0) {
            if (q_ == 0) throw std::domain_error("Rational: 0^negative");
            base = 1 / base;
            e = -e;
        }
        mpq_class r(1);
        while (e) {
            if (e & 1) r *= base;
            base *= base;
            e >>= 1;
        }
        return Rational(r);
    }

    double to_double() const { return q_.get_d(); }
    std::string str() const { return q_.get_str(); }

private:
    mpq_class q_;
};

inline Rational Rational::parse(const std::string& s) {
    std::string t;
    for (char c : s) if (!isspace((unsigned char)c)) t += c;
    if (t.empty()) throw std::invalid_argument("Rational: empty string");
    mpq_class q;
    if (q.set_str(t, 10) != 0)
        throw std::invalid_argument("Rational: cannot parse '" + s + "'");
    if (q.get_den() == 0) throw std::domain_error("Rational: zero denominator in '" + s + "'");
    q.canonicalize();
    return Rational(q);
}

// n! as an exact integer
inline Integer factorial(unsigned long n) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), n);
    return r;
}

inline Integer binomial(unsigned long n, unsigned long k) {
    Integer r;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

// falling factorial k(k-1)...(k-a+1) over the integers (k may be negative)
inline Integer falling_factorial(long k, unsigned a) {
    Integer r(1);
    for (unsigned i = 0; i < a; ++i) r *= Integer(k - (long)i);
    return r;
}

}  // namespace latpot
