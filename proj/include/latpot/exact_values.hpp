// Exact potential values on Z^2 for the simple walk (McCrea-Whipple recursion),
// the diagonal closed form, and Euler-Maclaurin asymptotics of the odd harmonic sum.
#pragma once

#include "latpot/scalar.hpp"
#include <map>
#include <optional>
#include <vector>

namespace latpot {

// a value of the potential: exact n + q/pi and/or a numeric approximation
struct PotentialValue {
    std::optional<std::pair<Rational, Rational>> exact;  // (n, q)
    std::optional<std::pair<Real, Real>> numeric;        // (value, error bound)

    static PotentialValue exact_value(Rational n, Rational q) {
        PotentialValue v; v.exact = {std::move(n), std::move(q)};
        return v;
    }
    static PotentialValue numeric_value(Real x, Real err) {
        PotentialValue v; v.numeric = {std::move(x), std::move(err)};
        return v;
    }
    Real eval(mpfr_prec_t prec) const {
        if (exact) {
            // n and q grow exponentially while n + q/pi stays logarithmic, so the
            // working precision must cover the cancellation
            size_t qbits = mpz_sizeinbase(exact->second.num().get_mpz_t(), 2) +
                           mpz_sizeinbase(exact->first.num().get_mpz_t(), 2);
            mpfr_prec_t work = prec + (mpfr_prec_t)qbits + 32;
            Real r = Real::of(exact->first, work) +
                     Real::of(exact->second, work) / Real::pi(work);
            Real out(prec);
            mpfr_set(out.raw(), r.raw(), MPFR_RNDN);
            return out;
        }
        return numeric->first;
    }
    std::string str() const;
};

// exact Bernoulli number B_n (B_1 = -1/2)
Rational bernoulli(int n);

// a(m+im) = (4/pi) sum_{j=1..m} 1/(2j-1), exact
PotentialValue diagonal_value(long m);

// Asymptotics of S(m) = sum_{j=1..m} 1/(2j-1):
//   S(m) = (1/2) log m + (gamma + log 4)/2 + sum_j c_j m^{-j},  c_j exact rational
struct DiagonalSeries {
    Rational log_coefficient;            // 1/2
    SymbolicConstant constant;           // (gamma + 2 log2)/2
    std::map<int, Rational> inv_coeffs;  // j -> c_j (odd j vanish)
    int order;                           // coefficients through m^-order

    Real eval(long m, mpfr_prec_t prec) const;
};

DiagonalSeries odd_harmonic_asymptotics(int J);

// Exact a(x,y) for the simple Z^2 walk.  The table fills the triangle
// 0 <= y <= x <= radius by the outward recursion from diagonal seeds; lookups
// reduce by 8-fold symmetry and extend the fill on demand.
class McCreaWhippleTable {
public:
    PotentialValue value(long x, long y);
    void fill(long radius);
    long radius() const { return radius_; }

private:
    const std::pair<Rational, Rational>& at(long x, long y) const;
    std::vector<std::vector<std::pair<Rational, Rational>>> tri_;  // tri_[x][y], y <= x
    long radius_ = -1;
};

PotentialValue mccrea_whipple(long x, long y);  // convenience wrapper on a shared table

}  // namespace latpot
