#include "latpot/scalar.hpp"
#include <sstream>

namespace latpot {

std::optional<FieldElement> FieldElement::exact_sqrt() const {
    if (sign() < 0) return std::nullopt;
    if (is_rational()) {
        // sqrt(p/q) rational?
        Integer n = a_.num(), d = a_.den();
        if (mpz_perfect_square_p(n.get_mpz_t()) && mpz_perfect_square_p(d.get_mpz_t())) {
            Integer rn, rd;
            mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
            mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
            return FieldElement(Rational(rn, rd));
        }
        if (d_ > 1) {
            // sqrt(p/q) = r*sqrt(d) with r rational?
            Rational scaled = a_ / Rational(d_);
            Integer sn = scaled.num(), sd = scaled.den();
            if (mpz_perfect_square_p(sn.get_mpz_t()) && mpz_perfect_square_p(sd.get_mpz_t())) {
                Integer rn, rd;
                mpz_sqrt(rn.get_mpz_t(), sn.get_mpz_t());
                mpz_sqrt(rd.get_mpz_t(), sd.get_mpz_t());
                return FieldElement(Rational(0), Rational(rn, rd), d_);
            }
        }
        return std::nullopt;
    }
    return std::nullopt;
}

std::string FieldElement::str() const {
    if (is_rational()) return a_.str();
    std::string out = a_.str();
    if (b_.sign() >= 0)
        out += "+" + b_.str() + "*s";
    else
        out += "-" + b_.abs().str() + "*s";
    return out;
}

FieldElement FieldElement::parse(const std::string& s, int d) {
    std::string t;
    for (char c : s) if (!isspace((unsigned char)c)) t += c;
    if (t.empty()) throw std::invalid_argument("FieldElement: empty string");
    // forms: "a/b", "a/b+c/e*s", "a/b-c/e*s", "c/e*s"
    auto star = t.find("*s");
    if (star == std::string::npos) {
        if (t.find('s') != std::string::npos)
            throw std::invalid_argument("FieldElement: bad surd in '" + s + "'");
        return FieldElement(Rational::parse(t));
    }
    std::string head = t.substr(0, star);
    if (t.substr(star) != "*s")
        throw std::invalid_argument("FieldElement: trailing junk in '" + s + "'");
    // split head into rational part and surd coefficient at the last +/- that is
    // not a leading sign or an exponent-free position
    size_t split = std::string::npos;
    for (size_t i = 1; i < head.size(); ++i)
        if (head[i] == '+' || head[i] == '-')
            if (head[i-1] != '/' && head[i-1] != '+' && head[i-1] != '-') split = i;
    Rational a(0), b;
    if (split == std::string::npos) {
        b = Rational::parse(head);
    } else {
        a = Rational::parse(head.substr(0, split));
        std::string bs = head.substr(split);
        if (bs == "+") bs = "1"; else if (bs == "-") bs = "-1";
        else if (bs[0] == '+') bs = bs.substr(1);
        b = Rational::parse(bs);
    }
    return FieldElement(a, b, d);
}

std::string ExactComplex::str() const {
    if (im_.is_zero()) return re_.str();
    return "(" + re_.str() + ")+(" + im_.str() + ")*i";
}

Cplx PiGraded::eval(mpfr_prec_t prec) const {
    mpfr_prec_t work = prec + 32;
    Cplx a = c0_.to_cplx(work);
    Cplx b = c1_.to_cplx(work);
    Real invpi = Real::of(1L, work) / Real::pi(work);
    Cplx r = a + b * invpi;
    Real re(prec), im(prec);
    mpfr_set(re.raw(), r.re.raw(), MPFR_RNDN);
    mpfr_set(im.raw(), r.im.raw(), MPFR_RNDN);
    return {re, im};
}

std::string PiGraded::str() const {
    return c0_.str() + " + (" + c1_.str() + ")/pi";
}

Real SymbolicConstant::eval(mpfr_prec_t prec) const {
    mpfr_prec_t work = prec + 32;
    Real g = Real::euler_gamma(work), l2 = Real::ln2(work), pi = Real::pi(work);
    Real plain = Real::of(r0_, work) + Real::of(g0_, work) * g + Real::of(l0_, work) * l2;
    Real over = Real::of(r1_, work) + Real::of(g1_, work) * g + Real::of(l1_, work) * l2;
    Real v = plain + over / pi;
    Real out(prec);
    mpfr_set(out.raw(), v.raw(), MPFR_RNDN);
    return out;
}

std::string SymbolicConstant::str() const {
    std::ostringstream os;
    os << r0_.str();
    if (!g0_.is_zero()) os << " + (" << g0_.str() << ")*gamma";
    if (!l0_.is_zero()) os << " + (" << l0_.str() << ")*log2";
    os << " + (" << r1_.str();
    if (!g1_.is_zero()) os << " + (" << g1_.str() << ")*gamma";
    if (!l1_.is_zero()) os << " + (" << l1_.str() << ")*log2";
    os << ")/pi";
    return os.str();
}

std::optional<Rational> rational_reconstruct(const Real& x, const Integer& max_denominator) {
    if (!x.is_finite()) return std::nullopt;
    // continued fraction convergents of x
    mpfr_prec_t p = x.prec();
    Real y = x.abs();
    Integer pm1(1), pm2(0), qm1(0), qm2(1);  // convergents p/q
    Real cur = y;
    Integer pk(0), qk(1);
    bool first = true;
    for (int it = 0; it < 1000; ++it) {
        Integer a = cur.to_integer_floor();
        Integer pn = first ? a : a * pm1 + pm2;
        Integer qn = first ? Integer(1) : a * qm1 + qm2;
        if (!first && qn > max_denominator) break;
        pm2 = first ? Integer(1) : pm1; qm2 = first ? Integer(0) : qm1;
        pm1 = pn; qm1 = qn;
        pk = pn; qk = qn;
        first = false;
        Real frac = cur - Real::of(a, p);
        if (frac.is_zero()) break;
        // stop when the remainder is below representable resolution
        Real eps = pow_si(Real::of(2L, p), -(long)(p - 4));
        if (frac < eps) break;
        cur = Real::of(1L, p) / frac;
    }
    if (qk == 0) return std::nullopt;
    Rational cand(pk, qk);
    if (x.sign() < 0) cand = -cand;
    // acceptance: |x - p/q| < 1/(2 q max_denominator)
    Real err = (x - Real::of(cand, p)).abs();
    Real bound = Real::of(Rational(Integer(1), Integer(2) * qk * max_denominator), p);
    if (err < bound) return cand;
    return std::nullopt;
}

}  // namespace latpot
