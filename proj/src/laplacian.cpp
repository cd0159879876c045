#include "latpot/laplacian.hpp"
#include <algorithm>
#include <sstream>

namespace latpot {

namespace {

DiffOperator build_operator(const WalkSpec& walk, int n, bool reversed) {
    if (n < 1) throw std::invalid_argument("taylor_operator: n >= 1 required");
    DiffOperator::Support c;
    Rational nfact_inv(Integer(1), factorial((unsigned long)n));
    for (int m = 0; m <= n; ++m) {
        ExactComplex mu = reversed ? walk.moment_reversed(m, n - m) : walk.moment(m, n - m);
        if (mu.is_zero()) continue;
        Rational f = Rational(binomial((unsigned long)n, (unsigned long)m)) * nfact_inv;
        c[{m, n - m}] = mu * ExactComplex(f);
    }
    return DiffOperator(std::move(c));
}

}  // namespace

DiffOperator taylor_operator(const WalkSpec& walk, int n) { return build_operator(walk, n, false); }
DiffOperator potential_operator(const WalkSpec& walk, int n) { return build_operator(walk, n, true); }

std::string DiffOperator::dump() const {
    std::ostringstream os;
    for (const auto& [ab, c] : c_)
        os << ab.first << " " << ab.second << " " << c.str() << "\n";
    return os.str();
}

namespace {

void merge_term(std::map<std::pair<int, int>, PiGraded>& acc, int k, int l, const PiGraded& c) {
    auto it = acc.find({k, l});
    if (it == acc.end())
        acc.emplace(std::make_pair(k, l), c);
    else {
        it->second = it->second + c;
        if (it->second.is_zero()) acc.erase(it);
    }
}

// image of dz^a dzb^b applied to log(z zbar): a monomial or zero
bool log_image(int a, int b, ExactComplex& factor, int& k, int& l) {
    if (a >= 1 && b == 0) {
        Rational f = Rational(falling_factorial(-1, a - 1));
        factor = ExactComplex(f);
        k = -a; l = 0;
        return true;
    }
    if (b >= 1 && a == 0) {
        Rational f = Rational(falling_factorial(-1, b - 1));
        factor = ExactComplex(f);
        k = 0; l = -b;
        return true;
    }
    return false;
}

}  // namespace

std::vector<Term> apply_operator(const DiffOperator& op, const Term& t) {
    std::map<std::pair<int, int>, PiGraded> acc;
    for (const auto& [ab, c] : op.coefficients()) {
        auto [a, b] = ab;
        if (t.is_log) {
            ExactComplex f; int k, l;
            if (a == 0 && b == 0) continue;  // identity component never occurs in D_n
            if (!log_image(a, b, f, k, l)) continue;
            merge_term(acc, k, l, t.coeff * (c * f));
        } else {
            Integer f = falling_factorial(t.k, (unsigned)a) * falling_factorial(t.l, (unsigned)b);
            if (f == 0) continue;
            merge_term(acc, t.k - a, t.l - b, t.coeff * (c * ExactComplex(Rational(f))));
        }
    }
    std::vector<Term> out;
    for (const auto& [kl, c] : acc)
        out.push_back(Term{c, kl.first, kl.second, false});
    return out;
}

std::vector<Term> residual(const WalkSpec& walk, const std::vector<Term>& terms, int K) {
    if (K < 2) throw std::invalid_argument("residual: K >= 2 required");
    std::map<std::pair<int, int>, PiGraded> acc;
    std::vector<DiffOperator> ops;
    for (int n = 1; n <= K; ++n) ops.push_back(potential_operator(walk, n));
    for (const auto& t : terms) {
        for (const auto& op : ops) {
            for (const auto& r : apply_operator(op, t)) {
                if (r.order() < -K) continue;
                merge_term(acc, r.k, r.l, r.coeff);
            }
        }
    }
    std::vector<Term> out;
    for (const auto& [kl, c] : acc)
        out.push_back(Term{c, kl.first, kl.second, false});
    std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) {
        if (a.order() != b.order()) return a.order() > b.order();
        return a.k > b.k;
    });
    return out;
}

}  // namespace latpot
