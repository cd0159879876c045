// Symbolic differential operators D_n in z, zbar coordinates and their action
// on the term algebra {z^k zbar^l, log(z zbar)}.
//
// D_n = (1/n!) sum_m C(n,m) mu_{m,n-m} dz^m dzb^{n-m}, from d/dv = v dz + vbar dzb.
// The harmonic potential itself is annihilated (away from 0) by the operators of
// the time-reversed walk; for reversible walks the two coincide.
#pragma once

#include "latpot/scalar.hpp"
#include "latpot/walk.hpp"
#include <map>
#include <vector>

namespace latpot {

class DiffOperator {
public:
    using Support = std::map<std::pair<int, int>, ExactComplex>;

    DiffOperator() = default;
    explicit DiffOperator(Support c) : c_(std::move(c)) { prune(); }

    const Support& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    ExactComplex coefficient(int a, int b) const {
        auto it = c_.find({a, b});
        return it == c_.end() ? ExactComplex() : it->second;
    }
    bool operator==(const DiffOperator& o) const { return c_ == o.c_; }

    // true iff the support is exactly {(a,b)} (up to zero coefficients)
    bool proportional_to(int a, int b) const {
        return c_.size() == 1 && c_.begin()->first == std::make_pair(a, b);
    }

    // debug dump: lines "a b c_{ab}"
    std::string dump() const;

private:
    void prune() {
        for (auto it = c_.begin(); it != c_.end();)
            it = it->second.is_zero() ? c_.erase(it) : std::next(it);
    }
    Support c_;
};

// term coeff * z^k zbar^l, or coeff * log(z zbar) when is_log
struct Term {
    PiGraded coeff;
    int k = 0, l = 0;
    bool is_log = false;
    int order() const { return is_log ? 0 : k + l; }
};

// Taylor operator D_n of the walk's (forward) Laplacian.
DiffOperator taylor_operator(const WalkSpec& walk, int n);
// D_n of the time-reversed walk: the operators annihilating the potential.
DiffOperator potential_operator(const WalkSpec& walk, int n);

// apply op to a single term; results merged by (k,l), zero coefficients dropped
std::vector<Term> apply_operator(const DiffOperator& op, const Term& t);

// apply sum_{n=1}^{K} D_n (time-reversed operators) to all terms, discard orders
// below -K, merge and sort by decreasing order
std::vector<Term> residual(const WalkSpec& walk, const std::vector<Term>& terms, int K);

}  // namespace latpot
