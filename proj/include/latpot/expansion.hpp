// Order-by-order solution of the potential's asymptotic expansion: the
// recursion for the non-harmonic coefficients, harmonic-coefficient fixing
// (exact from the diagonal for the simple Z^2 walk, numeric fit elsewhere),
// representation conversion, evaluation, and the structural theorem checkers.
#pragma once

#include "latpot/laplacian.hpp"
#include "latpot/scalar.hpp"
#include "latpot/walk.hpp"
#include <functional>
#include <map>
#include <optional>
#include <vector>

namespace latpot {

struct RealFormEntry {
    int order;       // k + l of the underlying pair (negative)
    int l, k;        // alpha_{lk} Re(z^l / |z|^k)
    PiGraded coeff;  // real
};
using RealFormTable = std::vector<RealFormEntry>;

class Expansion {
public:
    Expansion(WalkPtr walk, int order, PiGraded alpha,
              std::map<std::pair<int, int>, PiGraded> terms)
        : walk_(std::move(walk)), order_(order), alpha_(std::move(alpha)), terms_(std::move(terms)) {}

    const WalkPtr& walk() const { return walk_; }
    int order() const { return order_; }
    const PiGraded& alpha() const { return alpha_; }
    const std::map<std::pair<int, int>, PiGraded>& terms() const { return terms_; }

    void set_lambda(SymbolicConstant l) { lambda_exact_ = std::move(l); lambda_numeric_.reset(); }
    void set_lambda(Real value, Real uncertainty) {
        lambda_numeric_ = {std::move(value), std::move(uncertainty)};
        lambda_exact_.reset();
    }
    const std::optional<SymbolicConstant>& lambda_exact() const { return lambda_exact_; }
    const std::optional<std::pair<Real, Real>>& lambda_numeric() const { return lambda_numeric_; }
    Real lambda_value(mpfr_prec_t prec) const;

    // alpha log(z zbar) + lambda + sum beta_{kl} z^k zbar^l
    Real evaluate(const Cplx& z, mpfr_prec_t prec) const;

    RealFormTable to_real_form() const;

    // inject a coefficient (test hook for the structural checkers)
    void inject_term(int k, int l, PiGraded c) { terms_[{k, l}] = std::move(c); }

    std::vector<Term> as_terms() const;  // power terms + log term, for residual checks

private:
    WalkPtr walk_;
    int order_;
    PiGraded alpha_;
    std::map<std::pair<int, int>, PiGraded> terms_;
    std::optional<SymbolicConstant> lambda_exact_;
    std::optional<std::pair<Real, Real>> lambda_numeric_;
};

// no stored beta_{kl} with both k < 0 and l < 0
bool check_klhalf(const Expansion& e);
// real-form exponents k' <= 4k (general) or 3k (D_3 = 0 / reversible), d = 2
bool check_degree_bounds(const Expansion& e, bool reversible);
// reversible walks carry only even orders
bool check_parity(const Expansion& e, bool reversible);

// Expansion solved through the recursion with the harmonic slots symbolic.
// Coefficients are affine forms  pi*beta = c0 + sum_u lin[u] X_u  over real
// unknowns; unknown ids encode (harmonic level, re/im component).
class UnresolvedExpansion {
public:
    struct Affine {
        ExactComplex c0;
        std::map<int, ExactComplex> lin;
        bool is_zero() const { return c0.is_zero() && lin.empty(); }
    };
    static int unknown_id(int level, bool imag) { return 2 * level + (imag ? 1 : 0); }
    static int unknown_level(int id) { return id / 2; }
    static bool unknown_imag(int id) { return id % 2 != 0; }

    WalkPtr walk;
    int order = 0;
    ExactComplex alpha_pi;  // pi * alpha
    std::map<std::pair<int, int>, Affine> terms;
    std::vector<int> unknown_ids;

    // substitute exact values for all unknowns -> resolved expansion (no lambda yet)
    Expansion resolve(const std::map<int, FieldElement>& values) const;
};

// The recursion of the differential approach.  Requires a spherical walk.
UnresolvedExpansion solve_expansion(WalkPtr walk, int K);

// Exact harmonic fixing for the simple Z^2 walk from the diagonal asymptotics;
// also pins lambda = (2 gamma + 3 log 2)/pi.
Expansion fix_harmonic_exact_z2(const UnresolvedExpansion& u);

// oracle callback: high-precision a() at lattice coordinates (bx, by)
using OracleFn = std::function<Real(long bx, long by, mpfr_prec_t prec)>;

struct FitOptions {
    std::vector<double> radii{40, 56, 80, 113, 160};
    int rays = 16;
    std::vector<double> heldout_radii{48, 96};
    mpfr_prec_t precision = 416;
    Integer max_denominator = Integer(10000);
    int solve_margin = 6;  // extra orders solved beyond the reported table
};

struct FitReport {
    Real lambda{53};
    Real lambda_uncertainty{53};
    std::map<int, Real> fitted;                 // unknown id -> fitted value (pi*beta units)
    std::map<int, FieldElement> reconstructed;  // unknown id -> exact value (pi*beta)
    std::vector<int> failed;                    // ids where reconstruction failed
    Real max_fit_residual{53};
    Real max_heldout_residual{53};
    int sample_count = 0;
};

// Least-squares fit of lambda and the harmonic unknowns against the oracle,
// followed by continued-fraction reconstruction and held-out verification.
// The returned expansion is truncated back to `u.order - opts.solve_margin`
// ... i.e. callers pass an UnresolvedExpansion solved `solve_margin` deeper
// than the table they want.
std::pair<Expansion, FitReport> fit_harmonic_numeric(const UnresolvedExpansion& u,
                                                     const OracleFn& oracle,
                                                     const FitOptions& opts);

}  // namespace latpot
