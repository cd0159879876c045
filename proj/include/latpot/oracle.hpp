// Independent numeric computations of the potential and desk-scale validators
// for the direct-approach lemmas.
#pragma once

#include "latpot/exact_values.hpp"
#include "latpot/walk.hpp"
#include <array>
#include <map>
#include <vector>

namespace latpot {

// Exact n-step distribution over basis coordinates.
class StepDistribution {
public:
    static StepDistribution compute(const WalkSpec& walk, int n, size_t support_budget = 2000000);
    int n() const { return n_; }
    Rational prob(long bx, long by) const;
    Rational total() const;
    const std::map<std::pair<long, long>, Rational>& table() const { return p_; }

private:
    int n_ = 0;
    std::map<std::pair<long, long>, Rational> p_;
};

// Space-time reachability data: (n, z) lies on the sublattice Y iff
// z - n*v_1 lies in the lattice generated by the step differences.
struct SpaceTimeLattice {
    long d11, d12, d21, d22;       // basis of the step-difference lattice (basis coords)
    long v1x, v1y;                 // reference step
    long period;                   // n-period of the slice containing a fixed z
    Rational diff_index;           // index of the difference lattice in the walk lattice

    static SpaceTimeLattice detect(const WalkSpec& walk);
    bool contains(long n, long bx, long by) const;
    // residue j in [0, period) such that (n, z) in Y requires n == j (mod period)
    std::optional<long> slice_residue(long bx, long by) const;
};

// tau' = vol(Y cap Z) / (2 pi sqrt(det M))
Real local_clt_amplitude(const WalkSpec& walk, mpfr_prec_t prec);
// B(z) = (1/2) <M^{-1} z, z> at the physical point of (bx, by)
Real gaussian_form(const WalkSpec& walk, long bx, long by, mpfr_prec_t prec);
// leading-order local CLT: tau' n^{-1} e^{-B(z)/n} on Y, 0 off Y
Real local_clt(const WalkSpec& walk, long n, long bx, long by, mpfr_prec_t prec);

// --- pseudo-Fourier oracle -------------------------------------------------

struct FourierOptions {
    mpfr_prec_t precision = 256;
    double target_tol = 1e-30;   // absolute quadrature target
    int max_doublings = 6;
    bool force_2d = false;       // use the generic tensor/polar quadrature
};

// a(z) at lattice coordinates (bx, by) by quadrature of the pseudo-Fourier
// integral; 1-D residue reduction when the step geometry allows, otherwise the
// tensor Gauss-Legendre + polar-origin scheme.  Throws on non-convergence.
PotentialValue potential_fourier(const WalkSpec& walk, long bx, long by,
                                 const FourierOptions& opts = {});

// --- direct summation ------------------------------------------------------

struct DirectSumOptions {
    long N = 0;               // 0: use c * |z|^2 with the factor below
    double c_factor = 20.0;
    int richardson = 0;       // extra extrapolation levels on the partial sums
    mpfr_prec_t precision = 128;
};

// sum_{n<N} (P_n(0) - P_n(z)) + Euler-Maclaurin tail of the local-CLT term,
// with an explicit (heuristic) error bound.
PotentialValue potential_direct_sum(const WalkSpec& walk, long bx, long by,
                                    const DirectSumOptions& opts = {});

// --- convolution iteration (simple Z^2 walk) --------------------------------

struct GridFunction {
    long R = 0;
    std::vector<double> v;  // (2R+1)^2 row-major, index (x+R)*(2R+1)+(y+R)
    double& at(long x, long y) { return v[(size_t)(x + R) * (2 * R + 1) + (y + R)]; }
    double at(long x, long y) const { return v[(size_t)(x + R) * (2 * R + 1) + (y + R)]; }
};

struct ConvolutionResult {
    GridFunction grid;
    std::vector<double> residual_norms;  // l1 over the inner half-grid, per iteration
};

// Correction iteration f_{n} = f_{n-1} - (Delta f_{n-1} - delta_0) * f against
// the log seed; disk_mask confines the residual to the inscribed disk.
ConvolutionResult potential_convolution_iterate(long R, int iterations,
                                                bool doubled = false, bool disk_mask = true);

// --- lemma validators --------------------------------------------------------

struct FSumResult {
    Real direct;
    Real asymptotic;
};
// F_{s,j,q}(r): for s > 1 the sum of n^{-s} e^{-r/n} over n = j (mod q); for
// s = 1 the (e^{-r/n} - 1)/n variant.  Asymptotic: Gamma(s-1)/(q r^{s-1}) or
// q^{-1} log r.
FSumResult f_sum(double s, long j, long q, double r, mpfr_prec_t prec = 192);

struct MultinomialCheck {
    Real exact;
    Real clt;
};
// exact multinomial probability vs the leading CLT value of Lemma binom
MultinomialCheck multinomial_clt_check(const std::vector<Rational>& p, long n,
                                       const std::vector<long>& w, mpfr_prec_t prec = 256);

struct ThetaSumResult {
    Real lattice_sum;
    Real closed_form;  // (pi n)^{d/2} / |det A|
};
ThetaSumResult theta_sum_check(const std::array<double, 4>& A, const std::array<double, 2>& v,
                               double n, mpfr_prec_t prec = 128);

}  // namespace latpot
