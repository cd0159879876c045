// Command implementations behind the latpot executable: expansion reports,
// exact values, oracle evaluations and comparisons, the explicit-constant scan,
// decay verification, and the lemma self-tests.
#pragma once

#include "latpot/expansion.hpp"
#include "latpot/oracle.hpp"
#include <iosfwd>
#include <string>

namespace latpot::cli {

struct RunConfig {
    std::string walk = "z2-simple";   // bundled name or path to a walk file
    int order = 9;
    mpfr_prec_t precision = 256;
    std::string format = "table";     // table | structured
    std::string method = "fourier";   // sum | fourier | fourier2d | conv
    double rmax = 400;                // constant-scan radius
    long at_x = 0, at_y = 0;
    bool exact = false;
    std::string points_file;
    long ray_x = 1, ray_y = 1;        // verification ray in basis coordinates
    double verify_lo = 20, verify_hi = 200;
    int verify_points = 8;

    void check() const;               // K and precision guards
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailed = 2;
inline constexpr int kExitPrecision = 3;

WalkPtr resolve_walk(const std::string& name_or_path);

// expansion of the given walk at the given order: exact harmonic fixing for the
// simple Z^2 walk, oracle fit otherwise
struct ExpandResult {
    Expansion expansion;
    std::optional<FitReport> fit;
    bool checks_passed = false;
};
ExpandResult build_expansion(const RunConfig& cfg);

std::string expansion_table(const Expansion& e, const std::optional<FitReport>& fit);
std::string expansion_json(const Expansion& e, const std::optional<FitReport>& fit);

// parse the structured format back into (alpha, lambda, real-form coefficients)
struct ParsedExpansion {
    std::string walk;
    int order;
    FieldElement alpha_over_pi;
    std::optional<SymbolicConstant> lambda_exact;
    std::vector<RealFormEntry> entries;
};
ParsedExpansion parse_expansion_json(const std::string& text);

int cmd_expand(const RunConfig& cfg, std::ostream& out);
int cmd_value(const RunConfig& cfg, std::ostream& out);
int cmd_oracle(const RunConfig& cfg, std::ostream& out);
int cmd_oracle_compare(const RunConfig& cfg, std::ostream& out);
int cmd_constant(const RunConfig& cfg, std::ostream& out);
int cmd_verify(const RunConfig& cfg, std::ostream& out);
int cmd_selftest_lemmas(const RunConfig& cfg, std::ostream& out);

// oracle dispatch used by cmd_oracle / cmd_verify
Real oracle_value(const WalkSpec& walk, const std::string& method, long bx, long by,
                  mpfr_prec_t precision, double tol);

}  // namespace latpot::cli
