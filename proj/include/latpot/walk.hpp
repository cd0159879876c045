// Walk specification and validation: exact step distributions on a 2-D lattice,
// complex moments, correlation matrix, sphericity and symmetry detection.
#pragma once

#include "latpot/scalar.hpp"
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace latpot {

struct Step {
    ExactComplex v;   // step vector
    Rational p;       // probability
    long bx = 0, by = 0;  // coordinates of v in the declared lattice basis
};

struct CorrelationMatrix {
    FieldElement m11, m12, m22;  // E x^2, E xy, E y^2
    FieldElement det() const { return m11 * m22 - m12 * m12; }
};

class WalkSpec;
using WalkPtr = std::shared_ptr<const WalkSpec>;

// e^{2 pi i / q} as an exact element of Q(sqrt d) x i, when representable
std::optional<ExactComplex> rotation_root(int q, int d);

// structural test for the four-step simple walk on Z^2
bool is_simple_z2(const WalkSpec& w);

// Raw, unvalidated walk description as read from a walk-spec file.
struct RawWalkSpec {
    std::string name;
    int sqrt_d = 1;
    ExactComplex basis1, basis2;
    std::vector<std::pair<ExactComplex, Rational>> steps;
};

class WalkSpec {
public:
    // validates all invariants; throws std::invalid_argument with a diagnostic
    static WalkPtr validate(const RawWalkSpec& raw);
    static WalkPtr from_json_text(const std::string& text);
    static WalkPtr load_file(const std::string& path);
    // built-in specs: z2-simple, z2-king, tri-directed, tri-6walk
    static WalkPtr bundled(const std::string& name);

    const std::string& name() const { return name_; }
    int d() const { return d_; }
    const std::vector<Step>& steps() const { return steps_; }
    const ExactComplex& basis1() const { return basis1_; }
    const ExactComplex& basis2() const { return basis2_; }

    // mu_{a,b} = sum_i p_i v_i^a conj(v_i)^b, cached
    const ExactComplex& moment(int a, int b) const;
    // moments of the time-reversed walk (steps negated); equal for reversible walks
    ExactComplex moment_reversed(int a, int b) const {
        const ExactComplex& m = moment(a, b);
        return ((a + b) % 2 == 0) ? m : -m;
    }

    bool is_spherical() const;
    bool is_reversible() const;          // step multiset symmetric under v -> -v
    bool is_reflection_symmetric() const;  // step multiset symmetric under conjugation
    CorrelationMatrix correlation_matrix() const;
    int rotational_symmetry_order() const;

    // |det(basis)|, exact
    FieldElement lattice_volume() const;
    // tau = 2 vol Z / (2 pi sqrt(det M)); exact PiGraded, throws if sqrt(det M)
    // is not representable in the field
    PiGraded tau_constant() const;

    // physical point of lattice coordinates (bx, by)
    ExactComplex lattice_point(long bx, long by) const;
    // invert: basis coordinates of an exact lattice point (throws if not on lattice)
    std::pair<long, long> basis_coords(const ExactComplex& z) const;

    std::string to_json_text() const;

private:
    WalkSpec() = default;
    void precompute_moments(int kmax) const;

    std::string name_;
    int d_ = 1;
    ExactComplex basis1_, basis2_;
    std::vector<Step> steps_;
    mutable std::map<std::pair<int, int>, ExactComplex> moments_;
};

}  // namespace latpot
