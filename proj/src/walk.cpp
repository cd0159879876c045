#include "latpot/walk.hpp"
#include <nlohmann/json.hpp>
#include <algorithm>
#include <fstream>
#include <sstream>

// vendored nlohmann/json lives on the include path as json.hpp as well
#if !defined(NLOHMANN_JSON_VERSION_MAJOR)
#include <json.hpp>
#endif

namespace latpot {

using json = nlohmann::json;

namespace {

// solve (re,im) = bx*e1 + by*e2 over the field; returns field coords
std::pair<FieldElement, FieldElement> solve_basis(const ExactComplex& e1, const ExactComplex& e2,
                                                  const ExactComplex& z) {
    FieldElement det = e1.real() * e2.imag() - e1.imag() * e2.real();
    if (det.is_zero()) throw std::invalid_argument("walk: degenerate lattice basis");
    FieldElement u = (z.real() * e2.imag() - z.imag() * e2.real()) / det;
    FieldElement v = (e1.real() * z.imag() - e1.imag() * z.real()) / det;
    return {u, v};
}

long field_to_integer(const FieldElement& x, const char* what) {
    if (!x.is_rational() || !x.as_rational().is_integer())
        throw std::invalid_argument(std::string("walk: ") + what + " not an integer lattice coordinate");
    Integer n = x.as_rational().num();
    if (!n.fits_slong_p()) throw std::invalid_argument("walk: lattice coordinate overflow");
    return n.get_si();
}

}  // namespace

// rotation factor e^{2 pi i / q} as an ExactComplex in Q(sqrt d) if representable
std::optional<ExactComplex> rotation_root(int q, int d) {
    auto fe = [](int num, int den) { return FieldElement(Rational(num, den)); };
    auto surd = [&](int num, int den, int dd) { return FieldElement(Rational(0), Rational(num, den), dd); };
    switch (q) {
        case 1: return ExactComplex(fe(1, 1));
        case 2: return ExactComplex(fe(-1, 1));
        case 4: return ExactComplex(fe(0, 1), fe(1, 1));
        case 3: if (d == 3) return ExactComplex(fe(-1, 2), surd(1, 2, 3)); return std::nullopt;
        case 6: if (d == 3) return ExactComplex(fe(1, 2), surd(1, 2, 3)); return std::nullopt;
        case 8: if (d == 2) return ExactComplex(surd(1, 2, 2), surd(1, 2, 2)); return std::nullopt;
        case 12: if (d == 3) return ExactComplex(surd(1, 2, 3), fe(1, 2)); return std::nullopt;
        default: return std::nullopt;
    }
}

WalkPtr WalkSpec::validate(const RawWalkSpec& raw) {
    auto w = std::shared_ptr<WalkSpec>(new WalkSpec());
    w->name_ = raw.name;
    w->d_ = raw.sqrt_d <= 1 ? 1 : raw.sqrt_d;
    for (int f = 2; f * f <= w->d_; ++f)
        if (w->d_ % (f * f) == 0)
            throw std::invalid_argument("walk: sqrt_d must be square-free");
    w->basis1_ = raw.basis1;
    w->basis2_ = raw.basis2;
    if ((w->basis1_.real() * w->basis2_.imag() - w->basis1_.imag() * w->basis2_.real()).is_zero())
        throw std::invalid_argument("walk: degenerate lattice basis");

    if (raw.steps.empty()) throw std::invalid_argument("walk: no steps");
    Rational psum(0);
    ExactComplex drift;
    for (const auto& [v, p] : raw.steps) {
        if (p.sign() <= 0) throw std::invalid_argument("walk: nonpositive step probability");
        psum += p;
        drift = drift + v * ExactComplex(p);
        auto [u, t] = solve_basis(w->basis1_, w->basis2_, v);
        Step s{v, p, field_to_integer(u, "step"), field_to_integer(t, "step")};
        w->steps_.push_back(std::move(s));
    }
    if (psum != Rational(1)) throw std::invalid_argument("walk: probabilities do not sum to 1");
    if (!drift.is_zero()) throw std::invalid_argument("walk: nonzero drift");

    // rank-2 check on basis coordinates
    bool rank2 = false;
    for (size_t i = 0; i < w->steps_.size() && !rank2; ++i)
        for (size_t j = i + 1; j < w->steps_.size() && !rank2; ++j)
            if (w->steps_[i].bx * w->steps_[j].by != w->steps_[i].by * w->steps_[j].bx) rank2 = true;
    if (!rank2) throw std::invalid_argument("walk: step set does not generate a rank-2 lattice");

    w->precompute_moments(26);
    return w;
}

void WalkSpec::precompute_moments(int kmax) const {
    for (int a = 0; a <= kmax; ++a)
        for (int b = 0; a + b <= kmax; ++b) {
            ExactComplex m;
            for (const auto& s : steps_)
                m = m + s.v.pow_int(a) * s.v.conj().pow_int(b) * ExactComplex(s.p);
            moments_[{a, b}] = m;
        }
}

const ExactComplex& WalkSpec::moment(int a, int b) const {
    if (a < 0 || b < 0) throw std::invalid_argument("walk: negative moment order");
    auto it = moments_.find({a, b});
    if (it == moments_.end()) {
        ExactComplex m;
        for (const auto& s : steps_)
            m = m + s.v.pow_int(a) * s.v.conj().pow_int(b) * ExactComplex(s.p);
        it = moments_.emplace(std::make_pair(a, b), std::move(m)).first;
    }
    return it->second;
}

bool WalkSpec::is_spherical() const {
    return moment(2, 0).is_zero() && moment(1, 1).real().sign() > 0;
}

bool WalkSpec::is_reversible() const {
    for (const auto& s : steps_) {
        Rational found(0);
        for (const auto& t : steps_)
            if (t.v == -s.v) { found = t.p; break; }
        if (found != s.p) return false;
    }
    return true;
}

bool WalkSpec::is_reflection_symmetric() const {
    for (const auto& s : steps_) {
        Rational found(0);
        for (const auto& t : steps_)
            if (t.v == s.v.conj()) { found = t.p; break; }
        if (found != s.p) return false;
    }
    return true;
}

CorrelationMatrix WalkSpec::correlation_matrix() const {
    CorrelationMatrix m{FieldElement(0), FieldElement(0), FieldElement(0)};
    for (const auto& s : steps_) {
        FieldElement p = FieldElement(s.p);
        m.m11 = m.m11 + s.v.real() * s.v.real() * p;
        m.m12 = m.m12 + s.v.real() * s.v.imag() * p;
        m.m22 = m.m22 + s.v.imag() * s.v.imag() * p;
    }
    if (!(m.m11.sign() > 0 && m.det().sign() > 0))
        throw std::invalid_argument("walk: correlation matrix not positive definite");
    return m;
}

int WalkSpec::rotational_symmetry_order() const {
    for (int q : {12, 8, 6, 4, 3, 2}) {
        auto zeta = rotation_root(q, d_);
        if (!zeta) continue;
        bool ok = true;
        for (const auto& s : steps_) {
            ExactComplex rv = s.v * (*zeta);
            bool found = false;
            for (const auto& t : steps_)
                if (t.v == rv && t.p == s.p) { found = true; break; }
            if (!found) { ok = false; break; }
        }
        if (ok) return q;
    }
    return 1;
}

FieldElement WalkSpec::lattice_volume() const {
    FieldElement det = basis1_.real() * basis2_.imag() - basis1_.imag() * basis2_.real();
    return det.sign() < 0 ? -det : det;
}

PiGraded WalkSpec::tau_constant() const {
    CorrelationMatrix m = correlation_matrix();
    auto root = m.det().exact_sqrt();
    if (!root)
        throw std::domain_error("walk: sqrt(det M) not representable in Q(sqrt d)");
    FieldElement tau_pi = lattice_volume() / *root;  // tau = tau_pi / pi
    return PiGraded::over_pi(ExactComplex(tau_pi));
}

bool is_simple_z2(const WalkSpec& w) {
    if (w.steps().size() != 4) return false;
    for (const auto& s : w.steps()) {
        if (s.p != Rational(1, 4)) return false;
        if (!(s.v == ExactComplex(1) || s.v == ExactComplex(-1) ||
              s.v == ExactComplex::i() || s.v == -ExactComplex::i()))
            return false;
    }
    return true;
}

ExactComplex WalkSpec::lattice_point(long bx, long by) const {
    return basis1_ * ExactComplex(Rational(bx)) + basis2_ * ExactComplex(Rational(by));
}

std::pair<long, long> WalkSpec::basis_coords(const ExactComplex& z) const {
    auto [u, v] = solve_basis(basis1_, basis2_, z);
    return {field_to_integer(u, "point"), field_to_integer(v, "point")};
}

// ---------------------------------------------------------------------------
// serialization

static RawWalkSpec raw_from_json(const json& j) {
    RawWalkSpec raw;
    raw.name = j.at("name").get<std::string>();
    raw.sqrt_d = j.at("sqrt_d").get<int>();
    int d = raw.sqrt_d <= 1 ? 1 : raw.sqrt_d;
    auto fe = [&](const json& v) { return FieldElement::parse(v.get<std::string>(), d); };
    const auto& b = j.at("basis");
    raw.basis1 = ExactComplex(fe(b.at(0).at(0)), fe(b.at(0).at(1)));
    raw.basis2 = ExactComplex(fe(b.at(1).at(0)), fe(b.at(1).at(1)));
    for (const auto& s : j.at("steps")) {
        Rational p = Rational::parse(s.at("p").get<std::string>());
        ExactComplex v(fe(s.at("vx")), fe(s.at("vy")));
        raw.steps.emplace_back(v, p);
    }
    return raw;
}

WalkPtr WalkSpec::from_json_text(const std::string& text) {
    return validate(raw_from_json(json::parse(text)));
}

WalkPtr WalkSpec::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("walk: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

std::string WalkSpec::to_json_text() const {
    json j;
    j["name"] = name_;
    j["sqrt_d"] = d_;
    j["basis"] = json::array({json::array({basis1_.real().str(), basis1_.imag().str()}),
                              json::array({basis2_.real().str(), basis2_.imag().str()})});
    j["steps"] = json::array();
    for (const auto& s : steps_)
        j["steps"].push_back({{"p", s.p.str()}, {"vx", s.v.real().str()}, {"vy", s.v.imag().str()}});
    return j.dump(2);
}

WalkPtr WalkSpec::bundled(const std::string& name) {
    static const char* z2_simple = R"({
      "name": "z2-simple", "sqrt_d": 1,
      "basis": [["1","0"],["0","1"]],
      "steps": [
        {"p":"1/4","vx":"1","vy":"0"}, {"p":"1/4","vx":"-1","vy":"0"},
        {"p":"1/4","vx":"0","vy":"1"}, {"p":"1/4","vx":"0","vy":"-1"}]
    })";
    static const char* z2_king = R"({
      "name": "z2-king", "sqrt_d": 1,
      "basis": [["1","0"],["0","1"]],
      "steps": [
        {"p":"1/8","vx":"1","vy":"0"},  {"p":"1/8","vx":"-1","vy":"0"},
        {"p":"1/8","vx":"0","vy":"1"},  {"p":"1/8","vx":"0","vy":"-1"},
        {"p":"1/8","vx":"1","vy":"1"},  {"p":"1/8","vx":"-1","vy":"-1"},
        {"p":"1/8","vx":"1","vy":"-1"}, {"p":"1/8","vx":"-1","vy":"1"}]
    })";
    // directed triangular walk stepping toward 1, w, w^2 with w = exp(2 pi i/3)
    static const char* tri_directed = R"({
      "name": "tri-directed", "sqrt_d": 3,
      "basis": [["1","0"],["-1/2","1/2*s"]],
      "steps": [
        {"p":"1/3","vx":"1","vy":"0"},
        {"p":"1/3","vx":"-1/2","vy":"1/2*s"},
        {"p":"1/3","vx":"-1/2","vy":"-1/2*s"}]
    })";
    static const char* tri_6walk = R"({
      "name": "tri-6walk", "sqrt_d": 3,
      "basis": [["1","0"],["-1/2","1/2*s"]],
      "steps": [
        {"p":"1/6","vx":"1","vy":"0"},    {"p":"1/6","vx":"-1","vy":"0"},
        {"p":"1/6","vx":"1/2","vy":"1/2*s"},  {"p":"1/6","vx":"-1/2","vy":"-1/2*s"},
        {"p":"1/6","vx":"-1/2","vy":"1/2*s"}, {"p":"1/6","vx":"1/2","vy":"-1/2*s"}]
    })";
    if (name == "z2-simple") return from_json_text(z2_simple);
    if (name == "z2-king") return from_json_text(z2_king);
    if (name == "tri-directed") return from_json_text(tri_directed);
    if (name == "tri-6walk") return from_json_text(tri_6walk);
    throw std::invalid_argument("walk: unknown bundled spec '" + name + "'");
}

}  // namespace latpot
