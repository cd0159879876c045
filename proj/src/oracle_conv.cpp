// The correction-series iteration for the simple Z^2 walk:
//   f_0 = (2/pi) log|z| (f_0(0) = -1),   f_n = f_{n-1} - (Delta f_{n-1} - delta_0) * f_0
// with convolutions on the truncated grid (zero padding) evaluated by FFT.
// Masking the residual to the inscribed disk keeps the square-corner truncation
// out of the cos(4 phi) cancellation that drives the accuracy at inner points.
#include "latpot/oracle.hpp"
#include <fftw3.h>
#include <cmath>
#include <complex>
#include <cstring>
#include <mutex>

namespace latpot {

namespace {

// discrete Laplacian minus delta_0 of g, on the interior, optionally disk-masked
GridFunction residual_of(const GridFunction& g, bool disk_mask) {
    GridFunction r;
    r.R = g.R;
    r.v.assign(g.v.size(), 0.0);
    long R = g.R;
    double rad2 = (double)(R - 1) * (R - 1);
    for (long x = -R + 1; x <= R - 1; ++x) {
        for (long y = -R + 1; y <= R - 1; ++y) {
            if (disk_mask && (double)x * x + (double)y * y > rad2) continue;
            double lap = 0.25 * (g.at(x + 1, y) + g.at(x - 1, y) + g.at(x, y + 1) + g.at(x, y - 1)) -
                         g.at(x, y);
            if (x == 0 && y == 0) lap -= 1.0;
            r.at(x, y) = lap;
        }
    }
    return r;
}

double inner_l1(const GridFunction& g) {
    long H = g.R / 2;
    double s = 0;
    for (long x = -H; x <= H; ++x)
        for (long y = -H; y <= H; ++y) s += std::fabs(g.at(x, y));
    return s;
}

// linear convolution of a and b (both (2R+1)^2), cropped back to (2R+1)^2
struct ConvPlan {
    long R, L;
    fftw_plan fwd, bwd;
    std::vector<double> buf;
    std::vector<std::complex<double>> spec_a, spec_b;

    explicit ConvPlan(long R_) : R(R_) {
        long need = 2 * (2 * R + 1) - 1;
        L = 1;
        while (L < need) L <<= 1;
        buf.assign((size_t)L * L, 0.0);
        spec_a.resize((size_t)L * (L / 2 + 1));
        spec_b.resize((size_t)L * (L / 2 + 1));
        fwd = fftw_plan_dft_r2c_2d((int)L, (int)L, buf.data(), cast(spec_a.data()), FFTW_ESTIMATE);
        bwd = fftw_plan_dft_c2r_2d((int)L, (int)L, cast(spec_a.data()), buf.data(), FFTW_ESTIMATE);
    }
    ~ConvPlan() {
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(bwd);
    }
    static fftw_complex* cast(std::complex<double>* p) { return reinterpret_cast<fftw_complex*>(p); }
    void load(const GridFunction& g, std::vector<std::complex<double>>& out) {
        std::fill(buf.begin(), buf.end(), 0.0);
        long W = 2 * R + 1;
        for (long x = 0; x < W; ++x)
            std::memcpy(&buf[(size_t)x * L], &g.v[(size_t)x * W], (size_t)W * sizeof(double));
        fftw_execute_dft_r2c(fwd, buf.data(), cast(out.data()));
    }
    GridFunction convolve(const GridFunction& a, const std::vector<std::complex<double>>& sb) {
        load(a, spec_a);
        size_t n = (size_t)L * (L / 2 + 1);
        for (size_t i = 0; i < n; ++i) spec_a[i] *= sb[i];
        fftw_execute_dft_c2r(bwd, cast(spec_a.data()), buf.data());
        // both inputs are indexed from 0 with origin at (R, R); the linear
        // convolution's origin sits at (2R, 2R)
        GridFunction out;
        out.R = R;
        out.v.assign(a.v.size(), 0.0);
        long W = 2 * R + 1;
        double scale = 1.0 / ((double)L * L);
        for (long x = 0; x < W; ++x)
            for (long y = 0; y < W; ++y)
                out.v[(size_t)x * W + y] =
                    buf[(size_t)((x + R) % L) * L + ((y + R) % L)] * scale;
        return out;
    }
};

}  // namespace

ConvolutionResult potential_convolution_iterate(long R, int iterations, bool doubled,
                                                bool disk_mask) {
    if (R < 50) throw std::invalid_argument("potential_convolution_iterate: R >= 50");
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);

    GridFunction seed;
    seed.R = R;
    seed.v.resize((size_t)(2 * R + 1) * (2 * R + 1));
    const double twopi_inv = 2.0 / 3.14159265358979312;
    for (long x = -R; x <= R; ++x)
        for (long y = -R; y <= R; ++y)
            seed.at(x, y) = (x || y) ? twopi_inv * 0.5 * std::log((double)(x * x + y * y)) : -1.0;

    ConvPlan plan(R);
    std::vector<std::complex<double>> seed_spec((size_t)plan.L * (plan.L / 2 + 1));
    plan.load(seed, seed_spec);

    ConvolutionResult out;
    GridFunction f = seed;
    for (int it = 0; it < iterations; ++it) {
        GridFunction r = residual_of(f, disk_mask);
        out.residual_norms.push_back(inner_l1(r));
        GridFunction corr;
        if (doubled) {
            std::vector<std::complex<double>> fspec((size_t)plan.L * (plan.L / 2 + 1));
            plan.load(f, fspec);
            corr = plan.convolve(r, fspec);
        } else {
            corr = plan.convolve(r, seed_spec);
        }
        for (size_t i = 0; i < f.v.size(); ++i) f.v[i] -= corr.v[i];
    }
    out.residual_norms.push_back(inner_l1(residual_of(f, disk_mask)));
    out.grid = std::move(f);
    return out;
}

}  // namespace latpot
