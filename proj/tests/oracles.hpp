#pragma once

// Test-side oracles, kept independent of the library's computational paths:
// a direct O(n^2) transform, closed-form Gaussian quantities, a 2x2 complex
// matrix representation of the Pauli algebra, and seeded random states.

#include <complex>
#include <random>
#include <vector>

#include "tpa/clifford.hpp"
#include "tpa/grid.hpp"

namespace oracles {

using tpa::cdouble;

// Direct evaluation of phi(p_i) = (dx/sqrt(2 pi)) sum_k psi(x_k) e^{-i p_i x_k}.
inline std::vector<cdouble> naive_forward_transform(const tpa::GridField& f) {
    const tpa::Grid& g = f.grid;
    std::vector<cdouble> out(g.n);
    const double coef = g.dx() / std::sqrt(2.0 * tpa::pi);
    for (std::size_t i = 0; i < g.n; ++i) {
        cdouble s{0.0, 0.0};
        for (std::size_t k = 0; k < g.n; ++k)
            s += f.values[k] * std::polar(1.0, -g.p(i) * g.x(k));
        out[i] = coef * s;
    }
    return out;
}

// Closed forms for the Gaussian packet with density std sigma:
//   psi = (2 pi s^2)^{-1/4} exp(-(x-x0)^2/(4 s^2)) exp(i p0 (x-x0))
struct GaussianOracle {
    double x0, p0, sigma;

    double rho(double x) const {
        const double u = x - x0;
        return std::exp(-u * u / (2.0 * sigma * sigma)) / std::sqrt(2.0 * tpa::pi * sigma * sigma);
    }
    double grad_s(double) const { return p0; }
    double osmotic(double x) const { return -(x - x0) / (2.0 * sigma * sigma); }
    double quantum_potential(double x) const {
        const double u = x - x0;
        return 1.0 / (2.0 * sigma * sigma) - u * u / (4.0 * sigma * sigma * sigma * sigma);
    }
    cdouble momentum_rep(double p) const {
        const double s2 = sigma * sigma;
        return std::pow(2.0 * s2 / tpa::pi, 0.25) * std::exp(-s2 * (p - p0) * (p - p0))
               * std::polar(1.0, -p * x0);
    }
    double wigner(double x, double p) const {
        const double u = x - x0;
        const double s2 = sigma * sigma;
        return std::exp(-u * u / (2.0 * s2)) * std::exp(-2.0 * s2 * (p - p0) * (p - p0)) / tpa::pi;
    }
    double mean_p2() const { return p0 * p0 + 1.0 / (4.0 * sigma * sigma); }
};

// 2x2 complex matrices over the Pauli matrices, the faithfulness oracle.
struct Mat2 {
    std::array<cdouble, 4> m{};

    static Mat2 identity() { Mat2 r; r.m[0] = 1.0; r.m[3] = 1.0; return r; }
    Mat2 operator+(const Mat2& o) const {
        Mat2 r;
        for (int i = 0; i < 4; ++i) r.m[i] = m[i] + o.m[i];
        return r;
    }
    Mat2 operator*(const Mat2& o) const {
        Mat2 r;
        r.m[0] = m[0] * o.m[0] + m[1] * o.m[2];
        r.m[1] = m[0] * o.m[1] + m[1] * o.m[3];
        r.m[2] = m[2] * o.m[0] + m[3] * o.m[2];
        r.m[3] = m[2] * o.m[1] + m[3] * o.m[3];
        return r;
    }
    Mat2 scaled(cdouble s) const {
        Mat2 r;
        for (int i = 0; i < 4; ++i) r.m[i] = m[i] * s;
        return r;
    }
    cdouble tr() const { return m[0] + m[3]; }
};

inline Mat2 pauli_sigma(int i) {
    const cdouble j{0.0, 1.0};
    Mat2 s;
    if (i == 1) s.m = {0.0, 1.0, 1.0, 0.0};
    if (i == 2) s.m = {0.0, -j, j, 0.0};
    if (i == 3) s.m = {1.0, 0.0, 0.0, -1.0};
    return s;
}

inline Mat2 rep(const tpa::Multivector& a) {
    const std::array<Mat2, 8> blades = {
        Mat2::identity(),
        pauli_sigma(1),
        pauli_sigma(2),
        pauli_sigma(3),
        pauli_sigma(2) * pauli_sigma(3),
        pauli_sigma(1) * pauli_sigma(3),
        pauli_sigma(1) * pauli_sigma(2),
        pauli_sigma(1) * pauli_sigma(2) * pauli_sigma(3),
    };
    Mat2 r;
    for (std::size_t i = 0; i < 8; ++i) r = r + blades[i].scaled(a.c[i]);
    return r;
}

inline double mat_dev(const Mat2& a, const Mat2& b) {
    double d = 0.0;
    for (int i = 0; i < 4; ++i) d = std::max(d, std::abs(a.m[i] - b.m[i]));
    return d;
}

// Random band-limited field: modes restricted to |j| <= n/8 with decaying
// random coefficients, normalized on the grid.
inline tpa::GridField random_band_limited(const tpa::Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    tpa::GridField phi = tpa::make_field(g, tpa::Representation::momentum);
    const long band = static_cast<long>(g.n) / 8;
    for (std::size_t i = 0; i < g.n; ++i) {
        const long j = g.mode(i);
        if (std::abs(j) > band) continue;
        const double damp = std::exp(-0.5 * static_cast<double>(j * j) / (band * band / 4.0 + 1.0));
        phi.values[i] = cdouble{gauss(rng), gauss(rng)} * damp;
    }
    return tpa::normalized(tpa::to_position(phi));
}

// Random superposition of 2-3 Gaussian packets.  The parameter box keeps every
// packet below the double noise floor at the edges of a length-32 domain.
inline tpa::GridField random_packet_superposition(const tpa::Grid& g, unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> upos(-3.0, 3.0), umom(-2.5, 2.5), uwidth(0.7, 1.1),
        uphase(0.0, 2.0 * tpa::pi);
    std::uniform_int_distribution<int> ucount(2, 3);
    tpa::GridField sum = tpa::make_field(g);
    const int count = ucount(rng);
    for (int c = 0; c < count; ++c) {
        const double x0 = upos(rng), p0 = umom(rng), s = uwidth(rng);
        const cdouble ph = std::polar(1.0, uphase(rng));
        const double amp = std::pow(2.0 * tpa::pi * s * s, -0.25);
        for (std::size_t k = 0; k < g.n; ++k) {
            const double u = g.x(k) - x0;
            sum.values[k] += ph * amp * std::exp(-u * u / (4.0 * s * s)) * std::polar(1.0, p0 * u);
        }
    }
    return tpa::normalized(sum);
}

} // namespace oracles
