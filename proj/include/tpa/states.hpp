#pragma once

// Reference states.  Gaussians use the density-width convention: rho has
// standard deviation sigma, so psi = (2 pi sigma^2)^{-1/4} e^{-(x-x0)^2/(4 sigma^2)}.
// All builders renormalize on the grid; test states are chosen to decay below
// the double noise floor at the domain edges.

#include <cmath>
#include <stdexcept>

#include "tpa/grid.hpp"
#include "tpa/pauli.hpp"

namespace tpa {

/// Gaussian packet centered at x0 with mean momentum p0 and position std sigma.
inline GridField gaussian_packet(const Grid& g, double x0, double p0, double sigma) {
    if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_packet: sigma must be positive");
    GridField f = make_field(g);
    const double amp = std::pow(2.0 * pi * sigma * sigma, -0.25);
    for (std::size_t k = 0; k < g.n; ++k) {
        const double u = g.x(k) - x0;
        f.values[k] = amp * std::exp(-u * u / (4.0 * sigma * sigma)) * std::polar(1.0, p0 * u);
    }
    return normalized(f);
}

/// Normalized superposition of two Gaussian packets with a relative phase.
inline GridField two_gaussian(const Grid& g, double x0a, double x0b, double p0a, double p0b,
                              double sigma, double rel_phase) {
    GridField a = gaussian_packet(g, x0a, p0a, sigma);
    GridField b = gaussian_packet(g, x0b, p0b, sigma);
    const cdouble phase = std::polar(1.0, rel_phase);
    for (std::size_t k = 0; k < g.n; ++k) a.values[k] += phase * b.values[k];
    return normalized(a);
}

/// Exact lattice momentum eigenstate e^{i p_j x} / sqrt(L) for signed mode j.
inline GridField plane_wave(const Grid& g, long mode_index) {
    const double p = g.dp() * static_cast<double>(mode_index);
    if (mode_index < -static_cast<long>(g.n / 2) || mode_index >= static_cast<long>(g.n / 2))
        throw std::invalid_argument("plane_wave: mode index outside the momentum lattice");
    GridField f = make_field(g);
    const double amp = 1.0 / std::sqrt(g.length);
    for (std::size_t k = 0; k < g.n; ++k) f.values[k] = amp * std::polar(1.0, p * g.x(k));
    return f;
}

/// First excited (odd) packet (x-x0) * gaussian, orthogonal to the even packet
/// with the same center by parity.
inline GridField hermite1_packet(const Grid& g, double x0, double p0, double sigma) {
    GridField f = gaussian_packet(g, x0, p0, sigma);
    for (std::size_t k = 0; k < g.n; ++k) f.values[k] *= (g.x(k) - x0);
    return normalized(f);
}

/// Cayley-Klein fields with a normalized Gaussian envelope and linear phase
/// profiles: S = 2 p0 x, theta = theta0 + theta_slope x, phi = phi0 + phi_slope x.
inline CayleyKleinFields pauli_ck_fields(const Grid& g, double envelope_sigma, double p0,
                                         double theta0, double theta_slope, double phi0,
                                         double phi_slope) {
    if (!(envelope_sigma > 0.0)) throw std::invalid_argument("pauli_ck_fields: sigma must be positive");
    CayleyKleinFields ck;
    ck.grid = g;
    ck.big_r.resize(g.n);
    ck.big_s.resize(g.n);
    ck.theta.resize(g.n);
    ck.phi_angle.resize(g.n);
    ck.valid.assign(g.n, true);
    ck.phi_valid.assign(g.n, true);
    const double amp = std::pow(2.0 * pi * envelope_sigma * envelope_sigma, -0.25);
    for (std::size_t k = 0; k < g.n; ++k) {
        const double x = g.x(k);
        ck.big_r[k] = amp * std::exp(-x * x / (4.0 * envelope_sigma * envelope_sigma));
        ck.big_s[k] = 2.0 * p0 * x;
        ck.theta[k] = theta0 + theta_slope * x;
        ck.phi_angle[k] = phi0 + phi_slope * x;
    }
    return ck;
}

/// Spinor built from pauli_ck_fields, grid-renormalized to unit total density.
inline SpinorField pauli_ck_state(const Grid& g, double envelope_sigma, double p0, double theta0,
                                  double theta_slope, double phi0, double phi_slope) {
    SpinorField s = cayley_klein_compose(
        pauli_ck_fields(g, envelope_sigma, p0, theta0, theta_slope, phi0, phi_slope));
    double nrm2 = 0.0;
    for (std::size_t k = 0; k < g.n; ++k)
        nrm2 += std::norm(s.c1.values[k]) + std::norm(s.c2.values[k]);
    const double scale = 1.0 / std::sqrt(g.dx() * nrm2);
    for (std::size_t k = 0; k < g.n; ++k) {
        s.c1.values[k] *= scale;
        s.c2.values[k] *= scale;
    }
    return s;
}

} // namespace tpa
