#pragma once

// Weak values <post|A|psi>/<post|psi> for arbitrary and position
// post-selection, and the Bohm-side quantities carried by the position
// weak value of P:
//
//   (P psi)(x) / psi(x) = grad S - i grad(rho)/(2 rho)
//
// The real part is the Bohm momentum, minus the imaginary part is the
// osmotic momentum grad(rho)/(2 rho).  The quantum potential uses the
// mass-1/2 convention Q = -lap(R)/R.

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "tpa/grid.hpp"
#include "tpa/operators.hpp"
#include "tpa/polar.hpp"

namespace tpa {

inline constexpr double default_overlap_floor = 1e-10;

/// <post|op|psi> / <post|psi>.  Throws when the post-selected state is
/// numerically orthogonal to psi (|overlap| <= floor_scale * |post| * |psi|).
inline cdouble weak_value(const Operator& op, const GridField& post, const GridField& psi,
                          double overlap_floor_scale = default_overlap_floor) {
    const cdouble den = inner_product(post, psi);
    const double floor = overlap_floor_scale * norm(post) * norm(psi);
    if (std::abs(den) <= floor)
        throw std::runtime_error("weak_value: orthogonal post-selection (overlap below floor)");
    return inner_product(post, apply_operator(op, psi)) / den;
}

/// Position-post-selected weak value (op psi)(x_k) / psi(x_k).
inline cdouble weak_value_position(const Operator& op, std::size_t k, const GridField& psi,
                                   double node_threshold = default_node_threshold) {
    detail::require_rep(psi, Representation::position, "weak_value_position");
    if (k >= psi.grid.n) throw std::invalid_argument("weak_value_position: index out of range");
    const double amp_max = max_abs(psi.values);
    if (std::abs(psi.values[k]) <= node_threshold * amp_max)
        throw std::runtime_error("weak_value_position: node point");
    return apply_operator(op, psi).values[k] / psi.values[k];
}

/// All position weak values at once; node points are masked instead of throwing.
inline MaskedComplexField position_weak_values(const Operator& op, const GridField& psi,
                                               DerivativeMode mode = DerivativeMode::spectral,
                                               double node_threshold = default_node_threshold) {
    detail::require_rep(psi, Representation::position, "position_weak_values");
    const GridField opsi = apply_operator(op, psi, mode);
    const double floor_amp = node_threshold * max_abs(psi.values);
    MaskedComplexField out;
    out.values.assign(psi.grid.n, cdouble{0.0, 0.0});
    out.valid.assign(psi.grid.n, false);
    for (std::size_t k = 0; k < psi.grid.n; ++k) {
        if (std::abs(psi.values[k]) <= floor_amp) continue;
        out.values[k] = opsi.values[k] / psi.values[k];
        out.valid[k] = true;
    }
    return out;
}

/// grad S as the real part of the position weak value of P.
inline MaskedField bohm_momentum(const GridField& psi,
                                 DerivativeMode mode = DerivativeMode::spectral,
                                 double node_threshold = default_node_threshold) {
    const auto wv = position_weak_values(Operator::momentum(1), psi, mode, node_threshold);
    MaskedField out;
    out.values.resize(wv.values.size());
    out.valid = wv.valid;
    for (std::size_t k = 0; k < wv.values.size(); ++k) out.values[k] = wv.values[k].real();
    return out;
}

/// grad(rho)/(2 rho) as minus the imaginary part of the same weak value.
inline MaskedField osmotic_momentum(const GridField& psi,
                                    DerivativeMode mode = DerivativeMode::spectral,
                                    double node_threshold = default_node_threshold) {
    const auto wv = position_weak_values(Operator::momentum(1), psi, mode, node_threshold);
    MaskedField out;
    out.values.resize(wv.values.size());
    out.valid = wv.valid;
    for (std::size_t k = 0; k < wv.values.size(); ++k) out.values[k] = -wv.values[k].imag();
    return out;
}

struct ForwardBackward {
    MaskedComplexField forward;  // b  = conj(weak value)/m, the bra-side action
    MaskedComplexField backward; // b* = weak value / m, the ket-side action
};

/// Nelson-style mean forward/backward velocities.  (b+b*)/2 is the Bohm
/// velocity; (b-b*)/2 = i * grad(rho)/(2 m rho), the osmotic velocity times i.
inline ForwardBackward forward_backward_velocities(const GridField& psi, double mass,
                                                   double node_threshold = default_node_threshold) {
    if (!(mass > 0.0)) throw std::invalid_argument("forward_backward_velocities: mass must be positive");
    const auto wv = position_weak_values(Operator::momentum(1), psi,
                                         DerivativeMode::spectral, node_threshold);
    ForwardBackward out;
    out.forward.values.resize(wv.values.size());
    out.backward.values.resize(wv.values.size());
    out.forward.valid = wv.valid;
    out.backward.valid = wv.valid;
    for (std::size_t k = 0; k < wv.values.size(); ++k) {
        out.backward.values[k] = wv.values[k] / mass;
        out.forward.values[k] = std::conj(wv.values[k]) / mass;
    }
    return out;
}

/// Re <x|i[H,X]|psi> / <x|psi>, with the commutator composed numerically from
/// operator applications rather than reduced to P/m analytically.  Meaningful
/// for states that decay at the domain boundary, where X is well defined on
/// the periodic grid.
inline MaskedField wiseman_velocity(const GridField& psi, double mass, const std::vector<double>& V,
                                    DerivativeMode mode = DerivativeMode::spectral,
                                    double node_threshold = default_node_threshold) {
    detail::require_rep(psi, Representation::position, "wiseman_velocity");
    const Operator H = Operator::hamiltonian(mass, V);
    const Operator X = Operator::position(1);
    const GridField hx = apply_operator(H, apply_operator(X, psi, mode), mode);
    const GridField xh = apply_operator(X, apply_operator(H, psi, mode), mode);
    const double floor_amp = node_threshold * max_abs(psi.values);
    MaskedField out;
    out.values.assign(psi.grid.n, 0.0);
    out.valid.assign(psi.grid.n, false);
    for (std::size_t k = 0; k < psi.grid.n; ++k) {
        if (std::abs(psi.values[k]) <= floor_amp) continue;
        const cdouble commutator = ci * (hx.values[k] - xh.values[k]);
        out.values[k] = (commutator / psi.values[k]).real();
        out.valid[k] = true;
    }
    return out;
}

/// Q = -lap(R)/R with R from the polar split and a spectral Laplacian.
inline MaskedField quantum_potential(const GridField& psi,
                                     double node_threshold = default_node_threshold) {
    const PolarField p = polar_decompose(psi, node_threshold);
    const auto lap_r = derivative_real(p.r_amp, psi.grid, 2, DerivativeMode::spectral);
    MaskedField out;
    out.values.assign(psi.grid.n, 0.0);
    out.valid = p.valid;
    for (std::size_t k = 0; k < psi.grid.n; ++k)
        if (p.valid[k]) out.values[k] = -lap_r[k] / p.r_amp[k];
    return out;
}

/// Same quantity through the density: -lap(R)/R = (grad rho)^2/(4 rho^2) - lap(rho)/(2 rho).
/// rho stays smooth through amplitude zeros, so this route also works on states
/// with nodes where |psi| has a kink.
inline MaskedField quantum_potential_from_density(const GridField& psi,
                                                  double node_threshold = default_node_threshold) {
    const PolarField p = polar_decompose(psi, node_threshold);
    const auto drho = derivative_real(p.density, psi.grid, 1, DerivativeMode::spectral);
    const auto lap_rho = derivative_real(p.density, psi.grid, 2, DerivativeMode::spectral);
    MaskedField out;
    out.values.assign(psi.grid.n, 0.0);
    out.valid = p.valid;
    for (std::size_t k = 0; k < psi.grid.n; ++k) {
        if (!p.valid[k]) continue;
        const double rho = p.density[k];
        out.values[k] = drho[k] * drho[k] / (4.0 * rho * rho) - lap_rho[k] / (2.0 * rho);
    }
    return out;
}

/// Per-point Bohm data derived from one polar split and the weak value of P.
struct BohmRecord {
    MaskedField bohm_momentum;     // grad S
    MaskedField osmotic_momentum;  // grad(rho)/(2 rho)
    MaskedField quantum_potential; // -lap(R)/R
    MaskedField bohm_kinetic;      // (grad S)^2
    std::vector<bool> valid;
};

inline BohmRecord bohm_record(const GridField& psi,
                              DerivativeMode mode = DerivativeMode::spectral,
                              double node_threshold = default_node_threshold) {
    BohmRecord rec;
    rec.bohm_momentum = bohm_momentum(psi, mode, node_threshold);
    rec.osmotic_momentum = osmotic_momentum(psi, mode, node_threshold);
    rec.quantum_potential = quantum_potential(psi, node_threshold);
    rec.valid = rec.bohm_momentum.valid;
    rec.bohm_kinetic.values.resize(psi.grid.n);
    rec.bohm_kinetic.valid = rec.valid;
    for (std::size_t k = 0; k < psi.grid.n; ++k) {
        const double g = rec.bohm_momentum.values[k];
        rec.bohm_kinetic.values[k] = g * g;
    }
    return rec;
}

/// Decompose <A> over the position basis: returns
///   (dx * sum_k rho(x_k) * weak_value_position(A, k), <A>).
/// The two entries agree for any complete-basis decomposition.
inline std::pair<cdouble, cdouble> weak_expectation_identity(const Operator& op, const GridField& psi,
                                                             double node_threshold = default_node_threshold) {
    const auto wv = position_weak_values(op, psi, DerivativeMode::spectral, node_threshold);
    cdouble acc{0.0, 0.0};
    for (std::size_t k = 0; k < psi.grid.n; ++k) {
        if (!wv.valid[k]) continue;
        acc += std::norm(psi.values[k]) * wv.values[k];
    }
    acc *= psi.grid.dx();
    return {acc, expectation(op, psi)};
}

} // namespace tpa
