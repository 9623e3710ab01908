#pragma once

// Spin-half layer: two-component spinor fields on the grid, the generalized
// phase-space distribution F(x,p), the Bohm momentum and kinetic energy of the
// Pauli particle, and the Cayley-Klein parametrization
//
//   Psi = R e^{iS/2} ( cos(theta/2) e^{i phi/2},  i sin(theta/2) e^{-i phi/2} )
//
// Component phases relate to the sheet convention S1 = (S+phi)/2,
// S2 = (S-phi)/2 + pi/2; all contracts are gradient-level, so the sheet
// choice never enters results.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tpa/clifford.hpp"
#include "tpa/grid.hpp"
#include "tpa/polar.hpp"
#include "tpa/wigner.hpp"

namespace tpa {

struct SpinorField {
    GridField c1; // psi_1
    GridField c2; // psi_2
};

inline void require_spinor(const SpinorField& s, const char* what) {
    if (!(s.c1.grid == s.c2.grid) || s.c1.rep != s.c2.rep)
        throw std::invalid_argument(std::string(what) + ": spinor components on different lattices");
    detail::require_rep(s.c1, Representation::position, what);
}

inline std::vector<double> spinor_density(const SpinorField& s) {
    std::vector<double> rho(s.c1.grid.n);
    for (std::size_t k = 0; k < rho.size(); ++k)
        rho[k] = std::norm(s.c1.values[k]) + std::norm(s.c2.values[k]);
    return rho;
}

/// F(x,p) as the component sum of scalar Wigner tables; the spin kernel
/// separates, so the marginal over p is rho_1 + rho_2.
inline WignerTable pauli_wigner(const SpinorField& s) {
    require_spinor(s, "pauli_wigner");
    return table_sum(wigner(s.c1), wigner(s.c2));
}

/// The same table through the Clifford route: momentum-bin spinors are encoded
/// as minimal-left-ideal elements, the pair kernel M(p2,p1) is recovered from
/// the trace of the point-split density element (e123 carrying the imaginary
/// part), and the pair sum runs through the same window kernel as the scalar
/// momentum route.
inline WignerTable pauli_wigner_trace(const SpinorField& s) {
    require_spinor(s, "pauli_wigner_trace");
    const GridField phi1 = to_momentum(s.c1);
    const GridField phi2 = to_momentum(s.c2);
    const std::size_t n = s.c1.grid.n;
    std::vector<IdealElement> xi;
    xi.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        xi.push_back(spinor_to_ideal(phi1.values[i], phi2.values[i]));
    std::vector<cdouble> pair_kernel(n * n);
    for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t i1 = 0; i1 < n; ++i1)
            pair_kernel[i2 * n + i1] = trace_complex(density_kernel(xi[i2], xi[i1]));
    WignerTable out = detail::momentum_pair_transform(pair_kernel, s.c1.grid);
    detail::realify(out);
    return out;
}

struct CayleyKleinFields {
    Grid grid;
    std::vector<double> big_r;     // R = sqrt(rho1 + rho2)
    std::vector<double> big_s;     // S, unwrapped per run
    std::vector<double> theta;     // in [0, pi]
    std::vector<double> phi_angle; // phi, unwrapped per run
    std::vector<bool> valid;       // total amplitude above node threshold
    std::vector<bool> phi_valid;   // additionally away from the theta poles
};

inline constexpr double default_pole_threshold = 1e-6;

inline CayleyKleinFields cayley_klein_decompose(const SpinorField& s,
                                                double node_threshold = default_node_threshold,
                                                double pole_threshold = default_pole_threshold) {
    require_spinor(s, "cayley_klein_decompose");
    const std::size_t n = s.c1.grid.n;
    CayleyKleinFields ck;
    ck.grid = s.c1.grid;
    ck.big_r.resize(n);
    ck.big_s.assign(n, 0.0);
    ck.theta.resize(n);
    ck.phi_angle.assign(n, 0.0);
    ck.valid.resize(n);
    ck.phi_valid.resize(n);

    double amp_max = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a1 = std::abs(s.c1.values[k]);
        const double a2 = std::abs(s.c2.values[k]);
        ck.big_r[k] = std::hypot(a1, a2);
        ck.theta[k] = 2.0 * std::atan2(a2, a1);
        amp_max = std::max(amp_max, ck.big_r[k]);
    }
    if (amp_max == 0.0) throw std::invalid_argument("cayley_klein_decompose: zero spinor");

    for (std::size_t k = 0; k < n; ++k) {
        const double a1 = std::abs(s.c1.values[k]);
        const double a2 = std::abs(s.c2.values[k]);
        ck.valid[k] = ck.big_r[k] > node_threshold * amp_max;
        ck.phi_valid[k] = ck.valid[k] && a1 > pole_threshold * ck.big_r[k]
                          && a2 > pole_threshold * ck.big_r[k];
    }

    // Unwrap each component phase along runs where both components carry weight,
    // then invert the sheet convention.
    std::vector<double> s1(n, 0.0), s2(n, 0.0);
    std::size_t k = 0;
    while (k < n) {
        if (!ck.phi_valid[k]) { ++k; continue; }
        std::size_t run_end = k;
        while (run_end + 1 < n && ck.phi_valid[run_end + 1]) ++run_end;
        s1[k] = std::arg(s.c1.values[k]);
        s2[k] = std::arg(s.c2.values[k]);
        for (std::size_t i = k + 1; i <= run_end; ++i) {
            s1[i] = s1[i - 1] + detail::principal_jump(std::arg(s.c1.values[i]) - s1[i - 1]);
            s2[i] = s2[i - 1] + detail::principal_jump(std::arg(s.c2.values[i]) - s2[i - 1]);
        }
        k = run_end + 1;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (ck.phi_valid[i]) {
            ck.big_s[i] = s1[i] + s2[i] - 0.5 * pi;
            ck.phi_angle[i] = s1[i] - s2[i] + 0.5 * pi;
        } else if (ck.valid[i]) {
            // theta pole: only the dominant-component phase is defined; pick
            // phi = 0 so recomposition still reproduces the spinor pointwise.
            const double a1 = std::abs(s.c1.values[i]);
            const double a2 = std::abs(s.c2.values[i]);
            ck.phi_angle[i] = 0.0;
            ck.big_s[i] = (a1 >= a2) ? 2.0 * std::arg(s.c1.values[i])
                                     : 2.0 * std::arg(s.c2.values[i]) - pi;
        }
    }
    return ck;
}

inline SpinorField cayley_klein_compose(const CayleyKleinFields& ck) {
    const std::size_t n = ck.grid.n;
    SpinorField s{make_field(ck.grid), make_field(ck.grid)};
    for (std::size_t k = 0; k < n; ++k) {
        const cdouble common = ck.big_r[k] * std::polar(1.0, 0.5 * ck.big_s[k]);
        s.c1.values[k] = common * std::cos(0.5 * ck.theta[k]) * std::polar(1.0, 0.5 * ck.phi_angle[k]);
        s.c2.values[k] = common * ci * std::sin(0.5 * ck.theta[k]) * std::polar(1.0, -0.5 * ck.phi_angle[k]);
    }
    return s;
}

/// Bohm-Schiller-Tiomno momentum P_B = grad(S)/2 + cos(theta) grad(phi)/2.
/// Gradients are taken along valid runs (unwrapped phases are not periodic
/// fields); points at the theta poles are masked.
inline MaskedField bst_momentum(const CayleyKleinFields& ck) {
    const double dx = ck.grid.dx();
    const MaskedField ds = run_gradient(ck.big_s, ck.phi_valid, dx, 1);
    const MaskedField dphi = run_gradient(ck.phi_angle, ck.phi_valid, dx, 1);
    MaskedField out;
    out.values.assign(ck.grid.n, 0.0);
    out.valid.assign(ck.grid.n, false);
    for (std::size_t k = 0; k < ck.grid.n; ++k) {
        if (!(ds.valid[k] && dphi.valid[k])) continue;
        out.values[k] = 0.5 * ds.values[k] + 0.5 * std::cos(ck.theta[k]) * dphi.values[k];
        out.valid[k] = true;
    }
    return out;
}

namespace detail {

struct ComponentPolar {
    bool present = false;        // component carries any weight at all
    PolarField polar;
    MaskedField grad_phase;      // FD gradient of the unwrapped phase on valid runs
    std::vector<double> lap_amp; // spectral Laplacian of |psi_c|
};

inline ComponentPolar component_polar(const GridField& c, double node_threshold) {
    ComponentPolar out;
    if (max_abs(c.values) == 0.0) return out;
    out.present = true;
    out.polar = polar_decompose(c, node_threshold);
    out.grad_phase = run_gradient(out.polar.phase, out.polar.valid, c.grid.dx(), 1);
    out.lap_amp = derivative_real(out.polar.r_amp, c.grid, 2, DerivativeMode::spectral);
    return out;
}

} // namespace detail

struct PauliBohm {
    MaskedField momentum;   // (rho1 grad S1 + rho2 grad S2) / rho
    double route_deviation; // max difference against the table-moment route
};

/// Bohm momentum of the Pauli particle.  Computes the component-sum route and
/// cross-checks it against the first p-moment of pauli_wigner; throws when the
/// two routes disagree beyond route_tolerance.
inline PauliBohm bohm_momentum_pauli(const SpinorField& s,
                                     double node_threshold = default_node_threshold,
                                     double density_floor = default_density_floor,
                                     double route_tolerance = 1e-6) {
    require_spinor(s, "bohm_momentum_pauli");
    const std::size_t n = s.c1.grid.n;
    const auto cp1 = detail::component_polar(s.c1, node_threshold);
    const auto cp2 = detail::component_polar(s.c2, node_threshold);
    const auto rho = spinor_density(s);
    const double floor = density_floor * max_abs(rho);

    PauliBohm out;
    out.momentum.values.assign(n, 0.0);
    out.momentum.valid.assign(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        double num = 0.0;
        bool ok = true, any = false;
        for (const auto* cp : {&cp1, &cp2}) {
            if (!cp->present) continue;
            if (!cp->polar.valid[k]) continue; // negligible component weight here
            if (!cp->grad_phase.valid[k]) { ok = false; break; }
            num += cp->polar.density[k] * cp->grad_phase.values[k];
            any = true;
        }
        if (!ok || !any) continue;
        out.momentum.values[k] = num / rho[k];
        out.momentum.valid[k] = true;
    }

    const MaskedField moment_route = bohm_momentum_moyal(pauli_wigner(s), density_floor);
    double dev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!(out.momentum.valid[k] && moment_route.valid[k] && rho[k] > floor)) continue;
        dev = std::max(dev, std::abs(out.momentum.values[k] - moment_route.values[k]));
    }
    out.route_deviation = dev;
    if (dev > route_tolerance)
        throw std::runtime_error("bohm_momentum_pauli: component and moment routes disagree");
    return out;
}

struct PauliKinetic {
    std::vector<double> density;    // rho1 (grad S1)^2 + rho2 (grad S2)^2 - R1 lap R1 - R2 lap R2
    std::vector<bool> valid;
    double bracket_deviation;       // against the p^2 Baker-bracket marginal of pauli_wigner
};

/// Kinetic-energy density of the Pauli particle (mass-1/2 convention),
/// cross-checked against the p^2 Baker-bracket marginal of pauli_wigner.
inline PauliKinetic pauli_kinetic(const SpinorField& s,
                                  double node_threshold = default_node_threshold,
                                  double bracket_tolerance = 1e-5) {
    require_spinor(s, "pauli_kinetic");
    const std::size_t n = s.c1.grid.n;
    const auto cp1 = detail::component_polar(s.c1, node_threshold);
    const auto cp2 = detail::component_polar(s.c2, node_threshold);

    PauliKinetic out;
    out.density.assign(n, 0.0);
    out.valid.assign(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        double val = 0.0;
        bool ok = true, any = false;
        for (const auto* cp : {&cp1, &cp2}) {
            if (!cp->present) continue;
            if (!cp->polar.valid[k]) continue;
            if (!cp->grad_phase.valid[k]) { ok = false; break; }
            const double g = cp->grad_phase.values[k];
            val += cp->polar.density[k] * g * g - cp->polar.r_amp[k] * cp->lap_amp[k];
            any = true;
        }
        if (!ok || !any) continue;
        out.density[k] = val;
        out.valid[k] = true;
    }

    const WignerTable bb = baker_bracket(PSymbol::p_squared, pauli_wigner(s));
    const auto bracket_marginal = moment_p(bb, 0);
    double dev = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        if (!out.valid[k]) continue;
        dev = std::max(dev, std::abs(out.density[k] - bracket_marginal[k].real()));
    }
    out.bracket_deviation = dev;
    if (dev > bracket_tolerance)
        throw std::runtime_error("pauli_kinetic: density and bracket routes disagree");
    return out;
}

/// Q = -lap(R)/R + (grad theta / 2)^2 + sin^2(theta) (grad phi / 2)^2.
/// At the theta poles the phi term vanishes continuously and is set to zero;
/// elsewhere it requires a valid phi gradient.
inline MaskedField pauli_quantum_potential(const CayleyKleinFields& ck,
                                           double pole_threshold = default_pole_threshold) {
    const std::size_t n = ck.grid.n;
    const double dx = ck.grid.dx();
    const auto lap_r = derivative_real(ck.big_r, ck.grid, 2, DerivativeMode::spectral);
    const MaskedField dtheta = run_gradient(ck.theta, ck.valid, dx, 1);
    const MaskedField dphi = run_gradient(ck.phi_angle, ck.phi_valid, dx, 1);
    MaskedField out;
    out.values.assign(n, 0.0);
    out.valid.assign(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        if (!(ck.valid[k] && dtheta.valid[k])) continue;
        const double st = std::sin(ck.theta[k]);
        const bool at_pole = st * st < pole_threshold;
        if (!at_pole && !dphi.valid[k]) continue;
        double q = -lap_r[k] / ck.big_r[k] + 0.25 * dtheta.values[k] * dtheta.values[k];
        if (!at_pole) q += st * st * 0.25 * dphi.values[k] * dphi.values[k];
        out.values[k] = q;
        out.valid[k] = true;
    }
    return out;
}

} // namespace tpa
