#pragma once

// Polar decomposition psi = R e^{iS} with node masking and per-run phase
// unwrapping, plus finite-difference gradients restricted to valid runs.
// Phases are only meaningful up to a constant per run; every downstream
// contract uses gradients, never the absolute phase.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tpa/grid.hpp"

namespace tpa {

/// Real samples with a per-point validity mask.
struct MaskedField {
    std::vector<double> values;
    std::vector<bool> valid;

    std::size_t size() const { return values.size(); }
};

/// Complex samples with a per-point validity mask.
struct MaskedComplexField {
    std::vector<cdouble> values;
    std::vector<bool> valid;
};

struct PolarField {
    std::vector<double> r_amp;   // R = |psi|
    std::vector<double> phase;   // S, unwrapped per valid run
    std::vector<double> density; // rho = R^2
    std::vector<bool> valid;     // |psi| > threshold * max|psi|
};

inline constexpr double default_node_threshold = 1e-12;

namespace detail {

// Map d into (-pi, pi].
inline double principal_jump(double d) {
    double r = d - 2.0 * pi * std::floor((d + pi) / (2.0 * pi));
    if (r <= -pi) r += 2.0 * pi;
    return r;
}

} // namespace detail

/// Split |psi| and arg(psi); the phase is unwrapped left to right along each
/// maximal run of valid points so neighbor jumps stay in (-pi, pi].
inline PolarField polar_decompose(const GridField& f,
                                  double node_threshold = default_node_threshold) {
    detail::require_rep(f, Representation::position, "polar_decompose");
    if (!(node_threshold > 0.0 && node_threshold < 1.0))
        throw std::invalid_argument("polar_decompose: node_threshold must be in (0, 1)");
    const std::size_t n = f.grid.n;
    const double amp_max = max_abs(f.values);
    if (amp_max == 0.0)
        throw std::invalid_argument("polar_decompose: field is identically zero");

    PolarField out;
    out.r_amp.resize(n);
    out.phase.resize(n);
    out.density.resize(n);
    out.valid.resize(n);
    const double floor_amp = node_threshold * amp_max;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = std::abs(f.values[k]);
        out.r_amp[k] = a;
        out.density[k] = a * a;
        out.valid[k] = a > floor_amp;
        out.phase[k] = std::arg(f.values[k]); // provisional; unwrapped below on valid runs
    }

    std::size_t k = 0;
    while (k < n) {
        if (!out.valid[k]) { ++k; continue; }
        std::size_t run_end = k;
        while (run_end + 1 < n && out.valid[run_end + 1]) ++run_end;
        for (std::size_t i = k + 1; i <= run_end; ++i) {
            const double jump = detail::principal_jump(std::arg(f.values[i]) - out.phase[i - 1]);
            out.phase[i] = out.phase[i - 1] + jump;
        }
        k = run_end + 1;
    }
    return out;
}

/// R e^{iS} at valid points; invalid points are copied from the source field.
inline GridField polar_recompose(const PolarField& p, const GridField& source) {
    GridField out = source;
    for (std::size_t k = 0; k < out.values.size(); ++k)
        if (p.valid[k]) out.values[k] = std::polar(p.r_amp[k], p.phase[k]);
    return out;
}

/// Centered 4th-order finite difference of order 1 or 2, restricted to points
/// whose full stencil lies inside one valid run.  Used for gradients of
/// unwrapped phases, which are not globally periodic fields.
inline MaskedField run_gradient(const std::vector<double>& v, const std::vector<bool>& valid,
                                double dx, int order = 1) {
    if (order != 1 && order != 2) throw std::invalid_argument("run_gradient: order must be 1 or 2");
    const std::size_t n = v.size();
    MaskedField out;
    out.values.assign(n, 0.0);
    out.valid.assign(n, false);
    for (std::size_t k = 2; k + 2 < n; ++k) {
        if (!(valid[k - 2] && valid[k - 1] && valid[k] && valid[k + 1] && valid[k + 2])) continue;
        if (order == 1)
            out.values[k] = (8.0 * (v[k + 1] - v[k - 1]) - (v[k + 2] - v[k - 2])) / (12.0 * dx);
        else
            out.values[k] = (-v[k + 2] + 16.0 * v[k + 1] - 30.0 * v[k] + 16.0 * v[k - 1] - v[k - 2])
                            / (12.0 * dx * dx);
        out.valid[k] = true;
    }
    return out;
}

/// Pointwise mask intersection.
inline std::vector<bool> mask_and(const std::vector<bool>& a, const std::vector<bool>& b) {
    std::vector<bool> out(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) out[k] = a[k] && b[k];
    return out;
}

/// Max |a-b| over points valid in both fields.
inline double max_masked_deviation(const MaskedField& a, const MaskedField& b) {
    double m = 0.0;
    for (std::size_t k = 0; k < a.values.size(); ++k)
        if (a.valid[k] && b.valid[k]) m = std::max(m, std::abs(a.values[k] - b.values[k]));
    return m;
}

} // namespace tpa
