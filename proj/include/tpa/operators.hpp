#pragma once

// Linear operators acting on position-representation fields: powers of the
// momentum and position operators, multiplicative potentials, and the
// Hamiltonian H = P^2/2m + V(X).  P acts as -i d/dx.

#include <stdexcept>
#include <utility>
#include <vector>

#include "tpa/grid.hpp"

namespace tpa {

struct Operator {
    enum class Kind { momentum_power, position_power, potential, hamiltonian };

    Kind kind = Kind::momentum_power;
    int power = 1;                 // momentum/position powers, 1 or 2
    double mass = 1.0;             // hamiltonian only
    std::vector<double> v;         // potential samples on the grid

    static Operator momentum(int n = 1) {
        if (n != 1 && n != 2) throw std::invalid_argument("Operator::momentum: power must be 1 or 2");
        Operator op; op.kind = Kind::momentum_power; op.power = n; return op;
    }
    static Operator position(int n = 1) {
        if (n != 1 && n != 2) throw std::invalid_argument("Operator::position: power must be 1 or 2");
        Operator op; op.kind = Kind::position_power; op.power = n; return op;
    }
    static Operator potential(std::vector<double> samples) {
        for (double s : samples)
            if (!std::isfinite(s)) throw std::invalid_argument("Operator::potential: non-finite sample");
        Operator op; op.kind = Kind::potential; op.v = std::move(samples); return op;
    }
    static Operator hamiltonian(double mass, std::vector<double> samples) {
        if (!(mass > 0.0)) throw std::invalid_argument("Operator::hamiltonian: mass must be positive");
        for (double s : samples)
            if (!std::isfinite(s)) throw std::invalid_argument("Operator::hamiltonian: non-finite sample");
        Operator op; op.kind = Kind::hamiltonian; op.mass = mass; op.v = std::move(samples); return op;
    }
};

inline GridField apply_operator(const Operator& op, const GridField& psi,
                                DerivativeMode mode = DerivativeMode::spectral) {
    detail::require_rep(psi, Representation::position, "apply_operator");
    const std::size_t n = psi.grid.n;
    switch (op.kind) {
        case Operator::Kind::momentum_power: {
            GridField out = derivative(psi, op.power, mode);
            const cdouble factor = (op.power == 1) ? -ci : cdouble{-1.0, 0.0};
            for (auto& z : out.values) z *= factor;
            return out;
        }
        case Operator::Kind::position_power: {
            GridField out = psi;
            for (std::size_t k = 0; k < n; ++k) {
                const double x = psi.grid.x(k);
                out.values[k] *= (op.power == 1) ? x : x * x;
            }
            return out;
        }
        case Operator::Kind::potential: {
            if (op.v.size() != n) throw std::invalid_argument("apply_operator: potential size mismatch");
            GridField out = psi;
            for (std::size_t k = 0; k < n; ++k) out.values[k] *= op.v[k];
            return out;
        }
        case Operator::Kind::hamiltonian: {
            if (op.v.size() != n) throw std::invalid_argument("apply_operator: potential size mismatch");
            GridField second = derivative(psi, 2, mode);
            GridField out = psi;
            const double kin = -0.5 / op.mass;
            for (std::size_t k = 0; k < n; ++k)
                out.values[k] = kin * second.values[k] + op.v[k] * psi.values[k];
            return out;
        }
    }
    throw std::invalid_argument("apply_operator: unsupported descriptor");
}

/// <psi|A|psi> by grid quadrature.  Callers are expected to pass a normalized
/// state; the value is returned regardless.
inline cdouble expectation(const Operator& op, const GridField& psi,
                           DerivativeMode mode = DerivativeMode::spectral) {
    return inner_product(psi, apply_operator(op, psi, mode));
}

} // namespace tpa
