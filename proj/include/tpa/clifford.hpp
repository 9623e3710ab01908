#pragma once

// Real Pauli Clifford algebra C(3,0) over the blade basis
//   [1, e1, e2, e3, e23, e13, e12, e123]
// with e_i e_j + e_j e_i = 2 delta_ij.  Spinors embed into the minimal left
// ideal generated by the primitive idempotent eps = (1+e3)/2; the central
// pseudoscalar e123 (square -1) plays the role of the complex unit there.

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <utility>

namespace tpa {

struct Multivector {
    // coefficient order: 1, e1, e2, e3, e23, e13, e12, e123
    std::array<double, 8> c{};

    static Multivector scalar(double s) {
        Multivector m; m.c[0] = s; return m;
    }
    static Multivector blade(std::size_t index, double weight = 1.0) {
        if (index >= 8) throw std::invalid_argument("Multivector::blade: index out of range");
        Multivector m; m.c[index] = weight; return m;
    }

    Multivector operator+(const Multivector& o) const {
        Multivector r;
        for (std::size_t i = 0; i < 8; ++i) r.c[i] = c[i] + o.c[i];
        return r;
    }
    Multivector operator-(const Multivector& o) const {
        Multivector r;
        for (std::size_t i = 0; i < 8; ++i) r.c[i] = c[i] - o.c[i];
        return r;
    }
    Multivector operator*(double s) const {
        Multivector r;
        for (std::size_t i = 0; i < 8; ++i) r.c[i] = c[i] * s;
        return r;
    }
};

namespace detail {

// Generator bitmasks per blade slot (bit i-1 set when e_i is a factor).
inline constexpr std::array<unsigned, 8> blade_mask = {0b000, 0b001, 0b010, 0b100,
                                                       0b110, 0b101, 0b011, 0b111};

constexpr std::size_t mask_to_slot(unsigned m) {
    for (std::size_t i = 0; i < 8; ++i)
        if (blade_mask[i] == m) return i;
    return 8; // unreachable
}

// Sign of reordering the concatenation of two canonical blades into canonical
// order; generators square to +1.
constexpr int reorder_sign(unsigned a, unsigned b) {
    int swaps = 0;
    a >>= 1;
    while (a != 0) {
        unsigned t = a & b;
        while (t != 0) { swaps += t & 1u; t >>= 1; }
        a >>= 1;
    }
    return (swaps & 1) ? -1 : 1;
}

struct CayleyTable {
    std::array<std::array<std::size_t, 8>, 8> slot{};
    std::array<std::array<int, 8>, 8> sign{};
};

constexpr CayleyTable make_cayley_table() {
    CayleyTable t{};
    for (std::size_t i = 0; i < 8; ++i) {
        for (std::size_t j = 0; j < 8; ++j) {
            const unsigned mi = blade_mask[i];
            const unsigned mj = blade_mask[j];
            t.slot[i][j] = mask_to_slot(mi ^ mj);
            t.sign[i][j] = reorder_sign(mi, mj);
        }
    }
    return t;
}

inline constexpr CayleyTable cayley = make_cayley_table();

} // namespace detail

/// Clifford product from the 8x8 Cayley table.
inline Multivector product(const Multivector& a, const Multivector& b) {
    Multivector r;
    for (std::size_t i = 0; i < 8; ++i) {
        if (a.c[i] == 0.0) continue;
        for (std::size_t j = 0; j < 8; ++j) {
            if (b.c[j] == 0.0) continue;
            r.c[detail::cayley.slot[i][j]] +=
                static_cast<double>(detail::cayley.sign[i][j]) * a.c[i] * b.c[j];
        }
    }
    return r;
}

inline Multivector operator*(const Multivector& a, const Multivector& b) { return product(a, b); }

/// Reversion: sign (-1)^{k(k-1)/2} on grade k, so (+, +, -, -) for grades 0..3.
inline Multivector reverse(const Multivector& a) {
    Multivector r = a;
    for (std::size_t i = 0; i < 8; ++i) {
        const int k = std::popcount(detail::blade_mask[i]);
        if (k == 2 || k == 3) r.c[i] = -r.c[i];
    }
    return r;
}

/// Projection onto grade k blades.
inline Multivector grade(const Multivector& a, int k) {
    if (k < 0 || k > 3) throw std::invalid_argument("grade: k must be in 0..3");
    Multivector r;
    for (std::size_t i = 0; i < 8; ++i)
        if (std::popcount(detail::blade_mask[i]) == k) r.c[i] = a.c[i];
    return r;
}

/// Algebra trace, normalized to the 2x2 matrix-representation trace: 2 * scalar part.
inline double trace(const Multivector& a) { return 2.0 * a.c[0]; }

/// Trace including the pseudoscalar channel: tr(rep(a)) = 2*(c0 + i*c123),
/// the full complex trace in the matrix representation.
inline std::complex<double> trace_complex(const Multivector& a) {
    return {2.0 * a.c[0], 2.0 * a.c[7]};
}

/// Primitive idempotent eps = (1 + e3)/2.
inline Multivector epsilon() {
    Multivector m;
    m.c[0] = 0.5;
    m.c[3] = 0.5;
    return m;
}

inline double max_abs_coeff(const Multivector& a) {
    double m = 0.0;
    for (double x : a.c) m = std::max(m, std::abs(x));
    return m;
}

/// Element of the minimal left ideal C(3,0) * eps; characterized by m * eps = m.
struct IdealElement {
    Multivector mv;
};

inline bool in_ideal(const Multivector& m, double tol = 1e-12) {
    const Multivector d = product(m, epsilon()) - m;
    return max_abs_coeff(d) <= tol * std::max(1.0, max_abs_coeff(m));
}

/// Encode the spinor (psi1, psi2) as [(Re psi1 + Im psi1 e123) + (Re psi2 + Im psi2 e123) e1] eps.
inline IdealElement spinor_to_ideal(std::complex<double> psi1, std::complex<double> psi2) {
    Multivector pre;
    pre.c[0] = psi1.real();
    pre.c[7] = psi1.imag();
    // (Re psi2 + Im psi2 e123) * e1 = Re psi2 e1 + Im psi2 e23
    pre.c[1] = psi2.real();
    pre.c[4] = psi2.imag();
    return IdealElement{product(pre, epsilon())};
}

/// Exact inverse of spinor_to_ideal.  Throws when the element is not in the ideal.
inline std::pair<std::complex<double>, std::complex<double>> ideal_to_spinor(const IdealElement& m) {
    if (!in_ideal(m.mv)) throw std::invalid_argument("ideal_to_spinor: element not in the left ideal");
    const auto& c = m.mv.c;
    return {{2.0 * c[0], 2.0 * c[7]}, {2.0 * c[1], 2.0 * c[4]}};
}

/// rho_c = Phi reverse(Phi); trace gives |psi1|^2 + |psi2|^2.
inline Multivector clifford_density(const IdealElement& phi) {
    return product(phi.mv, reverse(phi.mv));
}

/// Point-split generalization Phi_1 reverse(Phi_2); diagonal case is clifford_density.
inline Multivector density_kernel(const IdealElement& phi1, const IdealElement& phi2) {
    return product(phi1.mv, reverse(phi2.mv));
}

} // namespace tpa
