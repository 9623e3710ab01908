#pragma once

// Uniform periodic 1-D grid with complex fields, unitary Fourier transforms
// and spectral/finite-difference derivatives.  All quantities are in
// dimensionless units with hbar = 1.  The momentum lattice conjugate to a
// grid of n points over length L is p_j = 2*pi*j/L with j = -n/2 .. n/2-1,
// stored in ascending order.
//
// Fourier convention (symmetric normalization, e^{-ipx} forward kernel):
//   phi(p_j) = (dx/sqrt(2 pi)) sum_k psi(x_k) e^{-i p_j x_k}
//   psi(x_k) = (dp/sqrt(2 pi)) sum_j phi(p_j) e^{+i p_j x_k}
// This pair is exactly unitary on the lattice.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace tpa {

using cdouble = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr cdouble ci{0.0, 1.0};

enum class Representation { position, momentum };

enum class DerivativeMode { spectral, fd2, fd4 };

namespace detail {

inline bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 transform, no normalization.
// sign = -1: c_m = sum_k a_k e^{-2 pi i m k / n}; sign = +1: conjugate kernel.
inline void fft_radix2(std::vector<cdouble>& a, int sign) {
    const std::size_t n = a.size();
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double ang = static_cast<double>(sign) * 2.0 * pi / static_cast<double>(len);
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < len / 2; ++k) {
                const cdouble w = std::polar(1.0, ang * static_cast<double>(k));
                const cdouble u = a[i + k];
                const cdouble v = a[i + k + len / 2] * w;
                a[i + k] = u + v;
                a[i + k + len / 2] = u - v;
            }
        }
    }
}

} // namespace detail

/// Uniform periodic grid: n samples (power of two) over [center-L/2, center+L/2).
struct Grid {
    std::size_t n = 0;
    double length = 0.0;
    double center = 0.0;

    double dx() const { return length / static_cast<double>(n); }
    double dp() const { return 2.0 * pi / length; }

    double x(std::size_t k) const {
        return center - 0.5 * length + static_cast<double>(k) * dx();
    }

    /// Signed lattice index j of momentum storage slot i, j = i - n/2.
    long mode(std::size_t i) const {
        return static_cast<long>(i) - static_cast<long>(n / 2);
    }
    double p(std::size_t i) const { return dp() * static_cast<double>(mode(i)); }

    /// Storage slot of signed mode j in [-n/2, n/2).
    std::size_t index_of_mode(long j) const {
        if (j < -static_cast<long>(n / 2) || j >= static_cast<long>(n / 2))
            throw std::invalid_argument("mode index outside momentum lattice");
        return static_cast<std::size_t>(j + static_cast<long>(n / 2));
    }

    bool operator==(const Grid&) const = default;
};

inline Grid build_grid(std::size_t n, double length, double center = 0.0) {
    if (!detail::is_power_of_two(n) || n < 8)
        throw std::invalid_argument("grid size must be a power of two >= 8, got " + std::to_string(n));
    if (!(length > 0.0))
        throw std::invalid_argument("grid length must be positive");
    return Grid{n, length, center};
}

/// Complex samples on a grid, tagged with the representation they live in.
struct GridField {
    Grid grid;
    Representation rep = Representation::position;
    std::vector<cdouble> values;

    std::size_t size() const { return values.size(); }
};

inline GridField make_field(const Grid& g, Representation rep = Representation::position) {
    return GridField{g, rep, std::vector<cdouble>(g.n, cdouble{0.0, 0.0})};
}

namespace detail {

inline void require_rep(const GridField& f, Representation rep, const char* what) {
    if (f.rep != rep)
        throw std::invalid_argument(std::string(what) + ": field is in the wrong representation");
    if (f.values.size() != f.grid.n)
        throw std::invalid_argument(std::string(what) + ": field size does not match grid");
}

} // namespace detail

/// Quadrature weight of the field's own lattice (dx or dp).
inline double lattice_weight(const GridField& f) {
    return f.rep == Representation::position ? f.grid.dx() : f.grid.dp();
}

inline double norm_squared(const GridField& f) {
    double s = 0.0;
    for (const auto& v : f.values) s += std::norm(v);
    return lattice_weight(f) * s;
}

inline double norm(const GridField& f) { return std::sqrt(norm_squared(f)); }

/// <a|b> = weight * sum conj(a_k) b_k; both fields on the same lattice.
inline cdouble inner_product(const GridField& a, const GridField& b) {
    if (!(a.grid == b.grid) || a.rep != b.rep)
        throw std::invalid_argument("inner_product: incompatible fields");
    cdouble s{0.0, 0.0};
    for (std::size_t k = 0; k < a.values.size(); ++k) s += std::conj(a.values[k]) * b.values[k];
    return lattice_weight(a) * s;
}

inline GridField normalized(GridField f) {
    const double nrm = norm(f);
    if (nrm == 0.0) throw std::invalid_argument("normalized: zero field");
    for (auto& v : f.values) v /= nrm;
    return f;
}

inline GridField to_momentum(const GridField& f) {
    detail::require_rep(f, Representation::position, "to_momentum");
    const Grid& g = f.grid;
    const std::size_t n = g.n;
    std::vector<cdouble> c = f.values;
    detail::fft_radix2(c, -1);
    const double x0 = g.x(0);
    const double coef = g.dx() / std::sqrt(2.0 * pi);
    GridField out{g, Representation::momentum, std::vector<cdouble>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = (i + n / 2) % n;
        out.values[i] = coef * c[m] * std::polar(1.0, -g.p(i) * x0);
    }
    return out;
}

inline GridField to_position(const GridField& f) {
    detail::require_rep(f, Representation::momentum, "to_position");
    const Grid& g = f.grid;
    const std::size_t n = g.n;
    const double x0 = g.x(0);
    std::vector<cdouble> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t m = (i + n / 2) % n;
        d[m] = f.values[i] * std::polar(1.0, g.p(i) * x0);
    }
    detail::fft_radix2(d, +1);
    const double coef = g.dp() / std::sqrt(2.0 * pi);
    GridField out{g, Representation::position, std::move(d)};
    for (auto& v : out.values) v *= coef;
    return out;
}

namespace detail {

// Derivative of a raw sample vector on lattice spacing dx, periodic.
inline std::vector<cdouble> derivative_samples(const std::vector<cdouble>& v, const Grid& g,
                                               int order, DerivativeMode mode) {
    if (order != 1 && order != 2)
        throw std::invalid_argument("derivative: order must be 1 or 2");
    const std::size_t n = g.n;
    if (v.size() != n) throw std::invalid_argument("derivative: size mismatch");
    std::vector<cdouble> out(n);

    if (mode == DerivativeMode::spectral) {
        std::vector<cdouble> c = v;
        fft_radix2(c, -1);
        const double dp = g.dp();
        for (std::size_t m = 0; m < n; ++m) {
            const long j = (m < n / 2) ? static_cast<long>(m)
                                       : static_cast<long>(m) - static_cast<long>(n);
            if (order == 1) {
                // The unpaired Nyquist mode is dropped for odd derivatives.
                if (m == n / 2) { c[m] = 0.0; continue; }
                c[m] *= ci * (dp * static_cast<double>(j));
            } else {
                const double pj = dp * static_cast<double>(j);
                c[m] *= -pj * pj;
            }
        }
        fft_radix2(c, +1);
        const double inv_n = 1.0 / static_cast<double>(n);
        for (std::size_t k = 0; k < n; ++k) out[k] = c[k] * inv_n;
        return out;
    }

    const double dx = g.dx();
    auto at = [&](std::size_t k, long off) -> const cdouble& {
        const long i = (static_cast<long>(k) + off + static_cast<long>(n)) % static_cast<long>(n);
        return v[static_cast<std::size_t>(i)];
    };
    for (std::size_t k = 0; k < n; ++k) {
        if (mode == DerivativeMode::fd2) {
            if (order == 1)
                out[k] = (at(k, +1) - at(k, -1)) / (2.0 * dx);
            else
                out[k] = (at(k, +1) - 2.0 * v[k] + at(k, -1)) / (dx * dx);
        } else { // fd4
            if (order == 1)
                out[k] = (8.0 * (at(k, +1) - at(k, -1)) - (at(k, +2) - at(k, -2))) / (12.0 * dx);
            else
                out[k] = (-at(k, +2) + 16.0 * at(k, +1) - 30.0 * v[k] + 16.0 * at(k, -1) - at(k, -2))
                         / (12.0 * dx * dx);
        }
    }
    return out;
}

} // namespace detail

/// Fourier-multiplier derivative (i p)^order, exact for band-limited fields.
inline GridField spectral_derivative(const GridField& f, int order) {
    detail::require_rep(f, Representation::position, "spectral_derivative");
    GridField out = f;
    out.values = detail::derivative_samples(f.values, f.grid, order, DerivativeMode::spectral);
    return out;
}

/// Derivative in a selectable mode; fd2/fd4 are periodic central stencils.
inline GridField derivative(const GridField& f, int order,
                            DerivativeMode mode = DerivativeMode::spectral) {
    detail::require_rep(f, Representation::position, "derivative");
    GridField out = f;
    out.values = detail::derivative_samples(f.values, f.grid, order, mode);
    return out;
}

/// Derivative of a real lattice field (returns the real part of the complex pipeline).
inline std::vector<double> derivative_real(const std::vector<double>& v, const Grid& g, int order,
                                           DerivativeMode mode = DerivativeMode::spectral) {
    std::vector<cdouble> cv(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) cv[k] = v[k];
    const auto dv = detail::derivative_samples(cv, g, order, mode);
    std::vector<double> out(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) out[k] = dv[k].real();
    return out;
}

/// Band-limited upsampling to a 2n grid over the same domain (momentum zero padding).
/// Original samples are reproduced exactly at even fine indices.
inline GridField upsample2x(const GridField& f) {
    detail::require_rep(f, Representation::position, "upsample2x");
    const std::size_t n = f.grid.n;
    std::vector<cdouble> c = f.values;
    detail::fft_radix2(c, -1);
    std::vector<cdouble> c2(2 * n, cdouble{0.0, 0.0});
    for (std::size_t m = 0; m < n; ++m) {
        // bin m holds mode j = m (m < n/2) or j = m-n; place at the 2n-lattice slot j mod 2n
        const std::size_t slot = (m < n / 2) ? m : m + n;
        c2[slot] = c[m];
    }
    detail::fft_radix2(c2, +1);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (auto& v : c2) v *= inv_n;
    Grid fine{2 * n, f.grid.length, f.grid.center};
    return GridField{fine, Representation::position, std::move(c2)};
}

/// Evaluate the band-limited interpolant of a momentum-representation field at x.
inline cdouble eval_from_momentum(const GridField& phi, double x) {
    detail::require_rep(phi, Representation::momentum, "eval_from_momentum");
    cdouble s{0.0, 0.0};
    for (std::size_t i = 0; i < phi.grid.n; ++i)
        s += phi.values[i] * std::polar(1.0, phi.grid.p(i) * x);
    return phi.grid.dp() / std::sqrt(2.0 * pi) * s;
}

/// Band-limited evaluation of a position-representation field at arbitrary x.
inline cdouble eval_at(const GridField& f, double x) {
    return eval_from_momentum(to_momentum(f), x);
}

inline double max_abs(const std::vector<cdouble>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

inline double max_abs(const std::vector<double>& v) {
    double m = 0.0;
    for (const auto& z : v) m = std::max(m, std::abs(z));
    return m;
}

inline double integrate(const std::vector<double>& v, double weight) {
    double s = 0.0;
    for (double x : v) s += x;
    return weight * s;
}

} // namespace tpa
