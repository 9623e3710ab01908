#pragma once

// Wigner distribution on the (x_k, p_j) lattice, exact star-product actions
// of the symbols p and p^2, Baker (Jordan) and Moyal brackets, marginals and
// conditional moments.
//
// Discretization of W(x,p) = (1/2pi) int conj(psi)(x+y/2) psi(x-y/2) e^{ipy} dy:
// the field is upsampled to a 2n lattice (momentum zero padding, exact for
// band-limited fields), the correlation is formed at half-step shifts, and the
// y sum runs over one domain length, y = l*dx for l = -n/2 .. n/2-1.  With
// that window both marginals are exact lattice identities:
//   dp  * sum_j W(x_k, p_j) = |psi(x_k)|^2
//   dx  * sum_k W(x_k, p_j) = |phi(p_j)|^2
//
// The momentum-pair route evaluates the same table from phi directly:
//   W(x,p_j) = (1/nL) sum_{j1,j2} conj(phi_j1) phi_j2 K(2j - j1 - j2)
//                    * e^{i(p_j2 - p_j1) x}
// where K(q) = sum_{l=-n/2}^{n/2-1} e^{i pi l q / n} is the window kernel of
// the finite y sum: K(0) = n, K(even q) = 0, and odd q (pair midpoints on the
// half-step momentum lattice) enter through the kernel tails.  Keeping those
// tails is what makes the two routes agree pointwise; dropping them aliases
// the table in x by half a period.

#include <cmath>
#include <stdexcept>
#include <vector>

#include "tpa/grid.hpp"
#include "tpa/polar.hpp"

namespace tpa {

enum class ScalarKind { real_kind, complex_kind };

struct WignerTable {
    Grid grid;
    ScalarKind kind = ScalarKind::real_kind;
    std::vector<cdouble> values; // row-major [ix * n + ip], p ascending
    double imag_residue = 0.0;   // max |Im| seen before realification (real tables)

    cdouble& at(std::size_t ix, std::size_t ip) { return values[ix * grid.n + ip]; }
    const cdouble& at(std::size_t ix, std::size_t ip) const { return values[ix * grid.n + ip]; }
};

inline constexpr double default_density_floor = 1e-6;

namespace detail {

inline WignerTable make_table(const Grid& g, ScalarKind kind) {
    return WignerTable{g, kind, std::vector<cdouble>(g.n * g.n, cdouble{0.0, 0.0}), 0.0};
}

// Record the residual imaginary part and drop it.
inline void realify(WignerTable& t) {
    double r = 0.0;
    for (auto& v : t.values) {
        r = std::max(r, std::abs(v.imag()));
        v = cdouble{v.real(), 0.0};
    }
    t.imag_residue = r;
    t.kind = ScalarKind::real_kind;
}

// Correlation row at x_k transformed over the y window; conjugate goes on the
// +y/2 argument.  fineA supplies the conjugated samples, fineB the plain ones.
inline void correlation_rows(const std::vector<cdouble>& fine_a, const std::vector<cdouble>& fine_b,
                             WignerTable& out) {
    const std::size_t n = out.grid.n;
    const std::size_t n2 = 2 * n;
    const double coef = out.grid.dx() / (2.0 * pi);
    std::vector<cdouble> row(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::fill(row.begin(), row.end(), cdouble{0.0, 0.0});
        for (long l = -static_cast<long>(n) / 2; l < static_cast<long>(n) / 2; ++l) {
            const std::size_t ia = static_cast<std::size_t>((2 * static_cast<long>(k) + l + 2 * static_cast<long>(n2)) % static_cast<long>(n2));
            const std::size_t ib = static_cast<std::size_t>((2 * static_cast<long>(k) - l + 2 * static_cast<long>(n2)) % static_cast<long>(n2));
            const std::size_t slot = static_cast<std::size_t>((l + static_cast<long>(n)) % static_cast<long>(n));
            row[slot] = std::conj(fine_a[ia]) * fine_b[ib];
        }
        fft_radix2(row, +1);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t m = (i + n / 2) % n;
            out.at(k, i) = coef * row[m];
        }
    }
}

// K(q) = sum_{l=-n/2}^{n/2-1} e^{i pi l q / n}.
inline cdouble window_kernel(long q, std::size_t n) {
    if (q == 0) return cdouble{static_cast<double>(n), 0.0};
    if (q % 2 == 0) return cdouble{0.0, 0.0};
    // e^{-i pi q / 2} is -i for q = 1 mod 4, +i for q = 3 mod 4
    const long qm = ((q % 4) + 4) % 4;
    const cdouble phase = (qm == 1) ? cdouble{0.0, -1.0} : cdouble{0.0, 1.0};
    const cdouble den = cdouble{1.0, 0.0} - std::polar(1.0, pi * static_cast<double>(q) / static_cast<double>(n));
    return phase * 2.0 / den;
}

// Transform a momentum pair kernel M(p_{i2}, p_{i1}) (row-major [i2 * n + i1])
// to the (x, p) table through the window kernel.
inline WignerTable momentum_pair_transform(const std::vector<cdouble>& pair_kernel, const Grid& g) {
    const std::size_t n = g.n;
    const long ln = static_cast<long>(n);
    const double dp = g.dp();

    // e^{i u dp x_k} for u = -(n-1) .. n-1
    std::vector<cdouble> phase((2 * n - 1) * n);
    for (long u = -(ln - 1); u <= ln - 1; ++u) {
        const std::size_t row = static_cast<std::size_t>(u + ln - 1) * n;
        for (std::size_t k = 0; k < n; ++k)
            phase[row + k] = std::polar(1.0, static_cast<double>(u) * dp * g.x(k));
    }

    // B_s(x_k) = sum over pairs with j1 + j2 = s
    std::vector<cdouble> pair_sum((2 * n - 1) * n, cdouble{0.0, 0.0});
    for (std::size_t i1 = 0; i1 < n; ++i1) {
        const long j1 = static_cast<long>(i1) - ln / 2;
        for (std::size_t i2 = 0; i2 < n; ++i2) {
            const cdouble w = pair_kernel[i2 * n + i1];
            if (w == cdouble{0.0, 0.0}) continue;
            const long j2 = static_cast<long>(i2) - ln / 2;
            const std::size_t srow = static_cast<std::size_t>(j1 + j2 + ln) * n;
            const std::size_t urow = static_cast<std::size_t>(j2 - j1 + ln - 1) * n;
            for (std::size_t k = 0; k < n; ++k) pair_sum[srow + k] += w * phase[urow + k];
        }
    }

    WignerTable out = make_table(g, ScalarKind::complex_kind);
    const double coef = 1.0 / (static_cast<double>(n) * g.length);
    for (std::size_t i = 0; i < n; ++i) {
        const long j = static_cast<long>(i) - ln / 2;
        for (long s = -ln; s <= ln - 2; ++s) {
            const cdouble kq = window_kernel(2 * j - s, n);
            if (kq == cdouble{0.0, 0.0}) continue;
            const std::size_t srow = static_cast<std::size_t>(s + ln) * n;
            for (std::size_t k = 0; k < n; ++k) out.at(k, i) += kq * pair_sum[srow + k];
        }
    }
    for (auto& v : out.values) v *= coef;
    return out;
}

} // namespace detail

/// Wigner transform of a position-representation field; real for any state.
inline WignerTable wigner(const GridField& psi) {
    detail::require_rep(psi, Representation::position, "wigner");
    const GridField fine = upsample2x(psi);
    WignerTable out = detail::make_table(psi.grid, ScalarKind::real_kind);
    detail::correlation_rows(fine.values, fine.values, out);
    detail::realify(out);
    return out;
}

/// Sesquilinear cross transform; conjugate on the first argument, so
/// cross_wigner(psi, psi) = wigner(psi) and the table integrates to <psi|chi>.
inline WignerTable cross_wigner(const GridField& psi, const GridField& chi) {
    detail::require_rep(psi, Representation::position, "cross_wigner");
    detail::require_rep(chi, Representation::position, "cross_wigner");
    if (!(psi.grid == chi.grid)) throw std::invalid_argument("cross_wigner: grid mismatch");
    const GridField fine_a = upsample2x(psi);
    const GridField fine_b = upsample2x(chi);
    WignerTable out = detail::make_table(psi.grid, ScalarKind::complex_kind);
    detail::correlation_rows(fine_a.values, fine_b.values, out);
    return out;
}

/// Same table from the momentum representation, as an explicit double sum over
/// momentum pairs weighted by the window kernel.  Agrees with wigner()
/// pointwise; serves as the module's independent route.
inline WignerTable wigner_momentum_route(const GridField& phi) {
    detail::require_rep(phi, Representation::momentum, "wigner_momentum_route");
    const std::size_t n = phi.grid.n;
    std::vector<cdouble> pair_kernel(n * n);
    for (std::size_t i2 = 0; i2 < n; ++i2)
        for (std::size_t i1 = 0; i1 < n; ++i1)
            pair_kernel[i2 * n + i1] = phi.values[i2] * std::conj(phi.values[i1]);
    WignerTable out = detail::momentum_pair_transform(pair_kernel, phi.grid);
    detail::realify(out);
    return out;
}

/// dp-sum over p: the position density rho(x).
inline std::vector<double> marginal_p(const WignerTable& t) {
    const std::size_t n = t.grid.n;
    std::vector<double> out(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += t.at(k, i).real();
        out[k] = s * t.grid.dp();
    }
    return out;
}

/// dx-sum over x: the momentum density |phi(p)|^2.
inline std::vector<double> marginal_x(const WignerTable& t) {
    const std::size_t n = t.grid.n;
    std::vector<double> out(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k) s += t.at(k, i).real();
        out[i] = s * t.grid.dx();
    }
    return out;
}

/// dp-weighted sum of p^order * W over p, per x row (order 0, 1 or 2).
inline std::vector<cdouble> moment_p(const WignerTable& t, int order) {
    if (order < 0 || order > 2) throw std::invalid_argument("moment_p: order must be 0, 1 or 2");
    const std::size_t n = t.grid.n;
    std::vector<cdouble> out(n, cdouble{0.0, 0.0});
    for (std::size_t k = 0; k < n; ++k) {
        cdouble s{0.0, 0.0};
        for (std::size_t i = 0; i < n; ++i) {
            double w = 1.0;
            const double pj = t.grid.p(i);
            if (order == 1) w = pj;
            if (order == 2) w = pj * pj;
            s += w * t.at(k, i);
        }
        out[k] = s * t.grid.dp();
    }
    return out;
}

/// x-derivative along each p column (spectral by default).
inline WignerTable dx_table(const WignerTable& t, int order,
                            DerivativeMode mode = DerivativeMode::spectral) {
    const std::size_t n = t.grid.n;
    WignerTable out = detail::make_table(t.grid, ScalarKind::complex_kind);
    std::vector<cdouble> col(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) col[k] = t.at(k, i);
        const auto dcol = detail::derivative_samples(col, t.grid, order, mode);
        for (std::size_t k = 0; k < n; ++k) out.at(k, i) = dcol[k];
    }
    return out;
}

// Star products truncate exactly for the symbols p and p^2:
//   p (x) W  = p W -+ (i/2) dW/dx      (left: -, right: +)
//   p^2 (x) W = p^2 W -+ i p dW/dx - (1/4) d2W/dx2

inline WignerTable star_left_p(const WignerTable& t) {
    const WignerTable dw = dx_table(t, 1);
    WignerTable out = detail::make_table(t.grid, ScalarKind::complex_kind);
    for (std::size_t k = 0; k < t.grid.n; ++k)
        for (std::size_t i = 0; i < t.grid.n; ++i)
            out.at(k, i) = t.grid.p(i) * t.at(k, i) - 0.5 * ci * dw.at(k, i);
    return out;
}

inline WignerTable star_right_p(const WignerTable& t) {
    const WignerTable dw = dx_table(t, 1);
    WignerTable out = detail::make_table(t.grid, ScalarKind::complex_kind);
    for (std::size_t k = 0; k < t.grid.n; ++k)
        for (std::size_t i = 0; i < t.grid.n; ++i)
            out.at(k, i) = t.grid.p(i) * t.at(k, i) + 0.5 * ci * dw.at(k, i);
    return out;
}

inline WignerTable star_left_p2(const WignerTable& t) {
    const WignerTable dw = dx_table(t, 1);
    const WignerTable d2w = dx_table(t, 2);
    WignerTable out = detail::make_table(t.grid, ScalarKind::complex_kind);
    for (std::size_t k = 0; k < t.grid.n; ++k)
        for (std::size_t i = 0; i < t.grid.n; ++i) {
            const double pj = t.grid.p(i);
            out.at(k, i) = pj * pj * t.at(k, i) - ci * pj * dw.at(k, i) - 0.25 * d2w.at(k, i);
        }
    return out;
}

inline WignerTable star_right_p2(const WignerTable& t) {
    const WignerTable dw = dx_table(t, 1);
    const WignerTable d2w = dx_table(t, 2);
    WignerTable out = detail::make_table(t.grid, ScalarKind::complex_kind);
    for (std::size_t k = 0; k < t.grid.n; ++k)
        for (std::size_t i = 0; i < t.grid.n; ++i) {
            const double pj = t.grid.p(i);
            out.at(k, i) = pj * pj * t.at(k, i) + ci * pj * dw.at(k, i) - 0.25 * d2w.at(k, i);
        }
    return out;
}

enum class PSymbol { p, p_squared };

/// Jordan combination (W*s + s*W)/2; equals pW for s=p and p^2 W - (1/4) d2W for s=p^2.
inline WignerTable baker_bracket(PSymbol s, const WignerTable& t) {
    const WignerTable left = (s == PSymbol::p) ? star_left_p(t) : star_left_p2(t);
    const WignerTable right = (s == PSymbol::p) ? star_right_p(t) : star_right_p2(t);
    WignerTable out = detail::make_table(t.grid, ScalarKind::complex_kind);
    for (std::size_t idx = 0; idx < out.values.size(); ++idx)
        out.values[idx] = 0.5 * (right.values[idx] + left.values[idx]);
    return out;
}

/// Antisymmetric combination (W*s - s*W)/i; equals dW/dx for s=p and 2p dW/dx for s=p^2.
inline WignerTable moyal_bracket(PSymbol s, const WignerTable& t) {
    const WignerTable left = (s == PSymbol::p) ? star_left_p(t) : star_left_p2(t);
    const WignerTable right = (s == PSymbol::p) ? star_right_p(t) : star_right_p2(t);
    WignerTable out = detail::make_table(t.grid, ScalarKind::complex_kind);
    for (std::size_t idx = 0; idx < out.values.size(); ++idx)
        out.values[idx] = -ci * (right.values[idx] - left.values[idx]);
    return out;
}

/// Point-split conditional moment density rho(x) <<p^n>>(x) expanded into
/// derivatives of psi: n=1 gives Im(conj(psi) psi'), n=2 gives
/// (|psi'|^2 - Re(conj(psi) psi''))/2.
inline std::vector<double> moment_point_split(const GridField& psi, int order,
                                              DerivativeMode mode = DerivativeMode::spectral) {
    detail::require_rep(psi, Representation::position, "moment_point_split");
    if (order != 1 && order != 2) throw std::invalid_argument("moment_point_split: order must be 1 or 2");
    const std::size_t n = psi.grid.n;
    std::vector<double> out(n);
    const GridField d1 = derivative(psi, 1, mode);
    if (order == 1) {
        for (std::size_t k = 0; k < n; ++k)
            out[k] = (std::conj(psi.values[k]) * d1.values[k]).imag();
    } else {
        const GridField d2 = derivative(psi, 2, mode);
        for (std::size_t k = 0; k < n; ++k)
            out[k] = 0.5 * (std::norm(d1.values[k]) - (std::conj(psi.values[k]) * d2.values[k]).real());
    }
    return out;
}

/// Ratio form <<p^n>>(x), masked where rho is below floor * max(rho).
inline MaskedField moment_point_split_ratio(const GridField& psi, int order,
                                            DerivativeMode mode = DerivativeMode::spectral,
                                            double density_floor = default_density_floor) {
    const auto dens_moment = moment_point_split(psi, order, mode);
    MaskedField out;
    out.values.assign(psi.grid.n, 0.0);
    out.valid.assign(psi.grid.n, false);
    std::vector<double> rho(psi.grid.n);
    for (std::size_t k = 0; k < psi.grid.n; ++k) rho[k] = std::norm(psi.values[k]);
    const double floor = density_floor * max_abs(rho);
    for (std::size_t k = 0; k < psi.grid.n; ++k) {
        if (rho[k] <= floor) continue;
        out.values[k] = dens_moment[k] / rho[k];
        out.valid[k] = true;
    }
    return out;
}

namespace detail {

inline MaskedField ratio_to_marginal(const std::vector<cdouble>& numerator,
                                     const std::vector<double>& rho, double density_floor) {
    MaskedField out;
    out.values.assign(rho.size(), 0.0);
    out.valid.assign(rho.size(), false);
    const double floor = density_floor * max_abs(rho);
    for (std::size_t k = 0; k < rho.size(); ++k) {
        if (rho[k] <= floor) continue;
        out.values[k] = numerator[k].real() / rho[k];
        out.valid[k] = true;
    }
    return out;
}

} // namespace detail

/// First p-moment over the marginal: the Bohm momentum from the table.
inline MaskedField bohm_momentum_moyal(const WignerTable& t,
                                       double density_floor = default_density_floor) {
    return detail::ratio_to_marginal(moment_p(t, 1), marginal_p(t), density_floor);
}

/// int [p, W]_MB dp / (2 rho) = grad(rho)/(2 rho), the osmotic momentum.
inline MaskedField osmotic_moyal(const WignerTable& t,
                                 double density_floor = default_density_floor) {
    const WignerTable mb = moyal_bracket(PSymbol::p, t);
    auto num = moment_p(mb, 0);
    for (auto& v : num) v *= 0.5;
    return detail::ratio_to_marginal(num, marginal_p(t), density_floor);
}

/// int [p^2, W]_BB dp / rho = (grad S)^2 - lap(R)/R (mass-1/2 convention).
inline MaskedField kinetic_baker(const WignerTable& t,
                                 double density_floor = default_density_floor) {
    const WignerTable bb = baker_bracket(PSymbol::p_squared, t);
    return detail::ratio_to_marginal(moment_p(bb, 0), marginal_p(t), density_floor);
}

/// int [p^2, W]_MB dp / (2 rho) = lap(S) + (grad(rho)/rho) grad S.  The
/// antisymmetric marginal is 2 d/dx (rho grad S), so the advective identity
/// carries the same 1/2 as the osmotic one.
inline MaskedField kinetic_moyal(const WignerTable& t,
                                 double density_floor = default_density_floor) {
    const WignerTable mb = moyal_bracket(PSymbol::p_squared, t);
    auto num = moment_p(mb, 0);
    for (auto& v : num) v *= 0.5;
    return detail::ratio_to_marginal(num, marginal_p(t), density_floor);
}

/// Pointwise max |A - B| over two tables on the same grid.
inline double max_abs_diff(const WignerTable& a, const WignerTable& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("max_abs_diff: grid mismatch");
    double m = 0.0;
    for (std::size_t idx = 0; idx < a.values.size(); ++idx)
        m = std::max(m, std::abs(a.values[idx] - b.values[idx]));
    return m;
}

/// A + B elementwise; kinds combine to complex unless both real.
inline WignerTable table_sum(const WignerTable& a, const WignerTable& b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("table_sum: grid mismatch");
    WignerTable out = a;
    for (std::size_t idx = 0; idx < out.values.size(); ++idx) out.values[idx] += b.values[idx];
    out.kind = (a.kind == ScalarKind::real_kind && b.kind == ScalarKind::real_kind)
                   ? ScalarKind::real_kind
                   : ScalarKind::complex_kind;
    out.imag_residue = std::max(a.imag_residue, b.imag_residue);
    return out;
}

} // namespace tpa
