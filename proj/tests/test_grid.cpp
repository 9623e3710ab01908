#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "tpa/grid.hpp"
#include "tpa/polar.hpp"
#include "tpa/states.hpp"

using namespace tpa;
using Catch::Approx;

TEST_CASE("grid construction and lattices") {
    const Grid g = build_grid(8, 8.0, 0.0);
    CHECK(g.dx() == Approx(1.0));
    CHECK(g.dp() == Approx(2.0 * pi / 8.0));
    CHECK(g.x(0) == Approx(-4.0));
    CHECK(g.x(7) == Approx(3.0));
    CHECK(g.mode(0) == -4);
    CHECK(g.p(0) == Approx(-4.0 * 2.0 * pi / 8.0));
    CHECK(g.p(g.index_of_mode(3)) == Approx(3.0 * 2.0 * pi / 8.0));

    CHECK(build_grid(256, 40.0).dx() == Approx(0.15625));

    CHECK_THROWS_AS(build_grid(6, 8.0), std::invalid_argument);   // not a power of two
    CHECK_THROWS_AS(build_grid(4, 8.0), std::invalid_argument);   // below minimum
    CHECK_THROWS_AS(build_grid(256, 0.0), std::invalid_argument); // non-positive length
    CHECK_THROWS_AS(build_grid(256, -1.0), std::invalid_argument);
}

TEST_CASE("forward transform matches the direct sum and the Gaussian closed form") {
    const Grid g = build_grid(128, 32.0, 0.0);
    const GridField psi = gaussian_packet(g, 1.0, -0.7, 1.2);
    const GridField phi = to_momentum(psi);

    const auto direct = oracles::naive_forward_transform(psi);
    double dev = 0.0;
    for (std::size_t i = 0; i < g.n; ++i) dev = std::max(dev, std::abs(phi.values[i] - direct[i]));
    CHECK(dev < 1e-12);

    const oracles::GaussianOracle ga{1.0, -0.7, 1.2};
    dev = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        dev = std::max(dev, std::abs(phi.values[i] - ga.momentum_rep(g.p(i))));
    CHECK(dev < 1e-12);

    CHECK(norm_squared(phi) == Approx(1.0).margin(1e-12));
}

TEST_CASE("plane wave concentrates on a single momentum bin") {
    const Grid g = build_grid(64, 16.0, 0.0);
    const GridField pw = plane_wave(g, 3);
    const GridField phi = to_momentum(pw);
    for (std::size_t i = 0; i < g.n; ++i) {
        if (g.mode(i) == 3) continue;
        CHECK(std::abs(phi.values[i]) < 1e-12);
    }
    CHECK(std::abs(phi.values[g.index_of_mode(3)]) == Approx(1.0 / std::sqrt(g.dp())).epsilon(1e-12));
}

TEST_CASE("transform round trips and representation guards") {
    const Grid g = build_grid(64, 20.0, -1.5); // off-center domain
    const GridField psi = gaussian_packet(g, -1.5, 1.0, 1.0);
    const GridField back = to_position(to_momentum(psi));
    for (std::size_t k = 0; k < g.n; ++k)
        CHECK(std::abs(back.values[k] - psi.values[k]) < 1e-12);

    CHECK_THROWS_AS(to_momentum(to_momentum(psi)), std::invalid_argument);
    CHECK_THROWS_AS(to_position(psi), std::invalid_argument);

    GridField zero = make_field(g, Representation::momentum);
    const GridField zpos = to_position(zero);
    CHECK(max_abs(zpos.values) == 0.0);

    // single momentum bin -> plane wave
    GridField bin = make_field(g, Representation::momentum);
    bin.values[g.index_of_mode(2)] = 1.0;
    const GridField wave = to_position(bin);
    const double expect_amp = g.dp() / std::sqrt(2.0 * pi);
    for (std::size_t k = 0; k < g.n; ++k) {
        CHECK(std::abs(wave.values[k]) == Approx(expect_amp).epsilon(1e-12));
        const cdouble ratio = wave.values[k] / std::polar(expect_amp, g.p(g.index_of_mode(2)) * g.x(k));
        CHECK(std::abs(ratio - cdouble{1.0, 0.0}) < 1e-12);
    }
}

TEST_CASE("Parseval holds for random band-limited fields") {
    const Grid g = build_grid(256, 40.0, 0.0);
    for (unsigned seed : {1u, 2u, 3u, 4u, 5u, 6u, 7u, 8u}) {
        const GridField psi = oracles::random_band_limited(g, seed);
        const GridField phi = to_momentum(psi);
        CHECK(std::abs(norm_squared(psi) - norm_squared(phi)) < 1e-12 * norm_squared(psi));
    }
}

TEST_CASE("spectral derivative on lattice eigenfunctions") {
    const Grid g = build_grid(128, 16.0, 0.0);
    const double k3 = g.dp() * 3.0;
    const GridField pw = plane_wave(g, 3);

    const GridField d1 = spectral_derivative(pw, 1);
    for (std::size_t k = 0; k < g.n; ++k)
        CHECK(std::abs(d1.values[k] - ci * k3 * pw.values[k]) < 1e-12);

    // sin(kx) second derivative
    GridField s = make_field(g);
    for (std::size_t k = 0; k < g.n; ++k) s.values[k] = std::sin(k3 * g.x(k));
    const GridField d2 = spectral_derivative(s, 2);
    for (std::size_t k = 0; k < g.n; ++k)
        CHECK(std::abs(d2.values[k] + k3 * k3 * s.values[k]) < 1e-10);

    // constant field
    GridField c = make_field(g);
    for (auto& v : c.values) v = 2.5;
    CHECK(max_abs(spectral_derivative(c, 1).values) < 1e-13);

    CHECK_THROWS_AS(spectral_derivative(pw, 3), std::invalid_argument);
}

TEST_CASE("first derivative applied twice matches the second derivative") {
    const Grid g = build_grid(256, 40.0, 0.0);
    for (unsigned seed : {11u, 12u, 13u}) {
        const GridField psi = oracles::random_band_limited(g, seed);
        const GridField twice = spectral_derivative(spectral_derivative(psi, 1), 1);
        const GridField second = spectral_derivative(psi, 2);
        double dev = 0.0;
        for (std::size_t k = 0; k < g.n; ++k)
            dev = std::max(dev, std::abs(twice.values[k] - second.values[k]));
        CHECK(dev < 1e-10);
    }
}

TEST_CASE("finite-difference modes agree with the spectral derivative") {
    const Grid g = build_grid(512, 32.0, 0.0);
    const GridField psi = gaussian_packet(g, 0.0, 1.0, 1.5);
    const GridField ds = derivative(psi, 1, DerivativeMode::spectral);
    const GridField d2 = derivative(psi, 1, DerivativeMode::fd2);
    const GridField d4 = derivative(psi, 1, DerivativeMode::fd4);
    double dev2 = 0.0, dev4 = 0.0;
    for (std::size_t k = 0; k < g.n; ++k) {
        dev2 = std::max(dev2, std::abs(d2.values[k] - ds.values[k]));
        dev4 = std::max(dev4, std::abs(d4.values[k] - ds.values[k]));
    }
    CHECK(dev2 < 2e-3);
    CHECK(dev4 < 2e-6);
    CHECK(dev4 < dev2); // higher order is tighter at this resolution
}

TEST_CASE("band-limited upsampling keeps the original samples") {
    const Grid g = build_grid(64, 16.0, 0.5);
    const GridField psi = oracles::random_band_limited(g, 21u);
    const GridField fine = upsample2x(psi);
    REQUIRE(fine.grid.n == 2 * g.n);
    for (std::size_t k = 0; k < g.n; ++k)
        CHECK(std::abs(fine.values[2 * k] - psi.values[k]) < 1e-13);

    // interpolation at arbitrary points matches the analytic Gaussian
    const Grid g2 = build_grid(256, 40.0, 0.0);
    const GridField gauss = gaussian_packet(g2, 0.5, 1.0, 1.0);
    const oracles::GaussianOracle ga{0.5, 1.0, 1.0};
    for (double x : {0.1, 0.77, -2.3}) {
        const cdouble v = eval_at(gauss, x);
        CHECK(std::abs(std::norm(v) - ga.rho(x)) < 1e-12);
    }
}

TEST_CASE("polar decomposition of a pure phase") {
    const Grid g = build_grid(64, 2.0 * pi * 8.0, 0.0); // k = 2 lives on this lattice
    GridField f = make_field(g);
    for (std::size_t k = 0; k < g.n; ++k) f.values[k] = std::polar(1.0, 2.0 * g.x(k));
    const PolarField p = polar_decompose(f);
    for (std::size_t k = 0; k < g.n; ++k) {
        CHECK(p.valid[k]);
        CHECK(p.r_amp[k] == Approx(1.0).epsilon(1e-14));
        if (k > 0) CHECK(p.phase[k] - p.phase[k - 1] == Approx(2.0 * g.dx()).margin(1e-12));
    }
}

TEST_CASE("polar decomposition of a moving Gaussian has linear phase") {
    const Grid g = build_grid(256, 40.0, 0.0);
    const GridField f = gaussian_packet(g, 0.0, 3.0, 1.0);
    const PolarField p = polar_decompose(f);
    for (std::size_t k = 1; k < g.n; ++k) {
        if (!(p.valid[k] && p.valid[k - 1])) continue;
        CHECK(p.phase[k] - p.phase[k - 1] == Approx(3.0 * g.dx()).margin(1e-9));
        CHECK(p.density[k] == Approx(p.r_amp[k] * p.r_amp[k]).margin(1e-15));
    }
}

TEST_CASE("a node splits the valid mask into two internally continuous runs") {
    const Grid g = build_grid(256, 40.0, 0.0);
    const GridField f = two_gaussian(g, -2.0, 2.0, 0.0, 0.0, 1.0, pi); // real, exact zero at x=0
    const PolarField p = polar_decompose(f);

    CHECK_FALSE(p.valid[g.n / 2]); // the node sits on the lattice

    // count maximal valid runs
    int runs = 0;
    for (std::size_t k = 0; k < g.n; ++k)
        if (p.valid[k] && (k == 0 || !p.valid[k - 1])) ++runs;
    CHECK(runs == 2);

    for (std::size_t k = 1; k < g.n; ++k)
        if (p.valid[k] && p.valid[k - 1])
            CHECK(std::abs(p.phase[k] - p.phase[k - 1]) <= pi + 1e-12);
}

TEST_CASE("unwrapped jumps stay in (-pi, pi] for random fields") {
    const Grid g = build_grid(256, 40.0, 0.0);
    for (unsigned seed : {31u, 32u, 33u, 34u}) {
        const GridField f = oracles::random_band_limited(g, seed);
        const PolarField p = polar_decompose(f);
        const GridField back = polar_recompose(p, f);
        for (std::size_t k = 0; k < g.n; ++k) {
            if (!p.valid[k]) continue;
            CHECK(std::abs(back.values[k] - f.values[k]) <= 1e-12 * std::abs(f.values[k]));
            if (k > 0 && p.valid[k - 1]) {
                const double jump = p.phase[k] - p.phase[k - 1];
                CHECK(jump > -pi - 1e-15);
                CHECK(jump <= pi + 1e-15);
            }
        }
    }
}

TEST_CASE("polar decomposition rejects bad inputs") {
    const Grid g = build_grid(64, 16.0, 0.0);
    const GridField zero = make_field(g);
    CHECK_THROWS_AS(polar_decompose(zero), std::invalid_argument);
    const GridField f = gaussian_packet(g, 0.0, 0.0, 1.0);
    CHECK_THROWS_AS(polar_decompose(f, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(polar_decompose(f, 1.5), std::invalid_argument);
}

TEST_CASE("run-restricted gradients are exact on linear data and respect the mask") {
    const Grid g = build_grid(64, 16.0, 0.0);
    std::vector<double> v(g.n);
    std::vector<bool> valid(g.n, true);
    for (std::size_t k = 0; k < g.n; ++k) v[k] = 1.5 * g.x(k) + 0.3;
    valid[20] = false; // split into two runs

    const MaskedField d = run_gradient(v, valid, g.dx(), 1);
    for (std::size_t k = 0; k < g.n; ++k) {
        if (k + 2 >= g.n || k < 2) { CHECK_FALSE(d.valid[k]); continue; }
        const bool stencil_ok = valid[k - 2] && valid[k - 1] && valid[k] && valid[k + 1] && valid[k + 2];
        CHECK(d.valid[k] == stencil_ok);
        if (d.valid[k]) CHECK(d.values[k] == Approx(1.5).margin(1e-12));
    }
    const MaskedField d2 = run_gradient(v, valid, g.dx(), 2);
    for (std::size_t k = 2; k + 2 < g.n; ++k)
        if (d2.valid[k]) CHECK(d2.values[k] == Approx(0.0).margin(1e-11));
}
