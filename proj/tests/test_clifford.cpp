#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "oracles.hpp"
#include "tpa/clifford.hpp"

using namespace tpa;
using Catch::Approx;

namespace {

// blade slots: 0:1  1:e1  2:e2  3:e3  4:e23  5:e13  6:e12  7:e123
Multivector rand_mv(std::mt19937& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Multivector m;
    for (auto& c : m.c) c = u(rng);
    return m;
}

double dev(const Multivector& a, const Multivector& b) {
    double d = 0.0;
    for (std::size_t i = 0; i < 8; ++i) d = std::max(d, std::abs(a.c[i] - b.c[i]));
    return d;
}

} // namespace

TEST_CASE("generator relations hold exactly") {
    for (std::size_t i = 1; i <= 3; ++i)
        for (std::size_t j = 1; j <= 3; ++j) {
            const Multivector anti = Multivector::blade(i) * Multivector::blade(j)
                                   + Multivector::blade(j) * Multivector::blade(i);
            CHECK(dev(anti, Multivector::scalar(i == j ? 2.0 : 0.0)) == 0.0);
        }
}

TEST_CASE("basic blade products") {
    CHECK(dev(Multivector::blade(1) * Multivector::blade(2), Multivector::blade(6)) == 0.0); // e1 e2 = e12
    CHECK(dev(Multivector::blade(1) * Multivector::blade(1), Multivector::scalar(1.0)) == 0.0);
    CHECK(dev(Multivector::blade(7) * Multivector::blade(7), Multivector::scalar(-1.0)) == 0.0); // e123^2 = -1
    CHECK(dev(Multivector::blade(1) * Multivector::blade(3), Multivector::blade(5)) == 0.0);     // e1 e3 = e13
    CHECK(dev(Multivector::blade(3) * Multivector::blade(1), Multivector::blade(5) * -1.0) == 0.0);
}

TEST_CASE("reversion signs and anti-automorphism") {
    CHECK(dev(reverse(Multivector::blade(1)), Multivector::blade(1)) == 0.0);
    CHECK(dev(reverse(Multivector::blade(6)), Multivector::blade(6) * -1.0) == 0.0); // e12
    CHECK(dev(reverse(Multivector::blade(7)), Multivector::blade(7) * -1.0) == 0.0); // e123

    std::mt19937 rng(7u);
    for (int it = 0; it < 1000; ++it) {
        const Multivector a = rand_mv(rng), b = rand_mv(rng);
        CHECK(dev(reverse(a * b), reverse(b) * reverse(a)) < 1e-12);
    }
}

TEST_CASE("grade projection partitions a multivector") {
    std::mt19937 rng(8u);
    const Multivector a = rand_mv(rng);
    Multivector sum;
    for (int k = 0; k <= 3; ++k) sum = sum + grade(a, k);
    CHECK(dev(sum, a) == 0.0);
    CHECK(dev(grade(Multivector::blade(6), 2), Multivector::blade(6)) == 0.0);
    CHECK(dev(grade(Multivector::blade(6), 1), Multivector{}) == 0.0);
    CHECK_THROWS_AS(grade(a, 4), std::invalid_argument);
}

TEST_CASE("trace is the matrix trace") {
    CHECK(trace(Multivector::scalar(1.0)) == 2.0);
    CHECK(trace(Multivector::blade(3)) == 0.0);
    CHECK(trace(epsilon()) == 1.0);

    std::mt19937 rng(9u);
    for (int it = 0; it < 200; ++it) {
        const Multivector a = rand_mv(rng);
        const auto t = oracles::rep(a).tr();
        CHECK(trace(a) == Approx(t.real()).margin(1e-12));
        CHECK(trace_complex(a).imag() == Approx(t.imag()).margin(1e-12));
    }
}

TEST_CASE("epsilon is a primitive idempotent absorbing e3") {
    const Multivector eps = epsilon();
    CHECK(dev(eps * eps, eps) == 0.0);
    CHECK(dev(Multivector::blade(3) * eps, eps) == 0.0); // e3 eps = eps
}

TEST_CASE("pseudoscalar is central") {
    const Multivector e123 = Multivector::blade(7);
    for (std::size_t b = 0; b < 8; ++b)
        CHECK(dev(e123 * Multivector::blade(b), Multivector::blade(b) * e123) == 0.0);
}

TEST_CASE("matrix representation is faithful") {
    std::mt19937 rng(10u);
    for (int it = 0; it < 1000; ++it) {
        const Multivector a = rand_mv(rng), b = rand_mv(rng), c = rand_mv(rng);
        CHECK(dev((a * b) * c, a * (b * c)) < 1e-12);
        CHECK(oracles::mat_dev(oracles::rep(a * b), oracles::rep(a) * oracles::rep(b)) < 1e-12);
    }
}

TEST_CASE("spinor embedding into the minimal left ideal") {
    const Multivector eps = epsilon();

    // (1, 0) -> eps
    CHECK(dev(spinor_to_ideal({1.0, 0.0}, {0.0, 0.0}).mv, eps) == 0.0);

    // (i, 0) -> e123 eps (= e12 eps on the ideal)
    const Multivector i_eps = Multivector::blade(7) * eps;
    CHECK(dev(spinor_to_ideal({0.0, 1.0}, {0.0, 0.0}).mv, i_eps) == 0.0);
    CHECK(dev(Multivector::blade(6) * eps, i_eps) == 0.0);

    // (0, 1) -> e1 eps
    CHECK(dev(spinor_to_ideal({0.0, 0.0}, {1.0, 0.0}).mv, Multivector::blade(1) * eps) == 0.0);

    // membership and right-invariance
    std::mt19937 rng(11u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int it = 0; it < 1000; ++it) {
        const std::complex<double> p1{u(rng), u(rng)}, p2{u(rng), u(rng)};
        const IdealElement phi = spinor_to_ideal(p1, p2);
        CHECK(in_ideal(phi.mv));
        const auto back = ideal_to_spinor(phi);
        CHECK(std::abs(back.first - p1) <= 1e-15);
        CHECK(std::abs(back.second - p2) <= 1e-15);

        // left multiplication keeps the element in the ideal
        const Multivector m = rand_mv(rng) * phi.mv;
        CHECK(dev(m * eps, m) < 1e-12);
    }

    CHECK_THROWS_AS(ideal_to_spinor(IdealElement{Multivector::blade(1)}), std::invalid_argument);
}

TEST_CASE("matrix representation maps the ideal to a column spinor") {
    const IdealElement phi = spinor_to_ideal({0.3, 0.4}, {-0.5, 0.1});
    const auto m = oracles::rep(phi.mv);
    CHECK(std::abs(m.m[0] - std::complex<double>{0.3, 0.4}) < 1e-14);
    CHECK(std::abs(m.m[2] - std::complex<double>{-0.5, 0.1}) < 1e-14);
    CHECK(std::abs(m.m[1]) < 1e-14);
    CHECK(std::abs(m.m[3]) < 1e-14);
}

TEST_CASE("density element and point-split kernel") {
    // (1, 0): rho_c = eps, trace 1
    const IdealElement unit = spinor_to_ideal({1.0, 0.0}, {0.0, 0.0});
    CHECK(dev(clifford_density(unit), epsilon()) == 0.0);
    CHECK(trace(clifford_density(unit)) == 1.0);

    // (0.6, 0.8i): trace is |psi1|^2 + |psi2|^2 = 1
    const IdealElement mixed = spinor_to_ideal({0.6, 0.0}, {0.0, 0.8});
    CHECK(trace(clifford_density(mixed)) == Approx(1.0).margin(1e-14));

    // real scaling is quadratic in the trace
    const IdealElement scaled = spinor_to_ideal({1.8, 0.0}, {0.0, 2.4});
    CHECK(trace(clifford_density(scaled)) == Approx(9.0).margin(1e-13));

    std::mt19937 rng(12u);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int it = 0; it < 300; ++it) {
        const std::complex<double> a1{u(rng), u(rng)}, a2{u(rng), u(rng)};
        const std::complex<double> b1{u(rng), u(rng)}, b2{u(rng), u(rng)};
        const IdealElement A = spinor_to_ideal(a1, a2);
        const IdealElement B = spinor_to_ideal(b1, b2);

        // diagonal case collapses to the density element
        CHECK(dev(density_kernel(A, A), clifford_density(A)) == 0.0);

        // reversing the arguments reverses the product
        CHECK(dev(density_kernel(A, B), reverse(density_kernel(B, A))) < 1e-13);

        // complex trace against the matrix oracle: tr(rep(A) rep(B)^dagger)
        const auto kernel = density_kernel(A, B);
        const std::complex<double> expect = a1 * std::conj(b1) + a2 * std::conj(b2);
        CHECK(std::abs(trace_complex(kernel) - expect) < 1e-13);
        CHECK(trace(kernel) == Approx(expect.real()).margin(1e-13));
    }
}
