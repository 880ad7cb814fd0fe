#include "mch/oracle.hpp"
#include "mch/quadrature.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace mch;

namespace {

// Reference box integral by brute-force composite Gauss-Legendre on a fine split,
// independent of the closed form under test.
double box_by_quadrature(const PhysicalParams& p, const Lattice& lat, std::size_t i, std::size_t j) {
    const GaussLegendre gl(24);
    const std::size_t pieces = 8;
    const double h = lat.spacing() / pieces;
    std::vector<double> ys, wy, zs, wz;
    double s = 0.0;
    for (std::size_t a = 0; a < pieces; ++a) {
        gl.mapTo(lat.node(i) + a * h, lat.node(i) + (a + 1) * h, ys, wy);
        for (std::size_t b = 0; b < pieces; ++b) {
            gl.mapTo(lat.node(j) + b * h, lat.node(j) + (b + 1) * h, zs, wz);
            for (std::size_t u = 0; u < ys.size(); ++u)
                for (std::size_t v = 0; v < zs.size(); ++v) s += wy[u] * wz[v] * free_kernel(p, ys[u], zs[v]);
        }
    }
    return s / lat.spacing();
}

} // namespace

TEST_CASE("gauss-legendre integrates polynomials exactly") {
    const GaussLegendre gl(5);
    double w = 0.0, x8 = 0.0;
    for (std::size_t k = 0; k < 5; ++k) {
        w += gl.weights[k];
        x8 += gl.weights[k] * std::pow(gl.nodes[k], 8);
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(x8 == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
    std::vector<double> x, wt;
    gl.mapTo(0.0, std::numbers::pi, x, wt);
    double s = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) s += wt[k] * std::sin(x[k]);
    CHECK(s == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("free kernel frozen values") {
    const PhysicalParams p{};
    CHECK(free_kernel(p, 0.0, 0.0) == doctest::Approx(0.398942280401433).epsilon(1e-14));
    CHECK(free_kernel(p, 1.0, 0.0) == doctest::Approx(0.241970724519143).epsilon(1e-14));
    CHECK(free_kernel(p, 0.0, 1.0) == free_kernel(p, 1.0, 0.0));
}

TEST_CASE("free box element frozen values") {
    const PhysicalParams p{};
    const Lattice unit(0.0, 1.0, 8);
    CHECK(free_box_element(p, unit, 0, 0) == doctest::Approx(0.368746380372507).epsilon(1e-13));
    CHECK(free_box_element(p, unit, 1, 0) == doctest::Approx(0.24080204184289).epsilon(1e-13));
    CHECK(free_box_element(p, unit, 3, 0) == doctest::Approx(0.0077335392411666).epsilon(1e-12));
    const Lattice half(0.0, 0.5, 8);
    CHECK(free_box_element(p, half, 0, 0) == doctest::Approx(0.195417107999493).epsilon(1e-13));
    CHECK(free_box_element(p, half, 2, 0) == doctest::Approx(0.120944819977076).epsilon(1e-13));
    // m = 2, T = 0.5: s^2 = hbar T / m = 1/4
    const PhysicalParams q{.mass = 2.0, .hbar = 1.0, .kB = 1.0, .time = 0.5};
    CHECK(free_box_element(q, Lattice(0.0, 0.3, 4), 1, 0) == doctest::Approx(0.196165444391808).epsilon(1e-13));
}

TEST_CASE("free box element closed form matches 2-D quadrature") {
    const PhysicalParams p{};
    for (double dx : {0.2, 0.5, 1.0}) {
        const Lattice lat = Lattice::centered(dx, 12);
        for (std::size_t j = 0; j < 12; ++j) {
            const double a = free_box_element(p, lat, 0, j);
            const double b = box_by_quadrature(p, lat, 0, j);
            CHECK(std::abs(a - b) < 1e-10);
        }
    }
}

TEST_CASE("free box matrix is symmetric Toeplitz") {
    const PhysicalParams p{};
    const Lattice lat = Lattice::centered(0.5, 10);
    const TransitionMatrix m = free_box_matrix(p, lat);
    CHECK(m.source == MatrixSource::FreeAnalytic);
    CHECK(m.isSymmetric());
    for (std::size_t i = 1; i < 10; ++i)
        for (std::size_t j = 1; j < 10; ++j) CHECK(m.elements(i, j) == doctest::Approx(m.elements(i - 1, j - 1)).epsilon(1e-14));
}

TEST_CASE("exact quadrature of the free kernel matches the closed form") {
    const PhysicalParams p{};
    const Lattice lat = Lattice::centered(1.0, 8);
    const TransitionMatrix q = exact_box_matrix(KernelSpec{FreeKernel{}, p}, lat);
    const TransitionMatrix c = free_box_matrix(p, lat);
    for (std::size_t i = 0; i < 8; ++i)
        for (std::size_t j = 0; j < 8; ++j) CHECK(std::abs(q.elements(i, j) - c.elements(i, j)) < 1e-12);
}

TEST_CASE("harmonic kernel frozen value and free limit") {
    const PhysicalParams p{};
    CHECK(harmonic_kernel(p, 0.6, 0.3, -0.2) == doctest::Approx(0.340360065372121).epsilon(1e-13));
    CHECK(harmonic_kernel(p, 0.6, 0.3, -0.2) == harmonic_kernel(p, 0.6, -0.2, 0.3));
    CHECK(harmonic_kernel(p, 1e-6, 0.7, 0.1) == doctest::Approx(free_kernel(p, 0.7, 0.1)).epsilon(1e-9));
}

TEST_CASE("harmonic kernel trace equals the oscillator partition function") {
    for (double omega : {0.3, 0.6, 1.5}) {
        for (double T : {0.5, 1.0, 2.0}) {
            const PhysicalParams p{.mass = 1.0, .hbar = 1.0, .kB = 1.0, .time = T};
            // trapezoid on a wide grid converges spectrally for a Gaussian
            const double h = 0.01, L = 30.0;
            double tr = 0.0;
            for (double x = -L; x <= L + 1e-12; x += h) tr += harmonic_kernel(p, omega, x, x) * h;
            CHECK(std::abs(tr - 1.0 / (2.0 * std::sinh(omega * T / 2.0))) < 1e-8);
        }
    }
}

TEST_CASE("oscillator eigenfunctions are orthonormal and box averages agree") {
    const PhysicalParams p{};
    const GaussLegendre gl(80);
    std::vector<double> x, w;
    gl.mapTo(-12.0, 12.0, x, w);
    for (std::size_t a = 0; a < 5; ++a)
        for (std::size_t b = 0; b < 5; ++b) {
            double s = 0.0;
            for (std::size_t k = 0; k < x.size(); ++k)
                s += w[k] * ho_wavefunction(p, 0.6, a, x[k]) * ho_wavefunction(p, 0.6, b, x[k]);
            CHECK(s == doctest::Approx(a == b ? 1.0 : 0.0).epsilon(1e-10).scale(1.0));
        }
    const Lattice lat = Lattice::centered(1.0, 20);
    CHECK(ho_box_average(p, 0.6, 1, lat, 10) == doctest::Approx(-ho_box_average(p, 0.6, 1, lat, 9)).epsilon(1e-12));
    CHECK(ho_exact_energy(p, 0.6, 3) == doctest::Approx(2.1).epsilon(1e-15));
}

TEST_CASE("sech2 spectrum frozen values") {
    const PhysicalParams p{};
    const auto a = sech2_exact_spectrum(p, 1.0, 1.0);
    REQUIRE(a.size() == 1);
    CHECK(a[0] == doctest::Approx(-0.5).epsilon(1e-14));
    const auto b = sech2_exact_spectrum(p, 1.0, 2.0);
    REQUIRE(b.size() == 3);
    CHECK(b[0] == doctest::Approx(-0.703464834591373).epsilon(1e-13));
    CHECK(b[1] == doctest::Approx(-0.23539450377412).epsilon(1e-13));
    CHECK(b[2] == doctest::Approx(-0.017324172956866).epsilon(1e-12));
}

TEST_CASE("sech2 bound-state count formula over randomized Q") {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(0.01, 60.0);
    for (int t = 0; t < 500; ++t) {
        const double v0 = u(rng) / 4.0, d = std::sqrt(u(rng) / 10.0), m = u(rng) / 20.0 + 0.1;
        const PhysicalParams p{.mass = m, .hbar = 1.0, .kB = 1.0, .time = 1.0};
        const double Q = 2.0 * m * d * d * v0;
        const double lambda = std::sqrt(Q + 0.25) - 0.5;
        const auto levels = sech2_exact_spectrum(p, v0, d);
        const std::size_t n = sech2_bound_state_count(p, v0, d);
        CHECK(levels.size() == n);
        CHECK(n == static_cast<std::size_t>(std::ceil(lambda)));
        for (double e : levels) CHECK(e < 0.0);
        for (std::size_t k = 1; k < levels.size(); ++k) CHECK(levels[k] > levels[k - 1]);
    }
}

TEST_CASE("closed-form thermodynamics") {
    const PhysicalParams p{};
    const auto h = ho_thermo(p, 0.6, 1.0);
    CHECK(h.U == doctest::Approx(1.02982152909652).epsilon(1e-13));
    CHECK(h.C == doctest::Approx(0.9705323817907).epsilon(1e-12));
    CHECK(h.Z == doctest::Approx(1.64192669834921).epsilon(1e-13));
    CHECK(ho_thermo(p, 0.6, 40.0).U == doctest::Approx(0.3).epsilon(1e-9));
    const auto f = free_thermo(p, 4.0);
    CHECK(f.U == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(f.C == doctest::Approx(0.5).epsilon(1e-15));
}
