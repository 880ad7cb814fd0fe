#include "mch/oracle.hpp"
#include "mch/spectra.hpp"
#include "mch/thermo.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

using namespace mch;

namespace {

const std::vector<double> kLevels{0.3, 0.9, 1.5, 2.1, 2.7, 3.3, 3.9, 4.5, 6.0};

} // namespace

TEST_CASE("two-level system in closed form") {
    const std::vector<double> e{0.0, 1.0};
    for (double b : {0.1, 1.0, 5.0}) {
        const double x = std::exp(-b);
        CHECK(log_partition(e, b) == doctest::Approx(std::log1p(x)).epsilon(1e-15));
        CHECK(avg_energy(e, b) == doctest::Approx(x / (1.0 + x)).epsilon(1e-14));
        CHECK(specific_heat(e, b, 2.0) == doctest::Approx(2.0 * b * b * x / ((1.0 + x) * (1.0 + x))).epsilon(1e-13));
    }
}

TEST_CASE("finite-difference identities") {
    for (double b : {0.2, 1.0, 3.0}) {
        const double h = 1e-4 * b;
        const double dlogZ = (log_partition(kLevels, b + h) - log_partition(kLevels, b - h)) / (2.0 * h);
        CHECK(std::abs(-dlogZ - avg_energy(kLevels, b)) < 1e-6 * std::abs(avg_energy(kLevels, b)));
        const double h2 = 1e-3 * b;
        const double d2 = (log_partition(kLevels, b + h2) - 2.0 * log_partition(kLevels, b) +
                           log_partition(kLevels, b - h2)) / (h2 * h2);
        const double c = specific_heat(kLevels, b);
        CHECK(std::abs(b * b * d2 - c) < 1e-4 * c);
    }
}

TEST_CASE("extreme beta stays finite") {
    CHECK(avg_energy(kLevels, 1e4) == doctest::Approx(0.3));
    CHECK(specific_heat(kLevels, 1e4) == 0.0);
    const std::vector<double> shifted{-800.0, -799.0};
    CHECK(std::isfinite(log_partition(shifted, 2.0)));
    CHECK(avg_energy(shifted, 2.0) < -799.5);
}

TEST_CASE("energy is monotone in temperature and ordering does not matter") {
    std::vector<double> shuffled = kLevels;
    std::reverse(shuffled.begin(), shuffled.end());
    std::swap(shuffled[2], shuffled[5]);
    double prev = avg_energy(kLevels, 0.05);
    for (double b = 0.1; b <= 20.0; b += 0.1) {
        const double u = avg_energy(kLevels, b);
        CHECK(u < prev);
        prev = u;
        CHECK(avg_energy(shuffled, b) == doctest::Approx(u).epsilon(1e-14));
        CHECK(specific_heat(shuffled, b) == doctest::Approx(specific_heat(kLevels, b)).epsilon(1e-12));
        CHECK(specific_heat(kLevels, b) >= 0.0);
    }
}

TEST_CASE("single level has no heat capacity") {
    const std::vector<double> one{1.7};
    CHECK(avg_energy(one, 3.0) == 1.7);
    CHECK(specific_heat(one, 3.0) == 0.0);
    CHECK(log_partition(one, 2.0) == doctest::Approx(-3.4));
}

TEST_CASE("thermo curve from an effective Hamiltonian") {
    const PhysicalParams p{};
    const Lattice lat = Lattice::centered(1.0, 20);
    const EffectiveHamiltonian h = build_heff(exact_box_matrix(KernelSpec{HarmonicKernel{0.6}, p}, lat), p, lat);
    const std::vector<double> grid{0.5, 1.0, 2.0};
    const ThermoCurve c = thermo_curve(h, grid, 1.0);
    REQUIRE(c.rows.size() == 3);
    for (std::size_t r = 0; r < 3; ++r) {
        CHECK(c.rows[r].beta == grid[r]);
        CHECK(c.rows[r].temperature == doctest::Approx(1.0 / grid[r]));
        CHECK(c.rows[r].U == avg_energy(h, grid[r]));
        CHECK(c.rows[r].C == specific_heat(h, grid[r]));
        CHECK(c.rows[r].Z == doctest::Approx(std::exp(c.rows[r].logZ)));
    }
    const std::vector<double> empty, unordered{1.0, 0.5}, nonpositive{0.0, 1.0};
    CHECK_THROWS_AS(thermo_curve(h, empty), std::invalid_argument);
    CHECK_THROWS_AS(thermo_curve(h, unordered), std::invalid_argument);
    CHECK_THROWS_AS(thermo_curve(h, nonpositive), std::invalid_argument);
}
