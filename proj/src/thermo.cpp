#include "mch/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mch {

namespace {

void check(std::span<const double> energies, double beta) {
    if (energies.empty()) throw std::invalid_argument("thermodynamics of an empty spectrum");
    if (!(beta > 0.0) || !std::isfinite(beta)) throw std::invalid_argument("beta must be > 0");
}

struct WeightedMoments {
    double lowest;
    double weightSum;
    double mean;
    double variance;
};

WeightedMoments moments(std::span<const double> energies, double beta) {
    check(energies, beta);
    const double e0 = *std::min_element(energies.begin(), energies.end());
    double w = 0.0, we = 0.0;
    for (double e : energies) {
        const double wk = std::exp(-beta * (e - e0));
        w += wk;
        we += wk * e;
    }
    const double mean = we / w;
    double var = 0.0;
    for (double e : energies) var += std::exp(-beta * (e - e0)) * (e - mean) * (e - mean);
    return {e0, w, mean, var / w};
}

} // namespace

double log_partition(std::span<const double> energies, double beta) {
    const auto m = moments(energies, beta);
    return -beta * m.lowest + std::log(m.weightSum);
}

double log_partition(const EffectiveHamiltonian& heff, double beta) { return log_partition(heff.energies, beta); }

double partition(const EffectiveHamiltonian& heff, double beta) { return std::exp(log_partition(heff, beta)); }

double avg_energy(std::span<const double> energies, double beta) { return moments(energies, beta).mean; }

double avg_energy(const EffectiveHamiltonian& heff, double beta) { return avg_energy(heff.energies, beta); }

double specific_heat(std::span<const double> energies, double beta, double kB) {
    return kB * beta * beta * moments(energies, beta).variance;
}

double specific_heat(const EffectiveHamiltonian& heff, double beta, double kB) {
    return specific_heat(heff.energies, beta, kB);
}

ThermoCurve thermo_curve(const EffectiveHamiltonian& heff, std::span<const double> betaGrid, double kB,
                         bool volumeDependentZ) {
    if (betaGrid.empty()) throw std::invalid_argument("empty beta grid");
    for (std::size_t b = 0; b < betaGrid.size(); ++b) {
        if (!(betaGrid[b] > 0.0)) throw std::invalid_argument("beta grid values must be > 0");
        if (b > 0 && !(betaGrid[b] > betaGrid[b - 1])) throw std::invalid_argument("beta grid must be strictly increasing");
    }
    ThermoCurve curve;
    curve.volumeDependentZ = volumeDependentZ;
    for (double beta : betaGrid) {
        const auto m = moments(heff.energies, beta);
        const double logZ = -beta * m.lowest + std::log(m.weightSum);
        curve.rows.push_back({beta, 1.0 / (kB * beta), logZ, std::exp(logZ), m.mean, kB * beta * beta * m.variance});
    }
    return curve;
}

} // namespace mch
