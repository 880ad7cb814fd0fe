#pragma once

#include "mch/model.hpp"

#include <span>

namespace mch {

// All observables use weights w_k = exp(-beta (E_k - E_min)), which keeps the
// sums finite for any beta > 0 and any spectrum.

/// ln Z_eff(beta) = ln sum_k exp(-beta E_k).
double log_partition(std::span<const double> energies, double beta);
double log_partition(const EffectiveHamiltonian& heff, double beta);

/// Z_eff itself; 0 or inf when exp(log Z) is not representable.
double partition(const EffectiveHamiltonian& heff, double beta);

/// U = <E> under the Boltzmann weights.
double avg_energy(std::span<const double> energies, double beta);
double avg_energy(const EffectiveHamiltonian& heff, double beta);

/// C = kB beta^2 (<E^2> - <E>^2).
double specific_heat(std::span<const double> energies, double beta, double kB = 1.0);
double specific_heat(const EffectiveHamiltonian& heff, double beta, double kB = 1.0);

/// One row per beta; betaGrid must be strictly increasing and positive.
ThermoCurve thermo_curve(const EffectiveHamiltonian& heff, std::span<const double> betaGrid, double kB = 1.0,
                         bool volumeDependentZ = false);

} // namespace mch
