#pragma once

#include "mch/model.hpp"

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace mch {

using Rng = std::mt19937_64;

/// Independent generator for matrix element (i, j); identical for identical
/// (seed, i, j) regardless of which thread or in what order it is used.
Rng element_rng(std::uint64_t seed, std::size_t i, std::size_t j);

/// Discretized path x_0 .. x_{n_t}; x_0 = z sits in box j, x_{n_t} = y in box i.
struct PathSample {
    std::vector<double> positions;

    double start() const { return positions.front(); }
    double end() const { return positions.back(); }
    std::size_t slices() const { return positions.size() - 1; }
};

struct EndpointDraw {
    double y = 0.0; ///< final point, box i
    double z = 0.0; ///< initial point, box j
    std::size_t proposals = 0;
    bool capped = false; ///< rejection cap hit; y and z are meaningless
};

/// Draw (y, z) on box_i x box_j with density proportional to
/// exp(-m (y - z)^2 / (2 hbar T)), by rejection.
///
/// With g the gap between the boxes and s = |y - z| - g, the target factors as
/// exp(-a g^2/2) exp(-a g s) exp(-a s^2/2). Proposals follow the first two
/// factors exactly (independent truncated exponentials in y and z, uniform
/// when g = 0) and are accepted with exp(-a s^2/2) >= exp(-2 a dx^2).
EndpointDraw sample_endpoints(const PhysicalParams& params, const Lattice& lattice, std::size_t i, std::size_t j,
                              Rng& rng, std::size_t cap = 1000000);

/// Constant c with M0_ij = c * P(accept) for sample_endpoints, so that the
/// acceptance rate alone estimates the free matrix element.
double endpoint_envelope(const PhysicalParams& params, const Lattice& lattice, std::size_t i, std::size_t j);

/// Exact sample of the discretized free path measure pinned at x_0 = z, x_{n_t} = y.
PathSample brownian_bridge(const PhysicalParams& params, double z, double y, std::size_t slices, Rng& rng);

/// In-place variant; `path.size()` is n_t + 1.
void brownian_bridge(const PhysicalParams& params, double z, double y, std::span<double> path, Rng& rng);

struct ElementEstimate {
    double mean = 0.0;     ///< estimate of the ratio M_ij / M0_ij
    double stdError = 0.0; ///< sample standard deviation / sqrt(N_c)
    std::size_t nSamples = 0;
    bool negligible = false;                 ///< skipped: M0_ij underflows or rejection cap hit
    bool autocorrelationUncorrected = false; ///< Metropolis: stdError ignores autocorrelation
    double acceptanceRate = 1.0;             ///< endpoint rejection (bridge) or Metropolis acceptance
    std::string warning;
};

/// Ratio estimator <exp(-S_V / hbar)> over the free path measure with endpoints
/// in boxes (i, j). Multiply by free_box_element(i, j) to get M_ij.
ElementEstimate estimate_element(const PhysicalParams& params, const Lattice& lattice, const Potential& potential,
                                 std::size_t i, std::size_t j, const SamplerConfig& cfg, Rng& rng);

/// Same observable, sampled with single-site random-walk Metropolis on the whole path.
ElementEstimate metropolis_estimate_element(const PhysicalParams& params, const Lattice& lattice,
                                            const Potential& potential, std::size_t i, std::size_t j,
                                            const SamplerConfig& cfg, Rng& rng);

/// Monte Carlo transition matrix. Elements i <= j are estimated on independent
/// streams and mirrored, so the result is exactly symmetric.
TransitionMatrix estimate_matrix(const PhysicalParams& params, const Lattice& lattice, const Potential& potential,
                                 const SamplerConfig& cfg);

/// M0_ij below this is treated as exactly zero.
inline constexpr double kNegligibleElement = 1e-300;

} // namespace mch
