#include "mch/sampler.hpp"

#include "mch/oracle.hpp"
#include "mch/potentials.hpp"

#include <boost/random/normal_distribution.hpp>
#include <boost/random/uniform_01.hpp>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace mch {

Rng element_rng(std::uint64_t seed, std::size_t i, std::size_t j) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j), 0x6d63'6821u};
    return Rng(seq);
}

namespace {

// Geometry of the endpoint proposal for boxes (i, j): d = |y - z| = gap + dx (1 + u_far - u_near),
// with u_far / u_near the unit offsets of the point in the upper / lower box.
struct EndpointGeometry {
    double a;     // m / (hbar T)
    double dx;
    double gap;   // smallest |y - z| between the boxes
    double kappa; // exponential tilt a * gap * dx of each unit offset
};

EndpointGeometry endpoint_geometry(const PhysicalParams& params, const Lattice& lattice, std::size_t i, std::size_t j) {
    if (i >= lattice.size() || j >= lattice.size()) throw std::out_of_range("box index out of range");
    const double a = params.mass / (params.hbar * params.time);
    const double dx = lattice.spacing();
    const std::size_t offset = i > j ? i - j : j - i;
    const double gap = offset > 0 ? static_cast<double>(offset - 1) * dx : 0.0;
    return {a, dx, gap, a * gap * dx};
}

// u in [0, 1) with density proportional to exp(-kappa u); uniform for kappa = 0
template <typename Unit>
double truncated_exponential(double kappa, Unit& unit, Rng& rng) {
    const double v = unit(rng);
    if (kappa == 0.0) return v;
    return std::min(-std::log1p(v * std::expm1(-kappa)) / kappa, std::nextafter(1.0, 0.0));
}

} // namespace

double endpoint_envelope(const PhysicalParams& params, const Lattice& lattice, std::size_t i, std::size_t j) {
    const EndpointGeometry g = endpoint_geometry(params, lattice, i, j);
    const double unitMass = g.kappa == 0.0 ? 1.0 : -std::expm1(-g.kappa) / g.kappa;
    return g.dx * std::sqrt(g.a / (2.0 * std::numbers::pi)) * std::exp(-0.5 * g.a * g.gap * g.gap) * unitMass * unitMass;
}

EndpointDraw sample_endpoints(const PhysicalParams& params, const Lattice& lattice, std::size_t i, std::size_t j,
                              Rng& rng, std::size_t cap) {
    const EndpointGeometry g = endpoint_geometry(params, lattice, i, j);
    boost::random::uniform_01<double> unit;
    const bool yAbove = i >= j;

    EndpointDraw draw;
    while (draw.proposals < cap) {
        ++draw.proposals;
        // the tilt pulls each point toward the facing edge of its box
        const double nearFacing = truncated_exponential(g.kappa, unit, rng);
        const double farFacing = truncated_exponential(g.kappa, unit, rng);
        const double uy = yAbove ? nearFacing : 1.0 - farFacing;
        const double uz = yAbove ? 1.0 - farFacing : nearFacing;
        const double y = lattice.node(i) + g.dx * uy;
        const double z = lattice.node(j) + g.dx * uz;
        const double excess = std::max(std::abs(y - z) - g.gap, 0.0);
        if (unit(rng) < std::exp(-0.5 * g.a * excess * excess)) {
            draw.y = std::min(y, std::nextafter(lattice.node(i + 1), lattice.node(i)));
            draw.z = std::min(z, std::nextafter(lattice.node(j + 1), lattice.node(j)));
            return draw;
        }
    }
    draw.capped = true;
    return draw;
}

void brownian_bridge(const PhysicalParams& params, double z, double y, std::span<double> path, Rng& rng) {
    if (path.size() < 3) throw std::invalid_argument("brownian_bridge needs at least 2 time slices");
    const std::size_t n = path.size() - 1;
    const double a0 = params.time / static_cast<double>(n);
    const double unitVar = params.hbar * a0 / params.mass;
    boost::random::normal_distribution<double> gauss(0.0, 1.0); // ziggurat
    path[0] = z;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const double remaining = static_cast<double>(n - k);
        const double mean = path[k] + (y - path[k]) / remaining;
        const double sd = std::sqrt(unitVar * (remaining - 1.0) / remaining);
        path[k + 1] = mean + sd * gauss(rng);
    }
    path[n] = y;
}

PathSample brownian_bridge(const PhysicalParams& params, double z, double y, std::size_t slices, Rng& rng) {
    PathSample sample{std::vector<double>(slices + 1)};
    brownian_bridge(params, z, y, sample.positions, rng);
    return sample;
}

namespace {

struct Moments {
    double mean;
    double stdError;
};

Moments sample_moments(const std::vector<double>& values) {
    const double n = static_cast<double>(values.size());
    double sum = 0.0;
    for (double v : values) sum += v;
    const double mean = sum / n;
    if (values.size() < 2) return {mean, 0.0};
    double ss = 0.0;
    for (double v : values) ss += (v - mean) * (v - mean);
    return {mean, std::sqrt(ss / (n - 1.0) / n)};
}

ElementEstimate negligible_estimate(std::size_t n, std::string why) {
    ElementEstimate e;
    e.nSamples = n;
    e.negligible = true;
    e.warning = std::move(why);
    return e;
}

} // namespace

ElementEstimate estimate_element(const PhysicalParams& params, const Lattice& lattice, const Potential& potential,
                                 std::size_t i, std::size_t j, const SamplerConfig& cfg, Rng& rng) {
    cfg.validate();
    if (free_box_element(params, lattice, i, j) < kNegligibleElement)
        return negligible_estimate(cfg.numConfigs, "free element underflows");

    const double a0 = params.time / static_cast<double>(cfg.timeSlices);
    std::vector<double> path(cfg.timeSlices + 1);
    std::vector<double> obs(cfg.numConfigs);
    std::size_t proposals = 0;
    for (std::size_t c = 0; c < cfg.numConfigs; ++c) {
        const EndpointDraw ends = sample_endpoints(params, lattice, i, j, rng, cfg.rejectionCap);
        proposals += ends.proposals;
        if (ends.capped) return negligible_estimate(cfg.numConfigs, "endpoint rejection cap exceeded");
        brownian_bridge(params, ends.z, ends.y, path, rng);
        obs[c] = std::exp(-action_potential(potential, params.mass, path, a0) / params.hbar);
    }
    const Moments mo = sample_moments(obs);
    ElementEstimate e;
    e.mean = mo.mean;
    e.stdError = mo.stdError;
    e.nSamples = cfg.numConfigs;
    e.acceptanceRate = static_cast<double>(cfg.numConfigs) / static_cast<double>(proposals);
    return e;
}

ElementEstimate metropolis_estimate_element(const PhysicalParams& params, const Lattice& lattice,
                                            const Potential& potential, std::size_t i, std::size_t j,
                                            const SamplerConfig& cfg, Rng& rng) {
    cfg.validate();
    if (i >= lattice.size() || j >= lattice.size()) throw std::out_of_range("box index out of range");
    if (free_box_element(params, lattice, i, j) < kNegligibleElement)
        return negligible_estimate(cfg.numConfigs, "free element underflows");

    const std::size_t n = cfg.timeSlices;
    const double a0 = params.time / static_cast<double>(n);
    const double kin = params.mass / (2.0 * a0 * params.hbar); // S0/hbar = kin * sum (dx)^2
    boost::random::uniform_01<double> unit;

    std::vector<double> path(n + 1);
    const double z0 = lattice.boxCenter(j), y0 = lattice.boxCenter(i);
    for (std::size_t k = 0; k <= n; ++k) path[k] = z0 + (y0 - z0) * static_cast<double>(k) / static_cast<double>(n);

    std::size_t tried = 0, accepted = 0;
    auto sweep = [&](bool count) {
        for (std::size_t k = 0; k <= n; ++k) {
            const double old = path[k];
            const double trial = old + cfg.metropolisStep * (2.0 * unit(rng) - 1.0);
            if (count) ++tried;
            if (k == 0 && !lattice.contains(j, trial)) continue;
            if (k == n && !lattice.contains(i, trial)) continue;
            double dS = 0.0;
            if (k > 0) {
                const double l = path[k - 1];
                dS += (trial - l) * (trial - l) - (old - l) * (old - l);
            }
            if (k < n) {
                const double r = path[k + 1];
                dS += (r - trial) * (r - trial) - (r - old) * (r - old);
            }
            dS *= kin;
            if (dS <= 0.0 || unit(rng) < std::exp(-dS)) {
                path[k] = trial;
                if (count) ++accepted;
            }
        }
    };

    for (std::size_t s = 0; s < cfg.thermalizationSweeps; ++s) sweep(false);
    std::vector<double> obs(cfg.numConfigs);
    for (std::size_t c = 0; c < cfg.numConfigs; ++c) {
        for (std::size_t s = 0; s < cfg.decorrelationSweeps; ++s) sweep(true);
        obs[c] = std::exp(-action_potential(potential, params.mass, path, a0) / params.hbar);
    }

    const Moments mo = sample_moments(obs);
    ElementEstimate e;
    e.mean = mo.mean;
    e.stdError = mo.stdError;
    e.nSamples = cfg.numConfigs;
    e.autocorrelationUncorrected = true;
    e.acceptanceRate = tried ? static_cast<double>(accepted) / static_cast<double>(tried) : 0.0;
    if (e.acceptanceRate < 0.1 || e.acceptanceRate > 0.9) {
        std::ostringstream os;
        os << "metropolis acceptance " << e.acceptanceRate << " outside [0.1, 0.9]";
        e.warning = os.str();
    }
    return e;
}

TransitionMatrix estimate_matrix(const PhysicalParams& params, const Lattice& lattice, const Potential& potential,
                                 const SamplerConfig& cfg) {
    params.validate();
    cfg.validate();
    const std::size_t n = lattice.size();
    TransitionMatrix m{Matrix(n), Matrix(n), params.time, MatrixSource::MonteCarlo, cfg.seed};

    std::vector<std::pair<std::size_t, std::size_t>> tasks;
    tasks.reserve(n * (n + 1) / 2);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) tasks.emplace_back(i, j);

    std::vector<ElementEstimate> results(tasks.size());
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failureMutex;
    auto worker = [&] {
        try {
            for (std::size_t t = next++; t < tasks.size(); t = next++) {
                const auto [i, j] = tasks[t];
                Rng rng = element_rng(cfg.seed, i, j);
                results[t] = cfg.method == SamplerMethod::Metropolis
                                 ? metropolis_estimate_element(params, lattice, potential, i, j, cfg, rng)
                                 : estimate_element(params, lattice, potential, i, j, cfg, rng);
            }
        } catch (...) {
            std::lock_guard lock(failureMutex);
            if (!failure) failure = std::current_exception();
            next = tasks.size();
        }
    };
    unsigned threads = cfg.threads ? cfg.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, tasks.size()));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    if (failure) std::rethrow_exception(failure);

    for (std::size_t t = 0; t < tasks.size(); ++t) {
        const auto [i, j] = tasks[t];
        const ElementEstimate& e = results[t];
        if (e.negligible) {
            ++m.flaggedElements;
            continue;
        }
        const double free = free_box_element(params, lattice, i, j);
        m.elements(i, j) = m.elements(j, i) = free * e.mean;
        m.statErrors(i, j) = m.statErrors(j, i) = free * e.stdError;
    }
    return m;
}

} // namespace mch
