#include "mch/oracle.hpp"

#include "mch/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mch {

namespace {

constexpr double kInvSqrt2Pi = 0.398942280401432677939946059934; // 1/sqrt(2 pi)

double std_normal_pdf(double u) { return kInvSqrt2Pi * std::exp(-0.5 * u * u); }
double std_normal_cdf(double u) { return 0.5 * std::erfc(-u / std::numbers::sqrt2); }

// Second antiderivative of the N(0, s^2) density, for t <= 0 (no cancellation
// against the linear growth of the t > 0 branch).
double gaussian_g2(double t, double s) {
    const double u = t / s;
    return t * std_normal_cdf(u) + s * std_normal_pdf(u);
}

void check_box(const Lattice& lattice, std::size_t i) {
    if (i >= lattice.size()) throw std::out_of_range("box index out of range");
}

} // namespace

double free_kernel(const PhysicalParams& params, double y, double z) {
    const double a = params.mass / (params.hbar * params.time);
    const double d = y - z;
    return std::sqrt(a / (2.0 * std::numbers::pi)) * std::exp(-0.5 * a * d * d);
}

double free_box_element(const PhysicalParams& params, const Lattice& lattice, std::size_t i, std::size_t j) {
    check_box(lattice, i);
    check_box(lattice, j);
    const double dx = lattice.spacing();
    const double s = std::sqrt(params.hbar * params.time / params.mass);
    // symmetric in i - j; evaluate on the c <= 0 side
    const double offset = static_cast<double>(i > j ? i - j : j - i);
    const double c = -offset * dx;
    double upper;
    if (c + dx > 0.0) {
        // G(t) = t + G(-t)
        upper = (c + dx) + gaussian_g2(-(c + dx), s);
    } else {
        upper = gaussian_g2(c + dx, s);
    }
    const double overlap = upper - 2.0 * gaussian_g2(c, s) + gaussian_g2(c - dx, s);
    return std::max(overlap, 0.0) / dx;
}

TransitionMatrix free_box_matrix(const PhysicalParams& params, const Lattice& lattice) {
    params.validate();
    const std::size_t n = lattice.size();
    TransitionMatrix m{Matrix(n), Matrix(n), params.time, MatrixSource::FreeAnalytic};
    // Toeplitz: one value per offset
    std::vector<double> byOffset(n);
    for (std::size_t k = 0; k < n; ++k) byOffset[k] = free_box_element(params, lattice, k, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m.elements(i, j) = byOffset[i > j ? i - j : j - i];
    return m;
}

double harmonic_kernel(const PhysicalParams& params, double omega, double y, double z) {
    const double wt = omega * params.time;
    const double sh = std::sinh(wt);
    const double ch = std::cosh(wt);
    const double a = params.mass * omega / params.hbar;
    const double pref = std::sqrt(a / (2.0 * std::numbers::pi * sh));
    return pref * std::exp(-0.5 * a * ((y * y + z * z) * ch - 2.0 * y * z) / sh);
}

double kernel_value(const KernelSpec& kernel, double y, double z) {
    if (const auto* h = std::get_if<HarmonicKernel>(&kernel.kind)) return harmonic_kernel(kernel.params, h->omega, y, z);
    return free_kernel(kernel.params, y, z);
}

TransitionMatrix exact_box_matrix(const KernelSpec& kernel, const Lattice& lattice, std::size_t order) {
    kernel.params.validate();
    if (const auto* h = std::get_if<HarmonicKernel>(&kernel.kind); h && !(h->omega > 0.0))
        throw std::invalid_argument("harmonic kernel omega must be > 0");

    const std::size_t n = lattice.size();
    const GaussLegendre rule(order);
    std::vector<std::vector<double>> xs(n), ws(n);
    for (std::size_t i = 0; i < n; ++i) rule.mapTo(lattice.node(i), lattice.node(i + 1), xs[i], ws[i]);

    TransitionMatrix m{Matrix(n), Matrix(n), kernel.params.time, MatrixSource::ExactQuadrature};
    const double invDx = 1.0 / lattice.spacing();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i; j < n; ++j) {
            double sum = 0.0;
            for (std::size_t a = 0; a < order; ++a) {
                double inner = 0.0;
                for (std::size_t b = 0; b < order; ++b) inner += ws[j][b] * kernel_value(kernel, xs[i][a], xs[j][b]);
                sum += ws[i][a] * inner;
            }
            m.elements(i, j) = sum * invDx;
            m.elements(j, i) = sum * invDx;
        }
    }
    return m;
}

double ho_exact_energy(const PhysicalParams& params, double omega, std::size_t n) {
    return params.hbar * omega * (static_cast<double>(n) + 0.5);
}

double ho_wavefunction(const PhysicalParams& params, double omega, std::size_t n, double x) {
    const double a = params.mass * omega / params.hbar;
    const double xi = std::sqrt(a) * x;
    double prev = 0.0;
    double cur = std::pow(a / std::numbers::pi, 0.25) * std::exp(-0.5 * xi * xi);
    // normalized Hermite-function recurrence
    for (std::size_t k = 0; k < n; ++k) {
        const double kd = static_cast<double>(k);
        const double next = std::sqrt(2.0 / (kd + 1.0)) * xi * cur - std::sqrt(kd / (kd + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double ho_box_average(const PhysicalParams& params, double omega, std::size_t n, const Lattice& lattice,
                      std::size_t i, std::size_t order) {
    check_box(lattice, i);
    const GaussLegendre rule(order);
    std::vector<double> x, w;
    rule.mapTo(lattice.node(i), lattice.node(i + 1), x, w);
    double sum = 0.0;
    for (std::size_t k = 0; k < order; ++k) sum += w[k] * ho_wavefunction(params, omega, n, x[k]);
    return sum / lattice.spacing();
}

namespace {

double sech2_q(const PhysicalParams& params, double depth, double width) {
    if (!(depth > 0.0) || !(width > 0.0)) throw std::invalid_argument("sech2 needs v0 > 0 and d > 0");
    return 2.0 * params.mass * width * width * depth / (params.hbar * params.hbar);
}

} // namespace

std::size_t sech2_bound_state_count(const PhysicalParams& params, double depth, double width) {
    const double r = std::sqrt(sech2_q(params, depth, width) + 0.25);
    return static_cast<std::size_t>(std::ceil(r - 0.5));
}

std::vector<double> sech2_exact_spectrum(const PhysicalParams& params, double depth, double width) {
    const double r = std::sqrt(sech2_q(params, depth, width) + 0.25);
    const double scale = params.hbar * params.hbar / (2.0 * params.mass * width * width);
    std::vector<double> energies;
    for (std::size_t n = 0; static_cast<double>(n) < r - 0.5; ++n) {
        const double gap = (static_cast<double>(n) + 0.5) - r;
        energies.push_back(-scale * gap * gap);
    }
    return energies;
}

FreeThermo free_thermo(const PhysicalParams& params, double beta) {
    if (!(beta > 0.0)) throw std::invalid_argument("beta must be > 0");
    return {0.5 / beta, 0.5 * params.kB};
}

OscillatorThermo ho_thermo(const PhysicalParams& params, double omega, double beta) {
    if (!(beta > 0.0) || !(omega > 0.0)) throw std::invalid_argument("ho_thermo needs beta > 0 and omega > 0");
    const double x = 0.5 * beta * params.hbar * omega;
    const double sh = std::sinh(x);
    const double ratio = x / sh;
    return {0.5 / sh, 0.5 * params.hbar * omega / std::tanh(x), params.kB * ratio * ratio};
}

} // namespace mch
