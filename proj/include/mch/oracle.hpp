#pragma once

#include "mch/model.hpp"

#include <cstddef>
#include <variant>
#include <vector>

namespace mch {

struct FreeKernel {};
struct HarmonicKernel {
    double omega;
};

/// An analytically known Euclidean propagator <y, T | z, 0>.
struct KernelSpec {
    std::variant<FreeKernel, HarmonicKernel> kind;
    PhysicalParams params;
};

/// Free-particle Euclidean propagator sqrt(m / 2 pi hbar T) exp(-m (y-z)^2 / 2 hbar T).
double free_kernel(const PhysicalParams& params, double y, double z);

/// Free-kernel matrix element between normalized boxes i and j, in closed form.
///
/// The double integral over two boxes of a translation-invariant kernel reduces
/// to a second difference of G, the second antiderivative of the Gaussian:
///   G(t) = t Phi(t/s) + s phi(t/s),  s^2 = hbar T / m,
///   int_box_i int_box_j = G(c + dx) - 2 G(c) + G(c - dx),  c = (i - j) dx.
/// The result carries the 1/dx basis normalization.
double free_box_element(const PhysicalParams& params, const Lattice& lattice, std::size_t i, std::size_t j);

/// Whole matrix of free_box_element (source FreeAnalytic).
TransitionMatrix free_box_matrix(const PhysicalParams& params, const Lattice& lattice);

/// Euclidean harmonic-oscillator propagator (Mehler kernel).
double harmonic_kernel(const PhysicalParams& params, double omega, double y, double z);

double kernel_value(const KernelSpec& kernel, double y, double z);

/// Box-integrated kernel by Gauss-Legendre product quadrature, `order` points per axis.
TransitionMatrix exact_box_matrix(const KernelSpec& kernel, const Lattice& lattice, std::size_t order = 32);

/// hbar omega (n + 1/2).
double ho_exact_energy(const PhysicalParams& params, double omega, std::size_t n);

/// Normalized oscillator eigenfunction psi_n(x).
double ho_wavefunction(const PhysicalParams& params, double omega, std::size_t n, double x);

/// Average of psi_n over box i; comparable to a box amplitude U_ik / sqrt(dx).
double ho_box_average(const PhysicalParams& params, double omega, std::size_t n, const Lattice& lattice,
                      std::size_t i, std::size_t order = 32);

/// Bound-state energies of -V0 sech^2(x/d), ascending; all strictly negative.
std::vector<double> sech2_exact_spectrum(const PhysicalParams& params, double depth, double width);

/// Number of bound states of the sech^2 well, ceil(sqrt(Q + 1/4) - 1/2).
std::size_t sech2_bound_state_count(const PhysicalParams& params, double depth, double width);

struct FreeThermo {
    double U;
    double C;
};
/// Continuum free particle. Z diverges with the volume and is not returned.
FreeThermo free_thermo(const PhysicalParams& params, double beta);

struct OscillatorThermo {
    double Z;
    double U;
    double C;
};
OscillatorThermo ho_thermo(const PhysicalParams& params, double omega, double beta);

} // namespace mch
