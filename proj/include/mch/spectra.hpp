#pragma once

#include "mch/model.hpp"

#include <cstddef>
#include <vector>

namespace mch {

/// M = V diag(D) V^T with D descending. Column k of `vectors` is the k-th
/// eigenvector, signed so that its largest-magnitude component is positive.
struct EigenDecomposition {
    std::vector<double> values;
    Matrix vectors;
    std::size_t sweeps = 0;

    Matrix reconstruct() const;
};

/// Cyclic Jacobi rotations on a real symmetric matrix. Stops when the
/// off-diagonal Frobenius norm is below 1e-13 of the full norm; throws
/// NumericalError after 100 sweeps.
EigenDecomposition eigh_symmetric(const Matrix& m);
EigenDecomposition eigh_symmetric(const TransitionMatrix& m);

inline constexpr double kDefaultDropThreshold = 1e-12;

/// E_k = -(hbar/T) ln D_k for every D_k above `dropThreshold`, ascending.
/// Throws NumericalError when nothing survives the filter.
EffectiveHamiltonian extract_spectrum(const EigenDecomposition& decomp, const PhysicalParams& params,
                                      const Lattice& lattice, double dropThreshold = kDefaultDropThreshold);

/// eigh_symmetric followed by extract_spectrum, at the matrix's own time T.
EffectiveHamiltonian build_heff(const TransitionMatrix& m, const PhysicalParams& params, const Lattice& lattice,
                                double dropThreshold = kDefaultDropThreshold);

/// psi_k on box i: U_ik / sqrt(dx), so that sum_i psi^2 dx = 1.
double wavefunction(const EffectiveHamiltonian& heff, std::size_t k, std::size_t i);

} // namespace mch
