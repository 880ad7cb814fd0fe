#pragma once

#include "mch/model.hpp"

#include <span>

namespace mch {

/// V(x) for the given potential; `mass` enters only the harmonic term.
double evaluate(const Potential& potential, double mass, double x);

/// Potential part of the discretized Euclidean action,
/// a0 * [V(x_0)/2 + sum_{k=1}^{n-1} V(x_k) + V(x_n)/2].
double action_potential(const Potential& potential, double mass, std::span<const double> path, double a0);

} // namespace mch
