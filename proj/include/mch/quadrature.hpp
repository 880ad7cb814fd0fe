#pragma once

#include <cstddef>
#include <vector>

namespace mch {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;

    explicit GaussLegendre(std::size_t order);

    /// Nodes and weights mapped onto [a, b].
    void mapTo(double a, double b, std::vector<double>& x, std::vector<double>& w) const;
};

} // namespace mch
