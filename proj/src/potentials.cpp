#include "mch/potentials.hpp"

#include <cmath>
#include <stdexcept>

namespace mch {

double evaluate(const Potential& potential, double mass, double x) {
    return std::visit(
        [mass, x](const auto& p) -> double {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, FreePotential>) {
                return 0.0;
            } else if constexpr (std::is_same_v<P, HarmonicPotential>) {
                return 0.5 * mass * p.omega * p.omega * x * x;
            } else if constexpr (std::is_same_v<P, Sech2Potential>) {
                const double s = 1.0 / std::cosh(x / p.width);
                return -p.depth * s * s;
            } else {
                double v = 0.0;
                for (auto c = p.coefficients.rbegin(); c != p.coefficients.rend(); ++c) v = v * x + *c;
                return v;
            }
        },
        potential.kind());
}

double action_potential(const Potential& potential, double mass, std::span<const double> path, double a0) {
    if (path.size() < 3) throw std::invalid_argument("action_potential needs at least 2 time slices");
    if (potential.isFree()) return 0.0;
    const std::size_t last = path.size() - 1;
    auto v = [&](std::size_t k) { return evaluate(potential, mass, path[k]); };
    // pairs (k, last-k) are summed together so reversing the path is bitwise neutral
    double sum = 0.5 * (v(0) + v(last));
    std::size_t lo = 1, hi = last - 1;
    for (; lo < hi; ++lo, --hi) sum += v(lo) + v(hi);
    if (lo == hi) sum += v(lo);
    return a0 * sum;
}

} // namespace mch
