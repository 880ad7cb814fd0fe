#include "mch/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace mch {

GaussLegendre::GaussLegendre(std::size_t order) : nodes(order), weights(order) {
    if (order == 0) throw std::invalid_argument("quadrature order must be >= 1");
    const std::size_t n = order;
    const std::size_t half = (n + 1) / 2;
    for (std::size_t i = 0; i < half; ++i) {
        // Tricomi initial guess, then Newton on P_n
        double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (std::size_t k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
                p0 = p1;
                p1 = p2;
            }
            dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
}

void GaussLegendre::mapTo(double a, double b, std::vector<double>& x, std::vector<double>& w) const {
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    x.resize(nodes.size());
    w.resize(nodes.size());
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        x[k] = mid + half * nodes[k];
        w[k] = half * weights[k];
    }
}

} // namespace mch
