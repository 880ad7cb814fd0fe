#include "mch/model.hpp"

#include <cmath>
#include <sstream>

namespace mch {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw std::invalid_argument(what);
}

bool finite_positive(double v) { return std::isfinite(v) && v > 0.0; }

} // namespace

void PhysicalParams::validate() const {
    require(finite_positive(mass), "mass must be > 0");
    require(finite_positive(hbar), "hbar must be > 0");
    require(finite_positive(kB), "kB must be > 0");
    require(finite_positive(time), "time must be > 0");
}

Lattice::Lattice(double xMin, double spacing, std::size_t count) : xMin_(xMin), spacing_(spacing), count_(count) {
    require(std::isfinite(xMin), "lattice x_min must be finite");
    require(finite_positive(spacing), "lattice spacing dx must be > 0");
    require(count >= 2, "lattice count must be >= 2");
}

Lattice Lattice::centered(double spacing, std::size_t count, double center) {
    return Lattice(center - 0.5 * static_cast<double>(count) * spacing, spacing, count);
}

std::optional<std::size_t> Lattice::boxOf(double x) const {
    if (!(x >= xMin_) || !(x < xMax())) return std::nullopt;
    auto i = static_cast<std::size_t>(std::floor((x - xMin_) / spacing_));
    // floor() can land one box off when x sits within rounding of a node
    if (i >= count_) i = count_ - 1;
    if (x < node(i)) --i;
    else if (i + 1 < count_ && x >= node(i + 1)) ++i;
    return i;
}

bool Lattice::contains(std::size_t i, double x) const { return x >= node(i) && x < node(i + 1); }

double basis_value(const Lattice& lattice, std::size_t i, double x) {
    if (i >= lattice.size()) throw std::out_of_range("basis index out of range");
    return lattice.contains(i, x) ? 1.0 / std::sqrt(lattice.spacing()) : 0.0;
}

Potential::Potential(Kind kind) : kind_(std::move(kind)) {
    std::visit(
        [](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, HarmonicPotential>) {
                require(finite_positive(p.omega), "harmonic omega must be > 0");
            } else if constexpr (std::is_same_v<P, Sech2Potential>) {
                require(finite_positive(p.depth), "sech2 depth v0 must be > 0");
                require(finite_positive(p.width), "sech2 width d must be > 0");
            } else if constexpr (std::is_same_v<P, PolynomialPotential>) {
                require(!p.coefficients.empty(), "polynomial potential needs at least one coefficient");
                for (double c : p.coefficients) require(std::isfinite(c), "polynomial coefficients must be finite");
            }
        },
        kind_);
}

std::string Potential::name() const {
    return std::visit(
        [](const auto& p) -> std::string {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, FreePotential>) return "free";
            else if constexpr (std::is_same_v<P, HarmonicPotential>) return "harmonic";
            else if constexpr (std::is_same_v<P, Sech2Potential>) return "sech2";
            else return "polynomial";
        },
        kind_);
}

std::string Potential::describe() const {
    std::ostringstream os;
    os.precision(17);
    os << name();
    std::visit(
        [&os](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, HarmonicPotential>) {
                os << "(omega=" << p.omega << ")";
            } else if constexpr (std::is_same_v<P, Sech2Potential>) {
                os << "(v0=" << p.depth << ", d=" << p.width << ")";
            } else if constexpr (std::is_same_v<P, PolynomialPotential>) {
                os << "(";
                for (std::size_t k = 0; k < p.coefficients.size(); ++k) os << (k ? ", " : "") << p.coefficients[k];
                os << ")";
            }
        },
        kind_);
    return os.str();
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

double Matrix::maxAbs() const {
    double r = 0.0;
    for (double v : data_) r = std::max(r, std::abs(v));
    return r;
}

double Matrix::frobenius() const {
    double s = 0.0;
    for (double v : data_) s += v * v;
    return std::sqrt(s);
}

std::string to_string(MatrixSource s) {
    switch (s) {
    case MatrixSource::MonteCarlo: return "monte_carlo";
    case MatrixSource::ExactQuadrature: return "exact_quadrature";
    case MatrixSource::FreeAnalytic: return "free_analytic";
    }
    return "unknown";
}

bool TransitionMatrix::isSymmetric() const {
    const std::size_t n = size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (elements(i, j) != elements(j, i)) return false;
    return true;
}

void SamplerConfig::validate() const {
    require(numConfigs >= 1, "sampler configs must be >= 1");
    require(timeSlices >= 2, "sampler slices must be >= 2");
    require(rejectionCap >= 1, "sampler rejection_cap must be >= 1");
    if (method == SamplerMethod::Metropolis) {
        require(finite_positive(metropolisStep), "sampler metropolis_step must be > 0");
        require(decorrelationSweeps >= 1, "sampler decorrelation_sweeps must be >= 1");
    }
}

} // namespace mch
