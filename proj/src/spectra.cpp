#include "mch/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mch {

namespace {

constexpr std::size_t kMaxSweeps = 100;
constexpr double kOffDiagonalTolerance = 1e-13;

double off_diagonal_norm(const Matrix& a) {
    double s = 0.0;
    for (std::size_t p = 0; p < a.rows(); ++p)
        for (std::size_t q = p + 1; q < a.cols(); ++q) s += a(p, q) * a(p, q);
    return std::sqrt(2.0 * s);
}

std::string dump(const Matrix& m) {
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
        os << '\n';
    }
    return os.str();
}

void rotate(Matrix& a, Matrix& v, std::size_t p, std::size_t q) {
    const double apq = a(p, q);
    const double app = a(p, p), aqq = a(q, q);
    // negligible next to both diagonal entries: drop it
    if (std::abs(app) + 100.0 * std::abs(apq) == std::abs(app) && std::abs(aqq) + 100.0 * std::abs(apq) == std::abs(aqq)) {
        a(p, q) = a(q, p) = 0.0;
        return;
    }
    const double theta = (aqq - app) / (2.0 * apq);
    double t;
    if (std::abs(theta) > 1e150) t = 0.5 / theta;
    else t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    const double c = 1.0 / std::sqrt(t * t + 1.0);
    const double s = t * c;

    const std::size_t n = a.rows();
    for (std::size_t r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        const double arp = a(r, p), arq = a(r, q);
        a(r, p) = a(p, r) = c * arp - s * arq;
        a(r, q) = a(q, r) = s * arp + c * arq;
    }
    a(p, p) = app - t * apq;
    a(q, q) = aqq + t * apq;
    a(p, q) = a(q, p) = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
        const double vrp = v(r, p), vrq = v(r, q);
        v(r, p) = c * vrp - s * vrq;
        v(r, q) = s * vrp + c * vrq;
    }
}

} // namespace

Matrix EigenDecomposition::reconstruct() const {
    const std::size_t n = vectors.rows();
    const std::size_t k = values.size();
    Matrix m(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0.0;
            for (std::size_t l = 0; l < k; ++l) s += vectors(i, l) * values[l] * vectors(j, l);
            m(i, j) = s;
        }
    return m;
}

EigenDecomposition eigh_symmetric(const Matrix& m) {
    const std::size_t n = m.rows();
    if (n == 0 || m.cols() != n) throw std::invalid_argument("eigh_symmetric needs a non-empty square matrix");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (m(i, j) != m(j, i)) throw std::invalid_argument("eigh_symmetric needs a symmetric matrix");

    Matrix a = m;
    Matrix v = Matrix::identity(n);
    const double target = kOffDiagonalTolerance * m.frobenius();
    std::size_t sweep = 0;
    while (off_diagonal_norm(a) > target) {
        if (sweep == kMaxSweeps)
            throw NumericalError("Jacobi eigensolver did not converge in 100 sweeps; input matrix:\n" + dump(m));
        for (std::size_t p = 0; p + 1 < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q)
                if (a(p, q) != 0.0) rotate(a, v, p, q);
        ++sweep;
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    EigenDecomposition out{std::vector<double>(n), Matrix(n), sweep};
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t src = order[k];
        out.values[k] = a(src, src);
        // largest |component| positive; near-ties go to the lowest index
        double big = 0.0;
        for (std::size_t i = 0; i < n; ++i) big = std::max(big, std::abs(v(i, src)));
        double sign = 1.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(v(i, src)) >= big * (1.0 - 1e-10)) {
                sign = v(i, src) < 0.0 ? -1.0 : 1.0;
                break;
            }
        }
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = sign * v(i, src);
    }
    return out;
}

EigenDecomposition eigh_symmetric(const TransitionMatrix& m) { return eigh_symmetric(m.elements); }

EffectiveHamiltonian extract_spectrum(const EigenDecomposition& decomp, const PhysicalParams& params,
                                      const Lattice& lattice, double dropThreshold) {
    params.validate();
    const std::size_t n = decomp.vectors.rows();
    if (n != lattice.size()) throw std::invalid_argument("decomposition size does not match the lattice");

    std::vector<std::size_t> kept;
    for (std::size_t k = 0; k < decomp.values.size(); ++k)
        if (decomp.values[k] > dropThreshold) kept.push_back(k);
    if (kept.empty()) throw NumericalError("matrix not positive: increase N_c or check action");

    EffectiveHamiltonian h{.energies = {},
                           .transferValues = {},
                           .coefficients = Matrix(n, kept.size(), 0.0),
                           .droppedCount = decomp.values.size() - kept.size(),
                           .lattice = lattice,
                           .time = params.time};
    // values are descending, so energies come out ascending
    for (std::size_t c = 0; c < kept.size(); ++c) {
        const double d = decomp.values[kept[c]];
        h.transferValues.push_back(d);
        h.energies.push_back(-(params.hbar / params.time) * std::log(d));
        for (std::size_t i = 0; i < n; ++i) h.coefficients(i, c) = decomp.vectors(i, kept[c]);
    }
    return h;
}

EffectiveHamiltonian build_heff(const TransitionMatrix& m, const PhysicalParams& params, const Lattice& lattice,
                                double dropThreshold) {
    PhysicalParams at = params;
    at.time = m.time;
    EffectiveHamiltonian h = extract_spectrum(eigh_symmetric(m), at, lattice, dropThreshold);
    h.source = m.source;
    h.seed = m.seed;
    return h;
}

double wavefunction(const EffectiveHamiltonian& heff, std::size_t k, std::size_t i) {
    if (k >= heff.keptCount()) throw std::out_of_range("state index beyond kept spectrum");
    if (i >= heff.lattice.size()) throw std::out_of_range("box index out of range");
    return heff.coefficients(i, k) / std::sqrt(heff.lattice.spacing());
}

} // namespace mch
