#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace mch {

/// Raised when a numerical procedure cannot produce a meaningful result
/// (non-convergent eigensolver, matrix with no positive eigenvalue, ...).
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Physical constants of a run. Units are whatever the caller chooses;
/// the reference runs use m = hbar = kB = T = 1.
struct PhysicalParams {
    double mass = 1.0;
    double hbar = 1.0;
    double kB = 1.0;
    double time = 1.0; ///< Euclidean propagation time T

    void validate() const;
};

/// Regular 1-D grid of N boxes [x_i, x_{i+1}), x_i = xMin + i*dx.
class Lattice {
  public:
    Lattice(double xMin, double spacing, std::size_t count);

    /// Lattice of `count` boxes symmetric about `center`.
    static Lattice centered(double spacing, std::size_t count, double center = 0.0);

    double xMin() const { return xMin_; }
    double spacing() const { return spacing_; }
    std::size_t size() const { return count_; }

    double node(std::size_t i) const { return xMin_ + static_cast<double>(i) * spacing_; }
    double boxCenter(std::size_t i) const { return node(i) + 0.5 * spacing_; }
    double xMax() const { return node(count_); }

    /// Index of the box owning x, or nullopt outside [xMin, xMax).
    std::optional<std::size_t> boxOf(double x) const;
    bool contains(std::size_t i, double x) const;

  private:
    double xMin_;
    double spacing_;
    std::size_t count_;
};

/// Normalized box function: dx^{-1/2} inside box i, zero elsewhere.
double basis_value(const Lattice& lattice, std::size_t i, double x);

struct FreePotential {};
struct HarmonicPotential {
    double omega;
};
struct Sech2Potential {
    double depth; ///< V0 > 0, V(0) = -V0
    double width; ///< d
};
struct PolynomialPotential {
    std::vector<double> coefficients; ///< c0 + c1 x + c2 x^2 + ...
};

class Potential {
  public:
    using Kind = std::variant<FreePotential, HarmonicPotential, Sech2Potential, PolynomialPotential>;

    Potential() : kind_(FreePotential{}) {}
    Potential(Kind kind); // NOLINT(google-explicit-constructor)

    static Potential free() { return Potential{FreePotential{}}; }
    static Potential harmonic(double omega) { return Potential{HarmonicPotential{omega}}; }
    static Potential sech2(double depth, double width) { return Potential{Sech2Potential{depth, width}}; }
    static Potential polynomial(std::vector<double> c) { return Potential{PolynomialPotential{std::move(c)}}; }

    const Kind& kind() const { return kind_; }
    bool isFree() const { return std::holds_alternative<FreePotential>(kind_); }
    std::string name() const;
    std::string describe() const;

  private:
    Kind kind_;
};

/// Dense row-major matrix.
class Matrix {
  public:
    Matrix() = default;
    explicit Matrix(std::size_t n, double fill = 0.0) : rows_(n), cols_(n), data_(n * n, fill) {}
    Matrix(std::size_t rows, std::size_t cols, double fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    double maxAbs() const;
    double frobenius() const;
    bool operator==(const Matrix&) const = default;

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

enum class MatrixSource { MonteCarlo, ExactQuadrature, FreeAnalytic };
std::string to_string(MatrixSource s);

/// Estimate of M_ij(T) = <e_i| exp(-HT/hbar) |e_j> in the normalized box basis.
struct TransitionMatrix {
    Matrix elements;
    Matrix statErrors; ///< zero for exact routes
    double time = 1.0;
    MatrixSource source = MatrixSource::ExactQuadrature;
    std::uint64_t seed = 0;
    std::size_t flaggedElements = 0; ///< MC elements skipped as negligible

    std::size_t size() const { return elements.rows(); }
    bool isSymmetric() const;
};

/// Spectrum of the effective Hamiltonian and its eigenvectors in the box basis.
struct EffectiveHamiltonian {
    std::vector<double> energies;       ///< ascending
    std::vector<double> transferValues; ///< D_k = exp(-E_k T / hbar), same order as energies
    Matrix coefficients;                ///< N x K, column k = <e_i | E_k>
    std::size_t droppedCount = 0;
    Lattice lattice;
    double time = 1.0;
    MatrixSource source = MatrixSource::ExactQuadrature;
    std::uint64_t seed = 0;

    std::size_t keptCount() const { return energies.size(); }
};

struct ThermoRow {
    double beta;
    double temperature;
    double logZ;
    double Z; ///< exp(logZ); may be 0 or inf when not representable
    double U;
    double C;
};

struct ThermoCurve {
    std::vector<ThermoRow> rows;
    bool volumeDependentZ = false; ///< free system: Z scales with the box size
};

enum class SamplerMethod { Bridge, Metropolis };

struct SamplerConfig {
    std::size_t numConfigs = 10000;
    std::size_t timeSlices = 64;
    std::uint64_t seed = 1;
    SamplerMethod method = SamplerMethod::Bridge;
    double metropolisStep = 0.3;
    std::size_t thermalizationSweeps = 200;
    std::size_t decorrelationSweeps = 5;
    std::size_t rejectionCap = 1000000;
    unsigned threads = 0; ///< 0 = hardware concurrency

    void validate() const;
};

} // namespace mch
