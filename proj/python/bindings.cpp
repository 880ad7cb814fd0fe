#include "mch/driver.hpp"
#include "mch/oracle.hpp"
#include "mch/potentials.hpp"
#include "mch/sampler.hpp"
#include "mch/spectra.hpp"
#include "mch/thermo.hpp"

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;

namespace {

py::array_t<double> to_numpy(const mch::Matrix& m) {
    py::array_t<double> out({m.rows(), m.cols()});
    auto view = out.mutable_unchecked<2>();
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) view(i, j) = m(i, j);
    return out;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Effective Hamiltonians from box-basis Euclidean transition matrices";

    py::register_exception<mch::NumericalError>(m, "NumericalError", PyExc_ArithmeticError);
    py::register_exception<mch::ConfigError>(m, "ConfigError", PyExc_ValueError);

    py::class_<mch::PhysicalParams>(m, "PhysicalParams")
        .def(py::init([](double mass, double hbar, double kB, double time) {
                 mch::PhysicalParams p{mass, hbar, kB, time};
                 p.validate();
                 return p;
             }),
             py::arg("mass") = 1.0, py::arg("hbar") = 1.0, py::arg("kB") = 1.0, py::arg("time") = 1.0)
        .def_readonly("mass", &mch::PhysicalParams::mass)
        .def_readonly("hbar", &mch::PhysicalParams::hbar)
        .def_readonly("kB", &mch::PhysicalParams::kB)
        .def_readonly("time", &mch::PhysicalParams::time);

    py::class_<mch::Lattice>(m, "Lattice")
        .def(py::init<double, double, std::size_t>(), py::arg("x_min"), py::arg("dx"), py::arg("count"))
        .def_static("centered", &mch::Lattice::centered, py::arg("dx"), py::arg("count"), py::arg("center") = 0.0)
        .def_property_readonly("x_min", &mch::Lattice::xMin)
        .def_property_readonly("dx", &mch::Lattice::spacing)
        .def("__len__", &mch::Lattice::size)
        .def("node", &mch::Lattice::node)
        .def("box_center", &mch::Lattice::boxCenter)
        .def("basis_value", [](const mch::Lattice& l, std::size_t i, double x) { return mch::basis_value(l, i, x); });

    py::class_<mch::Potential>(m, "Potential")
        .def_static("free", &mch::Potential::free)
        .def_static("harmonic", &mch::Potential::harmonic, py::arg("omega"))
        .def_static("sech2", &mch::Potential::sech2, py::arg("v0"), py::arg("d"))
        .def_static("polynomial", &mch::Potential::polynomial, py::arg("coefficients"))
        .def("__call__", [](const mch::Potential& p, double x, double mass) { return mch::evaluate(p, mass, x); },
             py::arg("x"), py::arg("mass") = 1.0)
        .def("__repr__", &mch::Potential::describe);

    py::class_<mch::SamplerConfig>(m, "SamplerConfig")
        .def(py::init([](std::size_t configs, std::size_t slices, std::uint64_t seed, bool metropolis, unsigned threads) {
                 mch::SamplerConfig c;
                 c.numConfigs = configs;
                 c.timeSlices = slices;
                 c.seed = seed;
                 c.method = metropolis ? mch::SamplerMethod::Metropolis : mch::SamplerMethod::Bridge;
                 c.threads = threads;
                 c.validate();
                 return c;
             }),
             py::arg("configs") = 10000, py::arg("slices") = 64, py::arg("seed") = 1, py::arg("metropolis") = false,
             py::arg("threads") = 0);

    py::class_<mch::TransitionMatrix>(m, "TransitionMatrix")
        .def_property_readonly("elements", [](const mch::TransitionMatrix& t) { return to_numpy(t.elements); })
        .def_property_readonly("stat_errors", [](const mch::TransitionMatrix& t) { return to_numpy(t.statErrors); })
        .def_readonly("time", &mch::TransitionMatrix::time)
        .def_property_readonly("source", [](const mch::TransitionMatrix& t) { return mch::to_string(t.source); });

    py::class_<mch::EffectiveHamiltonian>(m, "EffectiveHamiltonian")
        .def_readonly("energies", &mch::EffectiveHamiltonian::energies)
        .def_readonly("dropped_count", &mch::EffectiveHamiltonian::droppedCount)
        .def_property_readonly("coefficients", [](const mch::EffectiveHamiltonian& h) { return to_numpy(h.coefficients); })
        .def("wavefunction", &mch::wavefunction, py::arg("k"), py::arg("i"));

    m.def("free_kernel", &mch::free_kernel, py::arg("params"), py::arg("y"), py::arg("z"));
    m.def("harmonic_kernel", &mch::harmonic_kernel, py::arg("params"), py::arg("omega"), py::arg("y"), py::arg("z"));
    m.def("free_box_element", &mch::free_box_element, py::arg("params"), py::arg("lattice"), py::arg("i"), py::arg("j"));
    m.def("free_box_matrix", &mch::free_box_matrix, py::arg("params"), py::arg("lattice"));
    m.def(
        "exact_box_matrix",
        [](const mch::PhysicalParams& p, const mch::Lattice& l, std::optional<double> omega, std::size_t order) {
            mch::KernelSpec k{mch::FreeKernel{}, p};
            if (omega) k.kind = mch::HarmonicKernel{*omega};
            return mch::exact_box_matrix(k, l, order);
        },
        py::arg("params"), py::arg("lattice"), py::arg("omega") = py::none(), py::arg("order") = 32,
        "Box matrix of the free kernel, or of the oscillator kernel when omega is given.");
    m.def("estimate_matrix", &mch::estimate_matrix, py::arg("params"), py::arg("lattice"), py::arg("potential"),
          py::arg("config"), py::call_guard<py::gil_scoped_release>());
    m.def("build_heff", &mch::build_heff, py::arg("matrix"), py::arg("params"), py::arg("lattice"),
          py::arg("drop_threshold") = mch::kDefaultDropThreshold);

    m.def("ho_exact_energy", &mch::ho_exact_energy, py::arg("params"), py::arg("omega"), py::arg("n"));
    m.def("sech2_exact_spectrum", &mch::sech2_exact_spectrum, py::arg("params"), py::arg("v0"), py::arg("d"));
    m.def(
        "free_thermo", [](const mch::PhysicalParams& p, double b) { auto r = mch::free_thermo(p, b); return py::make_tuple(r.U, r.C); },
        py::arg("params"), py::arg("beta"), "(U, C) of the continuum free particle");
    m.def(
        "ho_thermo",
        [](const mch::PhysicalParams& p, double w, double b) {
            auto r = mch::ho_thermo(p, w, b);
            return py::make_tuple(r.Z, r.U, r.C);
        },
        py::arg("params"), py::arg("omega"), py::arg("beta"), "(Z, U, C) of the oscillator");

    m.def("partition", &mch::partition, py::arg("heff"), py::arg("beta"));
    m.def("avg_energy", py::overload_cast<const mch::EffectiveHamiltonian&, double>(&mch::avg_energy), py::arg("heff"),
          py::arg("beta"));
    m.def("specific_heat", py::overload_cast<const mch::EffectiveHamiltonian&, double, double>(&mch::specific_heat),
          py::arg("heff"), py::arg("beta"), py::arg("kB") = 1.0);
    m.def(
        "thermo_curve",
        [](const mch::EffectiveHamiltonian& h, const std::vector<double>& betas, double kB) {
            py::list rows;
            for (const auto& r : mch::thermo_curve(h, betas, kB).rows)
                rows.append(py::dict(py::arg("beta") = r.beta, py::arg("temperature") = r.temperature,
                                     py::arg("Z") = r.Z, py::arg("logZ") = r.logZ, py::arg("U") = r.U, py::arg("C") = r.C));
            return rows;
        },
        py::arg("heff"), py::arg("betas"), py::arg("kB") = 1.0);

    m.def(
        "reproduce",
        [](const std::string& target, std::uint64_t seed) {
            std::vector<mch::OutputFile> files;
            {
                py::gil_scoped_release release;
                files = mch::reproduce(mch::parse_target(target), seed);
            }
            py::dict out;
            for (const auto& f : files) out[py::str(f.name)] = f.render("");
            return out;
        },
        py::arg("target"), py::arg("seed") = 1, "Rendered CSV text of a reproduction target, keyed by file name.");
}
