#include "mch/driver.hpp"

#include "mch/oracle.hpp"
#include "mch/sampler.hpp"
#include "mch/spectra.hpp"
#include "mch/thermo.hpp"

#include <array>
#include <chrono>
#include <cmath>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

namespace mch {

namespace {

constexpr double kReproOmega = 0.6;

std::string num(double v) { return format_number(v); }

std::string cell(const std::optional<double>& v) { return v ? num(*v) : std::string(); }

std::vector<double> default_beta_grid() {
    std::vector<double> betas;
    for (int k = 1; k <= 100; ++k) betas.push_back(0.1 * k);
    return betas;
}

std::vector<std::pair<std::string, std::string>> provenance_of(const RunConfig& cfg, Route route) {
    const Lattice lat = cfg.lattice();
    std::vector<std::pair<std::string, std::string>> p{
        {"route", to_string(route)},
        {"potential", cfg.potential.describe()},
        {"lattice", "x_min=" + num(lat.xMin()) + " dx=" + num(lat.spacing()) + " N=" + std::to_string(lat.size())},
        {"time", num(cfg.physics.time)},
    };
    if (route == Route::MonteCarlo) {
        p.emplace_back("seed", std::to_string(cfg.sampler.seed));
        p.emplace_back("configs", std::to_string(cfg.sampler.numConfigs));
        p.emplace_back("slices", std::to_string(cfg.sampler.timeSlices));
        p.emplace_back("method", cfg.sampler.method == SamplerMethod::Bridge ? "bridge" : "metropolis");
    } else if (route == Route::Exact) {
        p.emplace_back("quadrature_order", std::to_string(cfg.quadratureOrder));
    }
    return p;
}

const HarmonicPotential* harmonic_of(const RunConfig& cfg) { return std::get_if<HarmonicPotential>(&cfg.potential.kind()); }

std::vector<Route> wavefunction_routes(const RunConfig& cfg) {
    return cfg.wavefunctionRoutes.empty() ? std::vector<Route>{cfg.route} : cfg.wavefunctionRoutes;
}

// +1 or -1 aligning column k of `h` with the reference vector
double alignment(const EffectiveHamiltonian& h, std::size_t k, const std::vector<double>& reference) {
    double dot = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i) dot += h.coefficients(i, k) * reference[i];
    return dot < 0.0 ? -1.0 : 1.0;
}

std::string route_column(Route r) {
    switch (r) {
    case Route::MonteCarlo: return "monteCarlo";
    case Route::Exact: return "exactMatrix";
    case Route::Free: return "freeAnalytic";
    }
    return "unknown";
}

RunConfig harmonic_tab1(std::uint64_t seed) {
    RunConfig cfg;
    cfg.dx = 1.0;
    cfg.count = 20;
    cfg.potential = Potential::harmonic(kReproOmega);
    cfg.sampler.seed = seed;
    cfg.sampler.numConfigs = 10000;
    cfg.sampler.timeSlices = 64;
    return cfg;
}

RunConfig sech2_tab2(double width, std::size_t count, std::uint64_t seed) {
    RunConfig cfg;
    cfg.dx = 1.0;
    cfg.count = count;
    cfg.potential = Potential::sech2(1.0, width);
    cfg.route = Route::MonteCarlo;
    cfg.sampler.seed = seed;
    return cfg;
}

RunConfig free_fig(double dx, std::size_t count) {
    RunConfig cfg;
    cfg.dx = dx;
    cfg.count = count;
    cfg.potential = Potential::free();
    cfg.betas = default_beta_grid();
    return cfg;
}

const std::vector<std::pair<std::string, std::string>> kUnstatedDefaults{
    {"defaulted_parameters", "configs slices x_min beta_grid"}};

OutputFile table_file(Target t, std::vector<std::string> columns) {
    OutputFile f;
    f.name = to_string(t) + ".csv";
    f.kind = "reproduce " + to_string(t);
    f.columns = std::move(columns);
    f.provenance.emplace_back("target", to_string(t));
    f.provenance.insert(f.provenance.end(), kUnstatedDefaults.begin(), kUnstatedDefaults.end());
    return f;
}

std::vector<OutputFile> reproduce_tab1(std::uint64_t seed) {
    RunConfig cfg = harmonic_tab1(seed);
    const auto exact = build_effective(cfg, Route::Exact);
    cfg.route = Route::MonteCarlo;
    const auto mc = build_effective(cfg, Route::MonteCarlo);

    OutputFile f = table_file(Target::Tab1, {"n", "E_exact", "E_exactMatrix", "E_monteCarlo"});
    f.provenance.emplace_back("dropped_exactMatrix", std::to_string(exact.droppedCount));
    f.provenance.emplace_back("dropped_monteCarlo", std::to_string(mc.droppedCount));
    f.configs.emplace_back("run", cfg.toText());
    for (std::size_t n = 0; n < cfg.count; ++n) {
        std::optional<double> e, m;
        if (n < exact.keptCount()) e = exact.energies[n];
        if (n < mc.keptCount()) m = mc.energies[n];
        f.rows.push_back({std::to_string(n), num(ho_exact_energy(cfg.physics, kReproOmega, n)), cell(e), cell(m)});
    }
    return {f};
}

std::vector<OutputFile> reproduce_tab2(Target t, double width, std::size_t count, std::uint64_t seed) {
    const RunConfig cfg = sech2_tab2(width, count, seed);
    const auto mc = build_effective(cfg, Route::MonteCarlo);
    const auto exact = sech2_exact_spectrum(cfg.physics, 1.0, width);
    std::vector<double> bound;
    for (double e : mc.energies)
        if (e < 0.0) bound.push_back(e);

    OutputFile f = table_file(t, {"n", "E_exact", "E_monteCarlo"});
    f.provenance.emplace_back("bound_states_exact", std::to_string(exact.size()));
    f.provenance.emplace_back("bound_states_monteCarlo", std::to_string(bound.size()));
    f.provenance.emplace_back("dropped_monteCarlo", std::to_string(mc.droppedCount));
    f.configs.emplace_back("run", cfg.toText());
    for (std::size_t n = 0; n < std::max(exact.size(), bound.size()); ++n) {
        std::optional<double> e, m;
        if (n < exact.size()) e = exact[n];
        if (n < bound.size()) m = bound[n];
        f.rows.push_back({std::to_string(n), cell(e), cell(m)});
    }
    return {f};
}

std::vector<OutputFile> reproduce_free(Target t) {
    const bool energy = t == Target::Fig1;
    const RunConfig main = free_fig(0.5, 100);
    RunConfig cross = free_fig(0.2, 200);
    cross.betas = {0.1};

    OutputFile f = table_file(t, {"series", "beta", "temperature", energy ? "U_exact" : "C_over_kB_exact",
                                  energy ? "U_exactMatrix" : "C_over_kB_exactMatrix"});
    f.configs.emplace_back("run", main.toText());
    f.configs.emplace_back("cross", cross.toText());
    for (const RunConfig* cfg : std::array<const RunConfig*, 2>{&main, &cross}) {
        const auto heff = build_effective(*cfg, Route::Exact);
        const auto curve = thermo_curve(heff, cfg->betas, cfg->physics.kB, true);
        const std::string series = "dx" + num(cfg->dx) + "_N" + std::to_string(cfg->count);
        for (const auto& row : curve.rows) {
            const auto ex = free_thermo(cfg->physics, row.beta);
            f.rows.push_back({series, num(row.beta), num(row.temperature),
                              num(energy ? ex.U : ex.C / cfg->physics.kB),
                              num(energy ? row.U : row.C / cfg->physics.kB)});
        }
    }
    return {f};
}

std::vector<OutputFile> reproduce_fig3(std::uint64_t seed) {
    RunConfig cfg = harmonic_tab1(seed);
    cfg.wavefunctionRoutes = {Route::Exact, Route::MonteCarlo};
    cfg.states = {0, 1, 2};
    auto files = run_wavefunctions(cfg);
    OutputFile f = table_file(Target::Fig3, files.front().columns);
    f.provenance.insert(f.provenance.end(), files.front().provenance.begin(), files.front().provenance.end());
    f.configs = files.front().configs;
    f.rows = files.front().rows;
    return {f};
}

std::vector<OutputFile> reproduce_harmonic_thermo(Target t, std::uint64_t seed) {
    const bool energy = t == Target::Fig4;
    RunConfig cfg = harmonic_tab1(seed);
    cfg.betas = default_beta_grid();
    const auto exact = build_effective(cfg, Route::Exact);
    const auto mc = build_effective(cfg, Route::MonteCarlo);
    const auto ce = thermo_curve(exact, cfg.betas, cfg.physics.kB);
    const auto cm = thermo_curve(mc, cfg.betas, cfg.physics.kB);

    const std::string q = energy ? "U" : "C_over_kB";
    OutputFile f = table_file(t, {"beta", "temperature", q + "_exact", q + "_exactMatrix", q + "_monteCarlo"});
    f.configs.emplace_back("run", cfg.toText());
    for (std::size_t b = 0; b < cfg.betas.size(); ++b) {
        const auto ex = ho_thermo(cfg.physics, kReproOmega, cfg.betas[b]);
        const double kB = cfg.physics.kB;
        f.rows.push_back({num(cfg.betas[b]), num(ce.rows[b].temperature), num(energy ? ex.U : ex.C / kB),
                          num(energy ? ce.rows[b].U : ce.rows[b].C / kB),
                          num(energy ? cm.rows[b].U : cm.rows[b].C / kB)});
    }
    return {f};
}

} // namespace

std::string OutputFile::render(std::string_view timestamp) const {
    std::ostringstream os;
    os << "# mchamiltonian " << kind << "\n";
    os << "# generated = " << timestamp << "\n";
    for (const auto& [k, v] : provenance) os << "# " << k << " = " << v << "\n";
    for (const auto& [label, text] : configs) {
        std::istringstream lines(text);
        for (std::string line; std::getline(lines, line);) os << "#cfg:" << label << " " << line << "\n";
    }
    for (std::size_t c = 0; c < columns.size(); ++c) os << (c ? "," : "") << columns[c];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c) os << (c ? "," : "") << row[c];
        os << "\n";
    }
    return os.str();
}

TransitionMatrix build_matrix(const RunConfig& cfg, Route route) {
    const Lattice lat = cfg.lattice();
    switch (route) {
    case Route::Free:
        if (!cfg.potential.isFree()) throw ConfigError(0, "route free requires potential kind free");
        return free_box_matrix(cfg.physics, lat);
    case Route::Exact: {
        KernelSpec kernel{FreeKernel{}, cfg.physics};
        if (const auto* h = harmonic_of(cfg)) kernel.kind = HarmonicKernel{h->omega};
        else if (!cfg.potential.isFree())
            throw ConfigError(0, "route exact needs an analytic kernel; use route mc for " + cfg.potential.name());
        return exact_box_matrix(kernel, lat, cfg.quadratureOrder);
    }
    case Route::MonteCarlo: return estimate_matrix(cfg.physics, lat, cfg.potential, cfg.sampler);
    }
    throw ConfigError(0, "unknown route");
}

EffectiveHamiltonian build_effective(const RunConfig& cfg, Route route) {
    return build_heff(build_matrix(cfg, route), cfg.physics, cfg.lattice(), cfg.dropThreshold);
}

std::vector<OutputFile> run_spectrum(const RunConfig& cfg) {
    const TransitionMatrix m = build_matrix(cfg, cfg.route);
    const EffectiveHamiltonian h = build_heff(m, cfg.physics, cfg.lattice(), cfg.dropThreshold);
    OutputFile f;
    f.name = "spectrum.csv";
    f.kind = "spectrum";
    f.provenance = provenance_of(cfg, cfg.route);
    f.provenance.emplace_back("source", to_string(m.source));
    f.provenance.emplace_back("kept_count", std::to_string(h.keptCount()));
    f.provenance.emplace_back("dropped_count", std::to_string(h.droppedCount));
    if (m.source == MatrixSource::MonteCarlo) f.provenance.emplace_back("flagged_elements", std::to_string(m.flaggedElements));
    f.configs.emplace_back("run", cfg.toText());
    f.columns = {"k", "energy", "transfer_value"};
    for (std::size_t k = 0; k < h.keptCount(); ++k)
        f.rows.push_back({std::to_string(k), num(h.energies[k]), num(h.transferValues[k])});
    return {f};
}

std::vector<OutputFile> run_thermo(const RunConfig& cfg) {
    if (cfg.betas.empty()) throw ConfigError(0, "thermo needs a beta grid: set [thermo] betas or beta_step/beta_count");
    const EffectiveHamiltonian h = build_effective(cfg, cfg.route);
    const ThermoCurve curve = thermo_curve(h, cfg.betas, cfg.physics.kB, cfg.potential.isFree());
    OutputFile f;
    f.name = "thermo.csv";
    f.kind = "thermo";
    f.provenance = provenance_of(cfg, cfg.route);
    f.provenance.emplace_back("kept_count", std::to_string(h.keptCount()));
    f.provenance.emplace_back("dropped_count", std::to_string(h.droppedCount));
    f.provenance.emplace_back("z_volume_dependent", curve.volumeDependentZ ? "true" : "false");
    f.configs.emplace_back("run", cfg.toText());
    f.columns = {"beta", "temperature", "Z", "logZ", "U", "C"};
    for (const auto& r : curve.rows)
        f.rows.push_back({num(r.beta), num(r.temperature), num(r.Z), num(r.logZ), num(r.U), num(r.C)});
    return {f};
}

std::vector<OutputFile> run_wavefunctions(const RunConfig& cfg) {
    const Lattice lat = cfg.lattice();
    const auto routes = wavefunction_routes(cfg);
    std::vector<EffectiveHamiltonian> hs;
    for (Route r : routes) hs.push_back(build_effective(cfg, r));

    std::size_t kept = hs.front().keptCount();
    for (const auto& h : hs) kept = std::min(kept, h.keptCount());
    for (std::size_t s : cfg.states)
        if (s >= kept)
            throw ConfigError(0, "state index " + std::to_string(s) + " out of range: only " + std::to_string(kept) +
                                     " effective states (K) available");

    const HarmonicPotential* ho = harmonic_of(cfg);
    OutputFile f;
    f.name = "wavefunction.csv";
    f.kind = "wavefunction";
    for (std::size_t r = 0; r < routes.size(); ++r) {
        auto p = provenance_of(cfg, routes[r]);
        for (auto& [k, v] : p) f.provenance.emplace_back(route_column(routes[r]) + "." + k, v);
    }
    f.provenance.emplace_back("sign_reference", route_column(routes.front()));
    f.configs.emplace_back("run", cfg.toText());
    f.columns = {"state", "box", "x"};
    if (ho) f.columns.push_back("psi_exact");
    for (Route r : routes) f.columns.push_back("psi_" + route_column(r));

    for (std::size_t s : cfg.states) {
        std::vector<double> reference(lat.size());
        for (std::size_t i = 0; i < lat.size(); ++i) reference[i] = hs.front().coefficients(i, s);
        std::vector<double> signs;
        for (const auto& h : hs) signs.push_back(alignment(h, s, reference));

        double analyticSign = 1.0;
        if (ho) {
            double dot = 0.0;
            for (std::size_t i = 0; i < lat.size(); ++i)
                dot += reference[i] * ho_box_average(cfg.physics, ho->omega, s, lat, i, cfg.quadratureOrder);
            analyticSign = dot < 0.0 ? -1.0 : 1.0;
        }
        for (std::size_t r = 0; r < routes.size(); ++r) {
            double norm = 0.0;
            for (std::size_t i = 0; i < lat.size(); ++i) norm += std::pow(wavefunction(hs[r], s, i), 2) * lat.spacing();
            f.provenance.emplace_back("norm." + route_column(routes[r]) + ".state" + std::to_string(s), num(norm));
        }
        for (std::size_t i = 0; i < lat.size(); ++i) {
            std::vector<std::string> row{std::to_string(s), std::to_string(i), num(lat.boxCenter(i))};
            if (ho)
                row.push_back(num(analyticSign * ho_box_average(cfg.physics, ho->omega, s, lat, i, cfg.quadratureOrder)));
            for (std::size_t r = 0; r < routes.size(); ++r) row.push_back(num(signs[r] * wavefunction(hs[r], s, i)));
            f.rows.push_back(std::move(row));
        }
    }
    return {f};
}

std::string to_string(Target t) {
    switch (t) {
    case Target::Tab1: return "tab1";
    case Target::Tab2a: return "tab2a";
    case Target::Tab2b: return "tab2b";
    case Target::Fig1: return "fig1";
    case Target::Fig2: return "fig2";
    case Target::Fig3: return "fig3";
    case Target::Fig4: return "fig4";
    case Target::Fig5: return "fig5";
    }
    return "unknown";
}

Target parse_target(std::string_view s) {
    for (Target t : {Target::Tab1, Target::Tab2a, Target::Tab2b, Target::Fig1, Target::Fig2, Target::Fig3, Target::Fig4,
                     Target::Fig5})
        if (s == to_string(t)) return t;
    throw ConfigError(0, "unknown reproduce target '" + std::string(s) +
                             "' (expected tab1, tab2a, tab2b, fig1, fig2, fig3, fig4, fig5)");
}

RunConfig reproduction_config(Target t, std::uint64_t seed) {
    switch (t) {
    case Target::Tab1:
    case Target::Fig3: return harmonic_tab1(seed);
    case Target::Fig4:
    case Target::Fig5: {
        RunConfig cfg = harmonic_tab1(seed);
        cfg.betas = default_beta_grid();
        return cfg;
    }
    case Target::Tab2a: return sech2_tab2(1.0, 10, seed);
    case Target::Tab2b: return sech2_tab2(2.0, 20, seed);
    case Target::Fig1:
    case Target::Fig2: return free_fig(0.5, 100);
    }
    throw ConfigError(0, "unknown target");
}

std::vector<OutputFile> reproduce(Target t, std::uint64_t seed) {
    switch (t) {
    case Target::Tab1: return reproduce_tab1(seed);
    case Target::Tab2a: return reproduce_tab2(t, 1.0, 10, seed);
    case Target::Tab2b: return reproduce_tab2(t, 2.0, 20, seed);
    case Target::Fig1:
    case Target::Fig2: return reproduce_free(t);
    case Target::Fig3: return reproduce_fig3(seed);
    case Target::Fig4:
    case Target::Fig5: return reproduce_harmonic_thermo(t, seed);
    }
    throw ConfigError(0, "unknown target");
}

void write_outputs(const std::vector<OutputFile>& files, const std::string& dir, std::string_view timestamp) {
    std::filesystem::create_directories(dir);
    for (const auto& f : files) {
        const auto path = std::filesystem::path(dir) / f.name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + path.string());
        out << f.render(timestamp);
    }
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

} // namespace mch
