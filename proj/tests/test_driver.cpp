#include "mch/driver.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>

using namespace mch;
namespace fs = std::filesystem;

namespace {

RunConfig harmonic_run(Route route) {
    RunConfig c = parse_config("[lattice]\ndx = 1\ncount = 12\n[potential]\nkind = harmonic\nomega = 0.6\n"
                               "[sampler]\nconfigs = 300\nslices = 16\nthreads = 1\n[thermo]\nbetas = 0.5, 1, 2\n");
    c.route = route;
    return c;
}

fs::path scratch(const std::string& name) {
    const fs::path p = fs::temp_directory_path() / ("mch_test_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

int run_cli(const std::string& args) {
    const std::string cmd = std::string(MCH_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

} // namespace

TEST_CASE("rendered files carry provenance, config and a CSV body") {
    const auto files = run_spectrum(harmonic_run(Route::Exact));
    REQUIRE(files.size() == 1);
    const std::string text = files[0].render("TS");
    CHECK(text.rfind("# mchamiltonian spectrum\n# generated = TS\n", 0) == 0);
    CHECK(text.find("# route = exact\n") != std::string::npos);
    CHECK(text.find("#cfg:run [potential]") != std::string::npos);
    CHECK(text.find("\nk,energy,transfer_value\n0,") != std::string::npos);
    CHECK(files[0].rows.size() == 12);
}

TEST_CASE("spectrum routes") {
    RunConfig free = harmonic_run(Route::Free);
    free.potential = Potential::free();
    const auto a = run_spectrum(free);
    free.route = Route::Exact;
    const auto b = run_spectrum(free);
    REQUIRE(a[0].rows.size() == b[0].rows.size());
    CHECK(std::stod(a[0].rows[0][1]) == doctest::Approx(std::stod(b[0].rows[0][1])).epsilon(1e-10));

    const auto mc = run_spectrum(harmonic_run(Route::MonteCarlo));
    CHECK(mc[0].render("x").find("# seed = 1\n") != std::string::npos);
}

TEST_CASE("thermo and wave function files") {
    const auto t = run_thermo(harmonic_run(Route::Exact));
    CHECK(t[0].columns == std::vector<std::string>{"beta", "temperature", "Z", "logZ", "U", "C"});
    CHECK(t[0].rows.size() == 3);

    RunConfig none = harmonic_run(Route::Exact);
    none.betas.clear();
    CHECK_THROWS_AS(run_thermo(none), ConfigError);

    RunConfig w = harmonic_run(Route::Exact);
    w.wavefunctionRoutes = {Route::Exact, Route::MonteCarlo};
    const auto f = run_wavefunctions(w);
    CHECK(f[0].columns == std::vector<std::string>{"state", "box", "x", "psi_exact", "psi_exactMatrix", "psi_monteCarlo"});
    CHECK(f[0].rows.size() == 3 * 12);

    w.states = {0, 40};
    try {
        (void)run_wavefunctions(w);
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("state index 40") != std::string::npos);
        CHECK(std::string(e.what()).find("12 effective states") != std::string::npos);
    }
}

TEST_CASE("reproduction targets") {
    CHECK(parse_target("fig3") == Target::Fig3);
    CHECK(to_string(Target::Tab2b) == "tab2b");
    CHECK_THROWS_AS(parse_target("tab9"), ConfigError);
    const RunConfig c = reproduction_config(Target::Tab1, 7);
    CHECK(c.count == 20);
    CHECK(c.sampler.seed == 7u);
    CHECK(c.sampler.numConfigs == 10000);
    const auto f = reproduce(Target::Fig1, 1);
    CHECK(f[0].name == "fig1.csv");
    CHECK(f[0].rows.size() == 101);
}

TEST_CASE("outputs land on disk") {
    const fs::path dir = scratch("write");
    write_outputs(run_spectrum(harmonic_run(Route::Exact)), (dir / "nested").string(), "T0");
    CHECK(fs::exists(dir / "nested" / "spectrum.csv"));
    fs::remove_all(dir);
}

TEST_CASE("command line exit codes") {
    const fs::path dir = scratch("cli");
    auto write = [&](const std::string& name, const std::string& text) {
        std::ofstream(dir / name) << text;
        return (dir / name).string();
    };
    const std::string good = write("good.ini", "[lattice]\ndx = 1\ncount = 10\n[potential]\nkind = harmonic\n"
                                               "omega = 0.6\n[thermo]\nbetas = 1, 2\n");
    const std::string badDx = write("bad.ini", "[lattice]\ndx = 0\n");
    const std::string noBeta = write("nobeta.ini", "[potential]\nkind = free\n");
    const std::string out = (dir / "out").string();

    CHECK(run_cli("spectrum --config " + good + " --out " + out) == 0);
    CHECK(fs::exists(dir / "out" / "spectrum.csv"));
    CHECK(run_cli("thermo --config " + good + " --out " + out) == 0);
    CHECK(run_cli("wavefn --config " + good + " --states 0,1 --out " + out) == 0);
    CHECK(slurp(dir / "out" / "wavefunction.csv").find("\n1,9,") != std::string::npos);
    CHECK(run_cli("spectrum --config " + badDx) == 2);
    CHECK(run_cli("thermo --config " + noBeta + " --out " + out) == 2);
    CHECK(run_cli("wavefn --config " + good + " --states 0,25 --out " + out) == 2);
    CHECK(run_cli("spectrum --config " + good + " --route free") == 2);
    CHECK(run_cli("spectrum --config " + good + " --route quantum") == 2);
    CHECK(run_cli("spectrum --config " + (dir / "missing.ini").string()) == 2);
    CHECK(run_cli("reproduce tab9") == 2);
    CHECK(run_cli("") == 2);

    // a potential whose transition matrix has no positive eigenvalue above the threshold
    const std::string allDropped = write("dropped.ini", "[lattice]\ndx = 1\ncount = 4\n[potential]\nkind = harmonic\n"
                                                        "omega = 0.6\n[output]\ndrop_threshold = 10\n");
    CHECK(run_cli("spectrum --config " + allDropped + " --out " + out) == 3);
    fs::remove_all(dir);
}
