// mch: build effective Hamiltonians from Euclidean transition matrices.
//
//   mch spectrum  --config run.ini [--route mc|exact|free] [--seed N] [--out DIR]
//   mch thermo    --config run.ini ...
//   mch wavefn    --config run.ini [--states 0,1,2] ...
//   mch reproduce tab1|tab2a|tab2b|fig1|fig2|fig3|fig4|fig5 [--seed N] [--out DIR]
//
// Exit status: 0 success, 2 configuration error, 3 numerical failure.

#include "mch/driver.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>

namespace {

constexpr int kConfigError = 2;
constexpr int kNumericalError = 3;

struct Options {
    std::string configPath;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> outDir;
    std::optional<std::string> route;
    std::vector<std::size_t> states;
    std::string target;
};

mch::RunConfig effective_config(const Options& opt) {
    mch::RunConfig cfg = mch::load_config(opt.configPath);
    if (opt.seed) cfg.sampler.seed = *opt.seed;
    if (opt.route) {
        cfg.route = mch::parse_route(*opt.route);
        cfg.wavefunctionRoutes.clear();
    }
    if (opt.outDir) cfg.outDir = *opt.outDir;
    if (!opt.states.empty()) cfg.states = opt.states;
    mch::validate_config(cfg);
    return cfg;
}

void add_common(CLI::App* sub, Options& opt, bool needsConfig) {
    if (needsConfig) sub->add_option("--config", opt.configPath, "Run configuration file")->required();
    sub->add_option("--seed", opt.seed, "RNG seed (overrides the config)");
    sub->add_option("--out", opt.outDir, "Output directory");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo effective Hamiltonian for 1-D quantum mechanics"};
    app.require_subcommand(1);
    Options opt;

    auto* spectrum = app.add_subcommand("spectrum", "Effective spectrum of one transition matrix");
    auto* thermo = app.add_subcommand("thermo", "Z, U and C of the effective spectrum over a beta grid");
    auto* wavefn = app.add_subcommand("wavefn", "Box amplitudes of selected effective eigenstates");
    auto* repro = app.add_subcommand("reproduce", "Regenerate a pinned table or figure data set");
    for (auto* sub : {spectrum, thermo, wavefn}) {
        add_common(sub, opt, true);
        sub->add_option("--route", opt.route, "Matrix route")->check(CLI::IsMember({"mc", "exact", "free"}));
    }
    wavefn->add_option("--states", opt.states, "State indices")->delimiter(',');
    add_common(repro, opt, false);
    repro->add_option("target", opt.target, "tab1, tab2a, tab2b, fig1, fig2, fig3, fig4 or fig5")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kConfigError;
    }

    try {
        std::vector<mch::OutputFile> files;
        std::string dir = opt.outDir.value_or(".");
        if (repro->parsed()) {
            files = mch::reproduce(mch::parse_target(opt.target), opt.seed.value_or(1));
        } else {
            const mch::RunConfig cfg = effective_config(opt);
            dir = cfg.outDir;
            if (spectrum->parsed()) files = mch::run_spectrum(cfg);
            else if (thermo->parsed()) files = mch::run_thermo(cfg);
            else files = mch::run_wavefunctions(cfg);
        }
        mch::write_outputs(files, dir, mch::utc_timestamp());
        for (const auto& f : files) std::cout << (std::filesystem::path(dir) / f.name).string() << "\n";
        return 0;
    } catch (const mch::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfigError;
    } catch (const mch::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kNumericalError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
