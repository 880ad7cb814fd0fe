#pragma once

#include "mch/config.hpp"
#include "mch/model.hpp"

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mch {

/// One CSV result file: a `#` provenance block, the effective config(s), a
/// column header and rows. Nothing touches the disk until write_outputs().
struct OutputFile {
    std::string name;
    std::string kind;
    std::vector<std::pair<std::string, std::string>> provenance;
    std::vector<std::pair<std::string, std::string>> configs; ///< (label, RunConfig::toText())
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    /// Full file contents. The timestamp is confined to the `# generated` line.
    std::string render(std::string_view timestamp) const;
};

TransitionMatrix build_matrix(const RunConfig& cfg, Route route);
EffectiveHamiltonian build_effective(const RunConfig& cfg, Route route);

std::vector<OutputFile> run_spectrum(const RunConfig& cfg);
std::vector<OutputFile> run_thermo(const RunConfig& cfg);
std::vector<OutputFile> run_wavefunctions(const RunConfig& cfg);

enum class Target { Tab1, Tab2a, Tab2b, Fig1, Fig2, Fig3, Fig4, Fig5 };
std::string to_string(Target t);
Target parse_target(std::string_view s); ///< throws ConfigError

/// Pinned parameters for a reproduction target (the primary lattice when a
/// target uses several).
RunConfig reproduction_config(Target t, std::uint64_t seed);
std::vector<OutputFile> reproduce(Target t, std::uint64_t seed);

void write_outputs(const std::vector<OutputFile>& files, const std::string& dir, std::string_view timestamp);
std::string utc_timestamp();

} // namespace mch
