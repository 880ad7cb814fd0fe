#pragma once

#include "mch/model.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace mch {

/// Invalid run configuration. `line()` is 0 when the problem is not tied to a line.
class ConfigError : public std::runtime_error {
  public:
    ConfigError(std::size_t line, const std::string& what);
    std::size_t line() const { return line_; }

  private:
    std::size_t line_;
};

enum class Route { MonteCarlo, Exact, Free };
std::string to_string(Route r);
Route parse_route(std::string_view s); ///< "mc" | "exact" | "free"; throws ConfigError

/// Everything a run needs, after defaults are applied.
///
/// File format: `[section]` headers and `key = value` lines; `#` and `;`
/// start comments. Sections: physics, lattice, potential, sampler, thermo,
/// output. Lists are comma separated.
struct RunConfig {
    PhysicalParams physics;
    double dx = 1.0;
    std::size_t count = 20;
    std::optional<double> xMin; ///< default: centered on x = 0
    Potential potential;
    SamplerConfig sampler;
    std::vector<double> betas;
    Route route = Route::Exact;
    std::vector<Route> wavefunctionRoutes; ///< empty: just `route`
    std::vector<std::size_t> states{0, 1, 2};
    double dropThreshold = 1e-12;
    std::size_t quadratureOrder = 32;
    std::string outDir = ".";

    Lattice lattice() const;

    /// Canonical text form; parses back to an identical config.
    std::string toText() const;
};

RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Cross-field checks not tied to one line (e.g. route vs potential).
void validate_config(const RunConfig& cfg);

/// Shortest round-trippable form is not required; 17 significant digits.
std::string format_number(double v);

} // namespace mch
