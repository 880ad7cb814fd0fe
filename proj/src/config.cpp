#include "mch/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace mch {

ConfigError::ConfigError(std::size_t line, const std::string& what)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}

std::string to_string(Route r) {
    switch (r) {
    case Route::MonteCarlo: return "mc";
    case Route::Exact: return "exact";
    case Route::Free: return "free";
    }
    return "unknown";
}

Route parse_route(std::string_view s) {
    if (s == "mc") return Route::MonteCarlo;
    if (s == "exact") return Route::Exact;
    if (s == "free") return Route::Free;
    throw ConfigError(0, "unknown route '" + std::string(s) + "' (expected mc, exact or free)");
}

std::string format_number(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

Lattice RunConfig::lattice() const {
    return xMin ? Lattice(*xMin, dx, count) : Lattice::centered(dx, count);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
    std::vector<std::string_view> out;
    while (true) {
        const auto comma = s.find(',');
        const auto item = trim(s.substr(0, comma));
        if (!item.empty()) out.push_back(item);
        if (comma == std::string_view::npos) break;
        s.remove_prefix(comma + 1);
    }
    return out;
}

struct Entry {
    std::string value;
    std::size_t line;
};

class Reader {
  public:
    explicit Reader(std::map<std::string, Entry> entries) : entries_(std::move(entries)) {}

    bool has(const std::string& key) const { return entries_.count(key) != 0; }
    std::size_t lineOf(const std::string& key) const {
        auto it = entries_.find(key);
        return it == entries_.end() ? 0 : it->second.line;
    }

    std::optional<double> number(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        return to_double(it->second.value, key, it->second.line);
    }

    std::optional<long long> integer(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        return to_integer(it->second.value, key, it->second.line);
    }

    std::optional<std::string> text(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        return it->second.value;
    }

    std::optional<std::vector<double>> numbers(const std::string& key) const {
        auto it = entries_.find(key);
        if (it == entries_.end()) return std::nullopt;
        std::vector<double> out;
        for (auto item : split_list(it->second.value)) out.push_back(to_double(item, key, it->second.line));
        return out;
    }

    static double to_double(std::string_view s, const std::string& key, std::size_t line) {
        double v = 0.0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
            throw ConfigError(line, key + ": expected a finite number, got '" + std::string(s) + "'");
        return v;
    }

    static long long to_integer(std::string_view s, const std::string& key, std::size_t line) {
        long long v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size())
            throw ConfigError(line, key + ": expected an integer, got '" + std::string(s) + "'");
        return v;
    }

  private:
    std::map<std::string, Entry> entries_;
};

const std::map<std::string, std::vector<std::string>>& known_keys() {
    static const std::map<std::string, std::vector<std::string>> keys{
        {"physics", {"mass", "hbar", "kB", "time"}},
        {"lattice", {"dx", "count", "x_min"}},
        {"potential", {"kind", "omega", "v0", "d", "coefficients"}},
        {"sampler",
         {"method", "configs", "slices", "seed", "metropolis_step", "thermalization_sweeps", "decorrelation_sweeps",
          "rejection_cap", "threads"}},
        {"thermo", {"betas", "beta_start", "beta_step", "beta_count"}},
        {"output", {"route", "routes", "states", "drop_threshold", "quadrature_order", "dir"}},
    };
    return keys;
}

std::map<std::string, Entry> tokenize(std::string_view text) {
    std::map<std::string, Entry> entries;
    std::string section;
    std::size_t lineNo = 0;
    while (!text.empty()) {
        ++lineNo;
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text.remove_prefix(nl == std::string_view::npos ? text.size() : nl + 1);

        if (const auto c = line.find_first_of("#;"); c != std::string_view::npos) line = line.substr(0, c);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError(lineNo, "malformed section header");
            section = std::string(trim(line.substr(1, line.size() - 2)));
            if (!known_keys().count(section)) throw ConfigError(lineNo, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(lineNo, "expected 'key = value'");
        if (section.empty()) throw ConfigError(lineNo, "key outside of any [section]");
        const std::string key(trim(line.substr(0, eq)));
        const auto& allowed = known_keys().at(section);
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(lineNo, "unknown key '" + key + "' in [" + section + "]");
        const std::string full = section + "." + key;
        if (entries.count(full)) throw ConfigError(lineNo, "duplicate key " + full);
        entries.emplace(full, Entry{std::string(trim(line.substr(eq + 1))), lineNo});
    }
    return entries;
}

template <typename F>
void anchored(const Reader& r, const std::string& key, F&& f) {
    try {
        f();
    } catch (const ConfigError&) {
        throw;
    } catch (const std::exception& e) {
        throw ConfigError(r.lineOf(key), key + ": " + e.what());
    }
}

std::size_t non_negative(const Reader& r, const std::string& key, long long v) {
    if (v < 0) throw ConfigError(r.lineOf(key), key + " must be >= 0");
    return static_cast<std::size_t>(v);
}

} // namespace

RunConfig parse_config(std::string_view text) {
    const Reader r(tokenize(text));
    RunConfig cfg;

    auto positive = [&](const std::string& key, double& slot) {
        if (auto v = r.number(key)) {
            if (!(*v > 0.0)) throw ConfigError(r.lineOf(key), key + " must be > 0");
            slot = *v;
        }
    };
    positive("physics.mass", cfg.physics.mass);
    positive("physics.hbar", cfg.physics.hbar);
    positive("physics.kB", cfg.physics.kB);
    positive("physics.time", cfg.physics.time);

    positive("lattice.dx", cfg.dx);
    if (auto n = r.integer("lattice.count")) {
        if (*n < 2) throw ConfigError(r.lineOf("lattice.count"), "lattice.count must be >= 2");
        cfg.count = static_cast<std::size_t>(*n);
    }
    if (auto x = r.number("lattice.x_min")) cfg.xMin = *x;

    const std::string kind = r.text("potential.kind").value_or("free");
    anchored(r, "potential.kind", [&] {
        auto need = [&](const std::string& key) {
            auto v = r.number(key);
            if (!v) throw ConfigError(r.lineOf("potential.kind"), "potential kind '" + kind + "' needs " + key);
            return *v;
        };
        if (kind == "free") {
            cfg.potential = Potential::free();
        } else if (kind == "harmonic") {
            const double w = need("potential.omega");
            anchored(r, "potential.omega", [&] { cfg.potential = Potential::harmonic(w); });
        } else if (kind == "sech2") {
            const double v0 = need("potential.v0");
            const double d = need("potential.d");
            anchored(r, "potential.v0", [&] { cfg.potential = Potential::sech2(v0, d); });
        } else if (kind == "polynomial") {
            auto c = r.numbers("potential.coefficients");
            if (!c) throw ConfigError(r.lineOf("potential.kind"), "polynomial potential needs potential.coefficients");
            cfg.potential = Potential::polynomial(*c);
        } else {
            throw ConfigError(r.lineOf("potential.kind"), "unknown potential kind '" + kind + "'");
        }
    });

    if (auto m = r.text("sampler.method")) {
        if (*m == "bridge") cfg.sampler.method = SamplerMethod::Bridge;
        else if (*m == "metropolis") cfg.sampler.method = SamplerMethod::Metropolis;
        else throw ConfigError(r.lineOf("sampler.method"), "sampler.method must be bridge or metropolis");
    }
    if (auto v = r.integer("sampler.configs")) {
        if (*v < 1) throw ConfigError(r.lineOf("sampler.configs"), "sampler.configs must be >= 1");
        cfg.sampler.numConfigs = static_cast<std::size_t>(*v);
    }
    if (auto v = r.integer("sampler.slices")) {
        if (*v < 2) throw ConfigError(r.lineOf("sampler.slices"), "sampler.slices must be >= 2");
        cfg.sampler.timeSlices = static_cast<std::size_t>(*v);
    }
    if (auto v = r.integer("sampler.seed")) cfg.sampler.seed = static_cast<std::uint64_t>(non_negative(r, "sampler.seed", *v));
    positive("sampler.metropolis_step", cfg.sampler.metropolisStep);
    if (auto v = r.integer("sampler.thermalization_sweeps"))
        cfg.sampler.thermalizationSweeps = non_negative(r, "sampler.thermalization_sweeps", *v);
    if (auto v = r.integer("sampler.decorrelation_sweeps")) {
        if (*v < 1) throw ConfigError(r.lineOf("sampler.decorrelation_sweeps"), "sampler.decorrelation_sweeps must be >= 1");
        cfg.sampler.decorrelationSweeps = static_cast<std::size_t>(*v);
    }
    if (auto v = r.integer("sampler.rejection_cap")) {
        if (*v < 1) throw ConfigError(r.lineOf("sampler.rejection_cap"), "sampler.rejection_cap must be >= 1");
        cfg.sampler.rejectionCap = static_cast<std::size_t>(*v);
    }
    if (auto v = r.integer("sampler.threads")) cfg.sampler.threads = static_cast<unsigned>(non_negative(r, "sampler.threads", *v));

    if (auto b = r.numbers("thermo.betas")) {
        cfg.betas = *b;
        if (cfg.betas.empty()) throw ConfigError(r.lineOf("thermo.betas"), "thermo.betas is empty");
    } else if (r.has("thermo.beta_step") || r.has("thermo.beta_count") || r.has("thermo.beta_start")) {
        const double step = r.number("thermo.beta_step").value_or(0.1);
        const double start = r.number("thermo.beta_start").value_or(step);
        const long long n = r.integer("thermo.beta_count").value_or(100);
        if (!(step > 0.0)) throw ConfigError(r.lineOf("thermo.beta_step"), "thermo.beta_step must be > 0");
        if (n < 1) throw ConfigError(r.lineOf("thermo.beta_count"), "thermo.beta_count must be >= 1");
        for (long long k = 0; k < n; ++k) cfg.betas.push_back(start + static_cast<double>(k) * step);
    }
    if (!cfg.betas.empty()) {
        const std::string key = r.has("thermo.betas") ? "thermo.betas" : "thermo.beta_start";
        for (std::size_t b = 0; b < cfg.betas.size(); ++b) {
            if (!(cfg.betas[b] > 0.0)) throw ConfigError(r.lineOf(key), "beta values must be > 0");
            if (b > 0 && !(cfg.betas[b] > cfg.betas[b - 1]))
                throw ConfigError(r.lineOf(key), "beta values must be strictly increasing");
        }
    }

    if (auto s = r.text("output.route")) anchored(r, "output.route", [&] { cfg.route = parse_route(*s); });
    if (auto s = r.text("output.routes")) {
        anchored(r, "output.routes", [&] {
            for (auto item : split_list(*s)) cfg.wavefunctionRoutes.push_back(parse_route(item));
        });
    }
    if (auto s = r.text("output.states")) {
        cfg.states.clear();
        for (auto item : split_list(*s))
            cfg.states.push_back(non_negative(r, "output.states", Reader::to_integer(item, "output.states", r.lineOf("output.states"))));
    }
    if (auto v = r.number("output.drop_threshold")) {
        if (*v < 0.0) throw ConfigError(r.lineOf("output.drop_threshold"), "output.drop_threshold must be >= 0");
        cfg.dropThreshold = *v;
    }
    if (auto v = r.integer("output.quadrature_order")) {
        if (*v < 1) throw ConfigError(r.lineOf("output.quadrature_order"), "output.quadrature_order must be >= 1");
        cfg.quadratureOrder = static_cast<std::size_t>(*v);
    }
    if (auto s = r.text("output.dir")) cfg.outDir = *s;

    validate_config(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open config file " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

void validate_config(const RunConfig& cfg) {
    auto check = [](bool ok, const std::string& msg) {
        if (!ok) throw ConfigError(0, msg);
    };
    auto check_route = [&](Route r) {
        if (r == Route::Free) check(cfg.potential.isFree(), "route free requires potential kind free");
        if (r == Route::Exact)
            check(cfg.potential.isFree() || std::holds_alternative<HarmonicPotential>(cfg.potential.kind()),
                  "route exact needs an analytic kernel (free or harmonic); use route mc for " + cfg.potential.name());
    };
    check_route(cfg.route);
    for (Route r : cfg.wavefunctionRoutes) check_route(r);
    try {
        cfg.physics.validate();
        (void)cfg.lattice();
        cfg.sampler.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(0, e.what());
    }
}

std::string RunConfig::toText() const {
    std::ostringstream os;
    auto list = [](const auto& xs, auto fmt) {
        std::string s;
        for (std::size_t k = 0; k < xs.size(); ++k) s += (k ? ", " : "") + fmt(xs[k]);
        return s;
    };
    os << "[physics]\n"
       << "mass = " << format_number(physics.mass) << "\n"
       << "hbar = " << format_number(physics.hbar) << "\n"
       << "kB = " << format_number(physics.kB) << "\n"
       << "time = " << format_number(physics.time) << "\n";
    os << "[lattice]\n"
       << "dx = " << format_number(dx) << "\n"
       << "count = " << count << "\n"
       << "x_min = " << format_number(lattice().xMin()) << "\n";
    os << "[potential]\n"
       << "kind = " << potential.name() << "\n";
    std::visit(
        [&](const auto& p) {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, HarmonicPotential>) {
                os << "omega = " << format_number(p.omega) << "\n";
            } else if constexpr (std::is_same_v<P, Sech2Potential>) {
                os << "v0 = " << format_number(p.depth) << "\n"
                   << "d = " << format_number(p.width) << "\n";
            } else if constexpr (std::is_same_v<P, PolynomialPotential>) {
                os << "coefficients = " << list(p.coefficients, format_number) << "\n";
            }
        },
        potential.kind());
    os << "[sampler]\n"
       << "method = " << (sampler.method == SamplerMethod::Bridge ? "bridge" : "metropolis") << "\n"
       << "configs = " << sampler.numConfigs << "\n"
       << "slices = " << sampler.timeSlices << "\n"
       << "seed = " << sampler.seed << "\n"
       << "metropolis_step = " << format_number(sampler.metropolisStep) << "\n"
       << "thermalization_sweeps = " << sampler.thermalizationSweeps << "\n"
       << "decorrelation_sweeps = " << sampler.decorrelationSweeps << "\n"
       << "rejection_cap = " << sampler.rejectionCap << "\n";
    if (!betas.empty()) os << "[thermo]\nbetas = " << list(betas, format_number) << "\n";
    os << "[output]\n"
       << "route = " << to_string(route) << "\n";
    if (!wavefunctionRoutes.empty())
        os << "routes = " << list(wavefunctionRoutes, [](Route r) { return to_string(r); }) << "\n";
    os << "states = " << list(states, [](std::size_t s) { return std::to_string(s); }) << "\n"
       << "drop_threshold = " << format_number(dropThreshold) << "\n"
       << "quadrature_order = " << quadratureOrder << "\n";
    return os.str();
}

} // namespace mch
