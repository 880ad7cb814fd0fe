#include "mch/config.hpp"

#include <doctest.h>

#include <string>

using namespace mch;

namespace {

constexpr const char* kHarmonic = R"(# harmonic oscillator on 20 unit boxes
[physics]
mass = 1
hbar = 1
time = 1

[lattice]
dx = 1.0
count = 20

[potential]
kind = harmonic
omega = 0.6

[sampler]
configs = 500
slices = 32
seed = 9

[thermo]
betas = 0.5, 1, 2

[output]
route = exact
states = 0, 2
)";

std::size_t error_line(const std::string& text) {
    try {
        (void)parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return 0;
}

std::string error_text(const std::string& text) {
    try {
        (void)parse_config(text);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("a complete file parses") {
    const RunConfig c = parse_config(kHarmonic);
    CHECK(c.dx == 1.0);
    CHECK(c.count == 20);
    CHECK(c.lattice().xMin() == -10.0);
    CHECK(std::get<HarmonicPotential>(c.potential.kind()).omega == 0.6);
    CHECK(c.sampler.numConfigs == 500);
    CHECK(c.sampler.timeSlices == 32);
    CHECK(c.sampler.seed == 9u);
    CHECK(c.betas == std::vector<double>{0.5, 1.0, 2.0});
    CHECK(c.route == Route::Exact);
    CHECK(c.states == std::vector<std::size_t>{0, 2});
}

TEST_CASE("defaults") {
    const RunConfig c = parse_config("[potential]\nkind = free\n");
    CHECK(c.physics.mass == 1.0);
    CHECK(c.sampler.numConfigs == 10000);
    CHECK(c.sampler.timeSlices == 64);
    CHECK(c.betas.empty());
    CHECK(c.dropThreshold == 1e-12);
}

TEST_CASE("canonical text round-trips") {
    const RunConfig c = parse_config(kHarmonic);
    const RunConfig d = parse_config(c.toText());
    CHECK(d.toText() == c.toText());
    RunConfig e = parse_config("[potential]\nkind = polynomial\ncoefficients = 0.1, 0, 0.3333333333333333\n"
                               "[output]\nroute = mc\n");
    CHECK(parse_config(e.toText()).toText() == e.toText());
}

TEST_CASE("beta ranges") {
    const RunConfig c = parse_config("[potential]\nkind = free\n[thermo]\nbeta_start = 1\nbeta_step = 1\nbeta_count = 10\n");
    REQUIRE(c.betas.size() == 10);
    CHECK(c.betas.front() == 1.0);
    CHECK(c.betas.back() == 10.0);
}

TEST_CASE("errors name the field and the line") {
    CHECK(error_line("[lattice]\ncount = 10\ndx = -0.5\n") == 3);
    CHECK(error_text("[lattice]\ncount = 10\ndx = -0.5\n").find("lattice.dx") != std::string::npos);
    CHECK(error_text("[lattice]\ndx = 0\n").find("line 2") != std::string::npos);
    CHECK(error_line("[lattice]\ncount = 1\n") == 2);
    CHECK(error_line("[physics]\nmass = abc\n") == 2);
    CHECK(error_line("\n[nonsense]\n") == 2);
    CHECK(error_line("[physics]\nmas = 1\n") == 2);
    CHECK(error_line("[physics]\nmass = 1\nmass = 2\n") == 3);
    CHECK(error_line("mass = 1\n") == 1);
    CHECK(error_line("[physics\n") == 1);
    CHECK(error_line("[potential]\nkind = harmonic\n") == 2);
    CHECK(error_line("[potential]\nkind = cubic\n") == 2);
    CHECK(error_line("[thermo]\nbetas = 1, 0.5\n") == 2);
    CHECK(error_line("[thermo]\nbetas = \n") == 2);
    CHECK(error_line("[sampler]\nconfigs = 0\n") == 2);
    CHECK(error_line("[sampler]\nslices = -3\n") == 2);
}

TEST_CASE("route and potential must be compatible") {
    CHECK_THROWS_AS(parse_config("[potential]\nkind = sech2\nv0 = 1\nd = 1\n[output]\nroute = exact\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("[potential]\nkind = harmonic\nomega = 1\n[output]\nroute = free\n"), ConfigError);
    CHECK_NOTHROW(parse_config("[potential]\nkind = sech2\nv0 = 1\nd = 1\n[output]\nroute = mc\n"));
    CHECK_THROWS_AS(parse_route("quantum"), ConfigError);
    CHECK(parse_route("mc") == Route::MonteCarlo);
    CHECK(to_string(Route::Free) == "free");
}

TEST_CASE("missing file") {
    CHECK_THROWS_AS(load_config("/nonexistent/run.ini"), ConfigError);
}

TEST_CASE("number formatting keeps full precision") {
    CHECK(std::stod(format_number(0.1)) == 0.1);
    CHECK(std::stod(format_number(1.0 / 3.0)) == 1.0 / 3.0);
}
