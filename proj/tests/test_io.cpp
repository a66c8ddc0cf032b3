#include <sstream>
#include <string>

#include <doctest.h>
#include <json.hpp>

#include "vfl/field.hpp"
#include "vfl/io.hpp"
#include "vfl/regularity.hpp"
#include "vfl/resolvent.hpp"
#include "vfl/spectral.hpp"

using namespace vfl;

TEST_CASE("resolvent csv round-trips values exactly") {
    const auto g = solve_s(Kernel::exponential(), {1.0, 2.5}, TimeGrid(0.5, 1.0 / 64.0), 1e-2);
    std::ostringstream os;
    write_resolvent_csv(g, os);
    const std::string text = os.str();
    CHECK(text.rfind("# kernel=", 0) == 0);
    CHECK(text.find("residual_max=") != std::string::npos);

    // re-parse the last data row and compare bitwise
    std::istringstream is(text);
    std::string line, last;
    while (std::getline(is, line))
        if (!line.empty() && line[0] != '#' && line[0] != 't') last = line;
    std::istringstream row(last);
    std::string cell;
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == g.grid.nodes().back());
    std::getline(row, cell, ',');
    CHECK(std::stod(cell) == g.values[0].back());
}

TEST_CASE("field binary header") {
    const auto cov = torus_coefficients(SpectralSpec::torus_decay(1, 1.0), 2);
    const auto p = simulate_path(cov, Kernel::constant(), Symbol::fractional_power(1, 2.0),
                                 TimeGrid(0.25, 0.125), {42});
    std::ostringstream os(std::ios::binary);
    write_field_binary(p, os);
    const std::string bytes = os.str();
    REQUIRE(bytes.size() > 8);
    CHECK(bytes.compare(0, 5, "VFLD1") == 0);
}

TEST_CASE("json reports parse and carry sorted keys") {
    const auto rep = sobolev_check(1, 1.0, 0.0);
    const auto j = nlohmann::json::parse(regularity_json(rep, "sobolev d=1 q=1 alpha=0"));
    CHECK(j.contains("verdict"));
    CHECK(j.contains("inputs_hash"));
    CHECK(j["verdict"] == "holds");
}

TEST_CASE("inputs hash is stable and discriminating") {
    const std::string a = inputs_hash("kernel=constant mu=1");
    CHECK(a == inputs_hash("kernel=constant mu=1"));
    CHECK(a != inputs_hash("kernel=constant mu=2"));
    CHECK(a.size() == 16);
}

TEST_CASE("svg emitter produces one polyline per series") {
    std::ostringstream os;
    write_svg_lines(os, "demo", {0.0, 1.0, 2.0}, {{0.0, 1.0, 0.5}, {1.0, 0.0, 0.25}},
                    {"a", "b"});
    const std::string svg = os.str();
    CHECK(svg.find("<svg") != std::string::npos);
    std::size_t count = 0, pos = 0;
    while ((pos = svg.find("<polyline", pos)) != std::string::npos) {
        ++count;
        pos += 9;
    }
    CHECK(count == 2);
}
