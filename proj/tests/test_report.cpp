#include "doctest.h"

#include <cmath>
#include <sstream>

#include "zeno/report.hpp"

using namespace zeno;

TEST_CASE("numbers are written with 12 significant digits") {
    CHECK(format_number(1.0) == "1.00000000000e+00");
    CHECK(format_number(-2.5e-8) == "-2.50000000000e-08");
    CHECK(format_number(0.0) == "0.00000000000e+00");
    CHECK(format_number(123456789012.0) == "1.23456789012e+11");
}

TEST_CASE("table CSV output") {
    Table t;
    t.columns = {"tau_s", "kappa_1_per_s", "note, with comma", "quo\"te"};
    t.rows = {{1e-8, 2e6, 0.0, 1.0}};
    std::ostringstream out;
    write_csv(t, out);
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "tau_s,kappa_1_per_s,\"note, with comma\",\"quo\"\"te\"");
    std::getline(in, line);
    CHECK(line ==
          "1.00000000000e-08,2.00000000000e+06,0.00000000000e+00,1.00000000000e+00");
    CHECK(!std::getline(in, line));
}

TEST_CASE("config parsing: comments, spacing, later keys win") {
    std::istringstream in(
        "# run setup\n"
        "coupling = 4.5e6   # rad/s\n"
        "  half_width=6.3e6\n"
        "\n"
        "coupling = 5.0e6\n");
    auto cfg = parse_config(in);
    CHECK(cfg.size() == 2);
    CHECK(cfg.at("coupling") == "5.0e6");
    CHECK(cfg.at("half_width") == "6.3e6");
}

TEST_CASE("config parsing rejects malformed lines") {
    std::istringstream no_eq("coupling 4.5e6\n");
    CHECK_THROWS_AS(parse_config(no_eq), std::invalid_argument);
    std::istringstream no_key("= 4.5e6\n");
    CHECK_THROWS_AS(parse_config(no_key), std::invalid_argument);
}

TEST_CASE("config round-trips through its own writer") {
    ConfigMap cfg{{"alpha", "1.0"}, {"omega_c", "1e19"}, {"preset", "antizeno"}};
    std::ostringstream out;
    write_config(cfg, out);
    std::istringstream in(out.str());
    CHECK(parse_config(in) == cfg);
}

TEST_CASE("axis specs") {
    auto lin = parse_axis("0:10:lin:5");
    REQUIRE(lin.size() == 5);
    CHECK(lin[0] == 0.0);
    CHECK(lin[2] == doctest::Approx(5.0));
    CHECK(lin[4] == 10.0);
    auto log = parse_axis("1e12:1e16:log:5");
    REQUIRE(log.size() == 5);
    CHECK(log[1] == doctest::Approx(1e13));
    CHECK(log[3] == doctest::Approx(1e15));
    CHECK_THROWS_AS(parse_axis("1:2:lin"), std::invalid_argument);
    CHECK_THROWS_AS(parse_axis("1:2:geom:5"), std::invalid_argument);
    CHECK_THROWS_AS(parse_axis("1:2:lin:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_axis("-1:2:log:5"), std::invalid_argument);
}

TEST_CASE("SVG plots contain the data and reject empty input") {
    Series s{"interrupted", {1e-8, 2e-8, 3e-8}, {1.0, 0.5, 0.25}};
    PlotStyle style;
    style.title = "population";
    style.x_label = "t (s)";
    style.y_label = "W";
    style.log_y = true;
    std::ostringstream out;
    write_svg({&s, 1}, style, out);
    const std::string svg = out.str();
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") == svg.size() - 7);
    CHECK(svg.find("polyline") != std::string::npos);
    CHECK(svg.find("population") != std::string::npos);
    CHECK(svg.find("interrupted") != std::string::npos);

    CHECK_THROWS_AS(write_svg({}, style, out), std::invalid_argument);
    Series tiny{"x", {1.0}, {1.0}};
    CHECK_THROWS_AS(write_svg({&tiny, 1}, style, out), std::invalid_argument);
    Series ragged{"x", {1.0, 2.0}, {1.0}};
    CHECK_THROWS_AS(write_svg({&ragged, 1}, style, out), std::invalid_argument);
}

TEST_CASE("SVG output is byte-stable across repeated renders") {
    Series s{"sweep", {1.0, 10.0, 100.0}, {3.0, 2.0, 1.0}};
    PlotStyle style;
    style.log_x = true;
    std::ostringstream a, b;
    write_svg({&s, 1}, style, a);
    write_svg({&s, 1}, style, b);
    CHECK(a.str() == b.str());
}
