#include <doctest.h>

#include <cstdlib>
#include <cstring>
#include <random>

#include <json.hpp>

#include "hcfix/io.hpp"

using namespace hcfix;

TEST_CASE("format_double: 17 significant digits round-trip bit-exactly") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> mant(-1.0, 1.0);
    std::uniform_int_distribution<int> expo(-30, 30);
    for (int k = 0; k < 2000; ++k) {
        const double v = std::ldexp(mant(rng), expo(rng));
        const std::string s = format_double(v);
        const double back = std::strtod(s.c_str(), nullptr);
        CHECK(std::memcmp(&v, &back, sizeof v) == 0);
    }
    CHECK(format_double(0.1) == "0.10000000000000001");
    CHECK(format_double(125.0) == "125");
}

TEST_CASE("csv_row: comma delimiter, newline terminated") {
    CHECK(csv_row({"a", "b", "c"}) == "a,b,c\n");
    CHECK(csv_row({"1"}) == "1\n");
}

TEST_CASE("to_json: parses back with bit-identical coordinates") {
    OutputRecord rec;
    rec.command = "fixpoints";
    rec.theta = 6.0;
    rec.ell1 = rec.ell2 = 90.0;
    RegionRecord region;
    region.formula = "A1,2";
    region.computed = "A1,2";
    region.diag_count = 1;
    region.offdiag_count = 2;
    region.agreement = true;
    rec.region = region;
    rec.fixed_points.push_back({"diagonal", 17.450610967222239, 17.450610967222239, 3.55e-15});
    rec.fixed_points.push_back({"offdiag", 77.673395244851477, 0.012874421117393916, 1.7e-18});
    rec.lifted.push_back({17.450610967222239, 17.450610967222239,
                          {0.1938956774135804, 0.0969478387067902}, 2.2e-16});
    OracleCheckRecord oc;
    oc.match = true;
    oc.solver_points = 3;
    oc.oracle_points = 3;
    oc.max_mismatch = 7.1e-15;
    rec.oracle_check = oc;

    const std::string text = to_json(rec);
    const auto j = nlohmann::json::parse(text);

    CHECK(j["schema_version"] == "1");
    CHECK(j["command"] == "fixpoints");
    CHECK(j["params"]["theta"].get<double>() == 6.0);
    CHECK(j["region"]["formula"] == "A1,2");
    CHECK(j["region"]["agreement"] == true);
    REQUIRE(j["fixed_points"].size() == 2);
    CHECK(j["fixed_points"][0]["kind"] == "diagonal");

    const double x = j["fixed_points"][1]["x"].get<double>();
    const double expect = 77.673395244851477;
    CHECK(std::memcmp(&x, &expect, sizeof x) == 0);
    const double y = j["fixed_points"][1]["y"].get<double>();
    const double expect_y = 0.012874421117393916;
    CHECK(std::memcmp(&y, &expect_y, sizeof y) == 0);

    REQUIRE(j["lifted"].size() == 1);
    CHECK(j["lifted"][0]["entries"].size() == 2);
    CHECK(j["oracle_check"]["match"] == true);
    CHECK(j["oracle_check"]["solver_points"] == 3);
}

TEST_CASE("to_json: unassigned region and empty fixed points") {
    OutputRecord rec;
    rec.command = "classify";
    rec.theta = 10.0;
    rec.ell1 = rec.ell2 = 42.25;
    RegionRecord region;
    region.formula = std::nullopt;
    region.computed = "A1,2";
    region.diag_count = 1;
    region.offdiag_count = 2;
    region.on_boundary = {"L=(theta+3)^2/4"};
    region.agreement = true;  // unassigned formula does not count as disagreement
    rec.region = region;

    const auto j = nlohmann::json::parse(to_json(rec));
    CHECK(j["region"]["formula"] == "unassigned");
    CHECK(j["region"]["on_boundary"][0] == "L=(theta+3)^2/4");
    CHECK(j["fixed_points"].empty());
}
