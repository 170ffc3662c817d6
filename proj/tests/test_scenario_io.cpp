#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include "uavnoma/scenario_io.hpp"

using namespace uavnoma;
using nlohmann::json;

TEST_CASE("round trip")
{
    Scenario s = with_random_users(Scenario{}, 3);
    s.rate_c = 1.7;
    s.m_cu = 4;
    s.p_max2_dbm = 27.5;
    const json j = scenario_to_json(s);
    const Scenario back = scenario_from_json(j);
    CHECK(scenario_to_json(back) == j);
    CHECK(back.topology.pos_e == s.topology.pos_e);
    CHECK(back.m_cu == 4);
}

TEST_CASE("partial documents keep defaults")
{
    const Scenario s = scenario_from_json(json::parse(R"({"rate_e": 0.2})"));
    CHECK(s.rate_e == 0.2);
    CHECK(s.rate_c == Scenario{}.rate_c);

    const Scenario t = scenario_from_json(
        json::parse(R"({"topology": {"pos_c": [6, 8, 0], "pos_f": [0, 0, 0]}})"));
    CHECK(t.topology.mobility_radius == doctest::Approx(5.0));
}

TEST_CASE("bad documents")
{
    CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"rate_x": 1})")), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"topology": {"pos_z": [0,0,0]}})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"rate_c": "fast"})")), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"m_cu": 2.5})")), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"topology": {"pos_c": [1, 2]}})")),
                    std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json(json::parse(R"({"xi_u": 2})")), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json(json::parse("[1, 2]")), std::invalid_argument);
    CHECK_THROWS_AS(load_scenario("/nonexistent/scenario.json"), std::invalid_argument);

    const std::string path = "scenario_io_bad.json";
    std::ofstream(path) << "{ not json";
    CHECK_THROWS_AS(load_scenario(path), std::invalid_argument);
    std::ofstream(path) << R"({"theta1": 0.25})";
    CHECK(load_scenario(path).theta1 == 0.25);
    std::remove(path.c_str());
}

TEST_CASE("CSV layout")
{
    std::ostringstream os;
    CsvWriter w(os, {{"seed", "4"}, {"rate_c", "1.0"}}, {"x", "n", "tag"});
    w.row({1.0 / 3.0, std::int64_t{12}, std::string("adm")});
    w.row({1e-7, std::int64_t{-1}, std::string("d1")});
    CHECK(os.str() == "# schema=1\n# seed=4\n# rate_c=1.0\nx,n,tag\n"
                      "0.333333333,12,adm\n1e-07,-1,d1\n");
    CHECK_THROWS_AS(w.row({1.0}), std::invalid_argument);

    const auto meta = scenario_meta(Scenario{});
    bool has_nested = false;
    for (const auto& [k, v] : meta) has_nested = has_nested || k == "topology.mobility_radius";
    CHECK(has_nested);
}
