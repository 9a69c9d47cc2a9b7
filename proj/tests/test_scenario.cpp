#include <doctest.h>

#include <stdexcept>

#include <sstream>
#include <string>
#include <vector>

#include "plpdim/scenario.hpp"

using namespace plpdim;

namespace {

std::string base_json(const std::string& traffic, const std::string& interference,
                      const std::string& study, int n_realizations = 60) {
    std::ostringstream s;
    s << R"({
      "radio": {"power_dbm": 30.0, "prop_const_db": 130.0, "pathloss_exponent": 3.5,
                "prb_bandwidth_hz": 180000.0, "mimo_layers": 2, "noise_dbm": -93.0,
                "sinr_threshold_db": -10.0, "n_max": 1000000},
      "geometry": {"radius_km": 0.6, "lambda_per_km": 5.0},
      "traffic": )" << traffic << R"(,
      "interference": )" << interference << R"(,
      "estimator": {"n_realizations": )" << n_realizations << R"(, "n_user_draws": 1, "seed": 3},
      "study": )" << study << "}";
    return s.str();
}

std::vector<std::string> csv_rows(const std::string& csv) {
    std::vector<std::string> rows;
    std::istringstream in(csv);
    std::string line;
    while (std::getline(in, line))
        if (!line.empty() && line[0] != '#') rows.push_back(line);
    return rows;
}

}  // namespace

TEST_CASE("parse: tau converts to delta via the mean-load identity") {
    const auto ls = scenario::parse(base_json(
        R"({"service_rate_bps": 1.0e6, "tau_bps": 8.0e6})", R"({"i_mw": 0.0})",
        R"({"type": "congestion", "m_grid": [0, 5, 10]})"));
    CHECK(ls.scenario.delta ==
          doctest::Approx(8e6 / (1e6 * 5.0 * std::numbers::pi * 0.36)).epsilon(1e-12));
    REQUIRE(ls.scenario.tau_bps.has_value());
    CHECK(*ls.scenario.tau_bps == 8e6);
    CHECK(ls.hash != 0);
}

TEST_CASE("parse: diagnostics name the offending key") {
    using Catch = std::invalid_argument;
    // unknown keys at several levels
    auto expect_mentions = [](const std::string& json, const std::string& needle) {
        try {
            scenario::parse(json);
            FAIL("expected parse failure");
        } catch (const Catch& ex) {
            CHECK(std::string(ex.what()).find(needle) != std::string::npos);
        }
    };
    expect_mentions(base_json(R"({"service_rate_bps": 1e6, "tau_bps": 8e6, "bogus": 1})",
                              R"({"i_mw": 0.0})",
                              R"({"type": "congestion", "m_grid": [1]})"),
                    "traffic.bogus");
    expect_mentions(base_json(R"({"service_rate_bps": 1e6, "tau_bps": 8e6})",
                              R"({"i_mw": 0.0, "im_db": 3.0})",
                              R"({"type": "congestion", "m_grid": [1]})"),
                    "interference");
    expect_mentions(base_json(R"({"tau_bps": 8e6})", R"({"i_mw": 0.0})",
                              R"({"type": "congestion", "m_grid": [1]})"),
                    "traffic.service_rate_bps");
    expect_mentions(base_json(R"({"service_rate_bps": 1e6, "tau_bps": 8e6})",
                              R"({"i_mw": 0.0})", R"({"type": "banana"})"),
                    "study.type");
    expect_mentions(base_json(R"({"service_rate_bps": 1e6, "tau_bps": 8e6,
                                  "delta_per_km": 1.0})",
                              R"({"i_mw": 0.0})",
                              R"({"type": "congestion", "m_grid": [1]})"),
                    "traffic");
    expect_mentions("{not json", "parse error");
}

TEST_CASE("parse: regions must partition the cell") {
    const char* study = R"({"type": "regions", "pi_target": 0.05, "tau_grid_bps": [5e6]})";
    CHECK_THROWS_AS(
        scenario::parse(base_json(
            R"({"service_rate_bps": 1e6})",
            R"({"regions": [{"inner_km": 0.0, "outer_km": 0.2, "im_db": 1.0},
                            {"inner_km": 0.3, "outer_km": 0.6, "im_db": 8.0}]})",
            study)),
        std::invalid_argument);
    CHECK_NOTHROW(scenario::parse(base_json(
        R"({"service_rate_bps": 1e6})",
        R"({"regions": [{"inner_km": 0.0, "outer_km": 0.2, "im_db": 1.0},
                        {"inner_km": 0.2, "outer_km": 0.6, "im_db": 8.0}]})",
        study)));
}

TEST_CASE("run_congestion: M = 0 row is (0,1,1,0) and reruns are byte-identical") {
    const auto ls = scenario::parse(base_json(
        R"({"service_rate_bps": 1.0e6, "tau_bps": 6.0e6})", R"({"i_mw": 0.0})",
        R"({"type": "congestion", "m_grid": [0, 4, 8, 16]})"));
    const std::string csv1 = scenario::run_congestion(ls);
    const std::string csv2 = scenario::run_congestion(ls);
    CHECK(csv1 == csv2);

    const auto rows = csv_rows(csv1);
    REQUIRE(rows.size() == 5);  // header + 4 data rows
    CHECK(rows[0] == "M,pi_analytic,pi_mc,mc_stderr");
    CHECK(rows[1] == "0,1,1,0");
}

TEST_CASE("run_study output is independent of the thread count") {
    auto ls = scenario::parse(base_json(
        R"({"service_rate_bps": 1.0e6, "tau_bps": 6.0e6})", R"({"i_mw": 0.0})",
        R"({"type": "congestion", "m_grid": [0, 4, 8]})"));
    ls.scenario.est.threads = 1;
    const std::string t1 = scenario::run_study("congestion", ls);
    ls.scenario.est.threads = 4;
    const std::string t4 = scenario::run_study("congestion", ls);
    // header hash covers only the scenario, not the thread count
    CHECK(t1 == t4);
}

TEST_CASE("run_compare: M = 0 row and header") {
    const auto ls = scenario::parse(base_json(
        R"({"service_rate_bps": 1.0e6, "tau_bps": 6.0e6})", R"({"i_mw": 0.0})",
        R"({"type": "compare", "m_grid": [0, 6, 12]})"));
    const auto rows = csv_rows(scenario::run_compare(ls));
    REQUIRE(rows.size() == 4);
    CHECK(rows[0] == "M,pi_cox,pi_ppp");
    CHECK(rows[1] == "0,1,1");
}

TEST_CASE("run_dimension: pi_target echoed per row") {
    const auto ls = scenario::parse(base_json(
        R"({"service_rate_bps": 1.0e6})", R"({"i_mw": 0.0})",
        R"({"type": "dimension", "pi_target": 0.05, "tau_grid_bps": [4e6, 8e6]})", 40));
    const auto rows = csv_rows(scenario::run_dimension(ls));
    REQUIRE(rows.size() == 3);
    CHECK(rows[0] == "tau_bps,pi_target,m_star,achieved_pi,ci_halfwidth,status");
    CHECK(rows[1].find(",0.05,") != std::string::npos);
    CHECK(rows[1].substr(rows[1].size() - 3) == ",ok");
}

TEST_CASE("run_regions: all regions and whole-cell comparisons present") {
    const auto ls = scenario::parse(base_json(
        R"({"service_rate_bps": 1.0e6})",
        R"({"regions": [{"inner_km": 0.0, "outer_km": 0.2, "im_db": 1.0},
                        {"inner_km": 0.2, "outer_km": 0.4, "im_db": 8.0},
                        {"inner_km": 0.4, "outer_km": 0.6, "im_db": 15.0}]})",
        R"({"type": "regions", "pi_target": 0.05, "tau_grid_bps": [5e6]})", 40));
    const std::string csv = scenario::run_regions(ls);
    for (const char* name :
         {"center,", "middle,", "edge,", "cell_interference,", "cell_noise_limited,"})
        CHECK(csv.find(name) != std::string::npos);
}

TEST_CASE("rehash changes with the effective seed") {
    auto ls = scenario::parse(base_json(
        R"({"service_rate_bps": 1.0e6, "tau_bps": 6.0e6})", R"({"i_mw": 0.0})",
        R"({"type": "congestion", "m_grid": [1]})"));
    const auto h0 = ls.hash;
    ls.scenario.est.seed = 999;
    scenario::rehash(ls);
    CHECK(ls.hash != h0);
}
