#include <cstdio>

#include "doctest.h"
#include "sdym/report.hpp"

using namespace sdym;

namespace {
RunConfig fast_config() {
    RunConfig cfg;
    cfg.jet_order = 5;
    cfg.lambda_order = 3;
    cfg.probe_count = 25;
    return cfg;
}
}  // namespace

TEST_CASE("config validation") {
    RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    RunConfig bad = cfg;
    bad.jet_order = 4;  // below lambda_order + 2
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = cfg;
    bad.alpha = 1.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = cfg;
    bad.circle_samples = 10;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

    bad = cfg;
    bad.n = 3;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("config file roundtrip and overrides") {
    const char* path = "test_config_tmp.json";
    {
        FILE* f = std::fopen(path, "w");
        std::fputs("{\"jet_order\": 5, \"seed\": 42, \"tolerances\": {\"symmetry\": 1e-7}}\n", f);
        std::fclose(f);
    }
    RunConfig cfg = RunConfig::from_json_file(path);
    CHECK(cfg.jet_order == 5);
    CHECK(cfg.seed == 42);
    CHECK(cfg.tol.symmetry == 1e-7);
    CHECK(cfg.tol.exact == 1e-10);  // untouched default
    std::remove(path);
}

TEST_CASE("sdym suite reports") {
    auto reports = check_sdym(fast_config());
    REQUIRE(reports.size() == 4);  // two fixtures, two backends each
    CHECK(all_pass(reports));
    for (const auto& r : reports) {
        CHECK(r.pass == (r.residual <= r.tolerance));
        CHECK(r.digest.size() == 16);
    }
    // canonical order
    for (size_t i = 1; i < reports.size(); ++i) CHECK(reports[i - 1].id < reports[i].id);
}

TEST_CASE("suite reports are byte-deterministic given the seed") {
    RunConfig cfg = fast_config();
    auto a = to_json_lines(check_rh(cfg), cfg.timing);
    auto b = to_json_lines(check_rh(cfg), cfg.timing);
    CHECK(a == b);
    CHECK(a.find("\"wall_ms\":0.0") != std::string::npos);

    cfg.seed += 1;
    auto c = to_json_lines(check_rh(cfg), cfg.timing);
    CHECK(a != c);  // seeded inputs differ, residuals differ
}

TEST_CASE("zero tolerance scale fails residual-bearing checks") {
    RunConfig cfg = fast_config();
    cfg.tolerance_scale = 0.0;
    auto reports = check_sdym(cfg);
    int failed = 0;
    for (const auto& r : reports)
        if (!r.pass) ++failed;
    CHECK(failed >= 3);  // everything with a nonzero rounding residual
    CHECK_FALSE(all_pass(reports));
}

TEST_CASE("corrupted fixtures fail the sdym suite") {
    const char* path = "test_bad_fixture_tmp.json";
    {
        FILE* f = std::fopen(path, "w");
        std::fputs(
            "[{\"family\": \"bpst\", \"n\": 2, \"center\": [0.1, -0.2, 0.3, 0.0], "
            "\"scale\": 1.3, \"anti\": true}]\n",
            f);
        std::fclose(f);
    }
    RunConfig cfg = fast_config();
    cfg.fixtures_path = path;
    auto reports = check_sdym(cfg);
    REQUIRE(reports.size() == 2);
    CHECK_FALSE(all_pass(reports));
    for (const auto& r : reports) CHECK(r.residual > r.tolerance);
    std::remove(path);
}

TEST_CASE("empty fixture list gives an empty report") {
    const char* path = "test_empty_fixture_tmp.json";
    {
        FILE* f = std::fopen(path, "w");
        std::fputs("[]\n", f);
        std::fclose(f);
    }
    RunConfig cfg = fast_config();
    cfg.fixtures_path = path;
    auto reports = check_sdym(cfg);
    CHECK(reports.empty());
    CHECK(all_pass(reports));
    std::remove(path);
}
