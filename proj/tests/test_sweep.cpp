#include <doctest.h>

#include <algorithm>

#include "qrep/sweep.hpp"

using namespace qrep;

TEST_CASE("range parsing") {
    const auto r = parse_range("0:0.1:0.05");
    REQUIRE(r.size() == 3);
    CHECK(r[2] == doctest::Approx(0.1));
    CHECK(parse_range("0.3:0.3:1").size() == 1);
    CHECK(parse_range("0:0.3:0.1").size() == 4);  // 0.3 survives rounding
    CHECK_THROWS(parse_range("0:1"));
    CHECK_THROWS(parse_range("0:1:0"));
    CHECK_THROWS(parse_range("1:0:0.1"));
    CHECK_THROWS(parse_range("a:1:0.1"));
}

TEST_CASE("number formatting uses 12 significant digits") {
    CHECK(format_number(0.1) == "0.1");
    CHECK(format_number(1.0 / 3.0) == "0.333333333333");
    CHECK(format_number(0.0) == "0");
    CHECK(format_number(1.5e-9) == "1.5e-09");
}

TEST_CASE("CSV rows carry every column") {
    const auto header = csv_header();
    const auto cols = std::count(header.begin(), header.end(), ',') + 1;
    CHECK(cols == 14);

    SweepPoint golden;
    golden.params = {0.98, 0.02, 0.0};
    const auto g = csv_row(evaluate(golden));
    CHECK(std::count(g.begin(), g.end(), ',') + 1 == cols);
    CHECK(g.find(",coded,noisy,golden-only,") != std::string::npos);
    CHECK(g.find(",,,") != std::string::npos);  // r_gng, r_bad not applicable

    SweepPoint full = golden;
    full.mode = RateMode::aggregated(AggregationMode::FullInfo);
    const auto row = evaluate(full);
    CHECK(row.r_gng.has_value());
    CHECK(row.r_golden == doctest::Approx(evaluate(golden).r_golden).epsilon(1e-12));

    full.nesting = 2;
    CHECK_THROWS_AS(evaluate(full), std::invalid_argument);
}

TEST_CASE("parallel sweep output is deterministic and ordered") {
    std::vector<SweepPoint> grid;
    for (double b : parse_range("0:0.05:0.01")) {
        SweepPoint p;
        p.params.beta = b;
        p.nesting = 2;
        grid.push_back(p);
    }
    const auto serial = run_sweep(grid, 1);
    const auto parallel = run_sweep(grid, 3);
    REQUIRE(serial.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        CHECK(csv_row(serial[i]) == csv_row(parallel[i]));
        CHECK(serial[i].point.params.beta == grid[i].params.beta);
    }
    grid.back().params.beta = 2.0;
    CHECK_THROWS(run_sweep(grid, 2));
}

TEST_CASE("option parsing helpers") {
    CHECK(parse_encoder("full") == EncoderMode::Full);
    CHECK(parse_mode("golden-only").golden_only);
    CHECK(parse_mode("swap-only").mode == AggregationMode::SwapOnly);
    CHECK(parse_vary("f0") == VaryParam::F0);
    CHECK_THROWS(parse_encoder("perfect"));
    CHECK_THROWS(parse_mode("all"));
}
