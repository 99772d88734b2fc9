#include "prox/pei.hpp"

#include <doctest.h>

#include <cmath>

using namespace prox::pei;
using prox::babynames::NameKey;
using prox::babynames::NameRecord;
using prox::babynames::build_panel;
using prox::babynames::parse_national;
using prox::babynames::parse_state;

namespace {

const std::string kToyState = std::string(PROX_DATA_DIR) + "/toy_ssa/state";
const std::string kToyNational = std::string(PROX_DATA_DIR) + "/toy_ssa/national";

prox::babynames::NamePanel toy_panel() {
    auto records = parse_state(kToyState).records;
    const auto national = parse_national(kToyNational).records;
    records.insert(records.end(), national.begin(), national.end());
    return build_panel(records, 1985, 2000);
}

} // namespace

TEST_CASE("pei on a hand-built two-region example") {
    // zed seeds in CO in 1990. In 1991 Group A is CO plus its borders; ME is
    // outside. Totals are 200 births on each side, the name splits 30/10,
    // so the proximity-free expectation is 20 and PEI = 30/20 - 1 = 0.5.
    std::vector<NameRecord> records = {
        {"zed", 'M', "CO", 1990, 10},
        {"filler", 'M', "CO", 1990, 190},
        {"zed", 'M', "CO", 1991, 30},
        {"filler", 'M', "CO", 1991, 170},
        {"zed", 'M', "ME", 1991, 10},
        {"filler", 'M', "ME", 1991, 190},
    };
    const auto panel = build_panel(records, 1985, 2000);
    const auto graph = prox::adjacency::load_builtin();
    const NameKey zed{"zed", 'M'};

    const auto a = group_a_states(zed, 1991, panel, graph);
    CHECK(a == std::set<std::string>{"CO", "KS", "NE", "NM", "OK", "UT", "WY"});

    const auto point = compute_pei(zed, 1991, panel, graph);
    CHECK(point.n_i_a == 30);
    CHECK(point.n_i_b == 10);
    CHECK(point.tot_a == 200);
    CHECK(point.tot_b == 200);
    CHECK(point.group_a_size == 7);
    CHECK(point.pei == doctest::Approx(0.5).epsilon(1e-14));

    // Before any seeding the index is undefined.
    CHECK_THROWS_WITH_AS(compute_pei(zed, 1990, panel, graph),
                         doctest::Contains("not yet seeded"), std::runtime_error);
    // Defined-group but zero-count years are undefined too.
    std::vector<NameRecord> with_gap = records;
    with_gap.push_back({"filler", 'M', "CO", 1992, 200});
    const auto gap_panel = build_panel(with_gap, 1985, 2000);
    CHECK_THROWS_WITH_AS(compute_pei(zed, 1992, gap_panel, graph),
                         doctest::Contains("zero count"), std::runtime_error);
}

TEST_CASE("saturated group A gives exactly zero") {
    // Only CO and KS report data and KS borders CO, so Group A covers every
    // reporting state: no proximity signal is measurable.
    std::vector<NameRecord> records = {
        {"zed", 'M', "CO", 1990, 10},
        {"filler", 'M', "CO", 1990, 90},
        {"zed", 'M', "CO", 1991, 20},
        {"filler", 'M', "CO", 1991, 80},
        {"zed", 'M', "KS", 1991, 5},
        {"filler", 'M', "KS", 1991, 95},
    };
    const auto panel = build_panel(records, 1985, 2000);
    const auto graph = prox::adjacency::load_builtin();
    const auto point = compute_pei({"zed", 'M'}, 1991, panel, graph);
    CHECK(point.tot_b == 0);
    CHECK(point.n_i_b == 0);
    CHECK(point.pei == 0.0);
}

TEST_CASE("toy corpus reproduces the hand-computed indices") {
    const auto panel = toy_panel();
    const auto graph = prox::adjacency::load_builtin();

    // kaden: seeded in CO in 1991; 1992 counts 30 (CO) + 10 (KS, in A) vs
    // 5 (ME); totals 400 vs 200 -> 40 / (2/3 * 45) - 1 = 1/3.
    const auto kaden = compute_pei({"kaden", 'M'}, 1992, panel, graph);
    CHECK(kaden.n_i_a == 40);
    CHECK(kaden.n_i_b == 5);
    CHECK(kaden.tot_a == 400);
    CHECK(kaden.tot_b == 200);
    CHECK(kaden.pei == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // zoe: seeded in ME in 1991; Group A = {ME, NH}; 25 vs 20 with totals
    // 200 vs 400 -> 25 / (1/3 * 45) - 1 = 2/3.
    const auto zoe = compute_pei({"zoe", 'F'}, 1992, panel, graph);
    CHECK(zoe.n_i_a == 25);
    CHECK(zoe.n_i_b == 20);
    CHECK(zoe.tot_a == 200);
    CHECK(zoe.tot_b == 400);
    CHECK(zoe.group_a_size == 2);
    CHECK(zoe.pei == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("series over the toy corpus") {
    const auto panel = toy_panel();
    const auto graph = prox::adjacency::load_builtin();
    const auto series = compute_series(panel, graph, 1990, 1992);

    // bob and ann are left-censored (first year == window start) and drop
    // out; kaden and zoe first appear in 1991 and contribute only 1992.
    REQUIRE(series.points.size() == 2);
    for (const auto& p : series.points) {
        CHECK(p.year == 1992);
        CHECK(p.pei >= -1.0);
        CHECK(p.n_i_a + p.n_i_b == panel.state_sum({p.name, p.sex}, p.year));
        CHECK(p.tot_a + p.tot_b == 600); // all reported births accounted for
    }
    REQUIRE(series.aggregates.size() == 1);
    CHECK(series.aggregates[0].year == 1992);
    CHECK(series.aggregates[0].median == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(series.aggregates[0].count == 2);

    // A window with no eligible names errors out loudly.
    CHECK_THROWS_WITH_AS(compute_series(panel, graph, 1992, 1992),
                         doctest::Contains("no eligible names"), std::runtime_error);
}

TEST_CASE("cohort rules") {
    const auto panel = toy_panel();
    const auto inside = eligible_names(panel, 1990, 1992);
    CHECK(inside.size() == 2); // kaden, zoe

    const auto all = eligible_names(panel, 1990, 1992, CohortRule::nonempty_group_a);
    CHECK(all.size() == 4); // bob and ann are back in

    const auto late = eligible_names(panel, 1990, 1992, CohortRule::first_after_year, 1991);
    CHECK(late.empty());
    const auto after_90 = eligible_names(panel, 1990, 1992, CohortRule::first_after_year, 1990);
    CHECK(after_90.size() == 2);

    CHECK(std::string(cohort_rule_name(CohortRule::first_inside_window)) ==
          "first-inside-window");
}

TEST_CASE("yearly aggregate uses order statistics, not means") {
    std::vector<PeiPoint> points;
    for (double v : {0.1, 0.2, 0.3, 50.0}) {
        PeiPoint p{};
        p.year = 1993;
        p.pei = v;
        points.push_back(p);
    }
    const auto row = yearly_aggregate(points, 1993);
    CHECK(row.median == doctest::Approx(0.25)); // the outlier barely moves it
    CHECK(row.percentiles.at(25.0) == doctest::Approx(0.175));
    CHECK(row.percentiles.at(75.0) == doctest::Approx(12.725));
    CHECK(row.count == 4);
    CHECK_THROWS(yearly_aggregate(points, 1990));
}

TEST_CASE("breakpoint test on crafted yearly medians") {
    PeiSeries series;
    const int years[] = {1991, 1992, 1993, 1995, 1996, 1997};
    const double values[] = {1, 2, 3, 4, 5, 6};
    for (int k = 0; k < 6; ++k) {
        PeiPoint p{};
        p.year = years[k];
        p.pei = values[k];
        series.points.push_back(p);
        series.aggregates.push_back(yearly_aggregate(series.points, years[k]));
    }

    const auto medians = breakpoint_test(series, 1995);
    CHECK(medians.n_pre == 3);
    CHECK(medians.n_post == 3);
    CHECK(medians.mean_pre == doctest::Approx(2.0));
    CHECK(medians.mean_post == doctest::Approx(5.0));
    CHECK(medians.t == doctest::Approx(-3.674).epsilon(1e-3));
    CHECK(medians.dof == doctest::Approx(4.0).epsilon(1e-12));
    CHECK_FALSE(medians.pooled);

    const auto pooled = breakpoint_test(series, 1995, true);
    CHECK(pooled.pooled);
    CHECK(pooled.t == doctest::Approx(medians.t).epsilon(1e-9)); // one point per year here

    CHECK_THROWS(breakpoint_test(series, 1992));
}

TEST_CASE("state shares") {
    const auto panel = toy_panel();
    const auto shares = name_share_by_state({"kaden", 'M'}, 1992, panel);
    CHECK(shares.at("CO") == doctest::Approx(0.15)); // 30 of 200
    CHECK(shares.at("KS") == doctest::Approx(0.05));
    CHECK(shares.at("ME") == doctest::Approx(0.025));
    CHECK(shares.at("WY") == 0.0); // no data, defined as zero
    CHECK(shares.size() == 51);
}
