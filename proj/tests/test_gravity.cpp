#include "prox/gravity.hpp"

#include "prox/powerlaw.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace prox::gravity;

namespace {

GravityConfig base_config() {
    GravityConfig c;
    c.population = 5000;
    c.region = RegionKind::torus;
    c.extent_km = 1000.0;
    c.mass_model = MassModel::identical;
    c.g_constant = 169.0;
    c.r_floor_km = 13.0;
    c.seed = 7;
    return c;
}

} // namespace

TEST_CASE("config json round trip") {
    GravityConfig c = base_config();
    c.mass_model = MassModel::lognormal;
    c.lognormal_mu = 0.25;
    c.lognormal_sigma = 0.75;
    c.seed = 99;
    const auto back = config_from_json(config_to_json(c));
    CHECK(back.population == c.population);
    CHECK(back.region == c.region);
    CHECK(back.extent_km == c.extent_km);
    CHECK(back.mass_model == c.mass_model);
    CHECK(back.lognormal_mu == c.lognormal_mu);
    CHECK(back.lognormal_sigma == c.lognormal_sigma);
    CHECK(back.g_constant == c.g_constant);
    CHECK(back.r_floor_km == c.r_floor_km);
    CHECK(back.seed == c.seed);
}

TEST_CASE("config rejects bad values") {
    CHECK_THROWS(config_from_json(R"({"population":1,"region":{"kind":"torus","side_km":10},"g":1})"));
    CHECK_THROWS(config_from_json(R"({"population":10,"region":{"kind":"cube","side_km":10},"g":1})"));
    CHECK_THROWS(config_from_json(R"({"population":10,"region":{"kind":"torus","side_km":10},"g":-1})"));
    CHECK_THROWS(config_from_json("not json"));
    CHECK_THROWS(config_from_json_file("/nonexistent/config.json"));

    GravityConfig c = base_config();
    c.r_floor_km = 0.0;
    CHECK_THROWS(c.validate());
}

TEST_CASE("bundled config parses") {
    const auto c = config_from_json_file(std::string(PROX_DATA_DIR) + "/configs/torus-5000.json");
    CHECK(c.population == 5000);
    CHECK(c.region == RegionKind::torus);
    CHECK(c.extent_km == 1000.0);
    CHECK(c.g_constant == 169.0);
    CHECK(c.r_floor_km == 13.0);
    CHECK(c.seed == 7);
}

TEST_CASE("torus distance") {
    const double side = 1000.0;
    Eigen::RowVector2d a(0.0, 0.0);
    Eigen::RowVector2d b(999.0, 0.0);
    CHECK(torus_distance(a, b, side) == doctest::Approx(1.0).epsilon(1e-12)); // wraps
    CHECK(torus_distance(a, b, side) == torus_distance(b, a, side));

    Eigen::RowVector2d c(300.0, 400.0);
    CHECK(torus_distance(a, c, side) == doctest::Approx(500.0).epsilon(1e-12));

    // Bounded by the half-diagonal; invariant under translation mod side.
    Eigen::RowVector2d far(500.0, 500.0);
    CHECK(torus_distance(a, far, side) == doctest::Approx(side * M_SQRT1_2).epsilon(1e-12));
    for (double shift : {100.0, 737.0}) {
        Eigen::RowVector2d a2 = a.array() + shift;
        Eigen::RowVector2d c2 = c.array() + shift;
        a2[0] = std::fmod(a2[0], side);
        a2[1] = std::fmod(a2[1], side);
        c2[0] = std::fmod(c2[0], side);
        c2[1] = std::fmod(c2[1], side);
        CHECK(torus_distance(a2, c2, side) ==
              doctest::Approx(torus_distance(a, c, side)).epsilon(1e-9));
    }
}

TEST_CASE("link probability clamps at one") {
    GravityConfig c = base_config();
    CHECK(link_probability(c, 1.0, 1.0, 13.0) == 1.0);     // r^2 = G
    CHECK(link_probability(c, 1.0, 1.0, 5.0) == 1.0);      // inside the clamp
    CHECK(link_probability(c, 1.0, 1.0, 26.0) == doctest::Approx(0.25));
    CHECK(link_probability(c, 2.0, 3.0, 26.0) == doctest::Approx(1.0)); // mass amplifies
}

TEST_CASE("zero G yields zero links") {
    GravityConfig c = base_config();
    c.population = 200;
    c.g_constant = 0.0;
    const auto sample = simulate(c);
    CHECK(sample.links.empty());
    CHECK(sample.pairs_evaluated == 200u * 199u / 2u);
}

TEST_CASE("two-body link frequency matches the analytic probability") {
    GravityConfig c;
    c.population = 2;
    c.region = RegionKind::torus;
    c.extent_km = 1000.0;
    c.g_constant = 2000.0; // p = 2000 / 100^2 = 0.2 at r = 100
    c.r_floor_km = 1.0;

    Eigen::MatrixX2d pos(2, 2);
    pos << 0.0, 0.0, 100.0, 0.0;
    Eigen::VectorXd masses = Eigen::VectorXd::Ones(2);

    const int trials = 10000;
    int hits = 0;
    for (int s = 0; s < trials; ++s) {
        c.seed = static_cast<std::uint64_t>(s);
        const auto sample = link_pass(pos, masses, c);
        CHECK(sample.pairs_evaluated == 1);
        hits += static_cast<int>(sample.links.size());
    }
    const double p = 0.2;
    const double se = std::sqrt(p * (1.0 - p) / trials);
    CHECK(std::fabs(hits / double(trials) - p) < 3.0 * se);
}

TEST_CASE("pairs below the floor are skipped and counted") {
    GravityConfig c = base_config();
    c.population = 3;
    c.g_constant = 1e9; // would always link if evaluated
    Eigen::MatrixX2d pos(3, 2);
    pos << 0.0, 0.0, 5.0, 0.0, 500.0, 0.0; // first pair at r = 5 < floor 13
    Eigen::VectorXd masses = Eigen::VectorXd::Ones(3);
    const auto sample = link_pass(pos, masses, c);
    CHECK(sample.pairs_below_floor == 1);
    CHECK(sample.links.size() == 2);
}

TEST_CASE("simulation is deterministic for a fixed seed") {
    GravityConfig c = base_config();
    c.population = 300;
    const auto a = simulate(c);
    const auto b = simulate(c);
    REQUIRE(a.links.size() == b.links.size());
    for (std::size_t k = 0; k < a.links.size(); ++k) {
        CHECK(a.links[k].i == b.links[k].i);
        CHECK(a.links[k].j == b.links[k].j);
        CHECK(a.links[k].distance_km == b.links[k].distance_km);
    }
    c.seed = 8;
    const auto other = simulate(c).distances().values;
    CHECK(other != a.distances().values); // a different seed moves everything
}

TEST_CASE("mean link count over seeds matches the sum of pair probabilities") {
    GravityConfig c = base_config();
    c.population = 200;
    const auto pos = generate_positions(c);
    const auto masses = generate_masses(c);

    double expected = 0.0;
    double var = 0.0;
    for (int i = 0; i < c.population; ++i)
        for (int j = i + 1; j < c.population; ++j) {
            const double r = torus_distance(pos.row(i), pos.row(j), c.extent_km);
            if (r < c.r_floor_km) continue;
            const double p = link_probability(c, masses[i], masses[j], r);
            expected += p;
            var += p * (1.0 - p);
        }

    const int trials = 200;
    double total = 0.0;
    for (int s = 0; s < trials; ++s) {
        c.seed = 1000 + static_cast<std::uint64_t>(s);
        total += static_cast<double>(link_pass(pos, masses, c).links.size());
    }
    const double se = std::sqrt(var / trials);
    CHECK(std::fabs(total / trials - expected) < 3.0 * se);
}

TEST_CASE("analytic density shape") {
    GravityConfig c = base_config();
    // Above the clamp radius (sqrt(G) = 13 = r_floor here) f is proportional
    // to 1/r: doubling r halves f.
    CHECK(analytic_f(c, 100.0) == doctest::Approx(2.0 * analytic_f(c, 200.0)).epsilon(1e-12));

    // With a small G the clamp region is visible and f grows linearly in r.
    GravityConfig small = c;
    small.r_floor_km = 1.0;
    small.g_constant = 100.0; // clamp radius 10
    CHECK(analytic_f(small, 4.0) == doctest::Approx(2.0 * analytic_f(small, 2.0)).epsilon(1e-12));
    // Continuity across the clamp radius.
    CHECK(analytic_f(small, 10.0 - 1e-9) ==
          doctest::Approx(analytic_f(small, 10.0 + 1e-9)).epsilon(1e-6));

    CHECK_THROWS(analytic_f(c, 13.0));  // at the floor
    CHECK_THROWS(analytic_f(c, 500.0)); // at side/2
    GravityConfig disc = c;
    disc.region = RegionKind::disc;
    CHECK_THROWS(analytic_f(disc, 100.0));
    GravityConfig lognormal = c;
    lognormal.mass_model = MassModel::lognormal;
    CHECK_THROWS(analytic_f(lognormal, 100.0));
}

TEST_CASE("simulated distances follow the analytic density (binned chi-square)") {
    const GravityConfig c = base_config();
    const auto sample = simulate(c);
    CHECK(sample.links.size() > 30000);

    // 20 geometric bins on [14, 450], strictly inside the valid window.
    const int nbins = 20;
    const double lo = 14.0;
    const double hi = 450.0;
    const double step = std::log(hi / lo) / nbins;
    std::vector<double> observed(nbins, 0.0);
    for (const auto& link : sample.links) {
        if (link.distance_km <= lo || link.distance_km >= hi) continue;
        auto k = static_cast<int>(std::log(link.distance_km / lo) / step);
        if (k >= 0 && k < nbins) observed[static_cast<std::size_t>(k)] += 1.0;
    }

    double chi2 = 0.0;
    for (int k = 0; k < nbins; ++k) {
        const double e0 = lo * std::exp(k * step);
        const double e1 = lo * std::exp((k + 1) * step);
        // Simpson integral of the expected links-per-km over the bin.
        const double mid = 0.5 * (e0 + e1);
        const double expected =
            (e1 - e0) / 6.0 *
            (analytic_f(c, e0) + 4.0 * analytic_f(c, mid) + analytic_f(c, e1));
        CHECK(expected > 500.0);
        chi2 += (observed[static_cast<std::size_t>(k)] - expected) *
                (observed[static_cast<std::size_t>(k)] - expected) / expected;
    }
    CHECK(chi2 / nbins < 2.0);
}

TEST_CASE("simulated distances fit exponent one") {
    const GravityConfig c = base_config();
    const auto distances = simulate(c).distances();
    const double window_lo = std::max(c.r_floor_km, std::sqrt(c.g_constant));
    const double window_hi = c.extent_km / 4.0;
    const auto fit = prox::powerlaw::fit_mle(distances, window_lo, window_hi);
    CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.05));
    const auto density = prox::powerlaw::fit_density(distances);
    CHECK(density.correlation < -0.9);
}

TEST_CASE("lognormal masses have the configured moments") {
    GravityConfig c = base_config();
    c.population = 50000;
    c.mass_model = MassModel::lognormal;
    c.lognormal_mu = 0.2;
    c.lognormal_sigma = 0.5;
    const auto m = generate_masses(c);
    const double mean = m.mean();
    const double expected_mean = std::exp(c.lognormal_mu + 0.5 * c.lognormal_sigma *
                                          c.lognormal_sigma);
    CHECK(mean == doctest::Approx(expected_mean).epsilon(0.02));
    CHECK(m.minCoeff() > 0.0);
}

TEST_CASE("expected link count bounds the simulated count") {
    const GravityConfig c = base_config();
    const double expected = expected_link_count(c);
    const auto sample = simulate(c);
    // The closed form integrates the annulus out to the far corner, so it
    // overestimates but stays within a factor of ~1.5 of the truth.
    CHECK(expected >= static_cast<double>(sample.links.size()) * 0.95);
    CHECK(expected <= static_cast<double>(sample.links.size()) * 1.5);
}

TEST_CASE("memory cap rejects oversized runs up front") {
    GravityConfig c = base_config();
    c.max_expected_links = 100.0;
    CHECK_THROWS_WITH_AS(simulate(c), doctest::Contains("memory cap"), std::runtime_error);
}
