#include "prox/powerlaw.hpp"

#include "prox/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <vector>

using namespace prox::powerlaw;

namespace {

// Composite Simpson on [a, b].
double simpson(const std::function<double(double)>& f, double a, double b, int panels) {
    const double h = (b - a) / (2 * panels);
    double s = f(a) + f(b);
    for (int i = 1; i < 2 * panels; ++i)
        s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

} // namespace

TEST_CASE("quantile endpoints and midpoint") {
    CHECK(truncated_zipf_quantile(0.0, 2.0, 200.0) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(truncated_zipf_quantile(1.0, 2.0, 200.0) == doctest::Approx(200.0).epsilon(1e-14));
    CHECK(truncated_zipf_quantile(0.5, 2.0, 200.0) ==
          doctest::Approx(std::sqrt(2.0 * 200.0)).epsilon(1e-14));
    CHECK_THROWS(truncated_zipf_quantile(-0.1, 1.0, 2.0));
    CHECK_THROWS(truncated_zipf_quantile(0.5, 2.0, 1.0));
}

TEST_CASE("cdf and quantile are inverses") {
    for (double u : {0.01, 0.2, 0.5, 0.77, 0.99}) {
        const double r = truncated_zipf_quantile(u, 3.0, 3000.0);
        CHECK(truncated_zipf_cdf(r, 3.0, 3000.0) == doctest::Approx(u).epsilon(1e-12));
    }
    CHECK(truncated_zipf_cdf(1.0, 3.0, 3000.0) == 0.0);
    CHECK(truncated_zipf_cdf(9999.0, 3.0, 3000.0) == 1.0);
}

TEST_CASE("sampler matches the analytic cdf (KS)") {
    const auto s = sample_truncated_zipf(100000, 1.0, 1000.0, 17);
    CHECK(s.size() == 100000);
    for (double v : s.values) {
        CHECK(v >= 1.0);
        CHECK(v < 1000.0);
    }
    const double d = prox::stats::ks_statistic(
        s.values, [](double r) { return truncated_zipf_cdf(r, 1.0, 1000.0); });
    CHECK(d < 0.01);
}

TEST_CASE("density fit is exact when every log bin holds one point") {
    // With 20 geometric bins and one value per bin, the log-log density line
    // has slope exactly -1 up to the in-bin placement of the points. Placing
    // each value at the geometric center of its bin removes even that.
    DistanceSample s;
    s.label = "grid";
    const int nbins = 20;
    const double lo = 1.0;
    const double hi = 1000.0;
    const double step = std::log(hi / lo) / nbins;
    for (int k = 0; k < nbins; ++k)
        s.values.push_back(lo * std::exp((k + 0.5) * step));
    // fit_density derives its edges from min/max, so extend to the span ends.
    s.values.front() = lo;
    s.values.back() = hi;

    const auto fit = fit_density(s, {nbins});
    CHECK(fit.method == Method::density);
    CHECK(fit.n_used == 20);
    CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.02));
    CHECK(fit.correlation < -0.999);
}

TEST_CASE("density fit recovers the exponent on synthetic draws") {
    const auto s = sample_truncated_zipf(20000, 1.0, 1000.0, 3);
    const auto fit = fit_density(s);
    CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit.std_error > 0.0);
    CHECK(fit.std_error < 0.1);
    CHECK(fit.correlation < -0.99);
    CHECK(fit.zeros_excluded == 0);
}

TEST_CASE("density fit excludes zeros and counts them") {
    auto s = sample_truncated_zipf(5000, 1.0, 1000.0, 4);
    s.values.push_back(0.0);
    s.values.push_back(0.0);
    const auto fit = fit_density(s);
    CHECK(fit.zeros_excluded == 2);
    CHECK(fit.n_used == 5000);
}

TEST_CASE("density fit degenerate inputs") {
    CHECK_THROWS(fit_density(DistanceSample{{5.0, 5.0, 5.0}, "const"}));
    CHECK_THROWS(fit_density(DistanceSample{{1.0, 2.0}, "tiny"}));
    CHECK_THROWS(fit_density(DistanceSample{{-1.0, 2.0, 3.0}, "neg"}));
}

TEST_CASE("cumulative fit on an exact logarithmic grid") {
    // Values at the analytic quantiles of the midpoint grid make the
    // empirical CDF an exact linear function of log r.
    DistanceSample s;
    const int n = 200;
    for (int i = 0; i < n; ++i)
        s.values.push_back(truncated_zipf_quantile((i + 0.5) / n, 1.0, 100.0));
    const auto fit = fit_cumulative(s);
    CHECK(fit.correlation > 0.999);
    CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.02));
    CHECK(fit.slope == doctest::Approx(1.0 / std::log(100.0)).epsilon(0.01));
}

TEST_CASE("cumulative fit recovers the exponent on synthetic draws") {
    const auto s = sample_truncated_zipf(20000, 2.0, 500.0, 11);
    const auto fit = fit_cumulative(s);
    CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.05));
    CHECK(fit.correlation > 0.99);
    CHECK_THROWS(fit_cumulative(DistanceSample{{7.0, 7.0, 7.0}, "const"}));
}

TEST_CASE("rank fit is exact on an exact rank line") {
    // log r(n) = A - B n exactly.
    DistanceSample s;
    const double a = 10.0;
    const double b = 0.01;
    const int n = 500;
    for (int i = 1; i <= n; ++i)
        s.values.push_back(std::exp(a - b * i));
    const auto fit = fit_rank(s);
    CHECK(fit.rank_a == doctest::Approx(a).epsilon(1e-9));
    CHECK(fit.rank_b == doctest::Approx(b).epsilon(1e-9));
    CHECK(fit.correlation == doctest::Approx(-1.0).epsilon(1e-9));
    CHECK_FALSE(fit.rank_b_degenerate);
    CHECK(fit.exponent == doctest::Approx(1.0).epsilon(0.02));
}

TEST_CASE("rank fit flags a non-decaying sample instead of erroring") {
    const auto fit = fit_rank(DistanceSample{{5.0, 5.0, 5.0, 5.0}, "const"});
    CHECK(fit.rank_b_degenerate);
    CHECK(std::isnan(fit.exponent));
}

TEST_CASE("rank correlation is strong on synthetic draws") {
    for (std::uint64_t seed : {21, 22, 23}) {
        const auto s = sample_truncated_zipf(5000, 1.0, 1000.0, seed);
        const auto fit = fit_rank(s);
        CHECK(fit.correlation < -0.98);
        CHECK(fit.rank_b * static_cast<double>(fit.n_used) ==
              doctest::Approx(std::log(1000.0)).epsilon(0.05));
    }
}

TEST_CASE("density from rank: values, normalization, monotone cdf") {
    DistanceSample s;
    const double a = 10.0;
    const double b = 0.01;
    const int n = 500;
    for (int i = 1; i <= n; ++i)
        s.values.push_back(std::exp(a - b * i));
    const auto fit = fit_rank(s);
    const auto d = density_from_rank(fit, fit.n_used);

    // f(r) = 1/(B N r); at r = e with B N = 5 that is 1/(5 e).
    CHECK(b * n == doctest::Approx(5.0).epsilon(1e-9));
    CHECK(d.density(std::exp(1.0)) == doctest::Approx(1.0 / (5.0 * std::exp(1.0))).epsilon(1e-6));

    // The implied density integrates to one over its own support.
    const double mass = simpson([&](double r) { return d.density(r); }, d.r_min, d.r_max, 20000);
    CHECK(mass == doctest::Approx(1.0).epsilon(1e-6));
    CHECK(d.cdf(d.r_min) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(d.cdf(d.r_max) == doctest::Approx(1.0).epsilon(1e-9));
    for (double r = d.r_min * 1.01; r < d.r_max; r *= 1.3)
        CHECK(d.cdf(r * 1.3) > d.cdf(r));

    CHECK_THROWS(density_from_rank(fit, 0));
    PowerLawFit wrong;
    wrong.method = Method::density;
    CHECK_THROWS(density_from_rank(wrong, 10));
}

TEST_CASE("mle closed form on an analytic sample") {
    // All values at r_min * e give sum(ln(x/r_min)) = n, so alpha = 2 and the
    // standard error is (alpha - 1)/sqrt(n) = 1/10 for n = 100.
    DistanceSample s;
    for (int i = 0; i < 100; ++i)
        s.values.push_back(3.0 * std::exp(1.0));
    const auto fit = fit_mle(s, 3.0);
    CHECK(fit.exponent == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(fit.std_error == doctest::Approx(0.1).epsilon(1e-12));
    CHECK(fit.n_used == 100);
}

TEST_CASE("mle filter keeps values strictly above r_min and within r_max") {
    DistanceSample s{{1.0, 2.0, 4.0, 8.0, 100.0}, "filter"};
    const auto fit = fit_mle(s, 1.0, 10.0);
    CHECK(fit.n_used == 3); // 2, 4, 8
    CHECK_THROWS(fit_mle(s, 200.0, 300.0));
    CHECK_THROWS(fit_mle(s, -1.0));
    CHECK_THROWS(fit_mle(s, 5.0, 5.0));
}

TEST_CASE("mle is scale invariant") {
    const auto s = sample_pareto(2000, 2.5, 1.0, 9);
    DistanceSample scaled;
    for (double v : s.values) scaled.values.push_back(v * 1000.0);
    const auto a = fit_mle(s, 1.0);
    const auto b = fit_mle(scaled, 1000.0);
    CHECK(a.exponent == doctest::Approx(b.exponent).epsilon(1e-12));
    CHECK(a.exponent == doctest::Approx(2.5).epsilon(0.05));
}

TEST_CASE("mle default r_min is the smallest positive value") {
    DistanceSample s{{0.0, 2.0, 4.0, 8.0}, "default"};
    const auto fit = fit_mle(s);
    CHECK(fit.r_min == 2.0);
    CHECK(fit.n_used == 2); // 4 and 8, strictly above r_min
    CHECK(fit.zeros_excluded == 1);
}

TEST_CASE("truncated mle recovers exponent 1 where the closed form cannot") {
    const auto s = sample_truncated_zipf(50000, 1.0, 1000.0, 31);
    const auto truncated = fit_mle(s, 1.0, 1000.0);
    CHECK(truncated.exponent == doctest::Approx(1.0).epsilon(0.03));
    CHECK(truncated.std_error > 0.0);
    CHECK(truncated.std_error < 0.05);

    // The untruncated estimator on the same draws is biased upward by
    // roughly 2/ln(r_max/r_min); make sure the bias is real and avoided.
    const auto open = fit_mle(s, 1.0);
    CHECK(open.exponent > 1.2);
}

TEST_CASE("all four estimators agree within 15 percent across seeds") {
    int worst_count = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        const auto s = sample_truncated_zipf(2000, 1.0, 1000.0, seed);
        const double e_density = fit_density(s).exponent;
        const double e_cum = fit_cumulative(s).exponent;
        const double e_rank = fit_rank(s).exponent;
        const double e_mle = fit_mle(s, 1.0, 1000.0).exponent;
        for (double e : {e_density, e_cum, e_rank, e_mle})
            if (e < 0.85 || e > 1.15) ++worst_count;
    }
    CHECK(worst_count == 0);
}

TEST_CASE("sample io round trip") {
    DistanceSample s;
    s.label = "io-check";
    s.values = {0.0, 1.5, 2.25, 1e-3, 123456.789};
    const std::string path = "/tmp/prox_powerlaw_io.txt";
    write_sample(path, s);
    const auto back = read_sample(path);
    CHECK(back.label == "io-check");
    REQUIRE(back.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i)
        CHECK(back.values[i] == s.values[i]); // bit-exact via 17 digits

    CHECK_THROWS(read_sample("/nonexistent/sample.txt"));
    std::FILE* f = std::fopen("/tmp/prox_powerlaw_bad.txt", "w");
    std::fputs("1.0\nnot-a-number\n", f);
    std::fclose(f);
    CHECK_THROWS(read_sample("/tmp/prox_powerlaw_bad.txt"));
}
