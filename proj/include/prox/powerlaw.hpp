#ifndef PROX_POWERLAW_HPP
#define PROX_POWERLAW_HPP

#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace prox::powerlaw {

// A bag of nonnegative link distances (km) with a provenance label.
struct DistanceSample {
    std::vector<double> values;
    std::string label;

    std::size_t size() const { return values.size(); }
    std::size_t zero_count() const;
    std::vector<double> nonzero() const;
    void validate() const; // finite, >= 0
};

enum class Method { density, cumulative, rank, mle };

const char* method_name(Method m);

struct PowerLawFit {
    Method method = Method::density;

    // Positive magnitude of the power-law exponent (Zipf => 1.0).
    double exponent = std::numeric_limits<double>::quiet_NaN();
    double std_error = 0.0;

    // Pearson R of the method's diagnostic regression; NaN for mle.
    double correlation = std::numeric_limits<double>::quiet_NaN();

    double r_min = 0.0; // truncation window of the fit
    double r_max = 0.0;

    // Raw regression line of the method (meaning depends on the method).
    double slope = std::numeric_limits<double>::quiet_NaN();
    double intercept = std::numeric_limits<double>::quiet_NaN();

    // Rank method: log r(n) = A - B n.
    double rank_a = std::numeric_limits<double>::quiet_NaN();
    double rank_b = std::numeric_limits<double>::quiet_NaN();
    bool rank_b_degenerate = false; // B <= 0; diagnostic, not an error

    std::size_t n_used = 0;
    std::size_t zeros_excluded = 0;
};

struct LogBinSpec {
    int bin_count = 20; // log-spaced bins over the nonzero span
};

// Least-squares line on (log bin-center, log bin-density); exponent is the
// negated slope. Zero distances are excluded from binning and counted.
PowerLawFit fit_density(const DistanceSample& sample, const LogBinSpec& bins = {});

// Empirical CDF F(r) regressed on log r over nonzero values (a truncated
// Zipf density has a logarithmic CDF, so R near 1 supports exponent 1).
PowerLawFit fit_cumulative(const DistanceSample& sample);

// Rank-distance: rank 1 = largest distance, least squares of log r(n) on n.
// rank_a / rank_b carry the fitted A and B of log r(n) = A - B n.
PowerLawFit fit_rank(const DistanceSample& sample);

// Closed-form density implied by a rank fit: f(r) = 1/(B N r) with
// CDF F(r) = 1 - A/(BN) + log(r)/(BN). The validity window is the fit's own
// implied support [exp(A - BN), exp(A)], over which F runs exactly 0 -> 1.
struct RankImpliedDensity {
    double a = 0.0;
    double b = 0.0;
    std::size_t n_total = 0;
    double r_min = 0.0;
    double r_max = 0.0;

    double density(double r) const;
    double cdf(double r) const;
};

RankImpliedDensity density_from_rank(const PowerLawFit& fit, std::size_t n_total);

// Maximum-likelihood exponent over values strictly above r_min. With an
// infinite r_max this is the closed form alpha = 1 + n / sum(ln(x/r_min)),
// std_error = (alpha - 1)/sqrt(n). With a finite r_max the likelihood of the
// truncated power law is maximized instead (the closed form is badly biased
// on bounded supports), and the standard error comes from the observed
// Fisher information.
PowerLawFit fit_mle(const DistanceSample& sample, double r_min,
                    double r_max = std::numeric_limits<double>::infinity());

// r_min defaults to the smallest strictly positive sample value.
PowerLawFit fit_mle(const DistanceSample& sample);

// i.i.d. inverse-CDF draws r = r_min (r_max/r_min)^u, u uniform on [0, 1).
DistanceSample sample_truncated_zipf(std::size_t n, double r_min, double r_max,
                                     std::uint64_t seed);

// Untruncated Pareto draws with exponent alpha > 1 above r_min.
DistanceSample sample_pareto(std::size_t n, double alpha, double r_min,
                             std::uint64_t seed);

// Analytic CDF of the truncated Zipf on [r_min, r_max].
double truncated_zipf_cdf(double r, double r_min, double r_max);

// Inverse CDF: u = 0 -> r_min, u -> 1 -> r_max, u = 0.5 -> geometric mean.
double truncated_zipf_quantile(double u, double r_min, double r_max);

// One distance per line, plain decimal text; optional "# label:" header.
DistanceSample read_sample(const std::string& path);
void write_sample(const std::string& path, const DistanceSample& sample);

} // namespace prox::powerlaw

#endif
