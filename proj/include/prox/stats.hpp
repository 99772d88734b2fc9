#ifndef PROX_STATS_HPP
#define PROX_STATS_HPP

#include <Eigen/Dense>

#include <algorithm>
#include <vector>

namespace prox::stats {

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double correlation = 0.0; // Pearson R of (x, y)
    double slope_stderr = 0.0;
    int n = 0;
};

// Ordinary least squares of y on x. Requires x.size() == y.size() >= 2.
// slope_stderr is the usual residual-based standard error (0 when n == 2).
LinearFit least_squares(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

double pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// Sorts a copy. Even count: mean of the two central values.
double median(std::vector<double> values);

// Linear-interpolation percentile, p in [0, 100]. percentile(v, 50) == median(v).
double percentile(std::vector<double> values, double p);

double mean(const std::vector<double>& values);
double sample_variance(const std::vector<double>& values);

struct WelchResult {
    double mean_a = 0.0;
    double mean_b = 0.0;
    double t = 0.0;
    double dof = 0.0; // Welch-Satterthwaite
    double p_two_sided = 1.0;
};

// Welch two-sample t-test; each side needs >= 2 values and the pooled
// variance must be nonzero.
WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b);

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided tail probability of Student's t with (possibly fractional) dof.
double student_t_two_sided_p(double t, double dof);

// Kolmogorov-Smirnov statistic of a sample against a CDF.
template <typename Cdf>
double ks_statistic(std::vector<double> values, Cdf cdf) {
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    double d = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
        double f = cdf(values[i]);
        double lo = static_cast<double>(i) / n;
        double hi = static_cast<double>(i + 1) / n;
        d = std::max(d, std::max(f - lo, hi - f));
    }
    return d;
}

} // namespace prox::stats

#endif
