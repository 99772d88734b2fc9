#include "prox/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace prox::stats {

LinearFit least_squares(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    const auto n = x.size();
    if (n != y.size() || n < 2)
        throw std::invalid_argument("least_squares: need >= 2 paired points");

    const double mx = x.mean();
    const double my = y.mean();
    Eigen::VectorXd dx = x.array() - mx;
    Eigen::VectorXd dy = y.array() - my;
    const double sxx = dx.squaredNorm();
    if (sxx == 0.0)
        throw std::invalid_argument("least_squares: x has zero variance");

    LinearFit fit;
    fit.n = static_cast<int>(n);
    fit.slope = dx.dot(dy) / sxx;
    fit.intercept = my - fit.slope * mx;

    const double syy = dy.squaredNorm();
    fit.correlation = syy > 0.0 ? dx.dot(dy) / std::sqrt(sxx * syy) : 0.0;

    if (n > 2) {
        Eigen::VectorXd resid = dy - fit.slope * dx;
        const double s2 = resid.squaredNorm() / static_cast<double>(n - 2);
        fit.slope_stderr = std::sqrt(s2 / sxx);
    }
    return fit;
}

double pearson(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
    Eigen::VectorXd dx = x.array() - x.mean();
    Eigen::VectorXd dy = y.array() - y.mean();
    const double denom = dx.norm() * dy.norm();
    return denom > 0.0 ? dx.dot(dy) / denom : 0.0;
}

double median(std::vector<double> values) {
    return percentile(std::move(values), 50.0);
}

double percentile(std::vector<double> values, double p) {
    if (values.empty())
        throw std::invalid_argument("percentile: empty sample");
    if (p < 0.0 || p > 100.0)
        throw std::invalid_argument("percentile: p outside [0, 100]");
    std::sort(values.begin(), values.end());
    const double h = (static_cast<double>(values.size()) - 1.0) * p / 100.0;
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const auto hi = static_cast<std::size_t>(std::ceil(h));
    if (lo == hi) return values[lo];
    const double frac = h - static_cast<double>(lo);
    return values[lo] * (1.0 - frac) + values[hi] * frac;
}

double mean(const std::vector<double>& values) {
    if (values.empty())
        throw std::invalid_argument("mean: empty sample");
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
}

double sample_variance(const std::vector<double>& values) {
    if (values.size() < 2)
        throw std::invalid_argument("sample_variance: need >= 2 values");
    const double m = mean(values);
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return s / static_cast<double>(values.size() - 1);
}

WelchResult welch_t_test(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() < 2 || b.size() < 2)
        throw std::invalid_argument("welch_t_test: each side needs >= 2 values");
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double va = sample_variance(a);
    const double vb = sample_variance(b);
    if (va == 0.0 && vb == 0.0)
        throw std::invalid_argument("welch_t_test: zero variance on both sides");

    WelchResult r;
    r.mean_a = mean(a);
    r.mean_b = mean(b);
    const double sea = va / na;
    const double seb = vb / nb;
    r.t = (r.mean_a - r.mean_b) / std::sqrt(sea + seb);
    r.dof = (sea + seb) * (sea + seb) /
            (sea * sea / (na - 1.0) + seb * seb / (nb - 1.0));
    r.p_two_sided = student_t_two_sided_p(r.t, r.dof);
    return r;
}

namespace {

// Lentz's algorithm for the incomplete-beta continued fraction.
double beta_cf(double a, double b, double x) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-14;
    constexpr double kTiny = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kTiny) d = kTiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kTiny) d = kTiny;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kTiny) c = kTiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

} // namespace

double regularized_incomplete_beta(double a, double b, double x) {
    if (a <= 0.0 || b <= 0.0)
        throw std::invalid_argument("regularized_incomplete_beta: a, b must be > 0");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;

    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0))
        return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_two_sided_p(double t, double dof) {
    if (dof <= 0.0)
        throw std::invalid_argument("student_t_two_sided_p: dof must be > 0");
    const double x = dof / (dof + t * t);
    return regularized_incomplete_beta(dof / 2.0, 0.5, x);
}

} // namespace prox::stats
