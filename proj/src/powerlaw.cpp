#include "prox/powerlaw.hpp"

#include "prox/csv.hpp"
#include "prox/rng.hpp"
#include "prox/stats.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace prox::powerlaw {

std::size_t DistanceSample::zero_count() const {
    return static_cast<std::size_t>(
        std::count(values.begin(), values.end(), 0.0));
}

std::vector<double> DistanceSample::nonzero() const {
    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values)
        if (v > 0.0) out.push_back(v);
    return out;
}

void DistanceSample::validate() const {
    for (double v : values)
        if (!std::isfinite(v) || v < 0.0)
            throw std::invalid_argument("DistanceSample: values must be finite and >= 0");
}

const char* method_name(Method m) {
    switch (m) {
        case Method::density: return "density";
        case Method::cumulative: return "cumulative";
        case Method::rank: return "rank";
        case Method::mle: return "mle";
    }
    return "?";
}

namespace {

// Transform under which a truncated power law with exponent alpha is linear
// against the empirical CDF (equivalently, against rank).
double exponent_transform(double r, double alpha) {
    if (std::fabs(alpha - 1.0) < 1e-9) return std::log(r);
    return std::pow(r, 1.0 - alpha);
}

// Profile estimate of the exponent: the alpha whose transform makes the
// (x, t_alpha(r)) relation most linear, by R^2. Coarse scan then
// golden-section refinement.
double profile_exponent(const Eigen::VectorXd& x, const std::vector<double>& r_sorted) {
    const auto n = static_cast<Eigen::Index>(r_sorted.size());
    Eigen::VectorXd y(n);
    auto r2_at = [&](double alpha) {
        for (Eigen::Index i = 0; i < n; ++i)
            y[i] = exponent_transform(r_sorted[static_cast<std::size_t>(i)], alpha);
        const double r = stats::pearson(x, y);
        return r * r;
    };

    constexpr double kLo = 0.05;
    constexpr double kHi = 5.0;
    constexpr int kGrid = 100;
    double best_alpha = 1.0;
    double best_r2 = -1.0;
    for (int i = 0; i <= kGrid; ++i) {
        const double a = kLo + (kHi - kLo) * i / kGrid;
        const double v = r2_at(a);
        if (v > best_r2) {
            best_r2 = v;
            best_alpha = a;
        }
    }

    double lo = std::max(kLo, best_alpha - (kHi - kLo) / kGrid);
    double hi = std::min(kHi, best_alpha + (kHi - kLo) / kGrid);
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - gr * (hi - lo);
    double d = lo + gr * (hi - lo);
    double fc = r2_at(c);
    double fd = r2_at(d);
    while (hi - lo > 1e-10) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - gr * (hi - lo);
            fc = r2_at(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + gr * (hi - lo);
            fd = r2_at(d);
        }
    }
    return (lo + hi) / 2.0;
}

} // namespace

PowerLawFit fit_density(const DistanceSample& sample, const LogBinSpec& bins) {
    sample.validate();
    if (bins.bin_count < 3)
        throw std::invalid_argument("fit_density: need at least 3 bins");

    std::vector<double> nz = sample.nonzero();
    if (nz.size() < 2)
        throw std::invalid_argument("fit_density: fewer than 3 nonempty bins");

    const double lo = *std::min_element(nz.begin(), nz.end());
    const double hi = *std::max_element(nz.begin(), nz.end());
    if (lo == hi)
        throw std::invalid_argument("fit_density: fewer than 3 nonempty bins");

    // Geometric edges; the top edge is nudged so the maximum lands inside.
    const int nbins = bins.bin_count;
    const double top = hi * (1.0 + 1e-12);
    const double log_lo = std::log(lo);
    const double log_step = (std::log(top) - log_lo) / nbins;

    std::vector<std::size_t> counts(static_cast<std::size_t>(nbins), 0);
    for (double v : nz) {
        auto k = static_cast<long>((std::log(v) - log_lo) / log_step);
        k = std::clamp(k, 0L, static_cast<long>(nbins - 1));
        ++counts[static_cast<std::size_t>(k)];
    }

    std::vector<double> log_center;
    std::vector<double> log_density;
    const double n_total = static_cast<double>(nz.size());
    for (int k = 0; k < nbins; ++k) {
        if (counts[static_cast<std::size_t>(k)] == 0) continue;
        const double e0 = std::exp(log_lo + k * log_step);
        const double e1 = std::exp(log_lo + (k + 1) * log_step);
        const double center = std::sqrt(e0 * e1);
        const double density =
            static_cast<double>(counts[static_cast<std::size_t>(k)]) / (n_total * (e1 - e0));
        log_center.push_back(std::log(center));
        log_density.push_back(std::log(density));
    }
    if (log_center.size() < 3)
        throw std::invalid_argument("fit_density: fewer than 3 nonempty bins");

    Eigen::VectorXd x = Eigen::Map<Eigen::VectorXd>(log_center.data(),
                                                    static_cast<Eigen::Index>(log_center.size()));
    Eigen::VectorXd y = Eigen::Map<Eigen::VectorXd>(log_density.data(),
                                                    static_cast<Eigen::Index>(log_density.size()));
    const auto line = stats::least_squares(x, y);

    PowerLawFit fit;
    fit.method = Method::density;
    fit.exponent = -line.slope;
    fit.std_error = line.slope_stderr;
    fit.correlation = line.correlation;
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r_min = lo;
    fit.r_max = hi;
    fit.n_used = nz.size();
    fit.zeros_excluded = sample.size() - nz.size();
    return fit;
}

PowerLawFit fit_cumulative(const DistanceSample& sample) {
    sample.validate();
    std::vector<double> nz = sample.nonzero();
    std::sort(nz.begin(), nz.end());
    const std::size_t distinct =
        static_cast<std::size_t>(std::set<double>(nz.begin(), nz.end()).size());
    if (distinct < 3)
        throw std::invalid_argument("fit_cumulative: fewer than 3 distinct nonzero values");

    const auto n = static_cast<Eigen::Index>(nz.size());
    Eigen::VectorXd log_r(n);
    Eigen::VectorXd cdf(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        log_r[i] = std::log(nz[static_cast<std::size_t>(i)]);
        cdf[i] = static_cast<double>(i + 1) / static_cast<double>(n);
    }
    const auto line = stats::least_squares(log_r, cdf);

    PowerLawFit fit;
    fit.method = Method::cumulative;
    fit.exponent = profile_exponent(cdf, nz);
    fit.std_error = line.slope_stderr;
    fit.correlation = line.correlation;
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r_min = nz.front();
    fit.r_max = nz.back();
    fit.n_used = nz.size();
    fit.zeros_excluded = sample.size() - nz.size();
    return fit;
}

PowerLawFit fit_rank(const DistanceSample& sample) {
    sample.validate();
    std::vector<double> nz = sample.nonzero();
    if (nz.size() < 3)
        throw std::invalid_argument("fit_rank: fewer than 3 nonzero values");
    std::sort(nz.begin(), nz.end(), std::greater<>());

    const auto n = static_cast<Eigen::Index>(nz.size());
    Eigen::VectorXd rank(n);
    Eigen::VectorXd log_r(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        rank[i] = static_cast<double>(i + 1);
        log_r[i] = std::log(nz[static_cast<std::size_t>(i)]);
    }
    const auto line = stats::least_squares(rank, log_r);

    PowerLawFit fit;
    fit.method = Method::rank;
    fit.rank_a = line.intercept;
    fit.rank_b = -line.slope;
    fit.rank_b_degenerate = !(fit.rank_b > 0.0);
    fit.exponent = fit.rank_b_degenerate
                       ? std::numeric_limits<double>::quiet_NaN()
                       : profile_exponent(rank, nz);
    fit.std_error = line.slope_stderr;
    fit.correlation = line.correlation;
    fit.slope = line.slope;
    fit.intercept = line.intercept;
    fit.r_min = nz.back();
    fit.r_max = nz.front();
    fit.n_used = nz.size();
    fit.zeros_excluded = sample.size() - nz.size();
    return fit;
}

double RankImpliedDensity::density(double r) const {
    return 1.0 / (b * static_cast<double>(n_total) * r);
}

double RankImpliedDensity::cdf(double r) const {
    const double bn = b * static_cast<double>(n_total);
    return 1.0 - a / bn + std::log(r) / bn;
}

RankImpliedDensity density_from_rank(const PowerLawFit& fit, std::size_t n_total) {
    if (fit.method != Method::rank)
        throw std::invalid_argument("density_from_rank: fit is not a rank fit");
    if (!(fit.rank_b > 0.0))
        throw std::invalid_argument("density_from_rank: B <= 0");
    if (n_total == 0)
        throw std::invalid_argument("density_from_rank: n_total == 0");

    RankImpliedDensity d;
    d.a = fit.rank_a;
    d.b = fit.rank_b;
    d.n_total = n_total;
    d.r_min = std::exp(fit.rank_a - fit.rank_b * static_cast<double>(n_total));
    d.r_max = std::exp(fit.rank_a);
    return d;
}

namespace {

// E[ln(x/a)] under a truncated power law with beta = 1 - alpha on log-span L.
double truncated_log_mean(double beta, double span) {
    const double bl = beta * span;
    if (std::fabs(bl) < 1e-12) return span / 2.0;
    if (bl > 35.0) return span - 1.0 / beta;
    if (bl < -35.0) return -1.0 / beta;
    return span * std::exp(bl) / std::expm1(bl) - 1.0 / beta;
}

} // namespace

PowerLawFit fit_mle(const DistanceSample& sample, double r_min, double r_max) {
    sample.validate();
    if (!(r_min > 0.0))
        throw std::invalid_argument("fit_mle: r_min must be > 0");
    if (!(r_max > r_min))
        throw std::invalid_argument("fit_mle: r_max must exceed r_min");

    std::vector<double> kept;
    for (double v : sample.values)
        if (v > r_min && v <= r_max) kept.push_back(v);
    if (kept.size() < 2)
        throw std::invalid_argument("fit_mle: fewer than 2 values above r_min");

    const double n = static_cast<double>(kept.size());
    double sum_log = 0.0;
    for (double v : kept) sum_log += std::log(v / r_min);

    PowerLawFit fit;
    fit.method = Method::mle;
    fit.r_min = r_min;
    fit.r_max = r_max;
    fit.n_used = kept.size();
    fit.zeros_excluded = sample.zero_count();

    if (std::isinf(r_max)) {
        fit.exponent = 1.0 + n / sum_log;
        fit.std_error = (fit.exponent - 1.0) / std::sqrt(n);
        return fit;
    }

    // Truncated support: solve E[ln(x/r_min)](alpha) = mean observed log.
    const double span = std::log(r_max / r_min);
    const double target = sum_log / n;
    if (target <= 0.0 || target >= span)
        throw std::invalid_argument("fit_mle: degenerate sample on truncated support");

    double lo = -1.0;
    double hi = 1.0;
    while (truncated_log_mean(lo, span) > target) lo *= 2.0;
    while (truncated_log_mean(hi, span) < target) hi *= 2.0;
    for (int i = 0; i < 200 && hi - lo > 1e-14 * std::max(1.0, std::fabs(lo)); ++i) {
        const double mid = 0.5 * (lo + hi);
        (truncated_log_mean(mid, span) < target ? lo : hi) = mid;
    }
    const double beta = 0.5 * (lo + hi);
    fit.exponent = 1.0 - beta;

    // Observed Fisher information per draw is Var[ln x] = dE/dbeta.
    const double h = 1e-5 * std::max(1.0, std::fabs(beta));
    const double var_log =
        (truncated_log_mean(beta + h, span) - truncated_log_mean(beta - h, span)) / (2.0 * h);
    fit.std_error = var_log > 0.0 ? 1.0 / std::sqrt(n * var_log) : 0.0;
    return fit;
}

PowerLawFit fit_mle(const DistanceSample& sample) {
    const auto nz = sample.nonzero();
    if (nz.empty())
        throw std::invalid_argument("fit_mle: no positive values");
    return fit_mle(sample, *std::min_element(nz.begin(), nz.end()));
}

DistanceSample sample_truncated_zipf(std::size_t n, double r_min, double r_max,
                                     std::uint64_t seed) {
    if (!(r_min > 0.0 && r_max > r_min))
        throw std::invalid_argument("sample_truncated_zipf: need 0 < r_min < r_max");
    if (n == 0)
        throw std::invalid_argument("sample_truncated_zipf: n must be >= 1");

    rng::Stream stream(seed);
    DistanceSample s;
    s.label = "truncated-zipf";
    s.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        s.values.push_back(truncated_zipf_quantile(stream.next_unit(), r_min, r_max));
    return s;
}

DistanceSample sample_pareto(std::size_t n, double alpha, double r_min, std::uint64_t seed) {
    if (!(alpha > 1.0))
        throw std::invalid_argument("sample_pareto: alpha must exceed 1");
    if (!(r_min > 0.0) || n == 0)
        throw std::invalid_argument("sample_pareto: need r_min > 0 and n >= 1");

    rng::Stream stream(seed);
    DistanceSample s;
    s.label = "pareto";
    s.values.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double u = stream.next_unit();
        s.values.push_back(r_min * std::pow(1.0 - u, -1.0 / (alpha - 1.0)));
    }
    return s;
}

double truncated_zipf_cdf(double r, double r_min, double r_max) {
    if (r <= r_min) return 0.0;
    if (r >= r_max) return 1.0;
    return std::log(r / r_min) / std::log(r_max / r_min);
}

double truncated_zipf_quantile(double u, double r_min, double r_max) {
    if (!(r_min > 0.0 && r_max > r_min))
        throw std::invalid_argument("truncated_zipf_quantile: need 0 < r_min < r_max");
    if (!(u >= 0.0 && u <= 1.0))
        throw std::invalid_argument("truncated_zipf_quantile: u outside [0, 1]");
    return r_min * std::pow(r_max / r_min, u);
}

DistanceSample read_sample(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("read_sample: cannot open " + path);

    DistanceSample s;
    std::string line;
    while (std::getline(in, line)) {
        std::string t = csv::trim(line);
        if (t.empty()) continue;
        if (t[0] == '#') {
            if (auto pos = t.find("label:"); pos != std::string::npos)
                s.label = csv::trim(t.substr(pos + 6));
            continue;
        }
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            throw std::runtime_error("read_sample: bad line '" + t + "' in " + path);
        }
        if (used != t.size() || !std::isfinite(v) || v < 0.0)
            throw std::runtime_error("read_sample: bad line '" + t + "' in " + path);
        s.values.push_back(v);
    }
    if (s.values.empty())
        throw std::runtime_error("read_sample: zero valid rows in " + path);
    return s;
}

void write_sample(const std::string& path, const DistanceSample& sample) {
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("write_sample: cannot open " + path);
    if (!sample.label.empty())
        out << "# label: " << sample.label << "\n";
    std::ostringstream buf;
    buf.precision(17);
    for (double v : sample.values)
        buf << v << "\n";
    out << buf.str();
}

} // namespace prox::powerlaw
