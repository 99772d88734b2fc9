#include "prox/gravity.hpp"

#include "prox/rng.hpp"

#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace prox::gravity {

namespace {

// Substream keys so positions, masses, and link draws never collide.
constexpr std::uint64_t kPositionStream = 0x706f736974696f6eULL;
constexpr std::uint64_t kMassStream = 0x6d61737365732121ULL;
constexpr std::uint64_t kLinkStream = 0x6c696e6b64726177ULL;

} // namespace

void GravityConfig::validate() const {
    if (population < 2)
        throw std::invalid_argument("gravity: population must be >= 2");
    if (!(extent_km > 0.0))
        throw std::invalid_argument("gravity: extent must be > 0");
    if (!(g_constant >= 0.0))
        throw std::invalid_argument("gravity: G must be >= 0");
    if (!(r_floor_km > 0.0))
        throw std::invalid_argument("gravity: r_floor must be > 0");
    if (mass_model == MassModel::lognormal && !(lognormal_sigma >= 0.0))
        throw std::invalid_argument("gravity: lognormal sigma must be >= 0");
    if (!(max_expected_links > 0.0))
        throw std::invalid_argument("gravity: max_expected_links must be > 0");
}

GravityConfig config_from_json(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    GravityConfig c;
    c.population = j.at("population").get<int>();

    const auto& region = j.at("region");
    const std::string kind = region.at("kind").get<std::string>();
    if (kind == "torus") {
        c.region = RegionKind::torus;
        c.extent_km = region.at("side_km").get<double>();
    } else if (kind == "disc") {
        c.region = RegionKind::disc;
        c.extent_km = region.at("radius_km").get<double>();
    } else {
        throw std::invalid_argument("gravity config: unknown region kind '" + kind + "'");
    }

    if (j.contains("mass_model")) {
        const auto& mm = j.at("mass_model");
        const std::string mkind = mm.at("kind").get<std::string>();
        if (mkind == "identical") {
            c.mass_model = MassModel::identical;
        } else if (mkind == "lognormal") {
            c.mass_model = MassModel::lognormal;
            c.lognormal_mu = mm.at("mu").get<double>();
            c.lognormal_sigma = mm.at("sigma").get<double>();
        } else {
            throw std::invalid_argument("gravity config: unknown mass model '" + mkind + "'");
        }
    }

    c.g_constant = j.at("g").get<double>();
    if (j.contains("r_floor_km")) c.r_floor_km = j.at("r_floor_km").get<double>();
    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("max_expected_links"))
        c.max_expected_links = j.at("max_expected_links").get<double>();
    c.validate();
    return c;
}

GravityConfig config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("gravity config: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return config_from_json(buf.str());
}

std::string config_to_json(const GravityConfig& c) {
    nlohmann::json j;
    j["population"] = c.population;
    if (c.region == RegionKind::torus)
        j["region"] = {{"kind", "torus"}, {"side_km", c.extent_km}};
    else
        j["region"] = {{"kind", "disc"}, {"radius_km", c.extent_km}};
    if (c.mass_model == MassModel::identical)
        j["mass_model"] = {{"kind", "identical"}};
    else
        j["mass_model"] = {{"kind", "lognormal"},
                           {"mu", c.lognormal_mu},
                           {"sigma", c.lognormal_sigma}};
    j["g"] = c.g_constant;
    j["r_floor_km"] = c.r_floor_km;
    j["seed"] = c.seed;
    j["max_expected_links"] = c.max_expected_links;
    return j.dump(2);
}

powerlaw::DistanceSample LinkSample::distances(const std::string& label) const {
    powerlaw::DistanceSample s;
    s.label = label;
    s.values.reserve(links.size());
    for (const auto& link : links)
        s.values.push_back(link.distance_km);
    return s;
}

Eigen::MatrixX2d generate_positions(const GravityConfig& config) {
    config.validate();
    rng::Stream stream(rng::splitmix64(config.seed ^ kPositionStream));
    Eigen::MatrixX2d pos(config.population, 2);
    if (config.region == RegionKind::torus) {
        for (int i = 0; i < config.population; ++i) {
            pos(i, 0) = stream.next_unit() * config.extent_km;
            pos(i, 1) = stream.next_unit() * config.extent_km;
        }
    } else {
        for (int i = 0; i < config.population; ++i) {
            const double r = config.extent_km * std::sqrt(stream.next_unit());
            const double theta = 2.0 * M_PI * stream.next_unit();
            pos(i, 0) = r * std::cos(theta);
            pos(i, 1) = r * std::sin(theta);
        }
    }
    return pos;
}

Eigen::VectorXd generate_masses(const GravityConfig& config) {
    config.validate();
    Eigen::VectorXd m(config.population);
    if (config.mass_model == MassModel::identical) {
        m.setOnes();
        return m;
    }
    rng::Stream stream(rng::splitmix64(config.seed ^ kMassStream));
    for (int i = 0; i < config.population; ++i)
        m[i] = std::exp(config.lognormal_mu + config.lognormal_sigma * stream.next_normal());
    return m;
}

double torus_distance(const Eigen::RowVector2d& a, const Eigen::RowVector2d& b, double side) {
    double dx = std::fabs(a[0] - b[0]);
    double dy = std::fabs(a[1] - b[1]);
    if (dx > side / 2.0) dx = side - dx;
    if (dy > side / 2.0) dy = side - dy;
    return std::sqrt(dx * dx + dy * dy);
}

double link_probability(const GravityConfig& config, double m_i, double m_j, double r) {
    return std::min(1.0, config.g_constant * m_i * m_j / (r * r));
}

LinkSample link_pass(const Eigen::MatrixX2d& positions, const Eigen::VectorXd& masses,
                     const GravityConfig& config) {
    config.validate();
    const int m = static_cast<int>(positions.rows());
    if (masses.size() != m)
        throw std::invalid_argument("link_pass: positions/masses size mismatch");

    const std::uint64_t link_seed = rng::splitmix64(config.seed ^ kLinkStream);
    const bool torus = config.region == RegionKind::torus;
    const auto cap = static_cast<std::size_t>(config.max_expected_links);

    LinkSample out;
    for (int i = 0; i < m; ++i) {
        for (int j = i + 1; j < m; ++j) {
            ++out.pairs_evaluated;
            const double r = torus
                                 ? torus_distance(positions.row(i), positions.row(j),
                                                  config.extent_km)
                                 : (positions.row(i) - positions.row(j)).norm();
            if (r < config.r_floor_km) {
                ++out.pairs_below_floor;
                continue;
            }
            const double p = link_probability(config, masses[i], masses[j], r);
            if (rng::pair_unit(link_seed, static_cast<std::uint64_t>(i),
                               static_cast<std::uint64_t>(j)) < p) {
                if (out.links.size() >= cap)
                    throw std::runtime_error("link_pass: link count exceeded the memory cap");
                out.links.push_back({i, j, r});
            }
        }
    }
    return out;
}

LinkSample simulate(const GravityConfig& config) {
    config.validate();
    if (expected_link_count(config) > config.max_expected_links)
        throw std::runtime_error("simulate: expected link count exceeds the memory cap");
    const auto positions = generate_positions(config);
    const auto masses = generate_masses(config);
    return link_pass(positions, masses, config);
}

double analytic_f(const GravityConfig& config, double r) {
    config.validate();
    if (config.mass_model != MassModel::identical)
        throw std::invalid_argument("analytic_f: identical-mass configurations only");
    if (config.region != RegionKind::torus)
        throw std::invalid_argument("analytic_f: torus region only");
    if (!(r > config.r_floor_km && r < config.extent_km / 2.0))
        throw std::invalid_argument("analytic_f: r outside (r_floor, side/2)");

    const double m_count = static_cast<double>(config.population);
    const double pairs = m_count * (m_count - 1.0) / 2.0;
    const double area = config.extent_km * config.extent_km;
    return pairs * (2.0 * M_PI * r / area) * link_probability(config, 1.0, 1.0, r);
}

double expected_link_count(const GravityConfig& config) {
    config.validate();
    const double m_count = static_cast<double>(config.population);
    const double pairs = m_count * (m_count - 1.0) / 2.0;

    double area;
    double r_top; // overestimate the annulus out to the far corner / diameter
    if (config.region == RegionKind::torus) {
        area = config.extent_km * config.extent_km;
        r_top = config.extent_km * M_SQRT1_2;
    } else {
        area = M_PI * config.extent_km * config.extent_km;
        r_top = 2.0 * config.extent_km;
    }

    double mm = 1.0; // E[m_i m_j]
    if (config.mass_model == MassModel::lognormal)
        mm = std::exp(2.0 * config.lognormal_mu + config.lognormal_sigma * config.lognormal_sigma);

    const double g_mm = config.g_constant * mm;
    const double r_clamp = std::sqrt(g_mm); // p == 1 below this radius
    const double lo = config.r_floor_km;

    double integral = 0.0; // of 2 pi r / area * min(1, g mm / r^2)
    if (r_clamp > lo) {
        const double upper = std::min(r_clamp, r_top);
        integral += M_PI * (upper * upper - lo * lo) / area;
    }
    const double tail_lo = std::max(lo, r_clamp);
    if (r_top > tail_lo)
        integral += 2.0 * M_PI * g_mm * std::log(r_top / tail_lo) / area;

    return pairs * std::min(1.0, integral);
}

} // namespace prox::gravity
