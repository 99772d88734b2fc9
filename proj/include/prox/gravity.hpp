#ifndef PROX_GRAVITY_HPP
#define PROX_GRAVITY_HPP

#include "prox/powerlaw.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <string>
#include <vector>

// Monte Carlo check of the gravity-model derivation: individuals on a plane,
// linked independently with probability min(1, G m_i m_j / r^2), must produce
// a 1/r link-distance density.

namespace prox::gravity {

enum class RegionKind { torus, disc };
enum class MassModel { identical, lognormal };

struct GravityConfig {
    int population = 1000;           // M
    RegionKind region = RegionKind::torus;
    double extent_km = 1000.0;       // torus side or disc radius
    MassModel mass_model = MassModel::identical;
    double lognormal_mu = 0.0;       // of ln m
    double lognormal_sigma = 0.5;
    double g_constant = 1.0;         // link strength G >= 0
    double r_floor_km = 1.0;         // pairs closer than this are skipped
    std::uint64_t seed = 0;
    double max_expected_links = 2e7; // memory cap

    void validate() const;
};

GravityConfig config_from_json(const std::string& json_text);
GravityConfig config_from_json_file(const std::string& path);
std::string config_to_json(const GravityConfig& config);

struct Link {
    int i;
    int j;
    double distance_km;
};

struct LinkSample {
    std::vector<Link> links;
    std::size_t pairs_evaluated = 0;
    std::size_t pairs_below_floor = 0;

    powerlaw::DistanceSample distances(const std::string& label = "gravity-sim") const;
};

// Positions as an M x 2 matrix (km), uniform over the region; masses per node.
Eigen::MatrixX2d generate_positions(const GravityConfig& config);
Eigen::VectorXd generate_masses(const GravityConfig& config);

// Minimum-image distance on a square torus of the given side.
double torus_distance(const Eigen::RowVector2d& a, const Eigen::RowVector2d& b, double side);

// Link pass over all unordered pairs of the given layout. Per-pair draws are
// counter-based on (seed, i, j): deterministic regardless of evaluation order.
LinkSample link_pass(const Eigen::MatrixX2d& positions, const Eigen::VectorXd& masses,
                     const GravityConfig& config);

// generate_positions + generate_masses + link_pass. Throws when the expected
// link count exceeds config.max_expected_links.
LinkSample simulate(const GravityConfig& config);

// Link probability min(1, G m_i m_j / r^2).
double link_probability(const GravityConfig& config, double m_i, double m_j, double r);

// Expected links per unit distance at r for the identical-mass torus case:
// M(M-1)/2 * 2 pi r / Area * min(1, G m^2 / r^2). Valid on (r_floor, side/2).
double analytic_f(const GravityConfig& config, double r);

// Expected total link count (identical-mass torus, closed form; otherwise a
// direct sum over pairs is required and this returns a conservative annulus
// integral with the mean mass squared).
double expected_link_count(const GravityConfig& config);

} // namespace prox::gravity

#endif
