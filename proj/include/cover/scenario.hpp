#pragma once

#include <optional>
#include <string>

#include "cover/channel.hpp"
#include "cover/geometry.hpp"
#include "cover/numerics.hpp"

namespace cover {

//! How link states are assigned.
enum class StateRule
{
    blockage,     ///< LOS with the blockage-model probability
    always_nlos,  ///< every link uses the NLOS law (sub-6 GHz benchmark)
};

enum class Preset
{
    mmwave28,
    mmwave38,
    mmwave60,
    sub6,
};

/*!
 * Complete description of one network.
 *
 * Defaults reproduce the baseline deployment: equal BS/UAV densities of
 * 1/(250^2 pi) per m^2, BS at 30 m, users on the ground, UAVs at 100 m,
 * 28 GHz with 100 MHz bandwidth, Thomas clusters of 30 users with
 * sigma = 100 m.
 */
struct ScenarioConfig
{
    static constexpr double baseline_density = 5.092958178940651e-06;  // 1/(250^2 pi)

    double lambda_b = baseline_density;
    double lambda_v_down = baseline_density;
    double lambda_v_up = baseline_density;

    double h_b = 30;
    double h_u = 0;
    double h_v_up = 100;
    double h_v_down = 100;

    double p_b = 10;
    double p_v = 1;
    double p_u = 1;

    double b_down = 100e6;
    double b_up = 100e6;
    double carrier_frequency = 28e9;
    bool thermal_noise = true;

    channel::BlockageParams blockage;
    StateRule state_rule = StateRule::blockage;
    channel::FadingProfile fading = default_fading(28e9);
    channel::AntennaSetup antennas;
    geometry::ClusterModel cluster;

    std::optional<double> relay_distance = 250.0;
    numerics::QuadratureSpec quadrature;

    //! Throws std::invalid_argument naming the offending field.
    void validate() const;

    double dh_down() const;  ///< |h_v^down - h_b|
    double dh_up() const;    ///< |h_u - h_v^up|
    double dh_link() const;  ///< |h_v^up - h_v^down|

    double noise_down() const;  ///< zero when thermal noise is disabled
    double noise_up() const;

    bool force_nlos() const { return state_rule == StateRule::always_nlos; }

    //! Interference truncation radius for a field of the given density:
    //! 20 mean nearest-neighbour distances, at most `max_tail_radius`.
    double tail_radius(double density) const;
    static constexpr double max_tail_radius = 1e5;

    static channel::FadingProfile default_fading(double frequency_hz);
};

//! Overwrite path-loss law, antennas, bandwidth and carrier per preset.
void apply_preset(ScenarioConfig& cfg, Preset preset);

Preset parse_preset(const std::string& name);
std::string to_string(Preset preset);

double db_to_linear(double db);
double linear_to_db(double linear);

//! SINR threshold 2^(rate / bandwidth) - 1 for a target rate.
double rate_threshold(double rate_bps, double bandwidth_hz);

}  // namespace cover
