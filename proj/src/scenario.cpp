#include "cover/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cover {

namespace {

void require(bool ok, const char* field, const char* what)
{
    if (!ok)
        throw std::invalid_argument(std::string(field) + ": " + what);
}

void check_positive(double v, const char* field, const char* what)
{
    require(v > 0 && std::isfinite(v), field, what);
}

template<class F>
void rethrow_as(const char* field, F&& f)
{
    try
    {
        f();
    }
    catch (const std::invalid_argument& e)
    {
        throw std::invalid_argument(std::string(field) + ": " + e.what());
    }
}

}  // namespace

channel::FadingProfile ScenarioConfig::default_fading(double frequency_hz)
{
    const double c = channel::free_space_intercept(frequency_hz);
    channel::FadingProfile f;
    f.los = {2.0, c, 3};
    f.nlos = {4.0, c, 2};
    return f;
}

void ScenarioConfig::validate() const
{
    check_positive(lambda_b, "lambda_b", "BS density must be positive");
    check_positive(lambda_v_down, "lambda_v_down", "downlink UAV density must be positive");
    check_positive(lambda_v_up, "lambda_v_up", "uplink UAV density must be positive");
    // Downlink UAVs are all active only when BSs are at least as dense.
    require(lambda_b >= lambda_v_down, "lambda_v_down",
            "downlink UAV density must not exceed the BS density");

    for (auto [v, name] : {std::pair{h_b, "h_b"}, {h_u, "h_u"},
                           {h_v_up, "h_v_up"}, {h_v_down, "h_v_down"}})
        require(v >= 0 && std::isfinite(v), name, "height must be non-negative");

    check_positive(p_b, "p_b", "transmit power must be positive");
    check_positive(p_v, "p_v", "transmit power must be positive");
    check_positive(p_u, "p_u", "transmit power must be positive");
    check_positive(b_down, "b_down", "bandwidth must be positive");
    check_positive(b_up, "b_up", "bandwidth must be positive");
    check_positive(carrier_frequency, "carrier_frequency", "frequency must be positive");

    rethrow_as("blockage", [&] { blockage.validate(); });
    rethrow_as("fading", [&] { fading.validate(); });
    rethrow_as("antenna.bs", [&] { antennas.bs.validate(); });
    rethrow_as("antenna.uav", [&] { antennas.uav.validate(); });
    rethrow_as("antenna.user", [&] { antennas.user.validate(); });
    rethrow_as("cluster", [&] { cluster.validate(); });
    if (cluster.population == geometry::Population::poisson)
        require(cluster.size >= 1, "cluster.size",
                "a random population needs mean >= 1 (the typical cluster holds the transmitting user)");
    if (relay_distance)
        require(*relay_distance >= 0 && std::isfinite(*relay_distance),
                "relay_distance", "distance must be non-negative");
    rethrow_as("quadrature", [&] { quadrature.validate(); });
}

double ScenarioConfig::dh_down() const
{
    return std::abs(h_v_down - h_b);
}

double ScenarioConfig::dh_up() const
{
    return std::abs(h_u - h_v_up);
}

double ScenarioConfig::dh_link() const
{
    return std::abs(h_v_up - h_v_down);
}

double ScenarioConfig::noise_down() const
{
    return thermal_noise ? channel::noise_power(b_down) : 0.0;
}

double ScenarioConfig::noise_up() const
{
    return thermal_noise ? channel::noise_power(b_up) : 0.0;
}

double ScenarioConfig::tail_radius(double density) const
{
    if (quadrature.tail_radius > 0)
        return quadrature.tail_radius;
    return std::min(max_tail_radius, 20.0 / std::sqrt(std::numbers::pi * density));
}

void apply_preset(ScenarioConfig& cfg, Preset preset)
{
    auto set_upa = [&cfg](int n) {
        cfg.antennas.bs = channel::upa_setup(n);
        cfg.antennas.uav = channel::upa_setup(n);
        cfg.antennas.user = channel::upa_setup(n);
    };
    auto set_mmwave = [&](double freq, double alpha_l, double alpha_n, int elements) {
        cfg.carrier_frequency = freq;
        const double c = channel::free_space_intercept(freq);
        cfg.fading.los.alpha = alpha_l;
        cfg.fading.los.intercept = c;
        cfg.fading.nlos.alpha = alpha_n;
        cfg.fading.nlos.intercept = c;
        cfg.state_rule = StateRule::blockage;
        set_upa(elements);
    };

    switch (preset)
    {
        case Preset::mmwave28:
            set_mmwave(28e9, 2.0, 3.0, 16);
            break;
        case Preset::mmwave38:
            set_mmwave(38e9, 2.0, 3.71, 64);
            break;
        case Preset::mmwave60:
            set_mmwave(60e9, 2.25, 3.76, 144);
            break;
        case Preset::sub6:
        {
            cfg.carrier_frequency = 5e9;
            const double c = channel::free_space_intercept(5e9);
            cfg.fading.nlos = {3.0, c, 1};
            cfg.fading.los.intercept = c;
            cfg.state_rule = StateRule::always_nlos;
            cfg.antennas.bs = channel::isotropic_pattern();
            cfg.antennas.uav = channel::isotropic_pattern();
            cfg.antennas.user = channel::isotropic_pattern();
            cfg.b_down = 10e6;
            cfg.b_up = 10e6;
            break;
        }
    }
}

Preset parse_preset(const std::string& name)
{
    if (name == "mmwave28" || name == "mmWave28")
        return Preset::mmwave28;
    if (name == "mmwave38" || name == "mmWave38")
        return Preset::mmwave38;
    if (name == "mmwave60" || name == "mmWave60")
        return Preset::mmwave60;
    if (name == "sub6" || name == "Sub6")
        return Preset::sub6;
    throw std::invalid_argument("preset: unknown preset '" + name + "'");
}

std::string to_string(Preset preset)
{
    switch (preset)
    {
        case Preset::mmwave28:
            return "mmwave28";
        case Preset::mmwave38:
            return "mmwave38";
        case Preset::mmwave60:
            return "mmwave60";
        case Preset::sub6:
            return "sub6";
    }
    return "unknown";
}

double db_to_linear(double db)
{
    return std::pow(10.0, db / 10.0);
}

double linear_to_db(double linear)
{
    return 10.0 * std::log10(linear);
}

double rate_threshold(double rate_bps, double bandwidth_hz)
{
    if (!(bandwidth_hz > 0))
        throw std::invalid_argument("bandwidth must be positive");
    return std::exp2(rate_bps / bandwidth_hz) - 1.0;
}

}  // namespace cover
