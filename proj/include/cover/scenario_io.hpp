#pragma once

#include <optional>
#include <string>

#include "cover/analytic.hpp"
#include "cover/montecarlo.hpp"
#include "cover/scenario.hpp"

namespace cover::cli {

enum class Axis
{
    threshold_db,
    altitude,          ///< UAV altitude for both phases [m]
    density,           ///< UAV density for both phases [1/m^2]
    antenna_elements,  ///< BS and UAV array size
    cluster_size,
    relay_distance,
};

enum class Metric
{
    downlink,
    uplink,
    system,
};

Axis parse_axis(const std::string& name);
std::string to_string(Axis a);
Metric parse_metric(const std::string& name);
std::string to_string(Metric m);

struct SweepSpec
{
    Axis axis = Axis::threshold_db;
    double from = -20;
    double to = 20;
    int points = 9;
    Metric metric = Metric::downlink;
    std::int64_t mc_trials = 0;  ///< 0: analytic only
    bool svg = false;

    void validate() const;
    std::vector<double> values() const;
};

//! Everything a scenario file can set.
struct Scenario
{
    ScenarioConfig config;
    std::optional<Preset> preset;
    double threshold_down_db = -20;
    double threshold_up_db = -20;
    double threshold_link_db = -20;
    analytic::Application application = analytic::Application::relaying;
    mc::TrialPlan plan;
    SweepSpec sweep;
};

/*!
 * Parse an INI scenario. Built-in defaults come first, then the preset
 * (`preset` if given, else the one named in [channel]), then every explicit
 * key. Unknown sections or keys and values that fail validation raise
 * std::invalid_argument naming the key.
 */
Scenario parse_scenario(const std::string& text, std::optional<Preset> preset = {});
Scenario load_scenario(const std::string& path, std::optional<Preset> preset = {});

//! The scenario as an INI document that parses back to the same values.
std::string to_ini(const Scenario& scenario);

//! Validate the configuration, naming the scenario-file key on failure.
void validate_scenario(const Scenario& scenario);

}  // namespace cover::cli
