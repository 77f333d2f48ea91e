#include "cover/scenario_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace cover::cli {

namespace {

using Setter = std::function<void(Scenario&, const std::string&)>;

struct Key
{
    const char* path;
    Setter set;
};

[[noreturn]] void bad_value(const std::string& key, const std::string& value, const char* want)
{
    throw std::invalid_argument(key + ": expected " + want + ", got '" + value + "'");
}

double to_double(const std::string& key, const std::string& text)
{
    double v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end)
        bad_value(key, text, "a number");
    return v;
}

long long to_integer(const std::string& key, const std::string& text)
{
    long long v = 0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || ptr != end)
        bad_value(key, text, "an integer");
    return v;
}

bool to_bool(const std::string& key, const std::string& text)
{
    if (text == "true" || text == "1" || text == "yes" || text == "on")
        return true;
    if (text == "false" || text == "0" || text == "no" || text == "off")
        return false;
    bad_value(key, text, "true or false");
}

Setter real(double ScenarioConfig::*field)
{
    return [field](Scenario& s, const std::string& v) { s.config.*field = to_double("", v); };
}

// Table order is application order: carrier frequency resets the intercepts
// before explicit intercepts, element counts come before `isotropic`.
const std::vector<Key>& keys()
{
    static const std::vector<Key> table = [] {
        auto number = [](double ScenarioConfig::*field) { return real(field); };
        std::vector<Key> k{
            {"downlink.density_bs", number(&ScenarioConfig::lambda_b)},
            {"downlink.density_uav", number(&ScenarioConfig::lambda_v_down)},
            {"downlink.height_bs", number(&ScenarioConfig::h_b)},
            {"downlink.height_uav", number(&ScenarioConfig::h_v_down)},
            {"downlink.power_uav", number(&ScenarioConfig::p_v)},
            {"downlink.power_bs", number(&ScenarioConfig::p_b)},
            {"downlink.bandwidth", number(&ScenarioConfig::b_down)},
            {"downlink.threshold_db",
             [](Scenario& s, const std::string& v) { s.threshold_down_db = to_double("", v); }},
            {"uplink.density_uav", number(&ScenarioConfig::lambda_v_up)},
            {"uplink.height_user", number(&ScenarioConfig::h_u)},
            {"uplink.height_uav", number(&ScenarioConfig::h_v_up)},
            {"uplink.power_user", number(&ScenarioConfig::p_u)},
            {"uplink.bandwidth", number(&ScenarioConfig::b_up)},
            {"uplink.threshold_db",
             [](Scenario& s, const std::string& v) { s.threshold_up_db = to_double("", v); }},
            {"blockage.beta_b",
             [](Scenario& s, const std::string& v) { s.config.blockage.beta_b = to_double("", v); }},
            {"blockage.beta_a",
             [](Scenario& s, const std::string& v) { s.config.blockage.beta_a = to_double("", v); }},
            {"blockage.epsilon",
             [](Scenario& s, const std::string& v) { s.config.blockage.epsilon = to_double("", v); }},
            {"blockage.mode",
             [](Scenario& s, const std::string& v) {
                 if (v == "blockage")
                     s.config.state_rule = StateRule::blockage;
                 else if (v == "always_nlos")
                     s.config.state_rule = StateRule::always_nlos;
                 else
                     bad_value("", v, "blockage or always_nlos");
             }},
            {"channel.carrier_frequency",
             [](Scenario& s, const std::string& v) {
                 auto& c = s.config;
                 c.carrier_frequency = to_double("", v);
                 if (!(c.carrier_frequency > 0))
                     bad_value("", v, "a positive frequency");
                 c.fading.los.intercept = channel::free_space_intercept(c.carrier_frequency);
                 c.fading.nlos.intercept = c.fading.los.intercept;
             }},
            {"channel.alpha_los",
             [](Scenario& s, const std::string& v) { s.config.fading.los.alpha = to_double("", v); }},
            {"channel.alpha_nlos",
             [](Scenario& s, const std::string& v) { s.config.fading.nlos.alpha = to_double("", v); }},
            {"channel.nakagami_los",
             [](Scenario& s, const std::string& v) {
                 s.config.fading.los.nakagami = static_cast<int>(to_integer("", v));
             }},
            {"channel.nakagami_nlos",
             [](Scenario& s, const std::string& v) {
                 s.config.fading.nlos.nakagami = static_cast<int>(to_integer("", v));
             }},
            {"channel.intercept_los_db",
             [](Scenario& s, const std::string& v) {
                 s.config.fading.los.intercept = db_to_linear(to_double("", v));
             }},
            {"channel.intercept_nlos_db",
             [](Scenario& s, const std::string& v) {
                 s.config.fading.nlos.intercept = db_to_linear(to_double("", v));
             }},
            {"channel.thermal_noise",
             [](Scenario& s, const std::string& v) { s.config.thermal_noise = to_bool("", v); }},
            {"antenna.elements_bs",
             [](Scenario& s, const std::string& v) {
                 s.config.antennas.bs = channel::upa_setup(static_cast<int>(to_integer("", v)));
             }},
            {"antenna.elements_uav",
             [](Scenario& s, const std::string& v) {
                 s.config.antennas.uav = channel::upa_setup(static_cast<int>(to_integer("", v)));
             }},
            {"antenna.elements_user",
             [](Scenario& s, const std::string& v) {
                 s.config.antennas.user = channel::upa_setup(static_cast<int>(to_integer("", v)));
             }},
            {"antenna.isotropic",
             [](Scenario& s, const std::string& v) {
                 if (to_bool("", v))
                 {
                     s.config.antennas.bs = channel::isotropic_pattern();
                     s.config.antennas.uav = channel::isotropic_pattern();
                     s.config.antennas.user = channel::isotropic_pattern();
                 }
             }},
            {"cluster.kind",
             [](Scenario& s, const std::string& v) {
                 if (v == "thomas")
                     s.config.cluster.kind = geometry::ClusterKind::thomas;
                 else if (v == "matern")
                     s.config.cluster.kind = geometry::ClusterKind::matern;
                 else
                     bad_value("", v, "thomas or matern");
             }},
            {"cluster.spread",
             [](Scenario& s, const std::string& v) { s.config.cluster.spread = to_double("", v); }},
            {"cluster.population",
             [](Scenario& s, const std::string& v) {
                 if (v == "fixed")
                     s.config.cluster.population = geometry::Population::fixed;
                 else if (v == "poisson")
                     s.config.cluster.population = geometry::Population::poisson;
                 else
                     bad_value("", v, "fixed or poisson");
             }},
            {"cluster.size",
             [](Scenario& s, const std::string& v) { s.config.cluster.size = to_double("", v); }},
            {"relay.distance",
             [](Scenario& s, const std::string& v) {
                 if (v == "none")
                     s.config.relay_distance.reset();
                 else
                     s.config.relay_distance = to_double("", v);
             }},
            {"relay.threshold_db",
             [](Scenario& s, const std::string& v) { s.threshold_link_db = to_double("", v); }},
            {"relay.application",
             [](Scenario& s, const std::string& v) {
                 s.application = analytic::parse_application(v);
             }},
            {"numerics.node_count",
             [](Scenario& s, const std::string& v) {
                 s.config.quadrature.node_count = static_cast<int>(to_integer("", v));
             }},
            {"numerics.gamma_cutoff",
             [](Scenario& s, const std::string& v) {
                 s.config.quadrature.gamma_cutoff = static_cast<int>(to_integer("", v));
             }},
            {"numerics.tail_radius",
             [](Scenario& s, const std::string& v) {
                 s.config.quadrature.tail_radius = to_double("", v);
             }},
            {"numerics.auto_escalate",
             [](Scenario& s, const std::string& v) {
                 s.config.quadrature.auto_escalate = to_bool("", v);
             }},
            {"montecarlo.trials",
             [](Scenario& s, const std::string& v) { s.plan.trials = to_integer("", v); }},
            {"montecarlo.seed",
             [](Scenario& s, const std::string& v) {
                 s.plan.base_seed = static_cast<std::uint64_t>(to_integer("", v));
             }},
            {"montecarlo.confidence",
             [](Scenario& s, const std::string& v) { s.plan.confidence = to_double("", v); }},
            {"montecarlo.window_radius",
             [](Scenario& s, const std::string& v) { s.plan.window_radius = to_double("", v); }},
            {"sweep.axis",
             [](Scenario& s, const std::string& v) { s.sweep.axis = parse_axis(v); }},
            {"sweep.from", [](Scenario& s, const std::string& v) { s.sweep.from = to_double("", v); }},
            {"sweep.to", [](Scenario& s, const std::string& v) { s.sweep.to = to_double("", v); }},
            {"sweep.points",
             [](Scenario& s, const std::string& v) {
                 s.sweep.points = static_cast<int>(to_integer("", v));
             }},
            {"sweep.metric",
             [](Scenario& s, const std::string& v) { s.sweep.metric = parse_metric(v); }},
        };
        return k;
    }();
    return table;
}

// Config field names used by ScenarioConfig::validate and their file keys.
const std::vector<std::pair<std::string, std::string>>& field_keys()
{
    static const std::vector<std::pair<std::string, std::string>> map{
        {"lambda_b", "downlink.density_bs"},
        {"lambda_v_down", "downlink.density_uav"},
        {"lambda_v_up", "uplink.density_uav"},
        {"h_b", "downlink.height_bs"},
        {"h_v_down", "downlink.height_uav"},
        {"h_v_up", "uplink.height_uav"},
        {"h_u", "uplink.height_user"},
        {"p_b", "downlink.power_bs"},
        {"p_v", "downlink.power_uav"},
        {"p_u", "uplink.power_user"},
        {"b_down", "downlink.bandwidth"},
        {"b_up", "uplink.bandwidth"},
        {"carrier_frequency", "channel.carrier_frequency"},
        {"blockage", "[blockage]"},
        {"fading", "[channel]"},
        {"antenna.bs", "antenna.elements_bs"},
        {"antenna.uav", "antenna.elements_uav"},
        {"antenna.user", "antenna.elements_user"},
        {"cluster.size", "cluster.size"},
        {"cluster", "[cluster]"},
        {"relay_distance", "relay.distance"},
        {"quadrature", "[numerics]"},
        {"trials", "montecarlo.trials"},
        {"window_radius", "montecarlo.window_radius"},
        {"confidence", "montecarlo.confidence"},
    };
    return map;
}

std::string format_number(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

Axis parse_axis(const std::string& name)
{
    if (name == "threshold_db" || name == "Threshold_dB")
        return Axis::threshold_db;
    if (name == "altitude" || name == "UavAltitude_m")
        return Axis::altitude;
    if (name == "density" || name == "Density")
        return Axis::density;
    if (name == "antenna_elements" || name == "AntennaElements")
        return Axis::antenna_elements;
    if (name == "cluster_size" || name == "ClusterSize")
        return Axis::cluster_size;
    if (name == "relay_distance" || name == "RelayDistance_m")
        return Axis::relay_distance;
    throw std::invalid_argument("axis: unknown axis '" + name + "'");
}

std::string to_string(Axis a)
{
    switch (a)
    {
        case Axis::threshold_db:
            return "threshold_db";
        case Axis::altitude:
            return "altitude";
        case Axis::density:
            return "density";
        case Axis::antenna_elements:
            return "antenna_elements";
        case Axis::cluster_size:
            return "cluster_size";
        case Axis::relay_distance:
            return "relay_distance";
    }
    return "unknown";
}

Metric parse_metric(const std::string& name)
{
    if (name == "downlink")
        return Metric::downlink;
    if (name == "uplink")
        return Metric::uplink;
    if (name == "system")
        return Metric::system;
    throw std::invalid_argument("metric: unknown metric '" + name + "'");
}

std::string to_string(Metric m)
{
    switch (m)
    {
        case Metric::downlink:
            return "downlink";
        case Metric::uplink:
            return "uplink";
        case Metric::system:
            return "system";
    }
    return "unknown";
}

void SweepSpec::validate() const
{
    if (points < 1)
        throw std::invalid_argument("points: need at least one sweep point");
    if (!std::isfinite(from) || !std::isfinite(to))
        throw std::invalid_argument("from/to: sweep limits must be finite");
    if (points > 1 && from == to)
        throw std::invalid_argument("from/to: a multi-point sweep needs distinct limits");
    if (mc_trials < 0)
        throw std::invalid_argument("mc: trial count must be non-negative");
}

std::vector<double> SweepSpec::values() const
{
    validate();
    std::vector<double> out;
    for (int i = 0; i < points; ++i)
        out.push_back(points == 1 ? from : from + (to - from) * i / (points - 1));
    return out;
}

void validate_scenario(const Scenario& scenario)
{
    auto translate = [](const std::invalid_argument& e) {
        const std::string msg = e.what();
        for (const auto& [field, key] : field_keys())
            if (msg.rfind(field + ":", 0) == 0)
                return std::invalid_argument(key + " (" + field + ")" + msg.substr(field.size()));
        return std::invalid_argument(msg);
    };
    try
    {
        scenario.config.validate();
        scenario.plan.validate();
        scenario.sweep.validate();
    }
    catch (const std::invalid_argument& e)
    {
        throw translate(e);
    }
}

Scenario parse_scenario(const std::string& text, std::optional<Preset> preset)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(text);
    try
    {
        pt::read_ini(in, tree);
    }
    catch (const pt::ini_parser_error& e)
    {
        throw std::invalid_argument(std::string("scenario file: ") + e.what());
    }

    std::set<std::string> seen;
    for (const auto& [section, body] : tree)
    {
        if (body.empty() && !body.data().empty())
            throw std::invalid_argument(section + ": keys must sit inside a [section]");
        for (const auto& [key, value] : body)
            seen.insert(section + "." + key);
    }

    Scenario s;
    if (!preset)
        if (auto name = tree.get_optional<std::string>("channel.preset"))
            preset = parse_preset(*name);
    seen.erase("channel.preset");
    if (preset)
    {
        apply_preset(s.config, *preset);
        s.preset = preset;
    }

    for (const auto& key : keys())
    {
        auto value = tree.get_optional<std::string>(key.path);
        if (!value)
            continue;
        seen.erase(key.path);
        try
        {
            key.set(s, *value);
        }
        catch (const std::invalid_argument& e)
        {
            std::string msg = e.what();
            if (msg.rfind(": ", 0) == 0)
                msg = msg.substr(2);
            throw std::invalid_argument(std::string(key.path) + ": " + msg);
        }
    }
    if (!seen.empty())
        throw std::invalid_argument(*seen.begin() + ": unknown key");

    validate_scenario(s);
    return s;
}

Scenario load_scenario(const std::string& path, std::optional<Preset> preset)
{
    std::ifstream file(path);
    if (!file)
        throw std::invalid_argument("scenario file: cannot open '" + path + "'");
    std::ostringstream text;
    text << file.rdbuf();
    return parse_scenario(text.str(), preset);
}

std::string to_ini(const Scenario& s)
{
    const auto& c = s.config;
    std::ostringstream o;
    auto kv = [&o](const char* key, const std::string& value) { o << key << " = " << value << "\n"; };
    auto num = [&kv](const char* key, double v) { kv(key, format_number(v)); };
    auto elements = [](const channel::AntennaPattern& p) {
        return std::to_string(static_cast<long>(std::lround(p.main_gain)));
    };
    const bool isotropic = c.antennas.bs.theta_a == channel::isotropic_pattern().theta_a
                           && c.antennas.uav.theta_a == channel::isotropic_pattern().theta_a
                           && c.antennas.user.theta_a == channel::isotropic_pattern().theta_a;

    o << "[downlink]\n";
    num("density_bs", c.lambda_b);
    num("density_uav", c.lambda_v_down);
    num("height_bs", c.h_b);
    num("height_uav", c.h_v_down);
    num("power_uav", c.p_v);
    num("power_bs", c.p_b);
    num("bandwidth", c.b_down);
    num("threshold_db", s.threshold_down_db);
    o << "\n[uplink]\n";
    num("density_uav", c.lambda_v_up);
    num("height_user", c.h_u);
    num("height_uav", c.h_v_up);
    num("power_user", c.p_u);
    num("bandwidth", c.b_up);
    num("threshold_db", s.threshold_up_db);
    o << "\n[blockage]\n";
    num("beta_b", c.blockage.beta_b);
    num("beta_a", c.blockage.beta_a);
    num("epsilon", c.blockage.epsilon);
    kv("mode", c.force_nlos() ? "always_nlos" : "blockage");
    o << "\n[antenna]\n";
    if (isotropic)
        kv("isotropic", "true");
    else
    {
        kv("elements_bs", elements(c.antennas.bs));
        kv("elements_uav", elements(c.antennas.uav));
        kv("elements_user", elements(c.antennas.user));
    }
    o << "\n[cluster]\n";
    kv("kind", c.cluster.kind == geometry::ClusterKind::thomas ? "thomas" : "matern");
    num("spread", c.cluster.spread);
    kv("population", c.cluster.population == geometry::Population::fixed ? "fixed" : "poisson");
    num("size", c.cluster.size);
    o << "\n[channel]\n";
    num("carrier_frequency", c.carrier_frequency);
    num("alpha_los", c.fading.los.alpha);
    num("alpha_nlos", c.fading.nlos.alpha);
    kv("nakagami_los", std::to_string(c.fading.los.nakagami));
    kv("nakagami_nlos", std::to_string(c.fading.nlos.nakagami));
    num("intercept_los_db", linear_to_db(c.fading.los.intercept));
    num("intercept_nlos_db", linear_to_db(c.fading.nlos.intercept));
    kv("thermal_noise", c.thermal_noise ? "true" : "false");
    o << "\n[relay]\n";
    kv("distance", c.relay_distance ? format_number(*c.relay_distance) : "none");
    num("threshold_db", s.threshold_link_db);
    kv("application", analytic::to_string(s.application));
    o << "\n[numerics]\n";
    kv("node_count", std::to_string(c.quadrature.node_count));
    kv("gamma_cutoff", std::to_string(c.quadrature.gamma_cutoff));
    num("tail_radius", c.quadrature.tail_radius);
    kv("auto_escalate", c.quadrature.auto_escalate ? "true" : "false");
    o << "\n[montecarlo]\n";
    kv("trials", std::to_string(s.plan.trials));
    kv("seed", std::to_string(s.plan.base_seed));
    num("confidence", s.plan.confidence);
    num("window_radius", s.plan.window_radius);
    o << "\n[sweep]\n";
    kv("axis", to_string(s.sweep.axis));
    num("from", s.sweep.from);
    num("to", s.sweep.to);
    kv("points", std::to_string(s.sweep.points));
    kv("metric", to_string(s.sweep.metric));
    return o.str();
}

}  // namespace cover::cli
