#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "cover/scenario_io.hpp"
#include "cover/svg.hpp"
#include "cover/sweep.hpp"

using namespace cover;
using namespace cover::cli;

namespace {

std::string error_of(const std::string& text)
{
    try
    {
        parse_scenario(text);
    }
    catch (const std::invalid_argument& e)
    {
        return e.what();
    }
    return "";
}

}  // namespace

TEST_CASE("an empty scenario is the baseline")
{
    const auto s = parse_scenario("");
    const ScenarioConfig base;
    CHECK(s.config.lambda_b == base.lambda_b);
    CHECK(s.config.h_v_down == 100);
    CHECK(s.threshold_down_db == -20);
    CHECK(s.application == analytic::Application::relaying);
    CHECK_FALSE(s.preset);
}

TEST_CASE("keys override defaults and presets")
{
    const auto s = parse_scenario(
        "[channel]\npreset = mmwave60\nalpha_los = 2.1\n[downlink]\nheight_uav = 150\n"
        "[cluster]\nkind = matern\nsize = 12\n[sweep]\naxis = altitude\nmetric = system\n");
    REQUIRE(s.preset);
    CHECK(*s.preset == Preset::mmwave60);
    CHECK(s.config.fading.los.alpha == 2.1);
    CHECK(s.config.h_v_down == 150);
    CHECK(s.config.cluster.kind == geometry::ClusterKind::matern);
    CHECK(s.sweep.axis == Axis::altitude);
    CHECK(s.sweep.metric == Metric::system);

    const auto p = parse_scenario("[channel]\npreset = mmwave60\n", Preset::mmwave38);
    CHECK(*p.preset == Preset::mmwave38);
}

TEST_CASE("carrier frequency resets intercepts before explicit ones")
{
    const auto s = parse_scenario("[channel]\nintercept_los_db = -60\ncarrier_frequency = 38e9\n");
    CHECK(s.config.fading.los.intercept == doctest::Approx(1e-6));
    CHECK(s.config.fading.nlos.intercept == doctest::Approx(channel::free_space_intercept(38e9)));
}

TEST_CASE("errors name the offending key")
{
    CHECK(error_of("[downlink]\ncolour = blue\n").find("downlink.colour") == 0);
    CHECK(error_of("[nowhere]\nx = 1\n").find("nowhere.x") == 0);
    CHECK(error_of("[uplink]\nheight_uav = tall\n").find("uplink.height_uav") == 0);
    CHECK(error_of("[blockage]\nmode = sometimes\n").find("blockage.mode") == 0);
    CHECK(error_of("[downlink]\ndensity_uav = 1\n").find("downlink.density_uav (lambda_v_down)") == 0);
    CHECK(error_of("[downlink]\nheight_bs = -3\n").find("downlink.height_bs (h_b)") == 0);
    CHECK(error_of("[sweep]\npoints = 0\n").find("points") != std::string::npos);
}

TEST_CASE("to_ini round-trips")
{
    const auto s = parse_scenario(
        "[antenna]\nelements_uav = 16\n[relay]\ndistance = none\napplication = dissemination\n"
        "[montecarlo]\ntrials = 1234\nseed = 99\n[blockage]\nmode = always_nlos\n");
    const auto text = to_ini(s);
    const auto back = parse_scenario(text);
    CHECK(to_ini(back) == text);
    CHECK_FALSE(back.config.relay_distance);
    CHECK(back.plan.trials == 1234);
    CHECK(back.config.antennas.uav.main_gain == 16);
    CHECK(back.config.force_nlos());
    const auto iso = parse_scenario("[antenna]\nisotropic = yes\n");
    CHECK(to_ini(parse_scenario(to_ini(iso))) == to_ini(iso));
}

TEST_CASE("load_scenario reads files")
{
    const auto path = std::filesystem::temp_directory_path() / "cover_test_scenario.ini";
    {
        std::ofstream f(path);
        f << "[uplink]\nthreshold_db = -7\n";
    }
    CHECK(load_scenario(path.string()).threshold_up_db == -7);
    std::filesystem::remove(path);
    CHECK_THROWS_AS(load_scenario(path.string()), std::invalid_argument);
}

TEST_CASE("sweep axis values and semantics")
{
    SweepSpec spec;
    spec.from = 30;
    spec.to = 60;
    spec.points = 4;
    CHECK(spec.values() == std::vector<double>{30, 40, 50, 60});

    Scenario s;
    s.sweep.metric = Metric::system;
    auto t = at_axis_value(s, Axis::threshold_db, 3);
    CHECK(t.threshold_down_db == 3);
    CHECK(t.threshold_up_db == 3);
    CHECK(t.threshold_link_db == 3);
    CHECK(at_axis_value(s, Axis::altitude, 70).config.h_v_up == 70);
    CHECK(at_axis_value(s, Axis::cluster_size, 4.4).config.cluster.size == 4);
    CHECK(at_axis_value(s, Axis::antenna_elements, 16).config.antennas.bs.main_gain == 16);
    CHECK(at_axis_value(s, Axis::relay_distance, 80).config.relay_distance == 80);
    CHECK_THROWS_AS(at_axis_value(s, Axis::density, 1.0), std::invalid_argument);
}

TEST_CASE("threshold sweep writes a monotone CSV and an SVG")
{
    Scenario s;
    s.sweep.from = -20;
    s.sweep.to = 20;
    s.sweep.points = 5;
    s.sweep.svg = true;
    const auto dir = std::filesystem::temp_directory_path() / "cover_test_sweep";
    std::filesystem::remove_all(dir);
    const auto files = run_sweep(s, dir);
    REQUIRE(files.size() == 2);
    CHECK(files[0].filename() == "downlink_threshold_db.csv");

    std::ifstream f(files[0]);
    std::string line;
    std::getline(f, line);
    CHECK(line == "axis_value,analytic,mc_mean,mc_half_width,truncation_proxy");
    double prev = 2;
    int rows = 0;
    while (std::getline(f, line))
    {
        std::stringstream ss(line);
        std::string x, a, m, h, p;
        std::getline(ss, x, ',');
        std::getline(ss, a, ',');
        std::getline(ss, m, ',');
        std::getline(ss, h, ',');
        std::getline(ss, p, ',');
        CHECK(m.empty());
        CHECK(h.empty());
        CHECK(std::stod(a) <= prev);
        prev = std::stod(a);
        ++rows;
    }
    CHECK(rows == 5);

    std::ifstream svg(files[1]);
    std::stringstream body;
    body << svg.rdbuf();
    CHECK(body.str().find("<polyline") != std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST_CASE("csv with Monte Carlo columns")
{
    CoverageCurve c;
    c.points.push_back({-10, 0.5, 1e-9, mc::McEstimate{0.25, 0.01, 100}});
    CHECK(curve_csv(c) ==
          "axis_value,analytic,mc_mean,mc_half_width,truncation_proxy\n-10,0.5,0.25,0.01,1e-09\n");
    c.preset = Preset::sub6;
    CHECK(curve_stem(c) == "downlink_threshold_db_sub6");
}

TEST_CASE("svg escapes labels")
{
    const auto text = svg::line_chart("a<b", "x", "y", {{"s&t", {0, 1}, {0, 1}, false}});
    CHECK(text.find("a&lt;b") != std::string::npos);
    CHECK(text.find("s&amp;t") != std::string::npos);
}
