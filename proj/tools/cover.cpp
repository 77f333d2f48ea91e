// Command-line front end: analytic evaluation, parameter sweeps and the
// analytic-vs-simulation validation suite.

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cover/analytic.hpp"
#include "cover/scenario_io.hpp"
#include "cover/sweep.hpp"
#include "cover/validation.hpp"

namespace {

using namespace cover;

enum Exit
{
    ok = 0,
    checks_failed = 1,
    bad_input = 2,
    runtime_failure = 3,
};

cli::Scenario load(const std::string& path, const std::optional<std::string>& preset)
{
    std::optional<Preset> p;
    if (preset)
        p = parse_preset(*preset);
    auto s = cli::load_scenario(path, p);
    if (const char* env = std::getenv("COVER_SEED"))
    {
        const std::string text = env;
        std::uint64_t seed = 0;
        const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), seed);
        if (ec != std::errc() || ptr != text.data() + text.size())
            throw std::invalid_argument("COVER_SEED: expected an unsigned integer, got '" + text + "'");
        s.plan.base_seed = seed;
    }
    return s;
}

void print_eval(const cli::Scenario& s)
{
    const auto& c = s.config;
    const double down = db_to_linear(s.threshold_down_db);
    const double up = db_to_linear(s.threshold_up_db);
    const auto sys = analytic::system_coverage(down, up, db_to_linear(s.threshold_link_db), c,
                                               s.application);
    std::printf("downlink  %.6f  (threshold %g dB)\n", sys.downlink, s.threshold_down_db);
    std::printf("uplink    %.6f  (threshold %g dB)\n", sys.uplink, s.threshold_up_db);
    if (s.application == analytic::Application::relaying)
        std::printf("link      %.6f  (threshold %g dB)\n", sys.link, s.threshold_link_db);
    std::printf("system    %.6f  (%s)\n", sys.probability, analytic::to_string(s.application).c_str());
    std::printf("truncation proxy %.3g\n", sys.truncation_proxy);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Coverage analysis of UAV-aided millimetre-wave networks"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::optional<std::string> preset;

    auto* eval = app.add_subcommand("eval", "Print analytic downlink, uplink and system coverage");
    eval->add_option("scenario", scenario_path, "Scenario INI file")->required();
    eval->add_option("--preset", preset, "mmwave28, mmwave38, mmwave60 or sub6");
    bool dump = false;
    eval->add_flag("--print-config", dump, "Also print the effective scenario");

    auto* sweep = app.add_subcommand("sweep", "Sweep one parameter and write CSV (and SVG)");
    sweep->add_option("scenario", scenario_path, "Scenario INI file")->required();
    std::optional<std::string> axis, metric;
    std::optional<double> from, to;
    std::optional<int> points;
    std::int64_t mc_trials = 0;
    bool svg = false;
    std::string out_dir;
    sweep->add_option("--axis", axis,
                      "threshold_db, altitude, density, antenna_elements, cluster_size, relay_distance");
    sweep->add_option("--from", from, "First axis value");
    sweep->add_option("--to", to, "Last axis value");
    sweep->add_option("--points", points, "Number of axis values")->check(CLI::PositiveNumber);
    sweep->add_option("--mc", mc_trials, "Monte Carlo trials per point (0 = analytic only)")
        ->check(CLI::NonNegativeNumber);
    sweep->add_option("--preset", preset, "mmwave28, mmwave38, mmwave60 or sub6");
    sweep->add_option("--metric", metric, "downlink, uplink or system");
    sweep->add_flag("--svg", svg, "Also write an SVG plot");
    sweep->add_option("--out", out_dir, "Output directory")->required();

    auto* validate = app.add_subcommand("validate", "Run the analytic-vs-simulation checks");
    validate->add_option("scenario", scenario_path, "Scenario INI file")->required();
    bool full = false;
    std::string report_dir = "validation";
    validate->add_flag("--full", full, "Full sample sizes instead of the quick suite");
    validate->add_option("--out", report_dir, "Report directory")->capture_default_str();

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e)
    {
        const int code = app.exit(e);
        return code == 0 ? ok : bad_input;
    }

    cli::Scenario scenario;
    try
    {
        scenario = load(scenario_path, preset);
        if (*sweep)
        {
            auto& sw = scenario.sweep;
            if (axis)
                sw.axis = cli::parse_axis(*axis);
            if (metric)
                sw.metric = cli::parse_metric(*metric);
            if (from)
                sw.from = *from;
            if (to)
                sw.to = *to;
            if (points)
                sw.points = *points;
            sw.mc_trials = mc_trials;
            sw.svg = svg;
            cli::validate_scenario(scenario);
        }
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    }

    try
    {
        if (*eval)
        {
            if (dump)
                std::cout << cli::to_ini(scenario) << "\n";
            print_eval(scenario);
            return ok;
        }
        if (*sweep)
        {
            for (const auto& path : cli::run_sweep(scenario, out_dir))
                std::cout << path.string() << "\n";
            return ok;
        }
        const auto suite = full ? validation::Suite::full : validation::Suite::quick;
        const auto result = validation::run_suite(scenario, suite, report_dir, &std::cerr);
        std::cout << validation::format_report(result, suite, scenario);
        return result.all_pass() ? ok : checks_failed;
    }
    catch (const std::invalid_argument& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return bad_input;
    }
    catch (const std::exception& e)
    {
        std::cerr << "error: " << e.what() << "\n";
        return runtime_failure;
    }
}
