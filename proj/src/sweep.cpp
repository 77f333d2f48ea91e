#include "cover/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cover/analytic.hpp"
#include "cover/svg.hpp"

namespace cover::cli {

namespace {

std::string g10(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

struct Evaluation
{
    double probability = 0;
    double proxy = 0;
};

Evaluation analytic_point(const Scenario& s)
{
    const double down = db_to_linear(s.threshold_down_db);
    const double up = db_to_linear(s.threshold_up_db);
    switch (s.sweep.metric)
    {
        case Metric::downlink:
        {
            const auto r = analytic::coverage_downlink(down, s.config);
            return {r.probability, r.truncation_proxy};
        }
        case Metric::uplink:
        {
            const auto r = analytic::coverage_uplink(up, s.config);
            return {r.probability, r.truncation_proxy};
        }
        case Metric::system:
        {
            const auto r = analytic::system_coverage(down, up, db_to_linear(s.threshold_link_db),
                                                     s.config, s.application);
            return {r.probability, r.truncation_proxy};
        }
    }
    return {};
}

mc::McEstimate mc_point(const Scenario& s, const mc::TrialPlan& plan)
{
    const double down = db_to_linear(s.threshold_down_db);
    const double up = db_to_linear(s.threshold_up_db);
    switch (s.sweep.metric)
    {
        case Metric::downlink:
            return mc::simulate_downlink_coverage(down, s.config, plan);
        case Metric::uplink:
            return mc::simulate_uplink_coverage(up, s.config, plan);
        case Metric::system:
            return mc::simulate_system(down, up, db_to_linear(s.threshold_link_db), s.config,
                                       s.application, plan)
                .system;
    }
    return {};
}

std::string axis_label(Axis a)
{
    switch (a)
    {
        case Axis::threshold_db:
            return "threshold [dB]";
        case Axis::altitude:
            return "UAV altitude [m]";
        case Axis::density:
            return "UAV density [1/m^2]";
        case Axis::antenna_elements:
            return "antenna elements";
        case Axis::cluster_size:
            return "cluster size";
        case Axis::relay_distance:
            return "relay distance [m]";
    }
    return "";
}

}  // namespace

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job)
{
    const std::size_t workers =
        std::min<std::size_t>(n, std::max(1u, std::thread::hardware_concurrency()));
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
            {
                try
                {
                    job(i);
                }
                catch (...)
                {
                    std::lock_guard lock(failure_mutex);
                    if (!failure)
                        failure = std::current_exception();
                }
            }
        });
    for (auto& t : pool)
        t.join();
    if (failure)
        std::rethrow_exception(failure);
}

Scenario at_axis_value(const Scenario& base, Axis axis, double value)
{
    Scenario s = base;
    auto& c = s.config;
    switch (axis)
    {
        case Axis::threshold_db:
            if (s.sweep.metric == Metric::uplink)
                s.threshold_up_db = value;
            else
                s.threshold_down_db = value;
            if (s.sweep.metric == Metric::system)
            {
                s.threshold_up_db = value;
                s.threshold_link_db = value;
            }
            break;
        case Axis::altitude:
            c.h_v_up = value;
            c.h_v_down = value;
            break;
        case Axis::density:
            c.lambda_v_up = value;
            c.lambda_v_down = value;
            break;
        case Axis::antenna_elements:
        {
            const int n = static_cast<int>(std::lround(value));
            c.antennas.bs = channel::upa_setup(n);
            c.antennas.uav = channel::upa_setup(n);
            break;
        }
        case Axis::cluster_size:
            c.cluster.size = std::round(value);
            break;
        case Axis::relay_distance:
            c.relay_distance = value;
            break;
    }
    validate_scenario(s);
    return s;
}

CoverageCurve compute_curve(const Scenario& scenario)
{
    validate_scenario(scenario);
    const auto values = scenario.sweep.values();
    std::vector<Scenario> points;
    for (double v : values)
        points.push_back(at_axis_value(scenario, scenario.sweep.axis, v));

    CoverageCurve curve{scenario.sweep.axis, scenario.sweep.metric, scenario.preset,
                        std::vector<CurvePoint>(values.size())};
    mc::TrialPlan plan = scenario.plan;
    plan.trials = scenario.sweep.mc_trials;
    const bool with_mc = scenario.sweep.mc_trials > 0;

    // Threshold curves share one network draw per trial across all points.
    const bool shared_mc =
        with_mc && scenario.sweep.axis == Axis::threshold_db && scenario.sweep.metric != Metric::system;
    if (shared_mc)
    {
        std::vector<double> th;
        for (double v : values)
            th.push_back(db_to_linear(v));
        const auto est = scenario.sweep.metric == Metric::downlink
                             ? mc::simulate_downlink_curve(th, scenario.config, plan)
                             : mc::simulate_uplink_curve(th, scenario.config, plan);
        for (std::size_t i = 0; i < values.size(); ++i)
            curve.points[i].mc = est[i];
    }

    parallel_for(values.size(), [&](std::size_t i) {
        const auto e = analytic_point(points[i]);
        auto& p = curve.points[i];
        p.axis_value = values[i];
        p.analytic = e.probability;
        p.truncation_proxy = e.proxy;
        if (with_mc && !shared_mc)
            p.mc = mc_point(points[i], plan);
    });
    return curve;
}

std::string curve_csv(const CoverageCurve& curve)
{
    std::string out = "axis_value,analytic,mc_mean,mc_half_width,truncation_proxy\n";
    for (const auto& p : curve.points)
    {
        out += g10(p.axis_value) + "," + g10(p.analytic) + ",";
        if (p.mc)
            out += g10(p.mc->mean) + "," + g10(p.mc->half_width);
        else
            out += ",";
        out += "," + g10(p.truncation_proxy) + "\n";
    }
    return out;
}

std::string curve_stem(const CoverageCurve& curve)
{
    std::string stem = to_string(curve.metric) + "_" + to_string(curve.axis);
    if (curve.preset)
        stem += "_" + to_string(*curve.preset);
    return stem;
}

std::string curve_svg(const CoverageCurve& curve)
{
    svg::Series analytic{"analytic", {}, {}, false};
    svg::Series mc{"Monte Carlo", {}, {}, true};
    for (const auto& p : curve.points)
    {
        analytic.x.push_back(p.axis_value);
        analytic.y.push_back(p.analytic);
        if (p.mc)
        {
            mc.x.push_back(p.axis_value);
            mc.y.push_back(p.mc->mean);
        }
    }
    std::vector<svg::Series> series{analytic};
    if (!mc.x.empty())
        series.push_back(mc);
    return svg::line_chart(to_string(curve.metric) + " coverage", axis_label(curve.axis),
                           "coverage probability", series);
}

void write_atomic(const std::filesystem::path& path, const std::string& content)
{
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f)
            throw std::runtime_error("cannot write '" + tmp.string() + "'");
        f << content;
        if (!f.flush())
            throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    std::filesystem::rename(tmp, path);
}

std::vector<std::filesystem::path> run_sweep(const Scenario& scenario,
                                             const std::filesystem::path& out_dir)
{
    const auto curve = compute_curve(scenario);
    std::filesystem::create_directories(out_dir);
    const auto stem = curve_stem(curve);
    std::vector<std::filesystem::path> written{out_dir / (stem + ".csv")};
    write_atomic(written.back(), curve_csv(curve));
    if (scenario.sweep.svg)
    {
        written.push_back(out_dir / (stem + ".svg"));
        write_atomic(written.back(), curve_svg(curve));
    }
    return written;
}

}  // namespace cover::cli
