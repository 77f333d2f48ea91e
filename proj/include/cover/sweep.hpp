#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cover/montecarlo.hpp"
#include "cover/scenario_io.hpp"

namespace cover::cli {

struct CurvePoint
{
    double axis_value = 0;
    double analytic = 0;
    double truncation_proxy = 0;
    std::optional<mc::McEstimate> mc;
};

struct CoverageCurve
{
    Axis axis = Axis::threshold_db;
    Metric metric = Metric::downlink;
    std::optional<Preset> preset;
    std::vector<CurvePoint> points;
};

//! The scenario with one axis value applied; thresholds on the axis are in dB.
Scenario at_axis_value(const Scenario& base, Axis axis, double value);

//! Evaluate every point of `scenario.sweep`, with MC when sweep.mc_trials > 0.
CoverageCurve compute_curve(const Scenario& scenario);

//! CSV text: axis_value, analytic, mc_mean, mc_half_width, truncation_proxy.
std::string curve_csv(const CoverageCurve& curve);
std::string curve_svg(const CoverageCurve& curve);
//! File stem such as "downlink_threshold_db_mmwave28".
std::string curve_stem(const CoverageCurve& curve);

//! Write `content` to a temporary sibling and rename it over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);

//! Compute the curve, then write its CSV (and SVG when requested). Returns the files written.
std::vector<std::filesystem::path> run_sweep(const Scenario& scenario,
                                             const std::filesystem::path& out_dir);

//! Run `job(i)` for i in [0, n) on up to hardware_concurrency threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& job);

}  // namespace cover::cli
