#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cover/analytic.hpp"
#include "cover/scenario.hpp"

namespace cover::mc {

struct TrialPlan
{
    std::int64_t trials = 100000;
    std::uint64_t base_seed = 20240611;
    //! Simulation disc radius [m]; 0 uses the analytic tail radius of the phase
    double window_radius = 0;
    double confidence = 0.99;

    void validate() const;
};

struct McEstimate
{
    double mean = 0;
    double half_width = 0;
    std::int64_t trials = 0;
};

/*!
 * Proportion estimate with a normal-approximation half-width, switching to
 * the Wilson interval when the estimate lies within 3/n of 0 or 1.
 */
McEstimate proportion_estimate(std::int64_t successes, std::int64_t n, double confidence);
//! Sample-mean estimate with a normal-approximation half-width.
McEstimate mean_estimate(double sum, double sum_sq, std::int64_t n, double confidence);

//! Coverage curve of any link setup; one network draw per trial serves all thresholds.
std::vector<McEstimate> simulate_coverage(const std::vector<double>& thresholds,
                                          const analytic::LinkSetup& setup,
                                          const ScenarioConfig& cfg, const TrialPlan& plan,
                                          std::uint64_t stream);

McEstimate simulate_downlink_coverage(double threshold, const ScenarioConfig& cfg,
                                      const TrialPlan& plan);
McEstimate simulate_uplink_coverage(double threshold, const ScenarioConfig& cfg,
                                    const TrialPlan& plan);
std::vector<McEstimate> simulate_downlink_curve(const std::vector<double>& thresholds,
                                                const ScenarioConfig& cfg,
                                                const TrialPlan& plan);
std::vector<McEstimate> simulate_uplink_curve(const std::vector<double>& thresholds,
                                              const ScenarioConfig& cfg,
                                              const TrialPlan& plan);
std::vector<McEstimate> simulate_variant_curve(analytic::Variant v,
                                               const std::vector<double>& thresholds,
                                               const ScenarioConfig& cfg,
                                               const TrialPlan& plan);

enum class Phase
{
    downlink,      ///< UAVs beyond r1 seen by the typical BS
    uplink_intra,  ///< other users of the typical cluster
    uplink_inter,  ///< users of every other cluster
};

//! Empirical E[exp(-s I)]; `r1` conditions the downlink exclusion radius.
McEstimate estimate_laplace(double s, Phase phase, std::optional<double> r1,
                            const ScenarioConfig& cfg, const TrialPlan& plan);

//! Fading-only estimate of the relay hop SNR success.
McEstimate simulate_link_success(double threshold, double y0, const ScenarioConfig& cfg,
                                 const TrialPlan& plan);

struct SystemEstimate
{
    McEstimate system;  ///< all stages succeed in the same trial
    McEstimate downlink;
    McEstimate uplink;
    McEstimate link;
};

SystemEstimate simulate_system(double th_down, double th_up, double th_link,
                               const ScenarioConfig& cfg, analytic::Application app,
                               const TrialPlan& plan);

}  // namespace cover::mc
