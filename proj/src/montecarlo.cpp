#include "cover/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include <boost/math/distributions/normal.hpp>

#include "cover/geometry.hpp"
#include "cover/rng.hpp"

namespace cover::mc {

namespace {

constexpr std::uint64_t kStreamDownlink = 1;
constexpr std::uint64_t kStreamUplink = 2;
constexpr std::uint64_t kStreamVariant = 16;
constexpr std::uint64_t kStreamLaplace = 32;
constexpr std::uint64_t kStreamLink = 48;
constexpr std::uint64_t kStreamSystem = 64;

// Tolerated fraction of trials without any candidate serving transmitter.
constexpr double kMaxEmptyFraction = 1e-3;

double z_value(double confidence)
{
    boost::math::normal unit;
    return boost::math::quantile(unit, 0.5 + 0.5 * confidence);
}

//! Path loss with the exponents that matter in practice kept off pow().
struct FastLaw
{
    double intercept = 1;
    double alpha = 2;
    int nakagami = 1;

    double loss(double d2) const
    {
        d2 = std::max(1.0, d2);
        if (alpha == 2)
            return intercept / d2;
        if (alpha == 4)
            return intercept / (d2 * d2);
        return intercept * std::pow(d2, -0.5 * alpha);
    }
};

//! Distributions owned by one trial, so that each trial depends only on its stream.
struct Draws
{
    std::uniform_real_distribution<double> unit{0.0, 1.0};
    std::exponential_distribution<double> exponential{1.0};
    std::gamma_distribution<double> gamma[2];

    explicit Draws(const FastLaw (&law)[2])
        : gamma{std::gamma_distribution<double>(law[0].nakagami, 1.0 / law[0].nakagami),
                std::gamma_distribution<double>(law[1].nakagami, 1.0 / law[1].nakagami)}
    {
    }
};

int poisson_count(double mean, Rng& rng)
{
    if (mean <= 0)
        return 0;
    return std::poisson_distribution<int>(mean)(rng);
}

/*!
 * Draws one network realisation around a receiver at the origin and
 * returns its SINR, or the pieces of its interference.
 */
class LinkSampler
{
  public:
    LinkSampler(const ScenarioConfig& cfg, const analytic::LinkSetup& setup, double window)
        : setup_(setup)
        , los_(cfg.blockage, setup.h_tx, setup.h_rx, cfg.force_nlos(), window)
        , gains_(channel::gain_mixture(setup.tx, setup.rx))
        , law_{{cfg.fading.los.intercept, cfg.fading.los.alpha, cfg.fading.los.nakagami},
               {cfg.fading.nlos.intercept, cfg.fading.nlos.alpha, cfg.fading.nlos.nakagami}}
        , dh2_((setup.h_tx - setup.h_rx) * (setup.h_tx - setup.h_rx))
        , o1_(setup.tx.main_gain * setup.rx.main_gain)
        , window_(window)
    {
    }

    Draws draws() const { return Draws(law_); }

    //! SINR of one trial; nullopt when no serving transmitter exists
    std::optional<double> sinr(Rng& rng) const
    {
        Draws d = draws();
        double interference = 0;
        double r_serving = 0;

        switch (setup_.serving)
        {
            case analytic::Serving::nearest:
            {
                const auto pts = geometry::sample_ppp(setup_.serving_density, {0.0, window_}, rng);
                if (pts.empty())
                    return std::nullopt;
                std::size_t best = 0;
                double best_r = pts[0].norm();
                for (std::size_t i = 1; i < pts.size(); ++i)
                {
                    const double r = pts[i].norm();
                    if (r < best_r)
                    {
                        best_r = r;
                        best = i;
                    }
                }
                r_serving = best_r;
                if (setup_.field == analytic::Field::ppp_outside)
                    for (std::size_t i = 0; i < pts.size(); ++i)
                        if (i != best)
                            interference += interferer_power(pts[i].norm(), rng, d);
                break;
            }
            case analytic::Serving::intra:
                r_serving = geometry::sample_offset(setup_.cluster, rng).norm();
                break;
            case analytic::Serving::overhead:
                break;
        }

        if (setup_.field == analytic::Field::ppp_everywhere)
            interference += ppp_interference(0.0, rng, d);
        else if (setup_.field == analytic::Field::clusters)
        {
            if (setup_.intra)
                interference += intra_interference(rng, d);
            interference += inter_interference(rng, d);
        }

        return serving_power(r_serving, rng, d) / (interference + setup_.noise);
    }

    double ppp_interference(double inner, Rng& rng, Draws& d) const
    {
        if (inner >= window_)
            return 0;
        double acc = 0;
        for (const auto& p : geometry::sample_ppp(setup_.field_density, {inner, window_}, rng))
            acc += interferer_power(p.norm(), rng, d);
        return acc;
    }

    //! Other users of the receiver's own cluster.
    double intra_interference(Rng& rng, Draws& d) const
    {
        const auto& model = setup_.cluster;
        const int others = model.population == geometry::Population::fixed
                               ? model.fixed_size() - 1
                               : poisson_count(model.size - 1, rng);
        double acc = 0;
        for (int i = 0; i < others; ++i)
            acc += interferer_power(geometry::sample_offset(model, rng).norm(), rng, d);
        return acc;
    }

    //! Users of every other cluster whose parent lies in the window.
    double inter_interference(Rng& rng, Draws& d) const
    {
        const auto& model = setup_.cluster;
        double acc = 0;
        for (const auto& parent : geometry::sample_ppp(setup_.field_density, {0.0, window_}, rng))
        {
            const int n = geometry::sample_population(model, rng);
            for (int i = 0; i < n; ++i)
            {
                const auto off = geometry::sample_offset(model, rng);
                acc += interferer_power(std::hypot(parent.x + off.x, parent.y + off.y), rng, d);
            }
        }
        return acc;
    }

    double link_success_snr(double r, Rng& rng) const
    {
        Draws d = draws();
        return serving_power(r, rng, d) / setup_.noise;
    }

  private:
    int draw_state(double r, Rng& rng, Draws& d) const
    {
        const double p = los_.p_los_at(r);
        if (p >= 1)
            return 0;
        if (p <= 0)
            return 1;
        return d.unit(rng) < p ? 0 : 1;
    }

    double fading(int state, Rng& rng, Draws& d) const
    {
        if (law_[state].nakagami == 1)
            return d.exponential(rng);
        return d.gamma[state](rng);
    }

    double interferer_power(double r, Rng& rng, Draws& d) const
    {
        const int k = draw_state(r, rng, d);
        const double g = gains_.value[gains_.select(d.unit(rng))];
        return setup_.power * g * fading(k, rng, d) * law_[k].loss(r * r + dh2_);
    }

    double serving_power(double r, Rng& rng, Draws& d) const
    {
        const int k = draw_state(r, rng, d);
        return setup_.power * o1_ * fading(k, rng, d) * law_[k].loss(r * r + dh2_);
    }

    analytic::LinkSetup setup_;
    channel::LosTable los_;
    channel::GainMixture gains_;
    FastLaw law_[2];
    double dh2_;
    double o1_;
    double window_;
};

double window_for(const ScenarioConfig& cfg, const TrialPlan& plan, double density)
{
    const double tail = density > 0 ? cfg.tail_radius(density) : 1.0;
    if (plan.window_radius <= 0)
        return tail;
    if (plan.window_radius < tail)
        throw std::invalid_argument("window_radius: must be at least the analytic tail radius ("
                                    + std::to_string(tail) + " m)");
    return plan.window_radius;
}

double window_for(const ScenarioConfig& cfg, const TrialPlan& plan,
                  const analytic::LinkSetup& setup)
{
    return window_for(cfg, plan, std::max(setup.field_density, setup.serving_density));
}

void check_empty(std::int64_t empty, std::int64_t trials)
{
    if (empty > kMaxEmptyFraction * trials)
        throw std::runtime_error(
            "montecarlo: no serving transmitter in the window in more than 0.1% of trials; "
            "enlarge window_radius");
}

}  // namespace

void TrialPlan::validate() const
{
    if (trials < 1)
        throw std::invalid_argument("trials: need at least one trial");
    if (!(window_radius >= 0) || !std::isfinite(window_radius))
        throw std::invalid_argument("window_radius: must be non-negative");
    if (!(confidence > 0 && confidence < 1))
        throw std::invalid_argument("confidence: must lie in (0,1)");
}

McEstimate proportion_estimate(std::int64_t successes, std::int64_t n, double confidence)
{
    if (n < 1)
        throw std::invalid_argument("proportion_estimate: need n >= 1");
    const double nn = static_cast<double>(n);
    const double p = successes / nn;
    const double z = z_value(confidence);
    McEstimate out{p, 0.0, n};
    if (p <= 3 / nn || p >= 1 - 3 / nn)
    {
        const double z2 = z * z;
        const double denom = 1 + z2 / nn;
        const double centre = (p + z2 / (2 * nn)) / denom;
        const double spread = z / denom * std::sqrt(p * (1 - p) / nn + z2 / (4 * nn * nn));
        out.half_width = std::max(std::abs(centre + spread - p), std::abs(p - (centre - spread)));
    }
    else
    {
        out.half_width = z * std::sqrt(p * (1 - p) / nn);
    }
    return out;
}

McEstimate mean_estimate(double sum, double sum_sq, std::int64_t n, double confidence)
{
    if (n < 1)
        throw std::invalid_argument("mean_estimate: need n >= 1");
    const double nn = static_cast<double>(n);
    const double mean = sum / nn;
    const double var = n > 1 ? std::max(0.0, (sum_sq - nn * mean * mean) / (nn - 1)) : 0.0;
    return {mean, z_value(confidence) * std::sqrt(var / nn), n};
}

std::vector<McEstimate> simulate_coverage(const std::vector<double>& thresholds,
                                          const analytic::LinkSetup& setup,
                                          const ScenarioConfig& cfg, const TrialPlan& plan,
                                          std::uint64_t stream)
{
    cfg.validate();
    plan.validate();
    const LinkSampler sampler(cfg, setup, window_for(cfg, plan, setup));

    std::vector<std::int64_t> hits(thresholds.size(), 0);
    std::int64_t empty = 0;
    for (std::int64_t t = 0; t < plan.trials; ++t)
    {
        Rng rng = make_stream(plan.base_seed, stream, static_cast<std::uint64_t>(t));
        const auto sinr = sampler.sinr(rng);
        if (!sinr)
        {
            ++empty;
            continue;
        }
        for (std::size_t i = 0; i < thresholds.size(); ++i)
            if (*sinr > thresholds[i])
                ++hits[i];
    }
    check_empty(empty, plan.trials);

    std::vector<McEstimate> out;
    for (auto h : hits)
        out.push_back(proportion_estimate(h, plan.trials, plan.confidence));
    return out;
}

std::vector<McEstimate> simulate_downlink_curve(const std::vector<double>& thresholds,
                                                const ScenarioConfig& cfg,
                                                const TrialPlan& plan)
{
    return simulate_coverage(thresholds, analytic::downlink_setup(cfg), cfg, plan,
                             kStreamDownlink);
}

std::vector<McEstimate> simulate_uplink_curve(const std::vector<double>& thresholds,
                                              const ScenarioConfig& cfg,
                                              const TrialPlan& plan)
{
    return simulate_coverage(thresholds, analytic::uplink_setup(cfg), cfg, plan, kStreamUplink);
}

std::vector<McEstimate> simulate_variant_curve(analytic::Variant v,
                                               const std::vector<double>& thresholds,
                                               const ScenarioConfig& cfg,
                                               const TrialPlan& plan)
{
    return simulate_coverage(thresholds, analytic::variant_setup(v, cfg), cfg, plan,
                             kStreamVariant + static_cast<std::uint64_t>(v));
}

McEstimate simulate_downlink_coverage(double threshold, const ScenarioConfig& cfg,
                                      const TrialPlan& plan)
{
    return simulate_downlink_curve({threshold}, cfg, plan).front();
}

McEstimate simulate_uplink_coverage(double threshold, const ScenarioConfig& cfg,
                                    const TrialPlan& plan)
{
    return simulate_uplink_curve({threshold}, cfg, plan).front();
}

McEstimate estimate_laplace(double s, Phase phase, std::optional<double> r1,
                            const ScenarioConfig& cfg, const TrialPlan& plan)
{
    if (!(s >= 0))
        throw std::invalid_argument("estimate_laplace needs s >= 0");
    cfg.validate();
    plan.validate();
    const auto setup = phase == Phase::downlink ? analytic::downlink_setup(cfg)
                                                : analytic::uplink_setup(cfg);
    const LinkSampler sampler(cfg, setup, window_for(cfg, plan, setup));
    const double inner = r1.value_or(0.0);
    if (!(inner >= 0))
        throw std::invalid_argument("estimate_laplace needs r1 >= 0");

    double sum = 0;
    double sum_sq = 0;
    const std::uint64_t stream = kStreamLaplace + static_cast<std::uint64_t>(phase);
    for (std::int64_t t = 0; t < plan.trials; ++t)
    {
        Rng rng = make_stream(plan.base_seed, stream, static_cast<std::uint64_t>(t));
        Draws d = sampler.draws();
        double interference = 0;
        switch (phase)
        {
            case Phase::downlink:
                interference = sampler.ppp_interference(inner, rng, d);
                break;
            case Phase::uplink_intra:
                interference = sampler.intra_interference(rng, d);
                break;
            case Phase::uplink_inter:
                interference = sampler.inter_interference(rng, d);
                break;
        }
        const double v = std::exp(-s * interference);
        sum += v;
        sum_sq += v * v;
    }
    return mean_estimate(sum, sum_sq, plan.trials, plan.confidence);
}

namespace {

analytic::LinkSetup relay_setup(const ScenarioConfig& cfg)
{
    analytic::LinkSetup s;
    s.serving = analytic::Serving::overhead;
    s.h_tx = cfg.h_v_up;
    s.h_rx = cfg.h_v_down;
    s.power = cfg.p_v;
    s.noise = cfg.noise_down();
    s.tx = cfg.antennas.uav;
    s.rx = cfg.antennas.uav;
    return s;
}

//! Relay hop with LOS forced unless every link is NLOS.
ScenarioConfig relay_config(const ScenarioConfig& cfg)
{
    ScenarioConfig out = cfg;
    if (!out.force_nlos())
        out.blockage.beta_b = 0;
    return out;
}

}  // namespace

McEstimate simulate_link_success(double threshold, double y0, const ScenarioConfig& cfg,
                                 const TrialPlan& plan)
{
    cfg.validate();
    plan.validate();
    if (!(y0 >= 0))
        throw std::invalid_argument("relay_distance: distance must be non-negative");
    const ScenarioConfig use = relay_config(cfg);
    const auto setup = relay_setup(use);
    const LinkSampler sampler(use, setup, 1.0);

    std::int64_t hits = 0;
    for (std::int64_t t = 0; t < plan.trials; ++t)
    {
        Rng rng = make_stream(plan.base_seed, kStreamLink, static_cast<std::uint64_t>(t));
        if (sampler.link_success_snr(y0, rng) > threshold)
            ++hits;
    }
    return proportion_estimate(hits, plan.trials, plan.confidence);
}

SystemEstimate simulate_system(double th_down, double th_up, double th_link,
                               const ScenarioConfig& cfg, analytic::Application app,
                               const TrialPlan& plan)
{
    plan.validate();
    const ScenarioConfig use = analytic::application_config(cfg, app);
    const bool relaying = app == analytic::Application::relaying;
    if (relaying && !use.relay_distance)
        throw std::invalid_argument("relay_distance: relaying needs a relay distance");

    const auto down_setup = analytic::downlink_setup(use);
    const auto up_setup = analytic::uplink_setup(use);
    const LinkSampler down(use, down_setup, window_for(use, plan, down_setup));
    const LinkSampler up(use, up_setup, window_for(use, plan, up_setup));
    const ScenarioConfig hop_cfg = relay_config(use);
    const LinkSampler hop(hop_cfg, relay_setup(hop_cfg), 1.0);
    const double y0 = relaying ? *use.relay_distance : 0.0;

    std::int64_t n_down = 0, n_up = 0, n_link = 0, n_all = 0, empty = 0;
    for (std::int64_t t = 0; t < plan.trials; ++t)
    {
        const auto idx = static_cast<std::uint64_t>(t);
        Rng rng_down = make_stream(plan.base_seed, kStreamSystem, idx);
        Rng rng_up = make_stream(plan.base_seed, kStreamSystem + 1, idx);
        Rng rng_link = make_stream(plan.base_seed, kStreamSystem + 2, idx);

        const auto s_down = down.sinr(rng_down);
        if (!s_down)
            ++empty;
        const bool ok_down = s_down && *s_down > th_down;
        const bool ok_up = *up.sinr(rng_up) > th_up;
        const bool ok_link = !relaying || hop.link_success_snr(y0, rng_link) > th_link;
        n_down += ok_down;
        n_up += ok_up;
        n_link += ok_link;
        n_all += ok_down && ok_up && ok_link;
    }
    check_empty(empty, plan.trials);

    const double conf = plan.confidence;
    return {proportion_estimate(n_all, plan.trials, conf),
            proportion_estimate(n_down, plan.trials, conf),
            proportion_estimate(n_up, plan.trials, conf),
            proportion_estimate(n_link, plan.trials, conf)};
}

}  // namespace cover::mc
