#include "cover/validation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <random>
#include <stdexcept>

#include <boost/math/tools/minima.hpp>

#include "cover/analytic.hpp"
#include "cover/geometry.hpp"
#include "cover/interference.hpp"
#include "cover/montecarlo.hpp"
#include "cover/oracles.hpp"
#include "cover/rng.hpp"
#include "cover/sweep.hpp"

namespace cover::validation {

namespace {

constexpr std::uint64_t kStreamKernels = 96;
constexpr std::uint64_t kStreamSamplers = 97;

std::string g(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

std::string g6(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

mc::TrialPlan plan_with(const Scenario& base, std::int64_t trials)
{
    mc::TrialPlan plan = base.plan;
    plan.trials = trials;
    return plan;
}

Check make_check(std::string id, std::string description, double value, double limit,
                 std::string relation, std::string detail)
{
    bool pass = false;
    if (relation == "<=")
        pass = value <= limit;
    else if (relation == ">=")
        pass = value >= limit;
    else if (relation == ">")
        pass = value > limit;
    else
        throw std::logic_error("unknown relation " + relation);
    return {std::move(id), std::move(description), pass, value, limit, std::move(relation),
            std::move(detail)};
}

//! Worst point of an analytic-vs-MC comparison with a per-point allowance.
struct Worst
{
    double margin = -INFINITY;  ///< |a - m| - half_width - allowance
    double excess = 0;          ///< |a - m| - half_width
    double allowance = 0;
    std::string where;

    void offer(double analytic, const mc::McEstimate& m, double allow, std::string at)
    {
        const double ex = std::abs(analytic - m.mean) - m.half_width;
        if (ex - allow > margin)
        {
            margin = ex - allow;
            excess = ex;
            allowance = allow;
            where = std::move(at);
        }
    }
};

// Sorted samples against a CDF; returns the KS p-value and statistic.
std::pair<double, double> ks_test(std::vector<double> samples,
                                  const std::function<std::vector<double>(const std::vector<double>&)>& cdf)
{
    std::sort(samples.begin(), samples.end());
    const auto f = cdf(samples);
    const double d = oracle::ks_statistic(samples, f);
    return {oracle::ks_pvalue(d, samples.size()), d};
}

}  // namespace

Budget Budget::of(Suite suite)
{
    if (suite == Suite::full)
        return {100000, 20000, 20000, 100000, 1000000, 10.0, 100};
    return {10000, 4000, 4000, 20000, 100000, 30.0, 20};
}

std::string Table::csv() const
{
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i)
        out += (i ? "," : "") + header[i];
    out += "\n";
    for (const auto& row : rows)
    {
        for (std::size_t i = 0; i < row.size(); ++i)
            out += (i ? "," : "") + row[i];
        out += "\n";
    }
    return out;
}

CheckOutput check_downlink_equivalence(const Scenario& base, const Budget& budget)
{
    ScenarioConfig cfg = base.config;
    cfg.h_b = 10;
    cfg.antennas.bs = channel::upa_setup(8);
    const double threshold = db_to_linear(10);
    const auto plan = plan_with(base, budget.downlink_trials);

    Table t{"downlink",
            {"density_factor", "lambda_v_down", "lambda_b", "analytic", "mc_mean",
             "mc_half_width", "abs_diff", "truncation_proxy"},
            {}};
    Worst worst;
    for (double factor : {0.2, 1.0, 3.0, 5.0})
    {
        cfg.lambda_v_down = factor * ScenarioConfig::baseline_density;
        cfg.lambda_b = std::max(base.config.lambda_b, cfg.lambda_v_down);
        const auto a = analytic::coverage_downlink(threshold, cfg);
        const auto m = mc::simulate_downlink_coverage(threshold, cfg, plan);
        worst.offer(a.probability, m, 0.03, "density factor " + g6(factor));
        t.rows.push_back({g(factor), g(cfg.lambda_v_down), g(cfg.lambda_b), g(a.probability),
                          g(m.mean), g(m.half_width), g(std::abs(a.probability - m.mean)),
                          g(a.truncation_proxy)});
    }
    return {make_check("C1",
                       "downlink analytic vs MC, h_b = 10 m, 10 dB, four UAV densities: "
                       "|diff| - half_width <= 0.03",
                       worst.excess, 0.03, "<=", "worst at " + worst.where),
            {t}};
}

CheckOutput check_uplink_equivalence(const Scenario& base, const Budget& budget)
{
    ScenarioConfig cfg = base.config;
    cfg.antennas.user = channel::upa_setup(1);
    cfg.antennas.uav = channel::upa_setup(2);
    cfg.cluster.population = geometry::Population::fixed;
    const double threshold = db_to_linear(-13);
    const auto plan = plan_with(base, budget.uplink_trials);

    Table t{"uplink",
            {"cluster", "users", "analytic", "mc_mean", "mc_half_width", "abs_diff", "allowance",
             "truncation_proxy"},
            {}};
    Worst worst;
    for (auto kind : {geometry::ClusterKind::thomas, geometry::ClusterKind::matern})
        for (double users : {1.0, 4.0, 10.0})
        {
            cfg.cluster.kind = kind;
            cfg.cluster.size = users;
            const auto a = analytic::coverage_uplink(threshold, cfg);
            const auto m = mc::simulate_uplink_coverage(threshold, cfg, plan);
            const double allow = m.mean > 0.8 ? 0.02 : 0.05;
            const std::string name = kind == geometry::ClusterKind::thomas ? "thomas" : "matern";
            worst.offer(a.probability, m, allow, name + " N=" + g6(users));
            t.rows.push_back({name, g(users), g(a.probability), g(m.mean), g(m.half_width),
                              g(std::abs(a.probability - m.mean)), g(allow),
                              g(a.truncation_proxy)});
        }
    return {make_check("C2",
                       "uplink analytic vs MC, -13 dB, N_u = 1, N_v = 2, Thomas and Matern: "
                       "|diff| - half_width within 0.05 (0.02 where MC > 0.8)",
                       worst.excess, worst.allowance, "<=",
                       "binding point " + worst.where + ", allowance " + g6(worst.allowance)),
            {t}};
}

CheckOutput check_population_equivalence(const Scenario& base, const Budget& budget)
{
    ScenarioConfig cfg = base.config;
    const std::vector<double> db{-20, -10, 0};
    std::vector<double> th;
    for (double d : db)
        th.push_back(db_to_linear(d));
    const auto plan = plan_with(base, budget.population_trials);

    Table t{"population",
            {"users", "threshold_db", "analytic_fixed", "analytic_poisson", "mc_fixed",
             "mc_poisson", "analytic_diff", "mc_diff"},
            {}};
    double worst = 0;
    std::string where;
    for (double users : {20.0, 30.0, 50.0})
    {
        cfg.cluster.size = users;
        cfg.cluster.population = geometry::Population::fixed;
        const auto fixed_model = analytic::CoverageModel::uplink(cfg);
        const auto fixed_mc = mc::simulate_uplink_curve(th, cfg, plan);
        cfg.cluster.population = geometry::Population::poisson;
        const auto random_model = analytic::CoverageModel::uplink(cfg);
        const auto random_mc = mc::simulate_uplink_curve(th, cfg, plan);
        for (std::size_t i = 0; i < th.size(); ++i)
        {
            const double af = fixed_model.coverage(th[i]).probability;
            const double ar = random_model.coverage(th[i]).probability;
            const double da = std::abs(af - ar);
            const double dm = std::abs(fixed_mc[i].mean - random_mc[i].mean);
            for (auto [d, kind] : {std::pair{da, "analytic"}, {dm, "MC"}})
                if (d > worst)
                {
                    worst = d;
                    where = std::string(kind) + ", N=" + g6(users) + ", " + g6(db[i]) + " dB";
                }
            t.rows.push_back({g(users), g(db[i]), g(af), g(ar), g(fixed_mc[i].mean),
                              g(random_mc[i].mean), g(da), g(dm)});
        }
    }
    return {make_check("C3",
                       "fixed vs Poisson cluster population, N in {20, 30, 50}, analytic and MC "
                       "separately: |diff| < 0.02",
                       worst, 0.02, "<=", "worst at " + where),
            {t}};
}

CheckOutput check_altitude_shape(const Scenario& base, const Budget& budget)
{
    ScenarioConfig cfg = base.config;
    cfg.cluster.size = 30;
    cfg.relay_distance = 250;
    const double th = db_to_linear(-20);
    auto system = [th](ScenarioConfig c, double h) {
        c.h_v_up = h;
        c.h_v_down = h;
        return analytic::system_coverage(th, th, th, c, analytic::Application::relaying)
            .probability;
    };

    ScenarioConfig low_area = cfg;
    low_area.blockage.beta_a = 0.3;
    ScenarioConfig high_area = cfg;
    high_area.blockage.beta_a = 0.5;
    ScenarioConfig dense = high_area;
    dense.lambda_b *= 3;
    dense.lambda_v_down *= 3;
    dense.lambda_v_up *= 3;
    const std::vector<std::pair<std::string, ScenarioConfig>> curves{
        {"beta_a_0.5", high_area}, {"beta_a_0.3", low_area}, {"beta_a_0.5_density_x3", dense}};

    std::vector<double> heights;
    for (double h = 30; h <= 300 + 1e-9; h += budget.altitude_step)
        heights.push_back(h);

    Table grid{"altitude", {"altitude"}, std::vector<std::vector<std::string>>(heights.size())};
    for (std::size_t i = 0; i < heights.size(); ++i)
        grid.rows[i].push_back(g(heights[i]));
    Table best{"altitude_maximizers",
               {"curve", "grid_argmax", "refined_argmax", "max_coverage", "interior"},
               {}};

    std::vector<double> argmax;
    bool interior = true;
    for (const auto& [name, c] : curves)
    {
        grid.header.push_back(name);
        std::vector<double> values(heights.size());
        cli::parallel_for(heights.size(), [&, &c = c](std::size_t i) { values[i] = system(c, heights[i]); });
        for (std::size_t i = 0; i < heights.size(); ++i)
            grid.rows[i].push_back(g(values[i]));
        const auto k = static_cast<std::size_t>(
            std::max_element(values.begin(), values.end()) - values.begin());
        const bool inside = k > 0 && k + 1 < heights.size();
        interior = interior && inside;
        double h_star = heights[k];
        double p_star = values[k];
        if (inside)
        {
            std::uintmax_t iters = 40;
            const auto r = boost::math::tools::brent_find_minima(
                [&, &c = c](double h) { return -system(c, h); }, heights[k - 1], heights[k + 1], 20,
                iters);
            if (-r.second >= p_star)
            {
                h_star = r.first;
                p_star = -r.second;
            }
        }
        argmax.push_back(h_star);
        best.rows.push_back({name, g(heights[k]), g(h_star), g(p_star), inside ? "yes" : "no"});
    }

    const double area_shift = argmax[0] - argmax[1];
    const double density_shift = argmax[2] - argmax[0];
    const double shift = std::min(area_shift, density_shift);
    auto check = make_check(
        "C4",
        "system coverage vs UAV altitude 30..300 m: interior maximum above 30 m that moves up "
        "when beta_a goes 0.3 -> 0.5 and when densities triple",
        shift, 0, ">",
        "maximizers " + g6(argmax[1]) + " m (beta_a 0.3), " + g6(argmax[0]) + " m (beta_a 0.5), " +
            g6(argmax[2]) + " m (x3 density); interior " + (interior ? "yes" : "no") +
            "; value is the smaller upward shift");
    check.pass = check.pass && interior && argmax[0] > 30;
    return {check, {grid, best}};
}

CheckOutput check_noise_negligible(const Scenario& base, const Budget&)
{
    ScenarioConfig on = base.config;
    on.blockage.beta_b = 100e-6;
    on.thermal_noise = true;
    on.p_v = 1;
    on.p_u = 1;
    ScenarioConfig off = on;
    off.thermal_noise = false;

    Table t{"noise", {"link", "threshold_db", "sinr_coverage", "sir_coverage", "abs_diff"}, {}};
    double worst = 0;
    std::string where;
    for (const char* link : {"downlink", "uplink"})
    {
        const bool down = std::string(link) == "downlink";
        const auto with = down ? analytic::CoverageModel::downlink(on)
                               : analytic::CoverageModel::uplink(on);
        const auto without = down ? analytic::CoverageModel::downlink(off)
                                  : analytic::CoverageModel::uplink(off);
        for (double db = -20; db <= 20; db += 5)
        {
            const double a = with.coverage(db_to_linear(db)).probability;
            const double b = without.coverage(db_to_linear(db)).probability;
            if (std::abs(a - b) > worst)
            {
                worst = std::abs(a - b);
                where = std::string(link) + " at " + g6(db) + " dB";
            }
            t.rows.push_back({link, g(db), g(a), g(b), g(std::abs(a - b))});
        }
    }
    return {make_check("C5",
                       "thermal noise on vs off at 100 MHz and 1 W, -20..20 dB, downlink and "
                       "uplink: |diff| < 0.01",
                       worst, 0.01, "<=", worst > 0 ? "worst at " + where : "no difference"),
            {t}};
}

CheckOutput check_nlos_negligible(const Scenario& base, const Budget&)
{
    ScenarioConfig cfg = base.config;
    cfg.blockage.beta_b = 100e-6;

    Table t{"nlos", {"link", "threshold_db", "coverage", "los_part", "nlos_part"}, {}};
    double worst = 0;
    std::string where = "none";
    for (const char* link : {"downlink", "uplink"})
    {
        const bool down = std::string(link) == "downlink";
        const auto model = down ? analytic::CoverageModel::downlink(cfg)
                                : analytic::CoverageModel::uplink(cfg);
        for (double db = -20; db <= 20; db += 5)
        {
            const auto r = model.coverage(db_to_linear(db));
            if (std::abs(r.nlos) > worst)
            {
                worst = std::abs(r.nlos);
                where = std::string(link) + " at " + g6(db) + " dB";
            }
            t.rows.push_back({link, g(db), g(r.probability), g(r.los), g(r.nlos)});
        }
    }
    return {make_check("C6",
                       "dropping the NLOS serving branch at beta_b = 100e-6, -20..20 dB, downlink "
                       "and uplink: change < 0.02",
                       worst, 0.02, "<=", "largest NLOS share at " + where),
            {t}};
}

CheckOutput check_kernels(const Scenario& base, const Budget& budget)
{
    const auto seed = base.plan.base_seed;
    Table t{"kernels",
            {"kernel", "alpha", "nakagami", "s", "a", "b", "dh", "gain", "kernel_value",
             "oracle_value", "rel_error"},
            {}};
    double worst = 0;
    std::string where;
    auto draw = [](Rng& rng, double lo, double hi, bool log_scale) {
        std::uniform_real_distribution<double> u(0, 1);
        const double x = u(rng);
        return log_scale ? lo * std::pow(hi / lo, x) : lo + (hi - lo) * x;
    };
    struct Tuple
    {
        double s, a, b, dh, gain;
        int nakagami;
    };
    auto random_tuple = [&](Rng& rng, double alpha) {
        Tuple p{};
        p.nakagami = std::uniform_int_distribution<int>(1, 5)(rng);
        p.a = draw(rng, 0, 300, false);
        p.b = p.a + draw(rng, 1, 2000, true);
        p.dh = draw(rng, 0, 200, false);
        p.gain = draw(rng, 1e-2, 1e2, true);
        const double z = draw(rng, 1e-3, 1e3, true);
        p.s = z * std::pow(p.a * p.a + p.dh * p.dh + 1, 0.5 * alpha) / p.gain;
        return p;
    };

    for (int kind = 0; kind < 2; ++kind)
        for (int i = 0; i < budget.kernel_tuples; ++i)
        {
            Rng rng = make_stream(seed, kStreamKernels, static_cast<std::uint64_t>(kind * 100000 + i));
            const double alpha = kind == 0 ? 2.0 : draw(rng, 2.1, 5, false);
            const auto p = random_tuple(rng, alpha);
            const channel::StateLaw law{alpha, 1.0, p.nakagami};
            const double k = analytic::annulus_kernel(p.s, p.a, p.b, p.dh, p.gain, law);
            const double o = oracle::annulus_integral(p.s, p.a, p.b, p.dh, p.gain, law);
            const double rel = std::abs(k - o) / std::abs(o);
            const char* name = kind == 0 ? "f2" : "hypergeometric";
            if (!(rel <= worst))
            {
                worst = rel;
                where = std::string(name) + " tuple " + std::to_string(i);
            }
            t.rows.push_back({name, g(alpha), std::to_string(p.nakagami), g(p.s), g(p.a), g(p.b),
                              g(p.dh), g(p.gain), g(k), g(o), g(rel)});
        }

    // Branch continuity: the step from alpha = 2 to 2.01 through the two kernel
    // branches must equal the step the quadrature oracle sees.
    Table c{"kernel_continuity",
            {"tuple", "kernel_alpha2", "kernel_alpha2.01", "oracle_alpha2", "oracle_alpha2.01",
             "raw_rel_change", "branch_jump"},
            {}};
    double worst_jump = 0;
    for (int i = 0; i < std::min(budget.kernel_tuples, 20); ++i)
    {
        Rng rng = make_stream(seed, kStreamKernels, static_cast<std::uint64_t>(200000 + i));
        const auto p = random_tuple(rng, 2.0);
        const channel::StateLaw two{2.0, 1.0, p.nakagami};
        const channel::StateLaw near{2.01, 1.0, p.nakagami};
        const double k2 = analytic::annulus_kernel(p.s, p.a, p.b, p.dh, p.gain, two);
        const double k201 = analytic::annulus_kernel(p.s, p.a, p.b, p.dh, p.gain, near);
        const double o2 = oracle::annulus_integral(p.s, p.a, p.b, p.dh, p.gain, two);
        const double o201 = oracle::annulus_integral(p.s, p.a, p.b, p.dh, p.gain, near);
        const double jump = std::abs((k201 - k2) - (o201 - o2)) / std::abs(o2);
        worst_jump = std::max(worst_jump, jump);
        c.rows.push_back({std::to_string(i), g(k2), g(k201), g(o2), g(o201),
                          g(std::abs(k201 - k2) / std::abs(k2)), g(jump)});
    }

    auto check = make_check("C7",
                            "annulus kernels vs adaptive quadrature on random (s, a, b, gain): "
                            "relative error <= 1e-6; branch jump at alpha 2 -> 2.01 <= 1e-3",
                            worst, 1e-6, "<=",
                            "worst at " + where + "; largest branch jump " + g6(worst_jump));
    check.pass = check.pass && worst_jump <= 1e-3;
    return {check, {t, c}};
}

CheckOutput check_distributions(const Scenario& base, const Budget& budget)
{
    const auto seed = base.plan.base_seed;
    const auto n = static_cast<std::size_t>(budget.ks_samples);
    const double density = base.config.lambda_b;
    auto thomas = base.config.cluster;
    thomas.kind = geometry::ClusterKind::thomas;
    auto matern = base.config.cluster;
    matern.kind = geometry::ClusterKind::matern;

    Table t{"distributions", {"sampler", "samples", "ks_statistic", "p_value"}, {}};
    double worst = 1;
    std::string where;
    auto record = [&](const std::string& name, std::pair<double, double> r) {
        if (r.first < worst)
        {
            worst = r.first;
            where = name;
        }
        t.rows.push_back({name, std::to_string(n), g(r.second), g(r.first)});
    };
    auto draw_all = [&](std::uint64_t test, const std::function<double(Rng&)>& one) {
        std::vector<double> out(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            Rng rng = make_stream(seed, kStreamSamplers, test * 10000000ULL + i);
            out[i] = one(rng);
        }
        return out;
    };

    const double reach = geometry::nearest_tail_radius(density, 1e-12);
    record("ppp_nearest", ks_test(draw_all(0, [&](Rng& rng) {
                                      double best = reach;
                                      for (const auto& p : geometry::sample_ppp(density, {0, reach}, rng))
                                          best = std::min(best, p.norm());
                                      return best;
                                  }),
                                  [&](const std::vector<double>& x) {
                                      std::vector<double> f;
                                      for (double v : x)
                                          f.push_back(geometry::cdf_nearest_ppp(v, density));
                                      return f;
                                  }));

    for (const auto& [name, model] : {std::pair{"thomas_intra", thomas}, {"matern_intra", matern}})
        record(name, ks_test(draw_all(name == std::string("thomas_intra") ? 1 : 2,
                                      [&, &model = model](Rng& rng) {
                                          return geometry::sample_offset(model, rng).norm();
                                      }),
                             [&, &model = model](const std::vector<double>& x) {
                                 std::vector<double> f;
                                 for (double v : x)
                                     f.push_back(geometry::cdf_intra(v, model));
                                 return f;
                             }));

    const std::vector<std::tuple<std::string, geometry::ClusterModel, double>> inter{
        {"thomas_inter_q300", thomas, 300.0},
        {"matern_inter_q150", matern, 150.0},
        {"matern_inter_q50", matern, 50.0}};
    std::uint64_t test = 3;
    for (const auto& [name, model, q] : inter)
        record(name, ks_test(draw_all(test++,
                                      [&, &model = model, q = q](Rng& rng) {
                                          const auto o = geometry::sample_offset(model, rng);
                                          return std::hypot(q + o.x, o.y);
                                      }),
                             [&, &model = model, q = q](const std::vector<double>& x) {
                                 return oracle::cdf_by_quadrature(
                                     [&](double r) {
                                         return geometry::pdf_inter_conditional(r, q, model);
                                     },
                                     0, x);
                             }));

    return {make_check("C8",
                       "sampler distances vs their densities (PPP nearest, Thomas/Matern intra "
                       "and conditional inter): KS p-value >= 0.01",
                       worst, 0.01, ">=", "smallest p-value for " + where),
            {t}};
}

CheckOutput check_link_success(const Scenario& base, const Budget& budget)
{
    const ScenarioConfig& cfg = base.config;
    const auto plan = plan_with(base, budget.link_draws);
    const std::vector<std::pair<double, double>> points{
        {100, 30}, {250, 20}, {250, 25}, {500, 15}, {500, 20},
        {1000, 10}, {1000, 15}, {2000, 5}, {2000, 10}, {4000, 0}};

    Table t{"link", {"relay_distance", "threshold_db", "analytic", "mc_mean", "mc_half_width",
                     "abs_diff"},
            {}};
    Worst worst;
    for (auto [y0, db] : points)
    {
        const double th = db_to_linear(db);
        const double a = analytic::link_success(th, y0, cfg);
        const auto m = mc::simulate_link_success(th, y0, cfg, plan);
        worst.offer(a, m, 0, g6(y0) + " m, " + g6(db) + " dB");
        t.rows.push_back({g(y0), g(db), g(a), g(m.mean), g(m.half_width), g(std::abs(a - m.mean))});
    }
    return {make_check("C9",
                       "relay hop success vs fading-only MC at ten (distance, threshold) points: "
                       "|diff| within the 99% half-width",
                       worst.excess, 0, "<=", "worst at " + worst.where),
            {t}};
}

CheckOutput check_unified_form(const Scenario& base, const Budget&)
{
    const ScenarioConfig& cfg = base.config;
    Table t{"unified", {"link", "threshold_db", "direct", "general", "abs_diff"}, {}};
    double worst = 0;
    std::string where = "none";
    for (const char* link : {"downlink", "uplink"})
    {
        const bool down = std::string(link) == "downlink";
        const auto model = down ? analytic::CoverageModel::downlink(cfg)
                                : analytic::CoverageModel::uplink(cfg);
        const auto branches = model.branches();
        for (double db : {-20.0, -10.0, 0.0, 10.0, 20.0})
        {
            const double th = db_to_linear(db);
            const double direct = down ? analytic::coverage_downlink(th, cfg).probability
                                       : analytic::coverage_uplink(th, cfg).probability;
            double general = 0;
            for (const auto& b : branches)
                general += analytic::coverage_general(th, b.nakagami, b.noise_term, b.laplace,
                                                      b.pdf, model.grid());
            const double d = std::abs(direct - general);
            if (d > worst)
            {
                worst = d;
                where = std::string(link) + " at " + g6(db) + " dB";
            }
            t.rows.push_back({link, g(db), g(direct), g(general), g(d)});
        }
    }
    return {make_check("C10",
                       "unified coverage integral vs the dedicated downlink and uplink "
                       "evaluations: |diff| <= 1e-10",
                       worst, 1e-10, "<=", "worst at " + where),
            {t}};
}

bool SuiteResult::all_pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string format_report(const SuiteResult& result, Suite suite, const Scenario& base)
{
    std::string out = "coverage validation report\n";
    out += std::string("suite: ") + (suite == Suite::full ? "full" : "quick") + "\n";
    out += "seed: " + std::to_string(base.plan.base_seed) + "\n";
    out += "confidence: " + g6(base.plan.confidence) + "\n\n";
    for (const auto& c : result.checks)
    {
        out += c.id + " " + (c.pass ? "PASS" : "FAIL") + "  value " + g6(c.value) + " " +
               c.relation + " " + g6(c.limit) + "\n";
        out += "    " + c.description + "\n";
        out += "    " + c.detail + "\n";
    }
    std::size_t passed = 0;
    for (const auto& c : result.checks)
        passed += c.pass;
    out += "\n" + std::to_string(passed) + "/" + std::to_string(result.checks.size()) +
           " checks passed\n";
    return out;
}

SuiteResult run_suite(const Scenario& base, Suite suite, const std::filesystem::path& out_dir,
                      std::ostream* progress)
{
    validate_scenario(base);
    const auto budget = Budget::of(suite);
    using Fn = CheckOutput (*)(const Scenario&, const Budget&);
    const Fn checks[] = {check_downlink_equivalence, check_uplink_equivalence,
                         check_population_equivalence, check_altitude_shape,
                         check_noise_negligible, check_nlos_negligible,
                         check_kernels, check_distributions,
                         check_link_success, check_unified_form};

    SuiteResult result;
    std::vector<std::pair<std::string, std::string>> files;
    for (Fn fn : checks)
    {
        const auto start = std::chrono::steady_clock::now();
        auto out = fn(base, budget);
        const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
        if (progress)
            *progress << out.check.id << (out.check.pass ? " PASS" : " FAIL") << " ("
                      << g6(took.count()) << " s)" << std::endl;
        for (const auto& t : out.tables)
            files.emplace_back(out.check.id + "_" + t.name + ".csv", t.csv());
        result.checks.push_back(std::move(out.check));
    }

    std::filesystem::create_directories(out_dir);
    for (const auto& [name, text] : files)
        cli::write_atomic(out_dir / name, text);
    cli::write_atomic(out_dir / "report.txt", format_report(result, suite, base));
    return result;
}

}  // namespace cover::validation
