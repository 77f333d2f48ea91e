#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "cover/analytic.hpp"
#include "cover/montecarlo.hpp"

using namespace cover;

namespace {

mc::TrialPlan plan(std::int64_t trials)
{
    mc::TrialPlan p;
    p.trials = trials;
    return p;
}

}  // namespace

TEST_CASE("proportion and mean estimates")
{
    const auto half = mc::proportion_estimate(50, 100, 0.99);
    CHECK(half.mean == 0.5);
    CHECK(half.half_width == doctest::Approx(2.5758293035489 * 0.05).epsilon(1e-9));
    const auto zero = mc::proportion_estimate(0, 100, 0.99);
    CHECK(zero.mean == 0);
    CHECK(zero.half_width > 0);
    const auto m = mc::mean_estimate(10.0, 30.0, 5, 0.95);
    CHECK(m.mean == 2);
    CHECK(m.half_width > 0);
    CHECK_THROWS_AS(mc::proportion_estimate(5, 0, 0.99), std::invalid_argument);
}

TEST_CASE("trial plan validation")
{
    auto p = plan(0);
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
    p = plan(10);
    p.confidence = 1.0;
    CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("simulation is deterministic for a fixed seed")
{
    ScenarioConfig c;
    const auto a = mc::simulate_downlink_coverage(0.1, c, plan(500));
    const auto b = mc::simulate_downlink_coverage(0.1, c, plan(500));
    CHECK(a.mean == b.mean);
    auto other = plan(500);
    other.base_seed = 7;
    CHECK(mc::simulate_downlink_coverage(0.1, c, other).trials == 500);
}

TEST_CASE("downlink and uplink MC agree with the analytic values")
{
    ScenarioConfig c;
    c.cluster.size = 5;
    const std::vector<double> th{db_to_linear(-10), db_to_linear(10)};
    const auto down = mc::simulate_downlink_curve(th, c, plan(4000));
    const auto up = mc::simulate_uplink_curve(th, c, plan(1500));
    for (std::size_t i = 0; i < th.size(); ++i)
    {
        CHECK(std::abs(down[i].mean - analytic::coverage_downlink(th[i], c).probability) <=
              down[i].half_width + 0.01);
        CHECK(std::abs(up[i].mean - analytic::coverage_uplink(th[i], c).probability) <=
              up[i].half_width + 0.01);
    }
}

TEST_CASE("empirical Laplace transforms agree with the analytic ones")
{
    ScenarioConfig c;
    const auto d = mc::estimate_laplace(1e11, mc::Phase::downlink, 150.0, c, plan(3000));
    CHECK(std::abs(d.mean - analytic::laplace_downlink(1e11, 150, c)) <= d.half_width + 0.005);
    const auto intra = mc::estimate_laplace(1e9, mc::Phase::uplink_intra, {}, c, plan(3000));
    CHECK(std::abs(intra.mean - analytic::laplace_intra(1e9, c)) <= intra.half_width + 0.005);
    const auto inter = mc::estimate_laplace(1e10, mc::Phase::uplink_inter, {}, c, plan(600));
    CHECK(std::abs(inter.mean - analytic::laplace_inter(1e10, c).value) <= inter.half_width + 0.005);
}

TEST_CASE("relay hop MC agrees with the closed form")
{
    ScenarioConfig c;
    const double th = db_to_linear(20);
    const auto m = mc::simulate_link_success(th, 400, c, plan(50000));
    CHECK(std::abs(m.mean - analytic::link_success(th, 400, c)) <= m.half_width);
}

TEST_CASE("a window smaller than the interference tail is rejected")
{
    ScenarioConfig c;
    auto p = plan(10);
    p.window_radius = 100;
    CHECK_THROWS_AS(mc::simulate_downlink_coverage(0.1, c, p), std::invalid_argument);
}

TEST_CASE("system simulation reports each stage")
{
    ScenarioConfig c;
    c.cluster.size = 3;
    const double th = db_to_linear(-10);
    const auto s = mc::simulate_system(th, th, th, c, analytic::Application::relaying, plan(400));
    CHECK(s.system.mean <= s.downlink.mean + 1e-12);
    CHECK(s.system.mean <= s.uplink.mean + 1e-12);
    CHECK(s.link.trials == 400);
}
