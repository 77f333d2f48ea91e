#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include <boost/math/special_functions/gamma.hpp>

#include "cover/analytic.hpp"
#include "cover/geometry.hpp"

using namespace cover;
using namespace cover::analytic;

TEST_CASE("serving grid integrates the nearest-distance density")
{
    ScenarioConfig c;
    const double tail = geometry::nearest_tail_radius(c.lambda_v_down, 1e-8);
    const double scale = 1 / std::sqrt(M_PI * c.lambda_v_down);
    auto mass_error = [&](int nodes) {
        auto spec = c.quadrature;
        spec.node_count = nodes;
        const auto grid = serving_grid(c.blockage.rate(), tail, scale, spec);
        CHECK(grid.back().last_annulus);
        double mass = 0;
        for (const auto& n : grid)
            mass += n.weight * geometry::pdf_nearest_ppp(n.r, c.lambda_v_down);
        return mass - 1;
    };
    // The Chebyshev weights carry an O(m^-2) bias on integrands that do not
    // vanish at the piece ends.
    const double e30 = mass_error(30);
    CHECK(std::abs(e30) < 1e-3);
    CHECK(mass_error(60) / e30 == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("downlink coverage is a probability, split by serving state, and falls with threshold")
{
    ScenarioConfig c;
    const auto model = CoverageModel::downlink(c);
    double prev = 1;
    for (double db = -20; db <= 20; db += 5)
    {
        const auto r = model.coverage(db_to_linear(db));
        CHECK(r.probability >= 0);
        CHECK(r.probability <= prev + 1e-12);
        CHECK(r.los + r.nlos == doctest::Approx(r.probability).epsilon(1e-12));
        CHECK(r.truncation_proxy < 1e-3);
        prev = r.probability;
    }
    CHECK(coverage_downlink(1.0, c).probability == doctest::Approx(model.coverage(1.0).probability));
}

TEST_CASE("branch sum of the unified integral equals coverage")
{
    ScenarioConfig c;
    c.h_v_down = 60;
    const auto model = CoverageModel::downlink(c);
    for (double th : {0.01, 1.0, 30.0})
    {
        double sum = 0;
        for (const auto& b : model.branches())
            sum += coverage_general(th, b.nakagami, b.noise_term, b.laplace, b.pdf, model.grid());
        CHECK(sum == doctest::Approx(model.coverage(th).probability).epsilon(1e-12));
    }
}

TEST_CASE("uplink coverage with both cluster kinds")
{
    ScenarioConfig c;
    c.cluster.size = 5;
    for (auto kind : {geometry::ClusterKind::thomas, geometry::ClusterKind::matern})
    {
        c.cluster.kind = kind;
        const auto model = CoverageModel::uplink(c);
        const double lo = model.coverage(db_to_linear(-10)).probability;
        const double hi = model.coverage(db_to_linear(10)).probability;
        CHECK(lo > 0);
        CHECK(lo <= 1);
        CHECK(hi <= lo);
    }
}

TEST_CASE("every variant evaluates to a probability")
{
    ScenarioConfig c;
    c.cluster.size = 5;
    for (auto v : {Variant::inverse_downlink, Variant::inverse_uplink, Variant::multi_access_down,
                   Variant::special_case1, Variant::multi_access_up, Variant::special_case2})
    {
        CAPTURE(to_string(v));
        CHECK(parse_variant(to_string(v)) == v);
        const double p = coverage_variant(v, 0.1, c).probability;
        CHECK(p >= 0);
        CHECK(p <= 1);
    }
    CHECK_THROWS_AS(parse_variant("nope"), std::invalid_argument);
}

TEST_CASE("relay hop success is the Gamma tail of the SNR margin")
{
    ScenarioConfig c;
    const auto& law = c.fading.los;
    const double o1 = c.antennas.uav.main_gain * c.antennas.uav.main_gain;
    for (double y0 : {250.0, 3000.0})
    {
        const double loss = law.intercept / (y0 * y0);
        const double th = 50;
        const double x = law.nakagami * th * c.noise_down() / (c.p_v * o1 * loss);
        CHECK(link_success(th, y0, c) ==
              doctest::Approx(boost::math::gamma_q(double(law.nakagami), x)).epsilon(1e-12));
    }
}

TEST_CASE("system coverage combines the phases per application")
{
    ScenarioConfig c;
    c.cluster.size = 5;
    const double th = db_to_linear(-5);
    const auto r = system_coverage(th, th, th, c, Application::relaying);
    CHECK(r.probability == doctest::Approx(r.downlink * r.uplink * r.link));
    const auto d = system_coverage(th, th, th, c, Application::dissemination);
    CHECK(d.link == 1);
    CHECK(d.probability == doctest::Approx(d.downlink * d.uplink));

    c.lambda_v_up = c.lambda_v_down / 2;
    CHECK(application_config(c, Application::ubiquitous).lambda_v_up ==
          application_config(c, Application::ubiquitous).lambda_v_down);

    c.relay_distance.reset();
    CHECK_THROWS_AS(system_coverage(th, th, th, c, Application::relaying), std::invalid_argument);
    CHECK_NOTHROW(system_coverage(th, th, th, c, Application::dissemination));
}

TEST_CASE("sub-6 GHz preset forces NLOS links")
{
    ScenarioConfig c;
    apply_preset(c, Preset::sub6);
    const auto r = coverage_downlink(db_to_linear(-10), c);
    CHECK(r.los == 0);
    CHECK(r.probability > 0);
}
