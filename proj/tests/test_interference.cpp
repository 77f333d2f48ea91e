#include <doctest.h>

#include <cmath>

#include "cover/interference.hpp"
#include "cover/oracles.hpp"
#include "cover/scenario.hpp"

using namespace cover;
using namespace cover::analytic;

namespace {

InterfererLinks downlink_links(const ScenarioConfig& c)
{
    return {c.dh_down(), channel::LosTable(c.blockage, c.h_v_down, c.h_b),
            channel::gain_mixture(c.antennas.uav, c.antennas.bs), c.fading};
}

InterfererLinks uplink_links(const ScenarioConfig& c)
{
    return {c.dh_up(), channel::LosTable(c.blockage, c.h_u, c.h_v_up),
            channel::gain_mixture(c.antennas.user, c.antennas.uav), c.fading};
}

}  // namespace

TEST_CASE("annulus kernel matches adaptive quadrature")
{
    for (double alpha : {2.0, 2.7, 4.0})
        for (int n : {1, 2, 3})
            for (double dh : {0.0, 70.0})
            {
                const channel::StateLaw law{alpha, 7e-7, n};
                const double s = 1e9;
                const double k = annulus_kernel(s, 40, 900, dh, 3.5, law);
                const double o = oracle::annulus_integral(s, 40, 900, dh, 3.5, law);
                CHECK(k == doctest::Approx(o).epsilon(1e-9));
            }
}

TEST_CASE("PPP interference transform matches the radial-integral oracle")
{
    ScenarioConfig c;
    const double tail = c.tail_radius(c.lambda_v_down);
    const PppInterference ppp(c.lambda_v_down, downlink_links(c), tail);
    for (double s : {1e9, 1e11, 1e12})
        for (double inner : {0.0, 120.0, 700.0})
            CHECK(ppp.laplace(s, inner) ==
                  doctest::Approx(oracle::ppp_laplace(s, inner, c.lambda_v_down, downlink_links(c), tail))
                      .epsilon(1e-9));
    CHECK(ppp.laplace(1e11, tail) == 1.0);
}

TEST_CASE("intra-cluster complement matches quadrature for Thomas and Matern")
{
    ScenarioConfig c;
    for (auto kind : {geometry::ClusterKind::thomas, geometry::ClusterKind::matern})
    {
        c.cluster.kind = kind;
        const ClusterInterference ci(c.cluster, c.lambda_v_up, uplink_links(c),
                                     c.tail_radius(c.lambda_v_up));
        for (double s : {1e8, 1e9, 1e10})
            CHECK(ci.intra_complement(s) ==
                  doctest::Approx(oracle::intra_complement(s, c.cluster, uplink_links(c))).epsilon(1e-9));
        const double comp = ci.intra_complement(1e9);
        CHECK(ci.laplace_intra(1e9) == doctest::Approx(std::pow(1 - comp, c.cluster.size - 1)));
    }
}

TEST_CASE("inter-cluster transform matches nested quadrature")
{
    ScenarioConfig c;
    const double tail = 1500;
    SUBCASE("thomas")
    {
        const ClusterInterference ci(c.cluster, c.lambda_v_up, uplink_links(c), tail);
        const auto v = ci.laplace_inter(1e10);
        const double o = oracle::inter_laplace(1e10, c.cluster, c.lambda_v_up, uplink_links(c), tail);
        CHECK(v.value == doctest::Approx(o).epsilon(1e-8));
        CHECK(v.tail_proxy >= 0);
    }
    SUBCASE("matern, random population")
    {
        c.cluster.kind = geometry::ClusterKind::matern;
        c.cluster.population = geometry::Population::poisson;
        const ClusterInterference ci(c.cluster, c.lambda_v_up, uplink_links(c), tail);
        const double o = oracle::inter_laplace(1e10, c.cluster, c.lambda_v_up, uplink_links(c), tail);
        // Kinks where the crescent crosses annulus edges limit the mapped rule.
        CHECK(ci.laplace_inter(1e10).value == doctest::Approx(o).epsilon(1e-5));
    }
}
