#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "cover/geometry.hpp"
#include "cover/rng.hpp"

using namespace cover;
using namespace cover::geometry;
using boost::math::quadrature::gauss_kronrod;

namespace {

template<class F>
double integrate(F f, double a, double b)
{
    return gauss_kronrod<double, 61>::integrate(f, a, b, 20, 1e-12);
}

ClusterModel model(ClusterKind kind, double spread = 100)
{
    ClusterModel m;
    m.kind = kind;
    m.spread = spread;
    return m;
}

}  // namespace

TEST_CASE("nearest-distance density is normalised and matches its CDF")
{
    const double lambda = 5.092958178940651e-06;
    const double tail = nearest_tail_radius(lambda, 1e-12);
    CHECK(integrate([&](double r) { return pdf_nearest_ppp(r, lambda); }, 0, tail) ==
          doctest::Approx(1.0).epsilon(1e-10));
    for (double r : {50.0, 250.0, 700.0})
        CHECK(cdf_nearest_ppp(r, lambda) ==
              doctest::Approx(integrate([&](double x) { return pdf_nearest_ppp(x, lambda); }, 0, r))
                  .epsilon(1e-11));
    CHECK(1 - cdf_nearest_ppp(nearest_tail_radius(lambda, 1e-6), lambda) ==
          doctest::Approx(1e-6).epsilon(1e-6));
}

TEST_CASE("intra-cluster densities")
{
    for (auto kind : {ClusterKind::thomas, ClusterKind::matern})
    {
        const auto m = model(kind);
        const double hi = kind == ClusterKind::matern ? m.spread : 12 * m.spread;
        CHECK(integrate([&](double w) { return pdf_intra(w, m); }, 0, hi) ==
              doctest::Approx(1.0).epsilon(1e-10));
        CHECK(cdf_intra(60, m) ==
              doctest::Approx(integrate([&](double w) { return pdf_intra(w, m); }, 0, 60)).epsilon(1e-10));
        CHECK(1 - cdf_intra(intra_tail_radius(m, 1e-8), m) <= 1e-8 * 1.0001);
    }
    CHECK(cdf_intra(100, model(ClusterKind::matern)) == doctest::Approx(1.0));
}

TEST_CASE("conditional inter-cluster density integrates to one")
{
    const auto thomas = model(ClusterKind::thomas);
    for (double q : {0.0, 40.0, 300.0, 2000.0})
    {
        const double lo = std::max(0.0, q - 12 * thomas.spread);
        CHECK(integrate([&](double g) { return pdf_inter_conditional(g, q, thomas); }, lo,
                        q + 12 * thomas.spread) == doctest::Approx(1.0).epsilon(1e-9));
    }
    const auto matern = model(ClusterKind::matern);
    for (double q : {50.0, 150.0, 600.0})
    {
        // Integrate piecewise so the square-root edges sit on piece ends.
        double acc = 0;
        const double r = matern.spread;
        const double pts[] = {0.0, std::abs(r - q), q + r};
        for (int i = 0; i < 2; ++i)
            if (pts[i + 1] > pts[i])
                acc += integrate([&](double g) { return pdf_inter_conditional(g, q, matern); },
                                 pts[i], pts[i + 1]);
        CHECK(acc == doctest::Approx(1.0).epsilon(1e-6));
    }
}

TEST_CASE("PPP sampler count has Poisson mean")
{
    const double lambda = 1e-4;
    const Region ring{50, 300};
    const double area = std::numbers::pi * (300.0 * 300 - 50.0 * 50);
    double total = 0;
    const int runs = 2000;
    for (int i = 0; i < runs; ++i)
    {
        Rng rng = make_stream(1, 2, i);
        const auto pts = sample_ppp(lambda, ring, rng);
        for (const auto& p : pts)
        {
            REQUIRE(p.norm() >= 50);
            REQUIRE(p.norm() <= 300);
        }
        total += pts.size();
    }
    const double mean = lambda * area;
    CHECK(std::abs(total / runs - mean) < 5 * std::sqrt(mean / runs));
}

TEST_CASE("cluster populations")
{
    ClusterModel m;
    m.size = 7;
    Rng rng = make_stream(3, 0, 0);
    CHECK(sample_population(m, rng) == 7);
    CHECK(sample_cluster({10, 20}, m, rng).size() == 7);
    m.population = Population::poisson;
    m.size = 4.5;
    double total = 0;
    for (int i = 0; i < 4000; ++i)
    {
        Rng r = make_stream(3, 1, i);
        total += sample_population(m, r);
    }
    CHECK(std::abs(total / 4000 - 4.5) < 5 * std::sqrt(4.5 / 4000));
}

TEST_CASE("matern offsets stay inside the disc")
{
    const auto m = model(ClusterKind::matern, 80);
    for (int i = 0; i < 1000; ++i)
    {
        Rng rng = make_stream(4, 0, i);
        CHECK(sample_offset(m, rng).norm() <= 80);
    }
}

TEST_CASE("cluster model validation")
{
    ClusterModel m;
    CHECK_NOTHROW(m.validate());
    m.spread = 0;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
    m = {};
    m.size = 2.5;
    CHECK_THROWS_AS(m.validate(), std::invalid_argument);
}
