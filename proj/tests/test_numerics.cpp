#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/hypergeometric_pFq.hpp>

#include "cover/numerics.hpp"
#include "cover/oracles.hpp"

using namespace cover;
using namespace cover::numerics;

TEST_CASE("chebyshev nodes are decreasing and integrate endpoint-vanishing functions")
{
    const auto rule = chebyshev_nodes(20);
    REQUIRE(rule.size() == 20);
    for (std::size_t i = 1; i < rule.size(); ++i)
        CHECK(rule[i].node < rule[i - 1].node);
    const double v = integrate_chebyshev([](double x) { return std::sin(std::numbers::pi * x); },
                                         0, 1, rule);
    CHECK(v == doctest::Approx(2 / std::numbers::pi).epsilon(1e-3));
}

TEST_CASE("chebyshev error on x^2 falls like m^-2")
{
    auto err = [](int m) {
        return std::abs(integrate_chebyshev([](double x) { return x * x; }, -1, 1,
                                            chebyshev_nodes(m)) - 2.0 / 3.0);
    };
    CHECK(err(40) / err(20) == doctest::Approx(0.25).epsilon(0.05));
    CHECK(err(80) / err(40) == doctest::Approx(0.25).epsilon(0.05));
}

TEST_CASE("legendre rule agrees with boost gauss nodes")
{
    const auto rule = legendre_nodes(10);
    auto f = [](double x) { return std::exp(x) * std::cos(3 * x); };
    const double ref = boost::math::quadrature::gauss<double, 10>::integrate(f, -0.5, 2.0);
    CHECK(integrate_legendre(f, -0.5, 2.0, rule) == doctest::Approx(ref).epsilon(1e-13));
    // degree 19 is exact
    auto p = [](double x) { return std::pow(x, 19) + x * x; };
    CHECK(integrate_legendre(p, -1, 1, rule) == doctest::Approx(2.0 / 3.0).epsilon(1e-13));
}

TEST_CASE("hypergeometric kernel matches the generalised hypergeometric series")
{
    for (double alpha : {2.5, 3.0, 4.0})
        for (int n : {1, 2, 3})
            for (double z : {1e-4, 0.1, 0.5, 0.85})
            {
                const double ref = boost::math::hypergeometric_pFq(
                                       {-2 / alpha, static_cast<double>(n)}, {1 - 2 / alpha}, -z) -
                                   1;
                CHECK(hypergeo_kernel(z, alpha, n) == doctest::Approx(ref).epsilon(1e-10));
            }
}

TEST_CASE("hypergeometric kernel satisfies the tail identity for large arguments")
{
    // int_A^inf (1 - (1 + s y^-alpha)^-N) y dy = A^2/2 F(s / A^alpha).
    // Reference: quadrature up to B with s B^-alpha = 1e-6, then the first
    // three terms of the binomial series integrated exactly beyond B.
    for (double alpha : {2.3, 3.0, 4.0})
        for (int n : {1, 3})
            for (double z : {3.0, 50.0, 1e4})
            {
                const double a = 20;
                const double s = z * std::pow(a, alpha);
                const double b = std::pow(s / 1e-6, 1 / alpha);
                const channel::StateLaw law{alpha, 1.0, n};
                double tail = 0;
                double coef = 1;  // (-1)^(k+1) C(N+k-1, k) running product
                for (int k = 1; k <= 3; ++k)
                {
                    coef *= (k == 1 ? n : -(n + k - 1.0) / k);
                    tail += coef * std::pow(s, k) * std::pow(b, 2 - k * alpha) / (k * alpha - 2);
                }
                const double ref = oracle::annulus_integral(s, a, b, 0, n, law) + tail;
                CHECK(0.5 * a * a * hypergeo_kernel(z, alpha, n) ==
                      doctest::Approx(ref).epsilon(1e-9));
            }
    CHECK_THROWS_AS(hypergeo_kernel(1.0, 2.0, 1), std::domain_error);
}

TEST_CASE("alpha = 2 kernel")
{
    CHECK(f2_kernel(0, 3) == 0);
    for (double z : {1e-3, 0.7, 20.0})
    {
        CHECK(f2_kernel(z, 1) == doctest::Approx(-z * std::log1p(1 / z)).epsilon(1e-13));
        CHECK(f2_kernel(z, 4) < 0);
    }
    // Differences of h(x) = x^2/2 F2(s/x^2) reproduce the annulus integral.
    for (int n : {1, 2, 5})
    {
        const double s = 3e4;
        const double a = 10;
        const double b = 400;
        const channel::StateLaw law{2.0, 1.0, n};
        const double h_a = 0.5 * a * a * f2_kernel(s / (a * a), n);
        const double h_b = 0.5 * b * b * f2_kernel(s / (b * b), n);
        CHECK(h_a - h_b == doctest::Approx(oracle::annulus_integral(s, a, b, 0, n, law)).epsilon(1e-10));
    }
}

TEST_CASE("special functions against boost")
{
    for (int n : {1, 2, 3, 5})
        for (double x : {0.0, 0.3, 2.0, 11.0})
            CHECK(upper_incomplete_gamma_reg(n, x) ==
                  doctest::Approx(boost::math::gamma_q(static_cast<double>(n), x)).epsilon(1e-13));
    for (double x : {0.0, 0.5, 3.0, 40.0, 600.0})
    {
        CHECK(bessel_i0(x) == doctest::Approx(boost::math::cyl_bessel_i(0, x)).epsilon(1e-12));
        CHECK(bessel_i0_scaled(x) ==
              doctest::Approx(std::exp(-x) * boost::math::cyl_bessel_i(0, x)).epsilon(1e-12));
    }
    CHECK(std::isfinite(bessel_i0_scaled(1e6)));
    for (int n = 0; n <= 8; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(binomial(n, k) == boost::math::binomial_coefficient<double>(n, k));
    CHECK(alzer_eta(1) == doctest::Approx(1.0));
    CHECK(alzer_eta(3) == doctest::Approx(3 * std::pow(6.0, -1.0 / 3)));
}

TEST_CASE("gamma sum reports its last term")
{
    const auto r = gamma_sum([](int g) { return std::pow(0.5, g); }, 3);
    CHECK(r.sum == doctest::Approx(1.875));
    CHECK(r.last_term == doctest::Approx(0.125));
}

TEST_CASE("quadrature spec validation")
{
    QuadratureSpec q;
    CHECK_NOTHROW(q.validate());
    q.node_count = 0;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    q = {};
    q.gamma_cutoff = -1;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
    q = {};
    q.tail_radius = -5;
    CHECK_THROWS_AS(q.validate(), std::invalid_argument);
}
