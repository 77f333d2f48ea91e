#include <doctest.h>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cover/channel.hpp"
#include "cover/rng.hpp"

using namespace cover;
using namespace cover::channel;

TEST_CASE("blockage index")
{
    BlockageParams b;  // sqrt(0.5 * 300e-6) = 0.012247
    CHECK(blockage_index(0, b) == 0);
    CHECK(blockage_index(81, b) == 0);
    CHECK(blockage_index(82, b) == 1);
    CHECK(blockage_index(1000, b) == 12);
    b.beta_b = 0;
    CHECK(blockage_index(1e5, b) == 0);
}

TEST_CASE("LOS probability with equal heights is a power of one factor")
{
    BlockageParams b;
    const double h = 30;
    const double factor = 1 - std::exp(-h * h / (2 * b.epsilon * b.epsilon));
    CHECK(los_probability_index(0, h, h, b) == 1.0);
    for (int gamma = 1; gamma <= 6; ++gamma)
    {
        CHECK(los_probability_index(gamma, h, h, b) ==
              doctest::Approx(std::pow(factor, gamma + 1)).epsilon(1e-14));
        CHECK(los_probability_index(gamma, h, h, b) <= los_probability_index(gamma - 1, h, h, b));
    }
}

TEST_CASE("LOS probability with unequal heights follows the product term by term")
{
    BlockageParams b;
    const double ht = 100;
    const double hr = 30;
    for (int gamma : {1, 2, 5})
    {
        double p = 1;
        for (int n = 0; n <= gamma; ++n)
        {
            const double x = gamma * ht - (n + 0.5) * (ht - hr);
            p *= 1 - std::exp(-x * x / (2 * b.epsilon * b.epsilon * gamma * gamma));
        }
        CHECK(los_probability_index(gamma, ht, hr, b) == doctest::Approx(p).epsilon(1e-13));
        CHECK(los_probability_index(gamma, hr, ht, b) == doctest::Approx(p).epsilon(1e-13));
    }
    CHECK(los_probability(500, ht, hr, b) == los_probability_index(6, ht, hr, b));
}

TEST_CASE("LOS table caches the same values")
{
    BlockageParams b;
    LosTable t(b, 100, 30, false, 2000);
    for (double r : {0.0, 90.0, 700.0, 5000.0})
        CHECK(t.p_los_at(r) == los_probability(r, 100, 30, b));
    LosTable nlos(b, 100, 30, true);
    CHECK(nlos.p_los_at(10) == 0);
}

TEST_CASE("path loss")
{
    const double c = 299792458.0;
    CHECK(free_space_intercept(28e9) ==
          doctest::Approx(std::pow(c / (4 * std::numbers::pi * 28e9), 2)).epsilon(1e-12));
    const StateLaw law{2.0, 1e-3, 3};
    CHECK(path_loss(30, 40, law) == doctest::Approx(1e-3 / 2500));
    CHECK(path_loss(0, 0.2, law) == doctest::Approx(1e-3));  // clamped at 1 m
    FadingProfile f;
    BlockageParams b;
    const auto split = expected_path_loss_split(300, 100, 30, b, f);
    CHECK(split.p_los + split.p_nlos == doctest::Approx(1.0));
    CHECK(split.loss_los == doctest::Approx(path_loss(300, 70, f.los)));
    CHECK_THROWS_AS(expected_path_loss_split(0.1, 5, 5.2, b, f), std::domain_error);
}

TEST_CASE("Nakagami power has unit mean and variance 1/N")
{
    for (int n : {1, 3})
    {
        double s = 0;
        double s2 = 0;
        const int k = 200000;
        for (int i = 0; i < k; ++i)
        {
            Rng rng = make_stream(9, n, i);
            const double x = sample_nakagami_power(n, rng);
            s += x;
            s2 += x * x;
        }
        const double mean = s / k;
        CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
        CHECK(s2 / k - mean * mean == doctest::Approx(1.0 / n).epsilon(0.03));
    }
}

TEST_CASE("UPA pattern and gain mixture")
{
    const auto p = upa_setup(16);
    const double n = 16;
    const double a = std::sqrt(3.0) * std::numbers::pi / (2 * std::sqrt(n));
    const double k = std::sqrt(3.0) / (2 * std::numbers::pi);
    CHECK(p.main_gain == 16);
    CHECK(p.side_gain ==
          doctest::Approx((std::sqrt(n) - k * n * std::sin(a)) / (std::sqrt(n) - k * std::sin(a))));
    CHECK(p.theta_a == doctest::Approx(std::sqrt(3.0 / n)));
    CHECK_FALSE(p.flagged);
    CHECK(upa_setup(2).flagged);

    const auto g = gain_mixture(upa_setup(8), upa_setup(4));
    double total = 0;
    for (double q : g.probability)
        total += q;
    CHECK(total == doctest::Approx(1.0));
    CHECK(g.boresight() == 32);
    const auto iso = gain_mixture(isotropic_pattern(), isotropic_pattern());
    CHECK(iso.value[0] == 1);
    CHECK(iso.probability[0] == doctest::Approx(1.0));
}

TEST_CASE("thermal noise")
{
    CHECK(noise_power(100e6) == doctest::Approx(1.380649e-23 * 300 * 100e6));
}

TEST_CASE("parameter validation")
{
    BlockageParams b;
    b.beta_a = 1.5;
    CHECK_THROWS_AS(b.validate(), std::invalid_argument);
    FadingProfile f;
    f.los.alpha = 1.5;
    CHECK_THROWS_AS(f.validate(), std::invalid_argument);
    f = {};
    f.nlos.nakagami = 0;
    CHECK_THROWS_AS(f.validate(), std::invalid_argument);
}
