#include "cover/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace cover::channel {

namespace {

constexpr double kBoltzmann = 1.380649e-23;
constexpr double kNoiseTemperature = 300.0;
constexpr double kSpeedOfLight = 299792458.0;
constexpr int kCachedIndices = 4096;

}  // namespace

void BlockageParams::validate() const
{
    if (!(beta_b >= 0) || !std::isfinite(beta_b))
        throw std::invalid_argument("blockage beta_b must be non-negative");
    if (!(beta_a >= 0 && beta_a <= 1))
        throw std::invalid_argument("blockage beta_a must lie in [0,1]");
    if (!(epsilon > 0) || !std::isfinite(epsilon))
        throw std::invalid_argument("blockage epsilon must be positive");
}

double BlockageParams::rate() const
{
    return std::sqrt(beta_a * beta_b);
}

int blockage_index(double r, const BlockageParams& blockage)
{
    const double x = r * blockage.rate();
    if (!(x < std::numeric_limits<int>::max()))
        return std::numeric_limits<int>::max();
    return static_cast<int>(std::floor(std::max(0.0, x)));
}

double los_probability_index(int gamma, double h_t, double h_r,
                             const BlockageParams& blockage)
{
    if (gamma <= 0)
        return 1.0;
    const double hmax = std::max(h_t, h_r);
    const double dh = std::abs(h_t - h_r);
    const double denom = 2 * blockage.epsilon * blockage.epsilon
                         * static_cast<double>(gamma) * gamma;
    double p = 1.0;
    for (int n = 0; n <= gamma; ++n)
    {
        const double num = gamma * hmax - (n + 0.5) * dh;
        p *= -std::expm1(-num * num / denom);
        if (p == 0)
            break;
    }
    return p;
}

double los_probability(double r, double h_t, double h_r,
                       const BlockageParams& blockage)
{
    return los_probability_index(blockage_index(r, blockage), h_t, h_r, blockage);
}

void FadingProfile::validate() const
{
    for (const auto* law : {&los, &nlos})
    {
        if (!(law->alpha >= 2) || !std::isfinite(law->alpha))
            throw std::invalid_argument("path-loss exponent must be >= 2");
        if (!(law->intercept > 0) || !std::isfinite(law->intercept))
            throw std::invalid_argument("path-loss intercept must be positive");
        if (law->nakagami < 1)
            throw std::invalid_argument("Nakagami parameter must be >= 1");
    }
}

double free_space_intercept(double frequency_hz)
{
    if (!(frequency_hz > 0))
        throw std::invalid_argument("carrier frequency must be positive");
    const double x = kSpeedOfLight / (4 * std::numbers::pi * frequency_hz);
    return x * x;
}

double path_loss(double r, double dh, const StateLaw& law)
{
    const double d2 = std::max(1.0, r * r + dh * dh);
    return law.intercept * std::pow(d2, -0.5 * law.alpha);
}

PathLossSplit expected_path_loss_split(double r, double h_t, double h_r,
                                       const BlockageParams& blockage,
                                       const FadingProfile& fading)
{
    const double dh = h_t - h_r;
    if (!(r * r + dh * dh >= 1.0))
        throw std::domain_error("link distance below the 1 m reference distance");
    const double p = los_probability(r, h_t, h_r, blockage);
    return {p, path_loss(r, dh, fading.los), 1 - p, path_loss(r, dh, fading.nlos)};
}

LinkState sample_link_state(double p_los, Rng& rng)
{
    if (p_los >= 1)
        return LinkState::los;
    if (p_los <= 0)
        return LinkState::nlos;
    return std::uniform_real_distribution<double>(0.0, 1.0)(rng) < p_los
               ? LinkState::los
               : LinkState::nlos;
}

double sample_nakagami_power(int nakagami, Rng& rng)
{
    if (nakagami < 1)
        throw std::invalid_argument("Nakagami parameter must be >= 1");
    if (nakagami == 1)
        return std::exponential_distribution<double>(1.0)(rng);
    return std::gamma_distribution<double>(nakagami, 1.0 / nakagami)(rng);
}

void AntennaPattern::validate() const
{
    if (!(theta_a > 0 && theta_a <= 2 * std::numbers::pi))
        throw std::invalid_argument("azimuth beamwidth must lie in (0, 2pi]");
    if (!(theta_e > 0 && theta_e <= std::numbers::pi))
        throw std::invalid_argument("elevation beamwidth must lie in (0, pi]");
    if (!(side_gain > 0) || !(main_gain >= side_gain))
        throw std::invalid_argument("antenna gains need main >= side > 0");
}

double AntennaPattern::main_lobe_probability() const
{
    return theta_a / (2 * std::numbers::pi) * theta_e / std::numbers::pi;
}

AntennaPattern upa_setup(int elements)
{
    if (elements < 1)
        throw std::invalid_argument("antenna element count must be >= 1");
    const double n = elements;
    const double root = std::sqrt(n);
    const double width = std::sqrt(3.0) / root;
    const double k = std::sqrt(3.0) / (2 * std::numbers::pi);
    const double sine = std::sin(std::sqrt(3.0) * std::numbers::pi / (2 * root));

    AntennaPattern p;
    p.theta_a = std::min(width, 2 * std::numbers::pi);
    p.theta_e = std::min(width, std::numbers::pi);
    p.main_gain = n;
    p.side_gain = elements == 1 ? 1.0 : (root - k * n * sine) / (root - k * sine);
    p.flagged = elements < 3;
    return p;
}

AntennaPattern isotropic_pattern()
{
    return AntennaPattern{};
}

int GainMixture::select(double u) const
{
    double acc = 0;
    for (int i = 0; i < 3; ++i)
    {
        acc += probability[i];
        if (u < acc)
            return i;
    }
    return 3;
}

GainMixture gain_mixture(const AntennaPattern& tx, const AntennaPattern& rx)
{
    const double pt = tx.main_lobe_probability();
    const double pr = rx.main_lobe_probability();
    GainMixture g;
    g.value = {tx.main_gain * rx.main_gain, tx.side_gain * rx.main_gain,
               tx.main_gain * rx.side_gain, tx.side_gain * rx.side_gain};
    g.probability = {pt * pr, (1 - pt) * pr, pt * (1 - pr), (1 - pt) * (1 - pr)};
    return g;
}

double noise_power(double bandwidth_hz)
{
    if (!(bandwidth_hz > 0))
        throw std::invalid_argument("bandwidth must be positive");
    return kBoltzmann * kNoiseTemperature * bandwidth_hz;
}

LosTable::LosTable(const BlockageParams& blockage, double h_t, double h_r,
                   bool force_nlos, double max_radius)
    : blockage_(blockage)
    , h_t_(h_t)
    , h_r_(h_r)
    , rate_(blockage.rate())
    , force_nlos_(force_nlos)
{
    if (force_nlos_)
        return;
    const int count = std::min(kCachedIndices - 2, blockage_index(max_radius, blockage)) + 2;
    cache_.resize(count);
    for (int g = 0; g < count; ++g)
        cache_[g] = los_probability_index(g, h_t_, h_r_, blockage_);
}

int LosTable::index(double r) const
{
    return blockage_index(r, blockage_);
}

double LosTable::p_los(int gamma) const
{
    if (force_nlos_)
        return 0.0;
    if (gamma < static_cast<int>(cache_.size()))
        return cache_[std::max(gamma, 0)];
    return los_probability_index(gamma, h_t_, h_r_, blockage_);
}

}  // namespace cover::channel
