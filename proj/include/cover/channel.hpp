#pragma once

#include <array>
#include <vector>

#include "cover/rng.hpp"

namespace cover::channel {

struct BlockageParams
{
    double beta_b = 300e-6;  ///< obstacles per m^2
    double beta_a = 0.5;     ///< obstacle area fraction
    double epsilon = 20;     ///< Rayleigh scale of obstacle heights [m]

    void validate() const;
    //! Blockage annulus rate sqrt(beta_a beta_b) [1/m]; annulus width is 1/rate
    double rate() const;
};

//! floor(r sqrt(beta_a beta_b)); zero when there are no obstacles.
int blockage_index(double r, const BlockageParams& blockage);

/*!
 * LOS probability for blockage index gamma.
 *
 * gamma == 0 returns 1. Otherwise the product over n = 0..gamma of
 *   1 - exp(-(gamma max(h_t,h_r) - (n + 1/2)|h_t - h_r|)^2 / (2 eps^2 gamma^2)).
 * Not monotone in gamma when the heights differ.
 */
double los_probability_index(int gamma, double h_t, double h_r,
                             const BlockageParams& blockage);

double los_probability(double r, double h_t, double h_r,
                       const BlockageParams& blockage);

enum class LinkState
{
    los,
    nlos,
};

struct StateLaw
{
    double alpha = 2;      ///< path-loss exponent
    double intercept = 1;  ///< linear gain at 1 m
    int nakagami = 1;      ///< Nakagami shape
};

struct FadingProfile
{
    StateLaw los{2.0, 1.0, 3};
    StateLaw nlos{4.0, 1.0, 2};

    void validate() const;
    const StateLaw& law(LinkState s) const { return s == LinkState::los ? los : nlos; }
};

//! Free-space gain (c / (4 pi f))^2 at the 1 m reference distance.
double free_space_intercept(double frequency_hz);

//! C (r^2 + dh^2)^(-alpha/2), with the 3D distance clamped to >= 1 m.
double path_loss(double r, double dh, const StateLaw& law);

struct PathLossSplit
{
    double p_los;
    double loss_los;
    double p_nlos;
    double loss_nlos;
};

//! Both state branches of the two-state path loss. Rejects 3D distance < 1 m.
PathLossSplit expected_path_loss_split(double r, double h_t, double h_r,
                                       const BlockageParams& blockage,
                                       const FadingProfile& fading);

LinkState sample_link_state(double p_los, Rng& rng);

//! Gamma(nak, 1/nak): unit-mean Nakagami power gain.
double sample_nakagami_power(int nakagami, Rng& rng);

struct AntennaPattern
{
    double theta_a = 6.283185307179586;  ///< azimuth beamwidth [rad]
    double theta_e = 3.141592653589793;  ///< elevation beamwidth [rad]
    double main_gain = 1;
    double side_gain = 1;
    //! Set when the UPA side-lobe expression was used outside its range
    bool flagged = false;

    void validate() const;
    //! Probability that a random direction falls in the main lobe
    double main_lobe_probability() const;
};

/*!
 * Sectorised pattern of an N-element uniform planar square array:
 * beamwidth sqrt(3/N), main gain N, side gain
 *   (sqrt N - (sqrt3 / 2pi) N sin(sqrt3 pi / (2 sqrt N)))
 *   / (sqrt N - (sqrt3 / 2pi) sin(sqrt3 pi / (2 sqrt N))).
 * Patterns with N < 3 are returned with `flagged` set.
 */
AntennaPattern upa_setup(int elements);

AntennaPattern isotropic_pattern();

struct AntennaSetup
{
    AntennaPattern bs = upa_setup(8);
    AntennaPattern uav = upa_setup(4);
    AntennaPattern user = upa_setup(2);
};

//! Joint tx/rx gain of an interfering link: four values with probabilities.
struct GainMixture
{
    std::array<double, 4> value{};
    std::array<double, 4> probability{};

    //! Desired-link gain M_t M_r
    double boresight() const { return value[0]; }
    //! Index drawn from a uniform variate in [0,1)
    int select(double u) const;
};

GainMixture gain_mixture(const AntennaPattern& tx, const AntennaPattern& rx);

//! Thermal noise k_b * 300 K * bandwidth [W].
double noise_power(double bandwidth_hz);

/*!
 * Cached LOS probabilities of one link type (fixed heights).
 *
 * Indices up to `max_radius` are tabulated on construction; larger ones are
 * evaluated on demand.
 */
class LosTable
{
  public:
    LosTable(const BlockageParams& blockage, double h_t, double h_r,
             bool force_nlos = false, double max_radius = 0);

    double rate() const { return rate_; }
    int index(double r) const;
    double p_los(int gamma) const;
    double p_los_at(double r) const { return p_los(index(r)); }

  private:
    BlockageParams blockage_;
    double h_t_;
    double h_r_;
    double rate_;
    bool force_nlos_;
    std::vector<double> cache_;
};

}  // namespace cover::channel
