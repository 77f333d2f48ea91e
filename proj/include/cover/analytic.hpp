#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "cover/interference.hpp"
#include "cover/scenario.hpp"

namespace cover::analytic {

struct CoverageResult
{
    double probability = 0;
    //! Contribution of the outermost serving-distance annulus
    double truncation_proxy = 0;
    double los = 0;   ///< part carried by a LOS serving link
    double nlos = 0;  ///< part carried by a NLOS serving link
};

//! One node of the serving-distance quadrature (pdf not included).
struct ServingNode
{
    double r = 0;
    double weight = 0;
    bool last_annulus = false;
};

/*!
 * Serving-distance nodes: mapped Gauss-Chebyshev on every blockage annulus
 * [j/c, (j+1)/c), pieces no longer than `scale`, up to the cutoff annulus.
 * With auto-escalation the annuli continue until `tail` (where the distance
 * pdf has negligible mass remaining). Throws if that needs more than 10^4
 * annuli.
 */
std::vector<ServingNode> serving_grid(double annulus_rate, double tail, double scale,
                                      const numerics::QuadratureSpec& spec);

enum class Variant
{
    inverse_downlink,   ///< BS -> UAV, nearest BS serves
    inverse_uplink,     ///< UAV -> ground user in its cluster
    multi_access_down,  ///< one UAV per BS, uniform on a disc around it
    special_case1,      ///< serving UAV hovers over its BS
    multi_access_up,    ///< one active user per cluster
    special_case2,      ///< one active user per cluster, directly below its UAV
};

Variant parse_variant(const std::string& name);
std::string to_string(Variant v);

//! One LOS/NLOS branch of a coverage integral, in the unified form.
struct CoverageBranch
{
    int nakagami = 1;
    //! exp(-x n0^2 / (P o1 loss(r))), x = n eta threshold
    std::function<double(double x, double r)> noise_term;
    //! Laplace transform of interference at s = x / (o1 loss(r))
    std::function<double(double x, double r)> laplace;
    //! Serving-distance pdf times the branch probability
    std::function<double(double r)> pdf;
};

/*!
 * Unified coverage integral
 *   sum_k w_k sum_{n=1}^{N} (-1)^(n+1) C(N,n) noise(n eta T, r_k) L(n eta T, r_k) pdf(r_k)
 * with eta the Alzer constant of N.
 */
double coverage_general(double threshold, int nakagami,
                        const std::function<double(double, double)>& noise_term,
                        const std::function<double(double, double)>& laplace,
                        const std::function<double(double)>& pdf,
                        const std::vector<ServingNode>& grid);

//! Where the serving transmitter sits relative to the receiver.
enum class Serving
{
    nearest,   ///< nearest point of a PPP
    intra,     ///< a daughter of the receiver's own cluster
    overhead,  ///< horizontal distance zero
};

//! Which interference field surrounds the receiver.
enum class Field
{
    ppp_outside,     ///< the serving PPP beyond the serving distance
    ppp_everywhere,  ///< an independent PPP over the whole plane
    clusters,        ///< cluster process (intra and inter parts)
};

//! A coverage problem reduced to its ingredients; shared with the simulator.
struct LinkSetup
{
    Serving serving = Serving::nearest;
    double serving_density = 0;
    Field field = Field::ppp_outside;
    double field_density = 0;
    geometry::ClusterModel cluster;
    bool intra = true;  ///< include the receiver's own cluster as interferers
    double h_tx = 0;
    double h_rx = 0;
    double power = 1;
    double noise = 0;
    channel::AntennaPattern tx;
    channel::AntennaPattern rx;
};

LinkSetup downlink_setup(const ScenarioConfig& cfg);
LinkSetup uplink_setup(const ScenarioConfig& cfg);
LinkSetup variant_setup(Variant v, const ScenarioConfig& cfg);

/*!
 * Analytic coverage of one LinkSetup. Construction does all
 * threshold-independent work; one model serves any number of thresholds.
 */
class CoverageModel
{
  public:
    using Setup = LinkSetup;

    CoverageModel(const ScenarioConfig& cfg, Setup setup);

    static CoverageModel downlink(const ScenarioConfig& cfg);
    static CoverageModel uplink(const ScenarioConfig& cfg);
    static CoverageModel variant(Variant v, const ScenarioConfig& cfg);

    CoverageResult coverage(double threshold) const;

    //! LOS and NLOS branches for coverage_general; summing both reproduces coverage().
    std::vector<CoverageBranch> branches() const;
    const std::vector<ServingNode>& grid() const { return grid_; }

    //! Interference transform for serving distance r, s per watt of transmit power
    double laplace(double s, double r) const;

    const Setup& setup() const { return setup_; }
    double boresight_gain() const { return o1_; }

  private:
    double serving_pdf(double r) const;
    double loss(double r, const channel::StateLaw& law) const;

    Setup setup_;
    channel::FadingProfile fading_;
    std::shared_ptr<const channel::LosTable> los_;
    double dh_ = 0;
    double o1_ = 1;
    std::vector<ServingNode> grid_;
    std::shared_ptr<const PppInterference> ppp_;
    std::shared_ptr<const ClusterInterference> clusters_;
};

//! Interference transform at the typical BS given serving distance r1.
double laplace_downlink(double s, double r1, const ScenarioConfig& cfg);
//! Intra-cluster transform at the typical UAV.
double laplace_intra(double s, const ScenarioConfig& cfg);
//! Inter-cluster transform at the typical UAV.
LaplaceValue laplace_inter(double s, const ScenarioConfig& cfg);

CoverageResult coverage_downlink(double threshold, const ScenarioConfig& cfg);
CoverageResult coverage_uplink(double threshold, const ScenarioConfig& cfg);
CoverageResult coverage_variant(Variant v, double threshold, const ScenarioConfig& cfg);

//! SNR success of the UAV-to-UAV relay hop over horizontal distance y0.
double link_success(double threshold, double y0, const ScenarioConfig& cfg);

enum class Application
{
    ubiquitous,     ///< downlink and uplink UAVs form one network
    dissemination,  ///< collect from users, deliver to BSs
    relaying,       ///< as dissemination plus a UAV-to-UAV hop
};

Application parse_application(const std::string& name);
std::string to_string(Application a);

struct SystemCoverage
{
    double probability = 0;
    double downlink = 0;
    double uplink = 0;
    double link = 1;
    double truncation_proxy = 0;
};

//! Configuration actually evaluated for an application (shared density for ubiquitous).
ScenarioConfig application_config(const ScenarioConfig& cfg, Application app);

SystemCoverage system_coverage(double th_down, double th_up, double th_link,
                               const ScenarioConfig& cfg, Application app);

}  // namespace cover::analytic
