#pragma once

#include <cmath>
#include <vector>

#include "cover/rng.hpp"

namespace cover::geometry {

enum class ClusterKind
{
    thomas,  ///< Gaussian offsets, spread = sigma per axis
    matern,  ///< uniform offsets on a disc, spread = radius R
};

enum class Population
{
    fixed,    ///< every cluster holds exactly `size` users
    poisson,  ///< cluster sizes are Poisson with mean `size`
};

struct ClusterModel
{
    ClusterKind kind = ClusterKind::thomas;
    double spread = 100;
    Population population = Population::fixed;
    double size = 30;

    void validate() const;
    //! Integer cluster size; only meaningful for the fixed population
    int fixed_size() const { return static_cast<int>(size); }
};

struct PlanarPoint
{
    double x = 0;
    double y = 0;

    double norm() const { return std::hypot(x, y); }
};

//! Disc (inner = 0) or annulus centred on the origin.
struct Region
{
    double inner = 0;
    double outer = 0;
};

//! Homogeneous PPP restricted to a disc or annulus.
std::vector<PlanarPoint> sample_ppp(double density, Region region, Rng& rng);

//! Daughter offset drawn from the cluster's displacement law.
PlanarPoint sample_offset(const ClusterModel& model, Rng& rng);

//! Daughters of one parent; the count follows the population rule.
std::vector<PlanarPoint>
sample_cluster(PlanarPoint center, const ClusterModel& model, Rng& rng);

//! Number of users in one cluster.
int sample_population(const ClusterModel& model, Rng& rng);

//! Nearest-neighbour distance of a PPP: 2 pi lambda r exp(-pi lambda r^2).
double pdf_nearest_ppp(double r1, double density);
double cdf_nearest_ppp(double r1, double density);

//! Distance from the cluster centre to one of its daughters.
double pdf_intra(double w, const ClusterModel& model);
double cdf_intra(double w, const ClusterModel& model);

/*!
 * Distance from the origin to a daughter of a parent located at distance q.
 *
 * Thomas: Rician density, evaluated as
 *   exp(-(g-q)^2 / 2 sigma^2) (g / sigma^2) [exp(-x) I0(x)],  x = g q / sigma^2
 * so that distant clusters never overflow. Matern: the disc-intersection
 * (crescent) density plus the fully-covered branch when g < R - q.
 */
double pdf_inter_conditional(double g, double q, const ClusterModel& model);

/// Radius beyond which the nearest-distance pdf holds at most `tail_mass`.
double nearest_tail_radius(double density, double tail_mass);

/// Radius beyond which the intra-cluster pdf holds at most `tail_mass`.
double intra_tail_radius(const ClusterModel& model, double tail_mass);

/// Half-width of the Thomas conditional support used in quadrature, in sigmas.
inline constexpr double thomas_support_sigmas = 9.0;

}  // namespace cover::geometry
