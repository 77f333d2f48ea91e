#pragma once

#include <vector>

#include "cover/channel.hpp"
#include "cover/geometry.hpp"

namespace cover::analytic {

//! Interfering links that share heights, antenna statistics and path loss.
struct InterfererLinks
{
    double dh = 0;  ///< vertical separation of interferer and receiver
    channel::LosTable los;
    channel::GainMixture gains;
    channel::FadingProfile fading;
};

/*!
 * Laplace transform of the interference from a PPP outside a disc.
 *
 * Each blockage annulus contributes through the closed-form kernel
 *   Z(s,a,b,G) = h(a) - h(b),  h(x) = Y/2 F(s C G / (N Y^(alpha/2))),
 *   Y = x^2 + dh^2,
 * with F the hypergeometric kernel (alpha > 2) or its alpha = 2 closed form.
 * The field is truncated at `tail_radius`; the outermost annulus is clipped.
 */
class PppInterference
{
  public:
    PppInterference(double density, InterfererLinks links, double tail_radius);

    //! E[exp(-s I)] for interferers farther than `inner`
    double laplace(double s, double inner) const;

    //! Exponent sum before the factor -2 pi lambda (for diagnostics)
    double exponent(double s, double inner) const;

    double tail_radius() const { return tail_radius_; }

  private:
    double density_;
    InterfererLinks links_;
    double tail_radius_;
};

//! Annulus kernel h(x) for a single state and gain (see PppInterference).
double annulus_antiderivative(double x, double dh, double s, double gain,
                              const channel::StateLaw& law);

//! Z(s, a, b, G) = h(a) - h(b)
double annulus_kernel(double s, double a, double b, double dh, double gain,
                      const channel::StateLaw& law);

struct LaplaceValue
{
    double value = 1;
    //! Contribution of the outermost integration piece to the exponent
    double tail_proxy = 0;
};

/*!
 * Intra- and inter-cluster interference of a Poisson cluster process whose
 * cluster centres host the receivers.
 *
 * All s-independent work (quadrature nodes, conditional distance densities)
 * is done once on construction. Each transform evaluation computes the
 * complement 1 - Lambda(g, s) on a fixed set of distance nodes and contracts
 * it with precomputed sparse weight rows.
 */
class ClusterInterference
{
  public:
    ClusterInterference(geometry::ClusterModel model, double parent_density,
                        InterfererLinks links, double tail_radius);

    //! 1 - O_a(s): probability-weighted interference complement of one user
    double intra_complement(double s) const;
    double laplace_intra(double s) const;
    LaplaceValue laplace_inter(double s) const;

    const geometry::ClusterModel& model() const { return model_; }

  private:
    struct Entry
    {
        int node;
        double weight;
    };
    struct Row
    {
        double weight;  ///< q-quadrature weight times 2 pi lambda q
        int first;      ///< index into entries_
        int count;
        bool last_piece;
    };

    //! 1 - Lambda at every global distance node
    void complement_at_nodes(double s, std::vector<double>& out) const;
    double complement(double s, double g, int gamma) const;

    geometry::ClusterModel model_;
    double parent_density_;
    InterfererLinks links_;
    double tail_radius_;

    std::vector<double> intra_r_;
    std::vector<double> intra_w_;
    std::vector<int> intra_gamma_;

    std::vector<double> g_nodes_;
    std::vector<int> g_gamma_;
    std::vector<Entry> entries_;
    std::vector<Row> rows_;
};

}  // namespace cover::analytic
