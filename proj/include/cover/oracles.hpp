#pragma once

#include <functional>
#include <vector>

#include "cover/interference.hpp"

//! Brute-force reference computations used to check the closed forms.
namespace cover::oracle {

using analytic::InterfererLinks;

/*!
 * int_a^b (1 - (1 + s gain C (x^2 + dh^2)^(-alpha/2) / N)^(-N)) x dx by
 * adaptive Gauss-Kronrod; b may be +infinity.
 */
double annulus_integral(double s, double a, double b, double dh, double gain,
                        const channel::StateLaw& law);

//! PPP Laplace transform from a direct radial integral over [inner, tail].
double ppp_laplace(double s, double inner, double density, const InterfererLinks& links,
                   double tail);

//! 1 - Lambda(g, s): the mixture/state-averaged interference complement at distance g.
double complement(double s, double g, const InterfererLinks& links);

//! Intra-cluster complement by adaptive quadrature of pdf_intra.
double intra_complement(double s, const geometry::ClusterModel& model,
                        const InterfererLinks& links);

//! Inter-cluster transform by nested adaptive quadrature over q and g.
double inter_laplace(double s, const geometry::ClusterModel& model, double parent_density,
                     const InterfererLinks& links, double tail);

//! Kolmogorov-Smirnov statistic of sorted samples against CDF values at them.
double ks_statistic(const std::vector<double>& sorted, const std::vector<double>& cdf);

//! Asymptotic Kolmogorov tail probability of statistic d with n samples.
double ks_pvalue(double d, std::size_t n);

/*!
 * CDF values at sorted sample points, obtained by integrating `pdf` from
 * `lower` across consecutive gaps with a fixed 15-point Gauss-Kronrod rule.
 */
std::vector<double> cdf_by_quadrature(const std::function<double(double)>& pdf, double lower,
                                      const std::vector<double>& sorted);

}  // namespace cover::oracle
