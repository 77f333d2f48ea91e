#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace cover::numerics {

/// Quadrature and truncation controls shared by every analytic evaluation.
struct QuadratureSpec
{
    int node_count = 30;     ///< Chebyshev nodes per integration piece
    int gamma_cutoff = 2;    ///< highest blockage index always retained
    double tail_radius = 0;  ///< metres; 0 selects 20/sqrt(pi*lambda) per use
    bool auto_escalate = true;

    void validate() const;
};

struct NodeWeight
{
    double node;
    double weight;
};

/*!
 * Gauss-Chebyshev nodes zeta_k = cos((2k-1)pi/(2m)) with weights
 * pi/(2m) * sqrt(1 - zeta_k^2).
 *
 * The weights are normalised to an interval of unit length, so that
 *   int_a^b f(x) dx ~= (b - a) * sum_k w_k f(a + (b - a)(zeta_k + 1)/2).
 * Nodes are returned in strictly decreasing order.
 */
std::vector<NodeWeight> chebyshev_nodes(int m);

/// Gauss-Legendre nodes and weights on [-1, 1] (weights sum to 2).
std::vector<NodeWeight> legendre_nodes(int n);

/// Integrate f over [a, b] with the mapped Chebyshev rule above.
double integrate_chebyshev(const std::function<double(double)>& f, double a,
                           double b, const std::vector<NodeWeight>& rule);

/// Integrate f over [a, b] with a Gauss-Legendre rule from legendre_nodes().
double integrate_legendre(const std::function<double(double)>& f, double a,
                          double b, const std::vector<NodeWeight>& rule);

/*!
 * Interference kernel for path-loss exponents above two:
 *   F(z) = 2F1(-2/alpha, N; 1 - 2/alpha; -z) - 1.
 *
 * It satisfies the annulus identity
 *   int_A^inf (1 - (1 + s y^-alpha)^-N) y dy = A^2/2 * F(s / A^alpha).
 *
 * Small z uses the defining series, moderate z the Pfaff transform, and
 * large z the analytic continuation in 1/z. Throws std::domain_error for
 * alpha <= 2 and std::runtime_error if a series fails to converge.
 */
double hypergeo_kernel(double z, double alpha, int nakagami);

/*!
 * Kernel for alpha == 2, an antiderivative form of the same annulus integral:
 *   F2(z) = z * sum_{l=1}^{N-1} (N - l) / (l (1+z)^l) - N z ln(1 + 1/z)
 * so that int_a^b (...) y dy = h(a) - h(b) with h(x) = Y/2 F2(s/Y), Y = x^2.
 * F2(0) = 0. Values are negative (the tail integral diverges at alpha = 2).
 */
double f2_kernel(double z, int nakagami);

/// Gamma(n, x) / (n-1)! for integer n via the finite Poisson sum.
double upper_incomplete_gamma_reg(int n, double x);

/// Modified Bessel function I0. Overflows to +inf beyond x ~ 713.
double bessel_i0(double x);

/// exp(-x) * I0(x), finite for all x >= 0.
double bessel_i0_scaled(double x);

struct GammaSum
{
    double sum = 0;
    double last_term = 0;
};

/// Partial sum over the blockage index gamma = 0..cutoff.
GammaSum gamma_sum(const std::function<double(int)>& term, int cutoff);

/// Binomial coefficient for small non-negative arguments.
double binomial(int n, int k);

/// Alzer scaling constant eta = N (N!)^(-1/N).
double alzer_eta(int nakagami);

}  // namespace cover::numerics
