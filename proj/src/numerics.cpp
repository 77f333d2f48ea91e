#include "cover/numerics.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cover::numerics {

namespace {

constexpr double kSeriesEps = 1e-16;
constexpr double kRequiredRelTol = 1e-10;
constexpr int kMaxSeriesTerms = 20000;

// Below this argument the defining series is summed directly.
constexpr double kDirectSeriesLimit = 0.9;
// Above this argument the 1/z continuation replaces the Pfaff transform.
constexpr double kContinuationLimit = 4.0;

[[noreturn]] void throw_nonconvergence(const char* which, double z)
{
    throw std::runtime_error(std::string("hypergeo_kernel: ") + which
                             + " series did not converge at z="
                             + std::to_string(z));
}

// sum_{k>=1} (a)_k (b)_k / ((c)_k k!) (-z)^k, i.e. 2F1(a,b;c;-z) - 1
double series_minus_one(double a, double b, double c, double z)
{
    double term = a * b / c * (-z);
    double sum = term;
    for (int k = 1; k < kMaxSeriesTerms; ++k)
    {
        term *= (a + k) * (b + k) / ((c + k) * (k + 1)) * (-z);
        sum += term;
        if (std::abs(term) <= kSeriesEps * std::abs(sum))
            return sum;
    }
    if (std::abs(term) <= kRequiredRelTol * std::abs(sum))
        return sum;
    throw_nonconvergence("direct", z);
}

// Pfaff: 2F1(-d, N; 1-d; -z) = (1+z)^-N 2F1(1, N; 1-d; z/(1+z))
double pfaff_minus_one(double delta, int n, double z)
{
    const double c = 1.0 - delta;
    const double x = z / (1.0 + z);
    double term = 1.0;
    double sum = 1.0;
    int k = 0;
    for (; k < kMaxSeriesTerms; ++k)
    {
        term *= (n + k) / (c + k) * x;
        sum += term;
        if (term <= kSeriesEps * sum)
            break;
    }
    if (k == kMaxSeriesTerms && term > kRequiredRelTol * sum)
        throw_nonconvergence("Pfaff", z);
    return sum * std::pow(1.0 + z, -n) - 1.0;
}

// 1/z continuation. Because the second upper parameter of the first branch
// vanishes, that branch collapses to a single power:
//   2F1(-d, N; 1-d; -z) = G(1-d)G(N+d)/G(N) z^d
//                         + d/(N+d) z^-N 2F1(N, N+d; N+d+1; -1/z)
double continuation_minus_one(double delta, int n, double z)
{
    const double lead = std::exp(std::lgamma(1.0 - delta) + std::lgamma(n + delta)
                                 - std::lgamma(static_cast<double>(n)))
                        * std::pow(z, delta);
    const double w = -1.0 / z;
    double term = 1.0;
    double sum = 1.0;
    int k = 0;
    for (; k < kMaxSeriesTerms; ++k)
    {
        term *= (n + k) * (n + delta + k) / ((n + delta + 1 + k) * (k + 1)) * w;
        sum += term;
        if (std::abs(term) <= kSeriesEps * std::abs(sum))
            break;
    }
    if (k == kMaxSeriesTerms)
        throw_nonconvergence("continuation", z);
    return lead + delta / (n + delta) * std::pow(z, -n) * sum - 1.0;
}

}  // namespace

void QuadratureSpec::validate() const
{
    if (node_count < 1)
        throw std::invalid_argument("quadrature: node_count must be >= 1");
    if (gamma_cutoff < 0)
        throw std::invalid_argument("quadrature: gamma_cutoff must be >= 0");
    if (!(tail_radius >= 0))
        throw std::invalid_argument("quadrature: tail_radius must be >= 0");
}

std::vector<NodeWeight> chebyshev_nodes(int m)
{
    if (m < 1)
        throw std::invalid_argument("chebyshev_nodes: m must be >= 1");
    std::vector<NodeWeight> rule;
    rule.reserve(m);
    const double step = std::numbers::pi / (2.0 * m);
    for (int k = 1; k <= m; ++k)
    {
        const double angle = (2 * k - 1) * step;
        rule.push_back({std::cos(angle), step * std::sin(angle)});
    }
    return rule;
}

std::vector<NodeWeight> legendre_nodes(int n)
{
    if (n < 1)
        throw std::invalid_argument("legendre_nodes: n must be >= 1");
    std::vector<NodeWeight> rule(n);
    for (int i = 0; i < (n + 1) / 2; ++i)
    {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0;
        for (int iter = 0; iter < 100; ++iter)
        {
            double p0 = 1.0;
            double p1 = x;
            for (int k = 2; k <= n; ++k)
            {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule[i] = {x, w};
        rule[n - 1 - i] = {-x, w};
    }
    return rule;
}

double integrate_chebyshev(const std::function<double(double)>& f, double a,
                           double b, const std::vector<NodeWeight>& rule)
{
    const double half = 0.5 * (b - a);
    double sum = 0;
    for (const auto& nw : rule)
        sum += nw.weight * f(a + half * (nw.node + 1.0));
    return (b - a) * sum;
}

double integrate_legendre(const std::function<double(double)>& f, double a,
                          double b, const std::vector<NodeWeight>& rule)
{
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    double sum = 0;
    for (const auto& nw : rule)
        sum += nw.weight * f(mid + half * nw.node);
    return half * sum;
}

double hypergeo_kernel(double z, double alpha, int nakagami)
{
    if (!(alpha > 2.0))
        throw std::domain_error("hypergeo_kernel: alpha must exceed 2 (use f2_kernel)");
    if (nakagami < 1)
        throw std::domain_error("hypergeo_kernel: nakagami must be >= 1");
    if (!(z >= 0.0))
        throw std::domain_error("hypergeo_kernel: z must be non-negative");
    if (z == 0.0)
        return 0.0;

    const double delta = 2.0 / alpha;
    if (z < kDirectSeriesLimit)
        return series_minus_one(-delta, nakagami, 1.0 - delta, z);
    if (z <= kContinuationLimit)
        return pfaff_minus_one(delta, nakagami, z);
    return continuation_minus_one(delta, nakagami, z);
}

double f2_kernel(double z, int nakagami)
{
    if (nakagami < 1)
        throw std::domain_error("f2_kernel: nakagami must be >= 1");
    if (!(z >= 0.0))
        throw std::domain_error("f2_kernel: z must be non-negative");
    if (z == 0.0)
        return 0.0;

    const double ratio = 1.0 / (1.0 + z);
    double power = 1.0;
    double sum = 0;
    for (int l = 1; l < nakagami; ++l)
    {
        power *= ratio;
        sum += static_cast<double>(nakagami - l) / l * power;
    }
    return z * sum - nakagami * z * std::log1p(1.0 / z);
}

double upper_incomplete_gamma_reg(int n, double x)
{
    if (n < 1)
        throw std::domain_error("upper_incomplete_gamma_reg: n must be >= 1");
    if (!(x >= 0.0))
        throw std::domain_error("upper_incomplete_gamma_reg: x must be >= 0");
    double term = std::exp(-x);
    double sum = term;
    for (int k = 1; k < n; ++k)
    {
        term *= x / k;
        sum += term;
    }
    return std::min(1.0, sum);
}

double bessel_i0_scaled(double x)
{
    if (!(x >= 0.0))
        throw std::domain_error("bessel_i0: x must be non-negative");
    if (x <= 20.0)
    {
        const double q = 0.25 * x * x;
        double term = 1.0;
        double sum = 1.0;
        for (int k = 1; k < 500; ++k)
        {
            term *= q / (static_cast<double>(k) * k);
            sum += term;
            if (term < kSeriesEps * sum)
                break;
        }
        return std::exp(-x) * sum;
    }
    // Asymptotic expansion; at x > 20 the smallest term is far below 1e-16.
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 200; ++k)
    {
        const double next = term * (2.0 * k - 1) * (2.0 * k - 1) / (8.0 * k * x);
        if (next > term)
            break;
        term = next;
        sum += term;
        if (term < kSeriesEps * sum)
            break;
    }
    return sum / std::sqrt(2.0 * std::numbers::pi * x);
}

double bessel_i0(double x)
{
    const double scaled = bessel_i0_scaled(x);
    return scaled * std::exp(x);
}

GammaSum gamma_sum(const std::function<double(int)>& term, int cutoff)
{
    if (cutoff < 0)
        throw std::invalid_argument("gamma_sum: cutoff must be >= 0");
    GammaSum out;
    for (int g = 0; g <= cutoff; ++g)
    {
        out.last_term = term(g);
        out.sum += out.last_term;
    }
    return out;
}

double binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0.0;
    double result = 1.0;
    for (int i = 1; i <= k; ++i)
        result = result * (n - k + i) / i;
    return result;
}

double alzer_eta(int nakagami)
{
    if (nakagami < 1)
        throw std::domain_error("alzer_eta: nakagami must be >= 1");
    return nakagami * std::exp(-std::lgamma(nakagami + 1.0) / nakagami);
}

}  // namespace cover::numerics
