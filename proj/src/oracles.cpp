#include "cover/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include "cover/geometry.hpp"

namespace cover::oracle {

namespace {

using boost::math::quadrature::gauss_kronrod;

constexpr double kTol = 1e-13;
constexpr unsigned kDepth = 30;

template<class F>
double gk61(F f, double a, double b)
{
    return gauss_kronrod<double, 61>::integrate(f, a, b, kDepth, kTol);
}

template<class F>
double gk31(F f, double a, double b, double tol)
{
    return gauss_kronrod<double, 31>::integrate(f, a, b, 15, tol);
}

double one_minus_power(double x, int n)
{
    return -std::expm1(-n * std::log1p(x));
}

double loss(double g, double dh, const channel::StateLaw& law)
{
    const double d2 = std::max(1.0, g * g + dh * dh);
    return law.intercept * std::pow(d2, -0.5 * law.alpha);
}

//! Annulus edges j/c inside (lo, hi), with lo and hi themselves.
std::vector<double> edges(double lo, double hi, double rate)
{
    std::vector<double> out{lo};
    if (rate > 0)
        for (double j = std::floor(lo * rate) + 1; j / rate < hi; ++j)
            if (j / rate > lo)
                out.push_back(j / rate);
    out.push_back(hi);
    return out;
}

}  // namespace

double annulus_integral(double s, double a, double b, double dh, double gain,
                        const channel::StateLaw& law)
{
    const int n = law.nakagami;
    auto f = [&](double x) {
        const double y = x * x + dh * dh;
        return one_minus_power(s * gain * law.intercept * std::pow(y, -0.5 * law.alpha) / n, n)
               * x;
    };
    if (std::isinf(b))
    {
        const double mid = 2 * a + 10;
        return gk61(f, a, mid) + gk61(f, mid, b);
    }
    // Split so that the adaptive rule sees the knee of the integrand.
    double acc = 0;
    double lo = a;
    while (lo < b)
    {
        const double hi = std::min(b, std::max(2 * lo, lo + 10));
        acc += gk61(f, lo, hi);
        lo = hi;
    }
    return acc;
}

double complement(double s, double g, const InterfererLinks& links)
{
    const double p_los = links.los.p_los_at(g);
    double acc = 0;
    for (int k = 0; k < 2; ++k)
    {
        const double p = k == 0 ? p_los : 1 - p_los;
        if (p == 0)
            continue;
        const auto& law = k == 0 ? links.fading.los : links.fading.nlos;
        const double l = loss(g, links.dh, law);
        for (int i = 0; i < 4; ++i)
            acc += p * links.gains.probability[i]
                   * one_minus_power(s * links.gains.value[i] * l / law.nakagami, law.nakagami);
    }
    return acc;
}

double ppp_laplace(double s, double inner, double density, const InterfererLinks& links,
                   double tail)
{
    if (inner >= tail)
        return 1.0;
    const auto e = edges(inner, tail, links.los.rate());
    double acc = 0;
    for (std::size_t i = 1; i < e.size(); ++i)
    {
        // Keep every sub-interval inside a single annulus.
        const double mid = 0.5 * (e[i - 1] + e[i]);
        const int gamma = links.los.index(mid);
        const double p_los = links.los.p_los(gamma);
        auto f = [&](double x) {
            double v = 0;
            for (int k = 0; k < 2; ++k)
            {
                const double p = k == 0 ? p_los : 1 - p_los;
                if (p == 0)
                    continue;
                const auto& law = k == 0 ? links.fading.los : links.fading.nlos;
                const double l = loss(x, links.dh, law);
                for (int j = 0; j < 4; ++j)
                    v += p * links.gains.probability[j]
                         * one_minus_power(s * links.gains.value[j] * l / law.nakagami,
                                           law.nakagami);
            }
            return v * x;
        };
        acc += gk61(f, e[i - 1], e[i]);
    }
    return std::exp(-2 * std::numbers::pi * density * acc);
}

double intra_complement(double s, const geometry::ClusterModel& model,
                        const InterfererLinks& links)
{
    const double hi = model.kind == geometry::ClusterKind::matern
                          ? model.spread
                          : model.spread * std::sqrt(-2 * std::log(1e-16));
    const auto e = edges(0, hi, links.los.rate());
    double acc = 0;
    for (std::size_t i = 1; i < e.size(); ++i)
        acc += gk61([&](double w) {
            return geometry::pdf_intra(w, model) * complement(s, w, links);
        }, e[i - 1], e[i]);
    return acc;
}

double inter_laplace(double s, const geometry::ClusterModel& model, double parent_density,
                     const InterfererLinks& links, double tail)
{
    const double spread = model.spread;
    const bool thomas = model.kind == geometry::ClusterKind::thomas;
    const double rate = links.los.rate();

    auto inner = [&](double q) {
        std::vector<std::pair<double, double>> ranges;
        if (thomas)
            ranges.push_back({std::max(0.0, q - 10 * spread), q + 10 * spread});
        else
        {
            if (q < spread)
                ranges.push_back({0.0, spread - q});
            ranges.push_back({std::abs(spread - q), spread + q});
        }
        double acc = 0;
        for (auto [lo, hi] : ranges)
        {
            const auto e = edges(lo, hi, rate);
            auto f = [&](double g) {
                return geometry::pdf_inter_conditional(g, q, model) * complement(s, g, links);
            };
            for (std::size_t i = 1; i < e.size(); ++i)
            {
                // The Matern density has square-root endpoints; tanh-sinh absorbs them.
                if (thomas)
                    acc += gk31(f, e[i - 1], e[i], 1e-11);
                else if (e[i] > e[i - 1])
                    acc += boost::math::quadrature::tanh_sinh<double>().integrate(f, e[i - 1], e[i], 1e-11);
            }
        }
        return std::clamp(acc, 0.0, 1.0);
    };
    auto outer = [&](double q) {
        const double c = inner(q);
        const double active = model.population == geometry::Population::fixed
                                  ? -std::expm1(model.size * std::log1p(-c))
                                  : -std::expm1(-model.size * c);
        return active * q;
    };

    std::vector<double> pts{0.0};
    for (double q = 0.5 * spread; q < tail; q += 0.5 * spread)
        pts.push_back(q);
    if (!thomas && spread < tail)
        pts.push_back(spread);
    pts.push_back(tail);
    std::sort(pts.begin(), pts.end());
    double acc = 0;
    for (std::size_t i = 1; i < pts.size(); ++i)
        if (pts[i] > pts[i - 1])
            acc += gk31(outer, pts[i - 1], pts[i], 1e-10);
    return std::exp(-2 * std::numbers::pi * parent_density * acc);
}

double ks_statistic(const std::vector<double>& sorted, const std::vector<double>& cdf)
{
    if (sorted.size() != cdf.size() || sorted.empty())
        throw std::invalid_argument("ks_statistic: size mismatch");
    const double n = static_cast<double>(sorted.size());
    double d = 0;
    for (std::size_t i = 0; i < cdf.size(); ++i)
    {
        d = std::max(d, (i + 1) / n - cdf[i]);
        d = std::max(d, cdf[i] - i / n);
    }
    return d;
}

double ks_pvalue(double d, std::size_t n)
{
    const double rn = std::sqrt(static_cast<double>(n));
    const double lambda = (rn + 0.12 + 0.11 / rn) * d;
    if (lambda < 0.2)
        return 1.0;
    double sum = 0;
    for (int k = 1; k <= 100; ++k)
    {
        const double term = std::exp(-2.0 * k * k * lambda * lambda);
        sum += (k % 2 == 1 ? term : -term);
        if (term < 1e-16)
            break;
    }
    return std::clamp(2 * sum, 0.0, 1.0);
}

std::vector<double> cdf_by_quadrature(const std::function<double(double)>& pdf, double lower,
                                      const std::vector<double>& sorted)
{
    std::vector<double> out;
    out.reserve(sorted.size());
    double acc = 0;
    double prev = lower;
    for (double x : sorted)
    {
        if (x < prev)
            throw std::invalid_argument("cdf_by_quadrature: samples must be sorted and >= lower");
        if (x > prev)
            acc += gauss_kronrod<double, 15>::integrate(pdf, prev, x, 0);
        out.push_back(acc);
        prev = x;
    }
    return out;
}

}  // namespace cover::oracle
