#include "cover/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cover/numerics.hpp"

namespace cover::geometry {

void ClusterModel::validate() const
{
    if (!(spread > 0) || !std::isfinite(spread))
        throw std::invalid_argument("cluster spread must be positive");
    if (population == Population::fixed)
    {
        if (!(size >= 1) || size != std::floor(size))
            throw std::invalid_argument("cluster size must be an integer >= 1 for a fixed population");
    }
    else if (!(size > 0) || !std::isfinite(size))
    {
        throw std::invalid_argument("cluster size must be positive");
    }
}

std::vector<PlanarPoint> sample_ppp(double density, Region region, Rng& rng)
{
    if (!(density >= 0))
        throw std::invalid_argument("sample_ppp: density must be non-negative");
    if (!(region.inner >= 0) || !(region.outer > region.inner)
        || !std::isfinite(region.outer))
        throw std::invalid_argument("sample_ppp: need 0 <= inner < outer < inf");

    std::vector<PlanarPoint> points;
    if (density == 0)
        return points;

    const double r0sq = region.inner * region.inner;
    const double r1sq = region.outer * region.outer;
    const double mean = density * std::numbers::pi * (r1sq - r0sq);
    const auto count = std::poisson_distribution<long>(mean)(rng);
    points.reserve(count);

    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (long i = 0; i < count; ++i)
    {
        const double r = std::sqrt(r0sq + (r1sq - r0sq) * unit(rng));
        const double phi = 2 * std::numbers::pi * unit(rng);
        points.push_back({r * std::cos(phi), r * std::sin(phi)});
    }
    return points;
}

PlanarPoint sample_offset(const ClusterModel& model, Rng& rng)
{
    if (model.kind == ClusterKind::thomas)
    {
        std::normal_distribution<double> normal(0.0, model.spread);
        const double x = normal(rng);
        return {x, normal(rng)};
    }
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double r = model.spread * std::sqrt(unit(rng));
    const double phi = 2 * std::numbers::pi * unit(rng);
    return {r * std::cos(phi), r * std::sin(phi)};
}

int sample_population(const ClusterModel& model, Rng& rng)
{
    if (model.population == Population::fixed)
        return model.fixed_size();
    return std::poisson_distribution<int>(model.size)(rng);
}

std::vector<PlanarPoint>
sample_cluster(PlanarPoint center, const ClusterModel& model, Rng& rng)
{
    const int count = sample_population(model, rng);
    std::vector<PlanarPoint> points;
    points.reserve(count);
    for (int i = 0; i < count; ++i)
    {
        const auto off = sample_offset(model, rng);
        points.push_back({center.x + off.x, center.y + off.y});
    }
    return points;
}

double pdf_nearest_ppp(double r1, double density)
{
    if (r1 < 0)
        return 0;
    const double a = std::numbers::pi * density;
    return 2 * a * r1 * std::exp(-a * r1 * r1);
}

double cdf_nearest_ppp(double r1, double density)
{
    if (r1 <= 0)
        return 0;
    return -std::expm1(-std::numbers::pi * density * r1 * r1);
}

double pdf_intra(double w, const ClusterModel& model)
{
    if (w < 0)
        return 0;
    const double s = model.spread;
    if (model.kind == ClusterKind::thomas)
        return w / (s * s) * std::exp(-w * w / (2 * s * s));
    return w <= s ? 2 * w / (s * s) : 0.0;
}

double cdf_intra(double w, const ClusterModel& model)
{
    if (w <= 0)
        return 0;
    const double s = model.spread;
    if (model.kind == ClusterKind::thomas)
        return -std::expm1(-w * w / (2 * s * s));
    return w >= s ? 1.0 : (w * w) / (s * s);
}

double pdf_inter_conditional(double g, double q, const ClusterModel& model)
{
    if (g < 0 || q < 0)
        return 0;
    const double s = model.spread;
    if (model.kind == ClusterKind::thomas)
    {
        const double s2 = s * s;
        const double d = g - q;
        return std::exp(-d * d / (2 * s2)) * (g / s2)
               * numerics::bessel_i0_scaled(g * q / s2);
    }

    double density = 0;
    if (g < s - q)
        density += 2 * g / (s * s);
    if (g >= std::abs(s - q) && g <= s + q && g > 0 && q > 0)
    {
        const double c = std::clamp((g * g + q * q - s * s) / (2 * g * q), -1.0, 1.0);
        density += 2 * g / (std::numbers::pi * s * s) * std::acos(c);
    }
    return density;
}

double nearest_tail_radius(double density, double tail_mass)
{
    return std::sqrt(-std::log(tail_mass) / (std::numbers::pi * density));
}

double intra_tail_radius(const ClusterModel& model, double tail_mass)
{
    if (model.kind == ClusterKind::matern)
        return model.spread;
    return model.spread * std::sqrt(-2 * std::log(tail_mass));
}

}  // namespace cover::geometry
