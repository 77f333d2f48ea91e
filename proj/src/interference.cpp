#include "cover/interference.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cover/numerics.hpp"

namespace cover::analytic {

namespace {

// Gauss-Legendre points per piece for the inner distance integrals.
constexpr int kPieceNodes = 12;
// Points per sub-piece for the Matern conditional density.
constexpr int kLocalNodes = 16;
// Intra-cluster distances are integrated up to this tail mass.
constexpr double kIntraTailMass = 1e-12;

const std::vector<numerics::NodeWeight>& piece_rule()
{
    static const auto rule = numerics::legendre_nodes(kPieceNodes);
    return rule;
}

const std::vector<numerics::NodeWeight>& local_rule()
{
    static const auto rule = numerics::legendre_nodes(kLocalNodes);
    return rule;
}

//! Barycentric interpolation weights of the reference piece rule.
const std::vector<double>& piece_barycentric()
{
    static const std::vector<double> weights = [] {
        const auto& rule = piece_rule();
        std::vector<double> w(rule.size(), 1.0);
        for (std::size_t k = 0; k < rule.size(); ++k)
            for (std::size_t j = 0; j < rule.size(); ++j)
                if (j != k)
                    w[k] /= rule[k].node - rule[j].node;
        return w;
    }();
    return weights;
}

//! Split [lo, hi] at blockage-annulus edges and into pieces of at most `len`.
std::vector<double> breakpoints(double lo, double hi, double rate, double len,
                                std::vector<double> extra = {})
{
    std::vector<double> pts{lo, hi};
    if (rate > 0)
    {
        const double width = 1 / rate;
        for (double b = std::floor(lo * rate + 1) * width; b < hi; b += width)
            pts.push_back(b);
    }
    for (double e : extra)
        if (e > lo && e < hi)
            pts.push_back(e);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    std::vector<double> out{pts.front()};
    for (std::size_t i = 1; i < pts.size(); ++i)
    {
        const double a = pts[i - 1];
        const double b = pts[i];
        const int n = std::max(1, static_cast<int>(std::ceil((b - a) / len - 1e-9)));
        for (int k = 1; k < n; ++k)
            out.push_back(a + (b - a) * k / n);
        out.push_back(b);
    }
    return out;
}

double mixture_complement(double s, double loss,
                          const channel::GainMixture& gains, int nakagami)
{
    double acc = 0;
    for (int i = 0; i < 4; ++i)
    {
        const double x = s * gains.value[i] * loss / nakagami;
        acc += gains.probability[i] * -std::expm1(-nakagami * std::log1p(x));
    }
    return acc;
}

struct MappedNode
{
    double g;
    double weight;
};

/*!
 * Nodes on [a, b] that absorb square-root endpoint behaviour: a quadratic
 * substitution at one singular end, a cosine substitution when both are.
 */
void mapped_piece(double a, double b, bool sing_a, bool sing_b,
                  std::vector<MappedNode>& out)
{
    const auto& rule = local_rule();
    const double len = b - a;
    for (const auto& nw : rule)
    {
        if (sing_a && sing_b)
        {
            const double theta = 0.5 * std::numbers::pi * (nw.node + 1);
            const double wt = 0.5 * std::numbers::pi * nw.weight;
            out.push_back({a + len * 0.5 * (1 - std::cos(theta)),
                           wt * len * 0.5 * std::sin(theta)});
        }
        else if (sing_a || sing_b)
        {
            const double t = 0.5 * (nw.node + 1);
            const double wt = 0.5 * nw.weight * 2 * len * t;
            out.push_back({sing_a ? a + len * t * t : b - len * t * t, wt});
        }
        else
        {
            out.push_back({a + 0.5 * len * (nw.node + 1), 0.5 * len * nw.weight});
        }
    }
}

}  // namespace

double annulus_antiderivative(double x, double dh, double s, double gain,
                              const channel::StateLaw& law)
{
    if (s <= 0)
        return 0;
    const int n = law.nakagami;
    const double k = s * law.intercept * gain / n;
    const double y = x * x + dh * dh;
    if (y == 0)
    {
        if (law.alpha == 2)
            return 0;
        // Limit of Y/2 F(k / Y^(alpha/2)) as Y -> 0.
        const double delta = 2 / law.alpha;
        return 0.5
               * std::exp(std::lgamma(1 - delta) + std::lgamma(n + delta)
                          - std::lgamma(static_cast<double>(n)))
               * std::pow(k, delta);
    }
    const double z = law.alpha == 2 ? k / y : k / std::pow(y, 0.5 * law.alpha);
    if (law.alpha == 2)
        return 0.5 * y * numerics::f2_kernel(z, n);
    return 0.5 * y * numerics::hypergeo_kernel(z, law.alpha, n);
}

double annulus_kernel(double s, double a, double b, double dh, double gain,
                      const channel::StateLaw& law)
{
    return annulus_antiderivative(a, dh, s, gain, law)
           - annulus_antiderivative(b, dh, s, gain, law);
}

PppInterference::PppInterference(double density, InterfererLinks links,
                                 double tail_radius)
    : density_(density), links_(std::move(links)), tail_radius_(tail_radius)
{
    if (!(density >= 0))
        throw std::invalid_argument("interferer density must be non-negative");
    if (!(tail_radius > 0))
        throw std::invalid_argument("tail radius must be positive");
}

double PppInterference::exponent(double s, double inner) const
{
    if (s <= 0 || inner >= tail_radius_ || density_ == 0)
        return 0;
    const double rate = links_.los.rate();
    const auto& gains = links_.gains;
    const channel::StateLaw* laws[2] = {&links_.fading.los, &links_.fading.nlos};

    double h_prev[2][4];
    auto eval = [&](double x, double (&h)[2][4]) {
        for (int k = 0; k < 2; ++k)
            for (int i = 0; i < 4; ++i)
                h[k][i] = annulus_antiderivative(x, links_.dh, s, gains.value[i], *laws[k]);
    };
    eval(inner, h_prev);

    double total = 0;
    double a = inner;
    int j = rate > 0 ? links_.los.index(inner) : 0;
    while (a < tail_radius_)
    {
        const double b = rate > 0 ? std::min((j + 1) / rate, tail_radius_) : tail_radius_;
        if (b > a)
        {
            double h_next[2][4];
            eval(b, h_next);
            const double p_los = links_.los.p_los(j);
            const double weight[2] = {p_los, 1 - p_los};
            for (int k = 0; k < 2; ++k)
            {
                if (weight[k] == 0)
                    continue;
                double acc = 0;
                for (int i = 0; i < 4; ++i)
                    acc += gains.probability[i] * (h_prev[k][i] - h_next[k][i]);
                total += weight[k] * acc;
            }
            std::copy(&h_next[0][0], &h_next[0][0] + 8, &h_prev[0][0]);
            a = b;
        }
        ++j;
    }
    return total;
}

double PppInterference::laplace(double s, double inner) const
{
    return std::exp(-2 * std::numbers::pi * density_ * exponent(s, inner));
}

ClusterInterference::ClusterInterference(geometry::ClusterModel model,
                                         double parent_density,
                                         InterfererLinks links, double tail_radius)
    : model_(model)
    , parent_density_(parent_density)
    , links_(std::move(links))
    , tail_radius_(tail_radius)
{
    model_.validate();
    if (!(parent_density >= 0))
        throw std::invalid_argument("cluster density must be non-negative");
    if (!(tail_radius > 0))
        throw std::invalid_argument("tail radius must be positive");

    const bool thomas = model_.kind == geometry::ClusterKind::thomas;
    const double spread = model_.spread;
    const double len = 0.5 * spread;
    const double rate = links_.los.rate();
    const auto& rule = piece_rule();

    // Intra-cluster distances.
    {
        const double hi = geometry::intra_tail_radius(model_, kIntraTailMass);
        const auto pts = breakpoints(0, hi, rate, len);
        for (std::size_t p = 1; p < pts.size(); ++p)
        {
            const double a = pts[p - 1];
            const double b = pts[p];
            for (const auto& nw : rule)
            {
                const double r = a + 0.5 * (b - a) * (nw.node + 1);
                intra_r_.push_back(r);
                intra_w_.push_back(0.5 * (b - a) * nw.weight
                                   * geometry::pdf_intra(r, model_));
                intra_gamma_.push_back(links_.los.index(r));
            }
        }
    }

    // Global distance nodes for the inter-cluster densities.
    const double support = thomas ? geometry::thomas_support_sigmas * spread : spread;
    const double g_max = tail_radius_ + support;
    const auto g_pts = breakpoints(0, g_max, rate, len);
    const int n_pieces = static_cast<int>(g_pts.size()) - 1;
    for (int p = 0; p < n_pieces; ++p)
    {
        const double a = g_pts[p];
        const double b = g_pts[p + 1];
        for (const auto& nw : rule)
        {
            const double g = a + 0.5 * (b - a) * (nw.node + 1);
            g_nodes_.push_back(g);
            g_gamma_.push_back(links_.los.index(g));
        }
    }
    auto piece_of = [&](double g) {
        auto it = std::upper_bound(g_pts.begin(), g_pts.end(), g);
        return std::clamp(static_cast<int>(it - g_pts.begin()) - 1, 0, n_pieces - 1);
    };

    // Outer integral over parent distance q.
    std::vector<double> extra;
    if (!thomas)
        extra.push_back(spread);
    const auto q_pts = breakpoints(0, tail_radius_, 0.0, len, extra);
    const auto& bary = piece_barycentric();
    std::vector<double> dense(g_nodes_.size(), 0.0);
    std::vector<MappedNode> local;

    for (std::size_t qp = 1; qp < q_pts.size(); ++qp)
    {
        const double qa = q_pts[qp - 1];
        const double qb = q_pts[qp];
        for (const auto& qnw : rule)
        {
            const double q = qa + 0.5 * (qb - qa) * (qnw.node + 1);
            const double qw = 0.5 * (qb - qa) * qnw.weight * 2 * std::numbers::pi
                              * parent_density_ * q;
            const int first = static_cast<int>(entries_.size());
            int lo_piece = n_pieces;
            int hi_piece = -1;

            if (thomas)
            {
                lo_piece = piece_of(std::max(0.0, q - support));
                hi_piece = piece_of(std::min(g_max, q + support));
                for (int p = lo_piece; p <= hi_piece; ++p)
                {
                    const double a = g_pts[p];
                    const double b = g_pts[p + 1];
                    for (int k = 0; k < kPieceNodes; ++k)
                    {
                        const int idx = p * kPieceNodes + k;
                        const double f
                            = geometry::pdf_inter_conditional(g_nodes_[idx], q, model_);
                        if (f > 0)
                            entries_.push_back({idx, 0.5 * (b - a) * rule[k].weight * f});
                    }
                }
            }
            else
            {
                // Matern: crescent on [|R-q|, R+q] (square-root ends) plus the
                // fully covered disc [0, R-q] when q < R.
                struct Segment
                {
                    double a, b;
                    bool singular;
                };
                std::vector<Segment> segs;
                if (q < spread)
                    segs.push_back({0.0, spread - q, false});
                segs.push_back({std::abs(spread - q), spread + q, true});

                for (const auto& seg : segs)
                {
                    if (!(seg.b > seg.a))
                        continue;
                    const int p0 = piece_of(seg.a);
                    const int p1 = piece_of(std::nextafter(seg.b, 0.0));
                    for (int p = p0; p <= p1; ++p)
                    {
                        const double a = std::max(seg.a, g_pts[p]);
                        const double b = std::min(seg.b, g_pts[p + 1]);
                        if (!(b > a))
                            continue;
                        local.clear();
                        mapped_piece(a, b, seg.singular && a == seg.a,
                                     seg.singular && b == seg.b, local);
                        const double pa = g_pts[p];
                        const double pb = g_pts[p + 1];
                        for (const auto& ln : local)
                        {
                            const double f
                                = geometry::pdf_inter_conditional(ln.g, q, model_);
                            if (!(f > 0))
                                continue;
                            // Spread the local node onto the piece's global
                            // nodes with the Lagrange basis.
                            const double t = 2 * (ln.g - pa) / (pb - pa) - 1;
                            double denom = 0;
                            double basis[kPieceNodes];
                            int exact = -1;
                            for (int k = 0; k < kPieceNodes; ++k)
                            {
                                const double d = t - rule[k].node;
                                if (d == 0)
                                {
                                    exact = k;
                                    break;
                                }
                                basis[k] = bary[k] / d;
                                denom += basis[k];
                            }
                            for (int k = 0; k < kPieceNodes; ++k)
                            {
                                const double lk = exact >= 0 ? (k == exact ? 1.0 : 0.0)
                                                             : basis[k] / denom;
                                dense[p * kPieceNodes + k] += ln.weight * f * lk;
                            }
                        }
                        lo_piece = std::min(lo_piece, p);
                        hi_piece = std::max(hi_piece, p);
                    }
                }
                for (int p = lo_piece; p <= hi_piece; ++p)
                {
                    for (int k = 0; k < kPieceNodes; ++k)
                    {
                        const int idx = p * kPieceNodes + k;
                        if (dense[idx] != 0)
                            entries_.push_back({idx, dense[idx]});
                        dense[idx] = 0;
                    }
                }
            }
            rows_.push_back({qw, first, static_cast<int>(entries_.size()) - first,
                             qp + 1 == q_pts.size()});
        }
    }
}

double ClusterInterference::complement(double s, double g, int gamma) const
{
    const double p_los = links_.los.p_los(gamma);
    double acc = 0;
    if (p_los > 0)
    {
        const auto& law = links_.fading.los;
        acc += p_los
               * mixture_complement(s, channel::path_loss(g, links_.dh, law),
                                    links_.gains, law.nakagami);
    }
    if (p_los < 1)
    {
        const auto& law = links_.fading.nlos;
        acc += (1 - p_los)
               * mixture_complement(s, channel::path_loss(g, links_.dh, law),
                                    links_.gains, law.nakagami);
    }
    return acc;
}

void ClusterInterference::complement_at_nodes(double s, std::vector<double>& out) const
{
    out.resize(g_nodes_.size());
    for (std::size_t i = 0; i < g_nodes_.size(); ++i)
        out[i] = complement(s, g_nodes_[i], g_gamma_[i]);
}

double ClusterInterference::intra_complement(double s) const
{
    if (s <= 0)
        return 0;
    double acc = 0;
    for (std::size_t i = 0; i < intra_r_.size(); ++i)
        acc += intra_w_[i] * complement(s, intra_r_[i], intra_gamma_[i]);
    return std::clamp(acc, 0.0, 1.0);
}

double ClusterInterference::laplace_intra(double s) const
{
    const double c = intra_complement(s);
    if (model_.population == geometry::Population::fixed)
    {
        const int others = model_.fixed_size() - 1;
        if (others == 0 || c == 0)
            return 1.0;
        return c >= 1 ? 0.0 : std::exp(others * std::log1p(-c));
    }
    return std::exp(-(model_.size - 1) * c);
}

LaplaceValue ClusterInterference::laplace_inter(double s) const
{
    if (s <= 0 || parent_density_ == 0)
        return {};
    std::vector<double> comp;
    complement_at_nodes(s, comp);

    const bool fixed = model_.population == geometry::Population::fixed;
    const double size = model_.size;
    double exponent = 0;
    double proxy = 0;
    for (const auto& row : rows_)
    {
        double c = 0;
        for (int e = row.first; e < row.first + row.count; ++e)
            c += entries_[e].weight * comp[entries_[e].node];
        c = std::clamp(c, 0.0, 1.0);
        const double active = fixed ? (c >= 1 ? 1.0 : -std::expm1(size * std::log1p(-c)))
                                    : -std::expm1(-size * c);
        const double term = row.weight * active;
        exponent += term;
        if (row.last_piece)
            proxy += term;
    }
    return {std::exp(-exponent), proxy};
}

}  // namespace cover::analytic
