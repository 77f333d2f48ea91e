#include "cover/analytic.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "cover/numerics.hpp"

namespace cover::analytic {

namespace {

// Remaining serving-distance pdf mass allowed beyond the last node.
constexpr double kServingTailMass = 1e-8;
constexpr int kMaxAnnuli = 10000;

InterfererLinks make_links(const ScenarioConfig& cfg, double h_tx, double h_rx,
                           const channel::AntennaPattern& tx,
                           const channel::AntennaPattern& rx, double max_radius)
{
    return {std::abs(h_tx - h_rx),
            channel::LosTable(cfg.blockage, h_tx, h_rx, cfg.force_nlos(), max_radius),
            channel::gain_mixture(tx, rx), cfg.fading};
}

double field_tail(const ScenarioConfig& cfg, double density)
{
    return density > 0 ? cfg.tail_radius(density) : 1.0;
}

template<class T, std::size_t N>
T parse_named(const std::string& name, const std::array<std::pair<const char*, T>, N>& table,
              const char* field)
{
    for (const auto& [key, value] : table)
        if (name == key)
            return value;
    throw std::invalid_argument(std::string(field) + ": unknown value '" + name + "'");
}

constexpr std::array<std::pair<const char*, Variant>, 12> kVariantNames{{
    {"inverse_downlink", Variant::inverse_downlink},
    {"InverseDownlink", Variant::inverse_downlink},
    {"inverse_uplink", Variant::inverse_uplink},
    {"InverseUplink", Variant::inverse_uplink},
    {"multi_access_down", Variant::multi_access_down},
    {"MultiAccessDown", Variant::multi_access_down},
    {"special_case1", Variant::special_case1},
    {"SpecialCase1", Variant::special_case1},
    {"multi_access_up", Variant::multi_access_up},
    {"MultiAccessUp", Variant::multi_access_up},
    {"special_case2", Variant::special_case2},
    {"SpecialCase2", Variant::special_case2},
}};

constexpr std::array<std::pair<const char*, Application>, 6> kApplicationNames{{
    {"ubiquitous", Application::ubiquitous},
    {"UbiquitousCoverage", Application::ubiquitous},
    {"dissemination", Application::dissemination},
    {"DisseminationCollection", Application::dissemination},
    {"relaying", Application::relaying},
    {"Relaying", Application::relaying},
}};

}  // namespace

std::vector<ServingNode> serving_grid(double annulus_rate, double tail, double scale,
                                      const numerics::QuadratureSpec& spec)
{
    spec.validate();
    if (!(tail > 0) || !(scale > 0))
        throw std::invalid_argument("serving grid needs positive tail and scale");
    const auto rule = numerics::chebyshev_nodes(spec.node_count);

    std::vector<ServingNode> grid;
    auto add_range = [&](double a, double b, bool last) {
        const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / scale - 1e-9)));
        const double len = (b - a) / pieces;
        for (int p = 0; p < pieces; ++p)
        {
            const double lo = a + p * len;
            for (const auto& nw : rule)
                grid.push_back({lo + 0.5 * len * (nw.node + 1), len * nw.weight, last});
        }
    };

    if (annulus_rate <= 0)
    {
        add_range(0, tail, false);
        return grid;
    }

    const double tail_index = std::floor(tail * annulus_rate);
    if (spec.auto_escalate && tail_index >= kMaxAnnuli)
        throw std::runtime_error("serving distance spans more than 10^4 blockage annuli");
    const int last = spec.auto_escalate
                         ? static_cast<int>(tail_index)
                         : static_cast<int>(std::min<double>(spec.gamma_cutoff, tail_index));
    for (int j = 0; j <= last; ++j)
    {
        const double a = j / annulus_rate;
        const double b = std::min((j + 1) / annulus_rate, tail);
        if (b > a)
            add_range(a, b, j == last);
    }
    return grid;
}

double coverage_general(double threshold, int nakagami,
                        const std::function<double(double, double)>& noise_term,
                        const std::function<double(double, double)>& laplace,
                        const std::function<double(double)>& pdf,
                        const std::vector<ServingNode>& grid)
{
    const double eta = numerics::alzer_eta(nakagami);
    double total = 0;
    for (const auto& node : grid)
    {
        const double f = pdf(node.r);
        if (f == 0)
            continue;
        double acc = 0;
        for (int n = 1; n <= nakagami; ++n)
        {
            const double x = n * eta * threshold;
            const double sign = n % 2 == 1 ? 1.0 : -1.0;
            acc += sign * numerics::binomial(nakagami, n) * noise_term(x, node.r)
                   * laplace(x, node.r);
        }
        total += node.weight * f * acc;
    }
    return total;
}

CoverageModel::CoverageModel(const ScenarioConfig& cfg, Setup setup)
    : setup_(std::move(setup)), fading_(cfg.fading)
{
    dh_ = std::abs(setup_.h_tx - setup_.h_rx);
    o1_ = setup_.tx.main_gain * setup_.rx.main_gain;
    if (!(setup_.power > 0))
        throw std::invalid_argument("transmit power must be positive");

    const double tail = field_tail(cfg, setup_.field_density);
    double serving_tail = 0;
    double scale = 1;
    switch (setup_.serving)
    {
        case Serving::nearest:
            if (!(setup_.serving_density > 0))
                throw std::invalid_argument("serving density must be positive");
            serving_tail = geometry::nearest_tail_radius(setup_.serving_density, kServingTailMass);
            scale = 1 / std::sqrt(std::numbers::pi * setup_.serving_density);
            break;
        case Serving::intra:
            serving_tail = geometry::intra_tail_radius(setup_.cluster, kServingTailMass);
            scale = setup_.cluster.spread;
            break;
        case Serving::overhead:
            break;
    }

    auto links = make_links(cfg, setup_.h_tx, setup_.h_rx, setup_.tx, setup_.rx,
                            std::max(tail, serving_tail));
    los_ = std::make_shared<channel::LosTable>(links.los);

    if (setup_.serving == Serving::overhead)
        grid_ = {{0.0, 1.0, false}};
    else
        grid_ = serving_grid(los_->rate(), serving_tail, scale, cfg.quadrature);

    if (setup_.field == Field::clusters)
        clusters_ = std::make_shared<ClusterInterference>(setup_.cluster, setup_.field_density,
                                                          std::move(links), tail);
    else
        ppp_ = std::make_shared<PppInterference>(setup_.field_density, std::move(links), tail);
}

LinkSetup downlink_setup(const ScenarioConfig& cfg)
{
    cfg.validate();
    LinkSetup s;
    s.serving = Serving::nearest;
    s.serving_density = cfg.lambda_v_down;
    s.field = Field::ppp_outside;
    s.field_density = cfg.lambda_v_down;
    s.h_tx = cfg.h_v_down;
    s.h_rx = cfg.h_b;
    s.power = cfg.p_v;
    s.noise = cfg.noise_down();
    s.tx = cfg.antennas.uav;
    s.rx = cfg.antennas.bs;
    return s;
}

LinkSetup uplink_setup(const ScenarioConfig& cfg)
{
    cfg.validate();
    LinkSetup s;
    s.serving = Serving::intra;
    s.field = Field::clusters;
    s.field_density = cfg.lambda_v_up;
    s.cluster = cfg.cluster;
    s.h_tx = cfg.h_u;
    s.h_rx = cfg.h_v_up;
    s.power = cfg.p_u;
    s.noise = cfg.noise_up();
    s.tx = cfg.antennas.user;
    s.rx = cfg.antennas.uav;
    return s;
}

LinkSetup variant_setup(Variant v, const ScenarioConfig& cfg)
{
    cfg.validate();
    const geometry::ClusterModel single{cfg.cluster.kind, cfg.cluster.spread,
                                        geometry::Population::fixed, 1};
    switch (v)
    {
        case Variant::inverse_downlink:
        {
            LinkSetup s;
            s.serving = Serving::nearest;
            s.serving_density = cfg.lambda_b;
            s.field = Field::ppp_outside;
            s.field_density = cfg.lambda_b;
            s.h_tx = cfg.h_b;
            s.h_rx = cfg.h_v_down;
            s.power = cfg.p_b;
            s.noise = cfg.noise_down();
            s.tx = cfg.antennas.bs;
            s.rx = cfg.antennas.uav;
            return s;
        }
        case Variant::inverse_uplink:
        {
            LinkSetup s;
            s.serving = Serving::intra;
            s.cluster = cfg.cluster;
            s.field = Field::ppp_everywhere;
            s.field_density = cfg.lambda_v_up;
            s.h_tx = cfg.h_v_up;
            s.h_rx = cfg.h_u;
            s.power = cfg.p_v;
            s.noise = cfg.noise_up();
            s.tx = cfg.antennas.uav;
            s.rx = cfg.antennas.user;
            return s;
        }
        case Variant::multi_access_down:
        {
            LinkSetup s;
            s.serving = Serving::intra;
            s.cluster = {geometry::ClusterKind::matern, cfg.cluster.spread,
                         geometry::Population::fixed, 1};
            s.field = Field::clusters;
            s.field_density = cfg.lambda_b;
            s.intra = false;
            s.h_tx = cfg.h_v_down;
            s.h_rx = cfg.h_b;
            s.power = cfg.p_v;
            s.noise = cfg.noise_down();
            s.tx = cfg.antennas.uav;
            s.rx = cfg.antennas.bs;
            return s;
        }
        case Variant::special_case1:
        {
            LinkSetup s;
            s.serving = Serving::overhead;
            s.field = Field::ppp_everywhere;
            s.field_density = cfg.lambda_v_down;
            s.h_tx = cfg.h_v_down;
            s.h_rx = cfg.h_b;
            s.power = cfg.p_v;
            s.noise = cfg.noise_down();
            s.tx = cfg.antennas.uav;
            s.rx = cfg.antennas.bs;
            return s;
        }
        case Variant::multi_access_up:
        {
            ScenarioConfig one = cfg;
            one.cluster = single;
            return uplink_setup(one);
        }
        case Variant::special_case2:
        {
            LinkSetup s;
            s.serving = Serving::overhead;
            s.cluster = single;
            s.field = Field::clusters;
            s.field_density = cfg.lambda_v_up;
            s.intra = false;
            s.h_tx = cfg.h_u;
            s.h_rx = cfg.h_v_up;
            s.power = cfg.p_u;
            s.noise = cfg.noise_up();
            s.tx = cfg.antennas.user;
            s.rx = cfg.antennas.uav;
            return s;
        }
    }
    throw std::invalid_argument("unknown coverage variant");
}

CoverageModel CoverageModel::downlink(const ScenarioConfig& cfg)
{
    return CoverageModel(cfg, downlink_setup(cfg));
}

CoverageModel CoverageModel::uplink(const ScenarioConfig& cfg)
{
    return CoverageModel(cfg, uplink_setup(cfg));
}

CoverageModel CoverageModel::variant(Variant v, const ScenarioConfig& cfg)
{
    return CoverageModel(cfg, variant_setup(v, cfg));
}

double CoverageModel::serving_pdf(double r) const
{
    switch (setup_.serving)
    {
        case Serving::nearest:
            return geometry::pdf_nearest_ppp(r, setup_.serving_density);
        case Serving::intra:
            return geometry::pdf_intra(r, setup_.cluster);
        case Serving::overhead:
            return 1.0;
    }
    return 0.0;
}

double CoverageModel::loss(double r, const channel::StateLaw& law) const
{
    return channel::path_loss(r, dh_, law);
}

double CoverageModel::laplace(double s, double r) const
{
    switch (setup_.field)
    {
        case Field::ppp_outside:
            return ppp_->laplace(s, r);
        case Field::ppp_everywhere:
            return ppp_->laplace(s, 0.0);
        case Field::clusters:
        {
            const double intra = setup_.intra ? clusters_->laplace_intra(s) : 1.0;
            return intra * clusters_->laplace_inter(s).value;
        }
    }
    return 1.0;
}

CoverageResult CoverageModel::coverage(double threshold) const
{
    if (!(threshold > 0))
        throw std::invalid_argument("threshold must be positive");
    const channel::StateLaw* laws[2] = {&fading_.los, &fading_.nlos};
    double part[2] = {0, 0};
    double proxy = 0;

    for (const auto& node : grid_)
    {
        const double f = node.weight * serving_pdf(node.r);
        if (f == 0)
            continue;
        const double p_los = los_->p_los_at(node.r);
        const double prob[2] = {p_los, 1 - p_los};
        for (int k = 0; k < 2; ++k)
        {
            if (prob[k] == 0)
                continue;
            const auto& law = *laws[k];
            const int nak = law.nakagami;
            const double eta = numerics::alzer_eta(nak);
            const double gain_loss = o1_ * loss(node.r, law);
            double acc = 0;
            for (int n = 1; n <= nak; ++n)
            {
                const double s = n * eta * threshold / gain_loss;
                const double sign = n % 2 == 1 ? 1.0 : -1.0;
                acc += sign * numerics::binomial(nak, n)
                       * std::exp(-s * setup_.noise / setup_.power) * laplace(s, node.r);
            }
            const double c = f * prob[k] * acc;
            part[k] += c;
            if (node.last_annulus)
                proxy += c;
        }
    }

    CoverageResult out;
    out.los = part[0];
    out.nlos = part[1];
    out.probability = part[0] + part[1];
    // Quadrature bias can push the sum marginally outside [0,1].
    if (out.probability > 1)
    {
        out.los /= out.probability;
        out.nlos /= out.probability;
        out.probability = 1;
    }
    out.probability = std::max(0.0, out.probability);
    out.truncation_proxy = std::abs(proxy);
    return out;
}

std::vector<CoverageBranch> CoverageModel::branches() const
{
    std::vector<CoverageBranch> out;
    for (int k = 0; k < 2; ++k)
    {
        const channel::StateLaw law = k == 0 ? fading_.los : fading_.nlos;
        CoverageBranch b;
        b.nakagami = law.nakagami;
        b.noise_term = [this, law](double x, double r) {
            return std::exp(-x / (o1_ * loss(r, law)) * setup_.noise / setup_.power);
        };
        b.laplace = [this, law](double x, double r) {
            return laplace(x / (o1_ * loss(r, law)), r);
        };
        b.pdf = [this, k](double r) {
            const double p_los = los_->p_los_at(r);
            return serving_pdf(r) * (k == 0 ? p_los : 1 - p_los);
        };
        out.push_back(std::move(b));
    }
    return out;
}

double laplace_downlink(double s, double r1, const ScenarioConfig& cfg)
{
    cfg.validate();
    if (!(s >= 0) || !(r1 >= 0))
        throw std::invalid_argument("laplace_downlink needs s >= 0 and r1 >= 0");
    const double tail = cfg.tail_radius(cfg.lambda_v_down);
    PppInterference field(cfg.lambda_v_down,
                          make_links(cfg, cfg.h_v_down, cfg.h_b, cfg.antennas.uav,
                                     cfg.antennas.bs, tail),
                          tail);
    return field.laplace(s * cfg.p_v, r1);
}

namespace {

ClusterInterference uplink_field(const ScenarioConfig& cfg)
{
    cfg.validate();
    const double tail = cfg.tail_radius(cfg.lambda_v_up);
    return ClusterInterference(cfg.cluster, cfg.lambda_v_up,
                               make_links(cfg, cfg.h_u, cfg.h_v_up, cfg.antennas.user,
                                          cfg.antennas.uav, tail),
                               tail);
}

}  // namespace

double laplace_intra(double s, const ScenarioConfig& cfg)
{
    if (!(s >= 0))
        throw std::invalid_argument("laplace_intra needs s >= 0");
    return uplink_field(cfg).laplace_intra(s * cfg.p_u);
}

LaplaceValue laplace_inter(double s, const ScenarioConfig& cfg)
{
    if (!(s >= 0))
        throw std::invalid_argument("laplace_inter needs s >= 0");
    return uplink_field(cfg).laplace_inter(s * cfg.p_u);
}

CoverageResult coverage_downlink(double threshold, const ScenarioConfig& cfg)
{
    return CoverageModel::downlink(cfg).coverage(threshold);
}

CoverageResult coverage_uplink(double threshold, const ScenarioConfig& cfg)
{
    return CoverageModel::uplink(cfg).coverage(threshold);
}

CoverageResult coverage_variant(Variant v, double threshold, const ScenarioConfig& cfg)
{
    return CoverageModel::variant(v, cfg).coverage(threshold);
}

double link_success(double threshold, double y0, const ScenarioConfig& cfg)
{
    cfg.validate();
    if (!(threshold > 0))
        throw std::invalid_argument("threshold must be positive");
    if (!(y0 >= 0))
        throw std::invalid_argument("relay_distance: distance must be non-negative");
    const auto& law = cfg.force_nlos() ? cfg.fading.nlos : cfg.fading.los;
    const double o1 = cfg.antennas.uav.main_gain * cfg.antennas.uav.main_gain;
    const double loss = channel::path_loss(y0, cfg.dh_link(), law);
    const double x = law.nakagami * threshold * cfg.noise_down() / (cfg.p_v * o1 * loss);
    return numerics::upper_incomplete_gamma_reg(law.nakagami, x);
}

Variant parse_variant(const std::string& name)
{
    return parse_named(name, kVariantNames, "variant");
}

std::string to_string(Variant v)
{
    for (const auto& [key, value] : kVariantNames)
        if (value == v)
            return key;
    return "unknown";
}

Application parse_application(const std::string& name)
{
    return parse_named(name, kApplicationNames, "application");
}

std::string to_string(Application a)
{
    for (const auto& [key, value] : kApplicationNames)
        if (value == a)
            return key;
    return "unknown";
}

ScenarioConfig application_config(const ScenarioConfig& cfg, Application app)
{
    ScenarioConfig out = cfg;
    if (app == Application::ubiquitous)
        out.lambda_v_down = out.lambda_v_up;
    out.validate();
    return out;
}

SystemCoverage system_coverage(double th_down, double th_up, double th_link,
                               const ScenarioConfig& cfg, Application app)
{
    const ScenarioConfig use = application_config(cfg, app);
    if (app == Application::relaying && !use.relay_distance)
        throw std::invalid_argument("relay_distance: relaying needs a relay distance");

    const auto down = coverage_downlink(th_down, use);
    const auto up = coverage_uplink(th_up, use);
    SystemCoverage out;
    out.downlink = down.probability;
    out.uplink = up.probability;
    out.link = app == Application::relaying ? link_success(th_link, *use.relay_distance, use)
                                            : 1.0;
    out.probability = out.downlink * out.uplink * out.link;
    out.truncation_proxy = down.truncation_proxy + up.truncation_proxy;
    return out;
}

}  // namespace cover::analytic
