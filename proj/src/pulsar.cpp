#include "blindsearch/pulsar.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace blindsearch {

namespace {

Index child_count(const GridSpec& spec) { return spec.frequency_only ? 2 : 8; }

Index ceil_count(double width, double spacing) {
    const double n = std::ceil(width / spacing - 1e-9);
    if (!(n < 9.0e18)) throw std::invalid_argument("pulsar grid has too many root nodes");
    return static_cast<Index>(std::max(n, 0.0));
}

}  // namespace

PulsarGrid::PulsarGrid(GridSpec spec, double span, std::vector<double> costs) : spec_(spec), span_(span) {
    if (spec_.layers < 2) throw std::invalid_argument("pulsar grid needs at least 2 layers");
    if (spec_.layers > 20) throw std::invalid_argument("pulsar grid supports at most 20 layers");
    if (!(span_ > 0.0) || !std::isfinite(span_)) throw std::invalid_argument("observation span must be positive");
    if (!(spec_.oversampling > 0.0)) throw std::invalid_argument("oversampling must be positive");
    if (!(spec_.omega_min > 0.0)) throw std::invalid_argument("omega_min must be positive");
    if (!(spec_.omega_max > spec_.omega_min)) {
        throw std::invalid_argument("frequency range [omega_min, omega_max] yields zero root nodes");
    }
    if (!(spec_.omegadot_max >= spec_.omegadot_min)) {
        throw std::invalid_argument("drift range [omegadot_min, omegadot_max] yields zero root nodes");
    }
    freq_roots_ = ceil_count(spec_.omega_max - spec_.omega_min, freq_spacing(1));
    drift_roots_ = spec_.frequency_only ? 1
                                        : std::max<Index>(1, ceil_count(spec_.omegadot_max - spec_.omegadot_min,
                                                                        drift_spacing(1)));
    if (freq_roots_ == 0) throw std::invalid_argument("frequency range yields zero root nodes");
    if (costs.empty()) costs.assign(static_cast<std::size_t>(spec_.layers), 1.0);
    tree_ = TreeConfig(checked_mul(freq_roots_, drift_roots_),
                       std::vector<Index>(static_cast<std::size_t>(spec_.layers - 1), child_count(spec_)),
                       std::move(costs));
}

double PulsarGrid::freq_spacing(int layer) const {
    return std::ldexp(1.0, spec_.layers - layer) / (spec_.oversampling * span_);
}

double PulsarGrid::drift_spacing(int layer) const {
    if (spec_.frequency_only) return 0.0;
    const double o_t = spec_.oversampling * span_;
    return std::ldexp(1.0, 2 * (spec_.layers - layer)) / (o_t * o_t);
}

Index PulsarGrid::freq_count(int layer) const {
    return checked_mul(freq_roots_, Index{1} << (layer - 1));
}

Index PulsarGrid::drift_count(int layer) const {
    if (spec_.frequency_only) return 1;
    return checked_mul(drift_roots_, Index{1} << (2 * (layer - 1)));
}

LatticeIndex PulsarGrid::lattice(NodeId node) const {
    const int g = tree_.num_layers();
    if (node.layer < 1 || node.layer > g || node.index >= tree_.nodes_in_layer(node.layer)) {
        throw std::out_of_range("node outside the pulsar grid");
    }
    const Index b = child_count(spec_);
    std::array<Index, 24> digits{};
    Index v = node.index;
    for (int j = node.layer; j >= 2; --j) {
        digits[static_cast<std::size_t>(j)] = v % b;
        v /= b;
    }
    LatticeIndex idx{v % freq_roots_, v / freq_roots_};
    for (int j = 2; j <= node.layer; ++j) {
        const Index c = digits[static_cast<std::size_t>(j)];
        idx.freq = 2 * idx.freq + (c & 1);
        if (!spec_.frequency_only) idx.drift = 4 * idx.drift + (c >> 1);
    }
    return idx;
}

NodeId PulsarGrid::node_at(int layer, LatticeIndex idx) const {
    if (layer < 1 || layer > tree_.num_layers()) throw std::out_of_range("layer outside the pulsar grid");
    if (idx.freq >= freq_count(layer) || idx.drift >= drift_count(layer)) {
        throw std::out_of_range("lattice index outside the pulsar grid");
    }
    const int depth = layer - 1;
    const Index f1 = idx.freq >> depth;
    const Index d1 = spec_.frequency_only ? 0 : idx.drift >> (2 * depth);
    Index v = d1 * freq_roots_ + f1;
    for (int j = 2; j <= layer; ++j) {
        const Index a = (idx.freq >> (layer - j)) & 1;
        if (spec_.frequency_only) {
            v = 2 * v + a;
        } else {
            const Index bq = (idx.drift >> (2 * (layer - j))) & 3;
            v = 8 * v + a + 2 * bq;
        }
    }
    return {layer, v};
}

FreqDrift PulsarGrid::params(int layer, LatticeIndex idx) const {
    FreqDrift fd;
    fd.omega = spec_.omega_min + (static_cast<double>(idx.freq) + 0.5) * freq_spacing(layer);
    fd.omegadot = spec_.frequency_only
                      ? 0.5 * (spec_.omegadot_min + spec_.omegadot_max)
                      : spec_.omegadot_min + (static_cast<double>(idx.drift) + 0.5) * drift_spacing(layer);
    return fd;
}

FreqDrift PulsarGrid::params(NodeId node) const { return params(node.layer, lattice(node)); }

PulsarGrid::Span1D PulsarGrid::near_1d(double value, double radius, double origin, double spacing,
                                       Index count) const {
    if (spacing == 0.0) return {0, count - 1};
    // Widened by one cell each side; callers filter exactly.
    const double lo = std::ceil((value - radius - origin) / spacing - 0.5) - 1.0;
    const double hi = std::floor((value + radius - origin) / spacing - 0.5) + 1.0;
    const double last = static_cast<double>(count) - 1.0;
    if (hi < 0.0 || lo > last) return {1, 0};
    return {static_cast<Index>(std::max(lo, 0.0)), static_cast<Index>(std::min(hi, last))};
}

std::vector<NodeId> PulsarGrid::leaves_near(FreqDrift truth, double freq_radius, double drift_radius) const {
    const int g = tree_.num_layers();
    const auto fs = near_1d(truth.omega, freq_radius, spec_.omega_min, freq_spacing(g), freq_count(g));
    const auto ds = near_1d(truth.omegadot, drift_radius, spec_.omegadot_min, drift_spacing(g), drift_count(g));
    std::vector<NodeId> out;
    if (fs.lo > fs.hi || ds.lo > ds.hi) return out;
    for (Index d = ds.lo; d <= ds.hi; ++d) {
        for (Index f = fs.lo; f <= fs.hi; ++f) {
            const LatticeIndex idx{f, d};
            const FreqDrift p = params(g, idx);
            if (std::abs(p.omega - truth.omega) <= freq_radius &&
                std::abs(p.omegadot - truth.omegadot) <= drift_radius) {
                out.push_back(node_at(g, idx));
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<IndexRange> PulsarGrid::roots_near(FreqDrift truth, double freq_radius, double drift_radius) const {
    const int g = tree_.num_layers();
    const auto fs = near_1d(truth.omega, freq_radius, spec_.omega_min, freq_spacing(g), freq_count(g));
    const auto ds = near_1d(truth.omegadot, drift_radius, spec_.omegadot_min, drift_spacing(g), drift_count(g));
    std::vector<IndexRange> out;
    if (fs.lo > fs.hi || ds.lo > ds.hi) return out;
    const int depth = g - 1;
    const Index f_lo = fs.lo >> depth;
    const Index f_hi = fs.hi >> depth;
    const Index d_lo = spec_.frequency_only ? 0 : ds.lo >> (2 * depth);
    const Index d_hi = spec_.frequency_only ? 0 : ds.hi >> (2 * depth);
    for (Index d = d_lo; d <= d_hi; ++d) out.push_back({d * freq_roots_ + f_lo, d * freq_roots_ + f_hi + 1});
    return out;
}

// ---------------------------------------------------------------------------

PulsarEvaluator::PulsarEvaluator(PhotonSeries photons, PulsarGrid grid)
    : photons_(std::move(photons)), grid_(std::move(grid)) {
    if (photons_.span() != grid_.span()) {
        throw std::invalid_argument("photon span does not match the grid span");
    }
    for (int l = 1; l <= grid_.tree().num_layers(); ++l) layouts_.push_back(make_block_layout(photons_, grid_.kappa(l)));
}

double PulsarEvaluator::evaluate(NodeId node) const {
    return blocked_power(photons_, grid_.params(node), layouts_[static_cast<std::size_t>(node.layer - 1)]);
}

PulsarEvaluator pulsar_evaluator(const PhotonSeries& photons, const GridSpec& grid, std::vector<double> costs) {
    return PulsarEvaluator(photons, PulsarGrid(grid, photons.span(), std::move(costs)));
}

PulsarPathModel::PulsarPathModel(PulsarGrid grid, std::size_t photons, double theta, FreqDrift signal)
    : grid_(std::move(grid)), photons_(photons), theta_(theta), signal_(signal) {
    if (photons_ == 0) throw std::invalid_argument("photon count must be >= 1");
}

PathSample PulsarPathModel::sample_path(Rng& rng) const {
    const SignalSpec spec{theta_, signal_, photons_, grid_.span()};
    const PhotonSeries photons = simulate_photons(spec, rng.engine()());
    const TreeConfig& tree = grid_.tree();
    const int g = tree.num_layers();
    PathSample out;
    out.values.reserve(static_cast<std::size_t>(g));
    NodeId node{1, rng.below(tree.root_count())};
    for (int l = 1; l <= g; ++l) {
        if (l > 1) node = {l, node.index * tree.branching_at(l - 1) + rng.below(tree.branching_at(l - 1))};
        out.values.push_back(blocked_power(photons, grid_.params(node), grid_.kappa(l)));
    }
    return out;
}

double default_q_reject(const TreeConfig& tree, double alpha) {
    if (!(alpha > 0.0) || !(alpha < 1.0)) throw std::invalid_argument("alpha must lie in (0, 1)");
    const double n_eff = std::max(1.0, static_cast<double>(tree.leaf_count()) / 9.0);
    return chi2_2_quantile(1.0 - alpha / n_eff);
}

}  // namespace blindsearch
