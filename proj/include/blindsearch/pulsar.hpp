#pragma once

#include <vector>

#include "blindsearch/engine.hpp"
#include "blindsearch/fit.hpp"
#include "blindsearch/stats.hpp"
#include "blindsearch/tree.hpp"

namespace blindsearch {

/// Frequency/drift search box and hierarchy shape.
struct GridSpec {
    double omega_min = 1.0;        ///< Hz
    double omega_max = 5.0;        ///< Hz
    double omegadot_min = -5e-11;  ///< s^-2
    double omegadot_max = 0.0;     ///< s^-2
    int layers = 5;
    double oversampling = 3.0;  ///< grid points per 1/T (frequency) and 1/T^2 (drift)
    /// Binary frequency-only tree with drift fixed at the box centre.
    bool frequency_only = false;

    friend bool operator==(const GridSpec&, const GridSpec&) = default;
};

/// Lattice position of a node within its layer.
struct LatticeIndex {
    Index freq = 0;
    Index drift = 0;

    friend bool operator==(const LatticeIndex&, const LatticeIndex&) = default;
};

/// Maps tree nodes to (omega, omegadot). Layer l uses spacings
///   d_omega(l)    = 2^(G-l)     / (o T)
///   d_omegadot(l) = 2^(2(G-l))  / (o^2 T^2)
/// and the statistic blocked over 2^(G-l) time blocks. Children of a node sit
/// at offsets eta_w * d_omega(l+1), eta_d * d_omegadot(l+1) with
/// eta_w in {-1/2, 1/2} and eta_d in {-3/2, -1/2, 1/2, 3/2}; child digit
/// c = a + 2b encodes eta_w = a - 1/2, eta_d = b - 3/2.
/// Roots tile the search box on the layer-1 spacing (root index =
/// drift_row * freq_roots + freq_col), so leaves may probe slightly past the
/// box edge.
class PulsarGrid {
public:
    /// `costs` defaults to 1 per layer. Throws std::invalid_argument when the
    /// box yields no root nodes or parameters are invalid.
    PulsarGrid(GridSpec spec, double span, std::vector<double> costs = {});

    const GridSpec& spec() const { return spec_; }
    double span() const { return span_; }
    const TreeConfig& tree() const { return tree_; }

    double freq_spacing(int layer) const;
    double drift_spacing(int layer) const;
    /// Block exponent of the statistic at this layer (G - layer).
    int kappa(int layer) const { return tree_.num_layers() - layer; }

    Index freq_count(int layer) const;
    Index drift_count(int layer) const;

    LatticeIndex lattice(NodeId node) const;
    NodeId node_at(int layer, LatticeIndex idx) const;
    FreqDrift params(NodeId node) const;
    FreqDrift params(int layer, LatticeIndex idx) const;

    /// Leaves whose parameters lie within |d omega| <= freq_radius and
    /// |d omegadot| <= drift_radius of `truth`.
    std::vector<NodeId> leaves_near(FreqDrift truth, double freq_radius, double drift_radius) const;
    /// Layer-1 ranges whose subtrees contain every leaf returned by leaves_near.
    std::vector<IndexRange> roots_near(FreqDrift truth, double freq_radius, double drift_radius) const;

private:
    struct Span1D {
        Index lo;
        Index hi;  // inclusive; lo > hi means empty
    };
    Span1D near_1d(double value, double radius, double origin, double spacing, Index count) const;

    GridSpec spec_;
    double span_ = 0.0;
    Index freq_roots_ = 0;
    Index drift_roots_ = 0;
    TreeConfig tree_;
};

/// Blocked-power statistic over a pulsar grid for one photon series.
class PulsarEvaluator final : public StatisticEvaluator {
public:
    /// Throws std::invalid_argument when the photon span differs from the
    /// grid span.
    PulsarEvaluator(PhotonSeries photons, PulsarGrid grid);

    const TreeConfig& tree() const override { return grid_.tree(); }
    double evaluate(NodeId node) const override;

    const PulsarGrid& grid() const { return grid_; }
    const PhotonSeries& photons() const { return photons_; }

private:
    PhotonSeries photons_;
    PulsarGrid grid_;
    std::vector<BlockLayout> layouts_;  // indexed by layer-1
};

PulsarEvaluator pulsar_evaluator(const PhotonSeries& photons, const GridSpec& grid,
                                 std::vector<double> costs = {});

/// Path sampler for the pulsar hierarchy: each path simulates a fresh photon
/// series (global null by default) and evaluates the blocked statistic at
/// the nodes of a uniformly drawn root-to-leaf path.
class PulsarPathModel final : public PathModel {
public:
    PulsarPathModel(PulsarGrid grid, std::size_t photons, double theta = 0.0, FreqDrift signal = {});

    const TreeConfig& tree() const override { return grid_.tree(); }
    PathSample sample_path(Rng& rng) const override;

    const PulsarGrid& grid() const { return grid_; }

private:
    PulsarGrid grid_;
    std::size_t photons_;
    double theta_;
    FreqDrift signal_;
};

/// Default rejection threshold: the chi-squared(2) 1 - alpha/n_eff quantile
/// with n_eff = leaf count / 9 (independent frequency-drift cells at
/// oversampling 3).
double default_q_reject(const TreeConfig& tree, double alpha = 0.05);

}  // namespace blindsearch
