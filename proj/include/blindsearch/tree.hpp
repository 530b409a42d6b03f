#pragma once

#include <cstdint>
#include <vector>

namespace blindsearch {

using Index = std::uint64_t;

/// Layered hypothesis tree. Layers are numbered 1..G (1 = coarsest root layer,
/// G = leaves). Nodes are addressed positionally: the children of node v in
/// layer l are [v*b[l], (v+1)*b[l]) in layer l+1, so nothing proportional to
/// the tree size is ever stored.
class TreeConfig {
public:
    TreeConfig() = default;

    /// `branching` has G-1 entries (children per node from layer l to l+1),
    /// `costs` has G entries (cost per node observation in layer l).
    /// Throws std::invalid_argument on inconsistent sizes or invalid values and
    /// std::overflow_error when the leaf count does not fit in 64 bits.
    TreeConfig(Index root_count, std::vector<Index> branching, std::vector<double> costs);

    /// Uniform branching and unit cost in every layer.
    static TreeConfig uniform(int layers, Index root_count, Index branching, double cost = 1.0);

    int num_layers() const { return static_cast<int>(costs_.size()); }
    Index root_count() const { return root_count_; }
    const std::vector<Index>& branching() const { return branching_; }
    const std::vector<double>& costs() const { return costs_; }

    /// Branching from layer `layer` to `layer + 1` (1-based).
    Index branching_at(int layer) const;
    /// Observation cost of one node in `layer` (1-based).
    double cost_at(int layer) const;

    Index leaf_count() const { return nodes_in_layer(num_layers()); }

    /// n1 * prod_{j<layer} b[j].
    Index nodes_in_layer(int layer) const;

    /// Number of descendants in layer `to` of a single node in layer `from`
    /// (1 when from == to).
    Index descendant_count(int from, int to) const;

    friend bool operator==(const TreeConfig&, const TreeConfig&) = default;

private:
    void check_layer(int layer) const;

    Index root_count_ = 0;
    std::vector<Index> branching_;
    std::vector<double> costs_;
};

struct NodeId {
    int layer = 1;
    Index index = 0;

    friend auto operator<=>(const NodeId&, const NodeId&) = default;
};

/// Half-open interval [begin, end) of node indices within one layer.
struct IndexRange {
    Index begin = 0;
    Index end = 0;

    Index size() const { return end - begin; }
    bool empty() const { return end <= begin; }
    bool contains(Index v) const { return v >= begin && v < end; }

    friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

Index nodes_in_layer(const TreeConfig& cfg, int layer);

/// Descendants of `node` in layer `target`: [v*B, (v+1)*B) with B the product
/// of branchings from node.layer to target-1. Throws std::out_of_range when
/// target <= node.layer or target > G, or the node index is out of range.
IndexRange descendant_range(const TreeConfig& cfg, NodeId node, int target);

/// Ancestor of `node` in layer `layer` (<= node.layer).
NodeId ancestor(const TreeConfig& cfg, NodeId node, int layer);

/// Overflow-checked unsigned multiply; throws std::overflow_error.
Index checked_mul(Index a, Index b);

}  // namespace blindsearch
