#include "blindsearch/tree.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace blindsearch {

Index checked_mul(Index a, Index b) {
    Index out = 0;
    if (__builtin_mul_overflow(a, b, &out)) {
        throw std::overflow_error("tree index arithmetic overflows 64 bits");
    }
    return out;
}

TreeConfig::TreeConfig(Index root_count, std::vector<Index> branching, std::vector<double> costs)
    : root_count_(root_count), branching_(std::move(branching)), costs_(std::move(costs)) {
    if (costs_.size() < 2) {
        throw std::invalid_argument("tree needs at least 2 layers");
    }
    if (branching_.size() + 1 != costs_.size()) {
        throw std::invalid_argument("branching must have exactly G-1 entries (got " +
                                    std::to_string(branching_.size()) + " for G=" +
                                    std::to_string(costs_.size()) + ")");
    }
    if (root_count_ < 1) {
        throw std::invalid_argument("root count must be >= 1");
    }
    for (Index b : branching_) {
        if (b < 1) throw std::invalid_argument("branching factors must be >= 1");
    }
    for (double c : costs_) {
        if (!(c >= 0.0) || !std::isfinite(c)) {
            throw std::invalid_argument("layer costs must be finite and nonnegative");
        }
    }
    // Validates that the leaf count is representable.
    (void)nodes_in_layer(num_layers());
}

TreeConfig TreeConfig::uniform(int layers, Index root_count, Index branching, double cost) {
    if (layers < 2) throw std::invalid_argument("tree needs at least 2 layers");
    return TreeConfig(root_count, std::vector<Index>(static_cast<size_t>(layers - 1), branching),
                      std::vector<double>(static_cast<size_t>(layers), cost));
}

void TreeConfig::check_layer(int layer) const {
    if (layer < 1 || layer > num_layers()) {
        throw std::out_of_range("layer " + std::to_string(layer) + " outside 1.." +
                                std::to_string(num_layers()));
    }
}

Index TreeConfig::branching_at(int layer) const {
    if (layer < 1 || layer >= num_layers()) {
        throw std::out_of_range("no branching below layer " + std::to_string(layer));
    }
    return branching_[static_cast<size_t>(layer - 1)];
}

double TreeConfig::cost_at(int layer) const {
    check_layer(layer);
    return costs_[static_cast<size_t>(layer - 1)];
}

Index TreeConfig::nodes_in_layer(int layer) const {
    check_layer(layer);
    Index n = root_count_;
    for (int j = 1; j < layer; ++j) n = checked_mul(n, branching_[static_cast<size_t>(j - 1)]);
    return n;
}

Index TreeConfig::descendant_count(int from, int to) const {
    check_layer(from);
    check_layer(to);
    if (to < from) throw std::out_of_range("descendant layer above source layer");
    Index n = 1;
    for (int j = from; j < to; ++j) n = checked_mul(n, branching_[static_cast<size_t>(j - 1)]);
    return n;
}

Index nodes_in_layer(const TreeConfig& cfg, int layer) { return cfg.nodes_in_layer(layer); }

IndexRange descendant_range(const TreeConfig& cfg, NodeId node, int target) {
    if (target <= node.layer || target > cfg.num_layers()) {
        throw std::out_of_range("descendant layer " + std::to_string(target) +
                                " must lie in (" + std::to_string(node.layer) + ", " +
                                std::to_string(cfg.num_layers()) + "]");
    }
    if (node.index >= cfg.nodes_in_layer(node.layer)) {
        throw std::out_of_range("node index out of range for its layer");
    }
    const Index width = cfg.descendant_count(node.layer, target);
    const Index begin = checked_mul(node.index, width);
    return {begin, begin + width};
}

NodeId ancestor(const TreeConfig& cfg, NodeId node, int layer) {
    if (layer > node.layer || layer < 1) throw std::out_of_range("ancestor layer out of range");
    return {layer, node.index / cfg.descendant_count(layer, node.layer)};
}

}  // namespace blindsearch
