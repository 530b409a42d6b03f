#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "blindsearch/fit.hpp"
#include "blindsearch/tree.hpp"

namespace blindsearch {

/// Computes the statistic at a tree node on demand. Must be deterministic per
/// node and safe for concurrent read-only use.
class StatisticEvaluator {
public:
    virtual ~StatisticEvaluator() = default;
    virtual const TreeConfig& tree() const = 0;
    virtual double evaluate(NodeId node) const = 0;
};

/// Evaluator backed by explicitly stored per-layer values (small trees).
class TableEvaluator final : public StatisticEvaluator {
public:
    /// values[l-1] holds all nodes of layer l.
    TableEvaluator(TreeConfig tree, std::vector<std::vector<double>> values);

    const TreeConfig& tree() const override { return tree_; }
    double evaluate(NodeId node) const override;

private:
    TreeConfig tree_;
    std::vector<std::vector<double>> values_;
};

struct Detection {
    NodeId leaf;
    double value = 0.0;

    friend bool operator==(const Detection&, const Detection&) = default;
};

struct ObservedRecord {
    NodeId node;
    double value = 0.0;
    int action = 0;
};

struct SearchOutcome {
    std::vector<Detection> detections;         ///< sorted by leaf index
    std::vector<Index> per_layer_observed;     ///< entry l-1 counts layer l
    double total_cost = 0.0;                   ///< sum_l C_l * per_layer_observed[l-1]
    std::vector<ObservedRecord> observed_log;  ///< filled only with SearchOptions::keep_log

    /// Peak number of scheduled-but-unevaluated nodes below layer 1, summed
    /// over workers. Layer-1 nodes are streamed and never scheduled.
    Index peak_pending_nodes = 0;
    /// Peak number of (layer, range) work items held, summed over workers.
    std::size_t peak_work_items = 0;

    Index observed_total() const;
};

struct SearchOptions {
    double q_reject = 0.0;
    bool keep_log = false;
    /// Restrict the search to these layer-1 ranges (all roots when empty).
    /// Subtrees are independent, so outcomes inside the chosen subtrees are
    /// identical to those of a full search.
    std::vector<IndexRange> roots;
    int threads = 1;  ///< 0 = BLINDSEARCH_THREADS / hardware
};

/// Executes the strategy: every layer-1 node is observed; an observed node
/// whose decision is s != 0 schedules all its descendants in layer s.
/// Observed leaves with value >= q_reject are detections. Each layer-1
/// subtree is traversed depth-first with a stack of (layer, range) items.
/// Throws std::invalid_argument when the strategy and evaluator trees differ.
SearchOutcome run_search(const Strategy& strategy, const StatisticEvaluator& eval, const SearchOptions& options);

/// Observes every leaf (within the chosen root subtrees).
SearchOutcome naive_search(const StatisticEvaluator& eval, const SearchOptions& options);

/// Cost of observing every leaf of the tree once.
double naive_cost(const TreeConfig& tree);

}  // namespace blindsearch
