#include "blindsearch/engine.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "blindsearch/parallel.hpp"

namespace blindsearch {

TableEvaluator::TableEvaluator(TreeConfig tree, std::vector<std::vector<double>> values)
    : tree_(std::move(tree)), values_(std::move(values)) {
    if (values_.size() != static_cast<std::size_t>(tree_.num_layers())) {
        throw std::invalid_argument("table evaluator needs one value vector per layer");
    }
    for (int l = 1; l <= tree_.num_layers(); ++l) {
        if (values_[static_cast<std::size_t>(l - 1)].size() != tree_.nodes_in_layer(l)) {
            throw std::invalid_argument("table evaluator layer size mismatch");
        }
    }
}

double TableEvaluator::evaluate(NodeId node) const {
    return values_.at(static_cast<std::size_t>(node.layer - 1)).at(node.index);
}

Index SearchOutcome::observed_total() const {
    return std::accumulate(per_layer_observed.begin(), per_layer_observed.end(), Index{0});
}

double naive_cost(const TreeConfig& tree) {
    return static_cast<double>(tree.leaf_count()) * tree.cost_at(tree.num_layers());
}

namespace {

struct WorkItem {
    int layer;
    IndexRange range;
};

/// Per-worker traversal state, merged in root order afterwards.
struct Partial {
    std::vector<Detection> detections;
    std::vector<Index> observed;
    std::vector<ObservedRecord> log;
    Index peak_pending = 0;
    std::size_t peak_items = 0;
};

std::vector<IndexRange> root_ranges(const TreeConfig& tree, const std::vector<IndexRange>& requested) {
    const Index n1 = tree.root_count();
    if (requested.empty()) return {{0, n1}};
    std::vector<IndexRange> ranges;
    for (const auto& r : requested) {
        if (r.end > n1 || r.begin > r.end) throw std::out_of_range("root range outside layer 1");
        if (!r.empty()) ranges.push_back(r);
    }
    std::sort(ranges.begin(), ranges.end(), [](const IndexRange& a, const IndexRange& b) { return a.begin < b.begin; });
    // Merge overlaps so no root is visited twice.
    std::vector<IndexRange> merged;
    for (const auto& r : ranges) {
        if (!merged.empty() && r.begin <= merged.back().end) {
            merged.back().end = std::max(merged.back().end, r.end);
        } else {
            merged.push_back(r);
        }
    }
    return merged;
}

/// Flattens the root ranges into a list of roots addressed by ordinal.
struct RootCursor {
    std::vector<IndexRange> ranges;
    std::vector<Index> starts;  // ordinal of each range's first root
    Index total = 0;

    explicit RootCursor(std::vector<IndexRange> r) : ranges(std::move(r)) {
        for (const auto& rr : ranges) {
            starts.push_back(total);
            total += rr.size();
        }
    }

    Index root(Index ordinal) const {
        const auto it = std::upper_bound(starts.begin(), starts.end(), ordinal);
        const std::size_t k = static_cast<std::size_t>(it - starts.begin()) - 1;
        return ranges[k].begin + (ordinal - starts[k]);
    }
};

template <class Visit>
SearchOutcome traverse(const StatisticEvaluator& eval, const SearchOptions& options, Visit&& visit_subtree) {
    const TreeConfig& tree = eval.tree();
    const RootCursor cursor(root_ranges(tree, options.roots));
    const int workers = worker_count(options.threads);
    const std::size_t chunks = workers <= 1 ? 1 : static_cast<std::size_t>(workers) * 16;
    std::vector<Partial> parts(std::min<std::size_t>(chunks, std::max<Index>(cursor.total, 1)));
    parallel_chunks(cursor.total, parts.size(), workers, [&](std::size_t c, std::size_t begin, std::size_t end) {
        Partial& part = parts[c];
        part.observed.assign(static_cast<std::size_t>(tree.num_layers()), 0);
        for (std::size_t k = begin; k < end; ++k) visit_subtree(cursor.root(k), part);
    });

    SearchOutcome out;
    out.per_layer_observed.assign(static_cast<std::size_t>(tree.num_layers()), 0);
    for (auto& p : parts) {
        for (std::size_t l = 0; l < p.observed.size(); ++l) out.per_layer_observed[l] += p.observed[l];
        out.detections.insert(out.detections.end(), p.detections.begin(), p.detections.end());
        if (options.keep_log) out.observed_log.insert(out.observed_log.end(), p.log.begin(), p.log.end());
        out.peak_pending_nodes += p.peak_pending;
        out.peak_work_items += p.peak_items;
    }
    std::sort(out.detections.begin(), out.detections.end(),
              [](const Detection& a, const Detection& b) { return a.leaf.index < b.leaf.index; });
    for (int l = 1; l <= tree.num_layers(); ++l) {
        out.total_cost += tree.cost_at(l) * static_cast<double>(out.per_layer_observed[static_cast<std::size_t>(l - 1)]);
    }
    return out;
}

}  // namespace

SearchOutcome run_search(const Strategy& strategy, const StatisticEvaluator& eval, const SearchOptions& options) {
    const TreeConfig& tree = eval.tree();
    if (!(strategy.tree() == tree)) {
        throw std::invalid_argument("strategy tree does not match the evaluator's tree");
    }
    const int g = tree.num_layers();

    auto visit = [&](Index root, Partial& part) {
        std::vector<WorkItem> stack;
        Index pending = 0;
        auto observe = [&](NodeId node) {
            const double x = eval.evaluate(node);
            const int action = strategy.decide(node.layer, x);
            ++part.observed[static_cast<std::size_t>(node.layer - 1)];
            if (node.layer == g && x >= options.q_reject) part.detections.push_back({node, x});
            if (options.keep_log) part.log.push_back({node, x, action});
            if (action != 0) {
                const IndexRange r = descendant_range(tree, node, action);
                stack.push_back({action, r});
                pending += r.size();
                part.peak_pending = std::max(part.peak_pending, pending);
                part.peak_items = std::max(part.peak_items, stack.size());
            }
        };

        observe({1, root});
        while (!stack.empty()) {
            WorkItem& top = stack.back();
            const NodeId node{top.layer, top.range.begin};
            ++top.range.begin;
            --pending;
            if (top.range.empty()) stack.pop_back();
            // Depth-first: the node's own descendants are pushed above the
            // remaining siblings, so leaves come out in index order.
            observe(node);
        }
    };
    return traverse(eval, options, visit);
}

SearchOutcome naive_search(const StatisticEvaluator& eval, const SearchOptions& options) {
    const TreeConfig& tree = eval.tree();
    const int g = tree.num_layers();
    const Index per_root = tree.descendant_count(1, g);
    auto visit = [&](Index root, Partial& part) {
        const IndexRange leaves{root * per_root, root * per_root + per_root};
        for (Index v = leaves.begin; v < leaves.end; ++v) {
            const NodeId leaf{g, v};
            const double x = eval.evaluate(leaf);
            ++part.observed[static_cast<std::size_t>(g - 1)];
            if (x >= options.q_reject) part.detections.push_back({leaf, x});
            if (options.keep_log) part.log.push_back({leaf, x, 0});
        }
    };
    return traverse(eval, options, visit);
}

}  // namespace blindsearch
