#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "blindsearch/isotonic.hpp"
#include "blindsearch/rng.hpp"
#include "blindsearch/tree.hpp"

namespace blindsearch {

/// Statistic values along one root-to-leaf path; values[l-1] is layer l.
struct PathSample {
    std::vector<double> values;

    double at(int layer) const { return values.at(static_cast<std::size_t>(layer - 1)); }
};

/// Generative model able to draw the statistics along a uniformly chosen
/// root-to-leaf path. Implementations must be safe for concurrent calls.
class PathModel {
public:
    virtual ~PathModel() = default;
    virtual const TreeConfig& tree() const = 0;
    /// Draws one path: root uniform over layer 1, each step uniform over the
    /// children, statistics from the model's joint law along that path.
    virtual PathSample sample_path(Rng& rng) const = 0;
};

PathSample sample_path(const PathModel& model, std::uint64_t seed);

/// Column-major store of path samples (one column per layer).
class PathSet {
public:
    explicit PathSet(int layers) : columns_(static_cast<std::size_t>(layers)) {}

    /// Throws std::invalid_argument on a wrong layer count or a non-finite value.
    void add(const PathSample& sample);

    int layers() const { return static_cast<int>(columns_.size()); }
    std::size_t size() const { return columns_.empty() ? 0 : columns_.front().size(); }
    std::span<const double> layer(int l) const { return columns_.at(static_cast<std::size_t>(l - 1)); }
    PathSample sample(std::size_t i) const;

private:
    std::vector<std::vector<double>> columns_;
};

/// Draws `count` paths; path i uses seed derive_seed(seed, {i}), so the result
/// is independent of the worker count.
PathSet simulate_paths(const PathModel& model, std::size_t count, std::uint64_t seed, int threads = 0);

struct FitConfig {
    TreeConfig tree;
    double lambda = 0.0;   ///< cost/power tradeoff
    double q_train = 0.0;  ///< leaf threshold used for training payoffs
    std::uint64_t num_paths = 0;
    std::uint64_t seed = 0;  ///< recorded in the strategy; fitting itself is deterministic
};

/// Layer-wise search strategy: for each layer l < G and target s in l+1..G a
/// nondecreasing fitted continuation value Q[l][s]. The decision at layer G
/// is always 0 (stop).
class Strategy {
public:
    Strategy() = default;

    /// continuation[l-1][s-l-1] is Q[l][s]; must have G-1 rows with G-l
    /// functions each.
    Strategy(TreeConfig tree, double lambda, double q_train, std::vector<std::vector<MonotoneFn>> continuation);

    /// Strategy that stops at layer 1.
    static Strategy all_stop(TreeConfig tree, double lambda = 1.0);
    /// Strategy that always jumps from `from` straight to layer `to` and stops
    /// everywhere else.
    static Strategy always_jump(TreeConfig tree, int from, int to, double lambda = 1.0);

    const TreeConfig& tree() const { return tree_; }
    double lambda() const { return lambda_; }
    double q_train() const { return q_train_; }

    const MonotoneFn& continuation(int layer, int target) const;
    MonotoneFn& continuation(int layer, int target);
    const std::vector<std::vector<MonotoneFn>>& continuations() const { return continuation_; }

    /// Action in {0, layer+1, ..., G}: the target with the largest fitted
    /// continuation value, or 0 when that value is negative. When the best
    /// value is exactly 0 the strategy stops if lambda > 0; otherwise ties go
    /// to the largest target.
    int decide(int layer, double x) const;

    /// Metadata carried into the strategy file.
    std::uint64_t seed = 0;
    std::uint64_t num_paths = 0;
    std::uint64_t leaf_exceedances = 0;
    /// Human-readable warnings raised while fitting (degenerate layers, ...).
    std::vector<std::string> diagnostics;

    friend bool operator==(const Strategy& a, const Strategy& b) {
        return a.tree_ == b.tree_ && a.lambda_ == b.lambda_ && a.q_train_ == b.q_train_ &&
               a.continuation_ == b.continuation_;
    }

private:
    TreeConfig tree_;
    double lambda_ = 0.0;
    double q_train_ = 0.0;
    std::vector<std::vector<MonotoneFn>> continuation_;
};

int decide(const Strategy& strategy, int layer, double x);

/// Interval [from, next.from) of statistic values mapped to `action`.
struct DecisionRegion {
    double from;  ///< -infinity for the leftmost region
    int action;
};

/// The piecewise-constant map x -> decide(layer, x), with adjacent regions of
/// equal action merged.
std::vector<DecisionRegion> decision_regions(const Strategy& strategy, int layer);

/// Path payoff when taking `action` at `layer` on this path and following
/// `strategy` at every deeper observed path node. Scales the leaf reward by
/// B(layer, G) and each deeper observation cost by B(layer, l*), the
/// descendant counts, which makes the mean over all paths below a node equal
/// the node's exact subtree payoff.
double action_path_payoff(const PathSample& sample, const Strategy& strategy, double lambda, double q,
                          int layer, int action);

/// Path payoff under the strategy's own decision at `layer`.
double path_payoff(const PathSample& sample, const Strategy& strategy, double lambda, double q, int layer);

/// Backward induction over path samples: for l = G-1 .. 1 and each target s,
/// fit Q[l][s] by isotonic regression of B(l,s)*(P^(s) - lambda*C_s) on the
/// layer-l statistic, then set each path's layer-l payoff by the fitted
/// decision. Throws std::invalid_argument on fewer than 2 paths or a tree
/// mismatch. Degenerate layers (all abscissae equal) are recorded in
/// Strategy::diagnostics.
Strategy fit_strategy(const PathSet& paths, const FitConfig& cfg);

/// Training threshold from a target cost fraction beta: the 1-beta quantile
/// of the chi-squared(2) null law.
double threshold_rule_of_thumb(double beta);

}  // namespace blindsearch
