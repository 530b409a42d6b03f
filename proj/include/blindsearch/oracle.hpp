#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <vector>

#include "blindsearch/engine.hpp"
#include "blindsearch/fit.hpp"
#include "blindsearch/tree.hpp"

namespace blindsearch {

/// Tree-structured Markov chain on a finite set of statistic levels: the
/// root statistic is drawn from root_pmf, each child independently from the
/// transition row of its parent's level. Every conditional law is explicit,
/// which allows exact dynamic programming.
class DiscreteChainModel final : public PathModel {
public:
    DiscreteChainModel(TreeConfig tree, std::vector<double> levels, std::vector<double> root_pmf,
                       std::vector<std::vector<double>> transition);

    const TreeConfig& tree() const override { return tree_; }
    PathSample sample_path(Rng& rng) const override;

    /// Full realization of every node of the tree (small trees only).
    TableEvaluator simulate_tree(Rng& rng) const;

    const std::vector<double>& levels() const { return levels_; }
    const std::vector<double>& root_pmf() const { return root_pmf_; }
    const std::vector<std::vector<double>>& transition() const { return transition_; }

private:
    std::size_t draw(const std::vector<double>& cdf, Rng& rng) const;

    TreeConfig tree_;
    std::vector<double> levels_;
    std::vector<double> root_pmf_;
    std::vector<std::vector<double>> transition_;
    std::vector<double> root_cdf_;
    std::vector<std::vector<double>> transition_cdf_;
};

/// Discretized stationary Gaussian chain: levels evenly spaced on
/// [-z_max, z_max], bins split at midpoints (outer bins open), root law N(0,1)
/// and child = rho*parent + sqrt(1-rho^2)*noise, both binned onto the levels.
DiscreteChainModel gaussian_chain(TreeConfig tree, double rho, int levels = 200, double z_max = 4.0);

class StateSpaceTooLarge : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct OracleResult {
    /// decision[l-1][k]: optimal action at layer l for level k (layer G: 0).
    std::vector<std::vector<int>> decision;
    /// value[l-1][k]: optimal expected subtree payoff V at layer l, level k.
    std::vector<std::vector<double>> value;
    /// continuation[l-1][s-l-1][k]: Q at layer l for target s.
    std::vector<std::vector<std::vector<double>>> continuation;
    /// n1 * E[V at layer 1]: optimal expected payoff of the whole tree
    /// (layer-1 observation cost excluded, it is paid by every strategy).
    double payoff = 0.0;
};

/// Exact backward induction on the discrete state space. Limits: G <= 4,
/// at most 256 leaves, at most 200 levels; throws StateSpaceTooLarge beyond.
/// Ties follow Strategy::decide (stop when the best value is 0 and
/// lambda > 0, otherwise the deepest maximizing target).
OracleResult exact_dp_oracle(const DiscreteChainModel& model, double lambda, double q);

/// Exact expected payoff of an arbitrary layer-wise policy on the chain.
double policy_payoff_exact(const DiscreteChainModel& model, double lambda, double q,
                           const std::function<int(int layer, double x)>& policy);

struct PayoffEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::size_t sims = 0;
};

/// Expected payoff of `strategy` estimated by executing it with run_search
/// on `sims` fresh full-tree realizations: detections (leaf >= q) minus
/// lambda times the cost spent below layer 1.
PayoffEstimate policy_payoff_mc(const DiscreteChainModel& model, const Strategy& strategy, double lambda,
                                double q, std::size_t sims, std::uint64_t seed);

}  // namespace blindsearch
