#include "blindsearch/fit.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "blindsearch/parallel.hpp"
#include "blindsearch/stats.hpp"

namespace blindsearch {

PathSample sample_path(const PathModel& model, std::uint64_t seed) {
    Rng rng(seed);
    return model.sample_path(rng);
}

void PathSet::add(const PathSample& sample) {
    if (sample.values.size() != columns_.size()) {
        throw std::invalid_argument("path sample has " + std::to_string(sample.values.size()) +
                                    " values, expected " + std::to_string(columns_.size()));
    }
    for (double v : sample.values) {
        if (!std::isfinite(v)) throw std::invalid_argument("path sample contains a non-finite statistic");
    }
    for (std::size_t l = 0; l < columns_.size(); ++l) columns_[l].push_back(sample.values[l]);
}

PathSample PathSet::sample(std::size_t i) const {
    PathSample s;
    s.values.reserve(columns_.size());
    for (const auto& c : columns_) s.values.push_back(c.at(i));
    return s;
}

PathSet simulate_paths(const PathModel& model, std::size_t count, std::uint64_t seed, int threads) {
    std::vector<PathSample> samples(count);
    const int workers = worker_count(threads);
    parallel_chunks(count, static_cast<std::size_t>(workers) * 8, workers,
                    [&](std::size_t, std::size_t begin, std::size_t end) {
                        for (std::size_t i = begin; i < end; ++i) {
                            samples[i] = sample_path(model, derive_seed(seed, {i}));
                        }
                    });
    PathSet set(model.tree().num_layers());
    for (const auto& s : samples) set.add(s);
    return set;
}

// ---------------------------------------------------------------------------

Strategy::Strategy(TreeConfig tree, double lambda, double q_train,
                   std::vector<std::vector<MonotoneFn>> continuation)
    : tree_(std::move(tree)), lambda_(lambda), q_train_(q_train), continuation_(std::move(continuation)) {
    if (!(lambda_ >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    const int g = tree_.num_layers();
    if (continuation_.size() != static_cast<std::size_t>(g - 1)) {
        throw std::invalid_argument("strategy needs continuation functions for layers 1..G-1");
    }
    for (int l = 1; l < g; ++l) {
        if (continuation_[static_cast<std::size_t>(l - 1)].size() != static_cast<std::size_t>(g - l)) {
            throw std::invalid_argument("layer " + std::to_string(l) + " needs one continuation per target layer");
        }
    }
}

namespace {

std::vector<std::vector<MonotoneFn>> constant_table(const TreeConfig& tree, double level) {
    std::vector<std::vector<MonotoneFn>> table;
    const int g = tree.num_layers();
    for (int l = 1; l < g; ++l) table.emplace_back(static_cast<std::size_t>(g - l), MonotoneFn::constant(level));
    return table;
}

}  // namespace

Strategy Strategy::all_stop(TreeConfig tree, double lambda) {
    auto table = constant_table(tree, -1.0);
    return Strategy(std::move(tree), lambda, 0.0, std::move(table));
}

Strategy Strategy::always_jump(TreeConfig tree, int from, int to, double lambda) {
    if (from < 1 || to <= from || to > tree.num_layers()) throw std::invalid_argument("invalid jump layers");
    auto table = constant_table(tree, -1.0);
    table[static_cast<std::size_t>(from - 1)][static_cast<std::size_t>(to - from - 1)] = MonotoneFn::constant(1.0);
    return Strategy(std::move(tree), lambda, 0.0, std::move(table));
}

const MonotoneFn& Strategy::continuation(int layer, int target) const {
    if (layer < 1 || layer >= tree_.num_layers() || target <= layer || target > tree_.num_layers()) {
        throw std::out_of_range("no continuation for layer " + std::to_string(layer) + " -> " + std::to_string(target));
    }
    return continuation_[static_cast<std::size_t>(layer - 1)][static_cast<std::size_t>(target - layer - 1)];
}

MonotoneFn& Strategy::continuation(int layer, int target) {
    return const_cast<MonotoneFn&>(std::as_const(*this).continuation(layer, target));
}

int Strategy::decide(int layer, double x) const {
    const int g = tree_.num_layers();
    if (layer < 1 || layer > g) throw std::out_of_range("decide: layer out of range");
    if (layer == g) return 0;
    const auto& row = continuation_[static_cast<std::size_t>(layer - 1)];
    double best = -std::numeric_limits<double>::infinity();
    int best_target = 0;
    for (std::size_t k = 0; k < row.size(); ++k) {
        const double v = row[k](x);
        if (v >= best) {  // later (deeper) targets win ties
            best = v;
            best_target = layer + 1 + static_cast<int>(k);
        }
    }
    if (best < 0.0) return 0;
    if (best == 0.0 && lambda_ > 0.0) return 0;
    return best_target;
}

int decide(const Strategy& strategy, int layer, double x) { return strategy.decide(layer, x); }

std::vector<DecisionRegion> decision_regions(const Strategy& strategy, int layer) {
    const int g = strategy.tree().num_layers();
    if (layer < 1 || layer > g) throw std::out_of_range("decision_regions: layer out of range");
    std::vector<DecisionRegion> regions;
    const double lowest = -std::numeric_limits<double>::infinity();
    if (layer == g) {
        regions.push_back({lowest, 0});
        return regions;
    }
    std::vector<double> cuts;
    for (int s = layer + 1; s <= g; ++s) {
        const auto& bp = strategy.continuation(layer, s).breakpoints();
        cuts.insert(cuts.end(), bp.begin(), bp.end());
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Every MonotoneFn has at least one breakpoint, so cuts is nonempty. Left
    // of the first cut all functions sit at their first level.
    regions.push_back({lowest, strategy.decide(layer, std::nextafter(cuts.front(), lowest))});
    for (double c : cuts) {
        const int a = strategy.decide(layer, c);
        if (a != regions.back().action) regions.push_back({c, a});
    }
    return regions;
}

// ---------------------------------------------------------------------------

double action_path_payoff(const PathSample& sample, const Strategy& strategy, double lambda, double q,
                          int layer, int action) {
    const TreeConfig& tree = strategy.tree();
    const int g = tree.num_layers();
    if (layer < 1 || layer >= g) throw std::out_of_range("path payoff needs 1 <= layer < G");
    if (static_cast<int>(sample.values.size()) != g) throw std::invalid_argument("path sample / tree layer mismatch");
    if (action != 0 && (action <= layer || action > g)) throw std::invalid_argument("invalid action");

    double payoff = 0.0;
    int current = layer;
    int next = action;
    while (next != 0) {
        const double scale = static_cast<double>(tree.descendant_count(layer, next));
        payoff -= lambda * scale * tree.cost_at(next);
        current = next;
        if (current == g) {
            if (sample.at(g) >= q) payoff += scale;
            break;
        }
        next = strategy.decide(current, sample.at(current));
    }
    return payoff;
}

double path_payoff(const PathSample& sample, const Strategy& strategy, double lambda, double q, int layer) {
    if (layer < 1 || layer >= strategy.tree().num_layers()) {
        throw std::out_of_range("path payoff needs 1 <= layer < G");
    }
    return action_path_payoff(sample, strategy, lambda, q, layer, strategy.decide(layer, sample.at(layer)));
}

Strategy fit_strategy(const PathSet& paths, const FitConfig& cfg) {
    const TreeConfig& tree = cfg.tree;
    const int g = tree.num_layers();
    if (paths.layers() != g) throw std::invalid_argument("path set layer count does not match the tree");
    if (paths.size() < 2) throw std::invalid_argument("fitting needs at least 2 paths");
    if (!(cfg.lambda >= 0.0) || !std::isfinite(cfg.lambda)) throw std::invalid_argument("lambda must be finite and >= 0");
    if (!std::isfinite(cfg.q_train)) throw std::invalid_argument("q_train must be finite");

    const std::size_t m = paths.size();
    Strategy strategy(tree, cfg.lambda, cfg.q_train, constant_table(tree, 0.0));
    strategy.seed = cfg.seed;
    strategy.num_paths = cfg.num_paths == 0 ? m : cfg.num_paths;

    // payoff[s-1][i]: path payoff of path i from its layer-s node onward.
    std::vector<std::vector<double>> payoff(static_cast<std::size_t>(g));
    {
        auto& leaf = payoff[static_cast<std::size_t>(g - 1)];
        leaf.resize(m);
        const auto x = paths.layer(g);
        for (std::size_t i = 0; i < m; ++i) {
            leaf[i] = x[i] >= cfg.q_train ? 1.0 : 0.0;
            if (x[i] >= cfg.q_train) ++strategy.leaf_exceedances;
        }
    }
    if (strategy.leaf_exceedances == 0) {
        strategy.diagnostics.push_back("no path exceeds q_train at the leaf layer; lower the training threshold or add paths");
    }

    std::vector<std::vector<double>> targets;
    for (int l = g - 1; l >= 1; --l) {
        const auto x = paths.layer(l);
        if (std::all_of(x.begin(), x.end(), [&](double v) { return v == x.front(); })) {
            strategy.diagnostics.push_back("layer " + std::to_string(l) +
                                           ": all path statistics identical; continuation values are constant");
        }
        targets.assign(static_cast<std::size_t>(g - l), std::vector<double>(m));
        for (int s = l + 1; s <= g; ++s) {
            auto& y = targets[static_cast<std::size_t>(s - l - 1)];
            const double scale = static_cast<double>(tree.descendant_count(l, s));
            const double cost = cfg.lambda * tree.cost_at(s);
            const auto& ps = payoff[static_cast<std::size_t>(s - 1)];
            for (std::size_t i = 0; i < m; ++i) y[i] = scale * (ps[i] - cost);
            strategy.continuation(l, s) = pava(x, y);
        }
        auto& pl = payoff[static_cast<std::size_t>(l - 1)];
        pl.resize(m);
        for (std::size_t i = 0; i < m; ++i) {
            const int a = strategy.decide(l, x[i]);
            pl[i] = a == 0 ? 0.0 : targets[static_cast<std::size_t>(a - l - 1)][i];
        }
    }
    return strategy;
}

double threshold_rule_of_thumb(double beta) {
    if (!(beta > 0.0) || !(beta < 1.0)) throw std::invalid_argument("target cost fraction beta must lie in (0, 1)");
    return chi2_2_quantile(1.0 - beta);
}

}  // namespace blindsearch
