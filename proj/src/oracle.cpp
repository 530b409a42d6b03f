#include "blindsearch/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace blindsearch {

namespace {

std::vector<double> cumulative(const std::vector<double>& pmf) {
    std::vector<double> cdf(pmf.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < pmf.size(); ++i) cdf[i] = acc += pmf[i];
    return cdf;
}

void check_pmf(const std::vector<double>& pmf, std::size_t k, const char* what) {
    if (pmf.size() != k) throw std::invalid_argument(std::string(what) + ": wrong length");
    double sum = 0.0;
    for (double p : pmf) {
        if (!(p >= 0.0)) throw std::invalid_argument(std::string(what) + ": negative probability");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument(std::string(what) + ": does not sum to 1");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

using Matrix = std::vector<std::vector<double>>;

Matrix multiply(const Matrix& a, const Matrix& b) {
    const std::size_t k = a.size();
    Matrix c(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t m = 0; m < k; ++m) {
            const double aim = a[i][m];
            if (aim == 0.0) continue;
            for (std::size_t j = 0; j < k; ++j) c[i][j] += aim * b[m][j];
        }
    }
    return c;
}

/// powers[d] = transition^d for d = 0..G-1.
std::vector<Matrix> transition_powers(const Matrix& t, int max_power) {
    const std::size_t k = t.size();
    Matrix identity(k, std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) identity[i][i] = 1.0;
    std::vector<Matrix> powers{identity};
    for (int d = 1; d <= max_power; ++d) powers.push_back(multiply(powers.back(), t));
    return powers;
}

std::vector<double> mat_apply(const Matrix& m, const std::vector<double>& v) {
    std::vector<double> out(m.size(), 0.0);
    for (std::size_t i = 0; i < m.size(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) acc += m[i][j] * v[j];
        out[i] = acc;
    }
    return out;
}

void check_size(const DiscreteChainModel& model) {
    const TreeConfig& tree = model.tree();
    if (tree.num_layers() > 4) throw StateSpaceTooLarge("exact oracle supports at most 4 layers");
    if (tree.leaf_count() > 256) throw StateSpaceTooLarge("exact oracle supports at most 256 leaves");
    if (model.levels().size() > 200) throw StateSpaceTooLarge("exact oracle supports at most 200 levels");
}

}  // namespace

DiscreteChainModel::DiscreteChainModel(TreeConfig tree, std::vector<double> levels, std::vector<double> root_pmf,
                                       std::vector<std::vector<double>> transition)
    : tree_(std::move(tree)),
      levels_(std::move(levels)),
      root_pmf_(std::move(root_pmf)),
      transition_(std::move(transition)) {
    const std::size_t k = levels_.size();
    if (k == 0) throw std::invalid_argument("chain needs at least one level");
    check_pmf(root_pmf_, k, "root distribution");
    if (transition_.size() != k) throw std::invalid_argument("transition matrix must be square");
    for (const auto& row : transition_) check_pmf(row, k, "transition row");
    root_cdf_ = cumulative(root_pmf_);
    for (const auto& row : transition_) transition_cdf_.push_back(cumulative(row));
}

std::size_t DiscreteChainModel::draw(const std::vector<double>& cdf, Rng& rng) const {
    const double u = rng.uniform() * cdf.back();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

PathSample DiscreteChainModel::sample_path(Rng& rng) const {
    const int g = tree_.num_layers();
    PathSample out;
    out.values.reserve(static_cast<std::size_t>(g));
    // The node choice does not affect the law (exchangeable), but is drawn to
    // keep the sampler faithful to uniform path selection.
    Index node = rng.below(tree_.root_count());
    std::size_t state = draw(root_cdf_, rng);
    out.values.push_back(levels_[state]);
    for (int l = 2; l <= g; ++l) {
        node = node * tree_.branching_at(l - 1) + rng.below(tree_.branching_at(l - 1));
        state = draw(transition_cdf_[state], rng);
        out.values.push_back(levels_[state]);
    }
    return out;
}

TableEvaluator DiscreteChainModel::simulate_tree(Rng& rng) const {
    const int g = tree_.num_layers();
    std::vector<std::vector<std::size_t>> states(static_cast<std::size_t>(g));
    std::vector<std::vector<double>> values(static_cast<std::size_t>(g));
    const Index n1 = tree_.root_count();
    for (Index v = 0; v < n1; ++v) states[0].push_back(draw(root_cdf_, rng));
    for (int l = 2; l <= g; ++l) {
        const Index b = tree_.branching_at(l - 1);
        for (std::size_t parent : states[static_cast<std::size_t>(l - 2)]) {
            for (Index c = 0; c < b; ++c) states[static_cast<std::size_t>(l - 1)].push_back(draw(transition_cdf_[parent], rng));
        }
    }
    for (int l = 1; l <= g; ++l) {
        for (std::size_t s : states[static_cast<std::size_t>(l - 1)]) values[static_cast<std::size_t>(l - 1)].push_back(levels_[s]);
    }
    return TableEvaluator(tree_, std::move(values));
}

DiscreteChainModel gaussian_chain(TreeConfig tree, double rho, int levels, double z_max) {
    if (levels < 2) throw std::invalid_argument("gaussian chain needs at least 2 levels");
    if (!(rho > -1.0) || !(rho < 1.0)) throw std::invalid_argument("rho must lie in (-1, 1)");
    if (!(z_max > 0.0)) throw std::invalid_argument("z_max must be positive");
    const std::size_t k = static_cast<std::size_t>(levels);
    std::vector<double> z(k);
    const double step = 2.0 * z_max / static_cast<double>(k - 1);
    for (std::size_t i = 0; i < k; ++i) z[i] = -z_max + step * static_cast<double>(i);
    // Bin edges: -inf, midpoints, +inf.
    std::vector<double> edges(k + 1);
    edges.front() = -std::numeric_limits<double>::infinity();
    edges.back() = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < k; ++i) edges[i] = 0.5 * (z[i - 1] + z[i]);

    auto binned = [&](double mean, double sd) {
        std::vector<double> pmf(k);
        double total = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            pmf[j] = normal_cdf((edges[j + 1] - mean) / sd) - normal_cdf((edges[j] - mean) / sd);
            total += pmf[j];
        }
        for (double& p : pmf) p /= total;
        return pmf;
    };
    std::vector<double> root = binned(0.0, 1.0);
    const double sd = std::sqrt(1.0 - rho * rho);
    std::vector<std::vector<double>> t;
    t.reserve(k);
    for (std::size_t i = 0; i < k; ++i) t.push_back(binned(rho * z[i], sd));
    return DiscreteChainModel(std::move(tree), std::move(z), std::move(root), std::move(t));
}

OracleResult exact_dp_oracle(const DiscreteChainModel& model, double lambda, double q) {
    check_size(model);
    if (!(lambda >= 0.0)) throw std::invalid_argument("lambda must be >= 0");
    const TreeConfig& tree = model.tree();
    const int g = tree.num_layers();
    const std::size_t k = model.levels().size();
    const auto powers = transition_powers(model.transition(), g - 1);

    OracleResult out;
    out.decision.assign(static_cast<std::size_t>(g), std::vector<int>(k, 0));
    out.value.assign(static_cast<std::size_t>(g), std::vector<double>(k, 0.0));
    out.continuation.resize(static_cast<std::size_t>(g));
    for (std::size_t i = 0; i < k; ++i) out.value[static_cast<std::size_t>(g - 1)][i] = model.levels()[i] >= q ? 1.0 : 0.0;

    for (int l = g - 1; l >= 1; --l) {
        auto& cont = out.continuation[static_cast<std::size_t>(l - 1)];
        for (int s = l + 1; s <= g; ++s) {
            const auto expected = mat_apply(powers[static_cast<std::size_t>(s - l)], out.value[static_cast<std::size_t>(s - 1)]);
            const double scale = static_cast<double>(tree.descendant_count(l, s));
            std::vector<double> qv(k);
            for (std::size_t i = 0; i < k; ++i) qv[i] = scale * (expected[i] - lambda * tree.cost_at(s));
            cont.push_back(std::move(qv));
        }
        for (std::size_t i = 0; i < k; ++i) {
            double best = -std::numeric_limits<double>::infinity();
            int target = 0;
            for (int s = l + 1; s <= g; ++s) {
                const double v = cont[static_cast<std::size_t>(s - l - 1)][i];
                if (v >= best) {
                    best = v;
                    target = s;
                }
            }
            int action = target;
            if (best < 0.0 || (best == 0.0 && lambda > 0.0)) action = 0;
            out.decision[static_cast<std::size_t>(l - 1)][i] = action;
            out.value[static_cast<std::size_t>(l - 1)][i] = action == 0 ? 0.0 : best;
        }
    }
    double ev = 0.0;
    for (std::size_t i = 0; i < k; ++i) ev += model.root_pmf()[i] * out.value[0][i];
    out.payoff = static_cast<double>(tree.root_count()) * ev;
    return out;
}

double policy_payoff_exact(const DiscreteChainModel& model, double lambda, double q,
                           const std::function<int(int, double)>& policy) {
    check_size(model);
    const TreeConfig& tree = model.tree();
    const int g = tree.num_layers();
    const std::size_t k = model.levels().size();
    const auto powers = transition_powers(model.transition(), g - 1);
    std::vector<std::vector<double>> w(static_cast<std::size_t>(g), std::vector<double>(k, 0.0));
    for (std::size_t i = 0; i < k; ++i) w[static_cast<std::size_t>(g - 1)][i] = model.levels()[i] >= q ? 1.0 : 0.0;
    for (int l = g - 1; l >= 1; --l) {
        std::vector<std::vector<double>> expected(static_cast<std::size_t>(g + 1));
        for (int s = l + 1; s <= g; ++s) {
            expected[static_cast<std::size_t>(s)] = mat_apply(powers[static_cast<std::size_t>(s - l)], w[static_cast<std::size_t>(s - 1)]);
        }
        for (std::size_t i = 0; i < k; ++i) {
            const int a = policy(l, model.levels()[i]);
            if (a == 0) continue;
            if (a <= l || a > g) throw std::invalid_argument("policy returned an invalid action");
            w[static_cast<std::size_t>(l - 1)][i] = static_cast<double>(tree.descendant_count(l, a)) *
                                                     (expected[static_cast<std::size_t>(a)][i] - lambda * tree.cost_at(a));
        }
    }
    double ev = 0.0;
    for (std::size_t i = 0; i < k; ++i) ev += model.root_pmf()[i] * w[0][i];
    return static_cast<double>(tree.root_count()) * ev;
}

PayoffEstimate policy_payoff_mc(const DiscreteChainModel& model, const Strategy& strategy, double lambda, double q,
                                std::size_t sims, std::uint64_t seed) {
    if (sims == 0) throw std::invalid_argument("need at least one simulation");
    const TreeConfig& tree = model.tree();
    SearchOptions options;
    options.q_reject = q;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::size_t r = 0; r < sims; ++r) {
        Rng rng(derive_seed(seed, {r}));
        const TableEvaluator eval = model.simulate_tree(rng);
        const SearchOutcome outcome = run_search(strategy, eval, options);
        double cost = 0.0;
        for (int l = 2; l <= tree.num_layers(); ++l) {
            cost += tree.cost_at(l) * static_cast<double>(outcome.per_layer_observed[static_cast<std::size_t>(l - 1)]);
        }
        const double payoff = static_cast<double>(outcome.detections.size()) - lambda * cost;
        sum += payoff;
        sum_sq += payoff * payoff;
    }
    const double n = static_cast<double>(sims);
    const double mean = sum / n;
    const double var = sims > 1 ? std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0)) : 0.0;
    return {mean, std::sqrt(var / n), sims};
}

}  // namespace blindsearch
