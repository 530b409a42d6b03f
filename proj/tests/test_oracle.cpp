#include <doctest.h>

#include <cmath>
#include <functional>

#include "blindsearch/oracle.hpp"

using namespace blindsearch;

namespace {

// Expected payoff of a level-indexed policy by summing over every
// realization of a tiny tree (one root).
double brute_force_payoff(const DiscreteChainModel& m, double lambda, double q,
                          const std::function<int(int, std::size_t)>& policy) {
    const TreeConfig& tree = m.tree();
    const int g = tree.num_layers();
    const std::size_t k = m.levels().size();
    std::vector<Index> sizes;
    Index total = 0;
    for (int l = 1; l <= g; ++l) {
        sizes.push_back(tree.nodes_in_layer(l));
        total += tree.nodes_in_layer(l);
    }
    std::vector<std::vector<std::size_t>> lv(g);
    for (int l = 1; l <= g; ++l) lv[l - 1].assign(sizes[l - 1], 0);
    double expect = 0.0;
    std::function<double(int, Index)> payoff = [&](int l, Index v) -> double {
        const int a = policy(l, lv[l - 1][v]);
        if (a == 0) return l == g && m.levels()[lv[l - 1][v]] >= q ? 1.0 : 0.0;
        const IndexRange r = descendant_range(tree, {l, v}, a);
        double sum = 0.0;
        for (Index u = r.begin; u < r.end; ++u) sum += payoff(a, u) - lambda * tree.cost_at(a);
        return sum;
    };
    std::function<void(Index, double)> walk = [&](Index pos, double prob) {
        if (prob == 0.0) return;
        if (pos == total) {
            double p = 0.0;
            for (Index v = 0; v < sizes[0]; ++v) p += payoff(1, v);
            expect += prob * p;
            return;
        }
        int l = 1;
        Index v = pos;
        while (v >= sizes[l - 1]) v -= sizes[l++ - 1];
        for (std::size_t x = 0; x < k; ++x) {
            lv[l - 1][v] = x;
            const double p = l == 1 ? m.root_pmf()[x]
                                    : m.transition()[lv[l - 2][v / tree.branching_at(l - 1)]][x];
            walk(pos + 1, prob * p);
        }
    };
    walk(0, 1.0);
    return expect;
}

std::size_t level_index(const DiscreteChainModel& m, double x) {
    for (std::size_t i = 0; i < m.levels().size(); ++i)
        if (m.levels()[i] == x) return i;
    return m.levels().size();
}

}  // namespace

TEST_CASE("gaussian chain has the requested correlation") {
    const auto tree = TreeConfig::uniform(3, 4, 4);
    const auto model = gaussian_chain(tree, 0.7, 200);
    const PathSet paths = simulate_paths(model, 40000, 1);
    for (int l = 1; l < 3; ++l) {
        const auto a = paths.layer(l), b = paths.layer(l + 1);
        double ma = 0, mb = 0, saa = 0, sbb = 0, sab = 0;
        const double n = static_cast<double>(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) ma += a[i], mb += b[i];
        ma /= n, mb /= n;
        for (std::size_t i = 0; i < a.size(); ++i) {
            saa += (a[i] - ma) * (a[i] - ma);
            sbb += (b[i] - mb) * (b[i] - mb);
            sab += (a[i] - ma) * (b[i] - mb);
        }
        CHECK(sab / std::sqrt(saa * sbb) == doctest::Approx(0.7).epsilon(0.03));
        CHECK(ma == doctest::Approx(0.0).epsilon(0.02));
    }
}

TEST_CASE("oracle beats every deterministic policy on a tiny chain") {
    const TreeConfig tree(1, {2, 2}, {1, 0.5, 1});
    const DiscreteChainModel m(tree, {-1.0, 0.5, 2.0}, {0.5, 0.3, 0.2},
                               {{0.6, 0.3, 0.1}, {0.3, 0.4, 0.3}, {0.1, 0.3, 0.6}});
    for (double lambda : {0.0, 0.2, 0.6}) {
        const OracleResult oracle = exact_dp_oracle(m, lambda, 1.0);
        const auto oracle_policy = [&](int l, std::size_t x) { return l == 3 ? 0 : oracle.decision[l - 1][x]; };
        CHECK(brute_force_payoff(m, lambda, 1.0, oracle_policy) == doctest::Approx(oracle.payoff).epsilon(1e-12));
        const auto as_levels = [&](int l, double x) { return oracle_policy(l, level_index(m, x)); };
        CHECK(policy_payoff_exact(m, lambda, 1.0, as_levels) == doctest::Approx(oracle.payoff).epsilon(1e-12));
        double best = -1e300;
        for (int code = 0; code < 27 * 8; ++code) {
            int c = code;
            int a1[3], a2[3];
            for (int& a : a1) a = (c % 3 == 0 ? 0 : c % 3 + 1), c /= 3;
            for (int& a : a2) a = (c % 2 == 0 ? 0 : 3), c /= 2;
            const auto pol = [&](int l, std::size_t x) { return l == 1 ? a1[x] : l == 2 ? a2[x] : 0; };
            const double v = brute_force_payoff(m, lambda, 1.0, pol);
            CHECK(v <= oracle.payoff + 1e-12);
            best = std::max(best, v);
        }
        CHECK(best == doctest::Approx(oracle.payoff).epsilon(1e-12));
    }
}

TEST_CASE("extreme lambda values") {
    const auto tree = TreeConfig::uniform(3, 4, 4);
    const auto model = gaussian_chain(tree, 0.0, 60);
    const OracleResult stop = exact_dp_oracle(model, 1e6, 2.0);
    CHECK(stop.payoff == 0.0);
    for (int l = 1; l < 3; ++l)
        for (int a : stop.decision[l - 1]) CHECK(a == 0);

    // Independent levels and free observations: every leaf is checked.
    const OracleResult all = exact_dp_oracle(model, 0.0, 2.0);
    double p = 0.0;
    for (std::size_t i = 0; i < model.levels().size(); ++i)
        if (model.levels()[i] >= 2.0) p += model.root_pmf()[i];
    CHECK(all.payoff == doctest::Approx(64.0 * p).epsilon(1e-12));
}

TEST_CASE("state space limits") {
    CHECK_THROWS_AS(exact_dp_oracle(gaussian_chain(TreeConfig::uniform(5, 1, 2), 0.5, 20), 0.1, 1.0),
                    StateSpaceTooLarge);
    CHECK_THROWS_AS(exact_dp_oracle(gaussian_chain(TreeConfig::uniform(3, 4, 16), 0.5, 20), 0.1, 1.0),
                    StateSpaceTooLarge);
    CHECK_THROWS_AS(exact_dp_oracle(gaussian_chain(TreeConfig::uniform(3, 4, 4), 0.5, 201), 0.1, 1.0),
                    StateSpaceTooLarge);
}

TEST_CASE("exact policy payoff agrees with execution") {
    const auto tree = TreeConfig::uniform(3, 4, 4);
    const auto model = gaussian_chain(tree, 0.7, 200);
    const Strategy s = fit_strategy(simulate_paths(model, 20000, 2), {tree, 0.05, 2.0, 20000, 2});
    const double exact = policy_payoff_exact(model, 0.05, 2.0, [&](int l, double x) { return s.decide(l, x); });
    const PayoffEstimate mc = policy_payoff_mc(model, s, 0.05, 2.0, 20000, 3);
    CHECK(std::abs(mc.mean - exact) < 4.0 * mc.std_error);
}

TEST_CASE("fitted strategy is close to the oracle") {
    const auto tree = TreeConfig::uniform(3, 4, 4);
    const auto model = gaussian_chain(tree, 0.7, 200);
    const double lambda = 0.05, q = 2.0;
    const OracleResult oracle = exact_dp_oracle(model, lambda, q);
    const Strategy s = fit_strategy(simulate_paths(model, 100000, 4), {tree, lambda, q, 100000, 4});
    const double fitted = policy_payoff_exact(model, lambda, q, [&](int l, double x) { return s.decide(l, x); });
    CHECK(oracle.payoff > 0.0);
    CHECK(fitted <= oracle.payoff + 1e-9);
    CHECK(fitted >= 0.95 * oracle.payoff);
}
