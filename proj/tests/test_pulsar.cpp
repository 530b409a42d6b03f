#include <doctest.h>

#include <cmath>
#include <set>
#include <stdexcept>

#include "blindsearch/engine.hpp"
#include "blindsearch/eval.hpp"
#include "blindsearch/pulsar.hpp"
#include "support.hpp"

using namespace blindsearch;

namespace {

GridSpec small_box() { return GridSpec{1.0, 1.002, -4e-7, 0.0, 3, 3.0, false}; }

}  // namespace

TEST_CASE("layer spacings and block exponents") {
    const double span = 1000.0;
    const PulsarGrid grid({1.0, 1.1, -1e-6, 0.0, 5, 3.0, false}, span);
    CHECK(grid.kappa(5) == 0);
    CHECK(grid.kappa(1) == 4);
    CHECK(grid.freq_spacing(5) == doctest::Approx(1.0 / 3000.0));
    CHECK(grid.freq_spacing(1) == doctest::Approx(16.0 / 3000.0));
    CHECK(grid.drift_spacing(5) == doctest::Approx(1.0 / 9e6));
    CHECK(grid.drift_spacing(1) == doctest::Approx(256.0 / 9e6));
    CHECK(grid.tree().branching_at(1) == 8);
    CHECK(grid.tree().num_layers() == 5);
}

TEST_CASE("children sit at half and three-half spacings") {
    const PulsarGrid grid(small_box(), 1000.0);
    const TreeConfig& tree = grid.tree();
    for (int l = 1; l < tree.num_layers(); ++l) {
        for (Index v = 0; v < tree.nodes_in_layer(l); v += 5) {
            const FreqDrift p = grid.params({l, v});
            std::multiset<double> dw, dd;
            for (Index c = 0; c < 8; ++c) {
                const FreqDrift q = grid.params({l + 1, v * 8 + c});
                const double eta_w = (q.omega - p.omega) / grid.freq_spacing(l + 1);
                const double eta_d = (q.omegadot - p.omegadot) / grid.drift_spacing(l + 1);
                CHECK(eta_w == doctest::Approx((c & 1) - 0.5).epsilon(1e-6));
                CHECK(eta_d == doctest::Approx(static_cast<double>(c >> 1) - 1.5).epsilon(1e-6));
            }
        }
    }
}

TEST_CASE("lattice addressing round trips") {
    for (bool fo : {false, true}) {
        GridSpec spec = small_box();
        spec.frequency_only = fo;
        const PulsarGrid grid(spec, 1000.0);
        const TreeConfig& tree = grid.tree();
        for (int l = 1; l <= tree.num_layers(); ++l) {
            CHECK(checked_mul(grid.freq_count(l), grid.drift_count(l)) == tree.nodes_in_layer(l));
            std::set<std::pair<Index, Index>> seen;
            for (Index v = 0; v < tree.nodes_in_layer(l); ++v) {
                const LatticeIndex idx = grid.lattice({l, v});
                CHECK(seen.insert({idx.freq, idx.drift}).second);
                CHECK(grid.node_at(l, idx) == NodeId{l, v});
            }
        }
        CHECK_THROWS_AS(grid.node_at(1, {grid.freq_count(1), 0}), std::out_of_range);
    }
}

TEST_CASE("invalid boxes are rejected") {
    CHECK_THROWS_AS(PulsarGrid(GridSpec{2.0, 2.0, -1e-9, 0.0, 3, 3.0, false}, 1000.0), std::invalid_argument);
    CHECK_THROWS_AS(PulsarGrid(GridSpec{2.0, 1.0, -1e-9, 0.0, 3, 3.0, false}, 1000.0), std::invalid_argument);
    CHECK_THROWS_AS(PulsarGrid(GridSpec{1.0, 2.0, 0.0, -1e-9, 3, 3.0, false}, 1000.0), std::invalid_argument);
    CHECK_THROWS_AS(PulsarGrid(small_box(), 0.0), std::invalid_argument);
    const PhotonSeries ph = simulate_photons({0.0, {}, 10, 500.0}, 1);
    CHECK_THROWS_AS(PulsarEvaluator(ph, PulsarGrid(small_box(), 1000.0)), std::invalid_argument);
}

TEST_CASE("desk-scale grid size") {
    const auto e = desk_scale_experiment();
    const PulsarGrid grid(e.grid, e.span);
    CHECK(grid.tree().root_count() == 248);
    CHECK(grid.tree().leaf_count() == 1015808);
}

TEST_CASE("leaves_near and roots_near agree with brute force") {
    const PulsarGrid grid(small_box(), 1000.0);
    const TreeConfig& tree = grid.tree();
    const int g = tree.num_layers();
    Rng rng(3);
    for (int rep = 0; rep < 30; ++rep) {
        const FreqDrift truth{1.0 + 0.002 * rng.uniform(), -4e-7 * rng.uniform()};
        const double rw = 1e-3 * rng.uniform(), rd = 1e-7 * rng.uniform();
        std::vector<NodeId> expect;
        for (Index v = 0; v < tree.leaf_count(); ++v) {
            const FreqDrift p = grid.params({g, v});
            if (std::abs(p.omega - truth.omega) <= rw && std::abs(p.omegadot - truth.omegadot) <= rd)
                expect.push_back({g, v});
        }
        CHECK(grid.leaves_near(truth, rw, rd) == expect);
        const auto roots = grid.roots_near(truth, rw, rd);
        for (const NodeId& leaf : expect) {
            const Index r = ancestor(tree, leaf, 1).index;
            bool covered = false;
            for (const auto& range : roots) covered = covered || (r >= range.begin && r < range.end);
            CHECK(covered);
        }
    }
}

TEST_CASE("null leaf statistic is chi-squared with 2 dof") {
    const PulsarGrid grid(small_box(), 1000.0);
    const PulsarPathModel model(grid, 500);
    const PathSet paths = simulate_paths(model, 10000, 11);
    const auto leaf = paths.layer(grid.tree().num_layers());
    std::vector<double> xs(leaf.begin(), leaf.end());
    CHECK(testsupport::ks_distance(xs, chi2_2_cdf) < 0.02);
    double mean1 = 0.0;
    for (double x : paths.layer(1)) mean1 += x;
    CHECK(mean1 / 10000.0 == doctest::Approx(2.0).epsilon(0.03));
}

TEST_CASE("frequency-only search finds the injected peak with fewer evaluations") {
    const double span = 2000.0;
    // 1 root, 9 binary splits: 512 leaves.
    const GridSpec spec{10.0, 10.0 + 512.0 / (3.0 * span), 0.0, 0.0, 10, 3.0, true};
    const PulsarGrid grid(spec, span);
    REQUIRE(grid.tree().leaf_count() == 512);
    const PulsarPathModel model(grid, 400);
    const Strategy s = fit_strategy(simulate_paths(model, 20000, 5), {grid.tree(), 0.01, chi2_2_quantile(0.99), 20000, 5});
    const FreqDrift truth{10.0 + 300.5 / (3.0 * span), 0.0};
    const PulsarEvaluator eval(simulate_photons({0.5, truth, 400, span}, 9), grid);
    SearchOptions opt;
    opt.q_reject = chi2_2_quantile(1.0 - 0.05 / (512.0 / 3.0));
    const SearchOutcome out = run_search(s, eval, opt);
    const SearchOutcome naive = naive_search(eval, opt);
    CHECK(out.per_layer_observed.back() < 512);
    CHECK(out.total_cost < naive.total_cost);
    REQUIRE_FALSE(out.detections.empty());
    const Detection best = *std::max_element(out.detections.begin(), out.detections.end(),
                                             [](const Detection& a, const Detection& b) { return a.value < b.value; });
    CHECK(std::abs(grid.params(best.leaf).omega - truth.omega) <= 1.0 / span);
}

TEST_CASE("default rejection threshold") {
    const auto tree = TreeConfig::uniform(2, 900, 2);  // 1800 leaves, 200 cells
    CHECK(default_q_reject(tree) == doctest::Approx(chi2_2_quantile(1.0 - 0.05 / 200.0)));
    CHECK(default_q_reject(tree, 0.01) > default_q_reject(tree));
    CHECK_THROWS_AS(default_q_reject(tree, 0.0), std::invalid_argument);
}
