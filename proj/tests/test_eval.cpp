#include <doctest.h>

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "blindsearch/eval.hpp"

using namespace blindsearch;

namespace {

PulsarExperiment small_experiment() {
    PulsarExperiment e;
    e.grid = GridSpec{1.0, 1.004, -4e-7, 0.0, 3, 3.0, false};
    e.span = 1000.0;
    e.photons = 300;
    e.num_paths = 3000;
    e.q_reject = chi2_2_quantile(1.0 - 0.05 / 100.0);
    e.cost_sims = 3;
    e.threads = 1;
    return e;
}

}  // namespace

TEST_CASE("tradeoff endpoints") {
    const auto e = small_experiment();
    const auto pts = estimate_tradeoff(std::vector<double>{0.0, 1e6}, {0.4}, e, 40, 7);
    REQUIRE(pts.size() == 2);
    const auto& free = pts[0];
    CHECK(free.lambda == 0.0);
    CHECK(free.theta == 0.4);
    CHECK(free.cost_fraction >= 1.0);
    REQUIRE(free.naive_successes > 0);
    CHECK(free.power_fraction == 1.0);
    CHECK(free.search_successes == free.naive_successes);
    const auto& stop = pts[1];
    const PulsarGrid grid(e.grid, e.span);
    CHECK(stop.cost_fraction == doctest::Approx(static_cast<double>(grid.tree().root_count()) /
                                                static_cast<double>(grid.tree().leaf_count())));
    CHECK(stop.power_fraction == 0.0);
    CHECK(stop.cost_se == 0.0);
}

TEST_CASE("no naive successes gives NaN power") {
    auto e = small_experiment();
    e.q_reject = 1e9;
    const auto pts = estimate_tradeoff(std::vector<double>{0.1}, {0.3}, e, 5, 1);
    REQUIRE(pts.size() == 1);
    CHECK(pts[0].naive_successes == 0);
    CHECK(std::isnan(pts[0].power_fraction));
}

TEST_CASE("tradeoff is reproducible and independent of threads") {
    auto e = small_experiment();
    const auto a = estimate_tradeoff(std::vector<double>{0.02}, {0.3, 0.4}, e, 12, 3);
    e.threads = 3;
    const auto b = estimate_tradeoff(std::vector<double>{0.02}, {0.3, 0.4}, e, 12, 3);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].cost_fraction == b[i].cost_fraction);
        CHECK(a[i].search_successes == b[i].search_successes);
        CHECK(a[i].naive_successes == b[i].naive_successes);
    }
}

TEST_CASE("empty grids are rejected") {
    const auto e = small_experiment();
    CHECK_THROWS_AS(estimate_tradeoff(std::vector<double>{}, {0.3}, e, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_tradeoff(std::vector<double>{0.1}, {}, e, 5, 1), std::invalid_argument);
    CHECK_THROWS_AS(estimate_tradeoff(std::vector<double>{0.1}, {0.3}, e, 0, 1), std::invalid_argument);
}

TEST_CASE("tradeoff CSV round trip") {
    std::vector<TradeoffPoint> pts(2);
    pts[0] = {0.01, 0.24, 0.0123456789, 0.95, 1e-4, 0.01, 1000, 100, 95};
    pts[1] = {0.2, 0.34, 2.5e-4, std::nan(""), 0.0, std::nan(""), 1000, 0, 0};
    std::stringstream ss;
    write_tradeoff_csv(ss, pts);
    CHECK(ss.str().rfind("lambda,cost_fraction,power_fraction,cost_se,power_se,n_sims,theta\n", 0) == 0);
    const auto back = read_tradeoff_csv(ss);
    REQUIRE(back.size() == 2);
    CHECK(back[0].cost_fraction == pts[0].cost_fraction);
    CHECK(back[0].theta == 0.24);
    CHECK(back[0].n_sims == 1000);
    CHECK(std::isnan(back[1].power_fraction));
    std::istringstream bad("lambda,cost_fraction\n0.1\n");
    CHECK_THROWS_AS(read_tradeoff_csv(bad), FormatError);
}

TEST_CASE("naive power at the truth") {
    const double q = chi2_2_quantile(1.0 - 0.01);
    const auto none = naive_power_check(0.0, 500, q, 2000, 5, 1000.0);
    CHECK(std::abs(none.power - 0.01) < 4.0 * std::sqrt(0.01 * 0.99 / 2000.0));
    const auto strong = naive_power_check(0.5, 500, q, 200, 5, 1000.0);
    CHECK(strong.power == 1.0);
    CHECK_THROWS_AS(naive_power_check(0.3, 500, q, 0, 5), std::invalid_argument);
}
