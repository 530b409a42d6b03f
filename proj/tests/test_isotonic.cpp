#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "blindsearch/isotonic.hpp"
#include "blindsearch/rng.hpp"
#include "isotonic_oracle.hpp"

using namespace blindsearch;
using doctest::Approx;

namespace {

double sse(const MonotoneFn& f, const std::vector<double>& xs, const std::vector<double>& ys,
           const std::vector<double>& ws) {
    double s = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) s += ws[i] * (ys[i] - f(xs[i])) * (ys[i] - f(xs[i]));
    return s;
}

struct Instance {
    std::vector<double> xs, ys, ws;
};

Instance random_instance(Rng& rng, std::size_t n, bool ties) {
    Instance in;
    for (std::size_t i = 0; i < n; ++i) {
        in.xs.push_back(ties ? static_cast<double>(rng.below(4)) : rng.normal());
        in.ys.push_back(rng.normal() * 3.0);
        in.ws.push_back(0.1 + rng.uniform() * 2.0);
    }
    return in;
}

}  // namespace

TEST_CASE("pava examples") {
    const MonotoneFn id = pava(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 3});
    CHECK(id(1) == 1);
    CHECK(id(2) == 2);
    CHECK(id(3) == 3);
    const MonotoneFn pooled = pava(std::vector<double>{1, 2}, std::vector<double>{2, 1});
    CHECK(pooled(1) == 1.5);
    CHECK(pooled(2) == 1.5);
    CHECK(pooled.size() == 1);
    const MonotoneFn two = pava(std::vector<double>{1, 2, 3}, std::vector<double>{3, 1, 2});
    for (double x : {0.0, 1.0, 2.0, 3.0, 9.0}) CHECK(two(x) == Approx(2.0));
}

TEST_CASE("evaluate examples") {
    const MonotoneFn c({0}, {5});
    CHECK(evaluate(c, -10) == 5);
    const MonotoneFn f({1, 2}, {0, 1});
    CHECK(evaluate(f, 1.5) == 0);
    CHECK(evaluate(f, 2) == 1);
    CHECK(evaluate(f, 1) == 0);
    CHECK(evaluate(f, 0.5) == 0);
    CHECK(evaluate(f, 100) == 1);
    CHECK(MonotoneFn()(3.0) == 0.0);
}

TEST_CASE("monotone function validation") {
    CHECK_THROWS_AS(MonotoneFn({}, {}), std::invalid_argument);
    CHECK_THROWS_AS(MonotoneFn({1, 1}, {0, 1}), std::invalid_argument);
    CHECK_THROWS_AS(MonotoneFn({1, 2}, {1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(MonotoneFn({1, 2}, {1}), std::invalid_argument);
}

TEST_CASE("pava input errors") {
    const std::vector<double> xs{1, 2}, ys{1, 2};
    CHECK_THROWS_AS(pava(std::vector<double>{}, std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(pava(xs, std::vector<double>{1}), std::invalid_argument);
    CHECK_THROWS_AS(pava(xs, ys, std::vector<double>{1, 0}), std::invalid_argument);
    CHECK_THROWS_AS(pava(xs, ys, std::vector<double>{1, -2}), std::invalid_argument);
    CHECK_THROWS_AS(pava(xs, std::vector<double>{1, NAN}), std::invalid_argument);
}

TEST_CASE("ties in x are merged before pooling") {
    // Two points at x=1 average to 2, then pool with the point at x=2.
    const MonotoneFn f = pava(std::vector<double>{1, 1, 2}, std::vector<double>{0, 4, 1}, std::vector<double>{1, 1, 2});
    CHECK(f(1) == Approx(1.5));
    CHECK(f(2) == Approx(1.5));
    // Same data in a different order gives the same function.
    const MonotoneFn g = pava(std::vector<double>{2, 1, 1}, std::vector<double>{1, 4, 0}, std::vector<double>{2, 1, 1});
    CHECK(f == g);
}

TEST_CASE("pava matches exhaustive partition search") {
    Rng rng(2024);
    for (int rep = 0; rep < 1000; ++rep) {
        const std::size_t n = 1 + rng.below(8);
        const Instance in = random_instance(rng, n, rep % 3 == 0);
        const MonotoneFn f = pava(in.xs, in.ys, in.ws);
        const double oracle = testsupport::exhaustive_monotone_sse(in.xs, in.ys, in.ws);
        CHECK(sse(f, in.xs, in.ys, in.ws) == Approx(oracle).epsilon(1e-9).scale(1.0));
    }
}

TEST_CASE("pava structural properties") {
    Rng rng(77);
    for (int rep = 0; rep < 300; ++rep) {
        const std::size_t n = 1 + rng.below(60);
        const Instance in = random_instance(rng, n, rep % 2 == 0);
        const MonotoneFn f = pava(in.xs, in.ys, in.ws);
        CHECK(std::is_sorted(f.levels().begin(), f.levels().end()));
        CHECK(std::adjacent_find(f.breakpoints().begin(), f.breakpoints().end(), std::greater_equal<>()) ==
              f.breakpoints().end());
        const double lo = *std::min_element(in.ys.begin(), in.ys.end());
        const double hi = *std::max_element(in.ys.begin(), in.ys.end());
        double swf = 0.0, swy = 0.0, sw = 0.0;
        std::vector<double> fitted;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = f(in.xs[i]);
            CHECK(v >= lo - 1e-12);
            CHECK(v <= hi + 1e-12);
            swf += in.ws[i] * v;
            swy += in.ws[i] * in.ys[i];
            sw += in.ws[i];
            fitted.push_back(v);
        }
        CHECK(swf == Approx(swy).epsilon(1e-10).scale(sw));
        // Idempotence: refitting the fitted values reproduces them.
        const MonotoneFn g = pava(in.xs, fitted, in.ws);
        for (std::size_t i = 0; i < n; ++i) CHECK(g(in.xs[i]) == Approx(fitted[i]).epsilon(1e-12));
        // Breakpoints are the smallest x of each block, so the fit is
        // constant to the left of the data.
        CHECK(f(*std::min_element(in.xs.begin(), in.xs.end()) - 1.0) == f.levels().front());
    }
}
