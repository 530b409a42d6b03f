#include <doctest.h>

#include <cmath>
#include <vector>

#include "blindsearch/kernels.hpp"
#include "blindsearch/rng.hpp"

using namespace blindsearch;
using namespace blindsearch::kernels;

namespace {

struct Data {
    std::vector<double> t, h;
};

Data make(std::size_t n, double span, std::uint64_t seed) {
    Rng rng(seed);
    Data d;
    for (std::size_t i = 0; i < n; ++i) {
        const double t = rng.uniform() * span;
        d.t.push_back(t);
        d.h.push_back(t * t / 2);
    }
    return d;
}

}  // namespace

TEST_CASE("isa names and scalar availability") {
    CHECK(isa_name(Isa::scalar) == "scalar");
    CHECK(isa_name(Isa::avx2) == "avx2");
    CHECK(isa_supported(Isa::scalar));
    CHECK(phase_sum_fn(Isa::scalar) == &phase_sum_scalar);
}

TEST_CASE("scalar kernel on integer phases") {
    const std::vector<double> t{0, 1, 2, 3}, h{0, 0.5, 2, 4.5};
    const PhaseSum s = phase_sum_scalar(t.data(), h.data(), t.size(), 1.0, 0.0);
    CHECK(s.re == doctest::Approx(4.0));
    CHECK(std::abs(s.im) < 1e-12);
    const PhaseSum e = phase_sum_scalar(t.data(), h.data(), 0, 1.0, 0.0);
    CHECK(e.re == 0.0);
    CHECK(e.im == 0.0);
}

#if defined(BLINDSEARCH_HAVE_AVX2)
TEST_CASE("avx2 kernel agrees with the scalar reference") {
    if (!isa_supported(Isa::avx2)) {
        MESSAGE("avx2 not supported on this CPU; skipping");
        return;
    }
    // Every tail length, spans from tiny to paper scale, with drift.
    for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 31, 100, 1072, 5000}) {
        for (double span : {1.0, 37662.4, 1205197.0}) {
            const Data d = make(n, span, 100 + n);
            for (double w : {0.5, 1.0123, 9.761175993, 40.0}) {
                for (double wd : {0.0, -8.827879e-12, -5e-11}) {
                    const PhaseSum a = phase_sum_scalar(d.t.data(), d.h.data(), n, w, wd);
                    const PhaseSum b = phase_sum_avx2(d.t.data(), d.h.data(), n, w, wd);
                    // Same phase reduction; only the sin/cos evaluation differs.
                    const double tol = 1e-13 * static_cast<double>(n + 1);
                    CHECK(std::abs(a.re - b.re) <= tol);
                    CHECK(std::abs(a.im - b.im) <= tol);
                }
            }
        }
    }
}

TEST_CASE("avx2 sincos accuracy over one turn") {
    if (!isa_supported(Isa::avx2)) return;
    // With t = 1 and omega = x the kernel returns exp(2 pi i x) directly.
    double worst = 0.0;
    const std::vector<double> t{1.0}, h{0.0};
    for (int i = -20000; i <= 20000; ++i) {
        const double x = i / 20000.0 * 3.0 + 1e-7;
        const PhaseSum b = phase_sum_avx2(t.data(), h.data(), 1, x, 0.0);
        const PhaseSum a = phase_sum_scalar(t.data(), h.data(), 1, x, 0.0);
        worst = std::max({worst, std::abs(a.re - b.re), std::abs(a.im - b.im)});
    }
    CHECK(worst < 1e-14);
}
#endif

TEST_CASE("dispatch resolves to a supported variant") {
    const Isa isa = active_isa();
    CHECK(isa_supported(isa));
    const Data d = make(64, 10.0, 3);
    const PhaseSum a = phase_sum(d.t, d.h, 1.7, 0.01);
    const PhaseSum b = phase_sum_scalar(d.t.data(), d.h.data(), 64, 1.7, 0.01);
    CHECK(std::abs(a.re - b.re) < 1e-11);
    CHECK(std::abs(a.im - b.im) < 1e-11);
}
