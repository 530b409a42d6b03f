#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <numeric>
#include <vector>

namespace testsupport {

// Minimum weighted SSE over nondecreasing functions of x, by enumerating every
// partition of the distinct x values into contiguous blocks whose weighted
// means are nondecreasing.
inline double exhaustive_monotone_sse(const std::vector<double>& xs, const std::vector<double>& ys,
                                      const std::vector<double>& ws) {
    std::vector<std::size_t> order(xs.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
    // Atoms: runs of equal x.
    std::vector<std::vector<std::size_t>> atoms;
    for (std::size_t k = 0; k < order.size(); ++k) {
        if (k == 0 || xs[order[k]] != xs[order[k - 1]]) atoms.emplace_back();
        atoms.back().push_back(order[k]);
    }
    const std::size_t a = atoms.size();
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t mask = 0; mask < (std::size_t{1} << (a - 1)); ++mask) {
        double sse = 0.0, prev_mean = -std::numeric_limits<double>::infinity();
        bool ok = true;
        std::size_t start = 0;
        for (std::size_t i = 0; i < a && ok; ++i) {
            const bool cut = i == a - 1 || (mask >> i) & 1;
            if (!cut) continue;
            double sw = 0.0, swy = 0.0;
            for (std::size_t j = start; j <= i; ++j)
                for (std::size_t p : atoms[j]) {
                    sw += ws[p];
                    swy += ws[p] * ys[p];
                }
            const double mean = swy / sw;
            if (mean < prev_mean) ok = false;
            for (std::size_t j = start; j <= i; ++j)
                for (std::size_t p : atoms[j]) sse += ws[p] * (ys[p] - mean) * (ys[p] - mean);
            prev_mean = mean;
            start = i + 1;
        }
        if (ok) best = std::min(best, sse);
    }
    return best;
}

}  // namespace testsupport
