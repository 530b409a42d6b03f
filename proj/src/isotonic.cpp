#include "blindsearch/isotonic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace blindsearch {

MonotoneFn::MonotoneFn(std::vector<double> breakpoints, std::vector<double> levels)
    : breakpoints_(std::move(breakpoints)), levels_(std::move(levels)) {
    if (levels_.empty() || levels_.size() != breakpoints_.size()) {
        throw std::invalid_argument("monotone function needs equal, nonzero numbers of breakpoints and levels");
    }
    for (std::size_t i = 1; i < levels_.size(); ++i) {
        if (!(breakpoints_[i] > breakpoints_[i - 1])) {
            throw std::invalid_argument("breakpoints must be strictly increasing");
        }
        if (!(levels_[i] >= levels_[i - 1])) throw std::invalid_argument("levels must be nondecreasing");
    }
}

double MonotoneFn::operator()(double x) const {
    const auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    if (it == breakpoints_.begin()) return levels_.front();
    return levels_[static_cast<std::size_t>(it - breakpoints_.begin()) - 1];
}

MonotoneFn pava(std::span<const double> xs, std::span<const double> ys, std::span<const double> ws) {
    const std::size_t n = xs.size();
    if (n == 0) throw std::invalid_argument("pava: empty input");
    if (ys.size() != n || ws.size() != n) throw std::invalid_argument("pava: length mismatch");

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) {
        if (!(ws[i] > 0.0) || !std::isfinite(ws[i])) throw std::invalid_argument("pava: weights must be positive");
        if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) throw std::invalid_argument("pava: non-finite input");
    }
    // Stable so that tie merging sums in input order (bit-reproducible).
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });

    struct Block {
        double x;     // smallest abscissa in the block
        double wsum;  // total weight
        double wy;    // weighted sum of targets
        double mean() const { return wy / wsum; }
    };
    std::vector<Block> blocks;
    blocks.reserve(n);

    std::size_t i = 0;
    while (i < n) {
        Block b{xs[order[i]], 0.0, 0.0};
        for (; i < n && xs[order[i]] == b.x; ++i) {
            b.wsum += ws[order[i]];
            b.wy += ws[order[i]] * ys[order[i]];
        }
        // Pool while the previous block is not strictly below the new one.
        while (!blocks.empty() && blocks.back().mean() >= b.mean()) {
            const Block prev = blocks.back();
            blocks.pop_back();
            b = {prev.x, prev.wsum + b.wsum, prev.wy + b.wy};
        }
        blocks.push_back(b);
    }

    std::vector<double> bp(blocks.size());
    std::vector<double> lv(blocks.size());
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        bp[k] = blocks[k].x;
        lv[k] = blocks[k].mean();
        // Rounding in the pooled means can produce a last-bit inversion.
        if (k > 0 && lv[k] < lv[k - 1]) lv[k] = lv[k - 1];
    }
    return MonotoneFn(std::move(bp), std::move(lv));
}

MonotoneFn pava(std::span<const double> xs, std::span<const double> ys) {
    const std::vector<double> ws(xs.size(), 1.0);
    return pava(xs, ys, ws);
}

}  // namespace blindsearch
