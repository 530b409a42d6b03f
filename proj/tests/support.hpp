#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "blindsearch/stats.hpp"

namespace testsupport {

// One-sample Kolmogorov-Smirnov distance.
inline double ks_distance(std::vector<double> xs, const std::function<double(double)>& cdf) {
    std::sort(xs.begin(), xs.end());
    const double n = static_cast<double>(xs.size());
    double d = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double f = cdf(xs[i]);
        d = std::max({d, f - static_cast<double>(i) / n, static_cast<double>(i + 1) / n - f});
    }
    return d;
}

// Direct complex-exponential evaluation of the blocked power, independent of
// the library kernels.
inline double blocked_power_direct(const std::vector<double>& t, double span, double omega, double omegadot,
                                   int kappa) {
    const double pi = 3.14159265358979323846;
    const std::size_t blocks = std::size_t{1} << kappa;
    std::vector<std::complex<long double>> sums(blocks);
    for (double tj : t) {
        std::size_t k = static_cast<std::size_t>(std::floor(tj / span * static_cast<double>(blocks)));
        if (k >= blocks) k = blocks - 1;
        const long double phase = static_cast<long double>(omega) * tj + static_cast<long double>(omegadot) * tj * tj / 2;
        const long double frac = phase - std::floor(phase);
        sums[k] += std::polar<long double>(1.0L, 2.0L * static_cast<long double>(pi) * frac);
    }
    long double total = 0.0L;
    for (const auto& s : sums) total += std::norm(s);
    return static_cast<double>(2.0L * total / static_cast<long double>(t.size()));
}

}  // namespace testsupport
