#include <cmath>
#include <numbers>

#include "blindsearch/kernels.hpp"

namespace blindsearch::kernels {

PhaseSum phase_sum_scalar(const double* t, const double* half_t2, std::size_t n, double omega,
                          double omegadot) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    double re = 0.0;
    double im = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        const double phi = omega * t[j] + omegadot * half_t2[j];
        // Only the fractional turn matters; reducing first keeps the libm
        // argument small for phases of ~1e8 cycles.
        const double r = phi - std::nearbyint(phi);
        re += std::cos(two_pi * r);
        im += std::sin(two_pi * r);
    }
    return {re, im};
}

}  // namespace blindsearch::kernels
