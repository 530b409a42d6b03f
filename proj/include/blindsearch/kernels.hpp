#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace blindsearch::kernels {

/// Real and imaginary parts of sum_j exp(2*pi*i*phi_j).
struct PhaseSum {
    double re = 0.0;
    double im = 0.0;

    double norm() const { return re * re + im * im; }
};

enum class Isa { scalar, avx2 };

std::string_view isa_name(Isa isa);

/// Phase of photon j is omega*t[j] + omegadot*half_t2[j] where half_t2 holds
/// t^2/2. Both spans must have equal length.
using PhaseSumFn = PhaseSum (*)(const double* t, const double* half_t2, std::size_t n,
                                double omega, double omegadot);

/// Reference implementation (libm sin/cos after reduction to one turn).
PhaseSum phase_sum_scalar(const double* t, const double* half_t2, std::size_t n, double omega,
                          double omegadot);

#if defined(BLINDSEARCH_HAVE_AVX2)
/// AVX2+FMA implementation with an octant-reduced polynomial sincos.
/// Only call when isa_supported(Isa::avx2).
PhaseSum phase_sum_avx2(const double* t, const double* half_t2, std::size_t n, double omega,
                        double omegadot);
#endif

/// True when the variant is compiled in and the running CPU supports it.
bool isa_supported(Isa isa);

/// Variant picked at first use: the best supported ISA, unless the
/// BLINDSEARCH_KERNEL environment variable is set to "scalar" or "avx2".
Isa active_isa();

PhaseSumFn phase_sum_fn(Isa isa);

inline PhaseSum phase_sum(std::span<const double> t, std::span<const double> half_t2,
                          double omega, double omegadot) {
    static const PhaseSumFn fn = phase_sum_fn(active_isa());
    return fn(t.data(), half_t2.data(), t.size(), omega, omegadot);
}

}  // namespace blindsearch::kernels
