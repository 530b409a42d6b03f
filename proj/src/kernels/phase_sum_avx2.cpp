// Compiled with -mavx2 -mfma -ffp-contract=off; never called unless the CPU
// reports both. The phase is formed with separate multiply and add, exactly
// like the scalar kernel, so both see bit-identical phases: at 1e8 turns a
// fused rounding alone would move the result by ~1e-8.
#include <immintrin.h>

#include <numbers>

#include "blindsearch/kernels.hpp"

namespace blindsearch::kernels {
namespace {

// Taylor coefficients; on |y| <= pi/4 the truncation error is below 1e-16.
constexpr double s3 = -1.0 / 6.0;
constexpr double s5 = 1.0 / 120.0;
constexpr double s7 = -1.0 / 5040.0;
constexpr double s9 = 1.0 / 362880.0;
constexpr double s11 = -1.0 / 39916800.0;
constexpr double s13 = 1.0 / 6227020800.0;
constexpr double s15 = -1.0 / 1307674368000.0;

constexpr double c2 = -1.0 / 2.0;
constexpr double c4 = 1.0 / 24.0;
constexpr double c6 = -1.0 / 720.0;
constexpr double c8 = 1.0 / 40320.0;
constexpr double c10 = -1.0 / 3628800.0;
constexpr double c12 = 1.0 / 479001600.0;
constexpr double c14 = -1.0 / 87178291200.0;
constexpr double c16 = 1.0 / 20922789888000.0;

inline __m256d poly(__m256d z, std::initializer_list<double> coeffs) {
    // Horner from the highest coefficient down.
    auto it = coeffs.end();
    __m256d acc = _mm256_set1_pd(*--it);
    while (it != coeffs.begin()) acc = _mm256_fmadd_pd(acc, z, _mm256_set1_pd(*--it));
    return acc;
}

struct SinCos {
    __m256d sin;
    __m256d cos;
};

/// sin and cos of 2*pi*phi for arbitrary phi.
inline SinCos sincos_turns(__m256d phi) {
    constexpr int nearest = _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC;
    const __m256d r = _mm256_sub_pd(phi, _mm256_round_pd(phi, nearest));  // [-1/2, 1/2]
    const __m256d quarter_turns = _mm256_round_pd(_mm256_mul_pd(r, _mm256_set1_pd(4.0)), nearest);
    const __m256d y = _mm256_mul_pd(_mm256_fnmadd_pd(quarter_turns, _mm256_set1_pd(0.25), r),
                                    _mm256_set1_pd(2.0 * std::numbers::pi));  // [-pi/4, pi/4]
    const __m256d z = _mm256_mul_pd(y, y);

    const __m256d sin_y =
        _mm256_fmadd_pd(_mm256_mul_pd(poly(z, {s3, s5, s7, s9, s11, s13, s15}), z), y, y);
    const __m256d cos_y =
        _mm256_fmadd_pd(poly(z, {c2, c4, c6, c8, c10, c12, c14, c16}), z, _mm256_set1_pd(1.0));

    // Rotate by k quarter turns, k = quarter_turns mod 4.
    const __m128i q32 = _mm_and_si128(_mm256_cvtpd_epi32(quarter_turns), _mm_set1_epi32(3));
    const __m256i k = _mm256_cvtepi32_epi64(q32);
    const __m256i one = _mm256_set1_epi64x(1);
    const __m256i two = _mm256_set1_epi64x(2);
    const __m256d odd = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(k, one), one));
    const __m256d sin_neg = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(k, two), two));
    const __m256i k1 = _mm256_add_epi64(k, one);
    const __m256d cos_neg = _mm256_castsi256_pd(_mm256_cmpeq_epi64(_mm256_and_si256(k1, two), two));

    const __m256d sign = _mm256_set1_pd(-0.0);
    __m256d s = _mm256_blendv_pd(sin_y, cos_y, odd);
    __m256d c = _mm256_blendv_pd(cos_y, sin_y, odd);
    s = _mm256_xor_pd(s, _mm256_and_pd(sin_neg, sign));
    c = _mm256_xor_pd(c, _mm256_and_pd(cos_neg, sign));
    return {s, c};
}

inline __m256d phase(__m256d omega, __m256d omegadot, __m256d t, __m256d half_t2) {
    return _mm256_add_pd(_mm256_mul_pd(omega, t), _mm256_mul_pd(omegadot, half_t2));
}

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

}  // namespace

PhaseSum phase_sum_avx2(const double* t, const double* half_t2, std::size_t n, double omega,
                        double omegadot) {
    const __m256d om = _mm256_set1_pd(omega);
    const __m256d od = _mm256_set1_pd(omegadot);
    __m256d re0 = _mm256_setzero_pd();
    __m256d im0 = _mm256_setzero_pd();
    __m256d re1 = _mm256_setzero_pd();
    __m256d im1 = _mm256_setzero_pd();

    std::size_t j = 0;
    for (; j + 8 <= n; j += 8) {
        const __m256d phi0 = phase(om, od, _mm256_loadu_pd(t + j), _mm256_loadu_pd(half_t2 + j));
        const __m256d phi1 = phase(om, od, _mm256_loadu_pd(t + j + 4), _mm256_loadu_pd(half_t2 + j + 4));
        const SinCos a = sincos_turns(phi0);
        const SinCos b = sincos_turns(phi1);
        re0 = _mm256_add_pd(re0, a.cos);
        im0 = _mm256_add_pd(im0, a.sin);
        re1 = _mm256_add_pd(re1, b.cos);
        im1 = _mm256_add_pd(im1, b.sin);
    }
    for (; j + 4 <= n; j += 4) {
        const __m256d phi = phase(om, od, _mm256_loadu_pd(t + j), _mm256_loadu_pd(half_t2 + j));
        const SinCos a = sincos_turns(phi);
        re0 = _mm256_add_pd(re0, a.cos);
        im0 = _mm256_add_pd(im0, a.sin);
    }
    if (j < n) {
        const long long rem = static_cast<long long>(n - j);
        const __m256i lanes = _mm256_set_epi64x(3, 2, 1, 0);
        const __m256i mask = _mm256_cmpgt_epi64(_mm256_set1_epi64x(rem), lanes);
        const __m256d phi = phase(om, od, _mm256_maskload_pd(t + j, mask), _mm256_maskload_pd(half_t2 + j, mask));
        const SinCos a = sincos_turns(phi);
        const __m256d keep = _mm256_castsi256_pd(mask);
        re0 = _mm256_add_pd(re0, _mm256_and_pd(a.cos, keep));
        im0 = _mm256_add_pd(im0, _mm256_and_pd(a.sin, keep));
    }
    return {hsum(_mm256_add_pd(re0, re1)), hsum(_mm256_add_pd(im0, im1))};
}

}  // namespace blindsearch::kernels
