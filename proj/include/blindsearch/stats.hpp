#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace blindsearch {

/// Photon arrival times in seconds over an observation span [0, T].
/// Times are stored sorted; t^2/2 is precomputed for the phase kernels.
class PhotonSeries {
public:
    PhotonSeries() = default;

    /// Sorts `times`. Throws std::invalid_argument when empty, when the span is
    /// not positive, or when a time falls outside [0, span].
    PhotonSeries(std::vector<double> times, double span);

    std::size_t size() const { return times_.size(); }
    double span() const { return span_; }
    std::span<const double> times() const { return times_; }
    std::span<const double> half_squares() const { return half_squares_; }

private:
    std::vector<double> times_;
    std::vector<double> half_squares_;
    double span_ = 0.0;
};

struct FreqDrift {
    double omega = 1.0;     ///< Hz
    double omegadot = 0.0;  ///< s^-2
};

/// Sinusoidally modulated arrivals: phase density proportional to
/// 1 + theta*sin(2*pi*phi), phi = omega*t + omegadot*t^2/2.
struct SignalSpec {
    double theta = 0.0;
    FreqDrift freq;
    std::size_t photons = 0;
    double span = 0.0;
};

/// Photon index boundaries of 2^kappa equal-length time blocks. offsets has
/// 2^kappa + 1 entries; block k holds photons [offsets[k], offsets[k+1]).
/// The last block is closed so a photon at exactly t = T is included.
struct BlockLayout {
    int kappa = 0;
    std::vector<std::size_t> offsets;
};

BlockLayout make_block_layout(const PhotonSeries& photons, int kappa);

/// Rayleigh power in the first harmonic: (2/m)|sum_j exp(2*pi*i*phi_j)|^2.
double rayleigh_power(const PhotonSeries& photons, FreqDrift fd);

/// Blocked power: Rayleigh sums computed per time block and their squared
/// moduli added, discarding inter-block phase. kappa = 0 is rayleigh_power.
double blocked_power(const PhotonSeries& photons, FreqDrift fd, int kappa);
double blocked_power(const PhotonSeries& photons, FreqDrift fd, const BlockLayout& layout);

/// Survival function and quantile of the chi-squared law with 2 degrees of
/// freedom (exponential with mean 2).
double chi2_2_sf(double x);
double chi2_2_cdf(double x);
double chi2_2_quantile(double p);

/// Exactly spec.photons sorted arrival times drawn by rejection sampling from
/// the modulated density. theta = 0 gives uniform arrivals.
PhotonSeries simulate_photons(const SignalSpec& spec, std::uint64_t seed);

/// Raised by photon/strategy/CSV readers on malformed input.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Plain text, one arrival time in seconds per line. Lines starting with '#'
/// are comments; "# T=<seconds>" declares the span. `span_override` wins over
/// the header; one of the two must be present.
PhotonSeries read_photons(std::istream& in, std::optional<double> span_override = std::nullopt);
PhotonSeries read_photon_file(const std::string& path,
                              std::optional<double> span_override = std::nullopt);
void write_photons(std::ostream& out, const PhotonSeries& photons,
                   const std::vector<std::string>& comments = {});
void write_photon_file(const std::string& path, const PhotonSeries& photons,
                       const std::vector<std::string>& comments = {});

}  // namespace blindsearch
