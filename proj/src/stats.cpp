#include "blindsearch/stats.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "blindsearch/kernels.hpp"
#include "blindsearch/rng.hpp"

namespace blindsearch {

PhotonSeries::PhotonSeries(std::vector<double> times, double span)
    : times_(std::move(times)), span_(span) {
    if (times_.empty()) throw std::invalid_argument("photon series is empty");
    if (!(span_ > 0.0) || !std::isfinite(span_)) {
        throw std::invalid_argument("observation span must be positive and finite");
    }
    std::sort(times_.begin(), times_.end());
    if (!(times_.front() >= 0.0) || !(times_.back() <= span_)) {
        throw std::invalid_argument("arrival times must lie in [0, T]");
    }
    half_squares_.resize(times_.size());
    std::transform(times_.begin(), times_.end(), half_squares_.begin(),
                   [](double t) { return 0.5 * t * t; });
}

BlockLayout make_block_layout(const PhotonSeries& photons, int kappa) {
    if (kappa < 0 || kappa > 30) throw std::invalid_argument("block exponent out of range");
    const std::size_t blocks = std::size_t{1} << kappa;
    BlockLayout layout{kappa, std::vector<std::size_t>(blocks + 1)};
    const auto t = photons.times();
    layout.offsets.front() = 0;
    for (std::size_t k = 1; k < blocks; ++k) {
        const double edge = photons.span() * static_cast<double>(k) / static_cast<double>(blocks);
        layout.offsets[k] =
            static_cast<std::size_t>(std::lower_bound(t.begin(), t.end(), edge) - t.begin());
    }
    layout.offsets.back() = t.size();
    return layout;
}

double rayleigh_power(const PhotonSeries& photons, FreqDrift fd) {
    if (photons.size() == 0) throw std::invalid_argument("photon series is empty");
    const auto s = kernels::phase_sum(photons.times(), photons.half_squares(), fd.omega, fd.omegadot);
    return 2.0 / static_cast<double>(photons.size()) * s.norm();
}

double blocked_power(const PhotonSeries& photons, FreqDrift fd, const BlockLayout& layout) {
    if (photons.size() == 0) throw std::invalid_argument("photon series is empty");
    const auto t = photons.times();
    const auto h = photons.half_squares();
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < layout.offsets.size(); ++k) {
        const std::size_t lo = layout.offsets[k];
        const std::size_t n = layout.offsets[k + 1] - lo;
        if (n == 0) continue;
        total += kernels::phase_sum(t.subspan(lo, n), h.subspan(lo, n), fd.omega, fd.omegadot).norm();
    }
    return 2.0 / static_cast<double>(photons.size()) * total;
}

double blocked_power(const PhotonSeries& photons, FreqDrift fd, int kappa) {
    if (kappa == 0) return rayleigh_power(photons, fd);
    return blocked_power(photons, fd, make_block_layout(photons, kappa));
}

double chi2_2_sf(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("chi2_2_sf requires x >= 0");
    return std::exp(-0.5 * x);
}

double chi2_2_cdf(double x) {
    if (!(x >= 0.0)) throw std::invalid_argument("chi2_2_cdf requires x >= 0");
    return -std::expm1(-0.5 * x);
}

double chi2_2_quantile(double p) {
    if (!(p >= 0.0) || !(p < 1.0)) throw std::invalid_argument("chi2_2_quantile requires 0 <= p < 1");
    return -2.0 * std::log1p(-p);
}

PhotonSeries simulate_photons(const SignalSpec& spec, std::uint64_t seed) {
    if (!(spec.theta >= 0.0) || !(spec.theta < 1.0)) {
        throw std::invalid_argument("modulation theta must lie in [0, 1)");
    }
    if (spec.photons == 0) throw std::invalid_argument("photon count must be >= 1");
    if (!(spec.span > 0.0)) throw std::invalid_argument("span must be positive");

    Rng rng(seed);
    std::vector<double> times;
    times.reserve(spec.photons);
    const double two_pi = 2.0 * std::numbers::pi;
    while (times.size() < spec.photons) {
        const double t = spec.span * rng.uniform();
        if (spec.theta == 0.0) {
            times.push_back(t);
            continue;
        }
        double phi = spec.freq.omega * t + spec.freq.omegadot * 0.5 * t * t;
        phi -= std::nearbyint(phi);
        const double accept = (1.0 + spec.theta * std::sin(two_pi * phi)) / (1.0 + spec.theta);
        if (rng.uniform() < accept) times.push_back(t);
    }
    return PhotonSeries(std::move(times), spec.span);
}

namespace {

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double parse_double(std::string_view s, std::size_t line_no) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
        throw FormatError("line " + std::to_string(line_no) + ": not a number: '" + std::string(s) + "'");
    }
    return v;
}

}  // namespace

PhotonSeries read_photons(std::istream& in, std::optional<double> span_override) {
    std::vector<double> times;
    std::optional<double> header_span;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view s = trim(line);
        if (s.empty()) continue;
        if (s.front() == '#') {
            std::string_view body = trim(s.substr(1));
            if (body.starts_with("T=")) header_span = parse_double(trim(body.substr(2)), line_no);
            continue;
        }
        times.push_back(parse_double(s, line_no));
    }
    const std::optional<double> span = span_override ? span_override : header_span;
    if (!span) throw FormatError("photon file lacks '# T=<seconds>' and no span was given");
    if (times.empty()) throw FormatError("photon file contains no arrival times");
    try {
        return PhotonSeries(std::move(times), *span);
    } catch (const std::invalid_argument& e) {
        throw FormatError(e.what());
    }
}

PhotonSeries read_photon_file(const std::string& path, std::optional<double> span_override) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open photon file: " + path);
    return read_photons(in, span_override);
}

void write_photons(std::ostream& out, const PhotonSeries& photons,
                   const std::vector<std::string>& comments) {
    char buf[64];
    for (const auto& c : comments) out << "# " << c << '\n';
    auto put = [&](double v) {
        const auto res = std::to_chars(buf, buf + sizeof buf, v);
        out.write(buf, res.ptr - buf);
    };
    out << "# T=";
    put(photons.span());
    out << '\n';
    for (double t : photons.times()) {
        put(t);
        out << '\n';
    }
}

void write_photon_file(const std::string& path, const PhotonSeries& photons,
                       const std::vector<std::string>& comments) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write photon file: " + path);
    write_photons(out, photons, comments);
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace blindsearch
