#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "blindsearch/fit.hpp"
#include "blindsearch/pulsar.hpp"
#include "blindsearch/stats.hpp"

namespace blindsearch {

/// Observation span of the paper-scale example (seconds).
inline constexpr double kFullSpan = 1205197.0;
/// Photon count of the paper-scale example.
inline constexpr std::size_t kFullPhotons = 1072;
/// Bonferroni threshold at alpha = 0.05 over 1e9 hypotheses.
double full_scale_q_reject();

/// Settings shared by the pulsar cost/power experiments.
struct PulsarExperiment {
    GridSpec grid;
    double span = kFullSpan / 32.0;
    std::size_t photons = kFullPhotons;
    double q_train_quantile = 0.999;
    std::size_t num_paths = 100000;
    double q_reject = 0.0;       ///< rejection threshold for power
    std::size_t cost_sims = 20;  ///< global-null datasets used for the cost estimate
    int threads = 0;
};

/// Desk-scale configuration: span T/32, G = 5, oversampling 3, drift box
/// [-5e-11, 0], and a frequency band sized to about 1e6 leaves so that a
/// naive sweep stays affordable. q_reject is the full-scale threshold.
PulsarExperiment desk_scale_experiment();

/// Default tradeoff grid of lambda values.
std::vector<double> default_lambda_grid();

/// Signal strengths of the power study.
std::vector<double> default_theta_grid();

struct TradeoffPoint {
    double lambda = 0.0;
    double theta = 0.0;
    double cost_fraction = 0.0;   ///< mean null-data cost / naive cost
    double power_fraction = 0.0;  ///< search successes / naive successes (NaN if none)
    double cost_se = 0.0;
    double power_se = 0.0;
    std::size_t n_sims = 0;
    std::size_t naive_successes = 0;
    std::size_t search_successes = 0;
};

/// For each lambda: fit a strategy from one shared global-null path set,
/// measure its cost on `cost_sims` global-null datasets (full tree), and its
/// power on `n_sims` signal injections per theta with a uniformly random true
/// (omega, omegadot) in the box. A trial succeeds when a detection lies within
/// 1/T in frequency and 1/T^2 in drift of the truth; the naive baseline uses
/// the same datasets. Throws std::invalid_argument on empty grids.
std::vector<TradeoffPoint> estimate_tradeoff(const std::vector<double>& lambdas, const std::vector<double>& thetas,
                                             const PulsarExperiment& experiment, std::size_t n_sims,
                                             std::uint64_t seed);

/// Same as above with pre-fitted strategies (one per lambda, same order).
std::vector<TradeoffPoint> estimate_tradeoff(const std::vector<Strategy>& strategies, const std::vector<double>& thetas,
                                             const PulsarExperiment& experiment, std::size_t n_sims,
                                             std::uint64_t seed);

/// Fits one strategy per lambda from a single global-null path set.
std::vector<Strategy> fit_pulsar_strategies(const std::vector<double>& lambdas, const PulsarExperiment& experiment,
                                            std::uint64_t seed);

struct PowerEstimate {
    double power = 0.0;
    double std_error = 0.0;
    std::size_t successes = 0;
    std::size_t sims = 0;
};

/// Naive-search power at the true parameters: fraction of simulations in
/// which the Rayleigh power evaluated exactly at the injected (omega,
/// omegadot) reaches q_reject. The truth is drawn uniformly from `box`.
PowerEstimate naive_power_check(double theta, std::size_t photons, double q_reject, std::size_t n_sims,
                                std::uint64_t seed, double span = kFullSpan, const GridSpec& box = {1.0, 40.0});

/// lambda, cost_fraction, power_fraction, cost_se, power_se, n_sims, theta.
void write_tradeoff_csv(std::ostream& out, const std::vector<TradeoffPoint>& points);
std::vector<TradeoffPoint> read_tradeoff_csv(std::istream& in);

}  // namespace blindsearch
