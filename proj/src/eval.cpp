#include "blindsearch/eval.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "blindsearch/csv.hpp"
#include "blindsearch/engine.hpp"
#include "blindsearch/parallel.hpp"
#include "blindsearch/rng.hpp"

namespace blindsearch {

double full_scale_q_reject() { return chi2_2_quantile(1.0 - 0.05 / 1e9); }

PulsarExperiment desk_scale_experiment() {
    PulsarExperiment e;
    e.grid = GridSpec{1.0, 1.035, -5e-11, 0.0, 5, 3.0, false};
    e.span = kFullSpan / 32.0;
    e.q_reject = full_scale_q_reject();
    return e;
}

std::vector<double> default_lambda_grid() { return {0.0, 1e-3, 3e-3, 1e-2, 2e-2, 3e-2, 5e-2, 0.1, 0.2, 0.5}; }

std::vector<double> default_theta_grid() { return {0.24, 0.26, 0.29, 0.34}; }

namespace {

FreqDrift draw_truth(const GridSpec& box, Rng& rng) {
    FreqDrift fd;
    fd.omega = box.omega_min + (box.omega_max - box.omega_min) * rng.uniform();
    fd.omegadot = box.omegadot_min + (box.omegadot_max - box.omegadot_min) * rng.uniform();
    return fd;
}

bool within(const FreqDrift& a, const FreqDrift& b, double freq_radius, double drift_radius) {
    return std::abs(a.omega - b.omega) <= freq_radius && std::abs(a.omegadot - b.omegadot) <= drift_radius;
}

struct MeanSe {
    double mean;
    double se;
};

MeanSe mean_se(const std::vector<double>& xs) {
    const double n = static_cast<double>(xs.size());
    double sum = 0.0;
    for (double x : xs) sum += x;
    const double mean = sum / n;
    double ss = 0.0;
    for (double x : xs) ss += (x - mean) * (x - mean);
    const double var = xs.size() > 1 ? ss / (n - 1.0) : 0.0;
    return {mean, std::sqrt(var / n)};
}

}  // namespace

std::vector<Strategy> fit_pulsar_strategies(const std::vector<double>& lambdas, const PulsarExperiment& experiment,
                                            std::uint64_t seed) {
    if (lambdas.empty()) throw std::invalid_argument("lambda grid is empty");
    const PulsarGrid grid(experiment.grid, experiment.span);
    const PulsarPathModel model(grid, experiment.photons);
    const PathSet paths = simulate_paths(model, experiment.num_paths, derive_seed(seed, {1}), experiment.threads);
    const double q_train = chi2_2_quantile(experiment.q_train_quantile);
    std::vector<Strategy> out;
    for (double lambda : lambdas) {
        FitConfig cfg{grid.tree(), lambda, q_train, experiment.num_paths, seed};
        out.push_back(fit_strategy(paths, cfg));
    }
    return out;
}

std::vector<TradeoffPoint> estimate_tradeoff(const std::vector<double>& lambdas, const std::vector<double>& thetas,
                                             const PulsarExperiment& experiment, std::size_t n_sims,
                                             std::uint64_t seed) {
    return estimate_tradeoff(fit_pulsar_strategies(lambdas, experiment, seed), thetas, experiment, n_sims, seed);
}

std::vector<TradeoffPoint> estimate_tradeoff(const std::vector<Strategy>& strategies, const std::vector<double>& thetas,
                                             const PulsarExperiment& experiment, std::size_t n_sims,
                                             std::uint64_t seed) {
    if (strategies.empty()) throw std::invalid_argument("lambda grid is empty");
    if (thetas.empty()) throw std::invalid_argument("theta grid is empty");
    if (n_sims == 0) throw std::invalid_argument("need at least one simulation");
    const PulsarGrid grid(experiment.grid, experiment.span);
    const TreeConfig& tree = grid.tree();
    for (const auto& s : strategies) {
        if (!(s.tree() == tree)) throw std::invalid_argument("strategy tree does not match the experiment grid");
    }
    const std::size_t n_lambda = strategies.size();
    const int workers = worker_count(experiment.threads);
    const double naive = naive_cost(tree);
    const double freq_radius = 1.0 / experiment.span;
    const double drift_radius = 1.0 / (experiment.span * experiment.span);

    // Cost under the global null, full tree.
    std::vector<std::vector<double>> costs(n_lambda, std::vector<double>(experiment.cost_sims));
    parallel_chunks(experiment.cost_sims, experiment.cost_sims, workers, [&](std::size_t, std::size_t b, std::size_t e) {
        for (std::size_t c = b; c < e; ++c) {
            const SignalSpec null_spec{0.0, {}, experiment.photons, experiment.span};
            const PulsarEvaluator eval(simulate_photons(null_spec, derive_seed(seed, {2, c})), grid);
            SearchOptions opt;
            opt.q_reject = experiment.q_reject;
            for (std::size_t k = 0; k < n_lambda; ++k) {
                costs[k][c] = run_search(strategies[k], eval, opt).total_cost / naive;
            }
        }
    });

    std::vector<TradeoffPoint> points;
    for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
        const double theta = thetas[ti];
        std::vector<unsigned char> naive_hit(n_sims, 0);
        std::vector<std::vector<unsigned char>> search_hit(n_lambda, std::vector<unsigned char>(n_sims, 0));
        parallel_chunks(n_sims, n_sims, workers, [&](std::size_t, std::size_t b, std::size_t e) {
            for (std::size_t r = b; r < e; ++r) {
                Rng rng(derive_seed(seed, {3, ti, r}));
                const FreqDrift truth = draw_truth(experiment.grid, rng);
                const SignalSpec spec{theta, truth, experiment.photons, experiment.span};
                const PulsarEvaluator eval(simulate_photons(spec, rng.engine()()), grid);
                // Naive success: any leaf inside the success radius reaches
                // the threshold (the naive sweep observes all of them).
                for (const NodeId& leaf : grid.leaves_near(truth, freq_radius, drift_radius)) {
                    if (eval.evaluate(leaf) >= experiment.q_reject) {
                        naive_hit[r] = 1;
                        break;
                    }
                }
                SearchOptions opt;
                opt.q_reject = experiment.q_reject;
                opt.roots = grid.roots_near(truth, freq_radius, drift_radius);
                for (std::size_t k = 0; k < n_lambda; ++k) {
                    const SearchOutcome out = run_search(strategies[k], eval, opt);
                    for (const auto& d : out.detections) {
                        if (within(grid.params(d.leaf), truth, freq_radius, drift_radius)) {
                            search_hit[k][r] = 1;
                            break;
                        }
                    }
                }
            }
        });

        for (std::size_t k = 0; k < n_lambda; ++k) {
            TradeoffPoint p;
            p.lambda = strategies[k].lambda();
            p.theta = theta;
            p.n_sims = n_sims;
            const MeanSe c = mean_se(costs[k]);
            p.cost_fraction = c.mean;
            p.cost_se = c.se;
            double sh = 0.0, sn = 0.0, shh = 0.0, snn = 0.0, shn = 0.0;
            for (std::size_t r = 0; r < n_sims; ++r) {
                const double h = search_hit[k][r];
                const double nv = naive_hit[r];
                sh += h;
                sn += nv;
                shh += h * h;
                snn += nv * nv;
                shn += h * nv;
            }
            p.naive_successes = static_cast<std::size_t>(sn);
            p.search_successes = static_cast<std::size_t>(sh);
            if (sn > 0.0) {
                const double n = static_cast<double>(n_sims);
                const double mh = sh / n, mn = sn / n;
                const double ratio = mh / mn;
                const double var_h = shh / n - mh * mh;
                const double var_n = snn / n - mn * mn;
                const double cov = shn / n - mh * mn;
                // Delta method for a ratio of paired means.
                const double var = (var_h - 2.0 * ratio * cov + ratio * ratio * var_n) / (mn * mn * n);
                p.power_fraction = ratio;
                p.power_se = std::sqrt(std::max(var, 0.0));
            } else {
                p.power_fraction = std::numeric_limits<double>::quiet_NaN();
                p.power_se = std::numeric_limits<double>::quiet_NaN();
            }
            points.push_back(p);
        }
    }
    return points;
}

PowerEstimate naive_power_check(double theta, std::size_t photons, double q_reject, std::size_t n_sims,
                                std::uint64_t seed, double span, const GridSpec& box) {
    if (n_sims == 0) throw std::invalid_argument("need at least one simulation");
    std::size_t hits = 0;
    for (std::size_t r = 0; r < n_sims; ++r) {
        Rng rng(derive_seed(seed, {r}));
        const FreqDrift truth = draw_truth(box, rng);
        const PhotonSeries series = simulate_photons({theta, truth, photons, span}, rng.engine()());
        if (rayleigh_power(series, truth) >= q_reject) ++hits;
    }
    const double n = static_cast<double>(n_sims);
    const double p = static_cast<double>(hits) / n;
    return {p, std::sqrt(p * (1.0 - p) / n), hits, n_sims};
}

void write_tradeoff_csv(std::ostream& out, const std::vector<TradeoffPoint>& points) {
    csv::write_row(out, {"lambda", "cost_fraction", "power_fraction", "cost_se", "power_se", "n_sims", "theta"});
    for (const auto& p : points) {
        csv::write_row(out, {csv::format(p.lambda), csv::format(p.cost_fraction), csv::format(p.power_fraction),
                             csv::format(p.cost_se), csv::format(p.power_se), csv::format(std::uint64_t{p.n_sims}),
                             csv::format(p.theta)});
    }
}

std::vector<TradeoffPoint> read_tradeoff_csv(std::istream& in) {
    const csv::Table t = csv::read(in);
    const std::size_t c_lambda = t.column("lambda"), c_cost = t.column("cost_fraction"),
                      c_power = t.column("power_fraction"), c_cse = t.column("cost_se"), c_pse = t.column("power_se"),
                      c_n = t.column("n_sims"), c_theta = t.column("theta");
    std::vector<TradeoffPoint> out;
    for (const auto& row : t.rows) {
        TradeoffPoint p;
        p.lambda = csv::parse_double(row[c_lambda]);
        p.cost_fraction = csv::parse_double(row[c_cost]);
        p.power_fraction = csv::parse_double(row[c_power]);
        p.cost_se = csv::parse_double(row[c_cse]);
        p.power_se = csv::parse_double(row[c_pse]);
        p.n_sims = csv::parse_uint(row[c_n]);
        p.theta = csv::parse_double(row[c_theta]);
        out.push_back(p);
    }
    return out;
}

}  // namespace blindsearch
