#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "blindsearch/csv.hpp"
#include "blindsearch/engine.hpp"
#include "blindsearch/eval.hpp"
#include "blindsearch/fit.hpp"
#include "blindsearch/io.hpp"
#include "blindsearch/kernels.hpp"
#include "blindsearch/oracle.hpp"
#include "blindsearch/pulsar.hpp"
#include "blindsearch/stats.hpp"
#include "blindsearch/version.hpp"

namespace blindsearch {

namespace {

namespace fs = std::filesystem;

// Bad flag values detected after parsing.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DegenerateFit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string value_text(double v) { return std::isnan(v) ? std::string() : csv::format(v); }
std::string value_text(const std::string& v) { return v; }
std::string value_text(bool v) { return v ? "true" : "false"; }
std::string value_text(const std::vector<double>& v) {
    std::string out;
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + csv::format(v[i]);
    return out;
}
template <class T>
    requires std::is_integral_v<T>
std::string value_text(T v) {
    return std::to_string(v);
}

// CLI11 renders captured defaults at stream precision; store exact text so
// the manifest can reproduce a run.
template <class T>
CLI::Option* opt(CLI::App* sub, const std::string& name, T& var, const std::string& desc = "") {
    CLI::Option* o = sub->add_option(name, var, desc);
    o->default_str(value_text(var));
    return o;
}

CLI::Option* flag(CLI::App* sub, const std::string& name, bool& var, const std::string& desc) {
    CLI::Option* o = sub->add_flag(name, var, desc);
    o->default_str(value_text(var));
    return o;
}

struct GridOptions {
    GridSpec spec;
    std::vector<double> costs;
};

void add_grid_options(CLI::App* sub, GridOptions& g) {
    opt(sub, "--omega-min", g.spec.omega_min, "lowest search frequency (Hz)");
    opt(sub, "--omega-max", g.spec.omega_max, "highest search frequency (Hz)");
    opt(sub, "--omegadot-min", g.spec.omegadot_min, "lowest drift (s^-2)");
    opt(sub, "--omegadot-max", g.spec.omegadot_max, "highest drift (s^-2)");
    opt(sub, "--layers", g.spec.layers, "number of layers G");
    opt(sub, "--oversampling", g.spec.oversampling, "grid points per 1/T and 1/T^2");
    flag(sub, "--frequency-only", g.spec.frequency_only, "binary frequency-only tree, drift fixed");
    opt(sub, "--costs", g.costs, "per-layer observation costs (default 1 each)")->delimiter(',');
}

std::string timestamp() {
    std::time_t t = std::time(nullptr);
    if (const char* sde = std::getenv("SOURCE_DATE_EPOCH")) t = static_cast<std::time_t>(std::strtoll(sde, nullptr, 10));
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::ostringstream os;
    os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
    return os.str();
}

// key=value text of the active command, readable back through --config.
std::string resolved_config(const CLI::App& app) {
    std::ostringstream os;
    for (const CLI::App* sub : app.get_subcommands()) {
        os << '[' << sub->get_name() << "]\n";
        for (const CLI::Option* o : sub->get_options()) {
            if (o->get_lnames().empty() || o->get_lnames().front() == "help") continue;
            std::string v;
            if (o->count() > 0) {
                for (const auto& r : o->results()) v += (v.empty() ? "" : ",") + r;
            } else {
                v = o->get_default_str();
            }
            if (v.empty()) continue;
            os << o->get_lnames().front() << "=\"" << v << "\"\n";
        }
    }
    return os.str();
}

void write_manifest(const fs::path& path, const CLI::App& app, const std::string& command, std::uint64_t seed,
                    const std::vector<std::string>& inputs, const std::vector<std::string>& outputs) {
    nlohmann::json j;
    j["command"] = command;
    j["artifact_version"] = kVersion;
    j["strategy_format_version"] = kStrategyFormatVersion;
    j["seed"] = seed;
    j["inputs"] = inputs;
    j["outputs"] = outputs;
    j["config"] = resolved_config(app);
    j["kernel"] = kernels::isa_name(kernels::active_isa());
    j["timestamp"] = timestamp();
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write manifest: " + path.string());
    out << j.dump(2) << '\n';
}

std::ofstream open_out(const fs::path& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path.string());
    return out;
}

void close_out(std::ofstream& out, const fs::path& path) {
    out.close();
    if (!out) throw std::runtime_error("write failed: " + path.string());
}

fs::path manifest_for(const std::string& out) { return fs::path(out + ".manifest.json"); }

// --- simulate --------------------------------------------------------------

struct SimulateOptions {
    double theta = 0.0;
    double omega = 9.761175993;
    double omegadot = -8.827879e-12;
    std::size_t photons = kFullPhotons;
    double span = kFullSpan;
    std::uint64_t seed = 1;
    std::string out;
};

int cmd_simulate(const SimulateOptions& o, const CLI::App& app, std::ostream& log) {
    if (o.photons == 0) throw UsageError("--photons must be positive");
    if (!(o.span > 0.0) || !std::isfinite(o.span)) throw UsageError("--span must be positive");
    if (!(o.theta >= 0.0 && o.theta < 1.0)) throw UsageError("--theta must lie in [0, 1)");
    const PhotonSeries series = simulate_photons({o.theta, {o.omega, o.omegadot}, o.photons, o.span}, o.seed);
    write_photon_file(o.out, series);
    write_manifest(manifest_for(o.out), app, "simulate", o.seed, {}, {o.out});
    log << "wrote " << series.size() << " photons to " << o.out << '\n';
    return kExitOk;
}

// --- fit -------------------------------------------------------------------

struct FitOptions {
    double lambda = 0.0;
    std::size_t paths = 500000;
    double qtrain_quantile = 0.999;
    GridOptions grid;
    double span = kFullSpan;
    std::size_t photons = kFullPhotons;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
};

int cmd_fit(const FitOptions& o, const CLI::App& app, std::ostream& log) {
    if (!(o.lambda >= 0.0)) throw UsageError("--lambda must be >= 0");
    if (o.paths < 2) throw UsageError("--paths must be at least 2");
    if (!(o.qtrain_quantile >= 0.0 && o.qtrain_quantile < 1.0)) throw UsageError("--qtrain-quantile must lie in [0, 1)");
    const PulsarGrid grid(o.grid.spec, o.span, o.grid.costs);
    const PulsarPathModel model(grid, o.photons);
    // Same path seeds as the evaluate command.
    const PathSet paths = simulate_paths(model, o.paths, derive_seed(o.seed, {1}), o.threads);
    const Strategy s = fit_strategy(paths, {grid.tree(), o.lambda, chi2_2_quantile(o.qtrain_quantile), o.paths, o.seed});
    for (const auto& d : s.diagnostics) log << "warning: " << d << '\n';
    if (s.leaf_exceedances == 0) {
        std::ostringstream msg;
        msg << "degenerate fit: none of the " << o.paths << " training paths reaches q_train = "
            << s.q_train() << " at the leaf layer.\n"
            << "Simulating under the global null, q_train can be set to a high null quantile; as a rule of thumb, "
               "a target cost fraction beta suggests the 1 - beta quantile (beta = 1e-3 gives "
            << threshold_rule_of_thumb(1e-3) << "). Lower --qtrain-quantile or raise --paths so that "
            << "some paths exceed the threshold.";
        throw DegenerateFit(msg.str());
    }
    write_strategy_file(o.out, {s, GridBinding{o.grid.spec, o.span}});
    write_manifest(manifest_for(o.out), app, "fit", o.seed, {}, {o.out});
    log << "fitted strategy (lambda " << s.lambda() << ", q_train " << s.q_train() << ", " << s.leaf_exceedances
        << " leaf exceedances) written to " << o.out << '\n';
    return kExitOk;
}

// --- search / naive --------------------------------------------------------

struct SearchOptionsCli {
    std::string strategy;
    std::string photons;
    double span = 0.0;  // 0: from the photon file header
    double qreject = std::numeric_limits<double>::quiet_NaN();
    double alpha = std::numeric_limits<double>::quiet_NaN();
    double n_effective = std::numeric_limits<double>::quiet_NaN();
    bool emit_observed = false;
    std::string out_dir = ".";
    int threads = 0;
    GridOptions grid;  // naive only
};

double resolve_q_reject(const SearchOptionsCli& o, const TreeConfig& tree) {
    if (!std::isnan(o.qreject)) return o.qreject;
    const double alpha = std::isnan(o.alpha) ? 0.05 : o.alpha;
    if (!(alpha > 0.0 && alpha < 1.0)) throw UsageError("--alpha must lie in (0, 1)");
    if (!std::isnan(o.n_effective)) {
        if (!(o.n_effective >= 1.0)) throw UsageError("--n-effective must be at least 1");
        return chi2_2_quantile(1.0 - alpha / o.n_effective);
    }
    return default_q_reject(tree, alpha);
}

PhotonSeries load_photons(const SearchOptionsCli& o) {
    std::optional<double> span;
    if (o.span > 0.0) span = o.span;
    return read_photon_file(o.photons, span);
}

void write_outcome(const SearchOptionsCli& o, const PulsarGrid& grid, const SearchOutcome& outcome,
                   std::vector<std::string>& outputs) {
    const fs::path dir(o.out_dir);
    fs::create_directories(dir);
    auto emit = [&](const std::string& name, auto&& writer) {
        const fs::path p = dir / name;
        auto f = open_out(p);
        writer(f);
        close_out(f, p);
        outputs.push_back(p.string());
    };
    emit("detections.csv", [&](std::ostream& f) { write_detections_csv(f, grid, outcome); });
    emit("summary.csv", [&](std::ostream& f) { write_summary_csv(f, grid.tree(), outcome); });
    if (o.emit_observed) emit("observed.csv", [&](std::ostream& f) { write_observed_csv(f, grid, outcome); });
}

void report(std::ostream& log, const TreeConfig& tree, const SearchOutcome& outcome, double q) {
    log << "q_reject " << q << ", detections " << outcome.detections.size() << ", cost " << outcome.total_cost
        << " (" << outcome.total_cost / naive_cost(tree) << " of naive)\n";
}

int cmd_search(const SearchOptionsCli& o, const CLI::App& app, std::ostream& log) {
    const StrategyDocument doc = read_strategy_file(o.strategy);
    if (!doc.grid) throw FormatError("strategy file has no pulsar grid; fit it with the fit command");
    PhotonSeries photons = load_photons(o);
    if (photons.span() != doc.grid->span) {
        throw FormatError("strategy/grid mismatch: strategy was fitted for span " + csv::format(doc.grid->span) +
                          " s, photon file has span " + csv::format(photons.span()) + " s");
    }
    PulsarGrid grid(doc.grid->spec, doc.grid->span, doc.strategy.tree().costs());
    if (!(grid.tree() == doc.strategy.tree())) throw FormatError("strategy/grid mismatch: tree shapes differ");
    const PulsarEvaluator eval(std::move(photons), grid);
    SearchOptions opt;
    opt.q_reject = resolve_q_reject(o, grid.tree());
    opt.keep_log = o.emit_observed;
    opt.threads = o.threads;
    const SearchOutcome outcome = run_search(doc.strategy, eval, opt);
    std::vector<std::string> outputs;
    write_outcome(o, grid, outcome, outputs);
    write_manifest(fs::path(o.out_dir) / "manifest.json", app, "search", doc.strategy.seed, {o.strategy, o.photons},
                   outputs);
    report(log, grid.tree(), outcome, opt.q_reject);
    return kExitOk;
}

int cmd_naive(const SearchOptionsCli& o, const CLI::App& app, std::ostream& log) {
    PhotonSeries photons = load_photons(o);
    const double span = photons.span();
    const PulsarEvaluator eval(std::move(photons), PulsarGrid(o.grid.spec, span, o.grid.costs));
    const PulsarGrid& grid = eval.grid();
    SearchOptions opt;
    opt.q_reject = resolve_q_reject(o, grid.tree());
    opt.keep_log = o.emit_observed;
    opt.threads = o.threads;
    const SearchOutcome outcome = naive_search(eval, opt);
    std::vector<std::string> outputs;
    write_outcome(o, grid, outcome, outputs);
    write_manifest(fs::path(o.out_dir) / "manifest.json", app, "naive", 0, {o.photons}, outputs);
    report(log, grid.tree(), outcome, opt.q_reject);
    return kExitOk;
}

// --- evaluate --------------------------------------------------------------

struct EvaluateOptions {
    std::vector<double> lambdas = default_lambda_grid();
    std::vector<double> thetas = default_theta_grid();
    std::size_t sims = 1000;
    std::size_t cost_sims = 20;
    std::size_t paths = 100000;
    double qtrain_quantile = 0.999;
    double qreject = full_scale_q_reject();
    GridOptions grid{desk_scale_experiment().grid, {}};
    double span = kFullSpan / 32.0;
    std::size_t photons = kFullPhotons;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
};

int cmd_evaluate(const EvaluateOptions& o, const CLI::App& app, std::ostream& log) {
    if (o.lambdas.empty()) throw UsageError("--lambdas is empty");
    if (o.thetas.empty()) throw UsageError("--thetas is empty");
    if (o.sims == 0 || o.cost_sims == 0) throw UsageError("--sims and --cost-sims must be positive");
    if (o.paths < 2) throw UsageError("--paths must be at least 2");
    PulsarExperiment exp;
    exp.grid = o.grid.spec;
    exp.span = o.span;
    exp.photons = o.photons;
    exp.q_train_quantile = o.qtrain_quantile;
    exp.num_paths = o.paths;
    exp.q_reject = o.qreject;
    exp.cost_sims = o.cost_sims;
    exp.threads = o.threads;
    const auto points = estimate_tradeoff(o.lambdas, o.thetas, exp, o.sims, o.seed);
    auto f = open_out(o.out);
    write_tradeoff_csv(f, points);
    close_out(f, o.out);
    write_manifest(manifest_for(o.out), app, "evaluate", o.seed, {}, {o.out});
    for (const auto& p : points) {
        log << "theta " << p.theta << " lambda " << p.lambda << ": cost " << p.cost_fraction << " power "
            << p.power_fraction << " (" << p.search_successes << "/" << p.naive_successes << ")\n";
    }
    return kExitOk;
}

// --- oracle ----------------------------------------------------------------

struct OracleOptions {
    std::string model = "gaussian-chain";
    double rho = 0.7;
    double lambda = 0.02;
    double q = 2.0;
    std::size_t paths = 100000;
    int layers = 3;
    Index roots = 4;
    Index branching = 4;
    int levels = 200;
    double z_max = 4.0;
    std::size_t sims = 10000;
    std::uint64_t seed = 1;
    int threads = 0;
    std::string out;
};

std::string describe_regions(const std::vector<DecisionRegion>& regions) {
    std::ostringstream os;
    for (std::size_t i = 0; i < regions.size(); ++i) {
        if (i) os << "  ";
        if (std::isinf(regions[i].from))
            os << "(-inf";
        else
            os << "[" << regions[i].from;
        os << ") -> " << regions[i].action;
    }
    return os.str();
}

// Regions of an oracle decision table over the discrete levels; a region
// starts at the first level taking its action.
std::vector<DecisionRegion> oracle_regions(const std::vector<double>& levels, const std::vector<int>& decision) {
    std::vector<DecisionRegion> out;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        if (out.empty()) {
            out.push_back({-std::numeric_limits<double>::infinity(), decision[k]});
        } else if (decision[k] != out.back().action) {
            out.push_back({levels[k], decision[k]});
        }
    }
    return out;
}

int cmd_oracle(const OracleOptions& o, const CLI::App& app, std::ostream& log) {
    if (o.model != "gaussian-chain") throw UsageError("unknown --model '" + o.model + "'");
    if (!(o.lambda >= 0.0)) throw UsageError("--lambda must be >= 0");
    if (o.paths < 2) throw UsageError("--paths must be at least 2");
    const TreeConfig tree = TreeConfig::uniform(o.layers, o.roots, o.branching);
    const DiscreteChainModel model = gaussian_chain(tree, o.rho, o.levels, o.z_max);
    const OracleResult oracle = exact_dp_oracle(model, o.lambda, o.q);
    const PathSet paths = simulate_paths(model, o.paths, derive_seed(o.seed, {1}), o.threads);
    const Strategy fitted = fit_strategy(paths, {tree, o.lambda, o.q, o.paths, o.seed});
    const double exact = policy_payoff_exact(model, o.lambda, o.q,
                                             [&](int l, double x) { return fitted.decide(l, x); });
    const PayoffEstimate mc = policy_payoff_mc(model, fitted, o.lambda, o.q, o.sims, derive_seed(o.seed, {2}));

    std::ostringstream rep;
    rep << std::setprecision(10);
    rep << "model gaussian-chain rho=" << o.rho << " G=" << o.layers << " n1=" << o.roots << " b=" << o.branching
        << " levels=" << o.levels << " lambda=" << o.lambda << " q=" << o.q << " paths=" << o.paths << '\n';
    rep << "layer\tsource\tregions (start -> action)\n";
    for (int l = 1; l < o.layers; ++l) {
        rep << l << "\toracle\t" << describe_regions(oracle_regions(model.levels(), oracle.decision[l - 1])) << '\n';
        rep << l << "\tfitted\t" << describe_regions(decision_regions(fitted, l)) << '\n';
    }
    rep << "oracle_payoff\t" << oracle.payoff << '\n';
    rep << "fitted_payoff_exact\t" << exact << '\n';
    rep << "fitted_payoff_mc\t" << mc.mean << " +- " << mc.std_error << " (" << mc.sims << " sims)\n";
    const double gap = oracle.payoff > 0.0 ? 1.0 - exact / oracle.payoff : 0.0;
    rep << "payoff_gap\t" << gap << '\n';
    log << rep.str();
    if (!o.out.empty()) {
        auto f = open_out(o.out);
        f << rep.str();
        close_out(f, o.out);
        write_manifest(manifest_for(o.out), app, "oracle", o.seed, {}, {o.out});
    }
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hierarchical blind search under computational-cost constraints", "blindsearch"};
    app.set_version_flag("--version", std::string("blindsearch ") + kVersion + " (strategy format " +
                                          std::to_string(kStrategyFormatVersion) + ", photon format 1)");
    app.set_config("--config", "", "key=value configuration file ([command] sections allowed)");
    app.require_subcommand(1);
    app.option_defaults()->always_capture_default();

    SimulateOptions sim;
    auto* s_sim = app.add_subcommand("simulate", "simulate a photon arrival file");
    opt(s_sim, "--theta", sim.theta, "pulsed fraction");
    opt(s_sim, "--omega", sim.omega, "signal frequency (Hz)");
    opt(s_sim, "--omegadot", sim.omegadot, "signal drift (s^-2)");
    opt(s_sim, "--photons", sim.photons, "photon count");
    opt(s_sim, "--span", sim.span, "observation span T (s)");
    opt(s_sim, "--seed", sim.seed);
    opt(s_sim, "--out", sim.out, "photon file to write")->required();

    FitOptions fit;
    auto* s_fit = app.add_subcommand("fit", "fit a search strategy under the global null");
    opt(s_fit, "--lambda", fit.lambda, "cost/power tradeoff");
    opt(s_fit, "--paths", fit.paths, "Monte Carlo training paths");
    opt(s_fit, "--qtrain-quantile", fit.qtrain_quantile, "null quantile used as training threshold");
    add_grid_options(s_fit, fit.grid);
    opt(s_fit, "--span", fit.span, "observation span T (s)");
    opt(s_fit, "--photons", fit.photons, "photons per simulated path dataset");
    opt(s_fit, "--seed", fit.seed);
    opt(s_fit, "--threads", fit.threads, "worker threads (0 = auto)");
    opt(s_fit, "--out", fit.out, "strategy JSON to write")->required();

    SearchOptionsCli search;
    auto* s_search = app.add_subcommand("search", "run a fitted strategy on a photon file");
    opt(s_search, "--strategy", search.strategy, "strategy JSON")->required();
    SearchOptionsCli naive;
    auto* s_naive = app.add_subcommand("naive", "exhaustive search over every leaf");
    add_grid_options(s_naive, naive.grid);
    for (auto [sub, o] : {std::pair{s_search, &search}, std::pair{s_naive, &naive}}) {
        opt(sub, "--photons", o->photons, "photon file")->required();
        opt(sub, "--span", o->span, "span override (s); default from the file header");
        auto* q = opt(sub, "--qreject", o->qreject, "rejection threshold");
        opt(sub, "--alpha", o->alpha, "family-wise level for the Bonferroni threshold")->excludes(q);
        opt(sub, "--n-effective", o->n_effective, "effective number of tests (default leaves/9)")->excludes(q);
        flag(sub, "--emit-observed", o->emit_observed, "also write the observed-node log");
        opt(sub, "--out-dir", o->out_dir, "output directory");
        opt(sub, "--threads", o->threads, "worker threads (0 = auto)");
    }

    EvaluateOptions ev;
    auto* s_ev = app.add_subcommand("evaluate", "cost/power tradeoff at desk scale");
    opt(s_ev, "--lambdas", ev.lambdas)->delimiter(',');
    opt(s_ev, "--thetas", ev.thetas)->delimiter(',');
    opt(s_ev, "--sims", ev.sims, "signal injections per theta");
    opt(s_ev, "--cost-sims", ev.cost_sims, "global-null datasets for the cost estimate");
    opt(s_ev, "--paths", ev.paths, "Monte Carlo training paths");
    opt(s_ev, "--qtrain-quantile", ev.qtrain_quantile);
    opt(s_ev, "--qreject", ev.qreject, "rejection threshold");
    add_grid_options(s_ev, ev.grid);
    opt(s_ev, "--span", ev.span, "observation span T (s)");
    opt(s_ev, "--photons", ev.photons, "photon count");
    opt(s_ev, "--seed", ev.seed);
    opt(s_ev, "--threads", ev.threads, "worker threads (0 = auto)");
    opt(s_ev, "--out", ev.out, "tradeoff CSV to write")->required();

    OracleOptions orc;
    auto* s_orc = app.add_subcommand("oracle", "compare the fitter with exact dynamic programming");
    opt(s_orc, "--model", orc.model);
    opt(s_orc, "--rho", orc.rho, "parent-child correlation");
    opt(s_orc, "--lambda", orc.lambda);
    opt(s_orc, "--q", orc.q, "leaf threshold");
    opt(s_orc, "--paths", orc.paths);
    opt(s_orc, "--layers", orc.layers);
    opt(s_orc, "--roots", orc.roots);
    opt(s_orc, "--branching", orc.branching);
    opt(s_orc, "--levels", orc.levels);
    opt(s_orc, "--z-max", orc.z_max);
    opt(s_orc, "--sims", orc.sims, "fresh simulations for the payoff estimate");
    opt(s_orc, "--seed", orc.seed);
    opt(s_orc, "--threads", orc.threads);
    opt(s_orc, "--out", orc.out, "also write the report here");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*s_sim) return cmd_simulate(sim, app, out);
        if (*s_fit) return cmd_fit(fit, app, out);
        if (*s_search) return cmd_search(search, app, out);
        if (*s_naive) return cmd_naive(naive, app, out);
        if (*s_ev) return cmd_evaluate(ev, app, out);
        if (*s_orc) return cmd_oracle(orc, app, out);
    } catch (const UsageError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DegenerateFit& e) {
        err << "error: " << e.what() << '\n';
        return kExitDegenerateFit;
    } catch (const StateSpaceTooLarge& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        // Format problems, unreadable inputs and unwritable outputs.
        err << "error: " << e.what() << '\n';
        return kExitData;
    }
    return kExitUsage;
}

}  // namespace blindsearch
