#include "blindsearch/io.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "blindsearch/csv.hpp"
#include "blindsearch/stats.hpp"

namespace blindsearch {

using nlohmann::json;

namespace {

json grid_to_json(const GridBinding& g) {
    return json{{"omega_min", g.spec.omega_min},
                {"omega_max", g.spec.omega_max},
                {"omegadot_min", g.spec.omegadot_min},
                {"omegadot_max", g.spec.omegadot_max},
                {"layers", g.spec.layers},
                {"oversampling", g.spec.oversampling},
                {"frequency_only", g.spec.frequency_only},
                {"span", g.span}};
}

GridBinding grid_from_json(const json& j) {
    GridBinding g;
    g.spec.omega_min = j.at("omega_min").get<double>();
    g.spec.omega_max = j.at("omega_max").get<double>();
    g.spec.omegadot_min = j.at("omegadot_min").get<double>();
    g.spec.omegadot_max = j.at("omegadot_max").get<double>();
    g.spec.layers = j.at("layers").get<int>();
    g.spec.oversampling = j.at("oversampling").get<double>();
    g.spec.frequency_only = j.at("frequency_only").get<bool>();
    g.span = j.at("span").get<double>();
    return g;
}

}  // namespace

void write_strategy(std::ostream& out, const StrategyDocument& doc) {
    const Strategy& s = doc.strategy;
    const TreeConfig& tree = s.tree();
    json j;
    j["format_version"] = kStrategyFormatVersion;
    j["tree"] = {{"G", tree.num_layers()},
                 {"n1", tree.root_count()},
                 {"branching", tree.branching()},
                 {"costs", tree.costs()}};
    j["lambda"] = s.lambda();
    j["q_train"] = s.q_train();
    json layers = json::array();
    const int G = tree.num_layers();
    for (int l = 1; l < G; ++l) {
        json actions = json::array();
        for (int t = l + 1; t <= G; ++t) {
            const MonotoneFn& f = s.continuation(l, t);
            actions.push_back({{"s", t}, {"breakpoints", f.breakpoints()}, {"levels", f.levels()}});
        }
        layers.push_back({{"layer", l}, {"actions", actions}});
    }
    j["layers"] = layers;
    j["seed"] = s.seed;
    j["num_paths"] = s.num_paths;
    j["leaf_exceedances"] = s.leaf_exceedances;
    j["diagnostics"] = s.diagnostics;
    if (doc.grid) j["grid"] = grid_to_json(*doc.grid);
    out << j.dump(2) << '\n';
}

StrategyDocument read_strategy(std::istream& in) {
    try {
        const json j = json::parse(in);
        const int version = j.at("format_version").get<int>();
        if (version != kStrategyFormatVersion)
            throw FormatError("unsupported strategy format_version " + std::to_string(version));
        const json& jt = j.at("tree");
        TreeConfig tree(jt.at("n1").get<Index>(), jt.at("branching").get<std::vector<Index>>(),
                        jt.at("costs").get<std::vector<double>>());
        if (jt.at("G").get<int>() != tree.num_layers()) throw FormatError("tree.G disagrees with tree.costs");
        const int G = tree.num_layers();

        std::vector<std::vector<MonotoneFn>> cont(static_cast<std::size_t>(G - 1));
        for (int l = 1; l < G; ++l) cont[l - 1].resize(static_cast<std::size_t>(G - l));
        std::vector<std::vector<bool>> seen(cont.size());
        for (std::size_t i = 0; i < cont.size(); ++i) seen[i].assign(cont[i].size(), false);

        for (const json& jl : j.at("layers")) {
            const int l = jl.at("layer").get<int>();
            if (l < 1 || l >= G) throw FormatError("layer " + std::to_string(l) + " out of range");
            for (const json& ja : jl.at("actions")) {
                const int t = ja.at("s").get<int>();
                if (t <= l || t > G) throw FormatError("action target " + std::to_string(t) + " out of range");
                auto slot = seen[l - 1][t - l - 1];
                if (slot) throw FormatError("duplicate action entry");
                slot = true;
                cont[l - 1][t - l - 1] = MonotoneFn(ja.at("breakpoints").get<std::vector<double>>(),
                                                    ja.at("levels").get<std::vector<double>>());
            }
        }
        for (const auto& row : seen)
            for (bool b : row)
                if (!b) throw FormatError("strategy is missing a continuation function");

        StrategyDocument doc;
        doc.strategy = Strategy(tree, j.at("lambda").get<double>(), j.at("q_train").get<double>(), std::move(cont));
        doc.strategy.seed = j.at("seed").get<std::uint64_t>();
        doc.strategy.num_paths = j.at("num_paths").get<std::uint64_t>();
        doc.strategy.leaf_exceedances = j.value("leaf_exceedances", std::uint64_t{0});
        doc.strategy.diagnostics = j.value("diagnostics", std::vector<std::string>{});
        if (j.contains("grid")) doc.grid = grid_from_json(j.at("grid"));
        return doc;
    } catch (const json::exception& e) {
        throw FormatError(std::string("bad strategy file: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw FormatError(std::string("bad strategy file: ") + e.what());
    } catch (const std::overflow_error& e) {
        throw FormatError(std::string("bad strategy file: ") + e.what());
    }
}

void write_strategy_file(const std::string& path, const StrategyDocument& doc) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    write_strategy(out, doc);
    if (!out) throw std::runtime_error("write failed: " + path);
}

StrategyDocument read_strategy_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open strategy file: " + path);
    return read_strategy(in);
}

void write_summary_csv(std::ostream& out, const TreeConfig& tree, const SearchOutcome& outcome) {
    csv::write_row(out, {"layer", "observed_count", "cost"});
    for (int l = 1; l <= tree.num_layers(); ++l) {
        const Index n = outcome.per_layer_observed.at(static_cast<std::size_t>(l - 1));
        csv::write_row(out, {std::to_string(l), csv::format(std::uint64_t{n}),
                             csv::format(static_cast<double>(n) * tree.cost_at(l))});
    }
}

void write_detections_csv(std::ostream& out, const PulsarGrid& grid, const SearchOutcome& outcome) {
    csv::write_row(out, {"omega_hz", "omegadot_s2", "statistic", "leaf_index"});
    for (const auto& d : outcome.detections) {
        const FreqDrift p = grid.params(d.leaf);
        csv::write_row(out, {csv::format(p.omega), csv::format(p.omegadot), csv::format(d.value),
                             csv::format(std::uint64_t{d.leaf.index})});
    }
}

void write_observed_csv(std::ostream& out, const PulsarGrid& grid, const SearchOutcome& outcome) {
    csv::write_row(out, {"layer", "index", "omega_hz", "omegadot_s2", "statistic", "action"});
    for (const auto& r : outcome.observed_log) {
        const FreqDrift p = grid.params(r.node);
        csv::write_row(out, {std::to_string(r.node.layer), csv::format(std::uint64_t{r.node.index}),
                             csv::format(p.omega), csv::format(p.omegadot), csv::format(r.value),
                             std::to_string(r.action)});
    }
}

std::vector<DetectionRow> read_detections_csv(std::istream& in) {
    const csv::Table t = csv::read(in);
    const std::size_t cw = t.column("omega_hz"), cd = t.column("omegadot_s2"), cs = t.column("statistic"),
                      ci = t.column("leaf_index");
    std::vector<DetectionRow> out;
    for (const auto& row : t.rows) {
        out.push_back({csv::parse_double(row[cw]), csv::parse_double(row[cd]), csv::parse_double(row[cs]),
                       csv::parse_uint(row[ci])});
    }
    return out;
}

}  // namespace blindsearch
