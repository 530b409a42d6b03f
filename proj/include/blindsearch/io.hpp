#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blindsearch/engine.hpp"
#include "blindsearch/fit.hpp"
#include "blindsearch/pulsar.hpp"

namespace blindsearch {

inline constexpr int kStrategyFormatVersion = 1;

/// Pulsar grid a strategy was fitted for; lets a search rebuild the evaluator.
struct GridBinding {
    GridSpec spec;
    double span = 0.0;

    friend bool operator==(const GridBinding&, const GridBinding&) = default;
};

struct StrategyDocument {
    Strategy strategy;
    std::optional<GridBinding> grid;
};

/// JSON strategy file. Doubles are written in shortest round-trip form, so
/// write followed by read reproduces the strategy exactly. Read throws
/// FormatError on malformed or inconsistent documents.
void write_strategy(std::ostream& out, const StrategyDocument& doc);
StrategyDocument read_strategy(std::istream& in);
void write_strategy_file(const std::string& path, const StrategyDocument& doc);
StrategyDocument read_strategy_file(const std::string& path);

/// layer, observed_count, cost
void write_summary_csv(std::ostream& out, const TreeConfig& tree, const SearchOutcome& outcome);
/// omega_hz, omegadot_s2, statistic, leaf_index
void write_detections_csv(std::ostream& out, const PulsarGrid& grid, const SearchOutcome& outcome);
/// layer, index, omega_hz, omegadot_s2, statistic, action
void write_observed_csv(std::ostream& out, const PulsarGrid& grid, const SearchOutcome& outcome);

struct DetectionRow {
    double omega = 0.0;
    double omegadot = 0.0;
    double statistic = 0.0;
    Index leaf = 0;

    friend bool operator==(const DetectionRow&, const DetectionRow&) = default;
};
std::vector<DetectionRow> read_detections_csv(std::istream& in);

}  // namespace blindsearch
