#pragma once

#include <span>
#include <vector>

namespace blindsearch {

/// Nondecreasing step function. f(x) = levels[i] for the largest i with
/// breakpoints[i] <= x; f(x) = levels[0] left of the first breakpoint.
class MonotoneFn {
public:
    MonotoneFn() : breakpoints_{0.0}, levels_{0.0} {}

    /// Throws std::invalid_argument unless the breakpoints are strictly
    /// increasing, the levels nondecreasing, both of equal nonzero length.
    MonotoneFn(std::vector<double> breakpoints, std::vector<double> levels);

    static MonotoneFn constant(double level) { return MonotoneFn({0.0}, {level}); }

    double operator()(double x) const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& levels() const { return levels_; }
    std::size_t size() const { return levels_.size(); }

    friend bool operator==(const MonotoneFn&, const MonotoneFn&) = default;

private:
    std::vector<double> breakpoints_;
    std::vector<double> levels_;
};

inline double evaluate(const MonotoneFn& f, double x) { return f(x); }

/// Weighted least-squares nondecreasing fit by pool-adjacent-violators.
/// Points sharing an x value are merged (weights added) before pooling, so the
/// result is the unique minimizer as a function of x. Breakpoints are the
/// smallest x of each pooled block.
/// Throws std::invalid_argument on empty or mismatched input, a nonpositive
/// or non-finite weight, or a non-finite coordinate.
MonotoneFn pava(std::span<const double> xs, std::span<const double> ys, std::span<const double> ws);

/// Unit weights.
MonotoneFn pava(std::span<const double> xs, std::span<const double> ys);

}  // namespace blindsearch
