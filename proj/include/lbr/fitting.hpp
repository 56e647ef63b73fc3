/**
 * @file fitting.hpp
 * @brief Fitting classic and locally budgeted uncertainty sets to scenario data.
 *
 * Pipeline: bounds (given, or column min / range) -> regions (connected
 * components of the graph linking items whose deviation correlation
 * exceeds a threshold in absolute value) -> budgets (largest observed
 * total deviation, globally and per region) -> scaling by a budget factor.
 */

#ifndef LBR_FITTING_HPP
#define LBR_FITTING_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "lbr/core.hpp"

namespace lbr {

enum class BoundsMode { Given, Estimated };

struct FitConfig {
    /// Items are linked iff |corr| > threshold (strict).
    double correlation_threshold = 0.3;
    double budget_factor = 1.0;
    BoundsMode bounds_mode = BoundsMode::Estimated;
};

/// Throws std::invalid_argument for a threshold outside [0, 1] or a negative factor.
void validate(const FitConfig& config);

struct Bounds {
    CostVector lower;
    CostVector deviation;
};

/// Column-wise minimum and max - min. Throws PreconditionError on an empty set.
Bounds estimate_bounds(const ScenarioSet& scenarios);

struct RegionPartition {
    std::vector<std::size_t> region_of;
    std::size_t num_regions = 0;
};

/// Pearson correlation of the deviation columns c_i - lower_i. Columns with
/// zero variance (max == min) correlate 0 with everything. Rows are
/// accumulated left to right so the result is reproducible bit for bit.
std::vector<std::vector<double>> deviation_correlation(const ScenarioSet& scenarios,
                                                       std::span<const double> lower);

/// Regions are numbered in order of their smallest item. Throws
/// PreconditionError when fewer than two scenarios are given.
RegionPartition detect_regions(const ScenarioSet& scenarios, std::span<const double> lower,
                               double threshold);

struct BudgetEstimate {
    double global = 0.0;
    std::vector<double> per_region;
    /// Number of scenario entries below the lower bound that were clipped to 0.
    std::size_t clipped = 0;
};

BudgetEstimate estimate_budgets(const ScenarioSet& scenarios, std::span<const double> lower,
                                const RegionPartition& partition);

struct FittedModel {
    UncertaintySet classic;
    UncertaintySet local;
    std::size_t num_regions = 0;
    std::size_t clipped = 0;
};

/// Runs the full pipeline. In BoundsMode::Given, `given` must hold the
/// bounds (PreconditionError otherwise); it is ignored in Estimated mode.
FittedModel fit(const ScenarioSet& scenarios, const FitConfig& config,
                const std::optional<Bounds>& given = std::nullopt);

/// Fit with a caller-supplied partition (e.g. road segments between
/// crossings) instead of correlation-detected regions.
FittedModel fit_with_partition(const ScenarioSet& scenarios, const RegionPartition& partition,
                               const FitConfig& config, const std::optional<Bounds>& given = std::nullopt);

/// The same model with every budget multiplied by `factor`.
FittedModel scale_budgets(const FittedModel& model, double factor);

} // namespace lbr

#endif // LBR_FITTING_HPP
