#include "lbr/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "disjoint_sets.hpp"

namespace lbr {

namespace {

void require_lower(const ScenarioSet& s, std::span<const double> lower) {
    if (lower.size() != s.num_items()) {
        throw DimensionError("lower bounds have length " + std::to_string(lower.size()) +
                             ", scenarios have " + std::to_string(s.num_items()) + " items");
    }
}

} // namespace

void validate(const FitConfig& config) {
    if (!(config.correlation_threshold >= 0.0 && config.correlation_threshold <= 1.0)) {
        throw std::invalid_argument("correlation threshold must lie in [0, 1]");
    }
    if (!(config.budget_factor >= 0.0) || !std::isfinite(config.budget_factor)) {
        throw std::invalid_argument("budget factor must be finite and nonnegative");
    }
}

Bounds estimate_bounds(const ScenarioSet& scenarios) {
    if (scenarios.empty()) throw PreconditionError("estimate_bounds: empty scenario set");
    const std::size_t n = scenarios.num_items();
    Bounds b{scenarios[0], CostVector(n, 0.0)};
    CostVector high = scenarios[0];
    for (const auto& row : scenarios.rows()) {
        for (std::size_t i = 0; i < n; ++i) {
            b.lower[i] = std::min(b.lower[i], row[i]);
            high[i] = std::max(high[i], row[i]);
        }
    }
    for (std::size_t i = 0; i < n; ++i) b.deviation[i] = high[i] - b.lower[i];
    return b;
}

std::vector<std::vector<double>> deviation_correlation(const ScenarioSet& scenarios,
                                                       std::span<const double> lower) {
    require_lower(scenarios, lower);
    const std::size_t n = scenarios.num_items();
    const std::size_t rows = scenarios.size();
    if (rows < 2) throw PreconditionError("correlation needs at least two scenarios");

    // Centered deviation columns and their sums of squares.
    std::vector<std::vector<double>> centered(n, std::vector<double>(rows));
    std::vector<double> sumsq(n, 0.0);
    std::vector<char> constant(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        double lo = scenarios[0][i];
        double hi = lo;
        double mean = 0.0;
        for (std::size_t k = 0; k < rows; ++k) {
            const double v = scenarios[k][i];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
            mean += v - lower[i];
        }
        constant[i] = lo == hi;
        mean /= static_cast<double>(rows);
        for (std::size_t k = 0; k < rows; ++k) {
            centered[i][k] = (scenarios[k][i] - lower[i]) - mean;
            sumsq[i] += centered[i][k] * centered[i][k];
        }
    }

    std::vector<std::vector<double>> corr(n, std::vector<double>(n, 0.0));
    for (std::size_t a = 0; a < n; ++a) {
        corr[a][a] = constant[a] ? 0.0 : 1.0;
        if (constant[a]) continue;
        for (std::size_t b = a + 1; b < n; ++b) {
            if (constant[b]) continue;
            double cov = 0.0;
            const auto& ca = centered[a];
            const auto& cb = centered[b];
            for (std::size_t k = 0; k < rows; ++k) cov += ca[k] * cb[k];
            const double r = std::clamp(cov / std::sqrt(sumsq[a] * sumsq[b]), -1.0, 1.0);
            corr[a][b] = corr[b][a] = r;
        }
    }
    return corr;
}

RegionPartition detect_regions(const ScenarioSet& scenarios, std::span<const double> lower,
                               double threshold) {
    const auto corr = deviation_correlation(scenarios, lower);
    const std::size_t n = scenarios.num_items();
    detail::DisjointSets sets(n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (std::abs(corr[a][b]) > threshold) sets.unite(a, b);
        }
    }
    RegionPartition part;
    part.region_of.assign(n, 0);
    std::vector<std::size_t> label(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t root = sets.find(i);
        if (label[root] == n) label[root] = part.num_regions++;
        part.region_of[i] = label[root];
    }
    return part;
}

BudgetEstimate estimate_budgets(const ScenarioSet& scenarios, std::span<const double> lower,
                                const RegionPartition& partition) {
    require_lower(scenarios, lower);
    if (partition.region_of.size() != scenarios.num_items()) {
        throw DimensionError("partition length differs from scenario item count");
    }
    BudgetEstimate est;
    est.per_region.assign(partition.num_regions, 0.0);
    std::vector<double> region_total(partition.num_regions);
    for (const auto& row : scenarios.rows()) {
        std::fill(region_total.begin(), region_total.end(), 0.0);
        double total = 0.0;
        for (std::size_t i = 0; i < row.size(); ++i) {
            double delta = row[i] - lower[i];
            if (delta < 0.0) {
                delta = 0.0;
                ++est.clipped;
            }
            total += delta;
            region_total[partition.region_of[i]] += delta;
        }
        est.global = std::max(est.global, total);
        for (std::size_t j = 0; j < partition.num_regions; ++j) {
            est.per_region[j] = std::max(est.per_region[j], region_total[j]);
        }
    }
    return est;
}

FittedModel fit_with_partition(const ScenarioSet& scenarios, const RegionPartition& partition,
                               const FitConfig& config, const std::optional<Bounds>& given) {
    validate(config);
    Bounds bounds;
    if (config.bounds_mode == BoundsMode::Given) {
        if (!given) throw PreconditionError("fit: bounds mode 'given' requires bounds");
        if (given->lower.size() != scenarios.num_items() || given->deviation.size() != scenarios.num_items()) {
            throw DimensionError("fit: given bounds do not match the scenario item count");
        }
        bounds = *given;
    } else {
        bounds = estimate_bounds(scenarios);
    }
    const BudgetEstimate est = estimate_budgets(scenarios, bounds.lower, partition);
    const double f = config.budget_factor;
    std::vector<double> local_budgets(est.per_region.size());
    for (std::size_t j = 0; j < local_budgets.size(); ++j) local_budgets[j] = est.per_region[j] * f;

    const std::size_t n = scenarios.num_items();
    return FittedModel{
        UncertaintySet(bounds.lower, bounds.deviation, std::vector<std::size_t>(n, 0), {est.global * f}),
        UncertaintySet(bounds.lower, bounds.deviation, partition.region_of, std::move(local_budgets)),
        partition.num_regions,
        est.clipped,
    };
}

FittedModel fit(const ScenarioSet& scenarios, const FitConfig& config, const std::optional<Bounds>& given) {
    validate(config);
    if (scenarios.size() < 2) throw PreconditionError("fit: at least two scenarios are required");
    CostVector lower;
    if (config.bounds_mode == BoundsMode::Given) {
        if (!given) throw PreconditionError("fit: bounds mode 'given' requires bounds");
        lower = given->lower;
    } else {
        lower = estimate_bounds(scenarios).lower;
    }
    const RegionPartition partition = detect_regions(scenarios, lower, config.correlation_threshold);
    return fit_with_partition(scenarios, partition, config, given);
}

FittedModel scale_budgets(const FittedModel& model, double factor) {
    if (!(factor >= 0.0) || !std::isfinite(factor)) {
        throw std::invalid_argument("budget factor must be finite and nonnegative");
    }
    auto scaled = [factor](const UncertaintySet& u) {
        std::vector<double> b = u.budgets();
        for (double& v : b) v *= factor;
        return u.with_budgets(std::move(b));
    };
    return FittedModel{scaled(model.classic), scaled(model.local), model.num_regions, model.clipped};
}

} // namespace lbr
