/**
 * @file core.hpp
 * @brief Domain types for min-max robust problems under locally budgeted
 * uncertainty, plus the closed-form adversary.
 *
 * A locally budgeted uncertainty set partitions the n items into K regions.
 * A cost vector c belongs to the set iff
 *
 *   lower_i <= c_i <= lower_i + dev_i               for every item i
 *   sum_{i in region j} (c_i - lower_i) <= budget_j  for every region j
 *
 * K = 1 is the classic budgeted set with a single global budget.
 *
 * Items and regions are 0-based throughout the library. File formats that
 * use 1-based indices convert at the I/O boundary (see io.hpp).
 */

#ifndef LBR_CORE_HPP
#define LBR_CORE_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lbr/errors.hpp"

namespace lbr {

/// Binary incidence vector over items (or regions); entries are 0 or 1.
using Incidence = std::vector<std::uint8_t>;

/// Per-item cost vector.
using CostVector = std::vector<double>;

/// Relative tolerance used for objective and membership comparisons.
inline constexpr double kTolerance = 1e-9;

class UncertaintySet {
public:
    /// Validates the partition and nonnegativity; throws std::invalid_argument.
    /// `region_of` is 0-based; every region in [0, num_regions) must be used.
    UncertaintySet(CostVector lower_costs, CostVector deviations,
                   std::vector<std::size_t> region_of, std::vector<double> budgets);

    std::size_t size() const noexcept { return lower_.size(); }
    std::size_t num_regions() const noexcept { return budgets_.size(); }

    const CostVector& lower_costs() const noexcept { return lower_; }
    const CostVector& deviations() const noexcept { return dev_; }
    const std::vector<std::size_t>& region_of() const noexcept { return region_of_; }
    const std::vector<double>& budgets() const noexcept { return budgets_; }

    /// Items of region j in increasing index order.
    const std::vector<std::size_t>& region_items(std::size_t j) const { return regions_.at(j); }

    /// Same bounds and partition, different budgets.
    UncertaintySet with_budgets(std::vector<double> budgets) const;

private:
    CostVector lower_;
    CostVector dev_;
    std::vector<std::size_t> region_of_;
    std::vector<double> budgets_;
    std::vector<std::vector<std::size_t>> regions_;
};

// Feasible-set descriptions. Graph edges are items: edge index == item index.

struct Graph {
    std::size_t nodes = 0;
    std::vector<std::pair<std::size_t, std::size_t>> edges;
    bool directed = true;
};

struct Selection {
    std::size_t p = 0;
};

struct RepresentativeSelection {
    std::vector<std::vector<std::size_t>> parts;
    std::vector<std::size_t> quotas;
};

struct ShortestPath {
    Graph graph;
    std::size_t source = 0;
    std::size_t target = 0;
};

/// The graph is treated as undirected regardless of `graph.directed`.
struct SpanningTree {
    Graph graph;
};

/// The graph is treated as directed regardless of `graph.directed`.
struct MinCut {
    Graph graph;
    std::size_t source = 0;
    std::size_t sink = 0;
};

struct Unconstrained {};

using ProblemSpec =
    std::variant<Selection, RepresentativeSelection, ShortestPath, SpanningTree, MinCut, Unconstrained>;

/// Lower-case tag used in JSON and error messages ("selection", "shortest_path", ...).
std::string variant_name(const ProblemSpec& spec);

/// Throws std::invalid_argument if `spec` does not describe a feasible-set
/// structure over exactly n items (bad item ids, parts not a partition,
/// invalid endpoints, s == t, edge count != n, quota > part size).
void validate_spec(const ProblemSpec& spec, std::size_t n);

class Instance {
public:
    Instance(UncertaintySet uncertainty, ProblemSpec spec);

    std::size_t size() const noexcept { return uncertainty_.size(); }
    const UncertaintySet& uncertainty() const noexcept { return uncertainty_; }
    const ProblemSpec& spec() const noexcept { return spec_; }

private:
    UncertaintySet uncertainty_;
    ProblemSpec spec_;
};

struct Solution {
    Incidence chosen;
    double objective = 0.0;
    /// Binary per-region certificate; the region budget is "paid" where 1.
    std::optional<Incidence> pi;
};

using Scenario = CostVector;

class ScenarioSet {
public:
    ScenarioSet() = default;
    explicit ScenarioSet(std::size_t num_items) : n_(num_items) {}
    /// Throws DimensionError if any row length differs from `num_items`.
    ScenarioSet(std::size_t num_items, std::vector<Scenario> rows);

    std::size_t num_items() const noexcept { return n_; }
    std::size_t size() const noexcept { return rows_.size(); }
    bool empty() const noexcept { return rows_.empty(); }

    void push_back(Scenario row);
    const Scenario& operator[](std::size_t k) const { return rows_[k]; }
    const std::vector<Scenario>& rows() const noexcept { return rows_; }

    /// Rows [first, last) as a new set.
    ScenarioSet slice(std::size_t first, std::size_t last) const;

private:
    std::size_t n_ = 0;
    std::vector<Scenario> rows_;
};

/// max_{c in U} c^t x in closed form:
///   sum_{i in X} lower_i + sum_j min(budget_j, sum_{i in P_j cap X} dev_i).
double evaluate_robust(std::span<const std::uint8_t> x, const UncertaintySet& u);

/// A maximizer of c^t x over U. Deviation goes only to chosen items, filled
/// region by region in increasing item order.
Scenario worst_case_scenario(std::span<const std::uint8_t> x, const UncertaintySet& u);

/// Box and per-region budget constraints, each with relative tolerance `tol`.
bool is_member(std::span<const double> c, const UncertaintySet& u, double tol = kTolerance);

/// Certificate for x: pi_j = 1 iff budget_j <= sum_{i in P_j cap X} dev_i.
Incidence certificate_pi(std::span<const std::uint8_t> x, const UncertaintySet& u);

/// sum_{j: pi_j = 1} budget_j + sum_{i in X} cost_i(pi); equals evaluate_robust
/// when pi is optimal for x and is an upper bound otherwise.
double certificate_value(std::span<const std::uint8_t> x, std::span<const std::uint8_t> pi,
                         const UncertaintySet& u);

bool check_feasible(std::span<const std::uint8_t> x, const ProblemSpec& spec);

/// Collapse to a single region with budget sum_j budget_j.
UncertaintySet to_classic(const UncertaintySet& u);

/// sum_i c_i x_i; throws DimensionError on length mismatch.
double linear_cost(std::span<const double> c, std::span<const std::uint8_t> x);

/// Item ids (0-based) of the ones in x.
std::vector<std::size_t> chosen_items(std::span<const std::uint8_t> x);

/// Incidence vector of length n with ones at `items` (0-based).
Incidence make_incidence(std::size_t n, std::span<const std::size_t> items);

} // namespace lbr

#endif // LBR_CORE_HPP
