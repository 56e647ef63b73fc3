/**
 * @file exact.hpp
 * @brief Exact robust solvers for locally budgeted uncertainty.
 *
 * Every solver returns a Solution whose objective is evaluate_robust of the
 * returned x and whose pi is a per-region certificate with
 * certificate_value(x, pi) == objective.
 *
 * The solvers rest on one fact: for fixed x the optimal dual multiplier of
 * each region budget can be taken binary. Fixing a binary pi turns the robust
 * problem into a nominal one with costs lower_i (region paid) or
 * lower_i + dev_i (region not paid), plus the paid budgets as a constant.
 */

#ifndef LBR_EXACT_HPP
#define LBR_EXACT_HPP

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lbr/core.hpp"

namespace lbr {

/// Solver selector shared by the CLI and the experiment drivers.
enum class Method { Decomposition, SelectionDp, BranchAndBound, BruteForce };

/// Parses "decomp", "dp", "bnb" or "brute"; throws std::invalid_argument.
Method parse_method(const std::string& name);
std::string method_name(Method m);

/// cost_i = lower_i if pi[region_of(i)] == 1, else lower_i + dev_i.
CostVector reduced_costs(const UncertaintySet& u, std::span<const std::uint8_t> pi);

inline constexpr std::size_t kDefaultDecompositionCap = 20;

/**
 * @brief Enumerates all 2^K binary pi and solves one nominal problem each.
 *
 * Ties go to the lexicographically smallest pi (pi_1 most significant). The
 * returned pi is the winning one. Throws CapacityError when K > max_regions.
 */
Solution solve_decomposition(const Instance& instance,
                             std::size_t max_regions = kDefaultDecompositionCap);

/// f_j(q) for q = 0..min(n_j, p): the best robust cost of taking exactly q
/// items from region j alone. Queries beyond n_j return +infinity.
class FTable {
public:
    FTable() = default;
    explicit FTable(std::vector<std::vector<double>> values) : values_(std::move(values)) {}

    std::size_t num_regions() const noexcept { return values_.size(); }
    /// Largest q stored for region j.
    std::size_t max_count(std::size_t j) const { return values_.at(j).size() - 1; }
    double operator()(std::size_t j, std::size_t q) const {
        const auto& row = values_.at(j);
        return q < row.size() ? row[q] : std::numeric_limits<double>::infinity();
    }

private:
    std::vector<std::vector<double>> values_;
};

/// The Instance overload throws VariantError unless the spec is Selection. Entries for q beyond
/// min(n_j, p) are not stored; q > n_j reads as +infinity.
FTable selection_f_table(const UncertaintySet& u, std::size_t p);
FTable selection_f_table(const Instance& instance);

/// Dynamic program over regions for the selection problem, O(n log n + pn).
/// Backtracking prefers the smallest count for the later region; within a
/// region the lower+dev case wins ties. Throws InfeasibleError if p > n.
Solution solve_selection_dp(const Instance& instance);

struct BranchAndBoundLimits {
    std::size_t max_nodes = std::numeric_limits<std::size_t>::max();
    /// Wall-clock cap in seconds; results under a binding time cap are not reproducible.
    double max_seconds = std::numeric_limits<double>::infinity();
};

struct BranchAndBoundResult {
    Solution solution;
    /// True when the search finished within the limits, i.e. the value is optimal.
    bool optimal = false;
    std::size_t nodes = 0;
};

/**
 * @brief Depth-first branch-and-bound over binary pi.
 *
 * A node fixes pi for some regions. Its bound is the paid budgets plus the
 * nominal optimum with lower costs on paid and unfixed regions and
 * lower + dev on unpaid ones. Every node's nominal solution is evaluated
 * exactly and offered as incumbent. Branches on the unfixed region with the
 * largest budget (lowest index on ties), pi = 1 child first.
 *
 * Regions with a zero budget start fixed to 1 and regions whose budget
 * covers their whole deviation start fixed to 0; the other value is
 * dominated in both cases.
 */
BranchAndBoundResult solve_branch_and_bound(const Instance& instance,
                                            const BranchAndBoundLimits& limits = {});

inline constexpr std::size_t kDefaultBruteForceCap = std::size_t{1} << 22;

/// Exhaustive enumeration of the feasible set (testing oracle). Returns the
/// lexicographically smallest optimal x. Throws CapacityError when more than
/// `max_candidates` candidates would be enumerated, or for graphs with more
/// than 12 nodes.
Solution brute_force(const Instance& instance, std::size_t max_candidates = kDefaultBruteForceCap);

/// Dispatch on Method. Branch-and-bound runs without limits here.
Solution solve(const Instance& instance, Method method);

} // namespace lbr

#endif // LBR_EXACT_HPP
