/**
 * @file sampling.hpp
 * @brief Random instances, scenario sampling and hard-instance generators.
 *
 * The reduction generators build robust representative-selection instances
 * whose robust optimum encodes a combinatorial quantity of the source
 * instance: minimum vertex cover size, satisfiability of a 3-CNF formula
 * (optimum == number of variables iff satisfiable) and minimum set cover
 * size. All of them use lower costs 0, deviations 1 and unit budgets, so
 * the robust value of x is the number of regions x touches.
 */

#ifndef LBR_SAMPLING_HPP
#define LBR_SAMPLING_HPP

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "lbr/core.hpp"
#include "lbr/rng.hpp"

namespace lbr {

inline constexpr std::int64_t kRandomCostMin = 10;
inline constexpr std::int64_t kRandomCostMax = 49;
inline constexpr double kRandomBudgetPerItem = 10.0;

/// n items in K contiguous regions (the first n mod K regions one item
/// larger), lower costs and deviations uniform on {10..49} drawn item by
/// item (lower then deviation) from Rng(seed), budget_j = 10 |P_j|.
/// The cost stream depends only on (n, seed), never on K.
UncertaintySet gen_random_uncertainty(std::size_t n, std::size_t num_regions, std::uint64_t seed);

Instance gen_random_instance(std::size_t n, std::size_t num_regions, std::uint64_t seed, ProblemSpec spec);

/**
 * @brief Draws N scenarios from an integer-valued locally budgeted set.
 *
 * Per row and region: draw gamma uniform on {0..budget_j}, then distribute
 * min(gamma, sum of region deviations) unit increases, each to an item drawn
 * uniformly among region items with remaining headroom. Row k uses
 * Rng::substream(seed, k). Throws PreconditionError unless every budget and
 * deviation is an integer.
 */
ScenarioSet sample_scenarios(const UncertaintySet& u, std::size_t count, std::uint64_t seed);

/// 3-CNF formula; literal +v / -v refers to variable v in 1..num_vars.
struct SatFormula {
    std::size_t num_vars = 0;
    std::vector<std::array<int, 3>> clauses;
};

/// Ground set {0..ground_size-1} and a family of subsets of it.
struct CoverInstance {
    std::size_t ground_size = 0;
    std::vector<std::vector<std::size_t>> subsets;
};

/**
 * One part {u_e, v_e} with quota 1 per edge e = {u, v}, items 2e (u side)
 * and 2e+1 (v side); region per vertex. Requires an undirected simple graph
 * without isolated vertices.
 */
Instance gen_from_vertex_cover(const Graph& g);

/**
 * Items 2i / 2i+1 are the true / false element of variable i, followed by
 * three items per clause. Regions 2i / 2i+1 collect the elements that make
 * variable i true / false. Parts: one per variable, one per clause.
 */
Instance gen_from_3sat(const SatFormula& formula);

/**
 * One item (v, s) per membership v in subset s, grouped by ground element v
 * (increasing), subsets in input order. Part per ground element with quota 1;
 * region per subset. Throws InfeasibleError for an uncovered element and
 * PreconditionError for empty subsets or out-of-range elements.
 */
Instance gen_from_set_cover(const CoverInstance& cover);

/// Uniform random simple graph on `vertices` vertices, each edge present with
/// probability `density`; isolated vertices get one edge to a random neighbour.
Graph random_simple_graph(std::size_t vertices, double density, Rng& rng);

} // namespace lbr

#endif // LBR_SAMPLING_HPP
