#ifndef LBR_NOMINAL_HPP
#define LBR_NOMINAL_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "lbr/core.hpp"

namespace lbr {

/**
 * @brief Minimizes c^t x over the feasible set described by `spec`.
 *
 * Selection-type variants sort by (cost, item index); shortest path uses
 * Dijkstra, spanning tree uses Kruskal on (cost, index), min cut uses
 * max-flow followed by the residual-reachable source side. The result is
 * deterministic for identical inputs.
 *
 * Costs must be finite and nonnegative (std::invalid_argument otherwise).
 * Throws DimensionError when costs.size() does not match the spec, and
 * InfeasibleError when the feasible set is empty.
 *
 * The returned Solution carries the nominal objective c^t x and no pi.
 */
Solution solve_nominal(std::span<const double> costs, const ProblemSpec& spec);

/// solve_nominal with the graph adjacency built once, for callers that solve
/// many cost vectors over the same feasible set. `solve` is const and
/// allocates its scratch per call, so one instance may be shared by threads.
class NominalSolver {
public:
    explicit NominalSolver(ProblemSpec spec);

    Solution solve(std::span<const double> costs) const;
    const ProblemSpec& spec() const noexcept { return spec_; }

private:
    struct Arc {
        std::size_t head;
        std::size_t edge;
    };

    Solution solve_path(std::span<const double> costs, const ShortestPath& sp) const;
    Solution solve_cut(std::span<const double> costs, const MinCut& mc) const;

    ProblemSpec spec_;
    std::vector<std::vector<Arc>> adjacency_;
};

} // namespace lbr

#endif // LBR_NOMINAL_HPP
