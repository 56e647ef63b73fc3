#include "lbr/nominal.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <queue>
#include <stdexcept>
#include <tuple>

#include "disjoint_sets.hpp"

namespace lbr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t expected_items(const ProblemSpec& spec, std::size_t fallback) {
    return std::visit(
        [fallback](const auto& s) -> std::size_t {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ShortestPath> || std::is_same_v<T, SpanningTree> ||
                          std::is_same_v<T, MinCut>) {
                return s.graph.edges.size();
            } else if constexpr (std::is_same_v<T, RepresentativeSelection>) {
                std::size_t total = 0;
                for (const auto& part : s.parts) total += part.size();
                return total;
            } else {
                return fallback;
            }
        },
        spec);
}

void check_costs(std::span<const double> costs, const ProblemSpec& spec) {
    const std::size_t want = expected_items(spec, costs.size());
    if (costs.size() != want) {
        throw DimensionError(variant_name(spec) + ": " + std::to_string(costs.size()) +
                             " costs for " + std::to_string(want) + " items");
    }
    for (double c : costs) {
        if (!std::isfinite(c) || c < 0.0) {
            throw std::invalid_argument(variant_name(spec) + ": costs must be finite and nonnegative");
        }
    }
}

// Indices of the `count` cheapest entries of `pool` by (cost, index).
void take_cheapest(std::vector<std::size_t> pool, std::size_t count, std::span<const double> costs,
                   Incidence& x) {
    auto cheaper = [costs](std::size_t a, std::size_t b) {
        return std::tie(costs[a], a) < std::tie(costs[b], b);
    };
    std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(count), pool.end(),
                      cheaper);
    for (std::size_t k = 0; k < count; ++k) x[pool[k]] = 1;
}

Solution finish(std::span<const double> costs, Incidence x) {
    Solution sol;
    sol.objective = linear_cost(costs, x);
    sol.chosen = std::move(x);
    return sol;
}

Solution solve_tree(std::span<const double> costs, const SpanningTree& st) {
    const Graph& g = st.graph;
    std::vector<std::size_t> order(g.edges.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [costs](std::size_t a, std::size_t b) {
        return std::tie(costs[a], a) < std::tie(costs[b], b);
    });
    detail::DisjointSets sets(g.nodes);
    Incidence x(g.edges.size(), 0);
    std::size_t taken = 0;
    for (std::size_t e : order) {
        if (sets.unite(g.edges[e].first, g.edges[e].second)) {
            x[e] = 1;
            ++taken;
        }
    }
    if (taken + 1 != g.nodes) throw InfeasibleError("spanning_tree: graph is disconnected");
    return finish(costs, std::move(x));
}

} // namespace

NominalSolver::NominalSolver(ProblemSpec spec) : spec_(std::move(spec)) {
    if (const auto* sp = std::get_if<ShortestPath>(&spec_)) {
        const Graph& g = sp->graph;
        adjacency_.assign(g.nodes, {});
        for (std::size_t e = 0; e < g.edges.size(); ++e) {
            const auto [u, v] = g.edges[e];
            if (u >= g.nodes || v >= g.nodes) throw std::invalid_argument("shortest_path: bad edge");
            adjacency_[u].push_back({v, e});
            if (!g.directed) adjacency_[v].push_back({u, e});
        }
    }
}

Solution NominalSolver::solve(std::span<const double> costs) const {
    check_costs(costs, spec_);
    return std::visit(
        [&](const auto& s) -> Solution {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Selection>) {
                if (s.p > costs.size()) {
                    throw InfeasibleError("selection: p = " + std::to_string(s.p) + " exceeds n = " +
                                          std::to_string(costs.size()));
                }
                std::vector<std::size_t> pool(costs.size());
                std::iota(pool.begin(), pool.end(), std::size_t{0});
                Incidence x(costs.size(), 0);
                take_cheapest(std::move(pool), s.p, costs, x);
                return finish(costs, std::move(x));
            } else if constexpr (std::is_same_v<T, RepresentativeSelection>) {
                Incidence x(costs.size(), 0);
                for (std::size_t l = 0; l < s.parts.size(); ++l) {
                    if (s.quotas[l] > s.parts[l].size()) {
                        throw InfeasibleError("representative_selection: quota exceeds size of part " +
                                              std::to_string(l));
                    }
                    take_cheapest(s.parts[l], s.quotas[l], costs, x);
                }
                return finish(costs, std::move(x));
            } else if constexpr (std::is_same_v<T, ShortestPath>) {
                return solve_path(costs, s);
            } else if constexpr (std::is_same_v<T, SpanningTree>) {
                return solve_tree(costs, s);
            } else if constexpr (std::is_same_v<T, MinCut>) {
                return solve_cut(costs, s);
            } else {
                return finish(costs, Incidence(costs.size(), 0));
            }
        },
        spec_);
}

Solution NominalSolver::solve_path(std::span<const double> costs, const ShortestPath& sp) const {
    const std::size_t n_nodes = sp.graph.nodes;
    const std::size_t none = sp.graph.edges.size();
    std::vector<double> dist(n_nodes, kInf);
    std::vector<std::size_t> pred(n_nodes, none);
    std::vector<char> done(n_nodes, 0);
    using Entry = std::pair<double, std::size_t>;
    std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
    dist[sp.source] = 0.0;
    heap.push({0.0, sp.source});
    while (!heap.empty()) {
        const auto [d, v] = heap.top();
        heap.pop();
        if (done[v]) continue;
        done[v] = 1;
        if (v == sp.target) break;
        for (const Arc& a : adjacency_[v]) {
            const double nd = d + costs[a.edge];
            if (nd < dist[a.head]) {
                dist[a.head] = nd;
                pred[a.head] = a.edge;
                heap.push({nd, a.head});
            }
        }
    }
    if (!done[sp.target]) {
        throw InfeasibleError("shortest_path: target " + std::to_string(sp.target) +
                              " unreachable from source " + std::to_string(sp.source));
    }
    Incidence x(sp.graph.edges.size(), 0);
    for (std::size_t v = sp.target; v != sp.source;) {
        const std::size_t e = pred[v];
        x[e] = 1;
        const auto [a, b] = sp.graph.edges[e];
        v = (b == v) ? a : b;
    }
    return finish(costs, std::move(x));
}

// Dinic max-flow; the cut is the set of edges leaving the residual-reachable
// side of the source.
Solution NominalSolver::solve_cut(std::span<const double> costs, const MinCut& mc) const {
    const Graph& g = mc.graph;
    struct Residual {
        std::size_t head;
        double cap;
    };
    std::vector<Residual> arcs;
    arcs.reserve(2 * g.edges.size());
    std::vector<std::vector<std::size_t>> out(g.nodes);
    double max_cap = 0.0;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto [u, v] = g.edges[e];
        out[u].push_back(arcs.size());
        arcs.push_back({v, costs[e]});
        out[v].push_back(arcs.size());
        arcs.push_back({u, 0.0});
        max_cap = std::max(max_cap, costs[e]);
    }
    const double eps = 1e-12 * std::max(1.0, max_cap);

    std::vector<std::size_t> level(g.nodes);
    std::vector<std::size_t> cursor(g.nodes);
    constexpr std::size_t unreached = std::numeric_limits<std::size_t>::max();
    auto bfs = [&]() {
        std::fill(level.begin(), level.end(), unreached);
        std::queue<std::size_t> q;
        level[mc.source] = 0;
        q.push(mc.source);
        while (!q.empty()) {
            const std::size_t v = q.front();
            q.pop();
            for (std::size_t a : out[v]) {
                if (arcs[a].cap > eps && level[arcs[a].head] == unreached) {
                    level[arcs[a].head] = level[v] + 1;
                    q.push(arcs[a].head);
                }
            }
        }
        return level[mc.sink] != unreached;
    };
    std::function<double(std::size_t, double)> push = [&](std::size_t v, double limit) -> double {
        if (v == mc.sink) return limit;
        for (; cursor[v] < out[v].size(); ++cursor[v]) {
            const std::size_t a = out[v][cursor[v]];
            const std::size_t w = arcs[a].head;
            if (arcs[a].cap <= eps || level[w] != level[v] + 1) continue;
            const double got = push(w, std::min(limit, arcs[a].cap));
            if (got > 0.0) {
                arcs[a].cap -= got;
                arcs[a ^ 1].cap += got;
                return got;
            }
        }
        return 0.0;
    };
    while (bfs()) {
        std::fill(cursor.begin(), cursor.end(), 0);
        while (push(mc.source, kInf) > 0.0) {
        }
    }

    // After the last failed bfs, `level` marks the residual-reachable nodes.
    Incidence x(g.edges.size(), 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        const auto [u, v] = g.edges[e];
        if (level[u] != unreached && level[v] == unreached) x[e] = 1;
    }
    return finish(costs, std::move(x));
}

Solution solve_nominal(std::span<const double> costs, const ProblemSpec& spec) {
    return NominalSolver(spec).solve(costs);
}

} // namespace lbr
