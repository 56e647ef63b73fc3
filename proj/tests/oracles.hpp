// Independent reference computations for tests. Nothing here calls the
// solvers, feasibility checks or robust evaluation of the library.

#ifndef LBR_TESTS_ORACLES_HPP
#define LBR_TESTS_ORACLES_HPP

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <vector>

#include "lbr/core.hpp"
#include "lbr/rng.hpp"
#include "lbr/sampling.hpp"

namespace oracle {

using lbr::Graph;
using lbr::Incidence;

/// Adversary by greedy budget fill: per region, raise chosen items one by one
/// (largest deviation first) until the budget is spent. Returns the scenario.
inline std::vector<double> greedy_adversary(const Incidence& x, const lbr::UncertaintySet& u) {
    std::vector<double> c = u.lower_costs();
    std::vector<double> left = u.budgets();
    std::vector<std::size_t> order(x.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return u.deviations()[a] > u.deviations()[b]; });
    for (std::size_t i : order) {
        if (!x[i]) continue;
        const std::size_t j = u.region_of()[i];
        const double raise = std::min(left[j], u.deviations()[i]);
        c[i] += raise;
        left[j] -= raise;
    }
    return c;
}

inline double adversary_value(const Incidence& x, const lbr::UncertaintySet& u) {
    const auto c = greedy_adversary(x, u);
    double v = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) v += x[i] ? c[i] : 0.0;
    return v;
}

// ---- feasibility, written from the definitions ----

inline std::size_t popcount(const Incidence& x) {
    return static_cast<std::size_t>(std::count(x.begin(), x.end(), 1));
}

inline int find_root(std::vector<int>& parent, int v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
}

/// Chosen edges form exactly one simple s-t path (no extra edges).
inline bool is_path(const Incidence& x, const Graph& g, std::size_t s, std::size_t t) {
    std::vector<int> out_deg(g.nodes, 0), in_deg(g.nodes, 0), deg(g.nodes, 0);
    std::vector<std::vector<std::size_t>> adj(g.nodes);
    std::size_t edges = 0;
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (!x[e]) continue;
        auto [u, v] = g.edges[e];
        if (u == v) return false;
        ++edges;
        ++out_deg[u];
        ++in_deg[v];
        ++deg[u];
        ++deg[v];
        adj[u].push_back(v);
        if (!g.directed) adj[v].push_back(u);
    }
    if (edges == 0) return false;
    for (std::size_t v = 0; v < g.nodes; ++v) {
        const int want = (v == s || v == t) ? 1 : (deg[v] > 0 ? 2 : 0);
        if (deg[v] != want) return false;
        if (g.directed && v == s && out_deg[v] != 1) return false;
        if (g.directed && v == t && in_deg[v] != 1) return false;
        if (g.directed && v != s && v != t && deg[v] == 2 && (in_deg[v] != 1 || out_deg[v] != 1)) return false;
    }
    // Walk from s and count visited edges; a cycle elsewhere would leave some unvisited.
    std::vector<char> seen(g.nodes, 0);
    std::vector<std::size_t> stack{s};
    seen[s] = 1;
    std::size_t visited = 1;
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : adj[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                ++visited;
                stack.push_back(w);
            }
        }
    }
    return seen[t] && visited == edges + 1;
}

inline bool is_spanning_tree(const Incidence& x, const Graph& g) {
    if (popcount(x) + 1 != g.nodes) return false;
    std::vector<int> parent(g.nodes);
    std::iota(parent.begin(), parent.end(), 0);
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
        if (!x[e]) continue;
        const int a = find_root(parent, static_cast<int>(g.edges[e].first));
        const int b = find_root(parent, static_cast<int>(g.edges[e].second));
        if (a == b) return false;
        parent[a] = b;
    }
    return true;
}

/// The chosen edges are exactly the edges leaving some node set S with s in S, t not in S.
inline bool is_cut(const Incidence& x, const Graph& g, std::size_t s, std::size_t t) {
    const std::size_t free_nodes = g.nodes - 2;
    if (free_nodes > 20) std::abort();
    std::vector<std::size_t> others;
    for (std::size_t v = 0; v < g.nodes; ++v) {
        if (v != s && v != t) others.push_back(v);
    }
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free_nodes); ++mask) {
        std::vector<char> in(g.nodes, 0);
        in[s] = 1;
        for (std::size_t k = 0; k < free_nodes; ++k) in[others[k]] = (mask >> k) & 1U;
        bool match = true;
        for (std::size_t e = 0; e < g.edges.size() && match; ++e) {
            const bool leaves = in[g.edges[e].first] && !in[g.edges[e].second];
            match = leaves == (x[e] != 0);
        }
        if (match) return true;
    }
    return false;
}

inline bool feasible(const Incidence& x, const lbr::ProblemSpec& spec) {
    if (auto* sel = std::get_if<lbr::Selection>(&spec)) return popcount(x) == sel->p;
    if (auto* rs = std::get_if<lbr::RepresentativeSelection>(&spec)) {
        for (std::size_t l = 0; l < rs->parts.size(); ++l) {
            std::size_t k = 0;
            for (std::size_t i : rs->parts[l]) k += x[i];
            if (k != rs->quotas[l]) return false;
        }
        return true;
    }
    if (auto* sp = std::get_if<lbr::ShortestPath>(&spec)) return is_path(x, sp->graph, sp->source, sp->target);
    if (auto* st = std::get_if<lbr::SpanningTree>(&spec)) return is_spanning_tree(x, st->graph);
    if (auto* mc = std::get_if<lbr::MinCut>(&spec)) return is_cut(x, mc->graph, mc->source, mc->sink);
    return true;
}

/// Calls visit(x) for every x in {0,1}^n.
inline void for_each_subset(std::size_t n, const std::function<void(const Incidence&)>& visit) {
    if (n > 24) std::abort();
    Incidence x(n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
        for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1U;
        visit(x);
    }
}

/// min c^t x over feasible x by enumeration; infinity if none.
inline double nominal_optimum(const std::vector<double>& c, const lbr::ProblemSpec& spec) {
    double best = std::numeric_limits<double>::infinity();
    for_each_subset(c.size(), [&](const Incidence& x) {
        if (!feasible(x, spec)) return;
        double v = 0.0;
        for (std::size_t i = 0; i < c.size(); ++i) v += x[i] ? c[i] : 0.0;
        best = std::min(best, v);
    });
    return best;
}

/// Robust optimum by enumeration, priced with the greedy adversary.
inline double robust_optimum(const lbr::Instance& inst) {
    double best = std::numeric_limits<double>::infinity();
    for_each_subset(inst.size(), [&](const Incidence& x) {
        if (feasible(x, inst.spec())) best = std::min(best, adversary_value(x, inst.uncertainty()));
    });
    return best;
}

// ---- source problems of the reductions ----

inline std::size_t min_vertex_cover(const Graph& g) {
    std::size_t best = g.nodes;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.nodes); ++mask) {
        bool covers = true;
        for (auto [u, v] : g.edges) {
            if (!((mask >> u) & 1U) && !((mask >> v) & 1U)) {
                covers = false;
                break;
            }
        }
        if (covers) best = std::min<std::size_t>(best, static_cast<std::size_t>(__builtin_popcountll(mask)));
    }
    return best;
}

inline bool satisfiable(const lbr::SatFormula& f) {
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.num_vars); ++a) {
        bool all = true;
        for (const auto& clause : f.clauses) {
            bool any = false;
            for (int lit : clause) {
                const bool value = (a >> (std::abs(lit) - 1)) & 1U;
                any = any || (lit > 0 ? value : !value);
            }
            if (!any) {
                all = false;
                break;
            }
        }
        if (all) return true;
    }
    return false;
}

/// Fewest literals to mark so that every variable has a marked literal and
/// every clause contains a marked literal. Equals the variable count iff the
/// formula is satisfiable.
inline std::size_t min_literal_marking(const lbr::SatFormula& f) {
    const std::size_t lits = 2 * f.num_vars;
    std::size_t best = lits;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << lits); ++m) {
        auto marked = [&](int lit) {
            const std::size_t idx = 2 * (static_cast<std::size_t>(std::abs(lit)) - 1) + (lit > 0 ? 0 : 1);
            return ((m >> idx) & 1U) != 0;
        };
        bool ok = true;
        for (std::size_t v = 1; v <= f.num_vars && ok; ++v) {
            ok = marked(static_cast<int>(v)) || marked(-static_cast<int>(v));
        }
        for (const auto& clause : f.clauses) {
            if (!ok) break;
            ok = marked(clause[0]) || marked(clause[1]) || marked(clause[2]);
        }
        if (ok) best = std::min<std::size_t>(best, static_cast<std::size_t>(__builtin_popcountll(m)));
    }
    return best;
}

inline std::size_t min_set_cover(const lbr::CoverInstance& c) {
    std::size_t best = c.subsets.size() + 1;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << c.subsets.size()); ++m) {
        std::vector<char> covered(c.ground_size, 0);
        for (std::size_t s = 0; s < c.subsets.size(); ++s) {
            if ((m >> s) & 1U) {
                for (std::size_t v : c.subsets[s]) covered[v] = 1;
            }
        }
        if (std::all_of(covered.begin(), covered.end(), [](char b) { return b != 0; })) {
            best = std::min<std::size_t>(best, static_cast<std::size_t>(__builtin_popcountll(m)));
        }
    }
    return best;
}

// ---- random instance builders shared by tests and the acceptance run ----

/// Random integer uncertainty set with every region nonempty.
inline lbr::UncertaintySet random_set(std::size_t n, std::size_t k, lbr::Rng& rng, int max_cost = 20,
                                      int max_budget = 30) {
    std::vector<std::size_t> region(n);
    for (std::size_t i = 0; i < n; ++i) region[i] = i < k ? i : rng.uniform_below(k);
    for (std::size_t i = n; i-- > 1;) std::swap(region[i], region[rng.uniform_below(i + 1)]);
    std::vector<double> lo(n), dev(n), budgets(k);
    for (std::size_t i = 0; i < n; ++i) {
        lo[i] = static_cast<double>(rng.uniform_int(0, max_cost));
        dev[i] = static_cast<double>(rng.uniform_int(0, max_cost));
    }
    for (double& b : budgets) b = static_cast<double>(rng.uniform_int(0, max_budget));
    return lbr::UncertaintySet(lo, dev, region, budgets);
}

inline Incidence random_incidence(std::size_t n, lbr::Rng& rng) {
    Incidence x(n);
    for (auto& v : x) v = rng.bernoulli(0.5) ? 1 : 0;
    return x;
}

/// Random graph on `nodes` vertices with `edges` edges (parallel edges allowed, no loops).
inline Graph random_graph(std::size_t nodes, std::size_t edges, bool directed, lbr::Rng& rng) {
    Graph g;
    g.nodes = nodes;
    g.directed = directed;
    for (std::size_t e = 0; e < edges; ++e) {
        const std::size_t u = rng.uniform_below(nodes);
        std::size_t v = rng.uniform_below(nodes - 1);
        if (v >= u) ++v;
        g.edges.push_back({u, v});
    }
    return g;
}

inline bool connects(const Graph& g, std::size_t s, std::size_t t) {
    std::vector<char> seen(g.nodes, 0);
    seen[s] = 1;
    for (bool grew = true; grew;) {
        grew = false;
        for (auto [u, v] : g.edges) {
            if (seen[u] && !seen[v]) seen[v] = grew = true;
            if (!g.directed && seen[v] && !seen[u]) seen[u] = grew = true;
        }
    }
    return seen[t] != 0;
}

/// A random feasible spec of the given variant over n items, or nothing if
/// the random draw is infeasible (disconnected graph and the like).
/// variant: 0 selection, 1 representative selection, 2 shortest path,
/// 3 spanning tree, 4 min cut, 5 unconstrained.
inline std::optional<lbr::ProblemSpec> random_spec(int variant, std::size_t n, lbr::Rng& rng) {
    switch (variant) {
    case 0: return lbr::Selection{rng.uniform_below(n + 1)};
    case 1: {
        lbr::RepresentativeSelection rs;
        std::vector<std::size_t> perm(n);
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = n; i-- > 1;) std::swap(perm[i], perm[rng.uniform_below(i + 1)]);
        std::size_t pos = 0;
        while (pos < n) {
            const std::size_t size = std::min<std::size_t>(n - pos, 1 + rng.uniform_below(4));
            rs.parts.emplace_back(perm.begin() + static_cast<long>(pos), perm.begin() + static_cast<long>(pos + size));
            rs.quotas.push_back(rng.uniform_below(size + 1));
            pos += size;
        }
        return rs;
    }
    case 2: {
        const std::size_t nodes = 2 + rng.uniform_below(5);
        lbr::Graph g = random_graph(nodes, n, rng.bernoulli(0.5), rng);
        if (!connects(g, 0, nodes - 1)) return {};
        return lbr::ShortestPath{g, 0, nodes - 1};
    }
    case 3: {
        const std::size_t nodes = 2 + rng.uniform_below(std::min<std::size_t>(5, n));
        lbr::SpanningTree st{random_graph(nodes, n, false, rng)};
        for (std::size_t v = 1; v < nodes; ++v) {
            if (!connects(st.graph, 0, v)) return {};
        }
        return st;
    }
    case 4: {
        const std::size_t nodes = 2 + rng.uniform_below(5);
        return lbr::MinCut{random_graph(nodes, n, true, rng), 0, nodes - 1};
    }
    default: return lbr::Unconstrained{};
    }
}

} // namespace oracle

#endif // LBR_TESTS_ORACLES_HPP
