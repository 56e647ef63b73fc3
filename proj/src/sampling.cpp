#include "lbr/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <set>
#include <stdexcept>

namespace lbr {

namespace {

bool is_integer(double v) { return std::floor(v) == v; }

UncertaintySet unit_set(std::vector<std::size_t> region_of, std::size_t num_regions) {
    const std::size_t n = region_of.size();
    return UncertaintySet(CostVector(n, 0.0), CostVector(n, 1.0), std::move(region_of),
                          std::vector<double>(num_regions, 1.0));
}

} // namespace

UncertaintySet gen_random_uncertainty(std::size_t n, std::size_t num_regions, std::uint64_t seed) {
    if (num_regions == 0 || num_regions > n) {
        throw std::invalid_argument("gen_random_instance: need 1 <= K <= n");
    }
    Rng rng(seed);
    CostVector lower(n);
    CostVector dev(n);
    for (std::size_t i = 0; i < n; ++i) {
        lower[i] = static_cast<double>(rng.uniform_int(kRandomCostMin, kRandomCostMax));
        dev[i] = static_cast<double>(rng.uniform_int(kRandomCostMin, kRandomCostMax));
    }
    std::vector<std::size_t> region_of(n);
    std::vector<double> budgets(num_regions);
    const std::size_t base = n / num_regions;
    const std::size_t larger = n % num_regions;
    std::size_t item = 0;
    for (std::size_t j = 0; j < num_regions; ++j) {
        const std::size_t size = base + (j < larger ? 1 : 0);
        for (std::size_t t = 0; t < size; ++t) region_of[item++] = j;
        budgets[j] = kRandomBudgetPerItem * static_cast<double>(size);
    }
    return UncertaintySet(std::move(lower), std::move(dev), std::move(region_of), std::move(budgets));
}

Instance gen_random_instance(std::size_t n, std::size_t num_regions, std::uint64_t seed, ProblemSpec spec) {
    return Instance(gen_random_uncertainty(n, num_regions, seed), std::move(spec));
}

ScenarioSet sample_scenarios(const UncertaintySet& u, std::size_t count, std::uint64_t seed) {
    for (double b : u.budgets()) {
        if (!is_integer(b)) throw PreconditionError("sample_scenarios: budgets must be integers");
    }
    for (double d : u.deviations()) {
        if (!is_integer(d)) throw PreconditionError("sample_scenarios: deviations must be integers");
    }
    const auto& lower = u.lower_costs();
    const auto& dev = u.deviations();
    ScenarioSet out(u.size());
    std::vector<std::size_t> eligible;
    std::vector<double> headroom(u.size());
    for (std::size_t k = 0; k < count; ++k) {
        Rng rng = Rng::substream(seed, k);
        Scenario c = lower;
        for (std::size_t j = 0; j < u.num_regions(); ++j) {
            const auto gamma = static_cast<double>(
                rng.uniform_int(0, static_cast<std::int64_t>(u.budgets()[j])));
            eligible.clear();
            double capacity = 0.0;
            for (std::size_t i : u.region_items(j)) {
                headroom[i] = dev[i];
                capacity += dev[i];
                if (dev[i] >= 1.0) eligible.push_back(i);
            }
            auto units = static_cast<std::size_t>(std::min(gamma, capacity));
            for (; units > 0; --units) {
                const std::size_t slot = rng.uniform_below(eligible.size());
                const std::size_t i = eligible[slot];
                c[i] += 1.0;
                headroom[i] -= 1.0;
                if (headroom[i] < 1.0) {
                    eligible[slot] = eligible.back();
                    eligible.pop_back();
                }
            }
        }
        out.push_back(std::move(c));
    }
    return out;
}

Instance gen_from_vertex_cover(const Graph& g) {
    if (g.directed) throw std::invalid_argument("vertex cover reduction: graph must be undirected");
    if (g.edges.empty()) throw std::invalid_argument("vertex cover reduction: graph has no edges");
    std::set<std::pair<std::size_t, std::size_t>> seen;
    std::vector<char> touched(g.nodes, 0);
    for (auto [u, v] : g.edges) {
        if (u >= g.nodes || v >= g.nodes) throw std::invalid_argument("vertex cover reduction: bad vertex id");
        if (u == v) throw std::invalid_argument("vertex cover reduction: self-loop");
        if (!seen.insert({std::min(u, v), std::max(u, v)}).second) {
            throw std::invalid_argument("vertex cover reduction: duplicate edge");
        }
        touched[u] = touched[v] = 1;
    }
    for (std::size_t v = 0; v < g.nodes; ++v) {
        if (!touched[v]) {
            throw std::invalid_argument("vertex cover reduction: vertex " + std::to_string(v) + " is isolated");
        }
    }
    const std::size_t m = g.edges.size();
    std::vector<std::size_t> region_of(2 * m);
    RepresentativeSelection spec;
    for (std::size_t e = 0; e < m; ++e) {
        region_of[2 * e] = g.edges[e].first;
        region_of[2 * e + 1] = g.edges[e].second;
        spec.parts.push_back({2 * e, 2 * e + 1});
        spec.quotas.push_back(1);
    }
    return Instance(unit_set(std::move(region_of), g.nodes), std::move(spec));
}

Instance gen_from_3sat(const SatFormula& formula) {
    const std::size_t nv = formula.num_vars;
    if (nv == 0) throw std::invalid_argument("3-SAT reduction: formula has no variables");
    std::vector<std::size_t> region_of(2 * nv + 3 * formula.clauses.size());
    RepresentativeSelection spec;
    for (std::size_t i = 0; i < nv; ++i) {
        region_of[2 * i] = 2 * i;
        region_of[2 * i + 1] = 2 * i + 1;
        spec.parts.push_back({2 * i, 2 * i + 1});
        spec.quotas.push_back(1);
    }
    for (std::size_t j = 0; j < formula.clauses.size(); ++j) {
        std::vector<std::size_t> part;
        for (std::size_t t = 0; t < 3; ++t) {
            const int lit = formula.clauses[j][t];
            const std::size_t var = static_cast<std::size_t>(std::abs(lit));
            if (lit == 0 || var > nv) {
                throw std::invalid_argument("3-SAT reduction: clause " + std::to_string(j + 1) +
                                            " has an invalid literal " + std::to_string(lit));
            }
            const std::size_t item = 2 * nv + 3 * j + t;
            region_of[item] = 2 * (var - 1) + (lit > 0 ? 0 : 1);
            part.push_back(item);
        }
        spec.parts.push_back(std::move(part));
        spec.quotas.push_back(1);
    }
    return Instance(unit_set(std::move(region_of), 2 * nv), std::move(spec));
}

Instance gen_from_set_cover(const CoverInstance& cover) {
    std::vector<std::vector<std::size_t>> containing(cover.ground_size);
    for (std::size_t s = 0; s < cover.subsets.size(); ++s) {
        if (cover.subsets[s].empty()) {
            throw PreconditionError("set cover reduction: subset " + std::to_string(s + 1) + " is empty");
        }
        for (std::size_t v : cover.subsets[s]) {
            if (v >= cover.ground_size) {
                throw PreconditionError("set cover reduction: element out of range in subset " +
                                        std::to_string(s + 1));
            }
            if (containing[v].empty() || containing[v].back() != s) containing[v].push_back(s);
        }
    }
    std::vector<std::size_t> region_of;
    RepresentativeSelection spec;
    for (std::size_t v = 0; v < cover.ground_size; ++v) {
        if (containing[v].empty()) {
            throw InfeasibleError("set cover reduction: element " + std::to_string(v + 1) +
                                  " is not covered by any subset");
        }
        std::vector<std::size_t> part;
        for (std::size_t s : containing[v]) {
            part.push_back(region_of.size());
            region_of.push_back(s);
        }
        spec.parts.push_back(std::move(part));
        spec.quotas.push_back(1);
    }
    return Instance(unit_set(std::move(region_of), cover.subsets.size()), std::move(spec));
}

Graph random_simple_graph(std::size_t vertices, double density, Rng& rng) {
    if (vertices < 2) throw std::invalid_argument("random_simple_graph: need at least 2 vertices");
    Graph g;
    g.nodes = vertices;
    g.directed = false;
    std::vector<char> touched(vertices, 0);
    std::set<std::pair<std::size_t, std::size_t>> present;
    for (std::size_t u = 0; u < vertices; ++u) {
        for (std::size_t v = u + 1; v < vertices; ++v) {
            if (rng.bernoulli(density)) {
                g.edges.push_back({u, v});
                present.insert({u, v});
                touched[u] = touched[v] = 1;
            }
        }
    }
    for (std::size_t u = 0; u < vertices; ++u) {
        if (touched[u]) continue;
        std::size_t v = rng.uniform_below(vertices - 1);
        if (v >= u) ++v;
        const auto key = std::make_pair(std::min(u, v), std::max(u, v));
        if (present.insert(key).second) g.edges.push_back(key);
        touched[u] = touched[v] = 1;
    }
    return g;
}

} // namespace lbr
