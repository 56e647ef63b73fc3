#include "lbr/exact.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <tuple>

#include "lbr/nominal.hpp"

namespace lbr {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool close(double a, double b) {
    return std::abs(a - b) <= kTolerance * std::max({1.0, std::abs(a), std::abs(b)});
}

// Final re-check shared by all solvers: the objective reported is always the
// closed-form robust value of x, and it must agree with the solver's own value.
Solution finalize(const UncertaintySet& u, Incidence x, double solver_value, Incidence pi,
                  const char* solver) {
    Solution sol;
    sol.objective = evaluate_robust(x, u);
    if (!close(sol.objective, solver_value)) {
        throw std::logic_error(std::string(solver) + ": solver value " + std::to_string(solver_value) +
                               " disagrees with robust evaluation " + std::to_string(sol.objective));
    }
    sol.chosen = std::move(x);
    sol.pi = std::move(pi);
    return sol;
}

__extension__ typedef unsigned __int128 u128;

std::size_t saturating_mul(std::size_t a, std::size_t b, std::size_t cap) {
    if (a == 0 || b == 0) return 0;
    if (a > cap / b) return cap + 1;
    return std::min(a * b, cap + 1);
}

std::size_t binomial_capped(std::size_t n, std::size_t k, std::size_t cap) {
    k = std::min(k, n - k);
    // C(n, i) = C(n, i-1) * (n-i+1) / i stays integral at every step.
    u128 value = 1;
    for (std::size_t i = 1; i <= k; ++i) {
        value = value * (n - i + 1) / i;
        if (value > cap) return cap + 1;
    }
    return static_cast<std::size_t>(value);
}

// Calls visit(combo) for every k-subset of `pool`, in lexicographic order of positions.
void for_each_combination(const std::vector<std::size_t>& pool, std::size_t k,
                          const std::function<void(const std::vector<std::size_t>&)>& visit) {
    std::vector<std::size_t> idx(k);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::vector<std::size_t> combo(k);
    const std::size_t n = pool.size();
    if (k > n) return;
    while (true) {
        for (std::size_t t = 0; t < k; ++t) combo[t] = pool[idx[t]];
        visit(combo);
        std::size_t t = k;
        while (t > 0 && idx[t - 1] == n - k + t - 1) --t;
        if (t == 0) return;
        ++idx[t - 1];
        for (std::size_t r = t; r < k; ++r) idx[r] = idx[r - 1] + 1;
    }
}

struct BestTracker {
    const UncertaintySet& u;
    double best = kInf;
    Incidence best_x;

    void offer(const Incidence& x) {
        const double v = evaluate_robust(x, u);
        if (v < best || (v == best && std::lexicographical_compare(x.begin(), x.end(), best_x.begin(),
                                                                    best_x.end()))) {
            best = v;
            best_x = x;
        }
    }
};

constexpr std::size_t kBruteForceMaxNodes = 12;

void enumerate_feasible(const Instance& instance, std::size_t cap, BestTracker& tracker) {
    const std::size_t n = instance.size();
    auto too_many = [&](const std::string& what) {
        return CapacityError("brute_force: " + what + " exceeds the enumeration cap of " +
                             std::to_string(cap) + " candidates");
    };
    auto check_graph = [&](const Graph& g) {
        if (g.nodes > kBruteForceMaxNodes) {
            throw CapacityError("brute_force: graphs with more than " +
                                std::to_string(kBruteForceMaxNodes) + " nodes are not enumerated");
        }
    };

    std::visit(
        [&](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Selection>) {
                if (s.p > n) throw InfeasibleError("selection: p exceeds n");
                if (binomial_capped(n, s.p, cap) > cap) throw too_many("C(n, p)");
                std::vector<std::size_t> pool(n);
                std::iota(pool.begin(), pool.end(), std::size_t{0});
                Incidence x(n, 0);
                for_each_combination(pool, s.p, [&](const std::vector<std::size_t>& combo) {
                    std::fill(x.begin(), x.end(), 0);
                    for (std::size_t i : combo) x[i] = 1;
                    tracker.offer(x);
                });
            } else if constexpr (std::is_same_v<T, RepresentativeSelection>) {
                std::size_t total = 1;
                for (std::size_t l = 0; l < s.parts.size(); ++l) {
                    total = saturating_mul(total, binomial_capped(s.parts[l].size(), s.quotas[l], cap), cap);
                }
                if (total > cap) throw too_many("product of per-part combinations");
                Incidence x(n, 0);
                std::function<void(std::size_t)> recurse = [&](std::size_t l) {
                    if (l == s.parts.size()) {
                        tracker.offer(x);
                        return;
                    }
                    for_each_combination(s.parts[l], s.quotas[l], [&](const std::vector<std::size_t>& combo) {
                        for (std::size_t i : combo) x[i] = 1;
                        recurse(l + 1);
                        for (std::size_t i : combo) x[i] = 0;
                    });
                };
                recurse(0);
            } else if constexpr (std::is_same_v<T, ShortestPath>) {
                check_graph(s.graph);
                std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(s.graph.nodes);
                for (std::size_t e = 0; e < s.graph.edges.size(); ++e) {
                    const auto [u, v] = s.graph.edges[e];
                    adj[u].push_back({v, e});
                    if (!s.graph.directed) adj[v].push_back({u, e});
                }
                Incidence x(n, 0);
                std::vector<char> on_path(s.graph.nodes, 0);
                std::size_t visited = 0;
                std::function<void(std::size_t)> dfs = [&](std::size_t v) {
                    if (v == s.target) {
                        if (++visited > cap) throw too_many("number of simple paths");
                        tracker.offer(x);
                        return;
                    }
                    on_path[v] = 1;
                    for (const auto& [w, e] : adj[v]) {
                        if (on_path[w]) continue;
                        x[e] = 1;
                        dfs(w);
                        x[e] = 0;
                    }
                    on_path[v] = 0;
                };
                dfs(s.source);
            } else if constexpr (std::is_same_v<T, SpanningTree>) {
                check_graph(s.graph);
                const std::size_t k = s.graph.nodes - 1;
                if (k > n) return;
                if (binomial_capped(n, k, cap) > cap) throw too_many("C(m, |V|-1)");
                std::vector<std::size_t> pool(n);
                std::iota(pool.begin(), pool.end(), std::size_t{0});
                Incidence x(n, 0);
                for_each_combination(pool, k, [&](const std::vector<std::size_t>& combo) {
                    std::fill(x.begin(), x.end(), 0);
                    for (std::size_t i : combo) x[i] = 1;
                    if (check_feasible(x, instance.spec())) tracker.offer(x);
                });
            } else if constexpr (std::is_same_v<T, MinCut>) {
                check_graph(s.graph);
                std::vector<std::size_t> free_nodes;
                for (std::size_t v = 0; v < s.graph.nodes; ++v) {
                    if (v != s.source && v != s.sink) free_nodes.push_back(v);
                }
                const std::size_t subsets = std::size_t{1} << free_nodes.size();
                std::vector<char> side(s.graph.nodes, 0);
                Incidence x(n, 0);
                for (std::size_t mask = 0; mask < subsets; ++mask) {
                    std::fill(side.begin(), side.end(), 0);
                    side[s.source] = 1;
                    for (std::size_t b = 0; b < free_nodes.size(); ++b) {
                        if (mask >> b & 1U) side[free_nodes[b]] = 1;
                    }
                    for (std::size_t e = 0; e < n; ++e) {
                        const auto [u, v] = s.graph.edges[e];
                        x[e] = (side[u] && !side[v]) ? 1 : 0;
                    }
                    tracker.offer(x);
                }
            } else {
                if (n >= 63 || (std::size_t{1} << n) > cap) throw too_many("2^n");
                Incidence x(n, 0);
                for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
                    for (std::size_t i = 0; i < n; ++i) x[i] = (mask >> i) & 1U;
                    tracker.offer(x);
                }
            }
        },
        instance.spec());
}

} // namespace

Method parse_method(const std::string& name) {
    if (name == "decomp") return Method::Decomposition;
    if (name == "dp") return Method::SelectionDp;
    if (name == "bnb") return Method::BranchAndBound;
    if (name == "brute") return Method::BruteForce;
    throw std::invalid_argument("unknown method '" + name + "' (expected decomp|dp|bnb|brute)");
}

std::string method_name(Method m) {
    switch (m) {
    case Method::Decomposition: return "decomp";
    case Method::SelectionDp: return "dp";
    case Method::BranchAndBound: return "bnb";
    case Method::BruteForce: return "brute";
    }
    return "unknown";
}

CostVector reduced_costs(const UncertaintySet& u, std::span<const std::uint8_t> pi) {
    if (pi.size() != u.num_regions()) {
        throw DimensionError("pi has length " + std::to_string(pi.size()) + ", expected " +
                             std::to_string(u.num_regions()));
    }
    CostVector costs(u.size());
    for (std::size_t i = 0; i < u.size(); ++i) {
        costs[i] = u.lower_costs()[i] + (pi[u.region_of()[i]] ? 0.0 : u.deviations()[i]);
    }
    return costs;
}

Solution solve_decomposition(const Instance& instance, std::size_t max_regions) {
    const UncertaintySet& u = instance.uncertainty();
    const std::size_t k = u.num_regions();
    if (k > max_regions || k >= 63) {
        throw CapacityError("decomposition: K = " + std::to_string(k) + " exceeds the cap of " +
                            std::to_string(max_regions) + " regions; use branch-and-bound");
    }
    const NominalSolver nominal(instance.spec());
    double best = kInf;
    Incidence best_x;
    Incidence best_pi;
    Incidence pi(k, 0);
    // Increasing mask with pi[0] as the most significant bit is lexicographic order.
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
        double paid = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            pi[j] = (mask >> (k - 1 - j)) & 1U;
            if (pi[j]) paid += u.budgets()[j];
        }
        Solution sub = nominal.solve(reduced_costs(u, pi));
        const double value = paid + sub.objective;
        if (value < best) {
            best = value;
            best_x = std::move(sub.chosen);
            best_pi = pi;
        }
    }
    return finalize(u, std::move(best_x), best, std::move(best_pi), "decomposition");
}

namespace {

// Per-region items sorted by lower cost and by lower + dev, both keyed (cost, index).
struct RegionOrders {
    std::vector<std::size_t> by_lower;
    std::vector<std::size_t> by_upper;
};

RegionOrders sorted_region(const UncertaintySet& u, std::size_t j) {
    const auto& lower = u.lower_costs();
    const auto& dev = u.deviations();
    RegionOrders r{u.region_items(j), u.region_items(j)};
    std::sort(r.by_lower.begin(), r.by_lower.end(), [&](std::size_t a, std::size_t b) {
        return std::tie(lower[a], a) < std::tie(lower[b], b);
    });
    std::sort(r.by_upper.begin(), r.by_upper.end(), [&](std::size_t a, std::size_t b) {
        const double ca = lower[a] + dev[a];
        const double cb = lower[b] + dev[b];
        return std::tie(ca, a) < std::tie(cb, b);
    });
    return r;
}

struct RegionPrefix {
    std::vector<double> lower; // sum of the q smallest lower costs
    std::vector<double> upper; // sum of the q smallest lower + dev
};

RegionPrefix prefix_sums(const UncertaintySet& u, const RegionOrders& r, std::size_t limit) {
    const std::size_t m = std::min(limit, r.by_lower.size());
    RegionPrefix pre{std::vector<double>(m + 1, 0.0), std::vector<double>(m + 1, 0.0)};
    for (std::size_t q = 1; q <= m; ++q) {
        const std::size_t a = r.by_lower[q - 1];
        const std::size_t b = r.by_upper[q - 1];
        pre.lower[q] = pre.lower[q - 1] + u.lower_costs()[a];
        pre.upper[q] = pre.upper[q - 1] + u.lower_costs()[b] + u.deviations()[b];
    }
    return pre;
}

} // namespace

FTable selection_f_table(const UncertaintySet& u, std::size_t p) {
    std::vector<std::vector<double>> values(u.num_regions());
    for (std::size_t j = 0; j < u.num_regions(); ++j) {
        const RegionPrefix pre = prefix_sums(u, sorted_region(u, j), p);
        auto& row = values[j];
        row.resize(pre.lower.size());
        for (std::size_t q = 0; q < row.size(); ++q) {
            row[q] = std::min(u.budgets()[j] + pre.lower[q], pre.upper[q]);
        }
        row[0] = 0.0;
    }
    return FTable(std::move(values));
}

FTable selection_f_table(const Instance& instance) {
    const auto* sel = std::get_if<Selection>(&instance.spec());
    if (sel == nullptr) {
        throw VariantError("selection_f_table: spec is " + variant_name(instance.spec()) +
                           ", expected selection");
    }
    return selection_f_table(instance.uncertainty(), sel->p);
}

Solution solve_selection_dp(const Instance& instance) {
    const auto* sel = std::get_if<Selection>(&instance.spec());
    if (sel == nullptr) {
        throw VariantError("selection DP: spec is " + variant_name(instance.spec()) +
                           ", expected selection");
    }
    const UncertaintySet& u = instance.uncertainty();
    const std::size_t n = u.size();
    const std::size_t p = sel->p;
    if (p > n) {
        throw InfeasibleError("selection: p = " + std::to_string(p) + " exceeds n = " + std::to_string(n));
    }
    const std::size_t k = u.num_regions();

    std::vector<RegionOrders> orders;
    std::vector<RegionPrefix> prefixes;
    orders.reserve(k);
    prefixes.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
        orders.push_back(sorted_region(u, j));
        prefixes.push_back(prefix_sums(u, orders.back(), p));
    }
    auto f = [&](std::size_t j, std::size_t q) {
        return q == 0 ? 0.0 : std::min(u.budgets()[j] + prefixes[j].lower[q], prefixes[j].upper[q]);
    };

    // table[p'] = best value using regions 0..j with p' items; choice[j][p'] = items from region j.
    std::vector<double> table(p + 1, kInf);
    std::vector<double> next(p + 1, kInf);
    std::vector<std::vector<std::uint32_t>> choice(k);
    std::size_t reach = std::min(p, prefixes[0].lower.size() - 1);
    for (std::size_t q = 0; q <= reach; ++q) table[q] = f(0, q);
    for (std::size_t j = 1; j < k; ++j) {
        const std::size_t m = prefixes[j].lower.size() - 1;
        const std::size_t new_reach = std::min(p, reach + m);
        auto& pick = choice[j];
        pick.assign(new_reach + 1, 0);
        std::fill(next.begin(), next.end(), kInf);
        for (std::size_t total = 0; total <= new_reach; ++total) {
            double best = kInf;
            std::uint32_t best_q = 0;
            const std::size_t q_lo = total > reach ? total - reach : 0;
            const std::size_t q_hi = std::min(total, m);
            for (std::size_t q = q_lo; q <= q_hi; ++q) {
                const double v = table[total - q] + f(j, q);
                if (v < best) {
                    best = v;
                    best_q = static_cast<std::uint32_t>(q);
                }
            }
            next[total] = best;
            pick[total] = best_q;
        }
        std::swap(table, next);
        reach = new_reach;
    }
    const double value = table[p];

    std::vector<std::size_t> counts(k, 0);
    std::size_t left = p;
    for (std::size_t j = k; j-- > 1;) {
        counts[j] = choice[j][left];
        left -= counts[j];
    }
    counts[0] = left;

    Incidence x(n, 0);
    for (std::size_t j = 0; j < k; ++j) {
        const std::size_t q = counts[j];
        if (q == 0) continue;
        const bool pay_budget = u.budgets()[j] + prefixes[j].lower[q] < prefixes[j].upper[q];
        const auto& order = pay_budget ? orders[j].by_lower : orders[j].by_upper;
        for (std::size_t t = 0; t < q; ++t) x[order[t]] = 1;
    }
    Incidence pi = certificate_pi(x, u);
    return finalize(u, std::move(x), value, std::move(pi), "selection DP");
}

BranchAndBoundResult solve_branch_and_bound(const Instance& instance, const BranchAndBoundLimits& limits) {
    const UncertaintySet& u = instance.uncertainty();
    const std::size_t k = u.num_regions();
    const NominalSolver nominal(instance.spec());
    const auto start = std::chrono::steady_clock::now();

    constexpr std::int8_t unfixed = -1;
    std::vector<std::int8_t> root(k, unfixed);
    for (std::size_t j = 0; j < k; ++j) {
        double region_dev = 0.0;
        for (std::size_t i : u.region_items(j)) region_dev += u.deviations()[i];
        if (u.budgets()[j] == 0.0) {
            root[j] = 1;
        } else if (u.budgets()[j] >= region_dev) {
            root[j] = 0;
        }
    }

    // Regions in branching order: largest budget first, lowest index on ties.
    std::vector<std::size_t> branch_order(k);
    std::iota(branch_order.begin(), branch_order.end(), std::size_t{0});
    std::stable_sort(branch_order.begin(), branch_order.end(),
                     [&](std::size_t a, std::size_t b) { return u.budgets()[a] > u.budgets()[b]; });

    BranchAndBoundResult result;
    double incumbent = kInf;
    Incidence incumbent_x;
    bool complete = true;

    std::vector<std::vector<std::int8_t>> stack{root};
    CostVector costs(u.size());
    std::vector<std::uint8_t> touched(k);
    while (!stack.empty()) {
        // The root is always processed so that an incumbent exists.
        if (result.nodes > 0 && result.nodes >= limits.max_nodes) {
            complete = false;
            break;
        }
        if (result.nodes > 0 && std::isfinite(limits.max_seconds)) {
            const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
            if (elapsed.count() > limits.max_seconds) {
                complete = false;
                break;
            }
        }
        std::vector<std::int8_t> fixed = std::move(stack.back());
        stack.pop_back();
        ++result.nodes;

        double paid = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            if (fixed[j] == 1) paid += u.budgets()[j];
        }
        for (std::size_t i = 0; i < u.size(); ++i) {
            costs[i] = u.lower_costs()[i] + (fixed[u.region_of()[i]] == 0 ? u.deviations()[i] : 0.0);
        }
        Solution sub = nominal.solve(costs);
        const double bound = paid + sub.objective;

        // Branch on an unfixed region the bound solution uses. If there is none,
        // pricing the unfixed regions at c + d leaves that solution's cost
        // unchanged, so the bound is attained and the node is closed.
        std::fill(touched.begin(), touched.end(), 0);
        for (std::size_t i = 0; i < u.size(); ++i) {
            if (sub.chosen[i]) touched[u.region_of()[i]] = 1;
        }
        const double value = evaluate_robust(sub.chosen, u);
        if (value < incumbent) {
            incumbent = value;
            incumbent_x = std::move(sub.chosen);
        }
        if (bound >= incumbent - kTolerance * 1e-3 * std::max(1.0, std::abs(incumbent))) continue;

        const auto next = std::find_if(branch_order.begin(), branch_order.end(),
                                       [&](std::size_t j) { return fixed[j] == unfixed && touched[j]; });
        if (next == branch_order.end()) continue;
        // Pushed in reverse so the pi = 1 child is explored first.
        std::vector<std::int8_t> child = fixed;
        child[*next] = 0;
        stack.push_back(child);
        child[*next] = 1;
        stack.push_back(std::move(child));
    }

    result.optimal = complete;
    Incidence pi = certificate_pi(incumbent_x, u);
    result.solution = finalize(u, std::move(incumbent_x), incumbent, std::move(pi), "branch-and-bound");
    return result;
}

Solution brute_force(const Instance& instance, std::size_t max_candidates) {
    BestTracker tracker{instance.uncertainty(), kInf, {}};
    enumerate_feasible(instance, max_candidates, tracker);
    if (!std::isfinite(tracker.best)) {
        throw InfeasibleError(variant_name(instance.spec()) + ": no feasible solution");
    }
    Incidence pi = certificate_pi(tracker.best_x, instance.uncertainty());
    return finalize(instance.uncertainty(), std::move(tracker.best_x), tracker.best, std::move(pi),
                    "brute force");
}

Solution solve(const Instance& instance, Method method) {
    switch (method) {
    case Method::Decomposition: return solve_decomposition(instance);
    case Method::SelectionDp: return solve_selection_dp(instance);
    case Method::BranchAndBound: return solve_branch_and_bound(instance).solution;
    case Method::BruteForce: return brute_force(instance);
    }
    throw std::invalid_argument("unknown method");
}

} // namespace lbr
