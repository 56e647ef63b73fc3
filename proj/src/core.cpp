#include "lbr/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "disjoint_sets.hpp"

namespace lbr {

namespace {

void require_finite_nonnegative(const std::vector<double>& v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (!std::isfinite(v[i]) || v[i] < 0.0) {
            throw std::invalid_argument(std::string(what) + "[" + std::to_string(i) +
                                        "] must be finite and nonnegative");
        }
    }
}

void require_length(std::size_t got, std::size_t want, const char* what) {
    if (got != want) {
        throw DimensionError(std::string(what) + ": length " + std::to_string(got) +
                             ", expected " + std::to_string(want));
    }
}

void validate_graph(const Graph& g, std::size_t n, const char* variant) {
    if (g.edges.size() != n) {
        throw std::invalid_argument(std::string(variant) + ": edge count " +
                                    std::to_string(g.edges.size()) + " differs from item count " +
                                    std::to_string(n));
    }
    for (const auto& [u, v] : g.edges) {
        if (u >= g.nodes || v >= g.nodes) {
            throw std::invalid_argument(std::string(variant) + ": edge endpoint out of range");
        }
    }
}

void validate_terminals(const Graph& g, std::size_t s, std::size_t t, const char* variant) {
    if (s >= g.nodes || t >= g.nodes) {
        throw std::invalid_argument(std::string(variant) + ": terminal out of range");
    }
    if (s == t) {
        throw std::invalid_argument(std::string(variant) + ": source equals target");
    }
}

bool is_binary(std::span<const std::uint8_t> x) {
    return std::all_of(x.begin(), x.end(), [](std::uint8_t b) { return b <= 1; });
}

bool feasible_path(std::span<const std::uint8_t> x, const ShortestPath& sp) {
    const Graph& g = sp.graph;
    if (x.size() != g.edges.size()) return false;
    const std::size_t total = static_cast<std::size_t>(std::count(x.begin(), x.end(), 1));
    if (total == 0) return false;

    // Incident chosen edges per node; a simple path touches each node at most twice.
    std::vector<std::vector<std::size_t>> out(g.nodes);
    std::vector<std::size_t> indeg(g.nodes, 0);
    for (std::size_t e = 0; e < x.size(); ++e) {
        if (!x[e]) continue;
        const auto [u, v] = g.edges[e];
        out[u].push_back(e);
        if (g.directed) {
            ++indeg[v];
        } else {
            out[v].push_back(e);
        }
    }
    if (g.directed) {
        for (std::size_t v = 0; v < g.nodes; ++v) {
            if (out[v].size() > 1 || indeg[v] > 1) return false;
        }
        if (indeg[sp.source] != 0 || !out[sp.target].empty()) return false;
    } else {
        for (std::size_t v = 0; v < g.nodes; ++v) {
            const std::size_t want = (v == sp.source || v == sp.target) ? 1 : 2;
            if (!out[v].empty() && out[v].size() != want) return false;
        }
        if (out[sp.source].size() != 1 || out[sp.target].size() != 1) return false;
    }

    std::vector<char> seen(g.nodes, 0);
    std::size_t node = sp.source;
    std::size_t prev_edge = x.size();
    std::size_t steps = 0;
    seen[node] = 1;
    while (node != sp.target) {
        std::size_t next_edge = x.size();
        for (std::size_t e : out[node]) {
            if (e != prev_edge) {
                next_edge = e;
                break;
            }
        }
        if (next_edge == x.size()) return false;
        const auto [u, v] = g.edges[next_edge];
        const std::size_t next = (u == node) ? v : u;
        if (seen[next]) return false;
        seen[next] = 1;
        node = next;
        prev_edge = next_edge;
        ++steps;
    }
    return steps == total;
}

bool feasible_tree(std::span<const std::uint8_t> x, const SpanningTree& st) {
    const Graph& g = st.graph;
    if (x.size() != g.edges.size()) return false;
    const std::size_t total = static_cast<std::size_t>(std::count(x.begin(), x.end(), 1));
    if (g.nodes == 0 || total != g.nodes - 1) return false;
    detail::DisjointSets sets(g.nodes);
    for (std::size_t e = 0; e < x.size(); ++e) {
        if (x[e] && !sets.unite(g.edges[e].first, g.edges[e].second)) return false;
    }
    return true;
}

// x is a cut iff it equals the out-edges of some node set S with s in S, t not
// in S. The smallest candidate is the closure of {s} and all chosen tails under
// unchosen edges; x is a cut iff that closure excludes t and every chosen head.
bool feasible_cut(std::span<const std::uint8_t> x, const MinCut& mc) {
    const Graph& g = mc.graph;
    if (x.size() != g.edges.size()) return false;
    std::vector<std::vector<std::size_t>> open(g.nodes);
    std::vector<char> in_set(g.nodes, 0);
    std::vector<std::size_t> stack;
    auto add = [&](std::size_t v) {
        if (!in_set[v]) {
            in_set[v] = 1;
            stack.push_back(v);
        }
    };
    for (std::size_t e = 0; e < x.size(); ++e) {
        const auto [u, v] = g.edges[e];
        if (x[e]) {
            add(u);
        } else {
            open[u].push_back(v);
        }
    }
    add(mc.source);
    while (!stack.empty()) {
        const std::size_t v = stack.back();
        stack.pop_back();
        for (std::size_t w : open[v]) add(w);
    }
    if (in_set[mc.sink]) return false;
    for (std::size_t e = 0; e < x.size(); ++e) {
        if (x[e] && in_set[g.edges[e].second]) return false;
    }
    return true;
}

} // namespace

UncertaintySet::UncertaintySet(CostVector lower_costs, CostVector deviations,
                               std::vector<std::size_t> region_of, std::vector<double> budgets)
    : lower_(std::move(lower_costs)),
      dev_(std::move(deviations)),
      region_of_(std::move(region_of)),
      budgets_(std::move(budgets)) {
    if (lower_.empty()) throw std::invalid_argument("uncertainty set needs at least one item");
    if (budgets_.empty()) throw std::invalid_argument("uncertainty set needs at least one region");
    require_length(dev_.size(), lower_.size(), "deviations");
    require_length(region_of_.size(), lower_.size(), "region_of");
    require_finite_nonnegative(lower_, "lower_costs");
    require_finite_nonnegative(dev_, "deviations");
    require_finite_nonnegative(budgets_, "budgets");

    regions_.assign(budgets_.size(), {});
    for (std::size_t i = 0; i < region_of_.size(); ++i) {
        if (region_of_[i] >= budgets_.size()) {
            throw std::invalid_argument("region_of[" + std::to_string(i) + "] out of range");
        }
        regions_[region_of_[i]].push_back(i);
    }
    for (std::size_t j = 0; j < regions_.size(); ++j) {
        if (regions_[j].empty()) {
            throw std::invalid_argument("region " + std::to_string(j) + " is empty");
        }
    }
}

UncertaintySet UncertaintySet::with_budgets(std::vector<double> budgets) const {
    require_length(budgets.size(), budgets_.size(), "budgets");
    return UncertaintySet(lower_, dev_, region_of_, std::move(budgets));
}

std::string variant_name(const ProblemSpec& spec) {
    static constexpr const char* names[] = {"selection",     "representative_selection",
                                            "shortest_path", "spanning_tree",
                                            "min_cut",       "unconstrained"};
    return names[spec.index()];
}

void validate_spec(const ProblemSpec& spec, std::size_t n) {
    std::visit(
        [n](const auto& s) {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Selection>) {
                if (s.p > n) throw std::invalid_argument("selection: p exceeds item count");
            } else if constexpr (std::is_same_v<T, RepresentativeSelection>) {
                if (s.parts.size() != s.quotas.size()) {
                    throw std::invalid_argument("representative_selection: one quota per part required");
                }
                std::vector<char> seen(n, 0);
                std::size_t covered = 0;
                for (std::size_t l = 0; l < s.parts.size(); ++l) {
                    if (s.quotas[l] > s.parts[l].size()) {
                        throw std::invalid_argument("representative_selection: quota exceeds size of part " +
                                                    std::to_string(l));
                    }
                    for (std::size_t i : s.parts[l]) {
                        if (i >= n || seen[i]) {
                            throw std::invalid_argument(
                                "representative_selection: parts do not partition the items");
                        }
                        seen[i] = 1;
                        ++covered;
                    }
                }
                if (covered != n) {
                    throw std::invalid_argument("representative_selection: parts do not cover all items");
                }
            } else if constexpr (std::is_same_v<T, ShortestPath>) {
                validate_graph(s.graph, n, "shortest_path");
                validate_terminals(s.graph, s.source, s.target, "shortest_path");
            } else if constexpr (std::is_same_v<T, SpanningTree>) {
                validate_graph(s.graph, n, "spanning_tree");
                if (s.graph.nodes == 0) throw std::invalid_argument("spanning_tree: empty graph");
            } else if constexpr (std::is_same_v<T, MinCut>) {
                validate_graph(s.graph, n, "min_cut");
                validate_terminals(s.graph, s.source, s.sink, "min_cut");
            }
        },
        spec);
}

Instance::Instance(UncertaintySet uncertainty, ProblemSpec spec)
    : uncertainty_(std::move(uncertainty)), spec_(std::move(spec)) {
    validate_spec(spec_, uncertainty_.size());
}

ScenarioSet::ScenarioSet(std::size_t num_items, std::vector<Scenario> rows) : n_(num_items) {
    rows_.reserve(rows.size());
    for (auto& r : rows) push_back(std::move(r));
}

void ScenarioSet::push_back(Scenario row) {
    if (row.size() != n_) {
        throw DimensionError("scenario row " + std::to_string(rows_.size()) + " has length " +
                             std::to_string(row.size()) + ", expected " + std::to_string(n_));
    }
    rows_.push_back(std::move(row));
}

ScenarioSet ScenarioSet::slice(std::size_t first, std::size_t last) const {
    if (first > last || last > rows_.size()) throw std::out_of_range("scenario slice out of range");
    ScenarioSet out(n_);
    out.rows_.assign(rows_.begin() + static_cast<std::ptrdiff_t>(first),
                     rows_.begin() + static_cast<std::ptrdiff_t>(last));
    return out;
}

double evaluate_robust(std::span<const std::uint8_t> x, const UncertaintySet& u) {
    require_length(x.size(), u.size(), "incidence vector");
    const auto& lower = u.lower_costs();
    const auto& dev = u.deviations();
    double value = 0.0;
    for (std::size_t j = 0; j < u.num_regions(); ++j) {
        double chosen_dev = 0.0;
        for (std::size_t i : u.region_items(j)) {
            if (x[i]) {
                value += lower[i];
                chosen_dev += dev[i];
            }
        }
        value += std::min(u.budgets()[j], chosen_dev);
    }
    return value;
}

Scenario worst_case_scenario(std::span<const std::uint8_t> x, const UncertaintySet& u) {
    require_length(x.size(), u.size(), "incidence vector");
    Scenario c = u.lower_costs();
    const auto& dev = u.deviations();
    for (std::size_t j = 0; j < u.num_regions(); ++j) {
        double remaining = u.budgets()[j];
        for (std::size_t i : u.region_items(j)) {
            if (!x[i] || remaining <= 0.0) continue;
            const double delta = std::min(dev[i], remaining);
            c[i] += delta;
            remaining -= delta;
        }
    }
    return c;
}

bool is_member(std::span<const double> c, const UncertaintySet& u, double tol) {
    require_length(c.size(), u.size(), "scenario");
    const auto& lower = u.lower_costs();
    const auto& dev = u.deviations();
    auto slack = [tol](double scale) { return tol * std::max(1.0, std::abs(scale)); };
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] < lower[i] - slack(lower[i])) return false;
        if (c[i] > lower[i] + dev[i] + slack(lower[i] + dev[i])) return false;
    }
    for (std::size_t j = 0; j < u.num_regions(); ++j) {
        double used = 0.0;
        for (std::size_t i : u.region_items(j)) used += c[i] - lower[i];
        if (used > u.budgets()[j] + slack(u.budgets()[j])) return false;
    }
    return true;
}

Incidence certificate_pi(std::span<const std::uint8_t> x, const UncertaintySet& u) {
    require_length(x.size(), u.size(), "incidence vector");
    Incidence pi(u.num_regions(), 0);
    for (std::size_t j = 0; j < u.num_regions(); ++j) {
        double chosen_dev = 0.0;
        for (std::size_t i : u.region_items(j)) {
            if (x[i]) chosen_dev += u.deviations()[i];
        }
        pi[j] = u.budgets()[j] <= chosen_dev ? 1 : 0;
    }
    return pi;
}

double certificate_value(std::span<const std::uint8_t> x, std::span<const std::uint8_t> pi,
                         const UncertaintySet& u) {
    require_length(x.size(), u.size(), "incidence vector");
    require_length(pi.size(), u.num_regions(), "pi");
    double value = 0.0;
    for (std::size_t j = 0; j < u.num_regions(); ++j) {
        if (pi[j]) value += u.budgets()[j];
        for (std::size_t i : u.region_items(j)) {
            if (x[i]) value += u.lower_costs()[i] + (pi[j] ? 0.0 : u.deviations()[i]);
        }
    }
    return value;
}

bool check_feasible(std::span<const std::uint8_t> x, const ProblemSpec& spec) {
    if (!is_binary(x)) return false;
    return std::visit(
        [x](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Selection>) {
                return static_cast<std::size_t>(std::count(x.begin(), x.end(), 1)) == s.p;
            } else if constexpr (std::is_same_v<T, RepresentativeSelection>) {
                std::size_t total = 0;
                for (std::size_t l = 0; l < s.parts.size(); ++l) {
                    std::size_t taken = 0;
                    for (std::size_t i : s.parts[l]) {
                        if (i >= x.size()) return false;
                        taken += x[i];
                    }
                    if (taken != s.quotas[l]) return false;
                    total += s.parts[l].size();
                }
                return total == x.size();
            } else if constexpr (std::is_same_v<T, ShortestPath>) {
                return feasible_path(x, s);
            } else if constexpr (std::is_same_v<T, SpanningTree>) {
                return feasible_tree(x, s);
            } else if constexpr (std::is_same_v<T, MinCut>) {
                return feasible_cut(x, s);
            } else {
                return true;
            }
        },
        spec);
}

UncertaintySet to_classic(const UncertaintySet& u) {
    if (u.num_regions() == 1) return u;
    double total = 0.0;
    for (double b : u.budgets()) total += b;
    return UncertaintySet(u.lower_costs(), u.deviations(), std::vector<std::size_t>(u.size(), 0),
                          {total});
}

double linear_cost(std::span<const double> c, std::span<const std::uint8_t> x) {
    require_length(x.size(), c.size(), "incidence vector");
    double value = 0.0;
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (x[i]) value += c[i];
    }
    return value;
}

std::vector<std::size_t> chosen_items(std::span<const std::uint8_t> x) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (x[i]) out.push_back(i);
    }
    return out;
}

Incidence make_incidence(std::size_t n, std::span<const std::size_t> items) {
    Incidence x(n, 0);
    for (std::size_t i : items) {
        if (i >= n) throw DimensionError("item " + std::to_string(i) + " out of range");
        x[i] = 1;
    }
    return x;
}

} // namespace lbr
