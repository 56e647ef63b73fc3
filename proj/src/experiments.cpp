#include "lbr/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <queue>
#include <sstream>
#include <stdexcept>

#include "lbr/fitting.hpp"
#include "lbr/sampling.hpp"

namespace lbr {

namespace {

std::uint64_t instance_seed(std::uint64_t seed, std::size_t i) {
    return Rng::substream(seed, i).next();
}

// Aborts the run with a message naming the failing instance.
[[noreturn]] void fail_instance(const char* experiment, std::size_t i, std::uint64_t seed, const std::exception& e) {
    throw std::runtime_error(std::string(experiment) + ": instance " + std::to_string(i) + " (seed " +
                             std::to_string(seed) + ") failed: " + e.what());
}

std::string format_factor(double f) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", f);
    return buf;
}

std::vector<char> reachable_from(const Graph& g, std::size_t s) {
    std::vector<std::vector<std::size_t>> out(g.nodes);
    for (auto [u, v] : g.edges) {
        out[u].push_back(v);
        if (!g.directed) out[v].push_back(u);
    }
    std::vector<char> seen(g.nodes, 0);
    std::queue<std::size_t> todo;
    seen[s] = 1;
    todo.push(s);
    while (!todo.empty()) {
        const std::size_t v = todo.front();
        todo.pop();
        for (std::size_t w : out[v]) {
            if (!seen[w]) {
                seen[w] = 1;
                todo.push(w);
            }
        }
    }
    return seen;
}

struct PathStats {
    double average = 0.0;
    double worst = 0.0;
};

PathStats path_stats(const ScenarioSet& s, const std::vector<std::size_t>& edges) {
    PathStats st;
    st.worst = -std::numeric_limits<double>::infinity();
    for (const auto& row : s.rows()) {
        double t = 0.0;
        for (std::size_t e : edges) t += row[e];
        st.average += t;
        st.worst = std::max(st.worst, t);
    }
    st.average /= static_cast<double>(s.size());
    return st;
}

template <typename T>
void read_key(const json& j, const char* key, T& target) {
    if (!j.contains(key)) return;
    try {
        target = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("config field '") + key + "': " + e.what());
    }
}

void read_method(const json& j, Method& target) {
    if (!j.contains("method")) return;
    std::string name;
    read_key(j, "method", name);
    target = parse_method(name);
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys) {
    if (!j.is_object()) throw ParseError("config must be a JSON object");
    for (const auto& item : j.items()) {
        if (std::find_if(keys.begin(), keys.end(), [&](const char* k) { return item.key() == k; }) == keys.end()) {
            throw ParseError("unknown config field '" + item.key() + "'");
        }
    }
}

} // namespace

void validate(const Exp1Config& c) {
    if (c.instances == 0) throw std::invalid_argument("exp1: instances must be positive");
    if (c.regions.empty()) throw std::invalid_argument("exp1: region list is empty");
    for (std::size_t k : c.regions) {
        if (k == 0 || k > c.n) throw std::invalid_argument("exp1: need 1 <= K <= n");
    }
    if (c.p_min > c.p_max || c.p_max > c.n) throw std::invalid_argument("exp1: need p_min <= p_max <= n");
}

std::vector<Exp1Row> run_exp1(const Exp1Config& config) {
    validate(config);
    std::vector<Exp1Row> rows;
    const std::size_t np = config.p_max - config.p_min + 1;
    for (std::size_t K : config.regions) {
        std::vector<double> local_sum(np, 0.0);
        std::vector<double> classic_sum(np, 0.0);
        std::vector<double> ratio_sum(np, 0.0);
        for (std::size_t i = 0; i < config.instances; ++i) {
            const std::uint64_t seed = instance_seed(config.seed, i);
            try {
                const UncertaintySet local = gen_random_uncertainty(config.n, K, seed);
                const UncertaintySet classic = to_classic(local);
                for (std::size_t t = 0; t < np; ++t) {
                    const Selection spec{config.p_min + t};
                    const Solution a = solve(Instance(local, spec), config.method);
                    const Solution b = solve(Instance(classic, spec), config.method);
                    const double classic_value = evaluate_robust(b.chosen, local);
                    local_sum[t] += a.objective;
                    classic_sum[t] += classic_value;
                    if (a.objective > 0.0) ratio_sum[t] += classic_value / a.objective;
                    else ratio_sum[t] += 1.0;
                }
            } catch (const std::exception& e) {
                fail_instance("exp1", i, seed, e);
            }
        }
        const auto count = static_cast<double>(config.instances);
        for (std::size_t t = 0; t < np; ++t) {
            Exp1Row row{K, config.p_min + t, local_sum[t] / count, classic_sum[t] / count, 0.0};
            row.ratio = config.mean_of_ratios ? ratio_sum[t] / count : classic_sum[t] / local_sum[t];
            rows.push_back(row);
        }
    }
    return rows;
}

std::string exp1_csv(const std::vector<Exp1Row>& rows) {
    std::ostringstream out;
    out << "K,p,avg_local,avg_classic_evaluated_locally,ratio\n";
    for (const auto& r : rows) {
        out << r.K << ',' << r.p << ',' << format_number(r.avg_local) << ','
            << format_number(r.avg_classic_evaluated_locally) << ',' << format_number(r.ratio) << '\n';
    }
    return out.str();
}

void validate(const Exp2Config& c) {
    if (c.instances == 0) throw std::invalid_argument("exp2: instances must be positive");
    if (c.regions.empty() || c.sample_sizes.empty()) throw std::invalid_argument("exp2: empty grid");
    for (std::size_t k : c.regions) {
        if (k == 0 || k > c.n) throw std::invalid_argument("exp2: need 1 <= K <= n");
    }
    for (std::size_t N : c.sample_sizes) {
        if (N < 2) throw std::invalid_argument("exp2: sample sizes must be at least 2");
    }
    if (c.p > c.n) throw std::invalid_argument("exp2: need p <= n");
    validate(FitConfig{c.threshold, 1.0, BoundsMode::Given});
}

std::vector<Exp2Row> run_exp2(const Exp2Config& config) {
    validate(config);
    const std::size_t max_n = *std::max_element(config.sample_sizes.begin(), config.sample_sizes.end());
    const std::size_t ns = config.sample_sizes.size();
    const FitConfig fit_config{config.threshold, 1.0, BoundsMode::Given};
    const Selection spec{config.p};
    std::vector<Exp2Row> rows;
    for (std::size_t K : config.regions) {
        std::vector<double> local_sum(ns, 0.0);
        std::vector<double> classic_sum(ns, 0.0);
        double optimum_sum = 0.0;
        for (std::size_t i = 0; i < config.instances; ++i) {
            Rng stream = Rng::substream(config.seed, i);
            const std::uint64_t seed = stream.next();
            const std::uint64_t sample_seed = stream.next();
            try {
                const UncertaintySet truth = gen_random_uncertainty(config.n, K, seed);
                optimum_sum += solve(Instance(truth, spec), config.method).objective;
                // Smaller samples are prefixes of the largest one.
                const ScenarioSet all = sample_scenarios(truth, max_n, sample_seed);
                const Bounds bounds{truth.lower_costs(), truth.deviations()};
                for (std::size_t t = 0; t < ns; ++t) {
                    const FittedModel model = fit(all.slice(0, config.sample_sizes[t]), fit_config, bounds);
                    const Solution a = solve(Instance(model.local, spec), config.method);
                    const Solution b = solve(Instance(model.classic, spec), config.method);
                    local_sum[t] += evaluate_robust(a.chosen, truth);
                    classic_sum[t] += evaluate_robust(b.chosen, truth);
                }
            } catch (const std::exception& e) {
                fail_instance("exp2", i, seed, e);
            }
        }
        const auto count = static_cast<double>(config.instances);
        for (std::size_t t = 0; t < ns; ++t) {
            rows.push_back({K, config.sample_sizes[t], local_sum[t] / count, classic_sum[t] / count,
                            optimum_sum / count});
        }
    }
    return rows;
}

std::string exp2_csv(const std::vector<Exp2Row>& rows) {
    std::ostringstream out;
    out << "K,N,avg_true_value_local_fit,avg_true_value_classic_fit,avg_true_optimum\n";
    for (const auto& r : rows) {
        out << r.K << ',' << r.N << ',' << format_number(r.avg_true_value_local_fit) << ','
            << format_number(r.avg_true_value_classic_fit) << ',' << format_number(r.avg_true_optimum) << '\n';
    }
    return out.str();
}

void validate(const Exp3Config& c) {
    if (!(c.f_step > 0.0)) throw std::invalid_argument("exp3: f_step must be positive");
    if (!(c.f_start >= 0.0) || !(c.f_stop >= c.f_start)) {
        throw std::invalid_argument("exp3: need 0 <= f_start <= f_stop");
    }
    if (!(c.train_fraction >= 0.0 && c.train_fraction <= 1.0)) {
        throw std::invalid_argument("exp3: train_fraction must lie in [0, 1]");
    }
    if (c.queries == 0) throw std::invalid_argument("exp3: queries must be positive");
    if (c.node_cap == 0) throw std::invalid_argument("exp3: node_cap must be positive");
}

std::vector<double> budget_factors(const Exp3Config& c) {
    validate(c);
    // Small slack so that a stop value on the grid is included despite rounding.
    const auto steps = static_cast<std::size_t>(std::floor((c.f_stop - c.f_start) / c.f_step + 1e-9));
    std::vector<double> fs(steps + 1);
    for (std::size_t k = 0; k <= steps; ++k) fs[k] = c.f_start + static_cast<double>(k) * c.f_step;
    return fs;
}

Exp3Result run_exp3(const Exp3Config& config, const DatasetBundle& data) {
    const std::vector<double> factors = budget_factors(config);
    const std::size_t total = data.snapshots.size();
    const auto train_rows = static_cast<std::size_t>(std::floor(config.train_fraction * static_cast<double>(total)));
    if (train_rows < 2 || train_rows >= total) {
        throw PreconditionError("exp3: the split leaves " + std::to_string(train_rows) + " training and " +
                                std::to_string(total - train_rows) +
                                " test snapshots; both sides need rows and training needs two");
    }
    const ScenarioSet train = data.snapshots.slice(0, train_rows);
    const ScenarioSet test = data.snapshots.slice(train_rows, total);
    const FittedModel base =
        fit_with_partition(train, data.partition(), FitConfig{0.0, 1.0, BoundsMode::Estimated});

    Exp3Result result;
    Rng rng = Rng::substream(config.seed, 0);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    while (pairs.size() < config.queries) {
        const std::size_t s = rng.uniform_below(data.graph.nodes);
        std::size_t t = rng.uniform_below(data.graph.nodes - 1);
        if (t >= s) ++t;
        if (!reachable_from(data.graph, s)[t]) {
            ++result.redrawn;
            if (result.redrawn > 100 * config.queries) {
                throw InfeasibleError("exp3: could not find reachable query pairs");
            }
            continue;
        }
        pairs.emplace_back(s, t);
    }

    for (double f : factors) {
        const FittedModel model = scale_budgets(base, f);
        for (const char* name : {"classic", "local"}) {
            const bool local = std::string(name) == "local";
            PathStats in_sum;
            PathStats out_sum;
            std::size_t capped = 0;
            for (auto [s, t] : pairs) {
                const Instance inst(local ? model.local : model.classic, ShortestPath{data.graph, s, t});
                Solution sol;
                if (local) {
                    BranchAndBoundResult r = solve_branch_and_bound(inst, {config.node_cap});
                    if (!r.optimal) ++capped;
                    sol = std::move(r.solution);
                } else {
                    sol = solve_decomposition(inst);
                }
                const auto edges = chosen_items(sol.chosen);
                const PathStats a = path_stats(train, edges);
                const PathStats b = path_stats(test, edges);
                in_sum.average += a.average;
                in_sum.worst += a.worst;
                out_sum.average += b.average;
                out_sum.worst += b.worst;
            }
            const auto q = static_cast<double>(pairs.size());
            result.rows.push_back({f, name, in_sum.average / q, in_sum.worst / q, "in", capped});
            result.rows.push_back({f, name, out_sum.average / q, out_sum.worst / q, "out", capped});
        }
    }
    return result;
}

std::string exp3_csv(const std::vector<Exp3Row>& rows) {
    std::ostringstream out;
    out << "f,model,avg_time,avg_worst_case_time,split\n";
    for (const auto& r : rows) {
        out << format_factor(r.f) << ',' << r.model << ',' << format_number(r.avg_time) << ','
            << format_number(r.avg_worst_case_time) << ',' << r.split << '\n';
    }
    return out.str();
}

Exp1Config exp1_config_from_json(const json& j, Exp1Config c) {
    reject_unknown(j, {"instances", "n", "regions", "p_min", "p_max", "seed", "method", "mean_of_ratios"});
    read_key(j, "instances", c.instances);
    read_key(j, "n", c.n);
    read_key(j, "regions", c.regions);
    read_key(j, "p_min", c.p_min);
    read_key(j, "p_max", c.p_max);
    read_key(j, "seed", c.seed);
    read_method(j, c.method);
    read_key(j, "mean_of_ratios", c.mean_of_ratios);
    return c;
}

Exp2Config exp2_config_from_json(const json& j, Exp2Config c) {
    reject_unknown(j, {"instances", "n", "p", "regions", "sample_sizes", "threshold", "seed", "method"});
    read_key(j, "instances", c.instances);
    read_key(j, "n", c.n);
    read_key(j, "p", c.p);
    read_key(j, "regions", c.regions);
    read_key(j, "sample_sizes", c.sample_sizes);
    read_key(j, "threshold", c.threshold);
    read_key(j, "seed", c.seed);
    read_method(j, c.method);
    return c;
}

Exp3Config exp3_config_from_json(const json& j, Exp3Config c) {
    reject_unknown(j, {"f_start", "f_stop", "f_step", "queries", "train_fraction", "node_cap", "seed"});
    read_key(j, "f_start", c.f_start);
    read_key(j, "f_stop", c.f_stop);
    read_key(j, "f_step", c.f_step);
    read_key(j, "queries", c.queries);
    read_key(j, "train_fraction", c.train_fraction);
    read_key(j, "node_cap", c.node_cap);
    read_key(j, "seed", c.seed);
    return c;
}

} // namespace lbr
