// Command-line front end for the lbr library.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "lbr/dataset.hpp"
#include "lbr/exact.hpp"
#include "lbr/experiments.hpp"
#include "lbr/fitting.hpp"
#include "lbr/io.hpp"
#include "lbr/sampling.hpp"

namespace {

using namespace lbr;

void emit(const std::string& text, const std::string& out) {
    if (out.empty()) {
        std::cout << text;
    } else {
        write_text_file(out, text);
    }
}

std::ifstream open_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return in;
}

std::vector<std::size_t> parse_item_list(const std::string& text, std::size_t n) {
    std::vector<std::size_t> items;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) continue;
        std::size_t pos = 0;
        const unsigned long v = std::stoul(token, &pos);
        if (pos != token.size() || v == 0 || v > n) {
            throw std::invalid_argument("item '" + token + "' is not in 1.." + std::to_string(n));
        }
        items.push_back(v - 1);
    }
    return items;
}

json uncertainty_json(const UncertaintySet& u) {
    std::vector<std::size_t> regions(u.region_of());
    for (auto& r : regions) ++r;
    return json{{"n", u.size()},
                {"lower_costs", u.lower_costs()},
                {"deviations", u.deviations()},
                {"region_of", regions},
                {"budgets", u.budgets()}};
}

BoundsMode parse_bounds(const std::string& s) {
    if (s == "given") return BoundsMode::Given;
    if (s == "estimated") return BoundsMode::Estimated;
    throw std::invalid_argument("--bounds must be 'given' or 'estimated'");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Robust combinatorial optimization under locally budgeted uncertainty"};
    app.require_subcommand(1);

    std::string out;
    std::uint64_t seed = 1;
    std::string method_name_opt = "decomp";
    std::string config_path;
    std::string instance_path;

    // solve
    auto* solve_cmd = app.add_subcommand("solve", "Solve an instance JSON and print the solution JSON");
    std::size_t node_cap = 0;
    double time_cap = 0.0;
    solve_cmd->add_option("instance", instance_path, "Instance JSON")->required();
    solve_cmd->add_option("--method", method_name_opt, "decomp|dp|bnb|brute")->capture_default_str();
    solve_cmd->add_option("--node-cap", node_cap, "Branch-and-bound node cap (0 = none)");
    solve_cmd->add_option("--time-cap", time_cap, "Branch-and-bound time cap in seconds (0 = none)");
    solve_cmd->add_option("--out", out, "Output file (default stdout)");

    // evaluate
    auto* eval_cmd = app.add_subcommand("evaluate", "Robust value and a worst-case scenario of a selection");
    std::string items_text;
    eval_cmd->add_option("instance", instance_path, "Instance JSON")->required();
    eval_cmd->add_option("--items", items_text, "Chosen items, 1-based, comma separated")->required();
    eval_cmd->add_option("--out", out, "Output file (default stdout)");

    // fit
    auto* fit_cmd = app.add_subcommand("fit", "Fit classic and local sets to a scenario CSV");
    std::string scenario_path;
    std::string bounds_text = "estimated";
    std::string bounds_from;
    FitConfig fit_config;
    fit_cmd->add_option("scenarios", scenario_path, "Scenario CSV")->required();
    fit_cmd->add_option("--threshold", fit_config.correlation_threshold, "Correlation threshold")
        ->capture_default_str();
    fit_cmd->add_option("--budget-factor", fit_config.budget_factor, "Budget factor f")->capture_default_str();
    fit_cmd->add_option("--bounds", bounds_text, "given|estimated")->capture_default_str();
    fit_cmd->add_option("--bounds-from", bounds_from, "Instance JSON supplying lower costs and deviations");
    fit_cmd->add_option("--out", out, "Output file (default stdout)");

    // sample
    auto* sample_cmd = app.add_subcommand("sample", "Sample scenarios from an instance's uncertainty set");
    std::size_t count = 100;
    sample_cmd->add_option("instance", instance_path, "Instance JSON")->required();
    sample_cmd->add_option("-N,--count", count, "Number of scenarios")->capture_default_str();
    sample_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    sample_cmd->add_option("--out", out, "Output CSV (default stdout)");

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "Generate instances");
    gen_cmd->require_subcommand(1);
    std::size_t gen_n = 30;
    std::size_t gen_k = 2;
    std::size_t gen_p = 10;
    auto* gen_random = gen_cmd->add_subcommand("random", "Random selection instance");
    gen_random->add_option("--n", gen_n, "Item count")->capture_default_str();
    gen_random->add_option("--regions", gen_k, "Region count K")->capture_default_str();
    gen_random->add_option("--p", gen_p, "Selection size")->capture_default_str();
    gen_random->add_option("--seed", seed, "Random seed")->capture_default_str();
    gen_random->add_option("--out", out, "Output file (default stdout)");
    std::string source_path;
    auto* gen_vc = gen_cmd->add_subcommand("vc", "Instance from a vertex cover edge list");
    gen_vc->add_option("graph", source_path, "Edge list, one 'u v' per line")->required();
    gen_vc->add_option("--out", out, "Output file (default stdout)");
    auto* gen_sat = gen_cmd->add_subcommand("3sat", "Instance from a DIMACS 3-CNF formula");
    gen_sat->add_option("formula", source_path, "DIMACS CNF file")->required();
    gen_sat->add_option("--out", out, "Output file (default stdout)");
    auto* gen_cover = gen_cmd->add_subcommand("setcover", "Instance from a set cover JSON");
    gen_cover->add_option("cover", source_path, "Subsets JSON")->required();
    gen_cover->add_option("--out", out, "Output file (default stdout)");
    auto* gen_synth = gen_cmd->add_subcommand("synthetic", "Synthetic road network dataset");
    std::string graph_out;
    std::string scenarios_out;
    SyntheticConfig synth;
    gen_synth->add_option("--graph-out", graph_out, "Graph file to write")->required();
    gen_synth->add_option("--scenarios-out", scenarios_out, "Scenario CSV to write")->required();
    gen_synth->add_option("--grid", synth.grid, "Intersections per side")->capture_default_str();
    gen_synth->add_option("--snapshots", synth.snapshots, "Snapshot count")->capture_default_str();
    gen_synth->add_option("--seed", seed, "Random seed")->capture_default_str();

    // experiments
    std::optional<std::size_t> instances;
    std::optional<std::string> exp_method;
    bool mean_of_ratios = false;
    auto* exp1_cmd = app.add_subcommand("exp1", "Classic vs local sets on random selection instances");
    exp1_cmd->add_option("--config", config_path, "JSON config");
    exp1_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    exp1_cmd->add_option("--instances", instances, "Instances per cell");
    exp1_cmd->add_option("--method", exp_method, "decomp|dp|bnb|brute");
    exp1_cmd->add_flag("--mean-of-ratios", mean_of_ratios, "Average per-instance ratios");
    exp1_cmd->add_option("--out", out, "Output CSV (default stdout)");

    auto* exp2_cmd = app.add_subcommand("exp2", "Fitted classic vs local sets on sampled scenarios");
    exp2_cmd->add_option("--config", config_path, "JSON config");
    exp2_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    exp2_cmd->add_option("--instances", instances, "Instances per cell");
    exp2_cmd->add_option("--method", exp_method, "decomp|dp|bnb|brute");
    exp2_cmd->add_option("--out", out, "Output CSV (default stdout)");

    auto* exp3_cmd = app.add_subcommand("exp3", "Shortest paths on road scenario data");
    std::string graph_path;
    bool synthetic = false;
    exp3_cmd->add_option("--config", config_path, "JSON config");
    exp3_cmd->add_option("--seed", seed, "Random seed")->capture_default_str();
    exp3_cmd->add_option("--graph", graph_path, "Graph file");
    exp3_cmd->add_option("--scenarios", scenario_path, "Snapshot CSV");
    exp3_cmd->add_flag("--synthetic", synthetic, "Use the synthetic grid network");
    exp3_cmd->add_option("--out", out, "Output CSV (default stdout)");

    auto* ingest_cmd = app.add_subcommand("ingest", "Validate a graph file and snapshot CSV");
    ingest_cmd->add_option("--graph", graph_path, "Graph file")->required();
    ingest_cmd->add_option("--scenarios", scenario_path, "Snapshot CSV")->required();

    CLI11_PARSE(app, argc, argv);

    auto seed_given = [&](CLI::App* cmd) { return cmd->count("--seed") > 0; };

    try {
        if (*solve_cmd) {
            const Instance inst = instance_from_json(read_json_file(instance_path));
            const Method m = parse_method(method_name_opt);
            json result;
            if (m == Method::BranchAndBound) {
                BranchAndBoundLimits limits;
                if (node_cap > 0) limits.max_nodes = node_cap;
                if (time_cap > 0.0) limits.max_seconds = time_cap;
                const BranchAndBoundResult r = solve_branch_and_bound(inst, limits);
                result = solution_to_json(r.solution);
                result["optimal"] = r.optimal;
                result["nodes"] = r.nodes;
            } else {
                result = solution_to_json(solve(inst, m));
            }
            result["method"] = method_name(m);
            emit(result.dump(2) + "\n", out);
        } else if (*eval_cmd) {
            const Instance inst = instance_from_json(read_json_file(instance_path));
            const Incidence x = make_incidence(inst.size(), parse_item_list(items_text, inst.size()));
            json result{{"objective", evaluate_robust(x, inst.uncertainty())},
                        {"feasible", check_feasible(x, inst.spec())},
                        {"worst_case_scenario", worst_case_scenario(x, inst.uncertainty())}};
            emit(result.dump(2) + "\n", out);
        } else if (*fit_cmd) {
            fit_config.bounds_mode = parse_bounds(bounds_text);
            std::ifstream in = open_input(scenario_path);
            const ScenarioSet s = read_scenario_csv(in);
            std::optional<Bounds> given;
            if (fit_config.bounds_mode == BoundsMode::Given) {
                if (bounds_from.empty()) throw std::invalid_argument("--bounds given requires --bounds-from");
                const UncertaintySet u = uncertainty_from_json(read_json_file(bounds_from));
                given = Bounds{u.lower_costs(), u.deviations()};
            }
            const FittedModel model = fit(s, fit_config, given);
            json result{{"classic", uncertainty_json(model.classic)},
                        {"local", uncertainty_json(model.local)},
                        {"num_regions", model.num_regions},
                        {"clipped", model.clipped}};
            emit(result.dump(2) + "\n", out);
        } else if (*sample_cmd) {
            const Instance inst = instance_from_json(read_json_file(instance_path));
            std::ostringstream csv;
            write_scenario_csv(csv, sample_scenarios(inst.uncertainty(), count, seed));
            emit(csv.str(), out);
        } else if (*gen_cmd) {
            if (*gen_synth) {
                const DatasetBundle b = make_synthetic_bundle(synth, seed);
                std::ostringstream g;
                write_graph_file(g, LabelledGraph{b.graph, b.region_of, b.region_labels});
                write_text_file(graph_out, g.str());
                std::ostringstream csv;
                write_scenario_csv(csv, b.snapshots);
                write_text_file(scenarios_out, csv.str());
                std::cerr << summary(b) << '\n';
                return 0;
            }
            std::optional<Instance> inst;
            if (*gen_random) {
                inst = gen_random_instance(gen_n, gen_k, seed, Selection{gen_p});
            } else if (*gen_vc) {
                std::ifstream in = open_input(source_path);
                inst = gen_from_vertex_cover(read_edge_list(in));
            } else if (*gen_sat) {
                std::ifstream in = open_input(source_path);
                inst = gen_from_3sat(read_dimacs(in));
            } else if (*gen_cover) {
                inst = gen_from_set_cover(set_cover_from_json(read_json_file(source_path)));
            }
            emit(instance_to_json(*inst).dump(2) + "\n", out);
        } else if (*exp1_cmd) {
            Exp1Config c = config_path.empty() ? Exp1Config{} : exp1_config_from_json(read_json_file(config_path));
            if (seed_given(exp1_cmd)) c.seed = seed;
            if (instances) c.instances = *instances;
            if (exp_method) c.method = parse_method(*exp_method);
            if (mean_of_ratios) c.mean_of_ratios = true;
            emit(exp1_csv(run_exp1(c)), out);
        } else if (*exp2_cmd) {
            Exp2Config c = config_path.empty() ? Exp2Config{} : exp2_config_from_json(read_json_file(config_path));
            if (seed_given(exp2_cmd)) c.seed = seed;
            if (instances) c.instances = *instances;
            if (exp_method) c.method = parse_method(*exp_method);
            emit(exp2_csv(run_exp2(c)), out);
        } else if (*exp3_cmd) {
            Exp3Config c = config_path.empty() ? Exp3Config{} : exp3_config_from_json(read_json_file(config_path));
            if (seed_given(exp3_cmd)) c.seed = seed;
            DatasetBundle data;
            if (synthetic) {
                data = make_synthetic_bundle(SyntheticConfig{}, c.seed);
            } else if (!graph_path.empty() && !scenario_path.empty()) {
                data = ingest(graph_path, scenario_path);
            } else {
                throw std::invalid_argument("exp3 needs --graph and --scenarios, or --synthetic");
            }
            const Exp3Result r = run_exp3(c, data);
            if (r.redrawn > 0) std::cerr << "exp3: re-drew " << r.redrawn << " unreachable query pairs\n";
            for (const auto& row : r.rows) {
                if (row.capped > 0 && row.split == "in") {
                    std::cerr << "exp3: f=" << row.f << " " << row.model << ": " << row.capped
                              << " queries stopped at the node cap\n";
                }
            }
            emit(exp3_csv(r.rows), out);
        } else if (*ingest_cmd) {
            std::cout << summary(ingest(graph_path, scenario_path)) << '\n';
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
