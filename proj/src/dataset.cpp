#include "lbr/dataset.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

#include "lbr/io.hpp"
#include "lbr/rng.hpp"

namespace lbr {

LabelledGraph read_graph_file(std::istream& in) {
    LabelledGraph out;
    out.graph.directed = true;
    std::unordered_map<std::string, std::size_t> label_index;
    bool have_nodes = false;
    bool declared = false;
    std::string line;
    std::size_t line_no = 0;

    auto region_for = [&](const std::string& label, bool declaring) -> std::size_t {
        const auto it = label_index.find(label);
        if (it != label_index.end()) {
            if (declaring) throw ParseError("region '" + label + "' declared twice", line_no);
            return it->second;
        }
        if (declared && !declaring) throw ParseError("unknown region label '" + label + "'", line_no);
        label_index.emplace(label, out.region_labels.size());
        out.region_labels.push_back(label);
        return out.region_labels.size() - 1;
    };

    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string keyword;
        if (!(ss >> keyword) || keyword[0] == '#') continue;
        std::string extra;
        if (keyword == "nodes") {
            long long count = -1;
            if (have_nodes) throw ParseError("duplicate 'nodes' line", line_no);
            if (!(ss >> count) || count <= 0 || (ss >> extra)) {
                throw ParseError("expected 'nodes <positive int>'", line_no);
            }
            out.graph.nodes = static_cast<std::size_t>(count);
            have_nodes = true;
        } else if (keyword == "region") {
            std::string label;
            if (!(ss >> label) || (ss >> extra)) throw ParseError("expected 'region <label>'", line_no);
            if (!out.graph.edges.empty() && !declared) {
                throw ParseError("region declarations must precede all edges", line_no);
            }
            region_for(label, true);
            declared = true;
        } else if (keyword == "edge") {
            if (!have_nodes) throw ParseError("'edge' before 'nodes' line", line_no);
            long long u = -1;
            long long v = -1;
            std::string label;
            if (!(ss >> u >> v >> label) || (ss >> extra)) {
                throw ParseError("expected 'edge <u> <v> <region_label>'", line_no);
            }
            const auto n = static_cast<long long>(out.graph.nodes);
            if (u < 0 || v < 0 || u >= n || v >= n) {
                throw ParseError("edge endpoint out of range [0, " + std::to_string(n) + ")", line_no);
            }
            out.graph.edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
            out.region_of.push_back(region_for(label, false));
        } else {
            throw ParseError("unknown keyword '" + keyword + "'", line_no);
        }
    }
    if (!have_nodes) throw ParseError("missing 'nodes' line");
    if (out.graph.edges.empty()) throw ParseError("graph has no edges");
    // Declared but unused labels would leave empty regions.
    std::vector<char> used(out.region_labels.size(), 0);
    for (std::size_t r : out.region_of) used[r] = 1;
    for (std::size_t r = 0; r < used.size(); ++r) {
        if (!used[r]) throw ParseError("region '" + out.region_labels[r] + "' has no edges");
    }
    return out;
}

void write_graph_file(std::ostream& out, const LabelledGraph& g) {
    out << "nodes " << g.graph.nodes << '\n';
    for (std::size_t e = 0; e < g.graph.edges.size(); ++e) {
        out << "edge " << g.graph.edges[e].first << ' ' << g.graph.edges[e].second << ' '
            << g.region_labels[g.region_of[e]] << '\n';
    }
}

DatasetBundle make_bundle(LabelledGraph graph, std::istream& scenarios) {
    std::vector<std::size_t> row_lines;
    ScenarioSet rows = read_scenario_csv(scenarios, &row_lines);
    const std::size_t m = graph.graph.edges.size();
    if (rows.num_items() != m) {
        throw ParseError("scenario header has " + std::to_string(rows.num_items()) + " columns, graph has " +
                             std::to_string(m) + " edges",
                         1);
    }
    for (std::size_t k = 0; k < rows.size(); ++k) {
        for (std::size_t e = 0; e < m; ++e) {
            if (!(rows[k][e] >= 0.0)) {
                throw ParseError("scenario row " + std::to_string(k + 1) + ": negative travel time in column " +
                                     std::to_string(e + 1),
                                 row_lines[k]);
            }
        }
    }
    if (rows.empty()) throw ParseError("scenario file has no rows");
    return DatasetBundle{std::move(graph.graph), std::move(graph.region_of), std::move(graph.region_labels),
                         std::move(rows)};
}

DatasetBundle ingest(const std::string& graph_path, const std::string& scenario_path) {
    std::ifstream gin(graph_path);
    if (!gin) throw std::runtime_error("cannot open graph file '" + graph_path + "'");
    std::ifstream sin(scenario_path);
    if (!sin) throw std::runtime_error("cannot open scenario file '" + scenario_path + "'");
    LabelledGraph g;
    try {
        g = read_graph_file(gin);
    } catch (const ParseError& e) {
        throw ParseError(graph_path + ": " + e.what());
    }
    try {
        return make_bundle(std::move(g), sin);
    } catch (const ParseError& e) {
        throw ParseError(scenario_path + ": " + e.what());
    }
}

std::string summary(const DatasetBundle& bundle) {
    return "nodes=" + std::to_string(bundle.graph.nodes) + " edges=" + std::to_string(bundle.graph.edges.size()) +
           " regions=" + std::to_string(bundle.num_regions()) + " snapshots=" + std::to_string(bundle.snapshots.size());
}

DatasetBundle make_synthetic_bundle(const SyntheticConfig& config, std::uint64_t seed) {
    if (config.grid < 2 || config.segments < 1) {
        throw std::invalid_argument("synthetic bundle: need grid >= 2 and segments >= 1");
    }
    const std::size_t g = config.grid;
    Rng rng(seed);
    DatasetBundle b;
    b.graph.directed = true;
    b.graph.nodes = g * g;

    auto add_corridor = [&](const std::vector<std::size_t>& chain, const std::string& label) {
        const std::size_t region = b.region_labels.size();
        b.region_labels.push_back(label);
        for (std::size_t t = 0; t + 1 < chain.size(); ++t) {
            b.graph.edges.push_back({chain[t], chain[t + 1]});
            b.region_of.push_back(region);
        }
    };
    auto name = [g](std::size_t v) {
        return "r" + std::to_string(v / g) + "c" + std::to_string(v % g);
    };

    for (std::size_t r = 0; r < g; ++r) {
        for (std::size_t c = 0; c < g; ++c) {
            const std::size_t a = r * g + c;
            for (const std::size_t b_node : {c + 1 < g ? a + 1 : a, r + 1 < g ? a + g : a}) {
                if (b_node == a) continue;
                std::vector<std::size_t> chain{a};
                for (std::size_t s = 1; s < config.segments; ++s) chain.push_back(b.graph.nodes++);
                chain.push_back(b_node);
                add_corridor(chain, name(a) + ">" + name(b_node));
                add_corridor(std::vector<std::size_t>(chain.rbegin(), chain.rend()), name(b_node) + ">" + name(a));
            }
        }
    }

    const std::size_t m = b.graph.edges.size();
    std::vector<double> base(m);
    for (double& t : base) t = rng.uniform(1.0, 3.0);
    std::vector<double> susceptibility(b.num_regions());
    for (double& s : susceptibility) s = rng.uniform(0.0, 2.0);

    b.snapshots = ScenarioSet(m);
    std::vector<double> level(b.num_regions());
    for (std::size_t k = 0; k < config.snapshots; ++k) {
        Rng row_rng = Rng::substream(seed, k + 1);
        for (std::size_t r = 0; r < level.size(); ++r) {
            level[r] = row_rng.bernoulli(config.congestion_probability) ? row_rng.uniform(0.5, 1.0) : 0.0;
        }
        Scenario c(m);
        for (std::size_t e = 0; e < m; ++e) {
            const std::size_t r = b.region_of[e];
            c[e] = base[e] * (1.0 + level[r] * susceptibility[r] + row_rng.uniform(0.0, 0.1));
        }
        b.snapshots.push_back(std::move(c));
    }
    return b;
}

} // namespace lbr
