#include "lbr/io.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace lbr {

namespace {

const json& field(const json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    return j.at(key);
}

template <typename T>
T get_as(const json& j, const char* key) {
    try {
        return field(j, key).get<T>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("field '") + key + "': " + e.what());
    }
}

std::vector<std::size_t> to_zero_based(const std::vector<std::size_t>& ids, const char* what) {
    std::vector<std::size_t> out(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) {
        if (ids[k] == 0) throw ParseError(std::string(what) + ": ids are 1-based, found 0");
        out[k] = ids[k] - 1;
    }
    return out;
}

std::vector<std::size_t> to_one_based(const std::vector<std::size_t>& ids) {
    std::vector<std::size_t> out(ids.size());
    for (std::size_t k = 0; k < ids.size(); ++k) out[k] = ids[k] + 1;
    return out;
}

Graph graph_from_json(const json& j, bool directed) {
    Graph g;
    g.nodes = get_as<std::size_t>(j, "nodes");
    g.edges = get_as<std::vector<std::pair<std::size_t, std::size_t>>>(j, "edges");
    g.directed = directed;
    return g;
}

json graph_fields(const Graph& g) {
    return json{{"nodes", g.nodes}, {"edges", g.edges}};
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r\n");
    if (first == std::string::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n");
    return s.substr(first, last - first + 1);
}

double parse_double(const std::string& token, std::size_t line) {
    const std::string t = trim(token);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || ptr != t.data() + t.size() || t.empty()) {
        throw ParseError("not a number: '" + t + "'", line);
    }
    return v;
}

} // namespace

json spec_to_json(const ProblemSpec& spec) {
    return std::visit(
        [&](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            json j{{"type", variant_name(spec)}};
            if constexpr (std::is_same_v<T, Selection>) {
                j["p"] = s.p;
            } else if constexpr (std::is_same_v<T, RepresentativeSelection>) {
                json parts = json::array();
                for (const auto& part : s.parts) parts.push_back(to_one_based(part));
                j["parts"] = parts;
                j["quotas"] = s.quotas;
            } else if constexpr (std::is_same_v<T, ShortestPath>) {
                j.update(graph_fields(s.graph));
                j["directed"] = s.graph.directed;
                j["source"] = s.source;
                j["target"] = s.target;
            } else if constexpr (std::is_same_v<T, SpanningTree>) {
                j.update(graph_fields(s.graph));
            } else if constexpr (std::is_same_v<T, MinCut>) {
                j.update(graph_fields(s.graph));
                j["source"] = s.source;
                j["sink"] = s.sink;
            }
            return j;
        },
        spec);
}

ProblemSpec spec_from_json(const json& j) {
    const auto type = get_as<std::string>(j, "type");
    if (type == "selection") return Selection{get_as<std::size_t>(j, "p")};
    if (type == "representative_selection") {
        RepresentativeSelection rs;
        for (const auto& part : get_as<std::vector<std::vector<std::size_t>>>(j, "parts")) {
            rs.parts.push_back(to_zero_based(part, "parts"));
        }
        rs.quotas = get_as<std::vector<std::size_t>>(j, "quotas");
        return rs;
    }
    if (type == "shortest_path") {
        const bool directed = j.contains("directed") ? get_as<bool>(j, "directed") : true;
        return ShortestPath{graph_from_json(j, directed), get_as<std::size_t>(j, "source"),
                            get_as<std::size_t>(j, "target")};
    }
    if (type == "spanning_tree") return SpanningTree{graph_from_json(j, false)};
    if (type == "min_cut") {
        return MinCut{graph_from_json(j, true), get_as<std::size_t>(j, "source"),
                      get_as<std::size_t>(j, "sink")};
    }
    if (type == "unconstrained") return Unconstrained{};
    throw ParseError("unknown spec type '" + type + "'");
}

UncertaintySet uncertainty_from_json(const json& j) {
    const auto n = get_as<std::size_t>(j, "n");
    auto lower = get_as<std::vector<double>>(j, "lower_costs");
    auto dev = get_as<std::vector<double>>(j, "deviations");
    auto regions = to_zero_based(get_as<std::vector<std::size_t>>(j, "region_of"), "region_of");
    auto budgets = get_as<std::vector<double>>(j, "budgets");
    if (lower.size() != n) throw ParseError("lower_costs has " + std::to_string(lower.size()) + " entries, n = " + std::to_string(n));
    return UncertaintySet(std::move(lower), std::move(dev), std::move(regions), std::move(budgets));
}

json instance_to_json(const Instance& instance) {
    const UncertaintySet& u = instance.uncertainty();
    return json{{"n", u.size()},
                {"lower_costs", u.lower_costs()},
                {"deviations", u.deviations()},
                {"region_of", to_one_based(u.region_of())},
                {"budgets", u.budgets()},
                {"spec", spec_to_json(instance.spec())}};
}

Instance instance_from_json(const json& j) {
    ProblemSpec spec = j.contains("spec") ? spec_from_json(j.at("spec")) : ProblemSpec{Unconstrained{}};
    return Instance(uncertainty_from_json(j), std::move(spec));
}

json solution_to_json(const Solution& sol) {
    json j{{"objective", sol.objective}, {"chosen", to_one_based(chosen_items(sol.chosen))}};
    if (sol.pi) j["pi"] = std::vector<int>(sol.pi->begin(), sol.pi->end());
    return j;
}

ScenarioSet read_scenario_csv(std::istream& in, std::vector<std::size_t>* row_lines) {
    std::string line;
    std::size_t line_no = 0;
    std::size_t n = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!trim(line).empty()) break;
    }
    if (trim(line).empty()) throw ParseError("scenario CSV: missing header");
    {
        std::stringstream header(line);
        std::string cell;
        while (std::getline(header, cell, ',')) ++n;
    }
    ScenarioSet out(n);
    std::size_t row_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        ++row_no;
        Scenario row;
        row.reserve(n);
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) row.push_back(parse_double(cell, line_no));
        if (!line.empty() && line.back() == ',') row.push_back(parse_double("", line_no));
        if (row.size() != n) {
            throw ParseError("scenario row " + std::to_string(row_no) + " has " + std::to_string(row.size()) +
                                 " columns, header has " + std::to_string(n),
                             line_no);
        }
        out.push_back(std::move(row));
        if (row_lines) row_lines->push_back(line_no);
    }
    return out;
}

void write_scenario_csv(std::ostream& out, const ScenarioSet& scenarios) {
    for (std::size_t i = 0; i < scenarios.num_items(); ++i) {
        out << (i ? "," : "") << "item_" << (i + 1);
    }
    out << '\n';
    for (const auto& row : scenarios.rows()) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_number(row[i]);
        out << '\n';
    }
}

Graph read_edge_list(std::istream& in) {
    Graph g;
    g.directed = false;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        if (trim(line).empty()) continue;
        std::istringstream ss(line);
        long long u = -1;
        long long v = -1;
        std::string extra;
        if (!(ss >> u >> v) || u < 0 || v < 0 || (ss >> extra)) {
            throw ParseError("expected 'u v' with nonnegative vertex ids", line_no);
        }
        g.edges.push_back({static_cast<std::size_t>(u), static_cast<std::size_t>(v)});
        g.nodes = std::max(g.nodes, static_cast<std::size_t>(std::max(u, v)) + 1);
    }
    return g;
}

SatFormula read_dimacs(std::istream& in) {
    SatFormula f;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    std::size_t declared_clauses = 0;
    std::vector<int> pending;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string t = trim(line);
        if (t.empty() || t[0] == 'c' || t[0] == '%') continue;
        std::istringstream ss(t);
        if (t[0] == 'p') {
            std::string p;
            std::string fmt;
            if (!(ss >> p >> fmt >> f.num_vars >> declared_clauses) || fmt != "cnf") {
                throw ParseError("malformed 'p cnf' header", line_no);
            }
            header = true;
            continue;
        }
        if (!header) throw ParseError("clause before 'p cnf' header", line_no);
        int lit = 0;
        while (ss >> lit) {
            if (lit != 0) {
                pending.push_back(lit);
                continue;
            }
            if (pending.size() != 3) {
                throw ParseError("clause " + std::to_string(f.clauses.size() + 1) + " has " +
                                     std::to_string(pending.size()) + " literals, expected 3",
                                 line_no);
            }
            f.clauses.push_back({pending[0], pending[1], pending[2]});
            pending.clear();
        }
        if (!ss.eof()) throw ParseError("non-integer literal", line_no);
    }
    if (!header) throw ParseError("missing 'p cnf' header");
    if (!pending.empty()) throw ParseError("last clause is not terminated by 0");
    if (f.clauses.size() != declared_clauses) {
        throw ParseError("header declares " + std::to_string(declared_clauses) + " clauses, found " +
                         std::to_string(f.clauses.size()));
    }
    return f;
}

CoverInstance set_cover_from_json(const json& j) {
    CoverInstance c;
    std::vector<std::vector<std::size_t>> raw;
    try {
        raw = j.is_array() ? j.get<std::vector<std::vector<std::size_t>>>()
                           : field(j, "subsets").get<std::vector<std::vector<std::size_t>>>();
    } catch (const json::exception& e) {
        throw ParseError(std::string("set cover subsets: ") + e.what());
    }
    std::size_t max_element = 0;
    for (auto& s : raw) {
        c.subsets.push_back(to_zero_based(s, "subset elements"));
        for (std::size_t v : s) max_element = std::max(max_element, v);
    }
    c.ground_size = (j.is_object() && j.contains("ground")) ? get_as<std::size_t>(j, "ground") : max_element;
    return c;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

} // namespace lbr
