/**
 * @file io.hpp
 * @brief File formats.
 *
 * Instance JSON (item and part ids 1-based, graph nodes 0-based):
 *
 *   { "n": 4, "lower_costs": [..], "deviations": [..],
 *     "region_of": [1, 1, 2, 2], "budgets": [5, 15],
 *     "spec": { "type": "selection", "p": 2 } }
 *
 * spec variants:
 *   selection                 p
 *   representative_selection  parts: [[items..], ..], quotas: [..]
 *   shortest_path             nodes, edges: [[u, v], ..], directed (default true), source, target
 *   spanning_tree             nodes, edges
 *   min_cut                   nodes, edges, source, sink
 *   unconstrained             (no fields)
 *
 * Scenario CSV: header item_1,...,item_n then one row of decimal costs per scenario.
 */

#ifndef LBR_IO_HPP
#define LBR_IO_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "lbr/core.hpp"
#include "lbr/sampling.hpp"

namespace lbr {

using json = nlohmann::json;

json spec_to_json(const ProblemSpec& spec);
ProblemSpec spec_from_json(const json& j);

json instance_to_json(const Instance& instance);
/// Throws ParseError on missing or mistyped fields, std::invalid_argument on invalid content.
Instance instance_from_json(const json& j);

/// The uncertainty fields of an instance JSON object; spec defaults to unconstrained.
UncertaintySet uncertainty_from_json(const json& j);

/// objective, chosen (1-based item ids), pi (if present).
json solution_to_json(const Solution& sol);

/// Throws ParseError naming the row and line on a column-count mismatch or a
/// non-numeric cell. If `row_lines` is given it receives each row's line number.
ScenarioSet read_scenario_csv(std::istream& in, std::vector<std::size_t>* row_lines = nullptr);
void write_scenario_csv(std::ostream& out, const ScenarioSet& scenarios);

/// `u v` per line, 0-based vertex ids; blank lines and '#' comments skipped.
/// Vertex count is max id + 1. The result is undirected.
Graph read_edge_list(std::istream& in);

/// DIMACS CNF: optional `c` comment lines, a `p cnf <vars> <clauses>` header
/// and zero-terminated clauses of exactly three literals.
SatFormula read_dimacs(std::istream& in);

/// Either a list of subsets `[[1,2],[2,3]]` or `{"ground": n, "subsets": [...]}`;
/// elements 1-based. Without "ground" the ground set is 1..max element.
CoverInstance set_cover_from_json(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Formats a double with up to 17 significant digits (shortest of %.15g/%.17g that round-trips).
std::string format_number(double v);

} // namespace lbr

#endif // LBR_IO_HPP
