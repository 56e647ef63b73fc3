/**
 * @file dataset.hpp
 * @brief Road-network scenario data: ingestion and a synthetic substitute.
 *
 * Graph file:
 *
 *   nodes 538
 *   region north_1           (optional; once any region line appears,
 *   region north_2            edges may only use declared labels)
 *   edge 0 1 north_1
 *   edge 1 2 north_1
 *   ...
 *
 * Node ids are 0-based, edges are directed and edge order defines item
 * order. Blank lines and lines starting with '#' are ignored. Region labels
 * are arbitrary tokens; regions are numbered in order of first appearance.
 *
 * The scenario file is a scenario CSV (see io.hpp) with one column per edge
 * and one row per snapshot, values in minutes.
 */

#ifndef LBR_DATASET_HPP
#define LBR_DATASET_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "lbr/core.hpp"
#include "lbr/fitting.hpp"

namespace lbr {

struct DatasetBundle {
    Graph graph;
    std::vector<std::size_t> region_of;
    std::vector<std::string> region_labels;
    ScenarioSet snapshots;

    std::size_t num_regions() const noexcept { return region_labels.size(); }
    RegionPartition partition() const { return {region_of, region_labels.size()}; }
};

struct LabelledGraph {
    Graph graph;
    std::vector<std::size_t> region_of;
    std::vector<std::string> region_labels;
};

/// Throws ParseError (with line number) on malformed lines, bad node ids or
/// undeclared region labels.
LabelledGraph read_graph_file(std::istream& in);
void write_graph_file(std::ostream& out, const LabelledGraph& g);

/// Checks the snapshot columns against the edge count and rejects negative
/// travel times. Throws ParseError naming the offending row and line.
DatasetBundle make_bundle(LabelledGraph graph, std::istream& scenarios);

DatasetBundle ingest(const std::string& graph_path, const std::string& scenario_path);

/// "nodes=.. edges=.. regions=.. snapshots=.."
std::string summary(const DatasetBundle& bundle);

struct SyntheticConfig {
    /// Intersections per side of the square grid.
    std::size_t grid = 10;
    /// Edges per street segment between two intersections, per direction.
    std::size_t segments = 3;
    std::size_t snapshots = 400;
    double congestion_probability = 0.15;
};

/// Grid road network with two-way streets subdivided into short edges.
/// Regions are corridors: the chain of edges between two adjacent
/// intersections in one direction. Each snapshot adds region-wide
/// congestion to some corridors on top of base times and small noise.
DatasetBundle make_synthetic_bundle(const SyntheticConfig& config, std::uint64_t seed);

} // namespace lbr

#endif // LBR_DATASET_HPP
