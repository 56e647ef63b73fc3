/**
 * @file experiments.hpp
 * @brief Experiment harness: classic vs locally budgeted sets on random
 * selection instances, on fitted sets, and on road-network scenario data.
 *
 * All runs are deterministic in their seed. Instance i of a run draws its
 * data from Rng::substream(seed, i), so the same instances appear for every
 * region count, cardinality and sample size.
 */

#ifndef LBR_EXPERIMENTS_HPP
#define LBR_EXPERIMENTS_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "lbr/dataset.hpp"
#include "lbr/exact.hpp"
#include "lbr/io.hpp"

namespace lbr {

// Random selection instances: solve with the local set and with its
// classic relaxation, then price both solutions under the local set.

struct Exp1Config {
    std::size_t instances = 1000;
    std::size_t n = 30;
    std::vector<std::size_t> regions{2, 3, 4, 5};
    std::size_t p_min = 1;
    std::size_t p_max = 29;
    std::uint64_t seed = 1;
    Method method = Method::SelectionDp;
    /// Average the per-instance ratios instead of dividing the averages.
    bool mean_of_ratios = false;
};

struct Exp1Row {
    std::size_t K = 0;
    std::size_t p = 0;
    double avg_local = 0.0;
    double avg_classic_evaluated_locally = 0.0;
    double ratio = 0.0;
};

void validate(const Exp1Config& config);
std::vector<Exp1Row> run_exp1(const Exp1Config& config);
std::string exp1_csv(const std::vector<Exp1Row>& rows);

// Fitted sets: sample scenarios from a known local set, fit classic and
// local sets with the true bounds, and price both solutions under the truth.

struct Exp2Config {
    std::size_t instances = 1000;
    std::size_t n = 30;
    std::size_t p = 10;
    std::vector<std::size_t> regions{2, 3, 4, 5};
    std::vector<std::size_t> sample_sizes{10, 20, 30, 50, 110, 200, 500, 1000, 2000, 10000};
    double threshold = 0.3;
    std::uint64_t seed = 1;
    Method method = Method::SelectionDp;
};

struct Exp2Row {
    std::size_t K = 0;
    std::size_t N = 0;
    double avg_true_value_local_fit = 0.0;
    double avg_true_value_classic_fit = 0.0;
    double avg_true_optimum = 0.0;
};

void validate(const Exp2Config& config);
std::vector<Exp2Row> run_exp2(const Exp2Config& config);
std::string exp2_csv(const std::vector<Exp2Row>& rows);

// Shortest paths on scenario data: fit on the first part of the snapshots,
// scale budgets by f, route random s-t pairs and report average and
// worst-case travel times in and out of sample.

struct Exp3Config {
    double f_start = 0.0;
    double f_stop = 0.5;
    double f_step = 0.002;
    std::size_t queries = 200;
    double train_fraction = 0.75;
    /// Branch-and-bound node cap per local query; the incumbent is used beyond it.
    std::size_t node_cap = 100000;
    std::uint64_t seed = 1;
};

struct Exp3Row {
    double f = 0.0;
    std::string model;
    double avg_time = 0.0;
    double avg_worst_case_time = 0.0;
    std::string split;
    /// Queries whose solve stopped at the node cap (not in the CSV).
    std::size_t capped = 0;
};

struct Exp3Result {
    std::vector<Exp3Row> rows;
    /// Query pairs re-drawn because t was unreachable from s.
    std::size_t redrawn = 0;
};

void validate(const Exp3Config& config);
std::vector<double> budget_factors(const Exp3Config& config);
Exp3Result run_exp3(const Exp3Config& config, const DatasetBundle& data);
std::string exp3_csv(const std::vector<Exp3Row>& rows);

// JSON configs use the field names above; method is "decomp" | "dp" | "bnb" | "brute".
// Missing keys keep their defaults; unknown keys are rejected.
Exp1Config exp1_config_from_json(const json& j, Exp1Config base = {});
Exp2Config exp2_config_from_json(const json& j, Exp2Config base = {});
Exp3Config exp3_config_from_json(const json& j, Exp3Config base = {});

} // namespace lbr

#endif // LBR_EXPERIMENTS_HPP
