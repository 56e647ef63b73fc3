#include <doctest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "lbr/exact.hpp"
#include "lbr/nominal.hpp"
#include "lbr/sampling.hpp"
#include "oracles.hpp"

using namespace lbr;
using fixture::items;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

Instance two_region_selection(std::size_t p) { return Instance(fixture::two_regions(), Selection{p}); }

// f_j(q) by enumerating q-subsets of region j.
double f_by_enumeration(const UncertaintySet& u, std::size_t j, std::size_t q) {
    const auto& region = u.region_items(j);
    double best = kInf;
    oracle::for_each_subset(region.size(), [&](const Incidence& pick) {
        if (oracle::popcount(pick) != q) return;
        double lower = 0.0;
        double dev = 0.0;
        for (std::size_t t = 0; t < region.size(); ++t) {
            if (pick[t]) {
                lower += u.lower_costs()[region[t]];
                dev += u.deviations()[region[t]];
            }
        }
        best = std::min(best, lower + std::min(u.budgets()[j], dev));
    });
    return best;
}

} // namespace

TEST_CASE("reduced costs") {
    const UncertaintySet u = fixture::two_regions();
    CHECK(reduced_costs(u, Incidence{1, 0}) == CostVector{10, 20, 20, 30});
    CHECK(reduced_costs(u, Incidence{1, 1}) == u.lower_costs());
    CHECK(reduced_costs(u, Incidence{0, 0}) == CostVector{20, 30, 20, 30});
    CHECK_THROWS_AS(reduced_costs(u, Incidence{1}), DimensionError);
}

TEST_CASE("method names") {
    CHECK(parse_method("decomp") == Method::Decomposition);
    CHECK(parse_method("dp") == Method::SelectionDp);
    CHECK(parse_method("bnb") == Method::BranchAndBound);
    CHECK(parse_method("brute") == Method::BruteForce);
    CHECK_THROWS_AS(parse_method("lp"), std::invalid_argument);
    CHECK(method_name(Method::BranchAndBound) == "bnb");
}

TEST_CASE("decomposition on the two-region example") {
    const Solution s = solve_decomposition(two_region_selection(2));
    CHECK(s.objective == 35.0);
    REQUIRE(s.pi.has_value());
    CHECK(*s.pi == Incidence{1, 0});
    CHECK(s.chosen == items(4, {1, 2}));
}

TEST_CASE("decomposition with zero budgets is the nominal problem on lower costs") {
    const UncertaintySet u = fixture::two_regions().with_budgets({0, 0});
    const Instance inst(u, Selection{3});
    const Solution s = solve_decomposition(inst);
    CHECK(s.objective == solve_nominal(u.lower_costs(), Selection{3}).objective);
    CHECK(*s.pi == Incidence{1, 1});
}

TEST_CASE("decomposition with one region takes the better of two nominal problems") {
    Rng rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + rng.uniform_below(10);
        const UncertaintySet u = oracle::random_set(n, 1, rng);
        const Selection spec{rng.uniform_below(n + 1)};
        CostVector upper(n);
        for (std::size_t i = 0; i < n; ++i) upper[i] = u.lower_costs()[i] + u.deviations()[i];
        const double expect = std::min(u.budgets()[0] + solve_nominal(u.lower_costs(), spec).objective,
                                       solve_nominal(upper, spec).objective);
        CHECK(solve_decomposition(Instance(u, spec)).objective == expect);
    }
}

TEST_CASE("decomposition refuses too many regions") {
    Rng rng(3);
    const UncertaintySet u = oracle::random_set(25, 21, rng);
    CHECK_THROWS_WITH_AS(solve_decomposition(Instance(u, Selection{3})), doctest::Contains("branch-and-bound"),
                         CapacityError);
    CHECK_NOTHROW(solve_decomposition(Instance(u, Selection{3}), 21));
}

TEST_CASE("selection table") {
    const FTable f = selection_f_table(fixture::two_regions(), 2);
    CHECK(f(0, 1) == 15.0);
    CHECK(f(1, 1) == 20.0);
    CHECK(f(0, 0) == 0.0);
    CHECK(f(1, 0) == 0.0);
    CHECK(f(0, 2) == 35.0);
    CHECK(f(0, 3) == kInf);

    const UncertaintySet small({1, 2, 3}, {1, 1, 1}, {0, 0, 1}, {1, 1});
    CHECK(selection_f_table(small, 3)(1, 2) == kInf);

    CHECK_THROWS_AS(selection_f_table(Instance(fixture::two_regions(), Unconstrained{})), VariantError);
}

TEST_CASE("selection table matches enumeration over region subsets") {
    Rng rng(17);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng.uniform_below(12);
        const std::size_t k = 1 + rng.uniform_below(std::min<std::size_t>(n, 4));
        const UncertaintySet u = oracle::random_set(n, k, rng);
        const std::size_t p = rng.uniform_below(n + 1);
        const FTable f = selection_f_table(u, p);
        for (std::size_t j = 0; j < k; ++j) {
            for (std::size_t q = 0; q <= p; ++q) {
                const double expect = q > u.region_items(j).size() ? kInf : f_by_enumeration(u, j, q);
                CHECK(f(j, q) == expect);
            }
        }
    }
}

TEST_CASE("selection dynamic program") {
    CHECK(solve_selection_dp(two_region_selection(2)).objective == 35.0);
    const Solution empty = solve_selection_dp(two_region_selection(0));
    CHECK(empty.objective == 0.0);
    CHECK(empty.chosen == items(4, {}));
    // Everything chosen: 60 + min(5, 20) + min(15, 20).
    CHECK(solve_selection_dp(two_region_selection(4)).objective == 80.0);
    CHECK_THROWS_AS(solve_selection_dp(Instance(fixture::two_regions(), Unconstrained{})), VariantError);
}

TEST_CASE("branch-and-bound on small cases") {
    const BranchAndBoundResult r = solve_branch_and_bound(two_region_selection(2));
    CHECK(r.solution.objective == 35.0);
    CHECK(r.optimal);

    const UncertaintySet zero = fixture::two_regions().with_budgets({0, 0});
    const BranchAndBoundResult z = solve_branch_and_bound(Instance(zero, Selection{2}));
    CHECK(z.nodes == 1);
    CHECK(z.optimal);
    CHECK(z.solution.objective == solve_nominal(zero.lower_costs(), Selection{2}).objective);
}

TEST_CASE("branch-and-bound under a node cap keeps a feasible incumbent") {
    Rng rng(23);
    for (int trial = 0; trial < 50; ++trial) {
        const UncertaintySet u = oracle::random_set(20, 10, rng);
        const Instance inst(u, Selection{8});
        const BranchAndBoundResult r = solve_branch_and_bound(inst, {1});
        CHECK(r.nodes == 1);
        CHECK(check_feasible(r.solution.chosen, inst.spec()));
        CHECK(r.solution.objective == evaluate_robust(r.solution.chosen, u));
        CHECK(r.solution.objective >= solve_decomposition(inst).objective);
    }
}

TEST_CASE("branch-and-bound agrees with decomposition on many regions") {
    Rng rng(2718);
    for (int variant = 0; variant < 6; ++variant) {
        CAPTURE(variant);
        int checked = 0;
        while (checked < 200) {
            const auto spec = oracle::random_spec(variant, 20, rng);
            if (!spec) continue;
            const Instance inst(oracle::random_set(20, 12, rng), *spec);
            const BranchAndBoundResult r = solve_branch_and_bound(inst);
            CHECK(r.optimal);
            CHECK(r.solution.objective == solve_decomposition(inst).objective);
            ++checked;
        }
    }
}

TEST_CASE("brute force") {
    CHECK(brute_force(two_region_selection(2)).objective == 35.0);
    const Solution u = brute_force(Instance(fixture::two_regions(), Unconstrained{}));
    CHECK(u.objective == 0.0);
    CHECK(u.chosen == items(4, {}));
    CHECK(brute_force(two_region_selection(4)).objective == 80.0);

    Rng rng(1);
    const UncertaintySet big = oracle::random_set(60, 3, rng);
    CHECK_THROWS_AS(brute_force(Instance(big, Selection{30})), CapacityError);
}

TEST_CASE("all exact methods agree with the enumeration oracle") {
    Rng rng(4242);
    for (int variant = 0; variant < 6; ++variant) {
        CAPTURE(variant);
        int checked = 0;
        while (checked < 150) {
            const std::size_t n = 1 + rng.uniform_below(12);
            const std::size_t k = 1 + rng.uniform_below(std::min<std::size_t>(n, 4));
            const auto spec = oracle::random_spec(variant, n, rng);
            if (!spec) continue;
            const Instance inst(oracle::random_set(n, k, rng), *spec);
            const double expect = oracle::robust_optimum(inst);
            for (Method m : {Method::Decomposition, Method::BranchAndBound, Method::BruteForce}) {
                const Solution s = solve(inst, m);
                CAPTURE(method_name(m));
                CHECK(s.objective == expect);
                CHECK(oracle::feasible(s.chosen, inst.spec()));
                REQUIRE(s.pi.has_value());
                const double cert = certificate_value(s.chosen, *s.pi, inst.uncertainty());
                CHECK(std::abs(cert - s.objective) <= kTolerance);
            }
            if (variant == 0) CHECK(solve_selection_dp(inst).objective == expect);
            ++checked;
        }
    }
}

TEST_CASE("classic solutions never beat local ones under the local set") {
    Rng rng(606);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 2 + rng.uniform_below(20);
        const std::size_t k = 1 + rng.uniform_below(std::min<std::size_t>(n, 5));
        const UncertaintySet u = oracle::random_set(n, k, rng);
        const Selection spec{rng.uniform_below(n + 1)};
        const double local = solve_selection_dp(Instance(u, spec)).objective;
        const Solution classic = solve_selection_dp(Instance(to_classic(u), spec));
        CHECK(evaluate_robust(classic.chosen, u) >= local - kTolerance);
    }
}

TEST_CASE("selection dynamic program at moderate size") {
    const Instance inst = gen_random_instance(20000, 400, 9, Selection{200});
    const Solution s = solve_selection_dp(inst);
    CHECK(check_feasible(s.chosen, inst.spec()));
    CHECK(s.objective == evaluate_robust(s.chosen, inst.uncertainty()));
}

TEST_CASE("selection dynamic program matches decomposition on random instances") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        Rng rng(seed);
        const std::size_t k = 1 + rng.uniform_below(8);
        const Instance inst = gen_random_instance(40, k, seed, Selection{1 + rng.uniform_below(39)});
        CHECK(solve_selection_dp(inst).objective == solve_decomposition(inst).objective);
    }
}
