#include <doctest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "lbr/core.hpp"
#include "oracles.hpp"

using namespace lbr;
using fixture::items;

TEST_CASE("robust value of the two-region example") {
    const UncertaintySet u = fixture::two_regions();
    CHECK(evaluate_robust(items(4, {}), u) == 0.0);
    CHECK(evaluate_robust(items(4, {1, 3}), u) == 35.0);
    CHECK(evaluate_robust(items(4, {2, 4}), u) == 55.0);
    CHECK(oracle::adversary_value(items(4, {1, 3}), u) == 35.0);
    CHECK(oracle::adversary_value(items(4, {2, 4}), u) == 55.0);
}

TEST_CASE("non-binding budgets price every chosen item at its upper cost") {
    const UncertaintySet u({3, 4, 5}, {1, 2, 3}, {0, 0, 1}, {3, 100});
    CHECK(evaluate_robust(items(3, {1, 2, 3}), u) == 3 + 1 + 4 + 2 + 5 + 3);
    CHECK(evaluate_robust(items(3, {2}), u) == 6.0);
}

TEST_CASE("robust value rejects a length mismatch") {
    CHECK_THROWS_AS(evaluate_robust(Incidence(3, 0), fixture::two_regions()), DimensionError);
    CHECK_THROWS_AS(worst_case_scenario(Incidence(5, 0), fixture::two_regions()), DimensionError);
}

TEST_CASE("worst-case scenario fills chosen items in index order") {
    const UncertaintySet u = fixture::two_regions();
    const Scenario c = worst_case_scenario(items(4, {1, 3}), u);
    CHECK(c == Scenario{15, 20, 20, 20});
    CHECK(worst_case_scenario(items(4, {}), u) == u.lower_costs());

    const UncertaintySet zero = u.with_budgets({0, 0});
    CHECK(worst_case_scenario(items(4, {1, 2, 3, 4}), zero) == u.lower_costs());

    // Budget 15 over items 3 and 4 (deviation 10 each): 10 then 5.
    CHECK(worst_case_scenario(items(4, {3, 4}), u) == Scenario{10, 20, 20, 25});
}

TEST_CASE("feasibility checks") {
    SUBCASE("selection") {
        CHECK(check_feasible(items(3, {1, 2}), Selection{2}));
        CHECK_FALSE(check_feasible(items(3, {1, 2, 3}), Selection{2}));
    }
    SUBCASE("directed path s->a->t with a shortcut s->t") {
        const ShortestPath sp{Graph{3, {{0, 1}, {1, 2}, {0, 2}}, true}, 0, 2};
        CHECK(check_feasible(items(3, {1, 2}), sp));
        CHECK(check_feasible(items(3, {3}), sp));
        CHECK_FALSE(check_feasible(items(3, {1, 2, 3}), sp));
        CHECK_FALSE(check_feasible(items(3, {1}), sp));
        CHECK_FALSE(check_feasible(items(3, {}), sp));
    }
    SUBCASE("directed path must follow edge directions") {
        const ShortestPath sp{Graph{3, {{1, 0}, {1, 2}}, true}, 0, 2};
        CHECK_FALSE(check_feasible(items(2, {1, 2}), sp));
        ShortestPath undirected = sp;
        undirected.graph.directed = false;
        CHECK(check_feasible(items(2, {1, 2}), undirected));
    }
    SUBCASE("spanning tree") {
        const SpanningTree st{Graph{3, {{0, 1}, {1, 2}, {0, 2}}, false}};
        CHECK(check_feasible(items(3, {1, 2}), st));
        CHECK_FALSE(check_feasible(items(3, {1, 2, 3}), st));
        CHECK_FALSE(check_feasible(items(3, {1}), st));
    }
    SUBCASE("cut must be the out-edges of a source side") {
        // s=0, t=2; edges 0->1, 1->2, 0->2, 2->1.
        const MinCut mc{Graph{3, {{0, 1}, {1, 2}, {0, 2}, {2, 1}}, true}, 0, 2};
        CHECK(check_feasible(items(4, {1, 3}), mc));    // S = {0}
        CHECK(check_feasible(items(4, {2, 3}), mc));    // S = {0, 1}
        CHECK_FALSE(check_feasible(items(4, {1, 2, 3}), mc));
        CHECK_FALSE(check_feasible(items(4, {3}), mc)); // 0->1->2 remains
    }
    SUBCASE("representative selection and unconstrained") {
        const RepresentativeSelection rs{{{0, 1}, {2}}, {1, 0}};
        CHECK(check_feasible(items(3, {2}), rs));
        CHECK_FALSE(check_feasible(items(3, {2, 3}), rs));
        CHECK(check_feasible(items(3, {1, 3}), Unconstrained{}));
    }
}

TEST_CASE("classic relaxation sums the budgets") {
    const UncertaintySet u = fixture::two_regions();
    const UncertaintySet c = to_classic(u);
    CHECK(c.num_regions() == 1);
    CHECK(c.budgets() == std::vector<double>{20});
    CHECK(c.lower_costs() == u.lower_costs());
    CHECK(c.deviations() == u.deviations());
    CHECK(evaluate_robust(items(4, {1, 3}), c) == 40.0);

    const UncertaintySet c2 = to_classic(c);
    CHECK(c2.budgets() == c.budgets());
    CHECK(c2.region_of() == c.region_of());
}

TEST_CASE("uncertainty set validation") {
    CHECK_THROWS_AS(UncertaintySet({1, 2}, {1}, {0, 0}, {1}), DimensionError);
    CHECK_THROWS_AS(UncertaintySet({1, 2}, {1, 1}, {0}, {1}), DimensionError);
    CHECK_THROWS_AS(UncertaintySet({1, 2}, {1, 1}, {0, 2}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(UncertaintySet({1, 2}, {1, 1}, {0, 0}, {1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(UncertaintySet({-1, 2}, {1, 1}, {0, 0}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(UncertaintySet({1, 2}, {1, NAN}, {0, 0}, {1}), std::invalid_argument);
    CHECK_THROWS_AS(UncertaintySet({1, 2}, {1, 1}, {0, 0}, {-1}), std::invalid_argument);
    CHECK_THROWS_AS(UncertaintySet({1, std::numeric_limits<double>::infinity()}, {1, 1}, {0, 0}, {1}),
                    std::invalid_argument);
    CHECK_NOTHROW(UncertaintySet({0, 0}, {0, 0}, {1, 0}, {0, 0}));
}

TEST_CASE("instances validate their spec against the item count") {
    const UncertaintySet u = fixture::two_regions();
    CHECK_THROWS_AS(Instance(u, Selection{5}), std::invalid_argument);
    CHECK_THROWS_AS(Instance(u, RepresentativeSelection{{{0, 1}, {2}}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Instance(u, RepresentativeSelection{{{0, 1}, {1, 2, 3}}, {1, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Instance(u, RepresentativeSelection{{{0, 1}, {2, 3}}, {3, 1}}), std::invalid_argument);
    CHECK_THROWS_AS(Instance(u, ShortestPath{Graph{2, {{0, 1}, {1, 0}, {0, 1}}, true}, 0, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Instance(u, ShortestPath{Graph{2, {{0, 1}, {1, 0}, {0, 1}, {0, 1}}, true}, 1, 1}),
                    std::invalid_argument);
    CHECK_THROWS_AS(Instance(u, MinCut{Graph{2, {{0, 1}, {1, 0}, {0, 1}, {0, 5}}, true}, 0, 1}),
                    std::invalid_argument);
    CHECK_NOTHROW(Instance(u, RepresentativeSelection{{{0, 1}, {2, 3}}, {1, 2}}));
}

TEST_CASE("scenario sets keep a fixed width") {
    ScenarioSet s(3);
    s.push_back({1, 2, 3});
    CHECK_THROWS_AS(s.push_back({1, 2}), DimensionError);
    s.push_back({4, 5, 6});
    CHECK(s.slice(1, 2).size() == 1);
    CHECK(s.slice(1, 2)[0] == Scenario{4, 5, 6});
    CHECK_THROWS(s.slice(1, 3));
}

TEST_CASE("membership") {
    const UncertaintySet u = fixture::two_regions();
    CHECK(is_member(Scenario{15, 20, 20, 25}, u));
    CHECK_FALSE(is_member(Scenario{16, 20, 20, 20}, u)); // region 1 over budget
    CHECK_FALSE(is_member(Scenario{9, 20, 10, 20}, u));  // below lower cost
    CHECK_FALSE(is_member(Scenario{10, 20, 10, 31}, u)); // above upper cost
}

TEST_CASE("random pairs: adversary, certificate and dominance") {
    Rng rng(2024);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::size_t n = 1 + rng.uniform_below(15);
        const std::size_t k = 1 + rng.uniform_below(n);
        const UncertaintySet u = oracle::random_set(n, k, rng);
        const Incidence x = oracle::random_incidence(n, rng);
        const double value = evaluate_robust(x, u);

        CHECK(value == oracle::adversary_value(x, u));
        const Scenario c = worst_case_scenario(x, u);
        CHECK(is_member(c, u));
        CHECK(std::abs(linear_cost(c, x) - value) <= kTolerance);

        const Incidence pi = certificate_pi(x, u);
        CHECK(certificate_value(x, pi, u) == doctest::Approx(value).epsilon(1e-12));
        // Any other pi is an upper bound.
        const Incidence other = oracle::random_incidence(k, rng);
        CHECK(certificate_value(x, other, u) >= value - kTolerance);

        CHECK(evaluate_robust(x, to_classic(u)) >= value - kTolerance);

        // Random member scenarios never beat the worst case.
        for (int s = 0; s < 3; ++s) {
            Scenario m = u.lower_costs();
            for (std::size_t j = 0; j < k; ++j) {
                double left = u.budgets()[j] * rng.uniform01();
                for (std::size_t i : u.region_items(j)) {
                    const double raise = std::min(left, u.deviations()[i] * rng.uniform01());
                    m[i] += raise;
                    left -= raise;
                }
            }
            REQUIRE(is_member(m, u));
            CHECK(linear_cost(m, x) <= value + kTolerance);
        }
    }
}

TEST_CASE("robust value is nondecreasing in budgets, deviations and lower costs") {
    Rng rng(7);
    for (int trial = 0; trial < 500; ++trial) {
        const std::size_t n = 1 + rng.uniform_below(10);
        const std::size_t k = 1 + rng.uniform_below(n);
        const UncertaintySet u = oracle::random_set(n, k, rng);
        const Incidence x = oracle::random_incidence(n, rng);
        const double base = evaluate_robust(x, u);

        auto budgets = u.budgets();
        budgets[rng.uniform_below(k)] += 1 + rng.uniform_below(5);
        CHECK(evaluate_robust(x, u.with_budgets(budgets)) >= base);

        auto dev = u.deviations();
        dev[rng.uniform_below(n)] += 1 + rng.uniform_below(5);
        CHECK(evaluate_robust(x, UncertaintySet(u.lower_costs(), dev, u.region_of(), u.budgets())) >= base);

        auto lower = u.lower_costs();
        lower[rng.uniform_below(n)] += 1 + rng.uniform_below(5);
        CHECK(evaluate_robust(x, UncertaintySet(lower, u.deviations(), u.region_of(), u.budgets())) >= base);
    }
}

TEST_CASE("single region equals lower cost plus capped deviation") {
    Rng rng(99);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t n = 1 + rng.uniform_below(12);
        const UncertaintySet u = oracle::random_set(n, 1, rng, 50, 200);
        const Incidence x = oracle::random_incidence(n, rng);
        double lower = 0.0;
        double dev = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i]) {
                lower += u.lower_costs()[i];
                dev += u.deviations()[i];
            }
        }
        CHECK(evaluate_robust(x, u) == lower + std::min(u.budgets()[0], dev));
    }
}
