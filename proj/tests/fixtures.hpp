#ifndef LBR_TESTS_FIXTURES_HPP
#define LBR_TESTS_FIXTURES_HPP

#include "lbr/core.hpp"

namespace fixture {

// Four items in two regions {1,2} and {3,4}; lower costs 10, 20, 10, 20,
// all deviations 10, budgets 5 and 15.
inline lbr::UncertaintySet two_regions() {
    return lbr::UncertaintySet({10, 20, 10, 20}, {10, 10, 10, 10}, {0, 0, 1, 1}, {5, 15});
}

inline lbr::Incidence items(std::size_t n, std::initializer_list<std::size_t> one_based) {
    lbr::Incidence x(n, 0);
    for (std::size_t i : one_based) x[i - 1] = 1;
    return x;
}

} // namespace fixture

#endif // LBR_TESTS_FIXTURES_HPP
