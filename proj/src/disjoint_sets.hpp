#ifndef LBR_DISJOINT_SETS_HPP
#define LBR_DISJOINT_SETS_HPP

#include <cstddef>
#include <numeric>
#include <utility>
#include <vector>

namespace lbr::detail {

// Union-find with path halving and union by size.
class DisjointSets {
public:
    explicit DisjointSets(std::size_t n) : parent_(n), size_(n, 1) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t v) {
        while (parent_[v] != v) {
            parent_[v] = parent_[parent_[v]];
            v = parent_[v];
        }
        return v;
    }

    /// False if u and v were already joined.
    bool unite(std::size_t u, std::size_t v) {
        u = find(u);
        v = find(v);
        if (u == v) return false;
        if (size_[u] < size_[v]) std::swap(u, v);
        parent_[v] = u;
        size_[u] += size_[v];
        return true;
    }

private:
    std::vector<std::size_t> parent_;
    std::vector<std::size_t> size_;
};

} // namespace lbr::detail

#endif // LBR_DISJOINT_SETS_HPP
