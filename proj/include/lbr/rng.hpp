#ifndef LBR_RNG_HPP
#define LBR_RNG_HPP

#include <cstdint>
#include <limits>

namespace lbr {

/**
 * @brief Portable pseudo-random stream: xoshiro256** seeded through SplitMix64.
 *
 * Every draw is defined here bit for bit (no std:: distributions, whose
 * output differs between standard libraries), so a seed reproduces the
 * same stream on every platform.
 *
 *  - uniform_below(b): Lemire's multiply-shift with rejection, unbiased.
 *  - uniform01(): top 53 bits scaled by 2^-53, in [0, 1).
 *  - substream(seed, k): independent stream for row/instance k, so work
 *    items can be generated in any order and still agree.
 */
class Rng {
public:
    using result_type = std::uint64_t;

    explicit Rng(std::uint64_t seed);

    static Rng substream(std::uint64_t seed, std::uint64_t index);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }
    result_type operator()() { return next(); }

    std::uint64_t next();
    /// Uniform on {0, ..., bound - 1}; bound must be positive.
    std::uint64_t uniform_below(std::uint64_t bound);
    /// Uniform on {lo, ..., hi}.
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);
    double uniform01();
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }
    bool bernoulli(double p) { return uniform01() < p; }

private:
    std::uint64_t s_[4];
};

/// One SplitMix64 step applied to `x`; a good 64-bit mixer on its own.
std::uint64_t splitmix64(std::uint64_t x);

} // namespace lbr

#endif // LBR_RNG_HPP
