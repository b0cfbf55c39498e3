#ifndef EVSSTA_RNG_HPP
#define EVSSTA_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>

namespace evssta {

// Philox4x32-10 counter-based generator (Salmon et al., SC'11).
// Stateless: the output block is a pure function of (counter, key).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key) noexcept;
};

// Stream of random numbers identified by (seed, stream id). Monte Carlo
// repetitions use their index as the stream id, so results never depend on
// how repetitions are scheduled across threads.
class RngStream {
public:
    using result_type = std::uint64_t;

    RngStream(std::uint64_t seed, std::uint64_t stream) noexcept;

    static constexpr result_type min() noexcept { return 0; }
    static constexpr result_type max() noexcept { return std::numeric_limits<result_type>::max(); }

    result_type operator()() noexcept;

    // Uniform on the open interval (0, 1) with 53-bit resolution.
    double uniform() noexcept;
    // Uniform on (lo, hi).
    double uniform(double lo, double hi) noexcept;
    // Standard normal by inversion of Phi.
    double normal();

private:
    void refill() noexcept;

    Philox4x32::Key key_;
    Philox4x32::Counter counter_;
    Philox4x32::Counter block_{};
    unsigned used_ = 4;
};

}  // namespace evssta

#endif  // EVSSTA_RNG_HPP
