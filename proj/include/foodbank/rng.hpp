#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace foodbank {

// Counter-based generator: Philox 4x64 with 10 rounds. Draw k of a stream
// depends only on (seed, stream ids, k), so streams split freely.
inline constexpr std::string_view kRngName = "philox4x64-10";
inline constexpr std::uint64_t kRngVersion = 1;

using PhiloxCounter = std::array<std::uint64_t, 4>;
using PhiloxKey = std::array<std::uint64_t, 2>;

PhiloxCounter philox4x64_10(PhiloxCounter counter, PhiloxKey key);

class CounterRng {
public:
    CounterRng(std::uint64_t seed, std::uint64_t stream_a, std::uint64_t stream_b = 0,
               std::uint64_t stream_c = 0);

    std::uint64_t next_u64();
    double next_uniform();                 // open interval (0, 1)
    double next_uniform(double lo, double hi);
    double next_normal();                  // Box-Muller

private:
    PhiloxCounter counter_;
    PhiloxKey key_;
    PhiloxCounter block_{};
    int used_ = 4;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace foodbank
