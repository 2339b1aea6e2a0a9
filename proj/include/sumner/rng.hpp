#pragma once

#include <array>
#include <cstdint>
#include <string_view>

namespace sumner {

/// splitmix64 step; also used as the seed mixer.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// FNV-1a over the bytes of a stream name.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// xoshiro256** seeded from splitmix64(seed ^ fnv1a64(stream)). Outputs are
/// bit-identical on every platform:
///   - next():    xoshiro256** output
///   - bit():     bits of successive next() words, least significant first
///   - below(b):  rejection sampling; draws x = next() until x >= (2^64 mod b),
///                returns x mod b
///   - unit():    (next() >> 11) * 2^-53
class Rng {
public:
    explicit Rng(std::uint64_t seed, std::string_view stream = {}) noexcept;

    std::uint64_t next() noexcept;
    bool bit() noexcept;
    std::uint64_t below(std::uint64_t bound) noexcept;
    double unit() noexcept;

private:
    std::array<std::uint64_t, 4> s_{};
    std::uint64_t bit_buffer_ = 0;
    int bits_left_ = 0;
};

} // namespace sumner
