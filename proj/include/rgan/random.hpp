// Copyright 2026 The rgan Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RGAN_RANDOM_HPP
#define RGAN_RANDOM_HPP

// Counter-based random numbers. Every uniform variate is a pure function of
// (seed, stream, index, coordinate), so parallel partitions of an index range
// reproduce the serial stream exactly.

#include <array>
#include <cstdint>
#include <span>

namespace rgan {

/// Philox4x32 with 10 rounds (Salmon et al., "Parallel random numbers: as easy as 1, 2, 3").
inline std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr,
                                               std::array<std::uint32_t, 2> key) noexcept
{
    constexpr std::uint32_t kMul0 = 0xD2511F53u;
    constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
    constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
    constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
        const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
        const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
        const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
        const auto lo0 = static_cast<std::uint32_t>(p0);
        const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
        const auto lo1 = static_cast<std::uint32_t>(p1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

/// SplitMix64 finalizer; used to derive child seeds.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept
{
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0) noexcept
{
    return mix64(mix64(seed ^ mix64(a)) ^ mix64(b + 0x632BE59BD9B4E019ull));
}

/// Named streams so different consumers of one seed never overlap.
enum class Stream : std::uint32_t {
    TargetNoise = 1,
    GeneratorNoise = 2,
    Test = 99,
};

/// Uniform variates in the open interval (0,1) keyed by (seed, stream, index).
class CounterRng {
public:
    CounterRng(std::uint64_t seed, Stream stream) noexcept
        : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
          stream_(static_cast<std::uint32_t>(stream))
    {
    }

    /// Fills `out` with the coordinates of point `index`.
    void uniform_point(std::uint64_t index, std::span<double> out) const noexcept
    {
        for (std::size_t c = 0; c < out.size(); c += 2) {
            const auto block = static_cast<std::uint32_t>(c / 2);
            const auto r = philox4x32({static_cast<std::uint32_t>(index),
                                       static_cast<std::uint32_t>(index >> 32), stream_, block},
                                      key_);
            out[c] = to_unit(r[0], r[1]);
            if (c + 1 < out.size()) {
                out[c + 1] = to_unit(r[2], r[3]);
            }
        }
    }

    double uniform(std::uint64_t index) const noexcept
    {
        double u = 0.0;
        uniform_point(index, std::span<double>(&u, 1));
        return u;
    }

    /// 53-bit mantissa mapped to the cell midpoints (k + 1/2) 2^-53.
    static double to_unit(std::uint32_t hi, std::uint32_t lo) noexcept
    {
        const std::uint64_t bits = ((std::uint64_t{hi} << 32) | lo) >> 11;
        return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
    }

private:
    std::array<std::uint32_t, 2> key_;
    std::uint32_t stream_;
};

} // namespace rgan

#endif // RGAN_RANDOM_HPP
