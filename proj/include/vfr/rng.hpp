// Copyright 2026-present the vfr authors
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

#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace vfr {

/**
 * Seedable 64-bit generator with fully specified derived draws.
 *
 * The engine is std::mt19937_64, whose output sequence is fixed by the C++
 * standard. The standard distributions are not portable across library
 * implementations, so every derived draw is defined here explicitly:
 *
 *  - next_u64():         one raw engine output.
 *  - uniform_open():     ((x >> 11) + 0.5) * 2^-53, strictly inside (0, 1).
 *  - uniform_index(n):   rejection sampling; draw x until x < 2^64 - (2^64 mod n),
 *                        return x mod n.
 *  - uniform_int(lo,hi): lo + uniform_index(hi - lo + 1), inclusive bounds.
 *  - normal():           Box-Muller cosine branch from two uniform_open() draws,
 *                        sqrt(-2 ln u1) * cos(2 pi u2).
 */
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    double uniform_open() {
        return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
    }

    std::uint64_t uniform_index(std::uint64_t n) {
        if (n <= 1) {
            return 0;
        }
        // 2^64 mod n computed without overflow
        const std::uint64_t rem = (std::uint64_t{0} - n) % n;
        const std::uint64_t limit = std::uint64_t{0} - rem;  // 0 means "accept all"
        for (;;) {
            const std::uint64_t x = engine_();
            if (limit == 0 || x < limit) {
                return x % n;
            }
        }
    }

    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
        const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
        return lo + static_cast<std::int64_t>(uniform_index(span));
    }

    double uniform_real(double lo, double hi) { return lo + (hi - lo) * uniform_open(); }

    double normal(double mean = 0.0, double sigma = 1.0) {
        const double u1 = uniform_open();
        const double u2 = uniform_open();
        constexpr double kTwoPi = 6.283185307179586476925286766559;
        return mean + sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    }

    void discard(std::uint64_t n) { engine_.discard(n); }

private:
    std::mt19937_64 engine_;
};

}  // namespace vfr
