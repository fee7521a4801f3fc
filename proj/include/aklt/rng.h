// Copyright 2026 The aklt2d Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef AKLT_RNG_H
#define AKLT_RNG_H

#include <cstdint>
#include <initializer_list>
#include <limits>

namespace aklt {

/// SplitMix64 step; used for seeding and for deriving stream seeds.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

/// xoshiro256** 1.0 (Blackman & Vigna). All derived quantities (integers in a
/// range, doubles in [0,1)) are computed here rather than through <random>
/// distributions, so streams are bit-identical across standard libraries.
class Rng {
   public:
    using result_type = uint64_t;

    explicit Rng(uint64_t seed = 0) { reseed(seed); }

    /// Independent stream for (seed, i, j, ...). Derivation is a SplitMix64
    /// hash chain over the path components.
    static Rng stream(uint64_t seed, std::initializer_list<uint64_t> path) {
        uint64_t h = seed;
        uint64_t mixed = splitmix64(h);
        for (uint64_t component : path) {
            uint64_t k = mixed ^ (component * 0xd1b54a32d192ed03ULL + 0x8cb92ba72f3d8dd7ULL);
            mixed = splitmix64(k);
        }
        return Rng(mixed);
    }

    void reseed(uint64_t seed) {
        uint64_t sm = seed;
        for (auto& word : s_) {
            word = splitmix64(sm);
        }
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<uint64_t>::max(); }

    result_type operator()() {
        const uint64_t result = rotl(s_[1] * 5, 7) * 9;
        const uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    /// Uniform integer in [0, n) by Lemire's multiply-and-reject method.
    uint64_t below(uint64_t n) {
        uint64_t x = (*this)();
        __uint128_t m = static_cast<__uint128_t>(x) * n;
        auto low = static_cast<uint64_t>(m);
        if (low < n) {
            uint64_t threshold = (0 - n) % n;
            while (low < threshold) {
                x = (*this)();
                m = static_cast<__uint128_t>(x) * n;
                low = static_cast<uint64_t>(m);
            }
        }
        return static_cast<uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

    bool bernoulli(double p) { return uniform() < p; }

   private:
    static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

    uint64_t s_[4];
};

}  // namespace aklt

#endif
