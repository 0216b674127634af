// Copyright 2026 The photonec authors
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

#pragma once

#include <cstdint>
#include <random>

namespace photonec {

/// splitmix64 finalizer. Used to derive independent per-trial seeds from a
/// master seed.
constexpr uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seeded random stream. Wraps std::mt19937_64 so the uniform-double
/// extraction is pinned to one bit pattern (53-bit mantissa draw) instead of
/// the implementation-defined std::uniform_real_distribution.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    uint64_t next_u64() { return gen_(); }

    /// Uniform double in [0, 1).
    double next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    /// Stream for trial t of a campaign. The rule is
    ///   mt19937_64(splitmix64(master_seed + (t + 1) * 0x9e3779b97f4a7c15)),
    /// so trial streams are independent of execution order and worker count.
    static Rng for_trial(uint64_t master_seed, uint64_t trial) {
        return Rng(splitmix64(master_seed + (trial + 1) * 0x9e3779b97f4a7c15ULL));
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace photonec
