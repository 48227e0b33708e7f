// Copyright 2026 The delayed-pow Authors
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

namespace delayed {

/// Seedable generator with explicit stream splitting.
///
/// Stream `s` of master seed `m` is an mt19937_64 seeded with
/// splitmix64(m + (s + 1) * 0x9E3779B97F4A7C15). The simulator uses stream 0
/// for block arrivals and stream 1 + i for roster entry i, so adding a miner
/// never perturbs the draws of the others. Conversions to real numbers are
/// done here rather than through <random> distributions, whose output is
/// implementation-defined.
class Rng {
 public:
  static constexpr std::uint64_t kArrivalStream = 0;
  static constexpr std::uint64_t miner_stream(std::uint64_t roster_index) {
    return roster_index + 1;
  }

  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  static Rng stream(std::uint64_t master_seed, std::uint64_t stream_id);

  std::uint64_t next() { return engine_(); }
  /// Uniform on [0, 1) with 53 random bits.
  double uniform();
  /// Uniform on (0, 1).
  double uniform_open();
  double exponential(double rate);
  bool bernoulli(double q);

 private:
  std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace delayed
