// Copyright 2026 The Authors.
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

#ifndef SOCSENS_RNG_HPP
#define SOCSENS_RNG_HPP

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

namespace socsens {

// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Derives an independent seed for a named stochastic stage. Labels make the
// streams of different stages disjoint regardless of call order.
std::uint64_t stream_seed(std::uint64_t master, std::string_view label,
                          std::uint64_t index = 0);

// Seed of the i-th run of an ensemble. Run 0 uses the master seed itself so a
// one-run ensemble reproduces a single simulation.
std::uint64_t run_seed(std::uint64_t master, std::uint64_t run_index);

// Thin wrapper over mt19937_64. Distributions are implemented here rather than
// taken from <random> because the standard distributions are not specified
// bit-for-bit across library implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, 1) with 53 bits of resolution.
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Uniform integer in [0, n). n must be positive.
  std::uint64_t below(std::uint64_t n);

  // Uniform integer in [lo, hi].
  std::int64_t between(std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(
                    below(static_cast<std::uint64_t>(hi - lo) + 1));
  }

  bool bernoulli(double p) { return uniform() < p; }

  // Index drawn proportionally to non-negative weights.
  std::size_t weighted(const std::vector<double>& weights);

  // k distinct values from [0, n) in draw order (partial Fisher-Yates).
  std::vector<std::uint32_t> sample(std::uint32_t n, std::uint32_t k);

  template <typename T>
  void shuffle(std::vector<T>& values) {
    for (std::size_t i = values.size(); i > 1; --i) {
      std::swap(values[i - 1], values[below(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace socsens

#endif  // SOCSENS_RNG_HPP
