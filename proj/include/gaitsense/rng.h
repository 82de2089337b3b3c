// Copyright 2026 The Gaitsense Authors
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

#ifndef GAITSENSE_RNG_H_
#define GAITSENSE_RNG_H_

#include <cstdint>
#include <random>

namespace gaitsense {

// Seeded random stream. Every trial owns its own streams, derived from the
// scenario seed, the trial index and a purpose tag, so that changing how one
// subsystem consumes randomness never perturbs another.
class RandomStream {
 public:
  explicit RandomStream(std::uint64_t seed) : engine_(seed) {}
  RandomStream(std::uint64_t seed, std::uint64_t trial, std::uint64_t tag);

  double Gaussian(double stddev) {
    if (stddev <= 0.0) return 0.0;
    return stddev * normal_(engine_);
  }
  double Uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(engine_);
  }
  bool Bernoulli(double p) {
    if (p >= 1.0) return true;
    if (p <= 0.0) return false;
    return Uniform(0.0, 1.0) < p;
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

inline RandomStream::RandomStream(std::uint64_t seed, std::uint64_t trial,
                                  std::uint64_t tag) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32),
                    static_cast<std::uint32_t>(tag)};
  engine_.seed(seq);
}

}  // namespace gaitsense

#endif  // GAITSENSE_RNG_H_
