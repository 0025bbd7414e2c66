//
// Copyright 2026 The formattack Authors
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
//

#ifndef FORMATTACK_RNG_H_
#define FORMATTACK_RNG_H_

#include <cstdint>
#include <random>
#include <span>
#include <string_view>
#include <utility>

namespace formattack {

// Seeded random source passed explicitly to every generator and transform.
//
// The engine is std::mt19937_64, whose output sequence is fixed by the
// standard. Distributions are implemented here rather than taken from
// <random>, whose algorithms are implementation-defined, so a seed produces
// the same values with every standard library.
class Rng {
 public:
  explicit Rng(uint64_t seed) : engine_(seed) {}

  uint64_t NextU64() { return engine_(); }

  // Uniform integer in [lo, hi]. Requires lo <= hi.
  int64_t UniformInt(int64_t lo, int64_t hi);

  // Uniform in [0, 1) with 53 random bits.
  double Uniform01() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

  double Uniform(double lo, double hi) { return lo + (hi - lo) * Uniform01(); }

  // True with probability p; p <= 0 never, p >= 1 always.
  bool Bernoulli(double p) { return Uniform01() < p; }

  // Normal deviate (Marsaglia polar method).
  double Normal(double mean, double stddev);

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (size_t i = items.size(); i > 1; --i) {
      const size_t j = static_cast<size_t>(UniformInt(0, i - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

  // Seed of the substream used for one (transform, document) pair. Depends
  // only on its arguments, so documents can be processed in any order.
  static uint64_t DeriveSeed(uint64_t seed, std::string_view stream,
                             std::string_view doc_id);

 private:
  std::mt19937_64 engine_;
  bool has_spare_normal_ = false;
  double spare_normal_ = 0.0;
};

// 64-bit FNV-1a.
uint64_t Fnv1a64(std::string_view bytes, uint64_t hash = 0xcbf29ce484222325ULL);

// SplitMix64 finalizer.
uint64_t Mix64(uint64_t x);

}  // namespace formattack

#endif  // FORMATTACK_RNG_H_
