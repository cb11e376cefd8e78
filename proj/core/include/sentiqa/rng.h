// Copyright 2026 The sentiqa Authors
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

#ifndef SENTIQA_RNG_H_
#define SENTIQA_RNG_H_

#include <cstdint>
#include <string_view>

namespace sentiqa {

// SplitMix64 (Steele, Lea & Flood 2014). Output is fully specified by the
// seed, so every seeded perturbation reproduces bit-for-bit on any platform.
// Bounded draws use rejection sampling instead of <random> distributions,
// whose output is implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();

  // Uniform integer in [0, bound). bound must be > 0.
  std::uint64_t uniform(std::uint64_t bound);

  // Uniform real in [0, 1) with 53 bits of precision.
  double uniform_real();

 private:
  std::uint64_t state_;
};

// SplitMix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

// Combines a parent seed with a discriminator into an independent child seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t salt);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view salt);

// 64-bit FNV-1a.
std::uint64_t fnv1a64(std::string_view bytes);

}  // namespace sentiqa

#endif  // SENTIQA_RNG_H_
