// Copyright 2026 The Moralscope Authors.
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

// The one PRNG used for fold assignment, SVM sample order and synthetic
// data. Every step is spelled out so other implementations can reproduce
// the exact stream:
//
//   seeding   z = seed + 0x9E3779B97F4A7C15
//             z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9
//             z = (z ^ (z >> 27)) * 0x94D049BB133111EB
//             state = z ^ (z >> 31), or 0x9E3779B97F4A7C15 if that is 0
//   next      x ^= x >> 12; x ^= x << 25; x ^= x >> 27;
//             return x * 0x2545F4914F6CDD1D            (xorshift64*)
//   below(n)  high 64 bits of the 128-bit product next() * n
//   uniform   (next() >> 11) * 2^-53, in [0, 1)
//   shuffle   for i = n-1 down to 1: swap(a[i], a[below(i + 1)])
//
// All arithmetic is modulo 2^64.

#ifndef MORALSCOPE_RNG_H_
#define MORALSCOPE_RNG_H_

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>

namespace moralscope {

class Xorshift64Star {
 public:
  explicit Xorshift64Star(std::uint64_t seed) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    state_ = z ^ (z >> 31);
    if (state_ == 0) state_ = 0x9E3779B97F4A7C15ULL;
  }

  std::uint64_t Next() {
    state_ ^= state_ >> 12;
    state_ ^= state_ << 25;
    state_ ^= state_ >> 27;
    return state_ * 0x2545F4914F6CDD1DULL;
  }

  // Uniform integer in [0, n); n must be positive.
  std::uint64_t Below(std::uint64_t n) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(Next()) * n) >> 64);
  }

  double Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

  // Standard normal via Box-Muller; consumes two draws per call.
  double Gaussian() {
    const double u1 = 1.0 - Uniform();  // (0, 1]
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  }

  template <typename T>
  void Shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      const std::size_t j = static_cast<std::size_t>(Below(i));
      std::swap(items[i - 1], items[j]);
    }
  }

  std::uint64_t state() const { return state_; }

 private:
  std::uint64_t state_;
};

}  // namespace moralscope

#endif  // MORALSCOPE_RNG_H_
