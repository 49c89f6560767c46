// sttopic/random.h

// Copyright 2026  The sttopic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#ifndef STTOPIC_RANDOM_H_
#define STTOPIC_RANDOM_H_

#include <cstdint>
#include <limits>
#include <string_view>
#include <utility>
#include <vector>

namespace sttopic {

/// SplitMix64 (Steele, Lea & Flood 2014). The state is a 64-bit counter
/// advanced by the golden-gamma constant; each output is a fixed mix of
/// the counter. All random draws in the library use this class.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return Next(); }

  std::uint64_t Next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  /// Uniform double in [0, 1) built from the top 53 bits.
  double UniformDouble() {
    return static_cast<double>(Next() >> 11) * 0x1.0p-53;
  }

  /// Uniform integer in [0, n), n > 0. Rejection sampling removes the
  /// modulo bias.
  std::uint64_t UniformIndex(std::uint64_t n) {
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
      std::uint64_t r = Next();
      if (r >= threshold) return r % n;
    }
  }

 private:
  std::uint64_t state_;
};

/// In-place Fisher-Yates shuffle, walking i from the back and swapping
/// with UniformIndex(i + 1).
template <typename T>
void Shuffle(std::vector<T> *items, SplitMix64 *rng) {
  for (std::size_t i = items->size(); i > 1; --i) {
    std::size_t j = static_cast<std::size_t>(rng->UniformIndex(i));
    std::swap((*items)[i - 1], (*items)[j]);
  }
}

/// 64-bit FNV-1a.
std::uint64_t Fnv1a64(std::string_view bytes);

/// Derives a per-item stream seed from a base seed and a key.
std::uint64_t DeriveSeed(std::uint64_t seed, std::string_view key);

}  // namespace sttopic

#endif  // STTOPIC_RANDOM_H_
