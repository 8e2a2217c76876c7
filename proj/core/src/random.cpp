// SPDX-License-Identifier: Apache-2.0
#include "beamsynth/random.hpp"

#include <vector>

namespace beamsynth {

Rng::Rng(std::uint64_t seed, std::initializer_list<std::uint64_t> stream) {
  std::vector<std::uint32_t> words;
  words.reserve(2 * (stream.size() + 1));
  const auto push = [&](std::uint64_t v) {
    words.push_back(static_cast<std::uint32_t>(v));
    words.push_back(static_cast<std::uint32_t>(v >> 32));
  };
  push(seed);
  for (const auto tag : stream) push(tag);
  std::seed_seq seq(words.begin(), words.end());
  engine_.seed(seq);
}

std::uint64_t Rng::below(std::uint64_t n) {
  // Rejection sampling on the top of the range keeps the result unbiased.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % n;
}

}  // namespace beamsynth
