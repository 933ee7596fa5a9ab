// Copyright 2026 The Introspect Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>

namespace introspect {

/// Portable seeded random source. The engine is std::mt19937_64, whose
/// output sequence is fixed by the C++ standard. Uniform doubles take the
/// top 53 bits of one draw, (x >> 11) * 2^-53, and categorical sampling
/// inverts the CDF, so results are identical on every platform. Standard
/// library distributions are deliberately not used.
class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform in [0, 1).
  double uniform();

  /// Index i with probability probs[i] (probs must sum to ~1).
  std::size_t sample(std::span<const double> probs);

 private:
  std::mt19937_64 engine_;
};

}  // namespace introspect
