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

#include "fuzz.hpp"

#include <cmath>

namespace introspect::testing {

std::size_t Fuzz::index(std::size_t lo, std::size_t hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  const auto k = static_cast<std::size_t>(rng_.uniform() * span);
  return lo + (k > hi - lo ? hi - lo : k);
}

std::vector<double> Fuzz::weights(std::size_t n, double zero_rate) {
  const double sharpness = uniform(0.2, 6.0);
  std::vector<double> w(n);
  double total = 0.0;
  for (auto& x : w) {
    x = uniform() < zero_rate ? 0.0 : std::pow(uniform(), sharpness);
    total += x;
  }
  if (total <= 0.0) w[index(0, n - 1)] = 1.0;
  return w;
}

std::vector<double> Fuzz::probs(std::size_t n, double zero_rate) {
  auto w = weights(n, zero_rate);
  double total = 0.0;
  for (double x : w) total += x;
  for (auto& x : w) x /= total;
  return w;
}

Categorical Fuzz::categorical(std::size_t n, double zero_rate) { return Categorical(probs(n, zero_rate)); }

std::vector<std::vector<double>> Fuzz::stochastic_rows(std::size_t rows, std::size_t cols, double zero_rate) {
  std::vector<std::vector<double>> m(rows, std::vector<double>(cols));
  for (std::size_t c = 0; c < cols; ++c) {
    const auto col = probs(rows, zero_rate);
    for (std::size_t r = 0; r < rows; ++r) m[r][c] = col[r];
  }
  return m;
}

StochasticMatrix Fuzz::stochastic(std::size_t rows, std::size_t cols, double zero_rate) {
  return StochasticMatrix::from_rows(stochastic_rows(rows, cols, zero_rate));
}

std::vector<std::vector<std::vector<double>>> Fuzz::transition_rows(std::size_t states, std::size_t actions,
                                                                    double zero_rate) {
  std::vector<std::vector<std::vector<double>>> b;
  for (std::size_t a = 0; a < actions; ++a) b.push_back(stochastic_rows(states, states, zero_rate));
  return b;
}

TransitionModel Fuzz::transitions(std::size_t states, std::size_t actions, double zero_rate) {
  std::vector<StochasticMatrix> slices;
  for (std::size_t a = 0; a < actions; ++a) slices.push_back(stochastic(states, states, zero_rate));
  return TransitionModel(std::move(slices));
}

GenerativeModel Fuzz::model(std::size_t states, std::size_t outcomes, std::size_t actions, std::size_t horizon,
                            double zero_rate) {
  auto a = stochastic(outcomes, states, zero_rate);
  auto b = transitions(states, actions, zero_rate);
  auto c = PreferenceVector(categorical(outcomes));
  auto d = categorical(states);
  return GenerativeModel(std::move(a), std::move(b), std::move(c), std::move(d), std::nullopt,
                         Precision(uniform(0.25, 4.0)), horizon);
}

}  // namespace introspect::testing
