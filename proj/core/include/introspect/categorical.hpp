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

// Probability primitives shared by every other part of the engine:
// categorical distributions, column-stochastic matrices, and the pure
// functions (normalize, softmax, entropy, KL, precision weighting) built
// on them. Everything here is immutable after construction.

#include <cstddef>
#include <span>
#include <vector>

namespace introspect {

/// Floor applied to any probability before taking its logarithm.
inline constexpr double kLogFloor = 1e-16;

/// Tolerance on the sum of a distribution accepted by constructors.
inline constexpr double kNormTolerance = 1e-9;

/// ln(max(p, kLogFloor)).
double safe_log(double p);

class Categorical {
 public:
  /// Validates: non-empty, finite, non-negative, sums to 1 within
  /// kNormTolerance. Throws on violation.
  explicit Categorical(std::vector<double> probs);

  static Categorical uniform(std::size_t n);
  static Categorical one_hot(std::size_t n, std::size_t index);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const { return probs_; }
  const std::vector<double>& values() const { return probs_; }

  /// Index of the largest entry; lowest index on ties.
  std::size_t argmax() const;

  bool operator==(const Categorical&) const = default;

 private:
  std::vector<double> probs_;
};

/// Matrix whose columns are each a Categorical over the rows. Serves as the
/// likelihood mapping (outcomes x states) and as one action slice of a
/// transition model (states x states).
class StochasticMatrix {
 public:
  explicit StochasticMatrix(std::vector<Categorical> columns);

  /// Builds from row-major nested vectors, rows[r][c] = P(row r | column c).
  static StochasticMatrix from_rows(const std::vector<std::vector<double>>& rows);
  static StochasticMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return columns_.size(); }
  double operator()(std::size_t r, std::size_t c) const { return columns_[c][r]; }
  const Categorical& column(std::size_t c) const { return columns_[c]; }
  const std::vector<Categorical>& columns() const { return columns_; }

  /// Row-major copy, the layout used in spec files.
  std::vector<std::vector<double>> to_rows() const;

  /// M * x for a vector over columns. Throws DimensionMismatchError.
  std::vector<double> apply(std::span<const double> x) const;

  bool operator==(const StochasticMatrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::vector<Categorical> columns_;
};

/// A (outcomes x states).
using LikelihoodMatrix = StochasticMatrix;

/// B: one square column-stochastic slice per action.
class TransitionModel {
 public:
  explicit TransitionModel(std::vector<StochasticMatrix> per_action);

  std::size_t num_actions() const { return slices_.size(); }
  std::size_t num_states() const { return slices_.front().rows(); }

  /// Throws UnknownActionError for an out-of-range action.
  const StochasticMatrix& at(std::size_t action) const;
  const std::vector<StochasticMatrix>& slices() const { return slices_; }

  bool operator==(const TransitionModel&) const = default;

 private:
  std::vector<StochasticMatrix> slices_;
};

/// C: preferred outcome distribution. Logs are floored at kLogFloor.
class PreferenceVector {
 public:
  explicit PreferenceVector(Categorical prefs) : prefs_(std::move(prefs)) {}

  const Categorical& dist() const { return prefs_; }
  std::size_t size() const { return prefs_.size(); }

  bool operator==(const PreferenceVector&) const = default;

 private:
  Categorical prefs_;
};

/// Positive, finite sharpness exponent (gamma).
class Precision {
 public:
  explicit Precision(double gamma);

  double value() const { return gamma_; }

  auto operator<=>(const Precision&) const = default;

 private:
  double gamma_;
};

/// v / sum(v). Throws ZeroMassError, NegativeEntryError, NonFiniteInputError.
Categorical normalize(std::span<const double> v);

/// exp(v - max v) normalized. Throws NonFiniteInputError.
Categorical softmax(std::span<const double> v);

/// Shannon entropy in nats with 0 ln 0 = 0.
double entropy(const Categorical& p);

/// KL(p || q) in nats; q is floored at kLogFloor before the log.
double kl_divergence(const Categorical& p, const Categorical& q);

/// Column-wise softmax(gamma * ln A[:, j]), i.e. A^gamma renormalized per
/// column. Zero entries stay zero. gamma = 1 returns A; gamma -> 0 flattens
/// every column toward uniform over its support.
LikelihoodMatrix precision_weight(const LikelihoodMatrix& a, Precision gamma);

}  // namespace introspect
