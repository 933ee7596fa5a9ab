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

#include "introspect/categorical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "introspect/error.hpp"

namespace introspect {

namespace {

void check_entries(std::span<const double> v) {
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw NonFiniteInputError("entry " + std::to_string(i) + " is not finite");
    }
    if (v[i] < 0.0) {
      throw NegativeEntryError("entry " + std::to_string(i) + " is negative");
    }
  }
}

}  // namespace

double safe_log(double p) { return std::log(std::max(p, kLogFloor)); }

Categorical::Categorical(std::vector<double> probs) : probs_(std::move(probs)) {
  if (probs_.empty()) throw InvalidDistributionError("distribution has no entries");
  check_entries(probs_);
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > kNormTolerance) {
    throw InvalidDistributionError("entries sum to " + std::to_string(total));
  }
}

Categorical Categorical::uniform(std::size_t n) {
  if (n == 0) throw InvalidDistributionError("distribution has no entries");
  return Categorical(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Categorical Categorical::one_hot(std::size_t n, std::size_t index) {
  if (index >= n) throw DimensionMismatchError("one-hot index out of range");
  std::vector<double> p(n, 0.0);
  p[index] = 1.0;
  return Categorical(std::move(p));
}

std::size_t Categorical::argmax() const {
  return static_cast<std::size_t>(std::max_element(probs_.begin(), probs_.end()) - probs_.begin());
}

StochasticMatrix::StochasticMatrix(std::vector<Categorical> columns) : columns_(std::move(columns)) {
  if (columns_.empty()) throw DimensionMismatchError("matrix has no columns");
  rows_ = columns_.front().size();
  for (const auto& c : columns_) {
    if (c.size() != rows_) throw DimensionMismatchError("columns differ in length");
  }
}

StochasticMatrix StochasticMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty() || rows.front().empty()) throw DimensionMismatchError("matrix is empty");
  const std::size_t n_cols = rows.front().size();
  std::vector<Categorical> columns;
  columns.reserve(n_cols);
  for (std::size_t c = 0; c < n_cols; ++c) {
    std::vector<double> col;
    col.reserve(rows.size());
    for (const auto& row : rows) {
      if (row.size() != n_cols) throw DimensionMismatchError("ragged matrix rows");
      col.push_back(row[c]);
    }
    columns.emplace_back(std::move(col));
  }
  return StochasticMatrix(std::move(columns));
}

StochasticMatrix StochasticMatrix::identity(std::size_t n) {
  std::vector<Categorical> columns;
  columns.reserve(n);
  for (std::size_t c = 0; c < n; ++c) columns.push_back(Categorical::one_hot(n, c));
  return StochasticMatrix(std::move(columns));
}

std::vector<std::vector<double>> StochasticMatrix::to_rows() const {
  std::vector<std::vector<double>> out(rows_, std::vector<double>(cols()));
  for (std::size_t c = 0; c < cols(); ++c) {
    for (std::size_t r = 0; r < rows_; ++r) out[r][c] = columns_[c][r];
  }
  return out;
}

std::vector<double> StochasticMatrix::apply(std::span<const double> x) const {
  if (x.size() != cols()) {
    throw DimensionMismatchError("matrix has " + std::to_string(cols()) +
                                 " columns, vector has " + std::to_string(x.size()));
  }
  std::vector<double> out(rows_, 0.0);
  for (std::size_t c = 0; c < cols(); ++c) {
    const double w = x[c];
    const auto col = columns_[c].probs();
    for (std::size_t r = 0; r < rows_; ++r) out[r] += col[r] * w;
  }
  return out;
}

TransitionModel::TransitionModel(std::vector<StochasticMatrix> per_action) : slices_(std::move(per_action)) {
  if (slices_.empty()) throw UnknownActionError("transition model needs at least one action");
  const std::size_t n = slices_.front().rows();
  for (const auto& s : slices_) {
    if (s.rows() != n || s.cols() != n) {
      throw DimensionMismatchError("transition slices must be square and share one state count");
    }
  }
}

const StochasticMatrix& TransitionModel::at(std::size_t action) const {
  if (action >= slices_.size()) {
    throw UnknownActionError("action " + std::to_string(action) + " out of range (" +
                             std::to_string(slices_.size()) + " actions)");
  }
  return slices_[action];
}

Precision::Precision(double gamma) : gamma_(gamma) {
  if (!std::isfinite(gamma) || gamma <= 0.0) {
    throw NonFiniteInputError("precision must be positive and finite, got " + std::to_string(gamma));
  }
}

Categorical normalize(std::span<const double> v) {
  if (v.empty()) throw ZeroMassError("cannot normalize an empty vector");
  check_entries(v);
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (!(total > 0.0)) throw ZeroMassError("vector has no probability mass");
  std::vector<double> out(v.begin(), v.end());
  for (auto& x : out) x /= total;
  return Categorical(std::move(out));
}

Categorical softmax(std::span<const double> v) {
  if (v.empty()) throw InvalidDistributionError("softmax of an empty vector");
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) throw NonFiniteInputError("softmax entry " + std::to_string(i) + " is not finite");
  }
  const double peak = *std::max_element(v.begin(), v.end());
  std::vector<double> out(v.size());
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = std::exp(v[i] - peak);
    total += out[i];
  }
  for (auto& x : out) x /= total;
  return Categorical(std::move(out));
}

double entropy(const Categorical& p) {
  double h = 0.0;
  for (double x : p.probs()) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return std::max(h, 0.0);
}

double kl_divergence(const Categorical& p, const Categorical& q) {
  if (p.size() != q.size()) {
    throw DimensionMismatchError("KL operands differ in dimension (" + std::to_string(p.size()) + " vs " +
                                 std::to_string(q.size()) + ")");
  }
  double kl = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) kl += p[i] * (std::log(p[i]) - safe_log(q[i]));
  }
  // Rounding (or q entries under the floor) can leave a residue below zero.
  return std::max(kl, 0.0);
}

LikelihoodMatrix precision_weight(const LikelihoodMatrix& a, Precision gamma) {
  std::vector<Categorical> columns;
  columns.reserve(a.cols());
  std::vector<double> w(a.rows());
  for (const auto& col : a.columns()) {
    // 0^gamma is 0 for any gamma > 0, so zeros stay zeros and only the
    // support is exponentiated. Every column has some positive entry.
    double top = -std::numeric_limits<double>::infinity();
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (col[r] > 0.0) top = std::max(top, gamma.value() * std::log(col[r]));
    }
    double total = 0.0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
      w[r] = col[r] > 0.0 ? std::exp(gamma.value() * std::log(col[r]) - top) : 0.0;
      total += w[r];
    }
    for (auto& x : w) x /= total;
    columns.emplace_back(w);
  }
  return LikelihoodMatrix(std::move(columns));
}

}  // namespace introspect
