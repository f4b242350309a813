// Copyright 2026 The Authors.
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

#include "socsens/decision_tree.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace socsens {

namespace {

double gini(double positives, double total) {
  if (total <= 0.0) return 0.0;
  const double p = positives / total;
  return 2.0 * p * (1.0 - p);
}

constexpr double kTieTolerance = 1e-12;

}  // namespace

DecisionTree DecisionTree::train(std::span<const FeatureRow> rows,
                                 std::span<const std::uint8_t> labels,
                                 const TreeParams& params) {
  if (rows.size() != labels.size()) {
    throw std::invalid_argument("feature and label counts differ");
  }
  if (rows.empty()) throw std::invalid_argument("empty training set");
  const std::size_t dims = rows.front().size();
  for (const auto& r : rows) {
    if (r.size() != dims) throw std::invalid_argument("ragged feature rows");
  }
  const auto positives = std::count_if(labels.begin(), labels.end(),
                                       [](std::uint8_t l) { return l != 0; });
  if (positives == 0 || static_cast<std::size_t>(positives) == labels.size()) {
    throw std::invalid_argument("training data must contain both classes");
  }
  if (params.max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  if (params.min_leaf < 1) throw std::invalid_argument("min_leaf must be >= 1");

  std::vector<std::size_t> features = params.allowed_features;
  if (features.empty()) {
    features.resize(dims);
    std::iota(features.begin(), features.end(), std::size_t{0});
  }
  std::sort(features.begin(), features.end());
  features.erase(std::unique(features.begin(), features.end()), features.end());
  for (auto f : features) {
    if (f >= dims) throw std::invalid_argument("allowed feature out of range");
  }

  DecisionTree tree;
  std::vector<std::size_t> index(rows.size());
  std::iota(index.begin(), index.end(), std::size_t{0});
  tree.grow(rows, labels, index, 0, index.size(), 0, params, features);
  return tree;
}

std::int32_t DecisionTree::grow(std::span<const FeatureRow> rows,
                                std::span<const std::uint8_t> labels,
                                std::vector<std::size_t>& index, std::size_t begin,
                                std::size_t end, int depth, const TreeParams& params,
                                const std::vector<std::size_t>& features) {
  const auto id = static_cast<std::int32_t>(nodes_.size());
  nodes_.emplace_back();
  Node node;
  node.total = end - begin;
  for (std::size_t i = begin; i < end; ++i) node.positives += labels[index[i]] != 0;

  const double n = static_cast<double>(node.total);
  const double parent_impurity = gini(static_cast<double>(node.positives), n);
  const bool pure = node.positives == 0 || node.positives == node.total;
  if (pure || depth >= params.max_depth || node.total < 2 * params.min_leaf) {
    nodes_[id] = node;
    return id;
  }

  double best_impurity = parent_impurity - kTieTolerance;
  std::size_t best_feature = 0;
  double best_threshold = 0.0;
  bool found = false;
  std::vector<std::size_t> order(index.begin() + static_cast<std::ptrdiff_t>(begin),
                                 index.begin() + static_cast<std::ptrdiff_t>(end));
  for (std::size_t f : features) {
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return rows[a][f] < rows[b][f];
    });
    double left_pos = 0.0;
    for (std::size_t i = 0; i + 1 < order.size(); ++i) {
      left_pos += labels[order[i]] != 0;
      const double lo = rows[order[i]][f], hi = rows[order[i + 1]][f];
      if (!(lo < hi)) continue;
      const std::size_t n_left = i + 1, n_right = order.size() - n_left;
      if (n_left < params.min_leaf || n_right < params.min_leaf) continue;
      const double nl = static_cast<double>(n_left), nr = static_cast<double>(n_right);
      const double right_pos = static_cast<double>(node.positives) - left_pos;
      const double impurity = (nl * gini(left_pos, nl) + nr * gini(right_pos, nr)) / n;
      if (impurity < best_impurity - (found ? kTieTolerance : 0.0)) {
        best_impurity = impurity;
        best_feature = f;
        best_threshold = lo + 0.5 * (hi - lo);
        found = true;
      }
    }
  }
  if (!found) {
    nodes_[id] = node;
    return id;
  }

  node.feature = best_feature;
  node.threshold = best_threshold;
  const auto mid = std::stable_partition(
      index.begin() + static_cast<std::ptrdiff_t>(begin),
      index.begin() + static_cast<std::ptrdiff_t>(end),
      [&](std::size_t r) { return rows[r][best_feature] <= best_threshold; });
  const auto split = static_cast<std::size_t>(mid - index.begin());
  node.left = grow(rows, labels, index, begin, split, depth + 1, params, features);
  node.right = grow(rows, labels, index, split, end, depth + 1, params, features);
  nodes_[id] = node;
  return id;
}

const DecisionTree::Node& DecisionTree::leaf_for(std::span<const double> row) const {
  const Node* node = &nodes_.front();
  while (node->left >= 0) {
    node = &nodes_[row[node->feature] <= node->threshold ? node->left : node->right];
  }
  return *node;
}

bool DecisionTree::predict(std::span<const double> row) const {
  const auto& leaf = leaf_for(row);
  return 2 * leaf.positives > leaf.total;
}

double DecisionTree::predict_proba(std::span<const double> row) const {
  const auto& leaf = leaf_for(row);
  return static_cast<double>(leaf.positives) / static_cast<double>(leaf.total);
}

int DecisionTree::depth() const {
  std::vector<int> level(nodes_.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, level[i]);
    if (nodes_[i].left >= 0) {
      level[nodes_[i].left] = level[nodes_[i].right] = level[i] + 1;
    }
  }
  return deepest;
}

double DecisionTree::training_accuracy(std::span<const FeatureRow> rows,
                                       std::span<const std::uint8_t> labels) const {
  std::size_t correct = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    correct += predict(rows[i]) == (labels[i] != 0);
  }
  return static_cast<double>(correct) / static_cast<double>(rows.size());
}

}  // namespace socsens
