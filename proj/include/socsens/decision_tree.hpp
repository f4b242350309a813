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

#ifndef SOCSENS_DECISION_TREE_HPP
#define SOCSENS_DECISION_TREE_HPP

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace socsens {

using FeatureRow = std::vector<double>;

struct TreeParams {
  int max_depth = 8;
  std::size_t min_leaf = 5;
  // Features the tree may split on; empty means all.
  std::vector<std::size_t> allowed_features;
};

// Binary classification tree grown greedily on Gini impurity. Each split is
// `x[feature] <= threshold` goes left. Among equally good splits the lowest
// feature index wins, then the lowest threshold.
class DecisionTree {
 public:
  // Throws std::invalid_argument for mismatched sizes, ragged rows, or
  // training data that contains a single class.
  static DecisionTree train(std::span<const FeatureRow> rows,
                            std::span<const std::uint8_t> labels,
                            const TreeParams& params = {});

  bool predict(std::span<const double> row) const;
  // Fraction of positive training rows in the leaf reached by `row`.
  double predict_proba(std::span<const double> row) const;

  std::size_t node_count() const noexcept { return nodes_.size(); }
  int depth() const;
  double training_accuracy(std::span<const FeatureRow> rows,
                           std::span<const std::uint8_t> labels) const;

 private:
  struct Node {
    std::size_t feature = 0;
    double threshold = 0.0;
    std::int32_t left = -1;  // -1 marks a leaf
    std::int32_t right = -1;
    std::size_t positives = 0;
    std::size_t total = 0;
  };

  const Node& leaf_for(std::span<const double> row) const;
  std::int32_t grow(std::span<const FeatureRow> rows,
                    std::span<const std::uint8_t> labels,
                    std::vector<std::size_t>& index, std::size_t begin,
                    std::size_t end, int depth, const TreeParams& params,
                    const std::vector<std::size_t>& features);

  std::vector<Node> nodes_;
};

}  // namespace socsens

#endif  // SOCSENS_DECISION_TREE_HPP
