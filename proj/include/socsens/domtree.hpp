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

#ifndef SOCSENS_DOMTREE_HPP
#define SOCSENS_DOMTREE_HPP

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <span>
#include <vector>

#include "socsens/epidemic.hpp"
#include "socsens/graph.hpp"

namespace socsens {

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// Directed graph over dense ids [0, n) with a designated start node.
class Digraph {
 public:
  Digraph(std::size_t n, NodeId root);

  void add_edge(NodeId from, NodeId to);

  std::size_t node_count() const noexcept { return out_.size(); }
  NodeId root() const noexcept { return root_; }
  std::span<const NodeId> successors(NodeId v) const { return out_[v]; }

 private:
  std::vector<std::vector<NodeId>> out_;
  NodeId root_;
};

// Immediate dominators of every node reachable from the root. The root and
// unreachable nodes have idom kNoNode; unreachable nodes have depth -1.
struct DominatorTree {
  NodeId root = kNoNode;
  std::vector<NodeId> idom;
  std::vector<std::int32_t> depth;

  bool reachable(NodeId v) const { return depth[v] >= 0; }
  // Reflexive: every reachable node dominates itself.
  bool dominates(NodeId x, NodeId y) const;
};

// Lengauer-Tarjan with path compression (simple link/eval).
DominatorTree build_dominator_tree(const Digraph& g);

// A dendrogram as a digraph: infector -> child edges plus a virtual source
// (id = node_count) pointing to every seed.
Digraph dendrogram_digraph(const Dendrogram& d);

// Dominator tree of dendrogram_digraph(d); its root is the virtual source.
DominatorTree build_from_dendrogram(const Dendrogram& d);
std::vector<DominatorTree> build_from_dendrograms(std::span<const Dendrogram> dens);

// Debug dump, `node idom depth` for reachable non-root nodes.
void write_dominator_tree(const DominatorTree& t, std::ostream& out);

}  // namespace socsens

#endif  // SOCSENS_DOMTREE_HPP
