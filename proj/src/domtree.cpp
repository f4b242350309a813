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

#include "socsens/domtree.hpp"

#include <ostream>
#include <stdexcept>
#include <utility>

namespace socsens {

Digraph::Digraph(std::size_t n, NodeId root) : out_(n), root_(root) {
  if (root >= n) throw std::invalid_argument("Digraph: root is not a node");
}

void Digraph::add_edge(NodeId from, NodeId to) {
  if (from >= out_.size() || to >= out_.size()) {
    throw std::out_of_range("Digraph::add_edge: node out of range");
  }
  out_[from].push_back(to);
}

bool DominatorTree::dominates(NodeId x, NodeId y) const {
  if (!reachable(x) || !reachable(y)) return false;
  for (NodeId v = y; v != kNoNode; v = idom[v]) {
    if (v == x) return true;
  }
  return false;
}

DominatorTree build_dominator_tree(const Digraph& g) {
  const std::size_t n = g.node_count();
  constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

  // Depth-first numbering. Internally everything is indexed by preorder
  // number; vertex[i] maps back to the node.
  std::vector<std::uint32_t> dfnum(n, kNone);
  std::vector<NodeId> vertex;
  std::vector<std::uint32_t> parent;
  vertex.reserve(n);
  parent.reserve(n);
  {
    std::vector<std::pair<NodeId, std::size_t>> stack;
    dfnum[g.root()] = 0;
    vertex.push_back(g.root());
    parent.push_back(kNone);
    stack.emplace_back(g.root(), 0);
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto succ = g.successors(v);
      if (next == succ.size()) {
        stack.pop_back();
        continue;
      }
      const NodeId w = succ[next++];
      if (dfnum[w] != kNone) continue;
      dfnum[w] = static_cast<std::uint32_t>(vertex.size());
      vertex.push_back(w);
      parent.push_back(dfnum[v]);
      stack.emplace_back(w, 0);
    }
  }
  const std::size_t m = vertex.size();

  std::vector<std::vector<std::uint32_t>> preds(m);
  for (std::uint32_t i = 0; i < m; ++i) {
    for (NodeId w : g.successors(vertex[i])) preds[dfnum[w]].push_back(i);
  }

  std::vector<std::uint32_t> semi(m), idom(m, kNone), ancestor(m, kNone), label(m);
  std::vector<std::vector<std::uint32_t>> bucket(m);
  for (std::uint32_t i = 0; i < m; ++i) semi[i] = label[i] = i;

  std::vector<std::uint32_t> chain;
  auto eval = [&](std::uint32_t v) {
    if (ancestor[v] == kNone) return v;
    chain.clear();
    for (std::uint32_t x = v; ancestor[ancestor[x]] != kNone; x = ancestor[x]) {
      chain.push_back(x);
    }
    for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
      const std::uint32_t x = *it, a = ancestor[x];
      if (semi[label[a]] < semi[label[x]]) label[x] = label[a];
      ancestor[x] = ancestor[a];
    }
    return label[v];
  };

  for (std::uint32_t w = static_cast<std::uint32_t>(m); w-- > 1;) {
    for (std::uint32_t v : preds[w]) {
      const std::uint32_t u = eval(v);
      if (semi[u] < semi[w]) semi[w] = semi[u];
    }
    bucket[semi[w]].push_back(w);
    const std::uint32_t p = parent[w];
    ancestor[w] = p;
    for (std::uint32_t v : bucket[p]) {
      const std::uint32_t u = eval(v);
      idom[v] = semi[u] < semi[v] ? u : p;
    }
    bucket[p].clear();
  }
  for (std::uint32_t w = 1; w < m; ++w) {
    if (idom[w] != semi[w]) idom[w] = idom[idom[w]];
  }

  DominatorTree t;
  t.root = g.root();
  t.idom.assign(n, kNoNode);
  t.depth.assign(n, -1);
  t.depth[g.root()] = 0;
  for (std::uint32_t w = 1; w < m; ++w) {
    const NodeId node = vertex[w], dom = vertex[idom[w]];
    t.idom[node] = dom;
    t.depth[node] = t.depth[dom] + 1;  // idom precedes w in preorder
  }
  return t;
}

Digraph dendrogram_digraph(const Dendrogram& d) {
  const std::size_t n = d.node_count();
  Digraph g(n + 1, static_cast<NodeId>(n));
  for (NodeId s : d.seed_nodes) g.add_edge(static_cast<NodeId>(n), s);
  for (NodeId v = 0; v < n; ++v) {
    if (d.infected(v) && d.infector[v] != kNoInfector) g.add_edge(d.infector[v], v);
  }
  return g;
}

DominatorTree build_from_dendrogram(const Dendrogram& d) {
  return build_dominator_tree(dendrogram_digraph(d));
}

std::vector<DominatorTree> build_from_dendrograms(std::span<const Dendrogram> dens) {
  if (dens.empty()) throw std::invalid_argument("no dendrograms");
  std::vector<DominatorTree> out;
  out.reserve(dens.size());
  for (const auto& d : dens) out.push_back(build_from_dendrogram(d));
  return out;
}

void write_dominator_tree(const DominatorTree& t, std::ostream& out) {
  for (NodeId v = 0; v < t.idom.size(); ++v) {
    if (v == t.root || !t.reachable(v)) continue;
    out << v << ' ' << t.idom[v] << ' ' << t.depth[v] << '\n';
  }
}

}  // namespace socsens
