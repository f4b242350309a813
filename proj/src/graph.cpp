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

#include "socsens/graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

namespace socsens {

NetworkError::NetworkError(const std::string& what, std::size_t line)
    : std::runtime_error(line == 0 ? what
                                   : "line " + std::to_string(line) + ": " + what),
      line_(line) {}

ContactNetwork::ContactNetwork(std::vector<Demographics> nodes,
                               std::vector<ContactEdge> edges)
    : nodes_(std::move(nodes)), edges_(std::move(edges)) {
  const std::size_t n = nodes_.size();
  for (const auto& d : nodes_) {
    if (d.age < 0 || d.age > kMaxAge) throw NetworkError("age out of range");
    if (d.gender != Gender::female && d.gender != Gender::male) {
      throw NetworkError("unknown gender code");
    }
  }
  offsets_.assign(n + 1, 0);
  for (const auto& e : edges_) {
    if (e.u >= n || e.v >= n) throw NetworkError("edge references undeclared node");
    if (e.u == e.v) throw NetworkError("self-loop rejected");
    const auto t = static_cast<int>(e.type);
    if (t < 1 || t > 6) throw NetworkError("meeting type out of range");
    ++offsets_[e.u + 1];
    ++offsets_[e.v + 1];
  }
  for (std::size_t i = 0; i < n; ++i) offsets_[i + 1] += offsets_[i];
  incidence_.resize(offsets_[n]);
  std::vector<std::size_t> fill(offsets_.begin(), offsets_.end() - 1);
  for (std::uint32_t i = 0; i < edges_.size(); ++i) {
    const auto& e = edges_[i];
    incidence_[fill[e.u]++] = {e.v, i};
    incidence_[fill[e.v]++] = {e.u, i};
  }
}

std::uint64_t ContactNetwork::weighted_degree(NodeId v) const {
  std::uint64_t total = 0;
  for (const auto& inc : incident(v)) total += edges_[inc.edge].duration;
  return total;
}

DegreeStats degree_stats(const ContactNetwork& net) {
  DegreeStats s;
  s.nodes = net.node_count();
  if (s.nodes == 0) return s;
  s.avg_degree = 2.0 * static_cast<double>(net.edge_count()) /
                 static_cast<double>(s.nodes);
  for (NodeId v = 0; v < s.nodes; ++v) {
    s.max_degree = std::max(s.max_degree, net.degree(v));
  }
  return s;
}

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::int64_t parse_int(std::string_view field, std::size_t line,
                       const char* what) {
  std::int64_t value = 0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw NetworkError(std::string("malformed ") + what + " '" +
                           std::string(field) + "'",
                       line);
  }
  return value;
}

// Reads the next line that is neither blank nor a '#' comment.
bool next_record(std::istream& in, std::string& line, std::size_t& line_no,
                 std::vector<std::string_view>& fields) {
  while (std::getline(in, line)) {
    ++line_no;
    fields = split_fields(line);
    if (fields.empty() || fields.front().front() == '#') continue;
    return true;
  }
  return false;
}

ContactEdge parse_edge(const std::vector<std::string_view>& f, std::size_t line_no,
                       std::size_t n_declared, bool attributed) {
  const std::size_t want = attributed ? 4 : 2;
  if (f.size() != want) {
    throw NetworkError("expected " + std::to_string(want) + " fields on edge line",
                       line_no);
  }
  const auto u = parse_int(f[0], line_no, "node id");
  const auto v = parse_int(f[1], line_no, "node id");
  if (u < 0 || v < 0) throw NetworkError("negative node id", line_no);
  if (attributed && (static_cast<std::size_t>(u) >= n_declared ||
                     static_cast<std::size_t>(v) >= n_declared)) {
    throw NetworkError("dangling node reference", line_no);
  }
  if (u == v) throw NetworkError("self-loop rejected", line_no);
  ContactEdge e{static_cast<NodeId>(u), static_cast<NodeId>(v), 1,
                MeetingType::other};
  if (attributed) {
    const auto duration = parse_int(f[2], line_no, "duration");
    if (duration < 0) throw NetworkError("negative duration", line_no);
    if (duration > std::numeric_limits<std::uint32_t>::max()) {
      throw NetworkError("duration too large", line_no);
    }
    const auto type = parse_int(f[3], line_no, "meeting type");
    if (type < 1 || type > 6) throw NetworkError("meeting type out of range", line_no);
    e.duration = static_cast<std::uint32_t>(duration);
    e.type = static_cast<MeetingType>(type);
  }
  return e;
}

ContactNetwork parse_edge_list(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> fields;
  std::vector<ContactEdge> edges;
  std::size_t n = 0;
  while (next_record(in, line, line_no, fields)) {
    auto e = parse_edge(fields, line_no, 0, false);
    n = std::max<std::size_t>(n, std::max(e.u, e.v) + std::size_t{1});
    edges.push_back(e);
  }
  return ContactNetwork(std::vector<Demographics>(n), std::move(edges));
}

ContactNetwork parse_attributed(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  std::vector<std::string_view> f;
  if (!next_record(in, line, line_no, f)) throw NetworkError("empty network file");
  if (f.size() != 2) throw NetworkError("header must be `N M`", line_no);
  const auto n = parse_int(f[0], line_no, "node count");
  const auto m = parse_int(f[1], line_no, "edge count");
  if (n < 0 || m < 0) throw NetworkError("negative count in header", line_no);

  std::vector<Demographics> nodes(static_cast<std::size_t>(n));
  std::vector<bool> seen(nodes.size(), false);
  for (std::int64_t i = 0; i < n; ++i) {
    if (!next_record(in, line, line_no, f)) {
      throw NetworkError("unexpected end of file in node section", line_no);
    }
    if (f.size() != 4) throw NetworkError("expected 4 fields on node line", line_no);
    const auto id = parse_int(f[0], line_no, "node id");
    if (id < 0 || id >= n) throw NetworkError("node id out of range", line_no);
    if (seen[id]) throw NetworkError("duplicate node id", line_no);
    seen[id] = true;
    const auto age = parse_int(f[1], line_no, "age");
    if (age < 0 || age > kMaxAge) throw NetworkError("age out of range", line_no);
    const auto gender = parse_int(f[2], line_no, "gender");
    if (gender != 0 && gender != 1) throw NetworkError("unknown gender code", line_no);
    const auto income = parse_int(f[3], line_no, "income");
    if (income < 0) throw NetworkError("negative income", line_no);
    nodes[id] = {static_cast<int>(age), static_cast<Gender>(gender),
                 static_cast<std::uint64_t>(income)};
  }
  std::vector<ContactEdge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) {
    if (!next_record(in, line, line_no, f)) {
      throw NetworkError("unexpected end of file in edge section", line_no);
    }
    edges.push_back(parse_edge(f, line_no, nodes.size(), true));
  }
  if (next_record(in, line, line_no, f)) {
    throw NetworkError("trailing content after declared edges", line_no);
  }
  return ContactNetwork(std::move(nodes), std::move(edges));
}

}  // namespace

ContactNetwork parse_network(std::istream& in, NetworkFormat format) {
  return format == NetworkFormat::edge_list ? parse_edge_list(in)
                                            : parse_attributed(in);
}

ContactNetwork load_network(const std::filesystem::path& path,
                            NetworkFormat format) {
  std::ifstream in(path);
  if (!in) throw NetworkError("cannot open " + path.string());
  return parse_network(in, format);
}

void save_network(const ContactNetwork& net, std::ostream& out) {
  // Built in one buffer; per-line stream insertion is slow for large networks.
  std::string buf;
  buf.reserve(32 * (net.node_count() + net.edge_count()));
  auto put = [&buf](std::uint64_t x) {
    char tmp[24];
    auto [p, ec] = std::to_chars(tmp, tmp + sizeof tmp, x);
    buf.append(tmp, p);
  };
  put(net.node_count());
  buf += ' ';
  put(net.edge_count());
  buf += '\n';
  const auto nodes = net.demographics();
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    put(i);
    buf += ' ';
    put(static_cast<std::uint64_t>(nodes[i].age));
    buf += ' ';
    put(static_cast<std::uint64_t>(nodes[i].gender));
    buf += ' ';
    put(nodes[i].income);
    buf += '\n';
  }
  for (const auto& e : net.edges()) {
    put(e.u);
    buf += ' ';
    put(e.v);
    buf += ' ';
    put(e.duration);
    buf += ' ';
    put(static_cast<std::uint64_t>(e.type));
    buf += '\n';
  }
  out << buf;
}

void save_network(const ContactNetwork& net, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw NetworkError("cannot write " + path.string());
  save_network(net, out);
}

}  // namespace socsens
