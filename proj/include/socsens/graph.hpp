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

#ifndef SOCSENS_GRAPH_HPP
#define SOCSENS_GRAPH_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace socsens {

using NodeId = std::uint32_t;

enum class Gender : std::uint8_t { female = 0, male = 1 };

// Meeting types as coded in activity-based contact data.
enum class MeetingType : std::uint8_t {
  home = 1,
  work = 2,
  shop = 3,
  visit = 4,
  school = 5,
  other = 6,
};

inline constexpr int kMaxAge = 130;

struct Demographics {
  int age = 0;
  Gender gender = Gender::female;
  std::uint64_t income = 0;

  friend bool operator==(const Demographics&, const Demographics&) = default;
};

// One meeting between two people. Parallel edges are distinct meetings.
struct ContactEdge {
  NodeId u = 0;
  NodeId v = 0;
  std::uint32_t duration = 0;  // seconds
  MeetingType type = MeetingType::other;

  friend bool operator==(const ContactEdge&, const ContactEdge&) = default;
};

// Thrown for malformed network files and invalid network construction.
// `line()` is 0 when the error is not tied to a file line.
class NetworkError : public std::runtime_error {
 public:
  NetworkError(const std::string& what, std::size_t line = 0);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Immutable undirected contact multigraph with per-node demographics.
// Adjacency is stored in compressed rows; each undirected edge appears in the
// rows of both endpoints.
class ContactNetwork {
 public:
  struct Incidence {
    NodeId neighbor;
    std::uint32_t edge;  // index into edges()
  };

  ContactNetwork() = default;
  ContactNetwork(std::vector<Demographics> nodes, std::vector<ContactEdge> edges);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  std::span<const Demographics> demographics() const noexcept { return nodes_; }
  const Demographics& demographics(NodeId v) const { return nodes_.at(v); }
  std::span<const ContactEdge> edges() const noexcept { return edges_; }

  std::span<const Incidence> incident(NodeId v) const {
    return {incidence_.data() + offsets_[v], offsets_[v + 1] - offsets_[v]};
  }

  // Number of incident edges, parallel edges counted individually.
  std::size_t degree(NodeId v) const { return offsets_[v + 1] - offsets_[v]; }

  // Sum of incident meeting durations in seconds.
  std::uint64_t weighted_degree(NodeId v) const;

  friend bool operator==(const ContactNetwork& a, const ContactNetwork& b) {
    return a.nodes_ == b.nodes_ && a.edges_ == b.edges_;
  }

 private:
  std::vector<Demographics> nodes_;
  std::vector<ContactEdge> edges_;
  std::vector<std::size_t> offsets_{0};
  std::vector<Incidence> incidence_;
};

struct DegreeStats {
  std::size_t nodes = 0;
  double avg_degree = 0.0;
  std::size_t max_degree = 0;
};

DegreeStats degree_stats(const ContactNetwork& net);

enum class NetworkFormat {
  edge_list,   // `u v` per line; duration 1, type other
  attributed,  // header `N M`, N node lines, M edge lines
};

ContactNetwork parse_network(std::istream& in, NetworkFormat format);
ContactNetwork load_network(const std::filesystem::path& path,
                            NetworkFormat format);

// Writes the canonical attributed form.
void save_network(const ContactNetwork& net, std::ostream& out);
void save_network(const ContactNetwork& net, const std::filesystem::path& path);

// Preferential-attachment network where a small set of hubs collects a large
// share of all attachments. Connected by construction.
ContactNetwork generate_starlike(std::size_t n, double hub_fraction,
                                 std::uint64_t seed);

// Household/school/workplace/community network with a concentrated degree
// distribution. School-age members (5-20) spend most of their contact time in
// long school meetings, and schools differ in daily contact hours.
ContactNetwork generate_citylike(std::size_t n, double target_avg_degree,
                                 std::uint64_t seed);

}  // namespace socsens

#endif  // SOCSENS_GRAPH_HPP
