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

#include <doctest.h>

#include <algorithm>
#include <queue>
#include <sstream>

#include "socsens/graph.hpp"
#include "socsens/rng.hpp"

namespace socsens {
namespace {

std::size_t line_of_error(const std::string& text, NetworkFormat fmt) {
  std::istringstream in(text);
  try {
    parse_network(in, fmt);
  } catch (const NetworkError& e) {
    return e.line();
  }
  return 0;
}

bool connected(const ContactNetwork& net) {
  std::vector<bool> seen(net.node_count(), false);
  std::queue<NodeId> q;
  q.push(0);
  seen[0] = true;
  std::size_t count = 1;
  while (!q.empty()) {
    const auto v = q.front();
    q.pop();
    for (const auto& inc : net.incident(v)) {
      if (!seen[inc.neighbor]) {
        seen[inc.neighbor] = true;
        ++count;
        q.push(inc.neighbor);
      }
    }
  }
  return count == net.node_count();
}

TEST_CASE("incidence lists see every edge from both ends") {
  ContactNetwork net({{30, Gender::male, 1}, {40, Gender::female, 2}, {50, Gender::male, 3}},
                     {{0, 1, 100, MeetingType::home},
                      {1, 2, 50, MeetingType::work},
                      {0, 1, 25, MeetingType::shop}});
  CHECK(net.degree(0) == 2);
  CHECK(net.degree(1) == 3);
  CHECK(net.degree(2) == 1);
  CHECK(net.weighted_degree(1) == 175);
  for (const auto& inc : net.incident(2)) CHECK(inc.neighbor == 1);
  const auto s = degree_stats(net);
  CHECK(s.max_degree == 3);
  CHECK(s.avg_degree == doctest::Approx(2.0));
}

TEST_CASE("construction rejects invalid edges") {
  const std::vector<Demographics> two(2);
  CHECK_THROWS_AS(ContactNetwork(two, {{0, 0, 1, MeetingType::home}}), NetworkError);
  CHECK_THROWS_AS(ContactNetwork(two, {{0, 2, 1, MeetingType::home}}), NetworkError);
  CHECK_THROWS_AS(ContactNetwork(two, {{0, 1, 1, static_cast<MeetingType>(7)}}),
                  NetworkError);
}

TEST_CASE("edge list parsing") {
  std::istringstream in("# comment\n\n0 1\n1 3\n");
  const auto net = parse_network(in, NetworkFormat::edge_list);
  CHECK(net.node_count() == 4);
  CHECK(net.edge_count() == 2);
  CHECK(net.edges()[0].duration == 1);
  CHECK(net.edges()[0].type == MeetingType::other);
  CHECK(net.degree(2) == 0);
}

TEST_CASE("attributed parsing reports the offending line") {
  const std::string header = "3 2\n0 10 0 100\n1 20 1 200\n2 30 0 300\n";
  CHECK(line_of_error(header + "0 1 60 1\n0 0 60 1\n", NetworkFormat::attributed) == 6);
  CHECK(line_of_error(header + "0 1 60 1\n0 5 60 1\n", NetworkFormat::attributed) == 6);
  CHECK(line_of_error(header + "0 1 -4 1\n1 2 60 1\n", NetworkFormat::attributed) == 5);
  CHECK(line_of_error(header + "0 1 60 9\n1 2 60 1\n", NetworkFormat::attributed) == 5);
  CHECK(line_of_error(header + "0 1 60 1\n1 2 60 1\n1 2 60 1\n", NetworkFormat::attributed) ==
        7);
  CHECK(line_of_error("2 0\n0 1 0 1\n0 1 0 1\n", NetworkFormat::attributed) == 3);
  CHECK(line_of_error("0 1\n2 2\n", NetworkFormat::edge_list) == 2);
  std::istringstream empty("");
  CHECK_THROWS_AS(parse_network(empty, NetworkFormat::attributed), NetworkError);
}

TEST_CASE("save and load round-trip") {
  const auto net = generate_starlike(200, 0.05, 3);
  std::stringstream buf;
  save_network(net, buf);
  const auto again = parse_network(buf, NetworkFormat::attributed);
  CHECK(again == net);
  std::stringstream second;
  save_network(again, second);
  std::stringstream first;
  save_network(net, first);
  CHECK(first.str() == second.str());
}

TEST_CASE("starlike generator") {
  const auto net = generate_starlike(2000, 0.02, 11);
  CHECK(net.node_count() == 2000);
  CHECK(connected(net));
  CHECK(net == generate_starlike(2000, 0.02, 11));
  CHECK_FALSE(net == generate_starlike(2000, 0.02, 12));
  // Hubs are the first 40 nodes and collect a large share of attachments.
  std::size_t hub_degree = 0;
  for (NodeId v = 0; v < 40; ++v) hub_degree += net.degree(v);
  CHECK(static_cast<double>(hub_degree) > 0.3 * 2.0 * static_cast<double>(net.edge_count()));
  CHECK(degree_stats(net).max_degree > 10 * static_cast<std::size_t>(degree_stats(net).avg_degree));
  CHECK_THROWS(generate_starlike(5, 0.02, 1));
  CHECK_THROWS(generate_starlike(100, 0.5, 1));
}

TEST_CASE("citylike generator") {
  const auto net = generate_citylike(5000, 30.0, 5);
  CHECK(net.node_count() == 5000);
  CHECK(net == generate_citylike(5000, 30.0, 5));
  const auto s = degree_stats(net);
  CHECK(s.avg_degree == doctest::Approx(30.0).epsilon(0.1));
  CHECK(s.max_degree < 4 * 30);
  // School-age members spend most contacts in long school meetings.
  std::size_t pupils = 0, school_heavy = 0;
  for (NodeId v = 0; v < net.node_count(); ++v) {
    const auto age = net.demographics(v).age;
    if (age < 6 || age > 17) continue;
    ++pupils;
    std::size_t school = 0;
    for (const auto& inc : net.incident(v)) {
      school += net.edges()[inc.edge].type == MeetingType::school;
    }
    if (2 * school > net.degree(v)) ++school_heavy;
  }
  CHECK(pupils > 500);
  CHECK(school_heavy > pupils / 2);
  CHECK_THROWS(generate_citylike(50, 30.0, 1));
  CHECK_THROWS(generate_citylike(500, 2.0, 1));
}

TEST_CASE("seed streams") {
  CHECK(run_seed(77, 0) == 77);
  CHECK(run_seed(77, 1) != run_seed(77, 2));
  CHECK(stream_seed(1, "train") != stream_seed(1, "eval"));
  CHECK(stream_seed(1, "train", 0) != stream_seed(1, "train", 1));
  Rng rng(9);
  const auto pick = rng.sample(50, 50);
  std::vector<std::uint32_t> sorted(pick.begin(), pick.end());
  std::sort(sorted.begin(), sorted.end());
  for (std::uint32_t i = 0; i < 50; ++i) CHECK(sorted[i] == i);
  for (int i = 0; i < 1000; ++i) {
    const auto x = rng.between(-3, 3);
    CHECK((x >= -3 && x <= 3));
  }
}

}  // namespace
}  // namespace socsens
