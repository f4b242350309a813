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

// Command-line front end: network generation and the sensor experiments.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "socsens/csv.hpp"
#include "socsens/experiment.hpp"

namespace {

using socsens::ExperimentConfig;

constexpr int kUsageError = 2;
constexpr int kRuntimeError = 1;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

template <typename T>
std::vector<T> split_list(const std::string& text) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    std::istringstream in(item);
    T value{};
    if (!(in >> value) || !(in >> std::ws).eof()) {
      throw UsageError("malformed list entry '" + item + "'");
    }
    out.push_back(value);
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

// Raw flag values; turned into an ExperimentConfig after parsing.
struct Flags {
  std::string network;
  std::string format = "attributed";
  std::string generator = "citylike";
  std::size_t nodes = 20000;
  double hub_fraction = 0.02;
  double avg_degree = 50.0;
  std::uint64_t net_seed = 1;
  std::string model = "seir";
  double beta = 7e-7;
  double alpha = 0.5;
  double gamma = 0.25;
  std::string strategy = "topk,wd,tt,dt";
  double k = 0.05;
  double eps = 0.8;
  double eps0 = 0.1;
  std::size_t runs = 200;
  std::string seeds = "1,5,10";
  int horizon = 200;
  std::uint64_t rng_seed = 1;
  std::size_t nominations = 3;
  std::size_t min_cases = 10;
  std::string time_measure = "depth";
  std::string candidate_filter = "hit-rate";
  std::string out = ".";

  std::string sizes = "0.01,0.02,0.05,0.1,0.2";
  double tolerance = 1.0;
  int window_step = 5;
  std::string criteria;
  std::string rates = "5e-7,7e-7,9.1666667e-7";
  bool no_tiers = false;
};

void add_network_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--generator", f.generator, "Network generator: citylike or starlike")
      ->check(CLI::IsMember({"citylike", "starlike"}))
      ->capture_default_str();
  cmd->add_option("--nodes", f.nodes, "Generated network size")->capture_default_str();
  cmd->add_option("--hub-fraction", f.hub_fraction, "Hub share for starlike")
      ->capture_default_str();
  cmd->add_option("--avg-degree", f.avg_degree, "Target mean degree for citylike")
      ->capture_default_str();
  cmd->add_option("--net-seed", f.net_seed, "Seed of the network generator")
      ->capture_default_str();
}

void add_experiment_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--network", f.network, "Network file; overrides the generator");
  cmd->add_option("--format", f.format, "Network file format: attributed or edge-list")
      ->check(CLI::IsMember({"attributed", "edge-list"}))
      ->capture_default_str();
  add_network_flags(cmd, f);
  cmd->add_option("--model", f.model, "Disease model: si or seir")
      ->check(CLI::IsMember({"si", "seir"}))
      ->capture_default_str();
  cmd->add_option("--beta", f.beta, "Transmission hazard per second of contact")
      ->capture_default_str();
  cmd->add_option("--alpha", f.alpha, "Daily E->I rate (seir)")->capture_default_str();
  cmd->add_option("--gamma", f.gamma, "Daily I->R rate (seir)")->capture_default_str();
  cmd->add_option("--strategy", f.strategy,
                  "Comma list of topk, wd, tt, dt, greedy, random; the first one "
                  "drives fano, stability and predict")
      ->capture_default_str();
  cmd->add_option("--k", f.k, "Sensor set size: fraction of N below 1, else a count")
      ->capture_default_str();
  cmd->add_option("--eps", f.eps, "Coverage target of the greedy strategy")
      ->capture_default_str();
  cmd->add_option("--eps0", f.eps0, "Minimum infection rate of tt/dt candidates")
      ->capture_default_str();
  cmd->add_option("--runs", f.runs, "Simulations per ensemble")->capture_default_str();
  cmd->add_option("--seeds", f.seeds, "Comma list of initial infection counts")
      ->capture_default_str();
  cmd->add_option("--horizon", f.horizon, "Simulated days")->capture_default_str();
  cmd->add_option("--rng-seed", f.rng_seed, "Master seed of all random streams")
      ->capture_default_str();
  cmd->add_option("--nominations", f.nominations, "Friends named per topk/wd respondent")
      ->capture_default_str();
  cmd->add_option("--min-cases", f.min_cases,
                  "Cases a group needs in a run before its curve is fitted")
      ->capture_default_str();
  cmd->add_option("--time-measure", f.time_measure, "tt/dt infection time: depth or day")
      ->check(CLI::IsMember({"depth", "day"}))
      ->capture_default_str();
  cmd->add_option("--candidate-filter", f.candidate_filter,
                  "tt/dt candidate filter: hit-rate or depth")
      ->check(CLI::IsMember({"hit-rate", "depth"}))
      ->capture_default_str();
  cmd->add_option("--out", f.out, "Output directory")->capture_default_str();
}

ExperimentConfig to_config(const Flags& f) {
  ExperimentConfig c;
  c.network.path = f.network;
  c.network.format = f.format == "edge-list" ? socsens::NetworkFormat::edge_list
                                             : socsens::NetworkFormat::attributed;
  c.network.generator = f.generator;
  c.network.nodes = f.nodes;
  c.network.hub_fraction = f.hub_fraction;
  c.network.avg_degree = f.avg_degree;
  c.network.seed = f.net_seed;
  c.model = f.model == "si" ? socsens::DiseaseModel::si(f.beta)
                            : socsens::DiseaseModel::seir(f.beta, f.alpha, f.gamma);
  c.strategies = split_list<std::string>(f.strategy);
  c.k = f.k;
  c.eps = f.eps;
  c.eps0 = f.eps0;
  c.runs = f.runs;
  c.seed_counts = split_list<std::size_t>(f.seeds);
  c.horizon = f.horizon;
  c.rng_seed = f.rng_seed;
  c.nominations = f.nominations;
  c.min_cases = f.min_cases;
  c.time = f.time_measure == "day" ? socsens::TimeMeasure::calendar_day
                                   : socsens::TimeMeasure::depth;
  c.filter = f.candidate_filter == "depth" ? socsens::CandidateFilter::average_depth
                                           : socsens::CandidateFilter::hit_rate;
  try {
    c.validate();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  return c;
}

std::ofstream open_output(const std::string& dir, const std::string& name) {
  std::filesystem::create_directories(dir);
  const auto path = std::filesystem::path(dir) / name;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  std::cout << "wrote " << path.string() << '\n';
  return out;
}

socsens::ContactNetwork network_for(const ExperimentConfig& c) {
  auto net = socsens::load_or_generate(c.network);
  c.resolve_k(net.node_count());
  return net;
}

void write_nodes(std::span<const socsens::NodeId> nodes, std::ostream& out) {
  for (auto v : nodes) out << v << '\n';
}

// Expands `--config FILE` into flags placed right after the subcommand, so
// explicit flags given later on the command line take precedence.
std::vector<std::string> expand_config(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  for (std::size_t i = 0; i < args.size(); ++i) {
    std::string file;
    std::size_t width = 0;
    if (args[i] == "--config" && i + 1 < args.size()) {
      file = args[i + 1];
      width = 2;
    } else if (args[i].rfind("--config=", 0) == 0) {
      file = args[i].substr(9);
      width = 1;
    } else {
      continue;
    }
    std::ifstream in(file);
    if (!in) throw UsageError("cannot read config file " + file);
    std::vector<std::string> injected;
    std::string line;
    while (std::getline(in, line)) {
      if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
      const auto eq = line.find('=');
      auto trim = [](std::string s) {
        const auto b = s.find_first_not_of(" \t\r");
        if (b == std::string::npos) return std::string{};
        return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
      };
      if (trim(line).empty()) continue;
      if (eq == std::string::npos) throw UsageError("config line without '=': " + line);
      injected.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
    }
    args.erase(args.begin() + static_cast<std::ptrdiff_t>(i),
               args.begin() + static_cast<std::ptrdiff_t>(i + width));
    // Subcommand name is the first argument.
    const auto at = args.empty() ? args.end() : args.begin() + 1;
    args.insert(at, injected.begin(), injected.end());
    break;
  }
  return args;
}

int run(int argc, char** argv) {
  CLI::App app{"Social network sensors: early outbreak detection experiments", "socsens"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
  app.require_subcommand(1);
  Flags f;
  std::string config_file;
  const char* config_help = "Key=value file of flag defaults (flag names without dashes)";

  auto* generate = app.add_subcommand("generate", "Generate a synthetic contact network");
  add_network_flags(generate, f);
  std::string net_out;
  generate->add_option("--out", net_out, "Output network file")->required();
  generate->add_option("--config", config_file, config_help);

  auto* leadtime = app.add_subcommand("leadtime", "Lead time of each strategy and seed count");
  auto* fano = app.add_subcommand("fano", "Lead dispersion across sensor set sizes");
  auto* stability = app.add_subcommand("stability", "Lead estimates on truncated windows");
  auto* predict = app.add_subcommand("predict", "Cubic predictor of the population curve");
  auto* surrogate = app.add_subcommand("surrogate", "Demographic surrogate sensor pipeline");
  for (auto* cmd : {leadtime, fano, stability, predict, surrogate}) {
    add_experiment_flags(cmd, f);
    cmd->add_option("--config", config_file, config_help);
  }
  fano->add_option("--sizes", f.sizes, "Comma list of set sizes as fractions of N")
      ->capture_default_str();
  stability->add_option("--tolerance", f.tolerance, "Allowed deviation in days")
      ->capture_default_str();
  stability->add_option("--window-step", f.window_step, "Spacing of truncation windows")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  surrogate->add_option("--criteria", f.criteria, "Criteria key=value file")
      ->check(CLI::ExistingFile);
  surrogate->add_option("--rates", f.rates, "Comma list of beta values for refinement")
      ->capture_default_str();
  surrogate->add_flag("--no-tiers", f.no_tiers, "Skip the information tier comparison");

  auto args = expand_config(argc, argv);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsageError;
  }

  if (generate->parsed()) {
    ExperimentConfig c;
    c.network.generator = f.generator;
    c.network.nodes = f.nodes;
    c.network.hub_fraction = f.hub_fraction;
    c.network.avg_degree = f.avg_degree;
    c.network.seed = f.net_seed;
    socsens::ContactNetwork net = [&] {
      try {
        return socsens::load_or_generate(c.network);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }();
    socsens::save_network(net, std::filesystem::path(net_out));
    const auto s = socsens::degree_stats(net);
    std::cout << "nodes=" << s.nodes << " edges=" << net.edge_count()
              << " avg_degree=" << socsens::csv_number(s.avg_degree, 3)
              << " max_degree=" << s.max_degree << '\n';
    return 0;
  }

  const auto c = to_config(f);
  const auto net = [&] {
    try {
      return network_for(c);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();

  if (leadtime->parsed()) {
    const auto rows = socsens::run_leadtime(net, c);
    auto out = open_output(f.out, "leadtime.csv");
    socsens::write_leadtime_csv(rows, out);
  } else if (fano->parsed()) {
    const auto sizes = split_list<double>(f.sizes);
    const auto rows = socsens::run_fano(net, c, sizes);
    auto out = open_output(f.out, "fano.csv");
    socsens::write_fano_csv(rows, out);
  } else if (stability->parsed()) {
    std::vector<int> windows;
    for (int w = f.window_step; w <= c.horizon; w += f.window_step) windows.push_back(w);
    const auto curve = socsens::run_stability(net, c, windows, f.tolerance);
    auto out = open_output(f.out, "stability.csv");
    socsens::write_stability_csv(curve, out);
    std::cout << "stable_from="
              << (curve.stable_from ? std::to_string(*curve.stable_from) : "n/a") << '\n';
  } else if (predict->parsed()) {
    const auto report = socsens::run_predict(net, c);
    auto out = open_output(f.out, "predict.csv");
    socsens::write_predict_csv(report, out);
  } else if (surrogate->parsed()) {
    socsens::SurrogateCriteria criteria;
    if (!f.criteria.empty()) {
      std::ifstream in(f.criteria);
      try {
        criteria = socsens::parse_criteria(in);
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
    }
    const auto rates = split_list<double>(f.rates);
    const auto report = socsens::run_surrogate(net, c, criteria, rates);
    {
      auto out = open_output(f.out, "surrogate.csv");
      socsens::write_surrogate_csv(report, out);
    }
    {
      auto out = open_output(f.out, "criteria_set.txt");
      write_nodes(report.criteria_set, out);
    }
    {
      auto out = open_output(f.out, "surrogate_set.txt");
      write_nodes(report.refined.members, out);
    }
    if (!f.no_tiers) {
      const auto tiers = socsens::run_tiers(net, c);
      auto out = open_output(f.out, "tiers.csv");
      socsens::write_tiers_csv(tiers, out);
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}
