#include "moaodv/scenario.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "moaodv/random.hpp"

namespace moaodv {

namespace {

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream is(line);
  while (std::getline(is, field, ',')) out.push_back(trim(field));
  return out;
}

double to_double(const std::string& v, const std::string& what) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw std::invalid_argument("scenario: cannot parse " + what + " from '" + v + "'");
  }
}

std::uint64_t to_u64(const std::string& v, const std::string& what) {
  try {
    std::size_t used = 0;
    const auto u = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return u;
  } catch (const std::exception&) {
    throw std::invalid_argument("scenario: cannot parse " + what + " from '" + v + "'");
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  if (node_count == 0) throw std::invalid_argument("scenario needs at least one node");
  if (!(width > 0.0) || !(height > 0.0)) throw std::invalid_argument("scenario area must be positive");
  if (!(radio_range > 0.0)) throw std::invalid_argument("radio range must be positive");
  if (!(duration > 0.0)) throw std::invalid_argument("duration must be positive");
  if (collision_loss < 0.0 || collision_loss >= 1.0) {
    throw std::invalid_argument("collision_loss must lie in [0, 1)");
  }
  if (!positions.empty() && positions.size() != node_count) {
    throw std::invalid_argument("positions section must list every node");
  }
  if (mobility == MobilityKind::random_waypoint &&
      (!(speed_min > 0.0) || speed_max < speed_min || pause < 0.0)) {
    throw std::invalid_argument("random waypoint needs 0 < speed_min <= speed_max and pause >= 0");
  }
  for (const auto& f : flows) {
    if (f.source >= node_count || f.destination >= node_count) {
      throw std::invalid_argument("flow endpoint is not a valid node index");
    }
    if (f.source == f.destination) throw std::invalid_argument("flow source equals destination");
    if (!(f.bitrate_kbps > 0.0) || f.packet_bytes == 0) {
      throw std::invalid_argument("flow bitrate and packet size must be positive");
    }
    if (f.start < 0.0) throw std::invalid_argument("flow start must be non-negative");
  }
}

ScenarioConfig parse_scenario(std::istream& in) {
  ScenarioConfig s;
  s.flows.clear();
  enum class Section { header, positions, flows } section = Section::header;
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line == "[positions]") {
      section = Section::positions;
      continue;
    }
    if (line == "[flows]") {
      section = Section::flows;
      continue;
    }
    if (line.front() == '[') {
      throw std::invalid_argument("scenario line " + std::to_string(line_no) + ": unknown section " + line);
    }

    if (section == Section::positions) {
      const auto f = split_fields(line);
      if (f.size() != 2) throw std::invalid_argument("scenario line " + std::to_string(line_no) + ": expected x, y");
      s.positions.push_back({to_double(f[0], "x"), to_double(f[1], "y")});
      continue;
    }
    if (section == Section::flows) {
      const auto f = split_fields(line);
      if (f.size() != 4 && f.size() != 5) {
        throw std::invalid_argument("scenario line " + std::to_string(line_no) +
                                    ": expected source, destination, bitrate_kbps, packet_bytes[, start]");
      }
      Flow flow;
      flow.source = to_u64(f[0], "source");
      flow.destination = to_u64(f[1], "destination");
      flow.bitrate_kbps = to_double(f[2], "bitrate_kbps");
      flow.packet_bytes = to_u64(f[3], "packet_bytes");
      if (f.size() == 5) flow.start = to_double(f[4], "start");
      s.flows.push_back(flow);
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("scenario line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "name") s.name = value;
    else if (key == "nodes") s.node_count = to_u64(value, key);
    else if (key == "width") s.width = to_double(value, key);
    else if (key == "height") s.height = to_double(value, key);
    else if (key == "radio_range") s.radio_range = to_double(value, key);
    else if (key == "mobility") {
      if (value == "static") s.mobility = MobilityKind::static_nodes;
      else if (value == "random_waypoint") s.mobility = MobilityKind::random_waypoint;
      else throw std::invalid_argument("scenario: unknown mobility '" + value + "'");
    }
    else if (key == "speed_min") s.speed_min = to_double(value, key);
    else if (key == "speed_max") s.speed_max = to_double(value, key);
    else if (key == "pause") s.pause = to_double(value, key);
    else if (key == "duration") s.duration = to_double(value, key);
    else if (key == "collision_loss") s.collision_loss = to_double(value, key);
    else if (key == "seed") s.seed = to_u64(value, key);
    else throw std::invalid_argument("scenario: unknown key '" + key + "'");
  }
  s.validate();
  return s;
}

ScenarioConfig load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  return parse_scenario(in);
}

void write_scenario(std::ostream& out, const ScenarioConfig& s) {
  out << std::setprecision(17);
  out << "name = " << s.name << '\n'
      << "nodes = " << s.node_count << '\n'
      << "width = " << s.width << '\n'
      << "height = " << s.height << '\n'
      << "radio_range = " << s.radio_range << '\n'
      << "mobility = " << (s.mobility == MobilityKind::static_nodes ? "static" : "random_waypoint") << '\n';
  if (s.mobility == MobilityKind::random_waypoint) {
    out << "speed_min = " << s.speed_min << '\n'
        << "speed_max = " << s.speed_max << '\n'
        << "pause = " << s.pause << '\n';
  }
  out << "duration = " << s.duration << '\n'
      << "collision_loss = " << s.collision_loss << '\n'
      << "seed = " << s.seed << '\n';
  if (!s.positions.empty()) {
    out << "\n[positions]\n";
    for (const auto& p : s.positions) out << p.x << ", " << p.y << '\n';
  }
  out << "\n[flows]\n";
  for (const auto& f : s.flows) {
    out << f.source << ", " << f.destination << ", " << f.bitrate_kbps << ", " << f.packet_bytes
        << ", " << f.start << '\n';
  }
}

void save_scenario(const std::string& path, const ScenarioConfig& s) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file " + path);
  write_scenario(out, s);
}

namespace scenarios {

ScenarioConfig urban(const AreaPreset& area, std::size_t vehicles, double load_kbps,
                     std::uint64_t seed, double duration) {
  if (vehicles < 2) throw std::invalid_argument("urban scenario needs at least two vehicles");
  ScenarioConfig s;
  s.name = area.label + "-" + std::to_string(vehicles) + "v-" +
           std::to_string(static_cast<long>(std::lround(load_kbps))) + "kbps";
  s.node_count = vehicles;
  s.width = area.width;
  s.height = area.height;
  s.radio_range = 250.0;
  s.mobility = MobilityKind::random_waypoint;
  s.speed_min = 3.0;
  s.speed_max = 14.0;
  s.pause = 2.0;
  s.duration = duration;
  s.collision_loss = 0.05;
  s.seed = seed;

  RandomSource rng = RandomSource(seed).split(0xF10);
  const std::size_t sources = (vehicles + 1) / 2;
  const double per_flow = load_kbps / static_cast<double>(sources);
  for (std::size_t src = 0; src < sources; ++src) {
    std::size_t dst = rng.uniform_index(vehicles - 1);
    if (dst >= src) ++dst;
    s.flows.push_back({src, dst, per_flow, 512, 1.0 + rng.uniform()});
  }
  return s;
}

ScenarioConfig default_scenario(std::uint64_t seed) {
  auto s = urban({"U2", 600.0, 400.0}, 30, 256.0, seed);
  s.name = "default";
  return s;
}

ScenarioConfig two_node(bool connected) {
  ScenarioConfig s;
  s.name = connected ? "two-node" : "two-node-partitioned";
  s.node_count = 2;
  s.width = 1200.0;
  s.height = 100.0;
  s.radio_range = 250.0;
  s.positions = {{0.0, 0.0}, {connected ? 100.0 : 1000.0, 0.0}};
  s.flows = {{0, 1, 64.0, 1000, 1.32}};
  s.duration = 10.0;
  s.seed = 7;
  return s;
}

ScenarioConfig chain3() {
  ScenarioConfig s;
  s.name = "chain3";
  s.node_count = 3;
  s.width = 500.0;
  s.height = 100.0;
  s.radio_range = 250.0;
  s.positions = {{0.0, 0.0}, {200.0, 0.0}, {400.0, 0.0}};
  s.flows = {{0, 2, 64.0, 1000, 1.32}};
  s.duration = 10.0;
  s.seed = 7;
  return s;
}

std::vector<ValidationScenario> validation_set(std::uint64_t base_seed) {
  const AreaPreset u1{"U1", 400.0, 300.0};
  const AreaPreset u2{"U2", 600.0, 400.0};
  const AreaPreset u3{"U3", 600.0, 600.0};
  const std::vector<std::pair<AreaPreset, std::size_t>> situations = {
      {u1, 20}, {u2, 20}, {u2, 30}, {u2, 40}, {u3, 30},
      {u3, 45}, {u3, 60}, {u3, 75}, {u3, 90}, {u3, 105},
  };
  const double loads[] = {64.0, 128.0, 256.0};
  std::vector<ValidationScenario> out;
  for (std::size_t s = 0; s < situations.size(); ++s) {
    for (std::size_t l = 0; l < 3; ++l) {
      const auto& [area, vehicles] = situations[s];
      out.push_back({area.label, urban(area, vehicles, loads[l], base_seed + 100 * s + l)});
    }
  }
  return out;
}

}  // namespace scenarios

}  // namespace moaodv
