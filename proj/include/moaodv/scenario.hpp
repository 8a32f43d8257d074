#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace moaodv {

enum class MobilityKind { static_nodes, random_waypoint };

struct Position {
  double x = 0.0;
  double y = 0.0;
};

struct Flow {
  std::size_t source = 0;
  std::size_t destination = 1;
  double bitrate_kbps = 64.0;
  std::size_t packet_bytes = 512;
  double start = 1.0;  ///< seconds

  double packet_interval() const {
    return static_cast<double>(packet_bytes * 8) / (bitrate_kbps * 1000.0);
  }
};

/// Synthetic VANET scenario. Everything random about it (placement,
/// waypoints, MAC backoff) derives from `seed`.
struct ScenarioConfig {
  std::string name = "scenario";
  std::size_t node_count = 2;
  double width = 1000.0;
  double height = 1000.0;
  double radio_range = 250.0;
  MobilityKind mobility = MobilityKind::static_nodes;
  double speed_min = 0.0;  ///< m/s
  double speed_max = 0.0;
  double pause = 0.0;  ///< seconds at each waypoint
  /// Static positions, or initial positions for random waypoint. Empty means
  /// uniform random placement.
  std::vector<Position> positions;
  std::vector<Flow> flows;
  double duration = 180.0;  ///< simulated seconds of traffic
  /// Per-attempt loss probability contributed by each concurrent transmitter
  /// in range. Zero gives a lossless radio.
  double collision_loss = 0.0;
  std::uint64_t seed = 1;

  /// Throws std::invalid_argument describing the first problem found.
  void validate() const;
};

/// Plain-text `key = value` lines followed by optional `[positions]`
/// (`x, y` per line) and `[flows]` sections
/// (`source, destination, bitrate_kbps, packet_bytes[, start]`).
/// `#` starts a comment.
ScenarioConfig parse_scenario(std::istream& in);
ScenarioConfig load_scenario(const std::string& path);
void write_scenario(std::ostream& out, const ScenarioConfig& s);
void save_scenario(const std::string& path, const ScenarioConfig& s);

namespace scenarios {

/// Medium urban area, 30 vehicles, 15 sources sharing a 256 kbps load.
ScenarioConfig default_scenario(std::uint64_t seed = 1);

/// Two static nodes 100 m apart (connected) or 1000 m apart.
ScenarioConfig two_node(bool connected = true);

/// Static chain 0 - 1 - 2, 200 m spacing, flow 0 -> 2.
ScenarioConfig chain3();

struct AreaPreset {
  std::string label;
  double width;
  double height;
};

/// Urban scenario with `vehicles` nodes, ceil(vehicles / 2) sources and an
/// aggregate application load of `load_kbps`.
ScenarioConfig urban(const AreaPreset& area, std::size_t vehicles, double load_kbps,
                     std::uint64_t seed, double duration = 180.0);

struct ValidationScenario {
  std::string area_label;
  ScenarioConfig config;
};

/// Ten traffic situations over three areas times three loads (64, 128 and
/// 256 kbps). Situation s and load index l use seed base_seed + 100 * s + l.
std::vector<ValidationScenario> validation_set(std::uint64_t base_seed = 1000);

}  // namespace scenarios

}  // namespace moaodv
