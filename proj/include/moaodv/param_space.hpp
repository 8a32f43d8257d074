#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace moaodv {

enum class ParameterKind { continuous, integer };

struct ParameterSpec {
  std::string name;
  double lower = 0.0;
  double upper = 1.0;
  ParameterKind kind = ParameterKind::continuous;

  double range() const { return upper - lower; }
  bool is_integer() const { return kind == ParameterKind::integer; }
};

/// A candidate configuration. Integer-kind components are stored as
/// whole-valued doubles so every operator works on one arithmetic type.
class Genome {
 public:
  Genome() = default;
  explicit Genome(std::vector<double> values) : values_(std::move(values)) {}
  Genome(std::initializer_list<double> values) : values_(values) {}

  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  std::span<const double> values() const { return values_; }
  std::span<double> values() { return values_; }

  auto begin() const { return values_.begin(); }
  auto end() const { return values_.end(); }

  friend bool operator==(const Genome&, const Genome&) = default;

 private:
  std::vector<double> values_;
};

/// Ordered box of parameter specs. Bounds are inclusive.
class ParameterSpace {
 public:
  explicit ParameterSpace(std::vector<ParameterSpec> specs);

  /// The 11 AODV parameters, in the fixed encoding order.
  static ParameterSpace aodv();
  /// n continuous components in [0, 1]; used by the ZDT1 backend.
  static ParameterSpace unit_box(std::size_t n);

  std::size_t size() const { return specs_.size(); }
  const ParameterSpec& operator[](std::size_t i) const { return specs_[i]; }
  std::span<const ParameterSpec> specs() const { return specs_; }

  /// Lower-case column names, used as the genome CSV header.
  std::vector<std::string> column_names() const;

 private:
  std::vector<ParameterSpec> specs_;
};

/// Indices into the AODV space, matching the encoding order.
namespace aodv {
inline constexpr std::size_t kHelloInterval = 0;
inline constexpr std::size_t kActiveRouteTimeout = 1;
inline constexpr std::size_t kMyRouteTimeout = 2;
inline constexpr std::size_t kNodeTraversalTime = 3;
inline constexpr std::size_t kMaxRreqTimeout = 4;
inline constexpr std::size_t kNetDiameter = 5;
inline constexpr std::size_t kAllowedHelloLoss = 6;
inline constexpr std::size_t kReqRetries = 7;
inline constexpr std::size_t kTtlStart = 8;
inline constexpr std::size_t kTtlIncrement = 9;
inline constexpr std::size_t kTtlThreshold = 10;
inline constexpr std::size_t kParameterCount = 11;

/// Defaults recommended by RFC 3561.
Genome rfc_defaults();
}  // namespace aodv

/// Throws std::invalid_argument when the component count does not match.
bool validate_genome(const ParameterSpace& space, const Genome& g);

/// Replaces out-of-range components with the violated bound and rounds
/// integer components to the nearest whole value (ties upward).
Genome clamp(const ParameterSpace& space, Genome g);

/// Clamp and round a single component.
double clamp_component(const ParameterSpec& spec, double value);

}  // namespace moaodv
