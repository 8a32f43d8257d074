#include "moaodv/param_space.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace moaodv {

namespace {

void check_spec(const ParameterSpec& s) {
  if (!(s.lower < s.upper)) {
    throw std::invalid_argument("parameter '" + s.name + "': lower must be below upper");
  }
  if (s.is_integer() && (std::floor(s.lower) != s.lower || std::floor(s.upper) != s.upper)) {
    throw std::invalid_argument("parameter '" + s.name + "': integer bounds must be whole");
  }
}

void check_size(const ParameterSpace& space, const Genome& g) {
  if (g.size() != space.size()) {
    throw std::invalid_argument("genome has " + std::to_string(g.size()) +
                                " components, expected " + std::to_string(space.size()));
  }
}

}  // namespace

ParameterSpace::ParameterSpace(std::vector<ParameterSpec> specs) : specs_(std::move(specs)) {
  if (specs_.empty()) throw std::invalid_argument("parameter space must not be empty");
  for (const auto& s : specs_) check_spec(s);
}

ParameterSpace ParameterSpace::aodv() {
  using K = ParameterKind;
  return ParameterSpace({
      {"HELLO_INTERVAL", 1.0, 20.0, K::continuous},
      {"ACTIVE_ROUTE_TIMEOUT", 1.0, 20.0, K::continuous},
      {"MY_ROUTE_TIMEOUT", 1.0, 40.0, K::continuous},
      {"NODE_TRAVERSAL_TIME", 0.01, 15.0, K::continuous},
      {"MAX_RREQ_TIMEOUT", 1.0, 100.0, K::continuous},
      {"NET_DIAMETER", 3.0, 100.0, K::integer},
      {"ALLOWED_HELLO_LOSS", 0.0, 20.0, K::integer},
      {"REQ_RETRIES", 0.0, 20.0, K::integer},
      {"TTL_START", 1.0, 40.0, K::integer},
      {"TTL_INCREMENT", 1.0, 20.0, K::integer},
      {"TTL_THRESHOLD", 1.0, 60.0, K::integer},
  });
}

ParameterSpace ParameterSpace::unit_box(std::size_t n) {
  std::vector<ParameterSpec> specs;
  specs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    specs.push_back({"x" + std::to_string(i + 1), 0.0, 1.0, ParameterKind::continuous});
  }
  return ParameterSpace(std::move(specs));
}

std::vector<std::string> ParameterSpace::column_names() const {
  std::vector<std::string> names;
  names.reserve(specs_.size());
  for (const auto& s : specs_) {
    std::string n = s.name;
    std::transform(n.begin(), n.end(), n.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    names.push_back(std::move(n));
  }
  return names;
}

Genome aodv::rfc_defaults() {
  // HELLO 1 s, ACTIVE_ROUTE 3 s, MY_ROUTE 2*ACTIVE_ROUTE, NODE_TRAVERSAL 40 ms,
  // MAX_RREQ 10 s, NET_DIAMETER 35, ALLOWED_HELLO_LOSS 2, RREQ_RETRIES 2,
  // TTL_START 1, TTL_INCREMENT 2, TTL_THRESHOLD 7.
  return Genome{1.0, 3.0, 6.0, 0.04, 10.0, 35, 2, 2, 1, 2, 7};
}

bool validate_genome(const ParameterSpace& space, const Genome& g) {
  check_size(space, g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto& s = space[i];
    const double v = g[i];
    if (!std::isfinite(v) || v < s.lower || v > s.upper) return false;
    if (s.is_integer() && std::floor(v) != v) return false;
  }
  return true;
}

double clamp_component(const ParameterSpec& spec, double value) {
  if (std::isnan(value)) value = spec.lower;
  double v = std::clamp(value, spec.lower, spec.upper);
  if (spec.is_integer()) v = std::floor(v + 0.5);
  return v;
}

Genome clamp(const ParameterSpace& space, Genome g) {
  check_size(space, g);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = clamp_component(space[i], g[i]);
  return g;
}

}  // namespace moaodv
