#include <catch_amalgamated.hpp>

#include <cmath>

#include "moaodv/param_space.hpp"
#include "moaodv/random.hpp"

using namespace moaodv;

TEST_CASE("AODV space has eleven specs in encoding order", "[param]") {
  const auto space = ParameterSpace::aodv();
  REQUIRE(space.size() == aodv::kParameterCount);
  CHECK(space[aodv::kHelloInterval].name == "HELLO_INTERVAL");
  CHECK(space[aodv::kHelloInterval].lower == 1.0);
  CHECK(space[aodv::kHelloInterval].upper == 20.0);
  CHECK(space[aodv::kNodeTraversalTime].lower == 0.01);
  CHECK(space[aodv::kNodeTraversalTime].upper == 15.0);
  CHECK(space[aodv::kNetDiameter].is_integer());
  CHECK(space[aodv::kNetDiameter].lower == 3.0);
  CHECK(space[aodv::kTtlThreshold].upper == 60.0);
  CHECK_FALSE(space[aodv::kMaxRreqTimeout].is_integer());
  for (const auto& s : space.specs()) {
    CHECK(s.lower < s.upper);
    if (s.is_integer()) {
      CHECK(std::floor(s.lower) == s.lower);
      CHECK(std::floor(s.upper) == s.upper);
    }
  }
}

TEST_CASE("genome CSV column names", "[param]") {
  const std::vector<std::string> expected{
      "hello_interval", "active_route_timeout", "my_route_timeout", "node_traversal_time",
      "max_rreq_timeout", "net_diameter", "allowed_hello_loss", "req_retries",
      "ttl_start", "ttl_increment", "ttl_threshold"};
  CHECK(ParameterSpace::aodv().column_names() == expected);
}

TEST_CASE("validate_genome examples", "[param]") {
  const auto space = ParameterSpace::aodv();
  CHECK(validate_genome(space, Genome{10.46, 10.55, 20.42, 6.89, 41.13, 21, 6, 6, 7, 3, 19}));
  CHECK(validate_genome(space, Genome{1, 1, 1, 0.01, 1, 3, 0, 0, 1, 1, 1}));
  CHECK(validate_genome(space, aodv::rfc_defaults()));
  Genome g = aodv::rfc_defaults();
  g[aodv::kHelloInterval] = 25.0;
  CHECK_FALSE(validate_genome(space, g));
  g = aodv::rfc_defaults();
  g[aodv::kNetDiameter] = 21.5;
  CHECK_FALSE(validate_genome(space, g));
  g = aodv::rfc_defaults();
  g[aodv::kMyRouteTimeout] = std::nan("");
  CHECK_FALSE(validate_genome(space, g));
  CHECK_THROWS_AS(validate_genome(space, Genome{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("clamp examples", "[param]") {
  const auto space = ParameterSpace::aodv();
  Genome g = aodv::rfc_defaults();
  g[aodv::kHelloInterval] = 25.0;
  const Genome c = clamp(space, g);
  CHECK(c[aodv::kHelloInterval] == 20.0);
  for (std::size_t i = 1; i < c.size(); ++i) CHECK(c[i] == g[i]);

  CHECK(clamp(space, aodv::rfc_defaults()) == aodv::rfc_defaults());

  g = aodv::rfc_defaults();
  g[aodv::kNetDiameter] = 2.4;
  CHECK(clamp(space, g)[aodv::kNetDiameter] == 3.0);

  // Ties round toward the upper value.
  CHECK(clamp_component(space[aodv::kTtlStart], 4.5) == 5.0);
  CHECK(clamp_component(space[aodv::kTtlStart], 4.49) == 4.0);
}

TEST_CASE("clamp properties over random genomes", "[param]") {
  const auto space = ParameterSpace::aodv();
  RandomSource rng(99);
  for (int trial = 0; trial < 2000; ++trial) {
    std::vector<double> v(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
      const auto& s = space[i];
      v[i] = rng.uniform(s.lower - s.range(), s.upper + s.range());
    }
    const Genome g(v);
    const Genome c = clamp(space, g);
    REQUIRE(validate_genome(space, c));
    REQUIRE(clamp(space, c) == c);
    for (std::size_t i = 0; i < space.size(); ++i) {
      const auto& s = space[i];
      const bool ok = g[i] >= s.lower && g[i] <= s.upper && (!s.is_integer() || std::floor(g[i]) == g[i]);
      if (ok) REQUIRE(c[i] == g[i]);
    }
  }
}

TEST_CASE("unit box space", "[param]") {
  const auto box = ParameterSpace::unit_box(30);
  REQUIRE(box.size() == 30);
  CHECK(box[0].name == "x1");
  CHECK(box[29].name == "x30");
  CHECK(box[5].lower == 0.0);
  CHECK(box[5].upper == 1.0);
  CHECK_THROWS(ParameterSpace({{"bad", 2.0, 1.0, ParameterKind::continuous}}));
}
