#include "moaodv/vanet.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>
#include <stdexcept>

#include "moaodv/random.hpp"

namespace moaodv {

MobilityTrace::MobilityTrace(const ScenarioConfig& scenario, double horizon) {
  scenario.validate();
  RandomSource rng = RandomSource(scenario.seed).split(1);
  legs_.resize(scenario.node_count);
  for (std::size_t i = 0; i < scenario.node_count; ++i) {
    Position p = scenario.positions.empty()
                     ? Position{rng.uniform(0.0, scenario.width), rng.uniform(0.0, scenario.height)}
                     : scenario.positions[i];
    auto& legs = legs_[i];
    if (scenario.mobility == MobilityKind::static_nodes) {
      legs.push_back({0.0, std::numeric_limits<double>::infinity(), p, p});
      continue;
    }
    double t = 0.0;
    while (t <= horizon) {
      const Position target{rng.uniform(0.0, scenario.width), rng.uniform(0.0, scenario.height)};
      const double speed = rng.uniform(scenario.speed_min, scenario.speed_max);
      const double travel = std::hypot(target.x - p.x, target.y - p.y) / speed;
      legs.push_back({t, t + travel, p, target});
      t += travel;
      p = target;
      if (scenario.pause > 0.0) {
        legs.push_back({t, t + scenario.pause, p, p});
        t += scenario.pause;
      }
    }
    legs.push_back({t, std::numeric_limits<double>::infinity(), p, p});
  }
}

Position MobilityTrace::at(std::size_t node, double t) const {
  const auto& legs = legs_[node];
  auto it = std::upper_bound(legs.begin(), legs.end(), t,
                             [](double time, const Leg& leg) { return time < leg.t1; });
  if (it == legs.end()) --it;
  const Leg& leg = *it;
  if (!std::isfinite(leg.t1) || leg.t1 <= leg.t0) return leg.to;
  const double a = std::clamp((t - leg.t0) / (leg.t1 - leg.t0), 0.0, 1.0);
  return {leg.from.x + a * (leg.to.x - leg.from.x), leg.from.y + a * (leg.to.y - leg.from.y)};
}

namespace {

constexpr double kNever = -std::numeric_limits<double>::infinity();
constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

struct AodvParams {
  double hello_interval;
  double active_route_timeout;
  double my_route_timeout;
  double node_traversal_time;
  double max_rreq_timeout;
  int net_diameter;
  int allowed_hello_loss;
  int req_retries;
  int ttl_start;
  int ttl_increment;
  int ttl_threshold;

  explicit AodvParams(const Genome& g)
      : hello_interval(g[aodv::kHelloInterval]),
        active_route_timeout(g[aodv::kActiveRouteTimeout]),
        my_route_timeout(g[aodv::kMyRouteTimeout]),
        node_traversal_time(g[aodv::kNodeTraversalTime]),
        max_rreq_timeout(g[aodv::kMaxRreqTimeout]),
        net_diameter(static_cast<int>(g[aodv::kNetDiameter])),
        allowed_hello_loss(static_cast<int>(g[aodv::kAllowedHelloLoss])),
        req_retries(static_cast<int>(g[aodv::kReqRetries])),
        ttl_start(static_cast<int>(g[aodv::kTtlStart])),
        ttl_increment(static_cast<int>(g[aodv::kTtlIncrement])),
        ttl_threshold(static_cast<int>(g[aodv::kTtlThreshold])) {}

  double net_traversal_time() const { return 2.0 * node_traversal_time * net_diameter; }
  double neighbor_timeout() const { return allowed_hello_loss * hello_interval; }
};

enum class Kind : std::uint8_t { hello, rreq, rrep, rerr, data };

struct Packet {
  Kind kind = Kind::data;
  std::uint32_t origin = 0;  // data source, or RREQ/RREP originator
  std::uint32_t dest = 0;
  int ttl = 0;
  int hops = 0;
  std::uint32_t rreq_id = 0;
  double lifetime = 0.0;
  double created = 0.0;
  std::vector<std::uint32_t> unreachable;
};

enum class EventType : std::uint8_t { hello, generate, receive, link_failure, rreq_timeout };

struct Event {
  double time;
  std::uint64_t seq;
  EventType type;
  std::uint32_t node;
  std::uint32_t peer;
  std::uint32_t packet;
  std::uint64_t aux;
};

struct EventLater {
  bool operator()(const Event& a, const Event& b) const {
    return a.time > b.time || (a.time == b.time && a.seq > b.seq);
  }
};

struct Route {
  bool valid = false;
  std::uint32_t next = 0;
  int hops = 0;
  double expires = kNever;
};

struct Discovery {
  bool active = false;
  bool diameter = false;
  int ttl = 0;
  int retries = 0;
  std::uint64_t token = 0;
};

struct Slot {
  double start;
  double end;
  std::size_t contenders;
};

class Simulation {
 public:
  Simulation(const ScenarioConfig& scenario, const MobilityTrace& trace, const Genome& g)
      : sc_(scenario),
        trace_(trace),
        p_(g),
        n_(scenario.node_count),
        rng_(RandomSource(scenario.seed).split(2)),
        routes_(n_ * n_),
        discovery_(n_ * n_),
        last_heard_(n_ * n_, kNever),
        rreq_seen_(n_ * n_, 0),
        rreq_next_id_(n_, 0),
        tx_start_(n_, kNever),
        tx_end_(n_, kNever),
        buffer_(n_) {}

  SimulationReport run() {
    const double end = sc_.duration + radio::kDrain;
    for (std::uint32_t i = 0; i < n_; ++i) {
      const double phase = p_.hello_interval * static_cast<double>(i) / static_cast<double>(n_);
      if (phase < sc_.duration) schedule(phase, EventType::hello, i, kNone, kNone, 0);
    }
    for (std::uint32_t f = 0; f < sc_.flows.size(); ++f) {
      if (sc_.flows[f].start < sc_.duration) schedule(sc_.flows[f].start, EventType::generate, f, kNone, kNone, 0);
    }

    while (!queue_.empty()) {
      const Event e = queue_.top();
      if (e.time > end) break;
      queue_.pop();
      now_ = e.time;
      switch (e.type) {
        case EventType::hello: on_hello(e.node, e.aux); break;
        case EventType::generate: on_generate(e.node, e.aux); break;
        case EventType::receive: on_receive(e.node, e.peer, e.packet); break;
        case EventType::link_failure: on_link_failure(e.node, e.peer, e.packet); break;
        case EventType::rreq_timeout: on_rreq_timeout(e.node, e.peer, e.aux); break;
      }
    }
    return finish();
  }

 private:
  // -- bookkeeping ----------------------------------------------------------

  void schedule(double t, EventType type, std::uint32_t node, std::uint32_t peer,
                std::uint32_t packet, std::uint64_t aux) {
    queue_.push({t, next_seq_++, type, node, peer, packet, aux});
  }

  std::uint32_t make_packet(Packet p) {
    packets_.push_back(std::move(p));
    return static_cast<std::uint32_t>(packets_.size() - 1);
  }

  Route& route(std::uint32_t at, std::uint32_t dest) { return routes_[at * n_ + dest]; }
  Discovery& discovery(std::uint32_t at, std::uint32_t dest) { return discovery_[at * n_ + dest]; }
  double& last_heard(std::uint32_t at, std::uint32_t from) { return last_heard_[at * n_ + from]; }

  bool usable(const Route& r) const { return r.valid && r.expires > now_; }

  void update_route(std::uint32_t at, std::uint32_t dest, std::uint32_t next, int hops, double expires) {
    Route& r = route(at, dest);
    if (usable(r) && r.next == next) {
      r.hops = hops;
      r.expires = std::max(r.expires, expires);
    } else if (!usable(r) || hops < r.hops) {
      r = {true, next, hops, expires};
    }
  }

  std::vector<std::uint32_t> invalidate_via(std::uint32_t at, std::uint32_t next) {
    std::vector<std::uint32_t> lost;
    for (std::uint32_t d = 0; d < n_; ++d) {
      Route& r = route(at, d);
      if (r.valid && r.next == next) {
        r.valid = false;
        lost.push_back(d);
      }
    }
    return lost;
  }

  // -- radio ----------------------------------------------------------------

  static double airtime(std::size_t bytes) {
    return static_cast<double>(bytes * 8) / radio::kChannelBitsPerSecond;
  }

  static std::size_t size_of(const Packet& p, std::size_t data_bytes) {
    switch (p.kind) {
      case Kind::hello: return radio::kHelloBytes;
      case Kind::rreq: return radio::kRreqBytes;
      case Kind::rrep: return radio::kRrepBytes;
      case Kind::rerr: return radio::kRerrBytes + 4 * p.unreachable.size();
      case Kind::data: return data_bytes;
    }
    return data_bytes;
  }

  bool in_range(std::uint32_t a, std::uint32_t b, double t) const {
    const Position pa = trace_.at(a, t);
    const Position pb = trace_.at(b, t);
    const double dx = pa.x - pb.x;
    const double dy = pa.y - pb.y;
    return dx * dx + dy * dy <= sc_.radio_range * sc_.radio_range;
  }

  /// Reserves the channel for one transmission. A busy medium defers the
  /// start and adds a backoff whose window doubles per concurrent sender.
  Slot reserve(std::uint32_t sender, double ready, std::size_t bytes) {
    double start = std::max(ready, tx_end_[sender]);
    std::size_t contenders = 0;
    double medium_free = start;
    for (std::uint32_t j = 0; j < n_; ++j) {
      if (j == sender || !(tx_start_[j] <= start && start < tx_end_[j])) continue;
      if (!in_range(sender, j, start)) continue;
      ++contenders;
      medium_free = std::max(medium_free, tx_end_[j]);
    }
    if (contenders > 0) {
      const std::size_t window = radio::kMinContentionWindow << std::min<std::size_t>(contenders - 1, 5);
      start = medium_free + radio::kSlotTime * static_cast<double>(rng_.uniform_index(window));
    }
    const double end = start + airtime(bytes);
    tx_start_[sender] = start;
    tx_end_[sender] = end;
    return {start, end, contenders};
  }

  bool survives(std::size_t contenders) {
    if (contenders == 0 || sc_.collision_loss <= 0.0) return true;
    return rng_.bernoulli(std::pow(1.0 - sc_.collision_loss, static_cast<double>(contenders)));
  }

  void count_control(Kind kind) {
    ++report_.control_packets;
    switch (kind) {
      case Kind::hello: ++report_.hello_packets; break;
      case Kind::rreq: ++report_.rreq_packets; break;
      case Kind::rrep: ++report_.rrep_packets; break;
      case Kind::rerr: ++report_.rerr_packets; break;
      case Kind::data: break;
    }
  }

  void broadcast(std::uint32_t sender, std::uint32_t packet) {
    const Kind kind = packets_[packet].kind;
    count_control(kind);
    const Slot slot = reserve(sender, now_, size_of(packets_[packet], 0));
    for (std::uint32_t j = 0; j < n_; ++j) {
      if (j == sender || !in_range(sender, j, slot.start)) continue;
      if (!survives(slot.contenders)) continue;
      schedule(slot.end + radio::kHopLatency, EventType::receive, j, sender, packet, 0);
    }
  }

  void unicast(std::uint32_t sender, std::uint32_t next, std::uint32_t packet) {
    const Packet& p = packets_[packet];
    const std::size_t bytes = size_of(p, data_bytes_of(p));
    if (p.kind == Kind::data) {
      if (tx_end_[sender] - now_ > radio::kMaxBacklog) {
        ++report_.dropped;
        return;
      }
    } else {
      count_control(p.kind);
    }
    double ready = now_;
    for (std::size_t attempt = 0; attempt < radio::kMacAttempts; ++attempt) {
      const Slot slot = reserve(sender, ready, bytes);
      if (!in_range(sender, next, slot.start)) {
        schedule(slot.end, EventType::link_failure, sender, next, packet, 0);
        return;
      }
      if (survives(slot.contenders)) {
        schedule(slot.end + radio::kHopLatency, EventType::receive, next, sender, packet, 0);
        return;
      }
      ready = slot.end;
    }
    schedule(ready, EventType::link_failure, sender, next, packet, 0);
  }

  std::size_t data_bytes_of(const Packet& p) const {
    return p.kind == Kind::data ? sc_.flows[p.rreq_id].packet_bytes : 0;
  }

  // -- AODV -----------------------------------------------------------------

  void send_rerr(std::uint32_t at, std::vector<std::uint32_t> lost) {
    if (lost.empty()) return;
    Packet p;
    p.kind = Kind::rerr;
    p.origin = at;
    p.unreachable = std::move(lost);
    broadcast(at, make_packet(std::move(p)));
  }

  void on_hello(std::uint32_t node, std::uint64_t k) {
    const double limit = p_.neighbor_timeout();
    std::vector<std::uint32_t> lost;
    for (std::uint32_t j = 0; j < n_; ++j) {
      double& heard = last_heard(node, j);
      if (heard == kNever || now_ - heard <= limit) continue;
      heard = kNever;
      ++report_.link_breaks;
      for (auto d : invalidate_via(node, j)) lost.push_back(d);
    }
    send_rerr(node, std::move(lost));

    Packet hello;
    hello.kind = Kind::hello;
    hello.origin = node;
    broadcast(node, make_packet(std::move(hello)));

    const double phase = p_.hello_interval * static_cast<double>(node) / static_cast<double>(n_);
    const double next = phase + static_cast<double>(k + 1) * p_.hello_interval;
    if (next < sc_.duration) schedule(next, EventType::hello, node, kNone, kNone, k + 1);
  }

  void on_generate(std::uint32_t flow_index, std::uint64_t k) {
    const Flow& flow = sc_.flows[flow_index];
    ++report_.generated;
    Packet p;
    p.kind = Kind::data;
    p.origin = static_cast<std::uint32_t>(flow.source);
    p.dest = static_cast<std::uint32_t>(flow.destination);
    p.rreq_id = flow_index;  // data packets reuse the field for their flow
    p.created = now_;
    forward(p.origin, make_packet(std::move(p)));

    const double next = flow.start + static_cast<double>(k + 1) * flow.packet_interval();
    if (next < sc_.duration) schedule(next, EventType::generate, flow_index, kNone, kNone, k + 1);
  }

  void forward(std::uint32_t at, std::uint32_t packet) {
    const Packet& p = packets_[packet];
    Route& r = route(at, p.dest);
    if (usable(r)) {
      r.expires = std::max(r.expires, now_ + p_.active_route_timeout);
      unicast(at, r.next, packet);
    } else if (at == p.origin) {
      buffer_[at].push_back(packet);
      start_discovery(at, p.dest);
    } else {
      ++report_.dropped;
      send_rerr(at, {p.dest});
    }
  }

  void on_receive(std::uint32_t node, std::uint32_t from, std::uint32_t packet) {
    last_heard(node, from) = now_;
    switch (packets_[packet].kind) {
      case Kind::hello:
        update_route(node, from, from, 1, now_ + p_.neighbor_timeout());
        break;
      case Kind::rreq: on_rreq(node, from, packet); break;
      case Kind::rrep: on_rrep(node, from, packet); break;
      case Kind::rerr: on_rerr(node, from, packet); break;
      case Kind::data: on_data(node, packet); break;
    }
  }

  void on_data(std::uint32_t node, std::uint32_t packet) {
    const Packet& p = packets_[packet];
    if (node == p.dest) {
      ++report_.delivered;
      report_.delays_ms.push_back((now_ - p.created) * 1000.0);
      return;
    }
    forward(node, packet);
  }

  void on_rreq(std::uint32_t node, std::uint32_t from, std::uint32_t packet) {
    const Packet req = packets_[packet];
    if (req.origin == node) return;
    auto& seen = rreq_seen_[node * n_ + req.origin];
    if (req.rreq_id <= seen) return;
    seen = req.rreq_id;

    update_route(node, from, from, 1, now_ + p_.active_route_timeout);
    const int hops = req.hops + 1;
    const double reverse_lifetime =
        2.0 * p_.net_traversal_time() - 2.0 * hops * p_.node_traversal_time;
    update_route(node, req.origin, from, hops, now_ + reverse_lifetime);

    Packet reply;
    reply.kind = Kind::rrep;
    reply.origin = req.origin;
    reply.dest = req.dest;
    if (node == req.dest) {
      reply.hops = 0;
      reply.lifetime = p_.my_route_timeout;
    } else if (const Route& known = route(node, req.dest); usable(known)) {
      reply.hops = known.hops;
      reply.lifetime = known.expires - now_;
    } else {
      if (req.ttl > 1) {
        Packet fwd = req;
        fwd.ttl -= 1;
        fwd.hops = hops;
        broadcast(node, make_packet(std::move(fwd)));
      }
      return;
    }
    unicast(node, from, make_packet(std::move(reply)));
  }

  void on_rrep(std::uint32_t node, std::uint32_t from, std::uint32_t packet) {
    const Packet rep = packets_[packet];
    update_route(node, from, from, 1, now_ + p_.active_route_timeout);
    update_route(node, rep.dest, from, rep.hops + 1, now_ + rep.lifetime);

    if (node == rep.origin) {
      Discovery& d = discovery(node, rep.dest);
      if (d.active) {
        d.active = false;
        ++d.token;
      }
      flush(node, rep.dest);
      return;
    }
    const Route& back = route(node, rep.origin);
    if (!usable(back)) return;
    Packet fwd = rep;
    fwd.hops += 1;
    unicast(node, back.next, make_packet(std::move(fwd)));
  }

  void on_rerr(std::uint32_t node, std::uint32_t from, std::uint32_t packet) {
    std::vector<std::uint32_t> lost;
    for (auto d : packets_[packet].unreachable) {
      Route& r = route(node, d);
      if (r.valid && r.next == from) {
        r.valid = false;
        lost.push_back(d);
      }
    }
    send_rerr(node, std::move(lost));
  }

  void on_link_failure(std::uint32_t node, std::uint32_t next, std::uint32_t packet) {
    ++report_.link_breaks;
    last_heard(node, next) = kNever;
    send_rerr(node, invalidate_via(node, next));
    const Packet& p = packets_[packet];
    if (p.kind != Kind::data) return;
    if (node == p.origin) {
      buffer_[node].push_back(packet);
      start_discovery(node, p.dest);
    } else {
      ++report_.dropped;
    }
  }

  void start_discovery(std::uint32_t node, std::uint32_t dest) {
    Discovery& d = discovery(node, dest);
    if (d.active) return;
    ++report_.discoveries;
    d.active = true;
    ++d.token;
    d.retries = 0;
    d.ttl = p_.ttl_start;
    d.diameter = false;
    if (d.ttl > p_.ttl_threshold || d.ttl >= p_.net_diameter) {
      d.ttl = p_.net_diameter;
      d.diameter = true;
    }
    send_rreq(node, dest);
  }

  void send_rreq(std::uint32_t node, std::uint32_t dest) {
    Discovery& d = discovery(node, dest);
    Packet req;
    req.kind = Kind::rreq;
    req.origin = node;
    req.dest = dest;
    req.ttl = d.ttl;
    req.hops = 0;
    req.rreq_id = ++rreq_next_id_[node];
    broadcast(node, make_packet(std::move(req)));

    double wait = d.diameter
                      ? std::ldexp(p_.net_traversal_time(), std::min(d.retries, 30))
                      : 2.0 * p_.node_traversal_time * (d.ttl + 2);
    wait = std::min(wait, p_.max_rreq_timeout);
    schedule(now_ + wait, EventType::rreq_timeout, node, dest, kNone, d.token);
  }

  void on_rreq_timeout(std::uint32_t node, std::uint32_t dest, std::uint64_t token) {
    Discovery& d = discovery(node, dest);
    if (!d.active || d.token != token) return;
    expire_buffer(node);
    if (usable(route(node, dest))) {
      d.active = false;
      ++d.token;
      flush(node, dest);
      return;
    }
    if (!d.diameter) {
      d.ttl += p_.ttl_increment;
      if (d.ttl > p_.ttl_threshold || d.ttl >= p_.net_diameter) {
        d.ttl = p_.net_diameter;
        d.diameter = true;
      }
      send_rreq(node, dest);
      return;
    }
    if (++d.retries > p_.req_retries) {
      d.active = false;
      ++d.token;
      ++report_.discovery_failures;
      drop_buffered(node, dest);
      return;
    }
    send_rreq(node, dest);
  }

  void flush(std::uint32_t node, std::uint32_t dest) {
    std::vector<std::uint32_t> ready;
    auto& buf = buffer_[node];
    std::erase_if(buf, [&](std::uint32_t id) {
      if (packets_[id].dest != dest) return false;
      ready.push_back(id);
      return true;
    });
    for (auto id : ready) {
      if (now_ - packets_[id].created > radio::kBufferTimeout) {
        ++report_.dropped;
      } else {
        forward(node, id);
      }
    }
  }

  void drop_buffered(std::uint32_t node, std::uint32_t dest) {
    report_.dropped += std::erase_if(buffer_[node], [&](std::uint32_t id) { return packets_[id].dest == dest; });
  }

  void expire_buffer(std::uint32_t node) {
    report_.dropped += std::erase_if(buffer_[node], [&](std::uint32_t id) {
      return now_ - packets_[id].created > radio::kBufferTimeout;
    });
  }

  SimulationReport finish() {
    auto& m = report_.metrics;
    m.pdr = report_.generated > 0
                ? 100.0 * static_cast<double>(report_.delivered) / static_cast<double>(report_.generated)
                : 0.0;
    if (report_.delivered > 0) {
      double sum = 0.0;
      for (double d : report_.delays_ms) sum += d;
      m.e2ed = sum / static_cast<double>(report_.delivered);
      m.nrl = static_cast<double>(report_.control_packets) / static_cast<double>(report_.delivered);
    } else {
      m.e2ed = sc_.duration * 1000.0;
      m.nrl = static_cast<double>(report_.control_packets);
    }
    return std::move(report_);
  }

  const ScenarioConfig& sc_;
  const MobilityTrace& trace_;
  AodvParams p_;
  std::uint32_t n_;
  RandomSource rng_;

  std::priority_queue<Event, std::vector<Event>, EventLater> queue_;
  std::uint64_t next_seq_ = 0;
  double now_ = 0.0;

  std::vector<Packet> packets_;
  std::vector<Route> routes_;
  std::vector<Discovery> discovery_;
  std::vector<double> last_heard_;
  std::vector<std::uint32_t> rreq_seen_;
  std::vector<std::uint32_t> rreq_next_id_;
  std::vector<double> tx_start_;
  std::vector<double> tx_end_;
  std::vector<std::vector<std::uint32_t>> buffer_;

  SimulationReport report_;
};

const ParameterSpace& aodv_space() {
  static const ParameterSpace space = ParameterSpace::aodv();
  return space;
}

void check_genome(const Genome& g) {
  if (!validate_genome(aodv_space(), g)) {
    throw std::invalid_argument("genome violates the AODV parameter bounds");
  }
}

}  // namespace

SimulationReport simulate_vanet_report(const ScenarioConfig& scenario, const MobilityTrace& trace,
                                       const Genome& g) {
  check_genome(g);
  if (trace.node_count() != scenario.node_count) {
    throw std::invalid_argument("mobility trace does not match the scenario");
  }
  return Simulation(scenario, trace, g).run();
}

SimulationReport simulate_vanet_report(const ScenarioConfig& scenario, const Genome& g) {
  scenario.validate();
  const MobilityTrace trace(scenario, scenario.duration + radio::kDrain);
  return simulate_vanet_report(scenario, trace, g);
}

QosMetrics simulate_vanet(const ScenarioConfig& scenario, const Genome& g) {
  return simulate_vanet_report(scenario, g).metrics;
}

ObjectiveVector objectives_from_metrics(const QosMetrics& m) { return {100.0 - m.pdr, m.e2ed}; }

VanetEvaluator::VanetEvaluator(ScenarioConfig scenario)
    : scenario_(std::move(scenario)),
      trace_(scenario_, scenario_.duration + radio::kDrain),
      space_(ParameterSpace::aodv()) {}

Evaluation VanetEvaluator::evaluate(const Genome& g) const {
  const QosMetrics m = simulate_vanet_report(scenario_, trace_, g).metrics;
  return {objectives_from_metrics(m), m};
}

ObjectiveBounds VanetEvaluator::default_bounds() const {
  return {0.0, 100.0, 0.0, scenario_.duration * 1000.0};
}

}  // namespace moaodv
