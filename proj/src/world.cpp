#include "cpsim/world.hpp"

#include <algorithm>
#include <cmath>

#include "cpsim/errors.hpp"
#include "cpsim/rng.hpp"

namespace cpsim::world {

const char* to_string(EntityKind k) {
    switch (k) {
        case EntityKind::car: return "car";
        case EntityKind::bus: return "bus";
        case EntityKind::truck: return "truck";
        case EntityKind::bicyclist: return "bicyclist";
        case EntityKind::pedestrian: return "pedestrian";
        case EntityKind::static_obstacle: return "static_obstacle";
    }
    return "?";
}

bool is_vehicle(EntityKind k) {
    return k == EntityKind::car || k == EntityKind::bus || k == EntityKind::truck;
}

bool is_moving(EntityKind k) { return k != EntityKind::static_obstacle; }

const Entity& WorldState::entity(EntityId id) const {
    if (id < 0 || static_cast<std::size_t>(id) >= entities.size()) {
        throw Error(ErrorCategory::lookup, "unknown entity id " + std::to_string(id));
    }
    return entities[static_cast<std::size_t>(id)];
}

void ScenarioConfig::validate() const {
    if (episode_ticks <= 0) throw Error(ErrorCategory::config, "episode_ticks must be > 0");
    if (vehicle_count < 1) throw Error(ErrorCategory::config, "vehicle_count must be >= 1");
    if (static_obstacle_count < 0 || non_connected_count < 0) {
        throw Error(ErrorCategory::config, "entity counts must be >= 0");
    }
    builtin_map(map_id);
}

MapSpec builtin_map(const std::string& id) {
    if (id == "map1") {
        MapSpec m;
        m.id = "map1";
        m.center = {0.0, 0.0};
        return m;
    }
    if (id == "map2") {
        MapSpec m;
        m.id = "map2";
        m.center = {60.0, -40.0};
        m.lane_width = 3.4;
        m.stop_margin = 2.0;
        m.speed_min = 9.0;
        m.speed_max = 13.0;
        m.spawn_front_gap = 4.0;
        m.sidewalk_offset = 9.2;
        m.bike_offset = 7.6;
        m.obstacle_offset = 11.2;
        m.obstacle_start = 18.0;
        m.obstacle_spacing = 17.0;
        m.shelter_every = 4;
        m.patrol_start = 14.0;
        m.patrol_len = 24.0;
        return m;
    }
    throw Error(ErrorCategory::config, "unknown map_id '" + id + "' (built-ins: map1, map2)");
}

namespace {

constexpr double kMinGap = 0.8;       // standstill bumper-to-bumper clearance
constexpr double kHeadway = 8.0;      // decelerate when the gap drops below this
constexpr double kAccel = 2.5;        // m/s^2
constexpr double kBrake = 4.0;        // m/s^2
constexpr double kQueueJoinDist = 0.6;
constexpr double kQueueJoinSpeed = 0.15;

struct Dims {
    double len, wid;
};

Dims dims_for(EntityKind k) {
    switch (k) {
        case EntityKind::car: return {4.54, 1.76};
        case EntityKind::bus: return {12.0, 2.55};
        case EntityKind::truck: return {8.0, 2.5};
        case EntityKind::bicyclist: return {1.8, 0.6};
        case EntityKind::pedestrian: return {0.5, 0.5};
        case EntityKind::static_obstacle: return {0.7, 0.7};
    }
    return {1.0, 1.0};
}

std::vector<Lane> build_lanes(const MapSpec& m) {
    std::vector<Lane> lanes;
    const Vec2 c = m.center;
    for (int i = 0; i < m.lanes_per_dir; ++i) {
        const double off = m.lane_width * (0.5 + i);
        lanes.push_back({{c.x, c.y - off}, {1.0, 0.0}});    // eastbound, south side
        lanes.push_back({{c.x, c.y + off}, {-1.0, 0.0}});   // westbound, north side
        lanes.push_back({{c.x + off, c.y}, {0.0, 1.0}});    // northbound, east side
        lanes.push_back({{c.x - off, c.y}, {0.0, -1.0}});   // southbound, west side
    }
    return lanes;
}

// Roadside line k of 4: EW north/south, NS east/west. Returns a patrol or
// placement line as (anchor point at distance d from center, along unit).
struct RoadsideLine {
    Vec2 at(double along) const { return anchor + dir * along; }
    Vec2 anchor;
    Vec2 dir;
};

RoadsideLine roadside_line(const MapSpec& m, int k, double offset) {
    const Vec2 c = m.center;
    switch (k & 3) {
        case 0: return {{c.x, c.y + offset}, {1.0, 0.0}};   // north of EW road
        case 1: return {{c.x, c.y - offset}, {1.0, 0.0}};   // south of EW road
        case 2: return {{c.x + offset, c.y}, {0.0, 1.0}};   // east of NS road
        default: return {{c.x - offset, c.y}, {0.0, 1.0}};  // west of NS road
    }
}

}  // namespace

Scenario generate_scenario(const ScenarioConfig& config) {
    config.validate();
    const MapSpec map = builtin_map(config.map_id);
    Rng rng(config.rng_seed ^ splitmix64(std::hash<std::string>{}(map.id)));

    Scenario sc;
    sc.config = config;
    sc.map = map;
    sc.lanes = build_lanes(map);

    const double stop_s = -(map.box_half() + map.stop_margin);
    const int n_lanes = static_cast<int>(sc.lanes.size());

    // Connected vehicles, round-robin over approach lanes, queued back from
    // the stop line with randomized gaps.
    std::vector<double> lane_tail(static_cast<std::size_t>(n_lanes));
    std::vector<bool> lane_used(static_cast<std::size_t>(n_lanes), false);
    EntityId next_id = 0;
    for (int i = 0; i < config.vehicle_count; ++i) {
        EntityKind kind = EntityKind::car;
        if (i % 8 == 5) kind = EntityKind::bus;
        else if (i % 5 == 2) kind = EntityKind::truck;
        const Dims d = dims_for(kind);
        const int lane = i % n_lanes;

        double s_center;
        if (!lane_used[lane]) {
            s_center = stop_s - map.spawn_front_gap - rng.uniform(0.0, 3.0) - d.len * 0.5;
            lane_used[lane] = true;
        } else {
            const double gap = rng.uniform(4.0, 12.0);
            s_center = lane_tail[lane] - gap - d.len;  // tail is previous rear - len/2 handled below
        }
        // lane_tail tracks the rear bumper of the last spawned vehicle.
        if (s_center - d.len * 0.5 < -map.spawn_zone_len) {
            throw Error(ErrorCategory::capacity,
                        "vehicle_count " + std::to_string(config.vehicle_count) +
                            " exceeds map '" + map.id + "' spawn capacity");
        }

        double desired = rng.uniform(map.speed_min, map.speed_max);
        if (kind != EntityKind::car) desired *= 0.85;

        Entity e;
        e.id = next_id++;
        e.kind = kind;
        e.pos = sc.lanes[lane].point(s_center);
        e.heading = sc.lanes[lane].heading();
        e.speed = 0.0;
        e.length = d.len;
        e.width = d.wid;
        e.connected = true;
        sc.initial.entities.push_back(e);
        sc.vehicle_routes.push_back(VehicleRoute{lane, desired});
        sc.patrol_routes.push_back(std::nullopt);
        lane_tail[lane] = s_center - d.len * 0.5;
    }

    // Pedestrians and bicyclists patrol disjoint roadside slots; they exist
    // to create occlusions and CPM-worthy objects.
    for (int i = 0; i < config.non_connected_count; ++i) {
        const EntityKind kind = (i % 2 == 0) ? EntityKind::pedestrian : EntityKind::bicyclist;
        const Dims d = dims_for(kind);
        const double offset = (kind == EntityKind::pedestrian) ? map.sidewalk_offset : map.bike_offset;
        const int line = i % 4;
        const int slot = i / 4;
        const int side = (slot % 2 == 0) ? 1 : -1;
        const double base = map.patrol_start + static_cast<double>(slot / 2) * (map.patrol_len + 4.0);
        const RoadsideLine rl = roadside_line(map, line, offset);
        const Vec2 a = rl.at(side * base);
        const Vec2 b = rl.at(side * (base + map.patrol_len));

        PatrolRoute route;
        route.a = a;
        route.b = b;
        route.speed = (kind == EntityKind::pedestrian) ? 1.4 : 4.0;
        route.start_s = rng.uniform(0.0, map.patrol_len);
        route.start_sign = rng.bernoulli(0.5) ? 1 : -1;

        const Vec2 u = (b - a) * (1.0 / map.patrol_len);
        Entity e;
        e.id = next_id++;
        e.kind = kind;
        e.pos = a + u * route.start_s;
        e.heading = std::atan2(u.y * route.start_sign, u.x * route.start_sign);
        e.speed = route.speed;
        e.length = d.len;
        e.width = d.wid;
        e.connected = false;
        sc.initial.entities.push_back(e);
        sc.vehicle_routes.push_back(std::nullopt);
        sc.patrol_routes.push_back(route);
    }

    // Static roadside furniture: poles/trees with the occasional bus shelter.
    for (int i = 0; i < config.static_obstacle_count; ++i) {
        const int line = i % 4;
        const int slot = i / 4;
        const int side = (slot % 2 == 0) ? 1 : -1;
        const double along =
            side * (map.obstacle_start + static_cast<double>(slot / 2) * map.obstacle_spacing +
                    rng.uniform(-1.5, 1.5));
        const RoadsideLine rl = roadside_line(map, line, map.obstacle_offset);
        const bool shelter = (i % map.shelter_every) == map.shelter_every - 1;

        Entity e;
        e.id = next_id++;
        e.kind = EntityKind::static_obstacle;
        e.pos = rl.at(along);
        e.heading = std::atan2(rl.dir.y, rl.dir.x);
        e.speed = 0.0;
        if (shelter) {
            e.length = 8.0;
            e.width = 3.0;
        } else {
            const Dims d = dims_for(EntityKind::static_obstacle);
            e.length = d.len;
            e.width = d.wid;
        }
        e.connected = false;
        sc.initial.entities.push_back(e);
        sc.vehicle_routes.push_back(std::nullopt);
        sc.patrol_routes.push_back(std::nullopt);
    }

    sc.initial.tick = 0;
    return sc;
}

Simulation::Simulation(Scenario scenario) : scenario_(std::move(scenario)), state_(scenario_.initial) {
    lane_order_.resize(scenario_.lanes.size());
    for (const Entity& e : state_.entities) {
        const auto& vroute = scenario_.vehicle_routes[static_cast<std::size_t>(e.id)];
        const auto& proute = scenario_.patrol_routes[static_cast<std::size_t>(e.id)];
        if (vroute) {
            const Lane& lane = scenario_.lanes[static_cast<std::size_t>(vroute->lane)];
            VehicleMotion m;
            m.id = e.id;
            m.lane = vroute->lane;
            m.s = (e.pos - lane.origin).dot(lane.dir);
            m.v = e.speed;
            m.desired = vroute->desired_speed;
            lane_order_[static_cast<std::size_t>(vroute->lane)].push_back(
                static_cast<int>(motions_.size()));
            motions_.push_back(m);
        } else if (proute) {
            PatrolMotion p;
            p.id = e.id;
            p.s = proute->start_s;
            p.sign = proute->start_sign;
            p.seg_len = distance(proute->a, proute->b);
            patrols_.push_back(p);
        }
    }
    // Front-to-back per lane (spawn order already is, but make it explicit).
    for (auto& order : lane_order_) {
        std::sort(order.begin(), order.end(),
                  [this](int a, int b) { return motions_[static_cast<std::size_t>(a)].s >
                                                motions_[static_cast<std::size_t>(b)].s; });
    }
}

void Simulation::step_vehicles() {
    const double dt = kTickSeconds;
    const double box = scenario_.map.box_half();
    const double stop_s = -(box + scenario_.map.stop_margin);

    // Release the crossing grant once the grantee's rear bumper clears the box.
    if (grantee_) {
        for (const VehicleMotion& m : motions_) {
            if (m.id != *grantee_) continue;
            const Entity& e = state_.entities[static_cast<std::size_t>(m.id)];
            if (m.s - e.length * 0.5 > box) grantee_.reset();
            break;
        }
    }
    if (!grantee_ && !stop_queue_.empty()) {
        grantee_ = stop_queue_.front();
        stop_queue_.pop_front();
    }

    for (const auto& order : lane_order_) {
        double lead_rear = 1e18;  // rear bumper of the vehicle ahead, post-move
        bool has_leader = false;
        for (int mi : order) {
            VehicleMotion& m = motions_[static_cast<std::size_t>(mi)];
            Entity& e = state_.entities[static_cast<std::size_t>(m.id)];
            const double half = e.length * 0.5;
            const double front = m.s + half;
            const bool may_cross = m.served || (grantee_ && *grantee_ == m.id);
            if (grantee_ && *grantee_ == m.id) m.served = true;

            // Speed proposal: accelerate toward the desired speed, brake for a
            // close leader or for the stop line.
            double v_next = std::min(m.desired, m.v + kAccel * dt);
            if (has_leader && lead_rear - front < kHeadway) {
                v_next = std::max(0.0, m.v - kBrake * dt);
            }
            if (!may_cross && front < stop_s) {
                const double stop_dist = (m.v * m.v) / (2.0 * kBrake);
                if (front + stop_dist + 1.0 >= stop_s) v_next = std::max(0.0, m.v - kBrake * dt);
            }

            // Hard clamps guarantee disjoint footprints and stop-line respect.
            double allowed = 1e18;
            if (has_leader) allowed = std::min(allowed, lead_rear - kMinGap - front);
            if (!may_cross) allowed = std::min(allowed, stop_s - front);
            allowed = std::max(0.0, allowed);

            const double move = std::min(v_next * dt, allowed);
            m.s += move;
            const double v_new = move / dt;

            // Join the all-way-stop queue after coming to rest at the line.
            if (!may_cross && !m.queued && stop_s - (m.s + half) < kQueueJoinDist &&
                v_new < kQueueJoinSpeed) {
                stop_queue_.push_back(m.id);
                m.queued = true;
            }

            e.accel = (v_new - m.v) / dt;
            m.v = v_new;
            e.speed = v_new;
            const Lane& lane = scenario_.lanes[static_cast<std::size_t>(m.lane)];
            e.pos = lane.point(m.s);

            lead_rear = m.s - half;
            has_leader = true;
        }
    }
}

void Simulation::step_patrols() {
    const double dt = kTickSeconds;
    for (PatrolMotion& p : patrols_) {
        Entity& e = state_.entities[static_cast<std::size_t>(p.id)];
        const auto& route = *scenario_.patrol_routes[static_cast<std::size_t>(p.id)];
        double s = p.s + p.sign * route.speed * dt;
        if (s > p.seg_len) {
            s = 2.0 * p.seg_len - s;
            p.sign = -1;
        } else if (s < 0.0) {
            s = -s;
            p.sign = 1;
        }
        p.s = s;
        const Vec2 u = (route.b - route.a) * (1.0 / p.seg_len);
        e.pos = route.a + u * p.s;
        e.heading = std::atan2(u.y * p.sign, u.x * p.sign);
        e.speed = route.speed;
        e.accel = 0.0;
    }
}

void Simulation::step() {
    step_vehicles();
    step_patrols();
    state_.tick += 1;
}

std::vector<EntityId> objects_within(const WorldState& world, EntityId center, double radius) {
    const Entity& c = world.entity(center);
    std::vector<EntityId> out;
    for (const Entity& e : world.entities) {
        if (e.id == center) continue;
        if (distance(e.pos, c.pos) <= radius) out.push_back(e.id);
    }
    return out;
}

}  // namespace cpsim::world
